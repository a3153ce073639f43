"""Exact determinant by fraction-free (Bareiss) elimination."""

from fractions import Fraction


def det_oracle(m):
    """Determinant of a square matrix of ints/Fractions, exact.

    Singular input returns 0.  Integer input stays integral throughout since
    every Bareiss division is exact.
    """
    a = [list(row) for row in m]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    integral = all(isinstance(v, int) for r in a for v in r)
    if not integral:
        a = [[Fraction(v) for v in r] for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = row_i[j] * pivot - aik * row_k[j]
                row_i[j] = num // prev if integral else num / prev
        prev = pivot
    d = sign * a[n - 1][n - 1]
    if isinstance(d, Fraction) and d.denominator == 1:
        return d.numerator
    return d
