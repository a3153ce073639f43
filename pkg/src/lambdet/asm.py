"""Alternating sign matrices, their corner-sum (cumulant) matrices, and the
entrywise lattice on left cumulants.

Indices in docstrings are 1-based to match the usual matrix notation; the
stored grids are ordinary 0-based tuples of tuples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Sequence, Tuple

Grid = Tuple[Tuple[int, ...], ...]

DEFAULT_MAX_N = 7


class AsmError(ValueError):
    pass


class ShapeError(AsmError):
    pass


class RangeError(AsmError):
    pass


class RowSumError(AsmError):
    pass


class AlternationError(AsmError):
    pass


class NotACumulant(AsmError):
    pass


class SizeMismatch(AsmError):
    pass


class ResourceLimit(RuntimeError):
    pass


def _as_grid(rows) -> Grid:
    return tuple(tuple(int(v) for v in row) for row in rows)


@dataclass(frozen=True)
class AsmMatrix:
    """A validated n x n alternating sign matrix.  Build via ``validate_asm``."""

    n: int
    rows: Grid
    pos_count: int = field(compare=False)
    neg_count: int = field(compare=False)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __str__(self):
        return format_matrix(self.rows)

    def positions(self, value: int):
        """Row-major list of 1-based positions holding ``value``."""
        return [(i + 1, j + 1) for i, row in enumerate(self.rows)
                for j, v in enumerate(row) if v == value]

    def to_json_obj(self):
        return {"n": self.n, "rows": [list(r) for r in self.rows]}


def validate_asm(grid) -> AsmMatrix:
    """Check ``grid`` is an alternating sign matrix and wrap it.

    Checks run in order shape, range, line sums, alternation, so a matrix
    with a bad sum reports ``RowSumError`` even if it also fails to
    alternate.
    """
    if isinstance(grid, AsmMatrix):
        return grid
    rows = _as_grid(grid)
    n = len(rows)
    if n < 1 or any(len(r) != n for r in rows):
        raise ShapeError(f"expected a nonempty square grid, got row lengths {[len(r) for r in rows]}")
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v not in (-1, 0, 1):
                raise RangeError(f"entry ({i + 1},{j + 1}) = {v} outside {{-1,0,1}}")
    cols = tuple(zip(*rows))
    for name, lines in (("row", rows), ("column", cols)):
        for k, line in enumerate(lines):
            if sum(line) != 1:
                raise RowSumError(f"{name} {k + 1} sums to {sum(line)}")
    for name, lines in (("row", rows), ("column", cols)):
        for k, line in enumerate(lines):
            nz = [v for v in line if v]
            if nz[0] != 1 or nz[-1] != 1 or any(a == b for a, b in zip(nz, nz[1:])):
                raise AlternationError(f"{name} {k + 1} does not alternate: {list(line)}")
    pos = sum(v == 1 for r in rows for v in r)
    neg = sum(v == -1 for r in rows for v in r)
    assert pos - neg == n
    return AsmMatrix(n, rows, pos, neg)


def identity(n: int) -> AsmMatrix:
    return validate_asm([[int(i == j) for j in range(n)] for i in range(n)])


# -- enumeration ----------------------------------------------------------


def _next_rows(prev: Tuple[int, ...], i: int, n: int):
    """Left-cumulant rows for row ``i`` above which sits ``prev``.

    Yields rows in lexicographic order of their step sequences, which is the
    lexicographic order of the matrix row they produce.
    """
    out = []
    row = [0] * n

    def rec(j, acc):
        if j == n:
            if acc == i:
                out.append(tuple(row))
            return
        left = n - j
        for step in (0, 1):
            v = acc + step
            if v > i or v + (left - 1) < i:
                continue
            d = v - prev[j]
            if d not in (0, 1):
                continue
            row[j] = v
            rec(j + 1, v)

    rec(0, 0)
    return out


@lru_cache(maxsize=None)
def _enumerate_cumulants(n: int):
    results = []
    rows = []

    def rec(i, prev):
        if i > n:
            results.append(tuple(rows))
            return
        for r in _next_rows(prev, i, n):
            rows.append(r)
            rec(i + 1, r)
            rows.pop()

    rec(1, (0,) * n)
    return tuple(results)


def enumerate_asms(n: int, max_n: int = DEFAULT_MAX_N):
    """All n x n ASMs in row-major lexicographic order of entries (-1 < 0 < 1)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > max_n:
        raise ResourceLimit(f"n={n} exceeds enumeration bound {max_n}")
    return [_from_cumulant_unchecked(c) for c in _enumerate_cumulants(n)]


def count_asms(n: int, max_n: int = DEFAULT_MAX_N) -> int:
    if n > max_n:
        raise ResourceLimit(f"n={n} exceeds enumeration bound {max_n}")
    return len(_enumerate_cumulants(n))


# -- cumulants ------------------------------------------------------------


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class CumulantMatrix:
    n: int
    side: Side
    entries: Grid

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __str__(self):
        return format_matrix(self.entries)

    def at(self, i: int, j: int) -> int:
        """1-based access with the zero padding used by the recovery formulas."""
        if 1 <= i <= self.n and 1 <= j <= self.n:
            return self.entries[i - 1][j - 1]
        return 0

    def check(self):
        """Raise ``NotACumulant`` unless the step and boundary invariants hold."""
        n, e = self.n, self.entries
        if len(e) != n or any(len(r) != n for r in e):
            raise NotACumulant("wrong shape")
        for i in range(n):
            for j in range(n):
                v = e[i][j]
                up = e[i - 1][j] if i else 0
                if v - up not in (0, 1):
                    raise NotACumulant(f"column step at ({i + 1},{j + 1})")
                if self.side is Side.LEFT:
                    left = e[i][j - 1] if j else 0
                    if v - left not in (0, 1):
                        raise NotACumulant(f"row step at ({i + 1},{j + 1})")
                else:
                    right = e[i][j + 1] if j + 1 < n else 0
                    if v - right not in (0, 1):
                        raise NotACumulant(f"row step at ({i + 1},{j + 1})")
        if self.side is Side.LEFT:
            ok = all(e[n - 1][j] == j + 1 for j in range(n)) and all(e[i][n - 1] == i + 1 for i in range(n))
        else:
            ok = all(e[n - 1][j] == n - j for j in range(n)) and all(e[i][0] == i + 1 for i in range(n))
        if not ok:
            raise NotACumulant("boundary row/column wrong")
        return self


def left_cumulant(b: AsmMatrix) -> CumulantMatrix:
    n = b.n
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        run = 0
        for j in range(n):
            run += b.rows[i][j]
            out[i][j] = run + (out[i - 1][j] if i else 0)
    return CumulantMatrix(n, Side.LEFT, _as_grid(out))


def right_cumulant(b: AsmMatrix) -> CumulantMatrix:
    n = b.n
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        run = 0
        for j in range(n - 1, -1, -1):
            run += b.rows[i][j]
            out[i][j] = run + (out[i - 1][j] if i else 0)
    return CumulantMatrix(n, Side.RIGHT, _as_grid(out))


def _second_difference_left(c: Grid) -> Grid:
    n = len(c)

    def g(i, j):
        return c[i][j] if 0 <= i < n and 0 <= j < n else 0

    return tuple(tuple(g(i, j) + g(i - 1, j - 1) - g(i, j - 1) - g(i - 1, j) for j in range(n))
                 for i in range(n))


def _second_difference_right(c: Grid) -> Grid:
    n = len(c)

    def g(i, j):
        return c[i][j] if 0 <= i < n and 0 <= j < n else 0

    return tuple(tuple(g(i, j) + g(i - 1, j + 1) - g(i, j + 1) - g(i - 1, j) for j in range(n))
                 for i in range(n))


def _from_cumulant_unchecked(c: Grid) -> AsmMatrix:
    rows = _second_difference_left(c)
    pos = sum(v == 1 for r in rows for v in r)
    return AsmMatrix(len(rows), rows, pos, pos - len(rows))


def _grid_of(c) -> Grid:
    return c.entries if isinstance(c, CumulantMatrix) else _as_grid(c)


def from_left_cumulant(c) -> AsmMatrix:
    """Invert ``left_cumulant`` by second differences (out-of-range terms are 0)."""
    try:
        return validate_asm(_second_difference_left(_grid_of(c)))
    except AsmError as exc:
        raise NotACumulant(f"not a left cumulant: {exc}") from None


def from_right_cumulant(c) -> AsmMatrix:
    try:
        return validate_asm(_second_difference_right(_grid_of(c)))
    except AsmError as exc:
        raise NotACumulant(f"not a right cumulant: {exc}") from None


def reflect(b: AsmMatrix) -> AsmMatrix:
    """Right multiplication by the antidiagonal permutation: reverse each row."""
    return AsmMatrix(b.n, tuple(r[::-1] for r in b.rows), b.pos_count, b.neg_count)


# -- lattice --------------------------------------------------------------


class LatticeRelation(Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def _pair(a: AsmMatrix, b: AsmMatrix):
    if a.n != b.n:
        raise SizeMismatch(f"sizes {a.n} and {b.n} differ")
    return left_cumulant(a).entries, left_cumulant(b).entries


def lattice_compare(a: AsmMatrix, b: AsmMatrix) -> LatticeRelation:
    ca, cb = _pair(a, b)
    flat = [(x, y) for ra, rb in zip(ca, cb) for x, y in zip(ra, rb)]
    le = all(x <= y for x, y in flat)
    ge = all(x >= y for x, y in flat)
    if le and ge:
        return LatticeRelation.EQUAL
    if le:
        return LatticeRelation.LESS
    if ge:
        return LatticeRelation.GREATER
    return LatticeRelation.INCOMPARABLE


def lattice_meet(a: AsmMatrix, b: AsmMatrix) -> AsmMatrix:
    ca, cb = _pair(a, b)
    return from_left_cumulant(tuple(tuple(map(min, ra, rb)) for ra, rb in zip(ca, cb)))


def lattice_join(a: AsmMatrix, b: AsmMatrix) -> AsmMatrix:
    ca, cb = _pair(a, b)
    return from_left_cumulant(tuple(tuple(map(max, ra, rb)) for ra, rb in zip(ca, cb)))


# -- text / JSON formats --------------------------------------------------


def format_matrix(rows: Sequence[Sequence[int]]) -> str:
    return "\n".join(" ".join(str(v) for v in r) for r in rows)


def parse_matrix(text: str) -> Grid:
    """Parse whitespace-separated integer rows, one per line.

    A JSON object ``{"n": ..., "rows": ...}`` is accepted too.
    """
    text = text.strip()
    if text.startswith("{"):
        obj = json.loads(text)
        rows = _as_grid(obj["rows"])
        if obj.get("n", len(rows)) != len(rows):
            raise ShapeError("'n' disagrees with the number of rows")
        return rows
    try:
        return tuple(tuple(int(t) for t in line.split()) for line in text.splitlines() if line.strip())
    except ValueError as exc:
        raise ShapeError(f"bad matrix text: {exc}") from None


def matrix_json(rows: Sequence[Sequence[int]]) -> str:
    return json.dumps({"n": len(rows), "rows": [list(r) for r in rows]})
