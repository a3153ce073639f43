"""Exponent matrices attached to an ASM and their conversion to monomials."""

from __future__ import annotations

from enum import Enum
from typing import Tuple

from ..asm import AsmMatrix, identity, left_cumulant, right_cumulant
from ..laurent import Family, Monomial, atom, monomial
from .conventions import MuReading

WeightMatrix = Tuple[Tuple[int, ...], ...]


def f_weight(b: AsmMatrix) -> WeightMatrix:
    """Lambda exponents: ``min(i,j) - left_cumulant(b)[i,j]``; nonnegative."""
    c = left_cumulant(b).entries
    return tuple(tuple(min(i, j) + 1 - c[i][j] for j in range(b.n)) for i in range(b.n))


def g_weight(b: AsmMatrix, reading: MuReading) -> WeightMatrix:
    """Mu exponents under one of the three readings."""
    k = b.n
    c = right_cumulant(b).entries
    ident = right_cumulant(identity(k)).entries
    if reading is MuReading.PRINTED_PRODUCT:
        return tuple(tuple(max(i - j + 1, 0) - c[i - 1][k - j] for j in range(1, k + 1))
                     for i in range(1, k + 1))
    if reading is MuReading.MATRIX_DIFFERENCE:
        return tuple(tuple(ident[i][j] - c[i][j] for j in range(k)) for i in range(k))
    if reading is MuReading.MATRIX_DIFFERENCE_FLIPPED:
        return tuple(tuple(ident[i][k - 1 - j] - c[i][k - 1 - j] for j in range(k)) for i in range(k))
    if reading is MuReading.REFLECTED_LAMBDA:
        return tuple(tuple(min(i, j) + 1 - c[i][k - 1 - j] for j in range(k)) for i in range(k))
    raise ValueError(reading)


def x_weight(b: AsmMatrix) -> WeightMatrix:
    """The standard weight's exponents are the entries themselves."""
    return b.rows


class ShiftKind(Enum):
    NONE_LAMBDA = "lambda"
    NONE_MU = "mu"
    NONE_X1 = "x1"
    S_LAMBDA = "s_lambda"
    T_MU = "t_mu"
    S_MU = "s_mu"
    S_X0 = "s_x0"
    S_X1 = "s_x1"


_SHIFTS = {
    ShiftKind.NONE_LAMBDA: (Family.LAMBDA, 0, 0),
    ShiftKind.NONE_MU: (Family.MU, 0, 0),
    ShiftKind.NONE_X1: (Family.X1, 0, 0),
    ShiftKind.S_LAMBDA: (Family.LAMBDA, 1, 1),
    ShiftKind.T_MU: (Family.MU, 1, -1),
    ShiftKind.S_MU: (Family.MU, 1, 1),
    ShiftKind.S_X0: (Family.X0, 1, 1),
    ShiftKind.S_X1: (Family.X1, 1, 1),
}


def shift_weight(w: WeightMatrix, kind: ShiftKind, sign: int = 1) -> Monomial:
    """Monomial ``prod z[i+di, j+dj] ** (sign * w[i][j])`` for the family of ``kind``.

    ``s`` shifts by (+1, +1) and ``t`` by (+1, -1).  Raises ``IndexError``
    when a shifted index leaves the atom domain.
    """
    family, di, dj = _SHIFTS[kind]
    exps = {}
    for i, row in enumerate(w, start=1):
        for j, e in enumerate(row, start=1):
            if e:
                exps[atom(family, i + di, j + dj)] = sign * e
    return monomial(exps)
