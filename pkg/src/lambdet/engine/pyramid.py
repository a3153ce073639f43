"""The octahedral-recurrence pyramid.

Layer ``k`` of a size-``n`` pyramid is an ``(n-k+1) x (n-k+1)`` grid.  Layers
0 and 1 are initial data; each later cell is

    x[k+1][i,j] = (mu[i, n-k-j+d] x[k][i,j] x[k][i+1,j+1]
                   + lambda[i,j] x[k][i,j+1] x[k][i+1,j]) / x[k-1][i+1,j+1]

with ``d`` the variant's column offset.  Division is exact Laurent division;
a nonzero remainder is fatal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

from ..laurent import L, LaurentPoly, M, NotDivisible, X0, X1, exact_div
from .conventions import ConventionVariant

Layer = List[List[LaurentPoly]]


class InitMode(Enum):
    GENERIC = "generic"
    ONES = "ones"
    CUSTOM = "custom"


class ShapeMismatch(ValueError):
    pass


class LaurentFailure(NotDivisible):
    """A recurrence division left a remainder."""

    def __init__(self, k, i, j, variant_id):
        super().__init__(f"x[{k}][{i},{j}] is not a Laurent polynomial under variant {variant_id}")
        self.k, self.i, self.j = k, i, j
        self.variant_id = variant_id


@dataclass
class Pyramid:
    n: int
    layers: List[Optional[Layer]]
    init_mode: InitMode
    # numerator D(x[k])[i,j] of each recurrence step, keyed by k
    numerators: Dict[int, Layer] = field(default_factory=dict)

    def cell(self, k: int, i: int, j: int) -> LaurentPoly:
        """1-based cell access."""
        return self.layers[k][i - 1][j - 1]

    @property
    def apex(self) -> LaurentPoly:
        top = self.layers[self.n]
        if top is None:
            raise ValueError("pyramid not condensed")
        return top[0][0]

    def is_filled(self) -> bool:
        return all(layer is not None for layer in self.layers)


def _coerce_layer(values, size, name) -> Layer:
    rows = [list(r) for r in values]
    if len(rows) != size or any(len(r) != size for r in rows):
        raise ShapeMismatch(f"{name} must be {size}x{size}")
    return [[v if isinstance(v, LaurentPoly) else LaurentPoly._coerce(v) for v in r] for r in rows]


def init_pyramid(n: int, mode=InitMode.GENERIC, x0=None, x1=None) -> Pyramid:
    """Fill layers 0 and 1.

    ``GENERIC`` uses the atoms ``x0[i,j]`` and ``x1[i,j]``; ``ONES`` sets
    layer 0 to 1; ``CUSTOM`` takes both grids from the caller.
    """
    if n < 1:
        raise ValueError("n must be positive")
    mode = InitMode(mode)
    if mode is InitMode.CUSTOM:
        if x0 is None or x1 is None:
            raise ShapeMismatch("custom initialization needs both x0 and x1")
        base = _coerce_layer(x0, n + 1, "x0")
        first = _coerce_layer(x1, n, "x1")
    else:
        if x0 is not None or x1 is not None:
            raise ShapeMismatch(f"{mode.value} initialization takes no custom values")
        if mode is InitMode.GENERIC:
            base = [[LaurentPoly.var(X0(i, j)) for j in range(1, n + 2)] for i in range(1, n + 2)]
        else:
            base = [[LaurentPoly.const(1) for _ in range(n + 1)] for _ in range(n + 1)]
        first = [[LaurentPoly.var(X1(i, j)) for j in range(1, n + 1)] for i in range(1, n + 1)]
    layers: List[Optional[Layer]] = [base, first] + [None] * (n - 1)
    return Pyramid(n, layers, mode)


def numerator(p: Pyramid, k: int, i: int, j: int, variant: ConventionVariant) -> LaurentPoly:
    """``D(x[k])[i,j]``, the numerator producing ``x[k+1][i,j]`` (1-based)."""
    cur = p.layers[k]
    mu = LaurentPoly.var(M(i, p.n - k - j + variant.recurrence_mu_col))
    lam = LaurentPoly.var(L(i, j))
    a, d = cur[i - 1][j - 1], cur[i][j]
    b, c = cur[i - 1][j], cur[i][j - 1]
    return mu * a * d + lam * b * c


def condense(p: Pyramid, variant: ConventionVariant) -> Pyramid:
    """Return a new pyramid with layers 2..n computed by the recurrence."""
    n = p.n
    if p.layers[0] is None or p.layers[1] is None:
        raise ValueError("layers 0 and 1 must be filled")
    out = Pyramid(n, list(p.layers[:2]) + [None] * (n - 1), p.init_mode)
    for k in range(1, n):
        size = n - k
        nums: Layer = []
        layer: Layer = []
        for i in range(1, size + 1):
            nrow, row = [], []
            for j in range(1, size + 1):
                num = numerator(out, k, i, j, variant)
                den = out.layers[k - 1][i][j]
                try:
                    val = exact_div(num, den)
                except NotDivisible:
                    raise LaurentFailure(k + 1, i, j, variant.id) from None
                nrow.append(num)
                row.append(val)
            nums.append(nrow)
            layer.append(row)
        out.numerators[k] = nums
        out.layers[k + 1] = layer
    return out


def condensed_apex(n: int, variant: ConventionVariant, mode=InitMode.GENERIC) -> LaurentPoly:
    return condense(init_pyramid(n, mode), variant).apex
