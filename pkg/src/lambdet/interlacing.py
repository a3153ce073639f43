"""Up/down operators on alternating sign matrices via interlacing cumulants.

Each operator sends an ASM ``B`` to the set of ASMs whose cumulant matrix
interlaces with the cumulant of ``B``.  Every interlacing cell has at most
two admissible values; the cells with two values ("sites") sit next to the
-1 entries of ``B`` (down operators) or the +1 entries (up operators), and a
member of the fan is named by a bit string choosing the smaller (0) or the
larger (1) value at each site.

Bits follow the column-major order of the anchoring entries of ``B``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Tuple

from .asm import (
    AsmMatrix,
    CumulantMatrix,
    NotACumulant,
    Side,
    from_left_cumulant,
    from_right_cumulant,
    left_cumulant,
    right_cumulant,
    validate_asm,
)


class FanKind(Enum):
    DOWN_LEFT = "down_left"
    UP_LEFT = "up_left"
    DOWN_RIGHT = "down_right"
    UP_RIGHT = "up_right"


class InvariantBroken(NotACumulant):
    pass


class InterlacingError(RuntimeError):
    """The box rules produced an empty range or an unexpected site."""


@dataclass(frozen=True)
class OperatorFan:
    source: AsmMatrix
    kind: FanKind
    sites: Tuple[Tuple[int, int], ...]  # anchors in B, in bit order (1-based)
    members: Dict[str, AsmMatrix]

    def __len__(self):
        return len(self.members)

    def __getitem__(self, bits: str) -> AsmMatrix:
        return self.members[bits]

    def matrices(self) -> List[AsmMatrix]:
        return [self.members[b] for b in sorted(self.members)]

    def to_json_obj(self):
        return {
            "kind": self.kind.value,
            "source": self.source.to_json_obj(),
            "members": [{"bits": b, "matrix": self.members[b].to_json_obj()}
                        for b in sorted(self.members)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def complement(bits: str) -> str:
    return bits.translate(str.maketrans("01", "10"))


def _site_order(anchor):
    i, j = anchor
    return (j, i)


def _build_fan(b: AsmMatrix, kind: FanKind, size: int,
               bounds: Callable[[int, int], Tuple[int, int]],
               anchor_of: Callable[[int, int], Tuple[int, int]],
               anchor_value: int,
               fixed: Dict[Tuple[int, int], int],
               convert: Callable) -> OperatorFan:
    ranges = {}
    sites = {}
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            if (i, j) in fixed:
                ranges[i, j] = (fixed[i, j],)
                continue
            lo, hi = bounds(i, j)
            if hi < lo or hi - lo > 1:
                raise InterlacingError(f"{kind.value}: range [{lo},{hi}] at ({i},{j})")
            ranges[i, j] = tuple(range(lo, hi + 1))
            if hi > lo:
                anchor = anchor_of(i, j)
                ai, aj = anchor
                if not (1 <= ai <= b.n and 1 <= aj <= b.n) or b.rows[ai - 1][aj - 1] != anchor_value:
                    raise InterlacingError(f"{kind.value}: two-valued cell ({i},{j}) has no anchor")
                sites[anchor] = (i, j)
    expected = b.neg_count if anchor_value == -1 else b.pos_count
    if len(sites) != expected:
        raise InterlacingError(f"{kind.value}: {len(sites)} sites, expected {expected}")
    order = sorted(sites, key=_site_order)
    base = {ij: r[0] for ij, r in ranges.items()}
    members = {}
    for bits in itertools.product("01", repeat=len(order)):
        grid = dict(base)
        for bit, anchor in zip(bits, order):
            if bit == "1":
                grid[sites[anchor]] += 1
        rows = tuple(tuple(grid[i, j] for j in range(1, size + 1)) for i in range(1, size + 1))
        members["".join(bits)] = convert(rows)
    return OperatorFan(b, kind, tuple(order), members)


def down_left(b: AsmMatrix) -> OperatorFan:
    """All (n-1) x (n-1) ASMs whose left cumulant interlaces that of ``b``.

    Around each cell ``a`` of the new cumulant, with ``x y / z w`` the four
    surrounding cumulant entries of ``b``: ``max(x, w-1) <= a <= min(y, z)``.
    """
    b = validate_asm(b)
    if b.n < 2:
        raise ValueError("down operators need n >= 2")
    c = left_cumulant(b)

    def bounds(i, j):
        x, y, z, w = c.at(i, j), c.at(i, j + 1), c.at(i + 1, j), c.at(i + 1, j + 1)
        return max(x, w - 1), min(y, z)

    return _build_fan(b, FanKind.DOWN_LEFT, b.n - 1, bounds,
                      lambda i, j: (i + 1, j + 1), -1, {}, from_left_cumulant)


def up_left(b: AsmMatrix) -> OperatorFan:
    """All (n+1) x (n+1) ASMs whose left cumulant is interlaced by that of ``b``.

    The last row and column are fixed to ``1..n+1``; elsewhere
    ``max(y, z) <= c <= min(w, x+1)`` with out-of-range entries of ``b``'s
    cumulant read as 0.
    """
    b = validate_asm(b)
    c = left_cumulant(b)
    m = b.n + 1
    fixed = {}
    for k in range(1, m + 1):
        fixed[m, k] = k
        fixed[k, m] = k

    def bounds(i, j):
        x, y, z, w = c.at(i - 1, j - 1), c.at(i - 1, j), c.at(i, j - 1), c.at(i, j)
        return max(y, z), min(w, x + 1)

    return _build_fan(b, FanKind.UP_LEFT, m, bounds,
                      lambda i, j: (i, j), 1, fixed, from_left_cumulant)


def down_right(b: AsmMatrix) -> OperatorFan:
    """Right-cumulant analogue of ``down_left``: ``max(y, z-1) <= a <= min(x, w)``."""
    b = validate_asm(b)
    if b.n < 2:
        raise ValueError("down operators need n >= 2")
    c = right_cumulant(b)

    def bounds(i, j):
        x, y, z, w = c.at(i, j), c.at(i, j + 1), c.at(i + 1, j), c.at(i + 1, j + 1)
        return max(y, z - 1), min(x, w)

    return _build_fan(b, FanKind.DOWN_RIGHT, b.n - 1, bounds,
                      lambda i, j: (i + 1, j), -1, {}, from_right_cumulant)


def up_right(b: AsmMatrix) -> OperatorFan:
    """Right-cumulant analogue of ``up_left``.

    Fixed boundary: first column ``1..n+1`` top to bottom and last row
    ``n+1..1`` left to right; elsewhere ``max(w, x) <= c <= min(y+1, z)``.
    """
    b = validate_asm(b)
    c = right_cumulant(b)
    m = b.n + 1
    fixed = {}
    for k in range(1, m + 1):
        fixed[k, 1] = k
        fixed[m, k] = m + 1 - k

    def bounds(i, j):
        x, y, z, w = c.at(i - 1, j - 1), c.at(i - 1, j), c.at(i, j - 1), c.at(i, j)
        return max(w, x), min(y + 1, z)

    return _build_fan(b, FanKind.UP_RIGHT, m, bounds,
                      lambda i, j: (i, j - 1), 1, fixed, from_right_cumulant)


OPERATORS = {
    FanKind.DOWN_LEFT: down_left,
    FanKind.UP_LEFT: up_left,
    FanKind.DOWN_RIGHT: down_right,
    FanKind.UP_RIGHT: up_right,
}


def extremal_down(b: AsmMatrix) -> AsmMatrix:
    """The smallest member of ``down_left(b)``, straight from the closed formula."""
    b = validate_asm(b)
    c = left_cumulant(b)
    k = b.n - 1
    return from_left_cumulant([[max(c.at(i, j), c.at(i + 1, j + 1) - 1) for j in range(1, k + 1)]
                               for i in range(1, k + 1)])


def extremal_up(b: AsmMatrix) -> AsmMatrix:
    """The largest member of ``up_left(b)``, straight from the closed formula."""
    b = validate_asm(b)
    c = left_cumulant(b)
    m = b.n + 1
    rows = [[min(c.at(i, j), c.at(i - 1, j - 1) + 1) for j in range(1, m)] + [i]
            for i in range(1, m)]
    rows.append(list(range(1, m + 1)))
    return from_left_cumulant(rows)


def corner_move(c: CumulantMatrix, i: int, j: int, delta: int) -> CumulantMatrix:
    """Add ``delta`` (+1 or -1) to the 1-based entry ``(i, j)`` of a cumulant.

    On the ASM side this adds ``delta`` times the 2x2 motif ``[[1,-1],[-1,1]]``
    with its upper-left corner at ``(i, j)`` (left cumulants), or
    ``[[-1,1],[1,-1]]`` with its upper-right corner at ``(i, j)`` (right).
    """
    if delta not in (1, -1):
        raise ValueError("delta must be +1 or -1")
    if not (1 <= i <= c.n and 1 <= j <= c.n):
        raise InvariantBroken(f"position ({i},{j}) outside {c.n}x{c.n}")
    rows = [list(r) for r in c.entries]
    rows[i - 1][j - 1] += delta
    moved = CumulantMatrix(c.n, c.side, tuple(map(tuple, rows)))
    try:
        moved.check()
    except NotACumulant as exc:
        raise InvariantBroken(str(exc)) from None
    return moved


def to_cumulant(b: AsmMatrix, side: Side) -> CumulantMatrix:
    return left_cumulant(b) if side is Side.LEFT else right_cumulant(b)
