"""Registry of convention variants for the mu coefficients.

Two places index mu ambiguously: the exponent matrix of the mu weight (the
difference of right cumulants read directly, read with a column flip, or the
explicit product formula), and the column of the mu coefficient used by the
recurrence, ``mu[i, n-k-j+offset]``.  A variant fixes both.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from enum import Enum
from pathlib import Path


class MuReading(Enum):
    PRINTED_PRODUCT = "PrintedProduct"
    MATRIX_DIFFERENCE = "MatrixDifference"
    MATRIX_DIFFERENCE_FLIPPED = "MatrixDifferenceFlipped"
    # lambda weight of the column-reflected matrix: min(i,j) - Bright[i,k+1-j]
    REFLECTED_LAMBDA = "ReflectedLambda"


class MuShift(Enum):
    """Index shift applied to mu in the weight of the smaller matrix."""

    T = "t"  # (i, j) -> (i+1, j-1)
    S = "s"  # (i, j) -> (i+1, j+1)


@dataclass(frozen=True)
class ConventionVariant:
    id: str
    mu_exponent_reading: MuReading
    recurrence_mu_col: int = 0
    notes: str = ""
    mu_shift: MuShift = MuShift.T

    def to_json_obj(self):
        d = asdict(self)
        d["mu_exponent_reading"] = self.mu_exponent_reading.value
        d["mu_shift"] = self.mu_shift.value
        return d

    @classmethod
    def from_json_obj(cls, obj):
        return cls(obj["id"], MuReading(obj["mu_exponent_reading"]),
                   int(obj.get("recurrence_mu_col", 0)), obj.get("notes", ""),
                   MuShift(obj.get("mu_shift", "t")))


_SHORT = {
    MuReading.PRINTED_PRODUCT: "printed",
    MuReading.MATRIX_DIFFERENCE: "matdiff",
    MuReading.MATRIX_DIFFERENCE_FLIPPED: "flipped",
    MuReading.REFLECTED_LAMBDA: "reflected",
}

_NOTES = {
    MuReading.PRINTED_PRODUCT: "exponent of mu[i,j] is max(i-j+1,0) - Bright[i,k+1-j]",
    MuReading.MATRIX_DIFFERENCE: "exponent of mu[i,j] is (Iright - Bright)[i,j]",
    MuReading.MATRIX_DIFFERENCE_FLIPPED: "exponent of mu[i,j] is (Iright - Bright)[i,k+1-j]",
    MuReading.REFLECTED_LAMBDA: "exponent of mu[i,j] is min(i,j) - Bright[i,k+1-j]",
}


def _shipped():
    out = []
    for reading in (MuReading.PRINTED_PRODUCT, MuReading.MATRIX_DIFFERENCE,
                    MuReading.MATRIX_DIFFERENCE_FLIPPED):
        for delta in (0, 1):
            out.append(ConventionVariant(
                f"{_SHORT[reading]}-d{delta}", reading, delta,
                f"{_NOTES[reading]}; t-shift on mu; recurrence uses mu[i,n-k-j+{delta}]"))
    # mu plays the role of lambda in the column-reflected pyramid
    out.append(ConventionVariant(
        "reflected-s-d1", MuReading.REFLECTED_LAMBDA, 1,
        f"{_NOTES[MuReading.REFLECTED_LAMBDA]}; s-shift on mu; recurrence uses mu[i,n-k-j+1]",
        MuShift.S))
    return tuple(out)


SHIPPED = _shipped()
REGISTRY = {v.id: v for v in SHIPPED}
# the only shipped variant for which condensation and expansion agree
# symbolically (checked for n <= 5)
DEFAULT_VARIANT = "reflected-s-d1"


class UnknownVariant(KeyError):
    pass


def get_variant(vid: str, registry=None) -> ConventionVariant:
    reg = REGISTRY if registry is None else registry
    try:
        return reg[vid]
    except KeyError:
        raise UnknownVariant(f"unknown variant {vid!r}; known: {', '.join(reg)}") from None


def resolve_variants(names: str, registry=None):
    """``"all"`` or a comma-separated list of ids, in registry order for ``all``."""
    reg = REGISTRY if registry is None else registry
    if names == "all":
        return list(reg.values())
    return [get_variant(v.strip(), reg) for v in names.split(",") if v.strip()]


def load_registry(path, include_shipped: bool = True):
    """Extend the registry from a JSON list of variant objects."""
    entries = json.loads(Path(path).read_text())
    reg = dict(REGISTRY) if include_shipped else {}
    for obj in entries:
        v = ConventionVariant.from_json_obj(obj)
        if v.id in reg:
            raise ValueError(f"duplicate variant id {v.id!r}")
        reg[v.id] = v
    return reg
