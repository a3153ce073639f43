"""Closed-form expansion of the pyramid apex as a sum over ASM pairs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import List, Mapping, Tuple

from ..asm import AsmMatrix, DEFAULT_MAX_N, ResourceLimit, enumerate_asms
from ..interlacing import down_left
from ..laurent import (
    Atom,
    Family,
    LaurentPoly,
    Monomial,
    X1,
    atom,
    mono_mul,
)
from .conventions import ConventionVariant, MuShift
from .weights import ShiftKind, f_weight, g_weight, shift_weight, x_weight


@dataclass(frozen=True)
class TermRecord:
    B: AsmMatrix
    A: AsmMatrix
    bits: str
    monomial: Monomial


def term_monomial(b: AsmMatrix, a: AsmMatrix, variant: ConventionVariant) -> Monomial:
    """Weight of the pair (A, B): lambda, mu and x parts multiplied out."""
    reading = variant.mu_exponent_reading
    mu_shift = ShiftKind.S_MU if variant.mu_shift is MuShift.S else ShiftKind.T_MU
    parts = (
        shift_weight(f_weight(b), ShiftKind.NONE_LAMBDA),
        shift_weight(f_weight(a), ShiftKind.S_LAMBDA, -1),
        shift_weight(g_weight(b, reading), ShiftKind.NONE_MU),
        shift_weight(g_weight(a, reading), mu_shift, -1),
        shift_weight(x_weight(b), ShiftKind.NONE_X1),
        shift_weight(x_weight(a), ShiftKind.S_X0, -1),
    )
    return reduce(mono_mul, parts)


def closed_form(n: int, k: int, variant: ConventionVariant,
                max_n: int = DEFAULT_MAX_N) -> Tuple[LaurentPoly, List[TermRecord]]:
    """Sum of the pair weights over B in ASM(k) and A in down_left(B).

    ``k == 1`` returns the lone atom ``x1[1,1]`` by convention.
    """
    if k < 1 or k > n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if k == 1:
        return LaurentPoly.var(X1(1, 1)), []
    records = []
    terms = {}
    for b in enumerate_asms(k, max_n):
        fan = down_left(b)
        for bits in sorted(fan.members):
            a = fan.members[bits]
            m = term_monomial(b, a, variant)
            records.append(TermRecord(b, a, bits, m))
            terms[m] = terms.get(m, 0) + 1
    return LaurentPoly(terms), records


def count_terms(k: int, max_n: int = DEFAULT_MAX_N) -> int:
    """Number of (A, B) pairs: sum over B in ASM(k) of 2**neg_count(B)."""
    if k < 1:
        raise ValueError("k must be positive")
    if k > max_n:
        raise ResourceLimit(f"k={k} exceeds enumeration bound {max_n}")
    return sum(2 ** b.neg_count for b in enumerate_asms(k, max_n))


# -- specialization -------------------------------------------------------


class ZeroSubstitutionIntoNegativePower(ZeroDivisionError):
    pass


_CONST = {Family.LAMBDA: Family.LAMBDA_CONST, Family.MU: Family.MU_CONST}
_DIAG = {Family.LAMBDA: Family.LAMBDA_DIAG, Family.MU: Family.MU_DIAG}


def _target(a: Atom, rule):
    if isinstance(rule, str):
        if rule == "const" and a.family in _CONST:
            return LaurentPoly.var(atom(_CONST[a.family]))
        if rule == "diag" and a.family in _DIAG:
            return LaurentPoly.var(atom(_DIAG[a.family], a.row - a.col))
        raise ValueError(f"rule {rule!r} does not apply to {a}")
    if isinstance(rule, Atom):
        return LaurentPoly.var(rule)
    if isinstance(rule, (int, Fraction, LaurentPoly)):
        return LaurentPoly._coerce(rule)
    if callable(rule):
        return LaurentPoly._coerce(rule(a))
    raise TypeError(f"unsupported substitution target {rule!r}")


def specialize(p: LaurentPoly, rules: Mapping) -> LaurentPoly:
    """Substitute atoms according to ``rules`` and re-expand.

    Keys are families or individual atoms (atoms win).  Values are
    ``"const"`` (lambda[i,j] -> l, mu[i,j] -> m), ``"diag"`` (lambda[i,j] ->
    Ld[i-j]), numbers, atoms, Laurent polynomials, or callables of the atom.
    """
    images = {}
    for a in p.atoms():
        if a in rules:
            images[a] = _target(a, rules[a])
        elif a.family in rules:
            images[a] = _target(a, rules[a.family])

    out = LaurentPoly()
    acc = {}
    for m, c in p.terms.items():
        keep = []
        factor = LaurentPoly.const(c)
        for a, e in m:
            img = images.get(a)
            if img is None:
                keep.append((a, e))
                continue
            if img.is_zero():
                if e < 0:
                    raise ZeroSubstitutionIntoNegativePower(f"{a} -> 0 under exponent {e}")
                factor = LaurentPoly()
                break
            factor = factor * img ** e
        if factor.is_zero():
            continue
        if factor.is_monomial():
            (fm, fc), = factor.terms.items()
            key = mono_mul(tuple(keep), fm)
            acc[key] = acc.get(key, 0) + fc
        else:
            out = out + factor.mul_monomial(tuple(keep))
    return out + LaurentPoly(acc)


def determinant_rules():
    """mu -> 1, lambda -> -1, x0 -> 1: the recurrence becomes Dodgson condensation."""
    return {Family.MU: 1, Family.LAMBDA: -1, Family.X0: 1}


def lambda_determinant_rules():
    """lambda -> constant l, mu -> 1, x0 -> 1."""
    return {Family.LAMBDA: "const", Family.MU: 1, Family.X0: 1}
