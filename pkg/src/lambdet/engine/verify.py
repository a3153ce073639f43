"""Equivalence harness: condensation versus closed-form expansion.

For each convention variant and each pyramid size the apex is computed both
ways and compared symbolically and at seeded random rational points.  The
report also carries diagnostics that localize a disagreement: whether the two
sides agree once every mu is set to 1, and whether they differ only by a
monomial factor.  Mismatches are data; nothing here raises on them.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..asm import AsmMatrix, enumerate_asms
from ..interlacing import down_left, up_left
from ..laurent import (
    Family,
    LaurentPoly,
    NotDivisible,
    exact_div,
    evaluate,
    mono_mul,
    random_valuation,
    serialize,
    L,
    M,
    X1,
)
from .conventions import ConventionVariant
from .expansion import closed_form, specialize, term_monomial
from .pyramid import LaurentFailure, condensed_apex
from .weights import ShiftKind, shift_weight, x_weight

SCHEMA_VERSION = 1
EXCHANGE_SIZE = 3


def trial_seed(seed: int, n: int, trial: int) -> int:
    """Seed of one numeric trial; independent of the variant so runs line up."""
    return seed * 1_000_003 + n * 1_009 + trial


def _frac_text(v) -> str:
    return str(v)


def monomial_ratio(p: LaurentPoly, q: LaurentPoly) -> Optional[LaurentPoly]:
    """``p / q`` when it is a single term, else ``None``."""
    if p.is_zero() or q.is_zero():
        return None
    try:
        r = exact_div(p, q)
    except NotDivisible:
        return None
    return r if r.is_monomial() else None


@dataclass
class SizeVerdict:
    n: int
    symbolic_equal: Optional[bool]
    numeric_trials: int
    numeric_agree: int
    first_mismatch: Optional[dict]
    mu_one_equal: Optional[bool]
    monomial_ratio: Optional[str]
    condense_error: Optional[str] = None

    def to_json_obj(self):
        return dict(self.__dict__)


@dataclass
class ExchangeVerdict:
    size: int
    checked: int
    equal: int
    mu_one_equal: int
    failures: List[dict] = field(default_factory=list)

    def to_json_obj(self):
        return dict(self.__dict__)


@dataclass
class VariantVerdict:
    variant: ConventionVariant
    sizes: List[SizeVerdict]
    exchange: Optional[ExchangeVerdict]

    @property
    def symbolic_equal(self) -> Optional[bool]:
        vals = [s.symbolic_equal for s in self.sizes]
        if any(v is None for v in vals):
            return None
        return all(vals)

    @property
    def minimal_failing_n(self) -> Optional[int]:
        for s in self.sizes:
            if s.symbolic_equal is False or s.first_mismatch is not None or s.condense_error:
                return s.n
        return None

    def to_json_obj(self):
        return {
            "variant": self.variant.to_json_obj(),
            "symbolic_equal": self.symbolic_equal,
            "minimal_failing_n": self.minimal_failing_n,
            "sizes": [s.to_json_obj() for s in self.sizes],
            "exchange": self.exchange.to_json_obj() if self.exchange else None,
        }


@dataclass
class EquivalenceReport:
    n: int
    sizes: List[int]
    seed: int
    trials: int
    symbolic: bool
    verdicts: Dict[str, VariantVerdict]

    def validated(self) -> List[str]:
        return [vid for vid, v in self.verdicts.items() if v.symbolic_equal]

    def to_json_obj(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "sizes": self.sizes,
            "seed": self.seed,
            "trials": self.trials,
            "symbolic": self.symbolic,
            "validated": self.validated(),
            "verdicts": {vid: v.to_json_obj() for vid, v in self.verdicts.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=True)


def _mu_one(p: LaurentPoly) -> LaurentPoly:
    return specialize(p, {Family.MU: 1})


def compare_size(n: int, variant: ConventionVariant, symbolic: bool = True,
                 trials: int = 3, seed: int = 0) -> SizeVerdict:
    try:
        apex = condensed_apex(n, variant)
    except LaurentFailure as exc:
        return SizeVerdict(n, False if symbolic else None, 0, 0, None, None, None, str(exc))
    cf, _ = closed_form(n, n, variant)

    sym = apex == cf if symbolic else None
    mu_one = ratio = None
    if symbolic:
        mu_one = _mu_one(apex) == _mu_one(cf)
        if not sym:
            r = monomial_ratio(apex, cf)
            ratio = serialize(r) if r is not None else None

    atoms = apex.atoms() | cf.atoms()
    agree = 0
    mismatch = None
    for t in range(trials):
        s = trial_seed(seed, n, t)
        val = random_valuation(atoms, s)
        a, b = evaluate(apex, val), evaluate(cf, val)
        if a == b:
            agree += 1
        elif mismatch is None:
            mismatch = {"seed": s, "condensed": _frac_text(a), "closed_form": _frac_text(b)}
    if sym:
        assert mismatch is None, "symbolically equal polynomials evaluated differently"
    return SizeVerdict(n, sym, trials, agree, mismatch, mu_one, ratio)


def replay_mismatch(n: int, variant: ConventionVariant, seed: int):
    """Re-evaluate both sides at the valuation drawn from ``seed``."""
    apex = condensed_apex(n, variant)
    cf, _ = closed_form(n, n, variant)
    val = random_valuation(apex.atoms() | cf.atoms(), seed)
    return evaluate(apex, val), evaluate(cf, val)


# -- per-B exchange identity ----------------------------------------------


def first_layer_numerator(i: int, j: int, n: int, variant: ConventionVariant) -> LaurentPoly:
    """``D(x[1])[i,j]`` in a size-``n`` pyramid, in terms of ``x1`` atoms."""
    mu = LaurentPoly.var(M(i, n - 1 - j + variant.recurrence_mu_col))
    lam = LaurentPoly.var(L(i, j))
    x = lambda a, b: LaurentPoly.var(X1(a, b))  # noqa: E731
    return mu * x(i, j) * x(i + 1, j + 1) + lam * x(i, j + 1) * x(i + 1, j)


def _strip_x(m):
    return tuple((a, e) for a, e in m if a.family not in (Family.X0, Family.X1))


def exchange_sides(b: AsmMatrix, variant: ConventionVariant, n: Optional[int] = None):
    """Both sides of the per-B exchange identity with denominators cleared.

    Left:  sum over A in down_left(B) of w(B, A) * D(x1)^B * s(x1)^(-A).
    Right: sum over C in up_left(B) of w(C, B) * x1^C.
    ``w`` is the pair weight without its x part.  Both sides are multiplied
    by the product of ``D(x1)[i,j]`` over the -1 entries of B so they become
    Laurent polynomials.  ``n`` defaults to ``B.n + 1``, the smallest
    pyramid in which this step occurs.
    """
    k = b.n
    n = k + 1 if n is None else n
    d = {(i, j): first_layer_numerator(i, j, n, variant)
         for i in range(1, k + 1) for j in range(1, k + 1)}
    plus = LaurentPoly.const(1)
    for (i, j) in b.positions(1):
        plus = plus * d[i, j]
    minus = LaurentPoly.const(1)
    for (i, j) in b.positions(-1):
        minus = minus * d[i, j]

    lhs = LaurentPoly()
    if k >= 2:
        for a in down_left(b).matrices():
            w = _strip_x(term_monomial(b, a, variant))
            w = mono_mul(w, shift_weight(x_weight(a), ShiftKind.S_X1, -1))
            lhs = lhs + plus.mul_monomial(w)
    else:
        lhs = plus
    rhs = LaurentPoly()
    for c in up_left(b).matrices():
        w = _strip_x(term_monomial(c, b, variant))
        w = mono_mul(w, shift_weight(x_weight(c), ShiftKind.NONE_X1))
        rhs = rhs + LaurentPoly.mono(w)
    return lhs, rhs * minus


def check_exchange(variant: ConventionVariant, size: int = EXCHANGE_SIZE) -> ExchangeVerdict:
    checked = equal = mu_one = 0
    failures = []
    for b in enumerate_asms(size):
        lhs, rhs = exchange_sides(b, variant)
        checked += 1
        eq = lhs == rhs
        m1 = _mu_one(lhs) == _mu_one(rhs)
        equal += eq
        mu_one += m1
        if not eq:
            r = monomial_ratio(lhs, rhs)
            failures.append({
                "B": [list(r_) for r_ in b.rows],
                "mu_one_equal": m1,
                "monomial_ratio": serialize(r) if r is not None else None,
            })
    return ExchangeVerdict(size, checked, equal, mu_one, failures)


def _verdict(args):
    v, sizes, symbolic, trials, seed, exchange = args
    per = [compare_size(m, v, symbolic, trials, seed) for m in sizes]
    ex = check_exchange(v) if exchange else None
    return VariantVerdict(v, per, ex)


def verify_equivalence(n: int, variants, symbolic: bool = True, trials: int = 3,
                       seed: int = 0, exchange: bool = True, min_n: int = 2,
                       workers: int = 1) -> EquivalenceReport:
    """Compare condensation and expansion for sizes ``min_n..n`` per variant.

    With ``workers > 1`` variants run in separate processes; the report is
    assembled in registry order, so it does not depend on scheduling.
    """
    if n < min_n:
        raise ValueError(f"n must be at least {min_n}")
    sizes = list(range(min_n, n + 1))
    jobs = [(v, sizes, symbolic, trials, seed, exchange) for v in variants]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_verdict, jobs))
    else:
        results = [_verdict(j) for j in jobs]
    verdicts = {r.variant.id: r for r in results}
    return EquivalenceReport(n, sizes, seed, trials, symbolic, verdicts)


def conventions_ledger(report: EquivalenceReport) -> str:
    """Markdown table of each variant's verdict per size."""
    lines = ["# Convention verdicts", "",
             f"seed {report.seed}, {report.trials} numeric trials per size", "",
             "| variant | " + " | ".join(f"n={m}" for m in report.sizes) + " | exchange (equal / mu=1 equal) |",
             "|---" * (len(report.sizes) + 2) + "|"]
    for vid, v in report.verdicts.items():
        cells = []
        for s in v.sizes:
            if s.condense_error:
                cells.append("not Laurent")
            elif s.symbolic_equal:
                cells.append("equal")
            elif s.symbolic_equal is None:
                cells.append(f"{s.numeric_agree}/{s.numeric_trials} numeric")
            elif s.monomial_ratio:
                cells.append(f"differs by {s.monomial_ratio}")
            else:
                cells.append("differs" + (" (mu=1 equal)" if s.mu_one_equal else ""))
        ex = v.exchange
        ex_cell = f"{ex.equal}/{ex.checked} / {ex.mu_one_equal}/{ex.checked}" if ex else "-"
        lines.append(f"| {vid} | " + " | ".join(cells) + f" | {ex_cell} |")
    return "\n".join(lines) + "\n"
