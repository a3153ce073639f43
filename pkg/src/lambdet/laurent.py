"""Sparse multivariate Laurent polynomials with exact rational coefficients.

Atoms are ``(family, row, col)`` triples.  A monomial is a tuple of
``(atom, exponent)`` pairs sorted by atom with no zero exponents; the empty
tuple is the unit monomial.  Coefficients are ``int`` when integral and
``Fraction`` otherwise, so integer-coefficient work never pays for rationals.
"""

from __future__ import annotations

import heapq
import json
import random
import re
from enum import IntEnum
from fractions import Fraction
from typing import Dict, Iterable, Mapping, NamedTuple, Tuple, Union

Rational = Union[int, Fraction]


class Family(IntEnum):
    X0 = 0
    X1 = 1
    LAMBDA = 2
    MU = 3
    # targets of specialization
    LAMBDA_CONST = 4
    MU_CONST = 5
    LAMBDA_DIAG = 6
    MU_DIAG = 7


_PREFIX = {
    Family.X0: "x0",
    Family.X1: "x1",
    Family.LAMBDA: "L",
    Family.MU: "M",
    Family.LAMBDA_CONST: "l",
    Family.MU_CONST: "m",
    Family.LAMBDA_DIAG: "Ld",
    Family.MU_DIAG: "Md",
}
_FAMILY_OF = {v: k for k, v in _PREFIX.items()}
_INDEXED = (Family.X0, Family.X1, Family.LAMBDA, Family.MU)


class LaurentError(Exception):
    pass


class NotDivisible(LaurentError):
    pass


class DivZero(LaurentError, ZeroDivisionError):
    pass


class UnboundAtom(LaurentError, KeyError):
    pass


class ZeroBinding(LaurentError, ValueError):
    pass


class ParseError(LaurentError, ValueError):
    pass


class Atom(NamedTuple):
    family: Family
    row: int
    col: int

    def __str__(self):
        prefix = _PREFIX[self.family]
        if self.family in _INDEXED:
            return f"{prefix}[{self.row},{self.col}]"
        if self.family in (Family.LAMBDA_DIAG, Family.MU_DIAG):
            return f"{prefix}[{self.row}]"
        return prefix


def atom(family, row=0, col=0) -> Atom:
    """Build a validated atom.

    Indexed families need ``row >= 1``; the column must be ``>= 1`` except
    for ``Mu``, which admits column 0.  Diagonal families carry the
    difference ``i - j`` in ``row``.
    """
    family = Family(family)
    if family in _INDEXED:
        min_col = 0 if family == Family.MU else 1
        if row < 1 or col < min_col:
            raise IndexError(f"atom index out of domain: {_PREFIX[family]}[{row},{col}]")
    elif family in (Family.LAMBDA_DIAG, Family.MU_DIAG):
        col = 0
    else:
        row = col = 0
    return Atom(family, int(row), int(col))


def X0(i, j):
    return atom(Family.X0, i, j)


def X1(i, j):
    return atom(Family.X1, i, j)


def L(i, j):
    return atom(Family.LAMBDA, i, j)


def M(i, j):
    return atom(Family.MU, i, j)


Monomial = Tuple[Tuple[Atom, int], ...]
ONE_MONOMIAL: Monomial = ()


def monomial(exponents: Mapping[Atom, int]) -> Monomial:
    return tuple(sorted((a, e) for a, e in exponents.items() if e))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for at, e in b:
        s = d.get(at, 0) + e
        if s:
            d[at] = s
        else:
            del d[at]
    return tuple(sorted(d.items()))


def mono_pow(a: Monomial, k: int) -> Monomial:
    if k == 0:
        return ()
    return tuple((at, e * k) for at, e in a)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_key(m: Monomial):
    """Sort key realizing graded-lex order over the atom order.

    Lex compares exponent vectors at the first atom where they differ.  On
    the sparse form an absent atom has exponent 0, so each stored pair is
    mapped to a key that beats the terminal sentinel iff its exponent is
    positive.
    """
    parts = [(1, -a[0], -a[1], -a[2], e) if e > 0 else (-1, a[0], a[1], a[2], e)
             for a, e in m]
    parts.append((0,))
    return (mono_degree(m), tuple(parts))


def _norm(c) -> Rational:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _div_coef(a: Rational, b: Rational) -> Rational:
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return _norm(Fraction(a) / b)


class LaurentPoly:
    """Immutable sparse Laurent polynomial.

    ``terms`` maps monomials to nonzero coefficients.  Instances must not be
    mutated after construction.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Rational] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = _norm(c)
        self.terms: Dict[Monomial, Rational] = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Rational) -> "LaurentPoly":
        return cls({(): c})

    @classmethod
    def var(cls, a: Atom, exp: int = 1) -> "LaurentPoly":
        return cls({((a, exp),) if exp else (): 1})

    @classmethod
    def mono(cls, m: Monomial, c: Rational = 1) -> "LaurentPoly":
        return cls({m: c})

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def atoms(self) -> set:
        return {a for m in self.terms for a, _ in m}

    def coefficients_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    def __add__(self, other):
        other = self._coerce(other)
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _norm(s)
            else:
                del out[m]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return LaurentPoly._raw({})
        if len(a) < len(b):
            a, b = b, a
        out: Dict[Monomial, Rational] = {}
        get = out.get
        b_items = list(b.items())
        for ma, ca in a.items():
            for mb, cb in b_items:
                m = mono_mul(ma, mb)
                out[m] = get(m, 0) + ca * cb
        return LaurentPoly._raw({m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise NotDivisible("negative power of a non-monomial")
            (m, c), = self.terms.items()
            return LaurentPoly.mono(mono_pow(m, k), _norm(Fraction(c) ** k))
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, m: Monomial, c: Rational = 1) -> "LaurentPoly":
        if not c:
            return LaurentPoly._raw({})
        return LaurentPoly._raw({mono_mul(k, m): _norm(v * c) for k, v in self.terms.items()})

    def __truediv__(self, other):
        return exact_div(self, self._coerce(other))

    # -- ordering / display -----------------------------------------------

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def leading_term(self):
        return max(self.terms.items(), key=lambda t: mono_key(t[0]))

    def __str__(self):
        return serialize(self)

    def __repr__(self):
        return f"LaurentPoly({serialize(self)!r})"


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)


def add(p, q):
    return LaurentPoly._coerce(p) + q


def mul(p, q):
    return LaurentPoly._coerce(p) * q


def negate(p):
    return -LaurentPoly._coerce(p)


def monomial_content(p: LaurentPoly) -> Monomial:
    """Greatest monomial dividing every term (componentwise minimum exponent)."""
    low: Dict[Atom, int] = {}
    seen: Dict[Atom, int] = {}
    for m in p.terms:
        for a, e in m:
            low[a] = min(low.get(a, e), e)
            seen[a] = seen.get(a, 0) + 1
    n = len(p.terms)
    for a in low:
        if seen[a] < n and low[a] > 0:
            low[a] = 0
    return monomial(low)


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return ``r`` with ``r * q == p``; raise ``NotDivisible`` otherwise.

    Both operands are shifted into the polynomial ring by their monomial
    content, then divided by leading terms.  Monomials are encoded as
    integers in mixed radix (total degree first, then exponents in atom
    order) so that the graded-lex order is integer order and multiplying
    monomials is integer addition.
    """
    if q.is_zero():
        raise DivZero("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    if q.is_monomial():
        (mq, cq), = q.terms.items()
        inv = mono_pow(mq, -1)
        return LaurentPoly._raw({mono_mul(m, inv): _div_coef(c, cq) for m, c in p.terms.items()})

    cp = monomial_content(p)
    cq = monomial_content(q)
    inv_p, inv_q = mono_pow(cp, -1), mono_pow(cq, -1)
    pp = {mono_mul(m, inv_p): c for m, c in p.terms.items()}
    qq = {mono_mul(m, inv_q): c for m, c in q.terms.items()}

    atoms = sorted({a for m in pp for a, _ in m} | {a for m in qq for a, _ in m})
    pos = {a: k for k, a in enumerate(atoms)}
    n = len(atoms)
    base = max(max(mono_degree(m) for m in pp), max(mono_degree(m) for m in qq)) + 1
    weights = [base ** (n - 1 - k) for k in range(n)]
    top = base ** n

    def encode(m):
        code = mono_degree(m) * top
        for a, e in m:
            code += e * weights[pos[a]]
        return code

    def digits(code):
        code %= top
        out = [0] * n
        for k in range(n - 1, -1, -1):
            code, out[k] = divmod(code, base)
        return out

    q_items = sorted(((encode(m), c) for m, c in qq.items()), reverse=True)
    lead_code, lead_coef = q_items[0]
    lead_digits = digits(lead_code)
    tail = q_items[1:]

    rem = {encode(m): c for m, c in pp.items()}
    heap = [-c for c in rem]
    heapq.heapify(heap)
    quotient: Dict[int, Rational] = {}
    while heap:
        code = -heapq.heappop(heap)
        c = rem.pop(code, 0)
        if not c:
            continue
        qcode = code - lead_code
        if qcode < 0 or any(d < l for d, l in zip(digits(code), lead_digits)):
            raise NotDivisible("leading term of remainder is not divisible by divisor's leading term")
        qc = _div_coef(c, lead_coef)
        quotient[qcode] = qc
        for tcode, tc in tail:
            k = qcode + tcode
            old = rem.get(k)
            if old is None:
                rem[k] = -qc * tc
                heapq.heappush(heap, -k)
            else:
                s = old - qc * tc
                if s:
                    rem[k] = s
                else:
                    del rem[k]

    shift = mono_mul(cp, inv_q)
    out = {}
    for code, c in quotient.items():
        ds = digits(code)
        m = tuple((atoms[k], e) for k, e in enumerate(ds) if e)
        out[mono_mul(m, shift)] = _norm(c)
    return LaurentPoly._raw(out)


# -- evaluation -----------------------------------------------------------


class Valuation(dict):
    """Mapping atom -> nonzero rational."""

    def __init__(self, bindings=()):
        super().__init__()
        for a, v in dict(bindings).items():
            v = _norm(Fraction(v))
            if not v:
                raise ZeroBinding(f"zero binding for {a}")
            self[a] = v


def evaluate(p: LaurentPoly, v: Mapping[Atom, Rational]) -> Rational:
    total: Rational = 0
    for m, c in p.terms.items():
        term = Fraction(c)
        for a, e in m:
            try:
                x = v[a]
            except KeyError:
                raise UnboundAtom(str(a)) from None
            if not x:
                raise ZeroBinding(str(a))
            term *= Fraction(x) ** e
        total += term
    return _norm(Fraction(total))


def random_valuation(atoms: Iterable[Atom], seed: int, bit_size: int = 16) -> Valuation:
    """Deterministic nonzero rational point; numerator/denominator below 2**bit_size.

    Each atom draws from its own stream keyed by ``seed`` and the atom, so the
    value of an atom does not depend on which other atoms are present.
    """
    bound = 1 << bit_size
    out = {}
    for a in set(atoms):
        rng = random.Random(f"{seed}:{a.family.name}:{a.row}:{a.col}")
        num = rng.randint(1, bound - 1) * rng.choice((-1, 1))
        den = rng.randint(1, bound - 1)
        out[a] = Fraction(num, den)
    return Valuation(out)


# -- serialization --------------------------------------------------------

_ATOM_RE = re.compile(r"^(x0|x1|L|M|Ld|Md|l|m)(?:\[(-?\d+)(?:,(-?\d+))?\])?$")
_COEF_RE = re.compile(r"^-?\d+(?:/\d+)?$")


def _coef_text(c: Rational) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _mono_text(m: Monomial) -> str:
    return "*".join(str(a) if e == 1 else f"{a}^{e}" for a, e in m)


def serialize(p: LaurentPoly) -> str:
    """Canonical text: descending graded-lex terms joined by ``" + "``."""
    if p.is_zero():
        return "0"
    parts = []
    for m, c in p.sorted_terms():
        if not m:
            parts.append(_coef_text(c))
        elif c == 1:
            parts.append(_mono_text(m))
        else:
            parts.append(f"{_coef_text(c)}*{_mono_text(m)}")
    return " + ".join(parts)


def parse_atom(text: str) -> Atom:
    mt = _ATOM_RE.match(text)
    if not mt:
        raise ParseError(f"bad atom: {text!r}")
    fam = _FAMILY_OF[mt.group(1)]
    i, j = mt.group(2), mt.group(3)
    if fam in _INDEXED:
        if i is None or j is None:
            raise ParseError(f"atom needs two indices: {text!r}")
        return atom(fam, int(i), int(j))
    if fam in (Family.LAMBDA_DIAG, Family.MU_DIAG):
        if i is None or j is not None:
            raise ParseError(f"diagonal atom needs one index: {text!r}")
        return atom(fam, int(i))
    if i is not None:
        raise ParseError(f"constant atom takes no index: {text!r}")
    return atom(fam)


def deserialize(text: str) -> LaurentPoly:
    text = text.strip()
    if text == "0":
        return ZERO
    if not text:
        raise ParseError("empty polynomial text")
    terms: Dict[Monomial, Rational] = {}
    for chunk in text.split(" + "):
        factors = chunk.split("*")
        coef: Rational = 1
        if _COEF_RE.match(factors[0]):
            coef = _norm(Fraction(factors.pop(0)))
        exps: Dict[Atom, int] = {}
        for f in factors:
            base, _, e = f.partition("^")
            try:
                k = int(e) if e else 1
            except ValueError:
                raise ParseError(f"bad exponent in {f!r}") from None
            a = parse_atom(base)
            exps[a] = exps.get(a, 0) + k
        m = monomial(exps)
        if m in terms:
            raise ParseError(f"duplicate monomial in {text!r}")
        terms[m] = coef
    return LaurentPoly(terms)


def to_json_obj(p: LaurentPoly) -> dict:
    return {
        "terms": [
            {"coef": _coef_text(c),
             "monomial": [[_PREFIX[a.family], a.row, a.col, e] for a, e in m]}
            for m, c in p.sorted_terms()
        ]
    }


def from_json_obj(obj) -> LaurentPoly:
    try:
        terms = {}
        for t in obj["terms"]:
            exps = {}
            for fam, row, col, e in t["monomial"]:
                a = atom(_FAMILY_OF[fam], row, col)
                exps[a] = exps.get(a, 0) + int(e)
            terms[monomial(exps)] = _norm(Fraction(t["coef"]))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"bad polynomial JSON: {exc}") from None
    return LaurentPoly(terms)


def to_json(p: LaurentPoly) -> str:
    return json.dumps(to_json_obj(p), sort_keys=True)


def from_json(text: str) -> LaurentPoly:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from None
    return from_json_obj(obj)
