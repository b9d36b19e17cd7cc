"""Exact Laurent polynomials in the bracket variable ``A``.

Coefficients are Python integers (arbitrary precision) and the representation
is sparse: a mapping from exponent to nonzero coefficient.  Values are
immutable, so they can be shared freely between worker processes.

Besides the ring operations this module provides exact division, Lucas
sequences ``U_k(P, Q)`` over the Laurent ring, the change of variable
``t = A^-4`` used for Jones polynomials, and a small field of fractions
(:class:`RationalFunc`) for the few closed forms that carry denominators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

__all__ = [
    "LaurentPoly",
    "RationalFunc",
    "LucasParams",
    "DegreeBounds",
    "NotDivisible",
    "NotAPowerOfT",
    "ZeroPolynomial",
    "ParseError",
    "A",
    "ONE",
    "ZERO",
    "mul",
    "exact_div",
    "lucas_u",
    "lucas_sequence",
    "substitute_t",
    "from_t",
    "degree_bounds",
    "parse",
    "render",
    "render_t",
    "loop_value",
    "pack",
    "unpack",
]


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_div` when the remainder is nonzero."""


class NotAPowerOfT(ValueError):
    """Raised when a polynomial in ``A`` has an exponent not divisible by 4."""


class ZeroPolynomial(ValueError):
    """Raised when degree information is requested for the zero polynomial."""


class ParseError(ValueError):
    pass


class LaurentPoly:
    """An integer Laurent polynomial, stored as ``{exponent: coefficient}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | int | None = None):
        acc: dict[int, int] = {}
        if terms is None:
            pass
        elif isinstance(terms, int):
            if terms:
                acc[0] = terms
        else:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for e, c in items:
                acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> "LaurentPoly":
        # terms must already be canonical (no zero coefficients)
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls._raw({exponent: coefficient} if coefficient else {})

    # -- inspection -------------------------------------------------------

    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._terms.items()))

    def coeff(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        return max(self._terms)

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        return min(self._terms)

    def at_one(self) -> int:
        """Value at ``A = 1`` (the sum of the coefficients)."""
        return sum(self._terms.values())

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return LaurentPoly._raw(acc)

    __radd__ = __add__

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> "LaurentPoly":
        return LaurentPoly(other) - self

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly._raw({e * k: c ** (-k)})
            raise ValueError("negative powers are defined for unit monomials only")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``A^k``."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def __repr__(self) -> str:
        return f"LaurentPoly({render(self)!r})"

    def __str__(self) -> str:
        return render(self)


ZERO = LaurentPoly()
ONE = LaurentPoly(1)
A = LaurentPoly.monomial(1)


def loop_value() -> LaurentPoly:
    """The value ``-A^2 - A^-2`` of a crossing-free loop."""
    return LaurentPoly({2: -1, -2: -1})


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``q * b == a`` or raise :class:`NotDivisible`.

    Long division from the top exponent; since ``A`` is a unit the quotient
    is unique when it exists.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rem = dict(a.terms())
    bt = b.terms()
    bhi = max(bt)
    blo = min(bt)
    lead = bt[bhi]
    quot: dict[int, int] = {}
    while rem:
        top = max(rem)
        if top - bhi + blo < min(rem):
            raise NotDivisible(f"{render(a)} is not divisible by {render(b)}")
        c, r = divmod(rem[top], lead)
        if r:
            raise NotDivisible(f"{render(a)} is not divisible by {render(b)}")
        shift = top - bhi
        quot[shift] = quot.get(shift, 0) + c
        for e, bc in bt.items():
            k = e + shift
            v = rem.get(k, 0) - c * bc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return LaurentPoly(quot)


@dataclass(frozen=True)
class LucasParams:
    """Symmetric data ``P = a + abar`` and ``Q = a * abar`` of a root pair."""

    P: LaurentPoly
    Q: LaurentPoly


def lucas_sequence(params: LucasParams, k: int) -> list[LaurentPoly]:
    """``[U_0, ..., U_k]`` where ``U_j = (a^j - abar^j) / (a - abar)``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    seq = [ZERO, ONE]
    for _ in range(2, k + 1):
        seq.append(params.P * seq[-1] - params.Q * seq[-2])
    return seq[: k + 1]


def lucas_u(params: LucasParams, k: int) -> LaurentPoly:
    return lucas_sequence(params, k)[k]


def pack(p: LaurentPoly, offset: int, width: int) -> int:
    """Kronecker substitution: ``sum c_e * 2^(width * (e + offset))``.

    Signed coefficients are fine as long as ``|c| < 2^(width-1)`` for every
    coefficient of every value later passed to :func:`unpack`.
    """
    acc = 0
    for e, c in p._terms.items():
        if e + offset < 0:
            raise ValueError("exponent below packing offset")
        acc += c << (width * (e + offset))
    return acc


def unpack(x: int, offset: int, width: int) -> LaurentPoly:
    """Inverse of :func:`pack` for balanced digits; ``width`` a multiple of 8."""
    if not x:
        return ZERO
    if width % 8:
        raise ValueError("width must be a multiple of 8")
    nb = width // 8
    slots = (abs(x).bit_length() + width) // width + 1
    half = 1 << (width - 1)
    bias_digit = (b"\x00" * (nb - 1)) + b"\x80"
    bias = int.from_bytes(bias_digit * slots, "little")
    raw = (x + bias).to_bytes(nb * slots + 1, "little")
    terms = {}
    for k in range(slots):
        c = int.from_bytes(raw[k * nb:(k + 1) * nb], "little") - half
        if c:
            terms[k - offset] = c
    return LaurentPoly._raw(terms)


def substitute_t(p: LaurentPoly) -> LaurentPoly:
    """Rewrite a polynomial in ``A`` as one in ``t = A^-4``.

    The result is a :class:`LaurentPoly` whose exponents are powers of ``t``.
    """
    out = {}
    for e, c in p.terms().items():
        if e % 4:
            raise NotAPowerOfT(f"exponent {e} of A is not a multiple of 4")
        out[-e // 4] = c
    return LaurentPoly._raw(out)


def from_t(p: LaurentPoly) -> LaurentPoly:
    """Inverse of :func:`substitute_t`."""
    return LaurentPoly._raw({-4 * e: c for e, c in p.terms().items()})


@dataclass(frozen=True)
class DegreeBounds:
    rho_h: int
    rho_l: int

    @property
    def breadth(self) -> int:
        return self.rho_h - self.rho_l


def degree_bounds(p: LaurentPoly) -> DegreeBounds:
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has no degree bounds")
    return DegreeBounds(p.max_exp, p.min_exp)


# -- text form ------------------------------------------------------------

def _render_terms(items: list[tuple[int, int]], var: str) -> str:
    if not items:
        return "0"
    parts = []
    for idx, (e, c) in enumerate(items):
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if idx == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def render(p: LaurentPoly, var: str = "A") -> str:
    """Terms in decreasing exponent order, e.g. ``-A^5 - A^-3 + A^-7``."""
    return _render_terms(sorted(p.terms().items(), reverse=True), var)


def render_t(p: LaurentPoly) -> str:
    """Render a polynomial already expressed in ``t``.

    Terms are listed by increasing power of ``t`` (equivalently decreasing
    power of ``A``), e.g. ``t + t^3 - t^4``.
    """
    return _render_terms(sorted(p.terms().items()), "t")


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+)\s*(?:\*\s*)?)?
        (?:(?P<var>[A-Za-z])(?:\s*\^\s*\{?\s*(?P<exp>[+-]?\d+)\s*\}?)?)?
        \s*""",
    re.VERBOSE,
)


def parse(text: str, var: str | None = None) -> LaurentPoly:
    """Parse the grammar produced by :func:`render` (and ``^{-k}`` braces).

    ``var`` fixes the variable letter; by default the first letter seen is
    used and any other letter is rejected.
    """
    s = text.strip()
    if s == "0":
        return ZERO
    if not s:
        raise ParseError("empty polynomial")
    pos = 0
    acc: dict[int, int] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected text at column {pos}: {s[pos:]!r}")
        if not first and m.group("sign") is None:
            raise ParseError(f"missing '+' or '-' at column {pos}")
        if m.group("coef") is None and m.group("var") is None:
            raise ParseError(f"empty term at column {pos}")
        v = m.group("var")
        if v is not None:
            if var is None:
                var = v
            elif v != var:
                raise ParseError(f"unexpected variable {v!r} (expected {var!r})")
        coef = int(m.group("coef")) if m.group("coef") else 1
        if m.group("sign") == "-":
            coef = -coef
        if v is None:
            exp = 0
        else:
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
        acc[exp] = acc.get(exp, 0) + coef
        pos = m.end()
        first = False
    return LaurentPoly(acc)


# -- rational functions ---------------------------------------------------

def _to_dense(p: LaurentPoly) -> list[Fraction]:
    # coefficients lowest-first of p / A^min_exp
    lo, hi = p.min_exp, p.max_exp
    return [Fraction(p.coeff(e)) for e in range(lo, hi + 1)]


def _trim(v: list[Fraction]) -> list[Fraction]:
    while v and v[-1] == 0:
        v.pop()
    return v


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        off = len(a) - len(b)
        for i, bc in enumerate(b):
            a[off + i] -= f * bc
        _trim(a)
    return a


def _gcd_dense(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def _primitive(v: list[Fraction]) -> LaurentPoly:
    from math import gcd, lcm

    den = 1
    for c in v:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in v]
    g = 0
    for c in ints:
        g = gcd(g, c)
    g = g or 1
    if ints and ints[-1] < 0:
        g = -g
    return LaurentPoly({i: c // g for i, c in enumerate(ints) if c})


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Primitive gcd of the polynomial parts (monomial factors are units)."""
    if a.is_zero():
        return _primitive(_to_dense(b)) if b else ONE
    if b.is_zero():
        return _primitive(_to_dense(a))
    return _primitive(_gcd_dense(_to_dense(a), _to_dense(b)))


class RationalFunc:
    """A quotient of Laurent polynomials in lowest terms.

    The denominator is normalized to have lowest exponent 0 and a positive
    coefficient there.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly | int, den: LaurentPoly | int = 1):
        num = num if isinstance(num, LaurentPoly) else LaurentPoly(num)
        den = den if isinstance(den, LaurentPoly) else LaurentPoly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        g = poly_gcd(num, den)
        if g != ONE:
            num = exact_div(num, g)
            den = exact_div(den, g)
        # content of num/den over Z
        from math import gcd

        cn = 0
        for c in num.terms().values():
            cn = gcd(cn, c)
        cd = 0
        for c in den.terms().values():
            cd = gcd(cd, c)
        h = gcd(cn, cd)
        lo = den.min_exp
        if den.coeff(lo) < 0:
            h = -h
        num = LaurentPoly({e: c // h for e, c in num.terms().items()}).shift(-lo)
        den = LaurentPoly({e: c // h for e, c in den.terms().items()}).shift(-lo)
        self.num, self.den = num, den

    @classmethod
    def of(cls, value: "RationalFunc | LaurentPoly | int") -> "RationalFunc":
        return value if isinstance(value, RationalFunc) else cls(value)

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def to_poly(self) -> LaurentPoly:
        """The numerator when the denominator has cleared; else NotDivisible."""
        if self.den == ONE:
            return self.num
        return exact_div(self.num, self.den)

    def __add__(self, other):
        o = RationalFunc.of(other)
        return RationalFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunc.of(other))

    def __rsub__(self, other):
        return RationalFunc.of(other) - self

    def __mul__(self, other):
        o = RationalFunc.of(other)
        return RationalFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFunc.of(other)
        return RationalFunc(self.num * o.den, self.den * o.num)

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = RationalFunc(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunc(({render(self.num)}) / ({render(self.den)}))"
