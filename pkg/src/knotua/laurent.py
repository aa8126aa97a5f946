"""Exact arithmetic in the Laurent polynomial ring Z[t, t^-1].

A :class:`LaurentPoly` is immutable. Internally it stores the lowest
exponent and a dense coefficient tuple whose first and last entries are
nonzero, so the zero polynomial is the empty tuple.

Text form follows the grammar ``term = [sign] [int] ['t' ['^' int]]``,
terms in descending exponent order, e.g. ``t - 1 + t^-1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from knotua._kernels import convolve
from knotua.errors import NotNormalizable, ParseError, ZeroEvaluationPoint


def _trim(low: int, coeffs: list) -> tuple[int, tuple]:
    start = 0
    while start < len(coeffs) and coeffs[start] == 0:
        start += 1
    end = len(coeffs)
    while end > start and coeffs[end - 1] == 0:
        end -= 1
    if start == end:
        return 0, ()
    return low + start, tuple(coeffs[start:end])


class LaurentPoly:
    __slots__ = ("_low", "_c", "_hash")

    def __init__(self, terms: Mapping[int, int] | int | None = None):
        if terms is None:
            terms = {}
        elif isinstance(terms, int):
            terms = {0: terms}
        items = {e: int(c) for e, c in terms.items() if c}
        if not items:
            self._low, self._c = 0, ()
        else:
            lo, hi = min(items), max(items)
            self._low = lo
            self._c = tuple(items.get(e, 0) for e in range(lo, hi + 1))
        self._hash = None

    @classmethod
    def from_coeffs(cls, low: int, coeffs: Iterable[int]) -> LaurentPoly:
        """Build from a dense coefficient list starting at exponent ``low``."""
        obj = cls.__new__(cls)
        obj._low, obj._c = _trim(low, list(coeffs))
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff: int = 1, exp: int = 1) -> LaurentPoly:
        return cls.from_coeffs(exp, [coeff])

    # -- structure -------------------------------------------------------
    @property
    def low(self) -> int:
        """Lowest exponent with nonzero coefficient (0 for the zero poly)."""
        return self._low

    @property
    def high(self) -> int:
        return self._low + len(self._c) - 1 if self._c else 0

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def coefficients(self) -> dict[int, int]:
        return {self._low + i: c for i, c in enumerate(self._c) if c}

    def span(self) -> int:
        """Exponent span ``high - low``; 0 for constants and for zero."""
        return len(self._c) - 1 if self._c else 0

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def is_unit(self) -> bool:
        return len(self._c) == 1 and self._c[0] in (1, -1)

    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and self._low == 0)

    def content(self) -> int:
        g = 0
        for c in self._c:
            g = gcd(g, c)
        return g

    def leading_coefficient(self) -> int:
        return self._c[-1] if self._c else 0

    # -- arithmetic ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c and (not self._c or self._low == other._low)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._low, self._c))
        return self._hash

    def __neg__(self):
        return LaurentPoly.from_coeffs(self._low, [-c for c in self._c])

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        lo = min(self._low, other._low)
        hi = max(self.high, other.high)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self._c):
            out[self._low - lo + i] += c
        for i, c in enumerate(other._c):
            out[other._low - lo + i] += c
        return LaurentPoly.from_coeffs(lo, out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return LaurentPoly.from_coeffs(self._low, [c * other for c in self._c])
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._c or not other._c:
            return ZERO
        return LaurentPoly.from_coeffs(self._low + other._low, convolve(self._c, other._c))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise ValueError("negative power of a non-unit")
            m = -k
            return LaurentPoly.from_coeffs(-self._low * m, [self._c[0] ** m])
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by t^k."""
        if not self._c:
            return self
        return LaurentPoly.from_coeffs(self._low + k, self._c)

    def conjugate(self) -> LaurentPoly:
        """The involution t -> t^-1."""
        if not self._c:
            return self
        return LaurentPoly.from_coeffs(-self.high, self._c[::-1])

    def exact_div(self, other: LaurentPoly) -> LaurentPoly | None:
        """Quotient ``self / other`` if it lies in Z[t, t^-1], else None."""
        if not other._c:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self._c:
            return ZERO
        q = _zt_exact_div(list(self._c), list(other._c))
        if q is None:
            return None
        return LaurentPoly.from_coeffs(self._low - other._low, q)

    def divides(self, other: LaurentPoly) -> bool:
        return other.exact_div(self) is not None

    def __call__(self, x):
        return evaluate(self, x)

    # -- text ------------------------------------------------------------
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"LaurentPoly({render(self)!r})"


ZERO = LaurentPoly()
ONE = LaurentPoly(1)
T = LaurentPoly.monomial(1, 1)
T_INV = LaurentPoly.monomial(1, -1)


def as_laurent(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly(x)
    if isinstance(x, str):
        return parse(x)
    raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")


# ---------------------------------------------------------------------------
# dense Z[t] helpers (lists, lowest degree first, nonzero leading coefficient)

def _zt_exact_div(a: list, b: list) -> list | None:
    """Exact quotient a / b in Z[t] where b(0) != 0 and a(0) != 0, or None."""
    if len(a) < len(b):
        return None
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c:
            f, rem = divmod(c, lb)
            if rem:
                return None
            q[k - db] = f
            for j in range(db + 1):
                r[k - db + j] -= f * b[j]
    if any(r[:db]):
        return None
    return q


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder of a by b in Z[t]."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j in range(db + 1):
            r[shift + j] -= c * b[j]
        while r and r[-1] == 0:
            r.pop()
    return r


def _primitive(a: list) -> tuple[int, list]:
    g = 0
    for c in a:
        g = gcd(g, c)
    if g == 0:
        return 0, []
    if a[-1] < 0:
        g = -g
    return abs(g), [c // g for c in a]


def _zt_gcd(a: list, b: list) -> list:
    """gcd in Z[t] by primitive pseudo-remainder sequence; positive leading coefficient."""
    if not a or not b:
        c = a or b
        return [x * (1 if c[-1] > 0 else -1) for x in c]
    ca, pa = _primitive(a)
    cb, pb = _primitive(b)
    content = gcd(ca, cb)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb:
        r = _prem(pa, pb)
        pa = pb
        pb = _primitive(r)[1] if r else []
    if pa[-1] < 0:
        pa = [-c for c in pa]
    return [content * c for c in pa]


# ---------------------------------------------------------------------------
# public operations

def multiply(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def conjugate(p: LaurentPoly) -> LaurentPoly:
    return p.conjugate()


@dataclass(frozen=True)
class UnitFactor:
    """The unit ``sign * t^power`` of Z[t, t^-1]."""

    sign: int
    power: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("unit sign must be +1 or -1")

    def as_poly(self) -> LaurentPoly:
        return LaurentPoly.monomial(self.sign, self.power)


def doteq_witness(f: LaurentPoly, g: LaurentPoly) -> UnitFactor | None:
    """Return the unit u with g = u * f, or None if f and g are not associates."""
    if f.is_zero() or g.is_zero():
        return UnitFactor(1, 0) if f.is_zero() and g.is_zero() else None
    if len(f.coeffs) != len(g.coeffs):
        return None
    k = g.low - f.low
    if f.coeffs == g.coeffs:
        return UnitFactor(1, k)
    if all(x == -y for x, y in zip(f.coeffs, g.coeffs)):
        return UnitFactor(-1, k)
    return None


def doteq(f: LaurentPoly, g: LaurentPoly) -> bool:
    """True iff g = +-t^k f for some integer k."""
    return doteq_witness(f, g) is not None


def canonical(p: LaurentPoly) -> LaurentPoly:
    """Associate of p with lowest exponent 0 and positive leading coefficient."""
    if p.is_zero():
        return p
    sign = 1 if p.leading_coefficient() > 0 else -1
    return LaurentPoly.from_coeffs(0, [sign * c for c in p.coeffs])


def laurent_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """A gcd of f and g in Z[t, t^-1], in canonical form."""
    if f.is_zero():
        return canonical(g)
    if g.is_zero():
        return canonical(f)
    return LaurentPoly.from_coeffs(0, _zt_gcd(list(f.coeffs), list(g.coeffs)))


def evaluate(p: LaurentPoly, x) -> Fraction:
    """Exact value p(x) at a nonzero rational x."""
    x = Fraction(x)
    if x == 0:
        raise ZeroEvaluationPoint("Laurent polynomials cannot be evaluated at 0")
    if p.is_zero():
        return Fraction(0)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc * x ** p.low


def value_at_one(p: LaurentPoly) -> int:
    return sum(p.coeffs)


def normalize_alexander(raw: LaurentPoly) -> LaurentPoly:
    """The associate of ``raw`` that is symmetric and takes the value 1 at t = 1."""
    v = value_at_one(raw)
    if abs(v) != 1:
        raise NotNormalizable(f"|p(1)| = {abs(v)} != 1 for {raw}")
    if raw.span() % 2:
        raise NotNormalizable(f"{raw} has odd span and cannot be made symmetric")
    delta = LaurentPoly.from_coeffs(-(raw.span() // 2), [v * c for c in raw.coeffs])
    if delta.conjugate() != delta:
        raise NotNormalizable(f"no unit multiple of {raw} is symmetric")
    return delta


# ---------------------------------------------------------------------------
# text form

def render(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        e = p.low + i
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            var = "t" if e == 1 else f"t^{e}"
            body = var if mag == 1 else f"{mag}{var}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


_TERM = re.compile(r"([+-])?(\d+)?\*?(t(?:\^\(?([+-]?\d+)\)?)?)?")


def parse(text: str) -> LaurentPoly:
    """Parse the text form produced by :func:`render` (whitespace-insensitive)."""
    if re.search(r"\d\s+\d", text):
        raise ParseError(f"digits separated by whitespace in {text!r}")
    s = "".join(text.split())
    if not s:
        raise ParseError("empty polynomial")
    terms: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, var, exp = m.groups()
        if m.end() == pos or (num is None and var is None):
            raise ParseError(f"cannot parse {text!r} at offset {pos}")
        if pos > 0 and sign is None:
            raise ParseError(f"missing operator in {text!r} at offset {pos}")
        coeff = int(num) if num is not None else 1
        if sign == "-":
            coeff = -coeff
        if var is None:
            e = 0
        else:
            e = int(exp) if exp is not None else 1
        terms[e] = terms.get(e, 0) + coeff
        pos = m.end()
    return LaurentPoly(terms)
