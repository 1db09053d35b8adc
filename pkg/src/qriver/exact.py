"""Exact arithmetic: reduced rationals and real quadratic surds.

Rationals are :class:`fractions.Fraction`. A :class:`QuadraticSurd` is an
irrational number ``r + s*sqrt(D)`` with rational ``r``, nonzero rational
``s`` and squarefree ``D > 1``. It also exposes the continued-fraction
friendly encoding ``(p + sqrt(d)) / q`` where ``q`` divides ``d - p*p``.
Nothing in this module touches floating point except :func:`surd_approx`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Union

from qriver.errors import OutOfDomain, ParseError

Rational = Fraction
Number = Union[int, Fraction, "QuadraticSurd"]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, k)`` with ``n == s*s*k`` and ``k`` squarefree. ``n`` must be positive."""
    if n <= 0:
        raise OutOfDomain(f"squarefree_split needs a positive integer, got {n}")
    s, k, r = 1, 1, n
    i = 2
    while i * i * i <= r:
        e = 0
        while r % i == 0:
            r //= i
            e += 1
        s *= i ** (e // 2)
        if e % 2:
            k *= i
        i += 1 if i == 2 else 2
    # every prime factor of r now exceeds the cube root, so r is 1, p, p*q or p^2
    if r > 1:
        if is_square(r):
            s *= isqrt(r)
        else:
            k *= r
    return s, k


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class QuadraticSurd:
    """The real number ``rational + coeff * sqrt(radicand)``.

    ``radicand`` is squarefree and greater than one and ``coeff`` is nonzero,
    so each value has exactly one representation and dataclass equality is
    value equality.
    """

    rational: Fraction
    coeff: Fraction
    radicand: int
    p: int = field(init=False, repr=False, compare=False)
    q: int = field(init=False, repr=False, compare=False)
    d: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        r, s = Fraction(self.rational), Fraction(self.coeff)
        if s == 0:
            raise OutOfDomain("surd coefficient must be nonzero")
        if self.radicand < 2 or squarefree_split(self.radicand)[0] != 1:
            raise OutOfDomain(f"radicand must be squarefree and > 1, got {self.radicand}")
        object.__setattr__(self, "rational", r)
        object.__setattr__(self, "coeff", s)
        # smallest |q| such that value == (p + sqrt(d))/q and q | d - p^2
        c = _lcm(r.denominator, s.denominator)
        a, b = r.numerator * (c // r.denominator), s.numerator * (c // s.denominator)
        big_d = self.radicand
        lq = _lcm(_lcm(c // gcd(a, c), c // gcd(b, c)), c * c // gcd(b * b * big_d - a * a, c * c))
        q = lq if b > 0 else -lq
        t = q * b // c
        object.__setattr__(self, "p", q * a // c)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", t * t * big_d)

    @classmethod
    def from_pqd(cls, p: int, q: int, d: int) -> "QuadraticSurd":
        """Build ``(p + sqrt(d)) / q``; ``d`` must not be a perfect square."""
        if q == 0:
            raise OutOfDomain("denominator q must be nonzero")
        if d < 0 or is_square(d):
            raise OutOfDomain(f"d={d} is a perfect square or negative; value would not be irrational")
        s, k = squarefree_split(d)
        return cls(Fraction(p, q), Fraction(s, q), k)

    @classmethod
    def sqrt(cls, x: Union[int, Fraction]) -> "QuadraticSurd":
        """Positive square root of a positive non-square rational."""
        x = Fraction(x)
        if x <= 0:
            raise OutOfDomain("sqrt needs a positive rational")
        num = x.numerator * x.denominator
        if is_square(num):
            raise OutOfDomain(f"{x} is the square of a rational")
        s, k = squarefree_split(num)
        return cls(Fraction(0), Fraction(s, x.denominator), k)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QuadraticSurd):
            if other.radicand != self.radicand:
                raise OutOfDomain("arithmetic between surds of different radicands is not supported")
            return other.rational, other.coeff
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def _make(self, r: Fraction, s: Fraction) -> Number:
        return r if s == 0 else QuadraticSurd(r, s, self.radicand)

    def __neg__(self) -> "QuadraticSurd":
        return QuadraticSurd(-self.rational, -self.coeff, self.radicand)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._make(self.rational + o[0], self.coeff + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._make(self.rational - o[0], self.coeff - o[1])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        r, s = self.rational, self.coeff
        return self._make(r * o[0] + s * o[1] * self.radicand, r * o[1] + s * o[0])

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Product with the conjugate, ``r^2 - s^2 D``; never zero."""
        return self.rational**2 - self.coeff**2 * self.radicand

    def reciprocal(self) -> "QuadraticSurd":
        n = self.norm()
        return QuadraticSurd(self.rational / n, -self.coeff / n, self.radicand)

    def __truediv__(self, other):
        if isinstance(other, QuadraticSurd):
            return self * other.reciprocal()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("surd divided by zero")
            return QuadraticSurd(self.rational / other, self.coeff / other, self.radicand)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.reciprocal() * Fraction(other)
        return NotImplemented

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.rational, -self.coeff, self.radicand)

    # -- ordering ----------------------------------------------------------

    def sign(self) -> int:
        r, s = self.rational, self.coeff
        if r == 0 or _sign(r) == _sign(s):
            return _sign(s) if r == 0 else _sign(r)
        return _sign(r) if r * r > s * s * self.radicand else _sign(s)

    def _cmp(self, other) -> int:
        if isinstance(other, (int, Fraction)):
            return (self - other).sign()
        if isinstance(other, QuadraticSurd):
            if other.radicand == self.radicand:
                diff = self - other
                return _sign(diff) if isinstance(diff, Fraction) else diff.sign()
            return _cmp_by_bisection(self, other)
        return NotImplemented

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __floor__(self) -> int:
        return surd_floor(self)

    def __float__(self) -> float:
        return float(surd_approx(self, 20))

    def __str__(self) -> str:
        if self.q < 0:
            return f"({-self.p}-sqrt({self.d}))/{-self.q}"
        return f"({self.p}+sqrt({self.d}))/{self.q}"


def _sqrt_bounds(s: QuadraticSurd, bits: int) -> tuple[Fraction, Fraction]:
    scale = 1 << bits
    root = isqrt(s.radicand * scale * scale)
    lo, hi = Fraction(root, scale), Fraction(root + 1, scale)
    if s.coeff < 0:
        lo, hi = hi, lo
    return s.rational + s.coeff * lo, s.rational + s.coeff * hi


def _cmp_by_bisection(x: QuadraticSurd, y: QuadraticSurd) -> int:
    # distinct radicands: the values can never be equal, so refinement terminates
    bits = 32
    while True:
        xl, xh = _sqrt_bounds(x, bits)
        yl, yh = _sqrt_bounds(y, bits)
        if xh < yl:
            return -1
        if yh < xl:
            return 1
        bits *= 2


def surd_floor(s: QuadraticSurd) -> int:
    """Exact floor of ``(p + sqrt(d))/q`` from integer square roots."""
    root = isqrt(s.d)
    if s.q > 0:
        return (s.p + root) // s.q
    return (-s.p - root - 1) // (-s.q)


def surd_recip_shift(s: QuadraticSurd, m: int) -> QuadraticSurd:
    """``1 / (s - m)``: one continued-fraction step when ``m == floor(s)``."""
    p = m * s.q - s.p
    return QuadraticSurd.from_pqd(p, (s.d - p * p) // s.q, s.d)


def surd_conjugate(s: QuadraticSurd) -> QuadraticSurd:
    return s.conjugate()


def surd_cmp_rational(s: QuadraticSurd, r: Union[int, Fraction]) -> int:
    """-1 if ``s < r`` else 1. Equality is impossible for an irrational ``s``."""
    return s._cmp(Fraction(r))


def surd_approx(s: QuadraticSurd, digits: int = 30) -> str:
    """Decimal rendering for display only."""
    with localcontext() as ctx:
        ctx.prec = digits + 10
        val = (Decimal(s.p) + Decimal(s.d).sqrt()) / Decimal(s.q)
        ctx.prec = digits
        return str(+val)


_INT = r"[+-]?\d+"
_SURD_RE = re.compile(
    rf"""^\s*(?:
        \(\s*(?P<p1>{_INT})?\s*(?P<sg1>[+-])?\s*sqrt\(\s*(?P<d1>\d+)\s*\)\s*\)\s*(?:/\s*(?P<q1>{_INT}))?
      | (?P<p2>{_INT})?\s*(?P<sg2>[+-])?\s*sqrt\(\s*(?P<d2>\d+)\s*\)
    )\s*$""",
    re.VERBOSE,
)
_RAT_RE = re.compile(rf"^\s*({_INT})\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``num/den`` or an integer literal."""
    m = _RAT_RE.match(text)
    if not m:
        raise ParseError(f"not a rational literal: {text!r}")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def parse_surd(text: str) -> QuadraticSurd:
    """Parse ``(p+sqrt(d))/q`` and the obvious shorthands (``sqrt(2)``, ``1-sqrt(5)``)."""
    m = _SURD_RE.match(text)
    if not m:
        raise ParseError(f"not a surd literal: {text!r}")
    if m.group("d1") is not None:
        p, sg, d, q = m.group("p1"), m.group("sg1"), m.group("d1"), m.group("q1")
    else:
        p, sg, d, q = m.group("p2"), m.group("sg2"), m.group("d2"), None
    if p is not None and sg is None:
        raise ParseError(f"missing sign between integer and sqrt in {text!r}")
    q_val = int(q) if q is not None else 1
    if q_val == 0:
        raise ParseError(f"zero denominator in {text!r}")
    if sg == "-":
        q_val = -q_val
        p_val = -int(p) if p is not None else 0
    else:
        p_val = int(p) if p is not None else 0
    try:
        return QuadraticSurd.from_pqd(p_val, q_val, int(d))
    except OutOfDomain as exc:
        raise ParseError(str(exc)) from exc


def parse_number(text: str) -> Union[Fraction, QuadraticSurd]:
    """A rational literal if it parses as one, else a surd literal."""
    if "sqrt" in text:
        return parse_surd(text)
    return parse_rational(text)
