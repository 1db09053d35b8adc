"""Continued fractions, convergents and Farey (Stern-Brocot) navigation.

Turn sequences are plain strings over ``"L"`` and ``"R"``. Along the Farey
path to ``[a0; a1, a2, ...]`` the walker takes ``a0`` left turns, then ``a1``
right turns, then ``a2`` left turns, and so on.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from math import gcd, isqrt
from typing import Iterator, Union

from qriver.errors import BudgetExceeded, OutOfDomain, ParseError
from qriver.exact import QuadraticSurd

TurnSequence = str

DEFAULT_MAX_TERMS = 100_000


def max_terms_budget() -> int:
    """CF budget, overridable through ``QRIVER_MAX_TERMS``."""
    raw = os.environ.get("QRIVER_MAX_TERMS")
    if not raw:
        return DEFAULT_MAX_TERMS
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"QRIVER_MAX_TERMS must be an integer, got {raw!r}") from None
    if value < 1:
        raise ParseError("QRIVER_MAX_TERMS must be positive")
    return value


def _minimal_block(block: tuple[int, ...]) -> tuple[int, ...]:
    n = len(block)
    for k in range(1, n + 1):
        if n % k == 0 and block[:k] * (n // k) == block:
            return block[:k]
    return block


@dataclass(frozen=True)
class ContinuedFraction:
    """``[preperiod; (period)]``; an empty period means a finite expansion.

    Construction canonicalizes: the period becomes its minimal block, preperiod
    terms that merely repeat the period are absorbed, and a finite expansion
    never ends in 1 unless it has a single term.
    """

    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        pre, per = tuple(self.preperiod), tuple(self.period)
        if not pre and not per:
            raise OutOfDomain("empty continued fraction")
        terms = pre + per
        if any(t < 1 for t in terms[1:]) or (not pre and any(t < 1 for t in per)):
            raise OutOfDomain(f"terms after the first must be >= 1: {terms}")
        if per:
            per = _minimal_block(per)
            while pre and pre[-1] == per[-1] and (len(pre) > 1 or pre[-1] >= 1):
                pre, per = pre[:-1], per[-1:] + per[:-1]
        elif len(pre) > 1 and pre[-1] == 1:
            pre = pre[:-2] + (pre[-2] + 1,)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @property
    def is_finite(self) -> bool:
        return not self.period

    def __len__(self) -> int:
        if self.period:
            raise TypeError("infinite continued fraction has no length")
        return len(self.preperiod)

    def term(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        if i < len(self.preperiod):
            return self.preperiod[i]
        if not self.period:
            raise IndexError(i)
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def __iter__(self) -> Iterator[int]:
        yield from self.preperiod
        while self.period:
            yield from self.period

    def terms(self, n: int) -> list[int]:
        """First ``n`` terms (fewer if the expansion is finite and shorter)."""
        return list(islice(self, n))

    def value(self) -> Union[Fraction, QuadraticSurd]:
        """Exact value: a rational for finite expansions, otherwise a quadratic surd.

        A periodic expansion needs the squarefree part of its period's
        discriminant, found by trial division, so very long periods are slow.
        """
        if self.period:
            # x = [period; x]  =>  Q x^2 + (Q' - P) x - P' = 0 with the block's last two convergents
            p1, q1, p0, q0 = 1, 0, 0, 1
            for a in self.period:
                p1, q1, p0, q0 = a * p1 + p0, a * q1 + q0, p1, q1
            qa, qb, qc = q1, q0 - p1, -p0
            disc = qb * qb - 4 * qa * qc
            x = (QuadraticSurd.sqrt(disc) - qb) / (2 * qa)
        else:
            x = Fraction(self.preperiod[-1])
        head = self.preperiod if self.period else self.preperiod[:-1]
        for a in reversed(head):
            x = a + 1 / x
        return x

    def __str__(self) -> str:
        parts = [str(t) for t in self.preperiod]
        if self.period:
            parts.append("(" + ", ".join(str(t) for t in self.period) + ")")
        if len(parts) == 1:
            return f"[{parts[0]}]"
        return f"[{parts[0]}; " + ", ".join(parts[1:]) + "]"


_CF_RE = re.compile(r"^\s*\[\s*(?P<head>[^;\]]*?)\s*(?:;\s*(?P<tail>[^\]]*?))?\s*\]\s*$")


def parse_cf(text: str) -> ContinuedFraction:
    """Parse ``[a0; a1, a2, (b1, b2)]``; the parenthesized block is the period."""
    m = _CF_RE.match(text)
    if not m:
        raise ParseError(f"not a continued fraction literal: {text!r}")
    body = m.group("head") + ("," + m.group("tail") if m.group("tail") else "")
    pm = re.fullmatch(r"\s*(?P<pre>[^()]*?)\s*,?\s*(?:\((?P<per>[^()]*)\))?\s*", body)
    if not pm:
        raise ParseError(f"malformed continued fraction: {text!r}")

    def ints(chunk: str | None) -> tuple[int, ...]:
        items = [t.strip() for t in (chunk or "").split(",") if t.strip()]
        try:
            return tuple(int(t) for t in items)
        except ValueError:
            raise ParseError(f"non-integer term in {text!r}") from None

    try:
        return ContinuedFraction(ints(pm.group("pre")), ints(pm.group("per")))
    except OutOfDomain as exc:
        raise ParseError(str(exc)) from exc


def cf_of_rational(r: Union[int, Fraction]) -> ContinuedFraction:
    r = Fraction(r)
    n, d = r.numerator, r.denominator
    terms = []
    while d:
        a, rem = divmod(n, d)
        terms.append(a)
        n, d = d, rem
    return ContinuedFraction(tuple(terms))


def _floor_pqd(p: int, q: int, root: int) -> int:
    if q > 0:
        return (p + root) // q
    return (-p - root - 1) // (-q)


def surd_terms(s: QuadraticSurd) -> Iterator[int]:
    """Endless stream of partial quotients of ``s``."""
    p, q, d = s.p, s.q, s.d
    root = isqrt(d)
    while True:
        a = _floor_pqd(p, q, root)
        yield a
        p = a * q - p
        q = (d - p * p) // q


def cf_of_surd(s: QuadraticSurd, max_terms: int | None = None) -> ContinuedFraction:
    """Eventually periodic expansion of ``s``; the period is found by a repeated ``(p, q)`` state."""
    budget = max_terms_budget() if max_terms is None else max_terms
    p, q, d = s.p, s.q, s.d
    root = isqrt(d)
    seen: dict[tuple[int, int], int] = {}
    terms: list[int] = []
    while (p, q) not in seen:
        if len(terms) >= budget:
            raise BudgetExceeded(f"no period within {budget} terms for {s}")
        seen[p, q] = len(terms)
        a = _floor_pqd(p, q, root)
        terms.append(a)
        p = a * q - p
        q = (d - p * p) // q
    start = seen[p, q]
    return ContinuedFraction(tuple(terms[:start]), tuple(terms[start:]))


@dataclass(frozen=True, order=False)
class FareyFraction:
    """Reduced ``p/q`` with ``q >= 0``; ``1/0`` is the point at infinity."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 0 or (self.p, self.q) == (0, 0) or gcd(self.p, self.q) != 1:
            raise OutOfDomain(f"not a reduced Farey fraction: {self.p}/{self.q}")
        if self.q == 0 and self.p != 1:
            raise OutOfDomain("infinity must be written 1/0")

    @classmethod
    def of(cls, p: int, q: int) -> "FareyFraction":
        g = gcd(p, q)
        if g == 0:
            raise OutOfDomain("0/0 is not a Farey fraction")
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)

    def mediant(self, other: "FareyFraction") -> "FareyFraction":
        return FareyFraction.of(self.p + other.p, self.q + other.q)

    def as_fraction(self) -> Fraction:
        if self.q == 0:
            raise OutOfDomain("1/0 has no rational value")
        return Fraction(self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def convergents(cf: ContinuedFraction, k: int) -> list[FareyFraction]:
    if k < 1:
        raise OutOfDomain("need at least one convergent")
    out = []
    p1, q1, p0, q0 = 1, 0, 0, 1
    for a in islice(cf, k):
        p1, q1, p0, q0 = a * p1 + p0, a * q1 + q0, p1, q1
        out.append(FareyFraction(p1, q1))
    return out


def farey_turns(cf: ContinuedFraction, n: int) -> TurnSequence:
    """First ``n`` turns of the Farey path toward a positive value."""
    a0 = cf.term(0)
    if a0 < 0 or (a0 == 0 and cf.is_finite and len(cf) == 1):
        raise OutOfDomain(f"Farey path needs a positive value, got {cf}")
    letters: list[str] = []
    for i, a in enumerate(cf):
        letters.extend(("L" if i % 2 == 0 else "R") * a)
        if len(letters) >= n:
            break
    return "".join(letters[:n])


def separate(alpha, beta) -> tuple[FareyFraction, FareyFraction, FareyFraction]:
    """Descend the Stern-Brocot tree until a mediant falls strictly between the two values.

    Returns ``(left, mediant, right)`` where ``left < mediant < right`` are the
    bracketing fractions at the moment the two values part ways.
    """
    if alpha == beta:
        raise OutOfDomain("separate needs two distinct values")
    if alpha <= 0 or beta <= 0:
        raise OutOfDomain("separate is defined on positive reals only")
    left, right = FareyFraction(0, 1), FareyFraction(1, 0)
    while True:
        med = left.mediant(right)
        m = Fraction(med.p, med.q)
        above_a, above_b = alpha > m, beta > m
        if above_a and above_b:
            left = med
        elif not above_a and not above_b:
            right = med
        else:
            return left, med, right
