"""Binary quadratic forms ``a x^2 + h x y + b y^2`` with rational coefficients."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from qriver.errors import ClassificationError, ParseError
from qriver.exact import QuadraticSurd, is_square, parse_rational
from qriver.lattice import UnimodularMap


class Classification(str, enum.Enum):
    POSITIVE_DEFINITE = "positive-definite"
    NEGATIVE_DEFINITE = "negative-definite"
    INDEFINITE_ANISOTROPIC = "indefinite-anisotropic"
    INDEFINITE_ISOTROPIC = "indefinite-isotropic"
    DEGENERATE = "degenerate"


_REJECTION = {
    Classification.POSITIVE_DEFINITE: "form is definite: no sail/river",
    Classification.NEGATIVE_DEFINITE: "form is definite: no sail/river",
    Classification.INDEFINITE_ISOTROPIC: "form represents zero",
    Classification.DEGENERATE: "form is degenerate (zero discriminant)",
}


@dataclass(frozen=True)
class BinaryQuadraticForm:
    a: Fraction
    h: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        for name in ("a", "h", "b"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.a == 0 and self.h == 0 and self.b == 0:
            raise ClassificationError("the zero form is not a quadratic form")

    @classmethod
    def parse(cls, text: str) -> "BinaryQuadraticForm":
        """Parse the literal ``a,h,b``, e.g. ``1,-2,-5`` or ``11/2,-5,1``."""
        parts = text.replace(" ", "").split(",")
        if len(parts) != 3:
            raise ParseError(f"form literal needs three comma-separated rationals: {text!r}")
        coeffs = [parse_rational(p) for p in parts]
        if not any(coeffs):
            raise ParseError("the zero form is not a quadratic form")
        return cls(*coeffs)

    def __call__(self, x, y) -> Fraction:
        return self.a * x * x + self.h * x * y + self.b * y * y

    @property
    def discriminant(self) -> Fraction:
        return self.h * self.h - 4 * self.a * self.b

    def coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.a, self.h, self.b

    def integral(self) -> tuple[int, int, int, int]:
        """``(A, H, B, L)`` with ``Q = (A x^2 + H x y + B y^2) / L`` and ``L > 0``."""
        den = lcm(self.a.denominator, self.h.denominator, self.b.denominator)
        return (
            int(self.a * den),
            int(self.h * den),
            int(self.b * den),
            den,
        )

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coefficients())


def evaluate(form: BinaryQuadraticForm, v) -> Fraction:
    return form(v[0], v[1])


def classify(form: BinaryQuadraticForm) -> Classification:
    disc = form.discriminant
    if disc < 0:
        return Classification.POSITIVE_DEFINITE if form.a > 0 else Classification.NEGATIVE_DEFINITE
    if disc == 0:
        return Classification.DEGENERATE
    if is_square(disc.numerator) and is_square(disc.denominator):
        return Classification.INDEFINITE_ISOTROPIC
    return Classification.INDEFINITE_ANISOTROPIC


def require_anisotropic(form: BinaryQuadraticForm) -> None:
    kind = classify(form)
    if kind is not Classification.INDEFINITE_ANISOTROPIC:
        raise ClassificationError(_REJECTION[kind])


def _roots(lead: Fraction, mid: Fraction, const: Fraction) -> tuple[QuadraticSurd, QuadraticSurd]:
    # anisotropic forms have a != 0 and b != 0, so lead is never zero here
    root = QuadraticSurd.sqrt(mid * mid - 4 * lead * const)
    x, y = (root - mid) / (2 * lead), (-root - mid) / (2 * lead)
    return (x, y) if x > y else (y, x)


def slope_roots(form: BinaryQuadraticForm) -> tuple[QuadraticSurd, QuadraticSurd]:
    """Slopes ``alpha > beta`` with ``Q(x, y) = b (y - alpha x)(y - beta x)``."""
    require_anisotropic(form)
    return _roots(form.b, form.h, form.a)


def farey_roots(form: BinaryQuadraticForm) -> tuple[QuadraticSurd, QuadraticSurd]:
    """Roots of ``Q(s, 1) = 0``, largest first: where the river ends on the Farey boundary."""
    require_anisotropic(form)
    return _roots(form.a, form.h, form.b)


def transform(form: BinaryQuadraticForm, m: UnimodularMap) -> BinaryQuadraticForm:
    """The form ``v -> Q(m v)``."""
    a, h, b = form.coefficients()
    return BinaryQuadraticForm(
        form(m.a, m.c),
        2 * a * m.a * m.b + h * (m.a * m.d + m.b * m.c) + 2 * b * m.c * m.d,
        form(m.b, m.d),
    )
