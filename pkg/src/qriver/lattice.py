"""Integer lattice primitives in the plane: lengths, areas, sines, unimodular maps."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple

from qriver.errors import DegenerateError, InvariantViolation, OutOfDomain


class LatticeVector(NamedTuple):
    x: int
    y: int

    def __add__(self, other):  # type: ignore[override]
        return LatticeVector(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return LatticeVector(self.x - other[0], self.y - other[1])

    def __neg__(self):
        return LatticeVector(-self.x, -self.y)

    def scale(self, k: int) -> "LatticeVector":
        return LatticeVector(k * self.x, k * self.y)


def det(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def integer_length(a, b) -> int:
    """Lattice points strictly inside segment ``ab``, plus one."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx == 0 and dy == 0:
        raise DegenerateError(f"degenerate segment: {tuple(a)} == {tuple(b)}")
    return gcd(dx, dy)


def integer_area(a, b, c) -> int:
    """Index of the sublattice spanned by ``b - a`` and ``c - b``; zero iff collinear."""
    return abs(det((b[0] - a[0], b[1] - a[1]), (c[0] - b[0], c[1] - b[1])))


def integer_sine(a, b, c) -> int:
    """Integer sine of the angle ``abc``: area over the product of the two integer lengths."""
    area = integer_area(a, b, c)
    if area == 0:
        raise DegenerateError(f"collinear angle {tuple(a)}, {tuple(b)}, {tuple(c)}")
    lengths = integer_length(a, b) * integer_length(b, c)
    sine, rem = divmod(area, lengths)
    if rem:
        raise InvariantViolation(f"integer sine not integral: {area}/{lengths}")
    return sine


def is_primitive(v) -> bool:
    return gcd(v[0], v[1]) == 1


def primitive_direction(a, b) -> LatticeVector:
    n = integer_length(a, b)
    return LatticeVector((b[0] - a[0]) // n, (b[1] - a[1]) // n)


@dataclass(frozen=True)
class UnimodularMap:
    """Integer matrix ``[[a, b], [c, d]]`` with determinant +1 or -1, acting on column vectors."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.det not in (1, -1):
            raise OutOfDomain(f"matrix {self.rows()} has determinant {self.det}, not +-1")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls) -> "UnimodularMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows) -> "UnimodularMap":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def from_columns(cls, u, v) -> "UnimodularMap":
        return cls(u[0], v[0], u[1], v[1])

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def columns(self) -> tuple[LatticeVector, LatticeVector]:
        return LatticeVector(self.a, self.c), LatticeVector(self.b, self.d)

    def __call__(self, v) -> LatticeVector:
        return LatticeVector(self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def __matmul__(self, other: "UnimodularMap") -> "UnimodularMap":
        return UnimodularMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "UnimodularMap":
        k = self.det
        return UnimodularMap(k * self.d, -k * self.b, -k * self.c, k * self.a)


def apply_map(m: UnimodularMap, v) -> LatticeVector:
    return m(v)


def compose(m: UnimodularMap, n: UnimodularMap) -> UnimodularMap:
    """The map ``v -> m(n(v))``."""
    return m @ n


def invert(m: UnimodularMap) -> UnimodularMap:
    return m.inverse()


# generators used for random group words in tests and the CLI
SHEAR = UnimodularMap(1, 1, 0, 1)
ROTATE = UnimodularMap(0, -1, 1, 0)
REFLECT = UnimodularMap(-1, 0, 0, 1)
SWAP = UnimodularMap(0, 1, 1, 0)
