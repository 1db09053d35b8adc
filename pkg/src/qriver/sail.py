"""Arnold sails of the line pair ``Q = 0`` and their LLS sequences.

Everything is anchored on a reduced frame: a unimodular change of basis
after which the slopes of the two lines satisfy ``alpha > 1`` and
``-1 < beta < 0``. In that frame the sail of the angle containing ``(1, 0)``
has its corner at ``(1, 0)``; vertices toward the ``alpha`` line come from
even convergents of ``alpha`` and vertices toward the ``beta`` line from
even convergents of ``-beta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from qriver.cfrac import cf_of_surd, convergents
from qriver.errors import BudgetExceeded, DegenerateError, InvariantViolation, OutOfDomain
from qriver.exact import QuadraticSurd, surd_floor
from qriver.forms import BinaryQuadraticForm, require_anisotropic, slope_roots, transform
from qriver.lattice import LatticeVector, UnimodularMap, det, integer_length, integer_sine

ORIGINAL = "original"
REDUCED = "reduced"


@dataclass(frozen=True)
class NormalizedForm:
    original: BinaryQuadraticForm
    map: UnimodularMap
    reduced: BinaryQuadraticForm
    alpha: QuadraticSurd
    beta: QuadraticSurd
    steps: tuple[int, ...] = ()

    @property
    def corner(self) -> LatticeVector:
        """Sail corner ``A0`` in original coordinates."""
        return self.map(LatticeVector(1, 0))


@dataclass(frozen=True)
class LLSWindow:
    terms: tuple[int, ...]
    anchor: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        if any(t < 1 for t in self.terms):
            raise InvariantViolation(f"LLS terms must be positive: {self.terms}")
        if self.terms and not 0 <= self.anchor < len(self.terms):
            raise OutOfDomain(f"anchor {self.anchor} outside window of length {len(self.terms)}")

    def to_dict(self) -> dict:
        return {"terms": list(self.terms), "anchor": self.anchor}


@dataclass(frozen=True)
class SailPolyline:
    """Sail vertices in order, with ``origin`` the index of the corner ``A0`` (if known)."""

    vertices: tuple[LatticeVector, ...]
    origin: Optional[int] = None
    frame: str = ORIGINAL

    def __post_init__(self) -> None:
        verts = tuple(LatticeVector(*v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        for u, v in zip(verts, verts[1:]):
            if u == v:
                raise DegenerateError(f"repeated sail vertex {tuple(u)}")
        turns = {
            (det(v - u, w - v) > 0) - (det(v - u, w - v) < 0)
            for u, v, w in zip(verts, verts[1:], verts[2:])
        }
        if 0 in turns or len(turns) > 1:
            raise InvariantViolation("sail vertices are not in strictly convex position")

    def __len__(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict:
        return {
            "frame": self.frame,
            "origin": self.origin,
            "vertices": [[v.x, v.y] for v in self.vertices],
        }


def _in_reduced_position(alpha: QuadraticSurd, beta: QuadraticSurd) -> bool:
    return alpha > 1 and -1 < beta < 0


def _budget(form: BinaryQuadraticForm) -> int:
    disc = form.discriminant
    bits = disc.numerator.bit_length() + disc.denominator.bit_length()
    bits += max(c.numerator.bit_length() + c.denominator.bit_length() for c in form.coefficients())
    return 4 * bits + 64


def normalize(form: BinaryQuadraticForm) -> NormalizedForm:
    """Reduce the slope pair by steps ``t -> 1/(t - floor(alpha))`` until ``alpha > 1 > 0 > beta > -1``."""
    alpha, beta = slope_roots(form)
    total = UnimodularMap.identity()
    steps: list[int] = []
    budget = _budget(form)
    while not _in_reduced_position(alpha, beta):
        if len(steps) >= budget:
            raise BudgetExceeded(f"reduction of {form} did not finish in {budget} steps")
        m = surd_floor(alpha)
        alpha, beta = 1 / (alpha - m), 1 / (beta - m)
        # old point (t, 1 + m t) has slope m + 1/t
        total = total @ UnimodularMap(0, 1, 1, m)
        steps.append(m)
    reduced = transform(form, total)
    if slope_roots(reduced) != (alpha, beta):
        raise InvariantViolation(f"reduced slopes disagree for {form}")
    return NormalizedForm(form, total, reduced, alpha, beta, tuple(steps))


def lls_window(form: BinaryQuadraticForm, n_left: int, n_right: int) -> LLSWindow:
    """Terms ``b_{n_left} .. b_1, a_0 .. a_{n_right-1}``, anchored at ``a_0``.

    ``alpha = [a0; a1, ...]`` and ``-beta = [0; b1, b2, ...]`` in the reduced frame.
    """
    if n_left < 0 or n_right < 0:
        raise OutOfDomain("window sizes must be non-negative")
    nf = normalize(form)
    right = cf_of_surd(nf.alpha).terms(n_right)
    tail = cf_of_surd(-nf.beta)
    if tail.term(0) != 0:
        raise InvariantViolation("-beta is not in (0, 1) after reduction")
    left = [tail.term(i) for i in range(n_left, 0, -1)]
    return LLSWindow(tuple(left + right), n_left)


def _even_convergent_points(x: QuadraticSurd, count: int) -> list[LatticeVector]:
    """``(q_{2j}, p_{2j})`` for ``j = 0 .. count-1``."""
    if count == 0:
        return []
    convs = convergents(cf_of_surd(x), 2 * count - 1)
    return [LatticeVector(c.q, c.p) for c in convs[::2]]


def _reduced_vertices(alpha: QuadraticSurd, beta: QuadraticSurd, k: int) -> list[LatticeVector]:
    up = _even_convergent_points(alpha, k)
    # convergent 0 of -beta is 0/1, i.e. the corner itself
    down = _even_convergent_points(-beta, k + 1)[1:]
    corner = LatticeVector(1, 0)
    return [LatticeVector(v.x, -v.y) for v in reversed(down)] + [corner] + up


def sail_vertices(form: BinaryQuadraticForm, k: int, frame: str = ORIGINAL) -> SailPolyline:
    """Corner plus ``k`` vertices on each side, oriented from the beta line toward the alpha line."""
    if k < 0:
        raise OutOfDomain("k must be non-negative")
    nf = normalize(form)
    verts = _reduced_vertices(nf.alpha, nf.beta, k)
    if frame == ORIGINAL:
        verts = [nf.map(v) for v in verts]
    elif frame != REDUCED:
        raise OutOfDomain(f"unknown frame {frame!r}")
    return SailPolyline(tuple(verts), k, frame)


def adjacent_sail_vertices(form: BinaryQuadraticForm, k: int, frame: str = ORIGINAL) -> SailPolyline:
    """Sail of the angle across the alpha line (it contains ``(0, 1)`` in the reduced frame).

    Rotating the reduced frame by a quarter turn puts this angle in reduced
    position with slopes ``-1/beta`` and ``-1/alpha``. The result is indexed so
    that ``B_i`` pairs with ``A_i`` of :func:`sail_vertices` under the
    edge-angle duality.
    """
    nf = normalize(form)
    rotated = _reduced_vertices(-1 / nf.beta, -1 / nf.alpha, k)
    back = UnimodularMap(0, -1, 1, 0)
    verts = [back(v) for v in reversed(rotated)]
    if frame == ORIGINAL:
        verts = [nf.map(v) for v in verts]
    return SailPolyline(tuple(verts), k, frame)


def lls_from_vertices(sail: SailPolyline) -> LLSWindow:
    """Alternate integer lengths of edges and integer sines of the angles between them."""
    v = sail.vertices
    if len(v) < 2:
        raise DegenerateError("need at least two vertices")
    terms = []
    for i in range(len(v) - 1):
        terms.append(integer_length(v[i], v[i + 1]))
        if i + 2 < len(v):
            terms.append(integer_sine(v[i], v[i + 1], v[i + 2]))
    anchor = 0 if sail.origin is None else min(2 * sail.origin, len(terms) - 1)
    return LLSWindow(tuple(terms), anchor)


@dataclass(frozen=True)
class DualityReport:
    passed: bool
    checked: int
    first_counterexample: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checked": self.checked,
            "first_counterexample": self.first_counterexample,
        }


def dual_check(form: BinaryQuadraticForm, k: int) -> DualityReport:
    """Check ``lsin(A_{i+1}) = ll(B_i B_{i+1})`` and ``lsin(B_{i+1}) = ll(A_{i+1} A_{i+2})``.

    Both sails are built independently and compared geometrically for every
    index ``i`` in ``[-k, k)``.
    """
    require_anisotropic(form)
    a_sail = sail_vertices(form, k + 2)
    b_sail = adjacent_sail_vertices(form, k + 2)
    off = k + 2
    A = lambda i: a_sail.vertices[i + off]  # noqa: E731
    B = lambda i: b_sail.vertices[i + off]  # noqa: E731
    checked = 0
    for i in range(-k, k):
        lhs, rhs = integer_sine(A(i), A(i + 1), A(i + 2)), integer_length(B(i), B(i + 1))
        if lhs != rhs:
            return DualityReport(False, checked, {"index": i, "identity": "angle-edge", "sine": lhs, "length": rhs})
        lhs, rhs = integer_sine(B(i), B(i + 1), B(i + 2)), integer_length(A(i + 1), A(i + 2))
        if lhs != rhs:
            return DualityReport(False, checked, {"index": i, "identity": "edge-angle", "sine": lhs, "length": rhs})
        checked += 1
    return DualityReport(True, checked)


# -- brute-force oracle ------------------------------------------------------


def _side(slope: QuadraticSurd, x: int, y: int) -> int:
    """Sign of ``y - slope * x`` in integers: ``(q y - p x - x sqrt(d)) / q``."""
    a, b = slope.q * y - slope.p * x, -x
    if b == 0:
        s = (a > 0) - (a < 0)
    elif a == 0 or (a > 0) == (b > 0):
        s = 1 if (a > 0 if a else b > 0) else -1
    else:
        s = (1 if a > 0 else -1) if a * a > b * b * slope.d else (1 if b > 0 else -1)
    return s if slope.q > 0 else -s


def angle_points(form: BinaryQuadraticForm, radius: int) -> list[LatticeVector]:
    """Lattice points with ``|x|, |y| <= radius`` strictly inside the angle holding the sail corner."""
    alpha, beta = slope_roots(form)
    cx, cy = normalize(form).corner
    want = (_side(alpha, cx, cy), _side(beta, cx, cy))
    return [
        LatticeVector(x, y)
        for x in range(-radius, radius + 1)
        for y in range(-radius, radius + 1)
        if (x, y) != (0, 0) and (_side(alpha, x, y), _side(beta, x, y)) == want
    ]


def _convex_hull(points: list[LatticeVector]) -> list[LatticeVector]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: list[LatticeVector] = []
        for p in seq:
            while len(out) >= 2 and det(out[-1] - out[-2], p - out[-2]) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


def brute_sail(form: BinaryQuadraticForm, radius: int) -> SailPolyline:
    """Hull boundary facing the origin, from direct enumeration. Test oracle only."""
    require_anisotropic(form)
    pts = angle_points(form, radius) if radius > 0 else []
    if not pts:
        raise BudgetExceeded(f"radius {radius} holds no lattice point of the angle")
    hull = _convex_hull(pts)
    if len(hull) < 3:
        chain = hull
    else:
        n = len(hull)
        origin = LatticeVector(0, 0)
        visible = [det(hull[(i + 1) % n] - hull[i], origin - hull[i]) < 0 for i in range(n)]
        start = next(i for i in range(n) if visible[i] and not visible[i - 1])
        chain = [hull[start]]
        i = start
        while visible[i]:
            i = (i + 1) % n
            chain.append(hull[i])
    # hull order runs clockwise around the origin; match the sail's orientation
    if normalize(form).map.det > 0:
        chain.reverse()
    corner = normalize(form).corner
    origin_idx = chain.index(corner) if corner in chain else None
    return SailPolyline(tuple(chain), origin_idx, ORIGINAL)


def certified_core(sail: SailPolyline, bound: int) -> set[tuple[LatticeVector, LatticeVector, LatticeVector]]:
    """Interior vertices with their two neighbours, all within max-norm ``bound``."""
    def small(v):
        return max(abs(v.x), abs(v.y)) <= bound

    v = sail.vertices
    return {
        (v[i - 1], v[i], v[i + 1])
        for i in range(1, len(v) - 1)
        if small(v[i - 1]) and small(v[i]) and small(v[i + 1])
    }


def sail_vertices_beyond(form: BinaryQuadraticForm, bound: int, k_max: int = 256) -> SailPolyline:
    """CF sail long enough that both ends leave the max-norm ball of radius ``4 * bound``."""
    k = 2
    while True:
        sail = sail_vertices(form, k)
        ends = sail.vertices[0], sail.vertices[-1]
        if all(max(abs(e.x), abs(e.y)) > 4 * bound for e in ends):
            return sail
        if k >= k_max:
            raise BudgetExceeded(f"sail of {form} did not leave radius {4 * bound} within {k_max} vertices")
        k *= 2
