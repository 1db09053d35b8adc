"""Conway's topograph: superbases, directed edges, rivers and a BFS oracle.

A directed edge is stored as the pair ``(left, right)`` of region vectors
with ``det(left, right) == 1``. Travelling along it, ``left`` is the face on
the left, the vertex ahead is the superbase ``{left, right, left + right}``
and the vertex behind is ``{left, right, left - right}``. This orientation
is invariant under SL(2, Z); a reflection swaps the sides.

Rivers are walked with the positive face on the left (forward) or on the
right (backward). Turning L keeps the left face, turning R keeps the right.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import groupby
from typing import Iterable, Optional

from qriver.cfrac import FareyFraction, TurnSequence
from qriver.errors import ClassificationError, InvariantViolation, OutOfDomain
from qriver.forms import BinaryQuadraticForm, require_anisotropic
from qriver.lattice import LatticeVector, UnimodularMap, det, is_primitive

EdgeKey = frozenset  # frozenset of two canonical lax vectors


def lax(v) -> LatticeVector:
    """Canonical representative of ``+-v``: ``x > 0``, or ``x == 0`` and ``y > 0``."""
    x, y = v
    if x < 0 or (x == 0 and y < 0):
        return LatticeVector(-x, -y)
    return LatticeVector(x, y)


@dataclass(frozen=True)
class Superbase:
    """Three lax vectors, one representative triple of which sums to zero."""

    e1: LatticeVector
    e2: LatticeVector
    e3: LatticeVector

    def __post_init__(self) -> None:
        vs = sorted(lax(v) for v in (self.e1, self.e2, self.e3))
        for name, v in zip(("e1", "e2", "e3"), vs):
            object.__setattr__(self, name, v)
        a, b, c = vs
        if abs(det(a, b)) != 1 or abs(det(b, c)) != 1 or abs(det(a, c)) != 1:
            raise OutOfDomain(f"not a superbase: {vs}")
        if not any(a + b.scale(s) + c.scale(t) == (0, 0) for s in (1, -1) for t in (1, -1)):
            raise OutOfDomain(f"no sign choice sums to zero: {vs}")

    @classmethod
    def of(cls, u, v, w) -> "Superbase":
        return cls(LatticeVector(*u), LatticeVector(*v), LatticeVector(*w))

    def vectors(self) -> tuple[LatticeVector, LatticeVector, LatticeVector]:
        return self.e1, self.e2, self.e3

    def node_id(self) -> str:
        return "sb_" + "__".join(f"{v.x}_{v.y}".replace("-", "m") for v in self.vectors())


@dataclass(frozen=True)
class TopographEdge:
    left: LatticeVector
    right: LatticeVector

    def __post_init__(self) -> None:
        object.__setattr__(self, "left", LatticeVector(*self.left))
        object.__setattr__(self, "right", LatticeVector(*self.right))
        if det(self.left, self.right) != 1:
            raise OutOfDomain(f"edge faces {self.left}, {self.right} need det +1")

    @classmethod
    def between(cls, u, v) -> "TopographEdge":
        """Edge with ``u`` on the left and the face ``+-v`` on the right."""
        u, v = LatticeVector(*u), LatticeVector(*v)
        d = det(u, v)
        if abs(d) != 1:
            raise OutOfDomain(f"{u}, {v} is not a lattice basis")
        return cls(u, v if d == 1 else -v)

    @property
    def ahead(self) -> LatticeVector:
        return self.left + self.right

    @property
    def behind(self) -> LatticeVector:
        return self.left - self.right

    @property
    def key(self) -> EdgeKey:
        return frozenset((lax(self.left), lax(self.right)))

    def reversed(self) -> "TopographEdge":
        return TopographEdge(self.right, -self.left)

    def ahead_superbase(self) -> Superbase:
        return Superbase.of(self.left, self.right, self.ahead)

    def behind_superbase(self) -> Superbase:
        return Superbase.of(self.left, self.right, self.behind)


def edge_superbases(key: EdgeKey) -> tuple[Superbase, Superbase]:
    u, v = sorted(key)
    return Superbase.of(u, v, u + v), Superbase.of(u, v, u - v)


def edge_neighbours(key: EdgeKey) -> list[EdgeKey]:
    u, v = sorted(key)
    out = []
    for w in (u + v, u - v):
        w = lax(w)
        out.append(frozenset((u, w)))
        out.append(frozenset((v, w)))
    return out


def base_edge() -> TopographEdge:
    return TopographEdge(LatticeVector(1, 0), LatticeVector(0, 1))


def check_ap_rule(form: BinaryQuadraticForm, u, v) -> None:
    """Raise unless ``Q(u+v) + Q(u-v) == 2 (Q(u) + Q(v))``."""
    s = LatticeVector(*u) + v
    t = LatticeVector(*u) - v
    if form(*s) + form(*t) != 2 * (form(*u) + form(*v)):
        raise InvariantViolation(f"arithmetic progression rule fails at {u}, {v} for {form}")


def edge_values(form: BinaryQuadraticForm, e: TopographEdge) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """``(Q(left), Q(right), Q(ahead), Q(behind))`` by direct evaluation, AP rule asserted."""
    left, right, ahead, behind = (form(*v) for v in (e.left, e.right, e.ahead, e.behind))
    if ahead + behind != 2 * (left + right):
        raise InvariantViolation(f"arithmetic progression rule fails on {e} for {form}")
    return left, right, ahead, behind


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def find_river_edge(form: BinaryQuadraticForm) -> TopographEdge:
    """The reduced-frame base edge pulled back to the original lattice, positive face on the left."""
    from qriver.sail import normalize

    nf = normalize(form)
    u, v = nf.map.columns()
    qu, qv = form(*u), form(*v)
    if _sign(qu) * _sign(qv) != -1:
        raise InvariantViolation(f"normalized base edge does not separate signs for {form}")
    return TopographEdge.between(u, v) if qu > 0 else TopographEdge.between(v, u)


def river_edge_by_separation(form: BinaryQuadraticForm) -> TopographEdge:
    """Independent river locator: Stern-Brocot separation of the two Farey roots.

    The roots are first shifted to be positive by a translation ``s -> s + k``.
    """
    from qriver.cfrac import separate
    from qriver.forms import farey_roots, transform
    from qriver.exact import surd_floor

    _, low = farey_roots(form)
    k = 1 - surd_floor(low)
    shift_back = UnimodularMap(1, -k, 0, 1)
    shifted = transform(form, shift_back)  # region (x, y) of ``shifted`` is region (x - k y, y) of ``form``
    hi, lo = farey_roots(shifted)
    _, med, right = separate(hi, lo)
    u, v = shift_back((med.p, med.q)), shift_back((right.p, right.q))
    pos, neg = (u, v) if form(*u) > 0 else (v, u)
    return TopographEdge.between(pos, neg)


def river_step(form: BinaryQuadraticForm, e: TopographEdge) -> tuple[TopographEdge, str]:
    """Continue the river through the vertex ahead of ``e``; returns the next edge and the turn."""
    ql, qr, qw, _ = edge_values(form, e)
    if _sign(ql) * _sign(qr) != -1:
        raise OutOfDomain(f"{e} is not a river edge of {form}")
    if qw == 0:
        raise ClassificationError("form represents zero")
    left_turn = _sign(qw) != _sign(ql)
    right_turn = _sign(qw) != _sign(qr)
    if left_turn == right_turn:
        raise InvariantViolation("river continuation is not unique")
    w = e.ahead
    if left_turn:
        return TopographEdge(e.left, w), "L"
    return TopographEdge(w, e.right), "R"


@dataclass(frozen=True)
class RiverPath:
    """Directed river stretch: edges, one turn per interior vertex, face values per edge."""

    edges: tuple[TopographEdge, ...]
    turns: TurnSequence
    left_values: tuple[Fraction, ...]
    right_values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.turns) != len(self.edges) - 1:
            raise InvariantViolation("river needs exactly one turn per interior vertex")

    @property
    def positive_values(self) -> tuple[Fraction, ...]:
        return tuple(max(pair) for pair in zip(self.left_values, self.right_values))

    @property
    def negative_values(self) -> tuple[Fraction, ...]:
        return tuple(min(pair) for pair in zip(self.left_values, self.right_values))

    def keys(self) -> list[EdgeKey]:
        return [e.key for e in self.edges]

    def to_dict(self) -> dict:
        def region(v, value):
            return {"vector": [v.x, v.y], "farey": str(farey_label(v)), "value": str(value)}

        return {
            "edges": [
                {"left": region(e.left, lv), "right": region(e.right, rv)}
                for e, lv, rv in zip(self.edges, self.left_values, self.right_values)
            ],
            "turns": self.turns,
            "runs": turn_runs(self.turns),
        }


def walk_river(form: BinaryQuadraticForm, start: TopographEdge, n_steps: int) -> RiverPath:
    """Follow the river ``n_steps`` vertices from ``start`` in its direction of travel."""
    if n_steps < 0:
        raise OutOfDomain("n_steps must be non-negative")
    edges, turns = [start], []
    e = start
    for _ in range(n_steps):
        e, t = river_step(form, e)
        edges.append(e)
        turns.append(t)
    return RiverPath(
        tuple(edges),
        "".join(turns),
        tuple(form(*e.left) for e in edges),
        tuple(form(*e.right) for e in edges),
    )


def river(form: BinaryQuadraticForm, n_steps: int, direction: str = "forward") -> RiverPath:
    """River from :func:`find_river_edge`; ``backward`` travels the other way (positive face right)."""
    require_anisotropic(form)
    start = find_river_edge(form)
    if direction == "backward":
        start = start.reversed()
    elif direction != "forward":
        raise OutOfDomain(f"direction must be 'forward' or 'backward', got {direction!r}")
    return walk_river(form, start, n_steps)


def river_segment(form: BinaryQuadraticForm, n_back: int, n_fwd: int) -> RiverPath:
    """Forward-oriented river stretch reaching ``n_back`` vertices behind and ``n_fwd`` ahead of the start edge."""
    back = river(form, n_back, "backward")
    return walk_river(form, back.edges[-1].reversed(), n_back + n_fwd)


def turn_runs(turns: Iterable[str]) -> list[int]:
    """Run lengths of a turn sequence. The first and last runs may be cut short by the window."""
    return [len(list(g)) for _, g in groupby(turns)]


def farey_label(v) -> FareyFraction:
    if not is_primitive(v):
        raise OutOfDomain(f"{tuple(v)} is not primitive")
    return FareyFraction.of(v[0], v[1])


def pgl_apply(m: UnimodularMap, e: TopographEdge) -> TopographEdge:
    """Image of a directed edge; an orientation-reversing map swaps left and right."""
    left, right = m(e.left), m(e.right)
    return TopographEdge(left, right) if m.det == 1 else TopographEdge(right, left)


@lru_cache(maxsize=32)
def _ball(depth: int, centre: EdgeKey) -> tuple[tuple[EdgeKey, int], ...]:
    dist = {centre: 0}
    queue = deque([centre])
    while queue:
        k = queue.popleft()
        if dist[k] == depth:
            continue
        for nb in edge_neighbours(k):
            if nb not in dist:
                dist[nb] = dist[k] + 1
                queue.append(nb)
    return tuple(dist.items())


def topograph_ball(depth: int, centre: Optional[EdgeKey] = None) -> dict[EdgeKey, int]:
    """Edges within ``depth`` steps of ``centre`` (default: the base edge), with their distance."""
    return dict(_ball(depth, centre if centre is not None else base_edge().key))


def river_oracle(form: BinaryQuadraticForm, depth: int) -> set[EdgeKey]:
    """Every edge within ``depth`` of the base edge whose two faces differ in sign. Test oracle only.

    Values come from direct evaluation on each region (in integers, after
    clearing denominators); the AP rule is checked on every edge.
    """
    a, h, b, _ = form.integral()

    def q(v):
        return a * v[0] * v[0] + h * v[0] * v[1] + b * v[1] * v[1]

    out = set()
    for key, _ in _ball(depth, base_edge().key):
        u, v = sorted(key)
        qu, qv = q(u), q(v)
        if q(u + v) + q(u - v) != 2 * (qu + qv):
            raise InvariantViolation(f"arithmetic progression rule fails at {u}, {v} for {form}")
        if (qu > 0 and qv < 0) or (qu < 0 and qv > 0):
            out.add(key)
    return out


def is_simple_path(keys: set[EdgeKey]) -> bool:
    """True when the edges form one path: connected, every superbase touching at most two of them."""
    if not keys:
        return True
    touching: dict[Superbase, list[EdgeKey]] = {}
    for k in keys:
        for sb in edge_superbases(k):
            touching.setdefault(sb, []).append(k)
    if any(len(ks) > 2 for ks in touching.values()):
        return False
    seen, stack = set(), [next(iter(keys))]
    while stack:
        k = stack.pop()
        if k in seen:
            continue
        seen.add(k)
        for sb in edge_superbases(k):
            stack.extend(touching[sb])
    return seen == keys


def _region_label(form: BinaryQuadraticForm, v) -> str:
    return f"{farey_label(v)} : {form(*v)}"


def to_dot(form: BinaryQuadraticForm, path: RiverPath, depth: int = 6) -> str:
    """Topograph fragment around ``path`` in Graphviz DOT.

    Nodes are superbases, edges are topograph edges labelled with their two
    regions as ``p/q : value``; river edges are bold.
    """
    river_keys = set(path.keys())
    dist: dict[EdgeKey, int] = {k: 0 for k in river_keys}
    queue = deque(river_keys)
    while queue:
        k = queue.popleft()
        if dist[k] == depth:
            continue
        for nb in edge_neighbours(k):
            if nb not in dist:
                dist[nb] = dist[k] + 1
                queue.append(nb)

    def order(k):
        return tuple(sorted(k))

    lines = ["graph topograph {", '  node [shape=point, width=0.08];', '  edge [fontsize=9];']
    nodes = sorted({sb.node_id() for k in dist for sb in edge_superbases(k)})
    lines.extend(f'  "{n}";' for n in nodes)
    for k in sorted(dist, key=order):
        a, b = edge_superbases(k)
        u, v = sorted(k)
        label = f"{_region_label(form, u)} | {_region_label(form, v)}"
        style = ', style=bold, penwidth=3, color="#1f4e9c"' if k in river_keys else ""
        lines.append(f'  "{a.node_id()}" -- "{b.node_id()}" [label="{label}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
