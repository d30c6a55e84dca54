"""Slopes, the Farey tessellation, and its dual trivalent tree.

Slopes are reduced rationals p/q (q > 0) together with inf = 1/0; they
label the simple closed curves on the one-holed torus.  Two slopes are
Farey neighbours when |p1*q2 - p2*q1| = 1; triangles of the tessellation
are the generating triples, and vertices/edges of the dual tree are
triangles/neighbour-pairs.  All incidence tests here are exact integer
arithmetic, so deep levels of the tree never suffer rounding.

The combinatorial size of p/q is |p| + q (inf has size 1); it equals the
cyclically reduced word length of the corresponding primitive class in
the rank-2 free group.  Enumeration order is fixed package-wide:
ascending size, ties broken by Stern-Brocot depth-first discovery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator


@dataclass(frozen=True, order=False)
class Slope:
    """Reduced rational p/q with q > 0, or inf as (1, 0)."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 0 or (self.q == 0 and self.p != 1):
            raise ValueError(f"non-canonical slope ({self.p}, {self.q})")
        if self.q > 0 and math.gcd(abs(self.p), self.q) != 1:
            raise ValueError(f"non-reduced slope ({self.p}, {self.q})")

    @property
    def is_infinity(self) -> bool:
        return self.q == 0

    @property
    def size(self) -> int:
        """Combinatorial length |p| + q (inf -> 1)."""
        return abs(self.p) + self.q

    def as_fraction(self) -> Fraction:
        if self.is_infinity:
            raise ZeroDivisionError("inf has no fraction value")
        return Fraction(self.p, self.q)

    def __str__(self) -> str:
        return "inf" if self.is_infinity else f"{self.p}/{self.q}"

    # Total order by value on the extended real line, inf treated as +oo.
    def __lt__(self, other: "Slope") -> bool:
        if self == other:
            return False
        if self.is_infinity:
            return False
        if other.is_infinity:
            return True
        return self.p * other.q < other.p * self.q

    def __le__(self, other: "Slope") -> bool:
        return self == other or self < other

    def __gt__(self, other: "Slope") -> bool:
        return other < self

    def __ge__(self, other: "Slope") -> bool:
        return other <= self


INF = Slope(1, 0)
ZERO = Slope(0, 1)
ONE = Slope(1, 1)


def canonical_slope(p: int, q: int) -> Slope:
    """Reduce and sign-normalise (p, q); (0, 0) is rejected."""
    if p == 0 and q == 0:
        raise ValueError("slope (0, 0) is undefined")
    if q == 0:
        return INF
    if q < 0:
        p, q = -p, -q
    g = math.gcd(abs(p), q)
    return Slope(p // g, q // g)


def parse_slope(text: str) -> Slope:
    text = text.strip()
    if text in ("inf", "infty", "oo"):
        return INF
    if "/" in text:
        a, b = text.split("/")
        return canonical_slope(int(a), int(b))
    return canonical_slope(int(text), 1)


def det(a: Slope, b: Slope) -> int:
    return a.p * b.q - b.p * a.q


def is_farey_neighbor(a: Slope, b: Slope) -> bool:
    return abs(det(a, b)) == 1


@dataclass(frozen=True)
class FareyTriple:
    """A triangle of the tessellation: three pairwise Farey neighbours."""

    a: Slope
    b: Slope
    c: Slope

    def __post_init__(self):
        s = {self.a, self.b, self.c}
        if len(s) != 3:
            raise ValueError("triple slopes must be distinct")
        for u, v in ((self.a, self.b), (self.b, self.c), (self.a, self.c)):
            if not is_farey_neighbor(u, v):
                raise ValueError(f"{u} and {v} are not Farey neighbours")

    @property
    def slopes(self) -> tuple[Slope, Slope, Slope]:
        return (self.a, self.b, self.c)

    def key(self) -> frozenset:
        """Identity of the tree vertex, independent of slope order."""
        return frozenset(self.slopes)

    def contains(self, s: Slope) -> bool:
        return s in self.slopes

    def opposite(self, u: Slope, v: Slope) -> Slope:
        (w,) = set(self.slopes) - {u, v}
        return w


BASE_TRIPLE = FareyTriple(ZERO, INF, ONE)


def third_slopes(u: Slope, v: Slope) -> tuple[Slope, Slope]:
    """The apexes of the two triangles sharing the edge (u, v)."""
    if not is_farey_neighbor(u, v):
        raise ValueError(f"{u} and {v} are not Farey neighbours")
    w1 = canonical_slope(u.p + v.p, u.q + v.q)
    w2 = canonical_slope(u.p - v.p, u.q - v.q)
    return w1, w2


@dataclass(frozen=True)
class DirectedEdge:
    """Directed edge of the dual tree.

    The underlying edge is the pair (x, y); the edge points from the
    triangle (x, y, frm) to the triangle (x, y, to).
    """

    x: Slope
    y: Slope
    frm: Slope
    to: Slope

    def __post_init__(self):
        if self.frm == self.to:
            raise ValueError("directed edge must join distinct triangles")
        apexes = set(third_slopes(self.x, self.y))  # validates (x, y) too
        if {self.frm, self.to} != apexes:
            raise ValueError(
                f"({self.frm}, {self.to}) are not the triangles on edge ({self.x}, {self.y})"
            )

    def reversed(self) -> "DirectedEdge":
        return DirectedEdge(self.x, self.y, self.to, self.frm)

    def from_triple(self) -> FareyTriple:
        return FareyTriple(self.x, self.y, self.frm)

    def to_triple(self) -> FareyTriple:
        return FareyTriple(self.x, self.y, self.to)

    def undirected_key(self) -> frozenset:
        return frozenset((self.x, self.y))

    def __str__(self) -> str:
        return f"({self.x},{self.y};{self.frm}->{self.to})"


BASE_EDGE = DirectedEdge(ZERO, INF, ONE, canonical_slope(-1, 1))


def neighbor_sequence(x: Slope, y: Slope, n: int) -> Slope:
    """The n-th neighbour of the region x, counted from the neighbour y.

    Componentwise y + n*x before canonicalisation, so (inf, 0, n) -> n/1
    and (0, inf, n) -> 1/n.
    """
    if not is_farey_neighbor(x, y):
        raise ValueError(f"{x} and {y} are not Farey neighbours")
    return canonical_slope(y.p + n * x.p, y.q + n * x.q)


def expand_edge(e: DirectedEdge) -> tuple[DirectedEdge, DirectedEdge]:
    """The two directed edges beyond e's head, both pointing onward."""
    children = []
    for u in (e.x, e.y):
        w1, w2 = third_slopes(u, e.to)
        other = e.y if u is e.x else e.x
        w = w2 if w1 == other else w1
        children.append(DirectedEdge(u, e.to, other, w))
    return children[0], children[1]


def _same_side(u: Slope, v: Slope, s: Slope, t: Slope) -> bool:
    """True iff s and t lie strictly on the same side of the edge (u, v)."""
    su = det(u, s) * det(v, s)
    tu = det(u, t) * det(v, t)
    return su * tu > 0


def tail_contains(e: DirectedEdge, s: Slope) -> bool:
    """Membership in Tail(e): the closed Farey interval between x and y
    on the side of e.frm."""
    if s == e.x or s == e.y:
        return True
    return _same_side(e.x, e.y, s, e.frm)


class FiniteSubtree:
    """A nonempty connected set of tree vertices (triangles)."""

    def __init__(self, vertices: Iterable[FareyTriple]):
        verts = {}
        for t in vertices:
            verts[t.key()] = t
        if not verts:
            raise ValueError("subtree must be nonempty")
        self._by_key = verts
        self._check_connected()

    @property
    def vertices(self) -> tuple[FareyTriple, ...]:
        return tuple(self._by_key.values())

    def __len__(self) -> int:
        return len(self._by_key)

    def __contains__(self, t: FareyTriple) -> bool:
        return t.key() in self._by_key

    def has_key(self, key: frozenset) -> bool:
        return key in self._by_key

    def _check_connected(self):
        keys = set(self._by_key)
        start = next(iter(keys))
        seen = {start}
        stack = [start]
        while stack:
            k = stack.pop()
            t = self._by_key[k]
            for u, v in ((t.a, t.b), (t.b, t.c), (t.a, t.c)):
                w = t.opposite(u, v)
                w1, w2 = third_slopes(u, v)
                other = w2 if w1 == w else w1
                nk = frozenset((u, v, other))
                if nk in keys and nk not in seen:
                    seen.add(nk)
                    stack.append(nk)
        if seen != keys:
            raise ValueError("subtree vertices are not connected")

    def grown_by(self, t: FareyTriple) -> "FiniteSubtree":
        return FiniteSubtree(list(self.vertices) + [t])


def circular_set(t: FiniteSubtree) -> list[DirectedEdge]:
    """Boundary edges of the subtree, all directed inward."""
    edges = []
    for tri in t.vertices:
        for u, v in ((tri.a, tri.b), (tri.b, tri.c), (tri.a, tri.c)):
            w = tri.opposite(u, v)
            w1, w2 = third_slopes(u, v)
            outside = w2 if w1 == w else w1
            if not t.has_key(frozenset((u, v, outside))):
                edges.append(DirectedEdge(u, v, outside, w))
    edges.sort(key=lambda e: (min(e.x, e.y).size + max(e.x, e.y).size, str(e)))
    return edges


def stern_brocot_triangles(
    max_size: int,
) -> Iterator[tuple[Slope, Slope, Slope, Slope]]:
    """Depth-first triangles of the tessellation as (a, b, m, o): m is the
    mediant of the edge (a, b) and o the apex of the triangle on the other
    side of that edge, so trace maps can propagate v(m) = v(a)v(b) - v(o).

    Pruned once m exceeds max_size.  Seeds are the positive wedge
    (0/1, inf; other apex -1/1) and the negative wedge (-1/0, 0/1; other
    apex 1/1); every slope other than 0/1 and inf appears exactly once as
    a mediant.  This generator fixes the package's canonical discovery
    order.
    """

    def dfs(a, b, o):
        m = (a[0] + b[0], a[1] + b[1])
        if abs(m[0]) + m[1] > max_size:
            return
        yield (
            canonical_slope(*a),
            canonical_slope(*b),
            canonical_slope(*m),
            canonical_slope(*o),
        )
        yield from dfs(a, m, b)
        yield from dfs(m, b, a)

    yield from dfs((0, 1), (1, 0), (-1, 1))
    yield from dfs((-1, 0), (0, 1), (1, 1))


def enumerate_slopes(max_size: int) -> list[Slope]:
    """All slopes with size <= max_size in canonical order.

    Order: ascending combinatorial size, ties by Stern-Brocot discovery.
    """
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    buckets: list[list[Slope]] = [[] for _ in range(max_size + 1)]
    buckets[1].extend((ZERO, INF))
    for _, _, m, _ in stern_brocot_triangles(max_size):
        buckets[m.size].append(m)
    out: list[Slope] = []
    for b in buckets:
        out.extend(b)
    return out


def slope_word(s: Slope) -> list[int]:
    """A cyclically reduced word for the primitive class of slope s.

    Tokens: +1 = X, -1 = X^{-1}, +2 = Y, -2 = Y^{-1}.  Base dictionary:
    0/1 -> X, inf -> Y, 1/1 -> XY, negative slopes built from the wedge
    (Y^{-1}, X).  The word has q letters X and |p| letters Y^{+-1}, so its
    length is the combinatorial size |p| + q.
    """
    if s == ZERO:
        return [1]
    if s == INF:
        return [2]
    if s.p > 0:
        lo, hi = (0, 1), (1, 0)
        words = {lo: [1], hi: [2]}
    else:
        lo, hi = (-1, 0), (0, 1)
        words = {lo: [-2], hi: [1]}
    target = (s.p, s.q)
    while True:
        m = (lo[0] + hi[0], lo[1] + hi[1])
        words[m] = words[lo] + words[hi]
        if m == target:
            return words[m]
        # exact comparison target vs mediant: which side of m does s lie on
        if s.p * m[1] - m[0] * s.q < 0:
            hi = m
        else:
            lo = m


def parity_class(s: Slope) -> tuple[int, int]:
    """(p, q) mod 2; the three classes partition the slopes."""
    return (s.p % 2, s.q % 2)
