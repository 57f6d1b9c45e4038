"""Exact combinatorics of rational slopes and the trivalent triangle tree.

Slopes p/q (including 1/0) label the curves on a one-holed torus; two
slopes are adjacent when |p q' - q p'| = 1.  The adjacency triangles form
an infinite trivalent tree rooted at the base triangle (1/0, 0/1, 1/1).
Everything in this module is integer arithmetic, no rounding anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator


class BaseRegionError(ValueError):
    """Raised when a tree-parent query is made on a base slope."""


class NotNeighborsError(ValueError):
    """Raised when two slopes are not Farey neighbors."""


@dataclass(frozen=True, order=False)
class Slope:
    """A rational slope p/q in lowest terms, q > 0, or 1/0 for infinity."""

    p: int
    q: int

    def __init__(self, p: int, q: int) -> None:
        if p == 0 and q == 0:
            raise ValueError("slope 0/0 is not a point of P^1(Q)")
        g = gcd(p, q)
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    def __repr__(self) -> str:
        return f"Slope({self.p}, {self.q})"

    @property
    def is_infinity(self) -> bool:
        return self.q == 0

    @classmethod
    def parse(cls, text: str) -> "Slope":
        """Parse 'p/q', 'p' (integer) or 'inf'."""
        text = text.strip()
        if text in ("inf", "infinity", "oo"):
            return cls(1, 0)
        if "/" in text:
            a, b = text.split("/", 1)
            return cls(int(a), int(b))
        return cls(int(text), 1)


INFINITY = Slope(1, 0)
ZERO = Slope(0, 1)
ONE = Slope(1, 1)
BASE_SLOPES = (INFINITY, ZERO, ONE)


def cross(s: Slope, t: Slope) -> int:
    """Determinant p_s q_t - q_s p_t; zero iff s == t."""
    return s.p * t.q - s.q * t.p


def is_neighbor(s: Slope, t: Slope) -> bool:
    """Farey adjacency: |p q' - q p'| = 1."""
    return abs(cross(s, t)) == 1


def value_less(s: Slope, t: Slope) -> bool:
    """Strict order by rational value, with 1/0 counted as +infinity."""
    return cross(s, t) < 0


def cyclic_before(s: Slope, t: Slope, u: Slope) -> bool:
    """True when t is met strictly before u going counterclockwise from s.

    Counterclockwise means increasing rational value, wrapping through
    infinity.  The three slopes must be pairwise distinct.
    """
    a = cross(s, t) < 0
    b = cross(t, u) < 0
    c = cross(u, s) < 0
    return (a + b + c) >= 2


def _canon(p: int, q: int) -> Slope:
    return Slope(p, q)


def mediant(s: Slope, t: Slope) -> Slope:
    """Farey mediant (p+p')/(q+q') of two neighbors."""
    if not is_neighbor(s, t):
        raise NotNeighborsError(f"{s} and {t} are not Farey neighbors")
    return _canon(s.p + t.p, s.q + t.q)


def third_region(s: Slope, t: Slope, direction: int) -> Slope:
    """The common neighbor (p +- p')/(q +- q') of the pair (s, t).

    direction +1 picks the sum (the mediant), -1 the difference.  The two
    results are exactly the two slopes adjacent to both s and t.
    """
    if not is_neighbor(s, t):
        raise NotNeighborsError(f"{s} and {t} are not Farey neighbors")
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    if direction == 1:
        return _canon(s.p + t.p, s.q + t.q)
    return _canon(s.p - t.p, s.q - t.q)


def arc_child(s: Slope, t: Slope) -> Slope:
    """Common neighbor of s and t lying inside the circular arc s -> t.

    The two common neighbors of an adjacent pair sit on opposite sides;
    this picks the one between s and t in the counterclockwise circular
    order (the order of `sorted_slopes`), which is the correct gap witness
    when s and t are circularly consecutive in an enumeration.
    """
    w = third_region(s, t, +1)
    if cyclic_before(s, w, t):
        return w
    return third_region(s, t, -1)


def neighbor_sequence(r: Slope, r0: Slope, n: int) -> Slope:
    """n-th slope in the bi-infinite family of neighbors of r, seeded at r0.

    The family is (p0 + n p)/(q0 + n q) with the canonical representatives
    of r and r0; successive members are adjacent to each other and all are
    adjacent to r.  The indexing direction is fixed by this formula.
    """
    if not is_neighbor(r, r0):
        raise NotNeighborsError(f"{r0} is not a neighbor of {r}")
    return _canon(r0.p + n * r.p, r0.q + n * r.q)


@dataclass(frozen=True)
class FareyTriangle:
    """Three pairwise adjacent slopes (a triangle of the tessellation)."""

    a: Slope
    b: Slope
    c: Slope

    def __post_init__(self) -> None:
        if not (is_neighbor(self.a, self.b) and is_neighbor(self.b, self.c)
                and is_neighbor(self.a, self.c)):
            raise NotNeighborsError("slopes are not pairwise adjacent")

    def slopes(self) -> tuple[Slope, Slope, Slope]:
        return (self.a, self.b, self.c)

    def key(self) -> frozenset:
        return frozenset(self.slopes())


BASE_TRIANGLE = FareyTriangle(INFINITY, ZERO, ONE)


@dataclass(frozen=True)
class TreeAddress:
    """Path from the base triangle: first letter in {0,1,2}, rest in {0,1}.

    Letter k of the first step crosses the edge of the base triangle
    opposite its k-th vertex (order 1/0, 0/1, 1/1).  Later letters pick one
    of the two non-returning edges, 0 for the one whose retained old vertex
    is smaller by value (1/0 counting as +infinity).
    """

    word: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.word:
            if self.word[0] not in (0, 1, 2):
                raise ValueError("first letter must be 0, 1 or 2")
            if any(w not in (0, 1) for w in self.word[1:]):
                raise ValueError("later letters must be 0 or 1")

    def __len__(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class Expansion:
    """One tree step: triangle (u, v, old) spawns new across edge (u, v)."""

    u: Slope
    v: Slope
    old: Slope
    new: Slope
    depth: int
    address: TreeAddress


def _other_common_neighbor(u: Slope, v: Slope, w: Slope) -> Slope:
    """The common neighbor of (u, v) distinct from w."""
    s = third_region(u, v, 1)
    if s != w:
        return s
    return third_region(u, v, -1)


def expansions(depth: int) -> Iterator[Expansion]:
    """Breadth-first tree steps out to the given triangle distance.

    Yields one Expansion per triangle at distance 1..depth from the base
    triangle; each step introduces exactly one new slope, so consumers can
    fold Markoff-style recurrences over the stream without any dictionary
    of parents.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    base = BASE_TRIANGLE.slopes()
    frontier: list[tuple[tuple[Slope, Slope, Slope], Slope, TreeAddress]] = []
    for k in range(3):
        u, v = (base[i] for i in range(3) if i != k)
        old = base[k]
        new = _other_common_neighbor(u, v, old)
        addr = TreeAddress((k,))
        exp = Expansion(u, v, old, new, 1, addr)
        if depth >= 1:
            frontier.append(((u, v, new), new, addr))
            yield exp
    d = 1
    while d < depth:
        next_frontier = []
        for (tri, fresh, addr) in frontier:
            # deterministic branch order: smaller retained vertex first
            o1, o2 = (s for s in tri if s != fresh)
            if value_less(o2, o1):
                o1, o2 = o2, o1
            for letter, keep in ((0, o1), (1, o2)):
                drop = o2 if keep is o1 else o1
                new = _other_common_neighbor(fresh, keep, drop)
                naddr = TreeAddress(addr.word + (letter,))
                yield Expansion(fresh, keep, drop, new, d + 1, naddr)
                next_frontier.append(((fresh, keep, new), new, naddr))
        frontier = next_frontier
        d += 1


def triangle_at(address: TreeAddress) -> FareyTriangle:
    """Triangle reached by following the address from the base triangle."""
    if not address.word:
        return BASE_TRIANGLE
    base = BASE_TRIANGLE.slopes()
    k = address.word[0]
    u, v = (base[i] for i in range(3) if i != k)
    old = base[k]
    fresh = _other_common_neighbor(u, v, old)
    tri = (u, v, fresh)
    for letter in address.word[1:]:
        o1, o2 = (s for s in tri if s != fresh)
        if value_less(o2, o1):
            o1, o2 = o2, o1
        keep = o1 if letter == 0 else o2
        drop = o2 if letter == 0 else o1
        new = _other_common_neighbor(fresh, keep, drop)
        tri = (fresh, keep, new)
        fresh = new
    return FareyTriangle(*tri)


def enumerate_slopes(depth: int) -> list[Slope]:
    """All slopes on triangles within tree distance `depth` of the base.

    The result has exactly 3 * 2**depth elements and is returned in
    counterclockwise circular order starting at 0/1 and ending at 1/0.
    """
    seen = set(BASE_SLOPES)
    for exp in expansions(depth):
        seen.add(exp.new)
    return sorted_slopes(seen)


def sorted_slopes(slopes) -> list[Slope]:
    """Circular order: increasing rational value, infinity last."""

    def key(s: Slope):
        if s.is_infinity:
            return (1, Fraction(0))
        return (0, Fraction(s.p, s.q))

    return sorted(slopes, key=key)


def _separated(u: Slope, v: Slope, w: Slope, s: Slope) -> bool:
    """True when s and w lie on opposite sides of the geodesic (u, v)."""
    return cyclic_before(u, s, v) != cyclic_before(u, w, v)


def walk_to(target: Slope) -> list[FareyTriangle]:
    """Triangle path from the base triangle to the first one containing target.

    The path crosses one tessellation edge per step; its length is the tree
    distance of the slope.  For a base slope the path is just the base
    triangle.
    """
    tri = BASE_TRIANGLE.slopes()
    path = [FareyTriangle(*tri)]
    while target not in tri:
        for i in range(3):
            u, v = (tri[j] for j in range(3) if j != i)
            w = tri[i]
            if _separated(u, v, w, target):
                new = _other_common_neighbor(u, v, w)
                tri = (u, v, new)
                break
        else:
            raise RuntimeError(f"walk toward {target} made no progress")
        path.append(FareyTriangle(*tri))
    return path


@lru_cache(maxsize=65536)
def parents_full(s: Slope) -> tuple[Slope, Slope, Slope]:
    """Tree parents (u, v) of s plus the opposite slope w of their edge.

    (u, v) is the unique adjacent pair, both strictly closer to the base
    triangle, whose second common neighbor is s; w is the first common
    neighbor, i.e. the vertex reflected when s was created.  The trace
    recursion consumes exactly this triple.
    """
    if s in BASE_SLOPES:
        raise BaseRegionError(f"{s} is a base region and has no tree parents")
    path = walk_to(s)
    last, prev = path[-1], path[-2]
    shared = [x for x in last.slopes() if x != s]
    u, v = shared
    w = next(x for x in prev.slopes() if x not in (u, v))
    return u, v, w


def parents(s: Slope) -> tuple[Slope, Slope]:
    """Tree-parent pair of s, ordered by rational value (1/0 last)."""
    u, v, _ = parents_full(s)
    return (u, v) if value_less(u, v) else (v, u)


def tree_depth(s: Slope) -> int:
    """Tree distance from the base triangle (0 for the three base slopes)."""
    if s in BASE_SLOPES:
        return 0
    return len(walk_to(s)) - 1


_PINNED_PAIR = {
    INFINITY: (ZERO, ONE),
    ZERO: (INFINITY, ONE),
    ONE: (INFINITY, ZERO),
}


def anchor_pair(r: Slope) -> tuple[Slope, Slope]:
    """Anchor neighbors (S0, S-1) of r used to normalize its boundary side.

    S0 is the tree parent met first counterclockwise from r (for a base
    slope, the pinned stand-in pair is used); S-1 is the preceding member
    S0 - r of the neighbor family of r, which for a non-base slope is the
    other parent.  Both are adjacent to r and to each other.
    """
    if r in _PINNED_PAIR:
        u, v = _PINNED_PAIR[r]
    else:
        u, v, _ = parents_full(r)
    anchor = u if cyclic_before(r, u, v) else v
    prev = _canon(anchor.p - r.p, anchor.q - r.q)
    return anchor, prev
