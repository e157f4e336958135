"""One-sided subshifts of finite type presented by a finite digraph.

The phase space is the set of infinite walks in the trimmed graph (every
vertex of out-degree zero removed iteratively); the acting monoid is N0
via the left shift.  Points are represented exactly as eventually
periodic walks u·w^inf, which are dense, closed under the shift, and
support exact rational distances.  The metric is d(x, y) = 2^-i with i
the first index where the walks differ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .monoid import Elem, ResidueClassSet

Word = tuple[int, ...]


def _primitive(w: Word) -> Word:
    """Shortest word z with w = z^m."""
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w == w[:d] * (n // d):
            return w[:d]
    return w


def canonical_point(preperiod: Iterable[int], cycle: Iterable[int]) -> "EventuallyPeriodicPoint":
    """Canonical form: primitive cycle, shortest possible preperiod.

    A trailing preperiod letter equal to the last cycle letter is absorbed
    by rotating the cycle right, which leaves the walk itself unchanged.
    """
    u = list(preperiod)
    w = list(_primitive(tuple(cycle)))
    if not w:
        raise ValueError("cycle word must be nonempty")
    while u and u[-1] == w[-1]:
        u.pop()
        w = [w[-1]] + w[:-1]
    return EventuallyPeriodicPoint(tuple(u), tuple(w))


@dataclass(frozen=True)
class EventuallyPeriodicPoint:
    """The infinite walk preperiod·cycle^inf.

    Instances compare equal exactly when they denote the same walk,
    provided they were built through :func:`canonical_point` (or
    ``SftSystem.point``, which also checks admissibility).
    """

    preperiod: Word
    cycle: Word

    def coordinate(self, i: int) -> int:
        u, w = self.preperiod, self.cycle
        if i < len(u):
            return u[i]
        return w[(i - len(u)) % len(w)]

    def coordinates(self, n: int) -> Word:
        return tuple(self.coordinate(i) for i in range(n))

    def shift(self, steps: int = 1) -> "EventuallyPeriodicPoint":
        if steps < 0:
            raise ValueError("shift steps must be >= 0")
        u, w = self.preperiod, self.cycle
        if steps < len(u):
            return canonical_point(u[steps:], w)
        r = (steps - len(u)) % len(w)
        return canonical_point((), w[r:] + w[:r])

    def is_periodic(self) -> bool:
        return not self.preperiod


def first_difference(
    x: EventuallyPeriodicPoint, y: EventuallyPeriodicPoint
) -> int | None:
    """First index where the walks differ, or None when equal.

    Two eventually periodic walks agreeing through both preperiods plus a
    common multiple of the cycle lengths agree everywhere.
    """
    bound = (
        len(x.preperiod)
        + len(y.preperiod)
        + math.lcm(len(x.cycle), len(y.cycle))
    )
    for i in range(bound):
        if x.coordinate(i) != y.coordinate(i):
            return i
    return None


class SftSystem:
    """Vertex shift over a digraph on {0..vertices-1}.

    Construction trims the graph (iteratively deleting vertices without
    outgoing edges) and rejects graphs whose trim is empty, since those
    carry no infinite walks at all.
    """

    rank = 1

    def __init__(self, vertices: int, edges: Iterable[tuple[int, int]], name: str | None = None):
        if vertices < 1:
            raise ValueError("need at least one vertex")
        edge_set = frozenset((int(a), int(b)) for a, b in edges)
        for a, b in edge_set:
            if not (0 <= a < vertices and 0 <= b < vertices):
                raise ValueError(f"edge ({a},{b}) out of range for {vertices} vertices")
        alive = set(range(vertices))
        while True:
            dead = {v for v in alive if not any(a == v and b in alive for a, b in edge_set)}
            if not dead:
                break
            alive -= dead
        if not alive:
            raise ValueError("graph is empty after trimming (no infinite walks)")
        self.vertices = vertices
        self.edges = edge_set
        self.name = name
        self.alive = frozenset(alive)
        self.succ: dict[int, Word] = {
            v: tuple(sorted(b for a, b in edge_set if a == v and b in alive))
            for v in sorted(alive)
        }

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SftSystem)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        tag = self.name or f"{self.vertices}v/{len(self.edges)}e"
        return f"SftSystem({tag})"

    # -- points ------------------------------------------------------------

    def word_admissible(self, word: Iterable[int]) -> bool:
        word = tuple(word)
        if any(v not in self.alive for v in word):
            return False
        return all((a, b) in self.edges for a, b in zip(word, word[1:]))

    def point(self, preperiod: Iterable[int], cycle: Iterable[int]) -> EventuallyPeriodicPoint:
        """Validated, canonical point u·w^inf."""
        u, w = tuple(preperiod), tuple(cycle)
        if not w:
            raise ValueError("cycle word must be nonempty")
        walk = u + w + (w[0],)
        if not self.word_admissible(walk):
            raise ValueError(f"walk {u}·{w}^inf is not admissible")
        return canonical_point(u, w)

    def act(self, t: Elem | int, x: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
        steps = t if isinstance(t, int) else t[0] if len(t) == 1 else None
        if steps is None:
            raise ValueError("shift systems act by rank-1 times")
        return x.shift(steps)

    def distance(self, x: EventuallyPeriodicPoint, y: EventuallyPeriodicPoint) -> Fraction:
        i = first_difference(x, y)
        if i is None:
            return Fraction(0)
        return Fraction(1, 2**i)

    def shift_orbit(self, x: EventuallyPeriodicPoint) -> frozenset[EventuallyPeriodicPoint]:
        """All shifts of x (finite: the preperiod tail plus the cycle rotations)."""
        out = set()
        cur = x
        for _ in range(len(x.preperiod) + len(x.cycle)):
            out.add(cur)
            cur = cur.shift(1)
        return frozenset(out)

    def fixer(self, x: EventuallyPeriodicPoint) -> ResidueClassSet:
        """Exact Fix(x) = {t : shift^t x = x} as a residue-class set."""
        if x.preperiod:
            return ResidueClassSet(
                rank=1,
                preperiod=(len(x.preperiod),),
                period=(len(x.cycle),),
                residues=frozenset(),
                exceptional=frozenset({(0,)}),
            )
        return ResidueClassSet(
            rank=1,
            preperiod=(0,),
            period=(len(x.cycle),),
            residues=frozenset({(0,)}),
            exceptional=frozenset(),
        )

    # -- walks -------------------------------------------------------------

    def admissible_words(self, length: int, cap: int | None = None) -> list[Word] | None:
        """All admissible words of the given length; None when cap exceeded."""
        if length < 1:
            raise ValueError("length must be >= 1")
        words: list[Word] = []
        stack: list[Word] = [(v,) for v in sorted(self.alive)]
        while stack:
            w = stack.pop()
            if len(w) == length:
                words.append(w)
                if cap is not None and len(words) > cap:
                    return None
                continue
            for b in self.succ[w[-1]]:
                stack.append(w + (b,))
        return words

    def extend_word_to_point(self, word: Iterable[int]) -> EventuallyPeriodicPoint:
        """Extend an admissible word greedily (least successor) into a point."""
        word = tuple(word)
        if not self.word_admissible(word):
            raise ValueError(f"word {word} is not admissible")
        path = list(word)
        # latest occurrence wins so the closure repeats the newest segment
        seen = {v: i for i, v in enumerate(path)}
        cur = path[-1]
        while True:
            nxt = self.succ[cur][0]
            if nxt in seen:
                split = seen[nxt]
                return canonical_point(path[:split], path[split:])
            seen[nxt] = len(path)
            path.append(nxt)
            cur = nxt

    def random_point(self, rng, extra: int = 2) -> EventuallyPeriodicPoint:
        """Seeded random eventually periodic walk."""
        order = sorted(self.alive)
        path = [order[rng.randrange(len(order))]]
        for _ in range(rng.randrange(extra + 1)):
            nbrs = self.succ[path[-1]]
            path.append(nbrs[rng.randrange(len(nbrs))])
        seen = {v: i for i, v in enumerate(path)}
        cur = path[-1]
        while True:
            nbrs = self.succ[cur]
            nxt = nbrs[rng.randrange(len(nbrs))]
            if nxt in seen:
                split = seen[nxt]
                return canonical_point(path[:split], path[split:])
            seen[nxt] = len(path)
            path.append(nxt)
            cur = nxt

    def enumerate_points(self, max_count: int = 100000) -> frozenset[EventuallyPeriodicPoint] | None:
        """All points, for systems with finitely many walks; None if too many.

        Every walk in a finite system has preperiod and cycle bounded by
        the vertex count, so candidates are enumerable directly.
        """
        n = len(self.alive)
        pts: set[EventuallyPeriodicPoint] = set()
        for v in self.alive:
            stack: list[list[int]] = [[v]]
            while stack:
                path = stack.pop()
                cur = path[-1]
                for nxt in self.succ[cur]:
                    if nxt in path:
                        split = path.index(nxt)
                        pts.add(canonical_point(path[:split], path[split:]))
                        if len(pts) > max_count:
                            return None
                    elif len(path) <= 2 * n:
                        stack.append(path + [nxt])
        return frozenset(pts)
