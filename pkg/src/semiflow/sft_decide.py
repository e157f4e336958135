"""Exact graph-theoretic deciders for every property of a vertex shift,
plus a depth-bounded cylinder brute force used to cross-validate them.

Characterizations used (all on the trimmed graph, and each validated
against the brute force in the test suite):

* transitive        <=>  strongly connected
* dense periodic    <=>  no edge joins two distinct strongly connected
                         components (every edge lies on a cycle)
* minimal           <=>  the graph is one simple cycle
* infinite          <=>  some branching vertex lies on a cycle
* sensitive         <=>  every vertex has a path to a branching vertex;
                         the constant is then 1 (the diameter): any point
                         must pass a branching vertex arbitrarily late,
                         where a neighbor can be split off to distance 1
* eventually sensitive = sensitive: a walk that never meets a branching
                         vertex is isolated in its cylinder forever, and
                         shifting it never changes that
* uniformly equicontinuous <=> finite (infinite shifts split pairs at
                         distance 2^-n to distance 1 at time n)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .sft import EventuallyPeriodicPoint, SftSystem, Word, canonical_point
from .verdicts import PropertyProfile, PropertyValue


@dataclass(frozen=True)
class GraphAnalysis:
    sccs: tuple[frozenset[int], ...]
    scc_of: dict[int, int]
    branching: frozenset[int]
    reach_branching: frozenset[int]
    cycle_vertices: frozenset[int]


def _tarjan_sccs(order: list[int], succ: dict[int, Word]) -> list[frozenset[int]]:
    """Iterative Tarjan over the trimmed adjacency."""
    index: dict[int, int] = {}
    lowlink: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    sccs: list[frozenset[int]] = []
    counter = 0
    for root in order:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            advanced = False
            for j in range(pi, len(succ[v])):
                w = succ[v][j]
                if w not in index:
                    work[-1] = (v, j + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if lowlink[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                sccs.append(frozenset(comp))
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
    return sccs


@lru_cache(maxsize=4096)
def analyze(s: SftSystem) -> GraphAnalysis:
    order = sorted(s.alive)
    sccs = tuple(_tarjan_sccs(order, s.succ))
    scc_of = {v: i for i, comp in enumerate(sccs) for v in comp}
    branching = frozenset(v for v in s.alive if len(s.succ[v]) >= 2)
    cycle_vertices = frozenset(
        v
        for comp in sccs
        for v in comp
        if len(comp) >= 2 or v in s.succ[v]
    )
    # reverse reachability from the branching set
    preds: dict[int, list[int]] = {v: [] for v in s.alive}
    for v in s.alive:
        for w in s.succ[v]:
            preds[w].append(v)
    reach = set(branching)
    frontier = list(branching)
    while frontier:
        w = frontier.pop()
        for v in preds[w]:
            if v not in reach:
                reach.add(v)
                frontier.append(v)
    return GraphAnalysis(sccs, scc_of, branching, frozenset(reach), cycle_vertices)


def is_transitive_exact(s: SftSystem) -> bool:
    return len(analyze(s).sccs) == 1


def has_dense_periodic_points_exact(s: SftSystem) -> bool:
    scc_of = analyze(s).scc_of
    return all(scc_of[a] == scc_of[b] for a, b in s.edges if a in s.alive and b in s.alive)


def is_minimal_exact(s: SftSystem) -> bool:
    if len(analyze(s).sccs) != 1:
        return False
    indeg = {v: 0 for v in s.alive}
    for v in s.alive:
        if len(s.succ[v]) != 1:
            return False
        indeg[s.succ[v][0]] += 1
    return all(d == 1 for d in indeg.values())


def is_infinite_exact(s: SftSystem) -> bool:
    a = analyze(s)
    return bool(a.branching & a.cycle_vertices)


@dataclass(frozen=True)
class SensitivityResult:
    sensitive: bool
    constant: Fraction | None


def is_sensitive_exact(s: SftSystem) -> SensitivityResult:
    a = analyze(s)
    if a.reach_branching == s.alive:
        return SensitivityResult(True, Fraction(1))
    return SensitivityResult(False, None)


def is_eventually_sensitive_exact(s: SftSystem) -> bool:
    return is_sensitive_exact(s).sensitive


def is_ueq_exact(s: SftSystem) -> bool:
    return not is_infinite_exact(s)


# -- witnesses ---------------------------------------------------------------


def first_branch_at_or_after(
    s: SftSystem, x: EventuallyPeriodicPoint, pos: int
) -> int | None:
    """First index >= pos where x's walk sits on a branching vertex.

    Decidable forever: past the preperiod the walk repeats its cycle, so
    scanning one preperiod plus one cycle length suffices.
    """
    branching = analyze(s).branching
    stop = max(pos, len(x.preperiod)) + len(x.cycle)
    for j in range(pos, stop):
        if x.coordinate(j) in branching:
            return j
    return None


def split_at(
    s: SftSystem, x: EventuallyPeriodicPoint, j: int
) -> EventuallyPeriodicPoint:
    """A point agreeing with x through index j and diverging at j + 1.

    Requires a branching vertex at index j; the divergent branch is
    extended greedily into a cycle, so the result stays exactly
    representable.
    """
    v = x.coordinate(j)
    alt = [b for b in s.succ[v] if b != x.coordinate(j + 1)]
    if not alt:
        raise ValueError(f"walk has no alternative continuation at index {j}")
    prefix = x.coordinates(j + 1) + (alt[0],)
    return s.extend_word_to_point(prefix)


def divergent_pair_for_word(
    s: SftSystem, word: Word
) -> tuple[EventuallyPeriodicPoint, EventuallyPeriodicPoint, int] | None:
    """Two points of the cylinder [word] with d(shift^t x, shift^t y) = 1.

    Exists whenever the system is sensitive; t is at most |word| plus the
    vertex count (a forced chain cannot revisit a vertex before reaching
    a branching one).
    """
    x = s.extend_word_to_point(word)
    j = first_branch_at_or_after(s, x, len(word) - 1)
    if j is None:
        return None
    y = split_at(s, x, j)
    return x, y, j + 1


# -- cylinder brute force ----------------------------------------------------


def _walk_counts(s: SftSystem, length: int) -> int:
    counts = {v: 1 for v in s.alive}
    for _ in range(length - 1):
        counts = {v: sum(counts[w] for w in s.succ[v]) for v in s.alive}
    return sum(counts.values())


def _ends_after(s: SftSystem, steps: int) -> frozenset[int]:
    cur = set(s.alive)
    for _ in range(steps):
        cur = {w for v in cur for w in s.succ[v]}
    return frozenset(cur)


def _reachable_from(s: SftSystem, start: int) -> frozenset[int]:
    """Vertices reachable by a path of length >= 1."""
    seen: set[int] = set()
    frontier = list(s.succ[start])
    while frontier:
        v = frontier.pop()
        if v in seen:
            continue
        seen.add(v)
        frontier.extend(s.succ[v])
    return frozenset(seen)


def _bounded_return(s: SftSystem, a: int, b: int, bound: int) -> bool:
    """Is there a path a -> b of length between 1 and bound?"""
    cur = {a}
    for _ in range(bound):
        cur = {w for v in cur for w in s.succ[v]}
        if b in cur:
            return True
    return False


def _word_pairs_first_last(s: SftSystem, length: int) -> set[tuple[int, int]]:
    pairs = {(v, v) for v in s.alive}
    for _ in range(length - 1):
        pairs = {(b, w) for b, v in pairs for w in s.succ[v]}
    return pairs


def _unique_walk(s: SftSystem, start: int, length: int) -> Word | None:
    """The unique length-`length` walk from start, or None if there are two."""
    walk = [start]
    for _ in range(length - 1):
        nbrs = s.succ[walk[-1]]
        if len(nbrs) != 1:
            return None
        walk.append(nbrs[0])
    return tuple(walk)


def brute_force_profile(
    s: SftSystem, depth: int = 12, period_bound: int = 12
) -> PropertyProfile:
    """Resolution-bounded semi-oracle over depth-`depth` cylinders.

    Transitivity: every ordered pair of admissible words must be joined
    by a longer walk, which depends only on the end of the first word and
    the start of the second.  Dense periodicity: every word must close
    into a periodic walk within `period_bound` return steps.  Sensitivity:
    every word must admit two continuations diverging within
    depth + period_bound steps, i.e. a branching vertex within
    `period_bound` of its end.  Minimality and finiteness come from
    explicit walk enumeration and walk counting.  Everything quantifies
    over realized word classes, computed by stepping vertex sets, so no
    cylinder is ever materialized; the answers equal literal enumeration.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    src = f"brute-force(depth={depth},period_bound={period_bound})"
    branching = analyze(s).branching

    ends = _ends_after(s, depth - 1)
    reach = {a: _reachable_from(s, a) for a in ends}
    tt = all(b in reach[a] for a in ends for b in s.alive)

    dpp = all(
        _bounded_return(s, last, first, period_bound)
        for first, last in _word_pairs_first_last(s, depth)
    )

    # distance from each realized end to the branching set
    dist: dict[int, int] = {v: 0 for v in branching}
    frontier = list(branching)
    preds: dict[int, list[int]] = {v: [] for v in s.alive}
    for v in s.alive:
        for w in s.succ[v]:
            preds[w].append(v)
    while frontier:
        w = frontier.pop(0)
        for v in preds[w]:
            if v not in dist:
                dist[v] = dist[w] + 1
                frontier.append(v)
    sensitive = bool(branching) and all(
        a in dist and dist[a] <= period_bound for a in ends
    )

    walks = [_unique_walk(s, v, depth) for v in sorted(s.alive)]
    minimal = all(w is not None for w in walks) and all(
        set(w) == set(s.alive) for w in walks if w is not None
    )

    infinite = _walk_counts(s, depth) > _walk_counts(s, depth - 1)

    devaney = tt and dpp and not minimal
    mk = lambda v: PropertyValue(v, False, src)
    return PropertyProfile(
        tt=mk(tt),
        dpp=mk(dpp),
        minimal=mk(minimal),
        sensitive=mk(sensitive),
        eventually_sensitive=PropertyValue(None, False, src + " (not computed)"),
        ueq=PropertyValue(None, False, src + " (not computed)"),
        infinite=mk(infinite),
        devaney=devaney,
    )


# -- periodic points ---------------------------------------------------------


def _closed_walks(s: SftSystem, length: int) -> Iterator[Word]:
    """All closed walks of exactly `length` edges, as vertex words."""
    for start in sorted(s.alive):
        stack: list[Word] = [(start,)]
        while stack:
            w = stack.pop()
            if len(w) == length:
                if (w[-1], start) in s.edges:
                    yield w
                continue
            for b in s.succ[w[-1]]:
                stack.append(w + (b,))


def _rotation_class(w: Word) -> Word:
    return min(w[i:] + w[:i] for i in range(len(w)))


def periodic_points_up_to(
    s: SftSystem, period_bound: int
) -> set[EventuallyPeriodicPoint]:
    """One representative per periodic orbit of primitive period <= bound.

    Distinct representatives always have disjoint orbits: the orbit of a
    periodic point is exactly the set of rotations of its cycle word.
    """
    if period_bound < 1:
        raise ValueError("period bound must be >= 1")
    reps: set[EventuallyPeriodicPoint] = set()
    seen_classes: set[Word] = set()
    for length in range(1, period_bound + 1):
        for w in _closed_walks(s, length):
            cls = _rotation_class(w)
            if cls in seen_classes:
                continue
            seen_classes.add(cls)
            point = canonical_point((), cls)
            if len(point.cycle) == length:  # primitive cycles only
                reps.add(point)
    return reps


def two_disjoint_periodic_orbits(
    s: SftSystem, period_bound: int
) -> tuple[EventuallyPeriodicPoint, EventuallyPeriodicPoint] | None:
    """First two periodic orbit representatives found, shortest cycles first."""
    found: list[EventuallyPeriodicPoint] = []
    seen_classes: set[Word] = set()
    for length in range(1, period_bound + 1):
        for w in _closed_walks(s, length):
            cls = _rotation_class(w)
            if cls in seen_classes:
                continue
            seen_classes.add(cls)
            point = canonical_point((), cls)
            if len(point.cycle) != length:
                continue
            found.append(point)
            if len(found) == 2:
                return found[0], found[1]
    return None
