"""Exact arithmetic for the acting monoid N0^k.

Elements are plain int tuples, added componentwise; the identity is the
all-zeros tuple.  Under the discrete topology the compact subsets of N0^k
are exactly the finite ones, so a "corresponding compact" for a syndetic
set is a finite frozenset of elements.

The only decidable set class supported is the residue-class set: a finite
exceptional part plus, above a preperiod corner, a union of full residue
classes modulo a period vector.  This is the shape taken by fixers of
points in finite systems, and syndeticity is decidable on it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

Elem = tuple[int, ...]


def zero(rank: int) -> Elem:
    return (0,) * rank


def add(s: Elem, t: Elem) -> Elem:
    return tuple(a + b for a, b in zip(s, t, strict=True))


def leq(s: Elem, t: Elem) -> bool:
    """Componentwise partial order (reflexive, antisymmetric, transitive)."""
    return all(a <= b for a, b in zip(s, t, strict=True))


def half_open_box(hi: Elem) -> Iterator[Elem]:
    """All t with 0 <= t < hi componentwise."""
    return itertools.product(*(range(h) for h in hi))


def closed_box(hi: Elem) -> Iterator[Elem]:
    """All t with 0 <= t <= hi componentwise."""
    return itertools.product(*(range(h + 1) for h in hi))


def fold(t: Elem, preperiod: Elem, period: Elem) -> Elem:
    """Pull t back into the fundamental box [0, preperiod + period).

    Coordinates below their preperiod are kept, the rest are reduced to
    preperiod + ((t - preperiod) mod period).
    """
    return tuple(
        ti if ti < pi else pi + (ti - pi) % qi
        for ti, pi, qi in zip(t, preperiod, period, strict=True)
    )


@dataclass(frozen=True)
class ResidueClassSet:
    """The set  exceptional ∪ { t >= preperiod : (t - preperiod) mod period in residues }.

    Membership is exact and total.  ``residues`` are reduced vectors
    (strictly below ``period`` componentwise); ``exceptional`` members must
    not dominate ``preperiod``, so the two parts never overlap ambiguously.
    """

    rank: int
    preperiod: Elem
    period: Elem
    residues: frozenset[Elem]
    exceptional: frozenset[Elem]

    def __post_init__(self) -> None:
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        object.__setattr__(self, "residues", frozenset(map(tuple, self.residues)))
        object.__setattr__(self, "exceptional", frozenset(map(tuple, self.exceptional)))
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        for vec in (self.preperiod, self.period):
            if len(vec) != self.rank or any(v < 0 for v in vec):
                raise ValueError("preperiod/period must be non-negative vectors of full rank")
        if any(q < 1 for q in self.period):
            raise ValueError("every period coordinate must be >= 1")
        for r in self.residues:
            if len(r) != self.rank or not all(0 <= ri < qi for ri, qi in zip(r, self.period)):
                raise ValueError(f"residue {r} not reduced modulo {self.period}")
        for e in self.exceptional:
            if len(e) != self.rank or any(v < 0 for v in e):
                raise ValueError(f"bad exceptional member {e}")
            if leq(self.preperiod, e):
                raise ValueError(f"exceptional member {e} dominates the preperiod")

    def __contains__(self, t: Elem) -> bool:
        t = tuple(t)
        if t in self.exceptional:
            return True
        if not leq(self.preperiod, t):
            return False
        r = tuple((ti - pi) % qi for ti, pi, qi in zip(t, self.preperiod, self.period))
        return r in self.residues

    def members_in_box(self, hi: Elem) -> set[Elem]:
        """Members t with 0 <= t <= hi componentwise (windowed view)."""
        return {t for t in closed_box(hi) if t in self}

    def equivalent(self, other: "ResidueClassSet") -> bool:
        """Denotational equality, decided on a sufficient finite window.

        Both sets are eventually periodic on the grid, so agreement on the
        box bounded by the joint preperiod plus one common period (pushed
        past every exceptional member) implies agreement everywhere.
        """
        if self.rank != other.rank:
            return False
        exc = self.exceptional | other.exceptional
        hi = []
        for i in range(self.rank):
            p = max(self.preperiod[i], other.preperiod[i])
            q = math.lcm(self.period[i], other.period[i])
            e = max((v[i] for v in exc), default=0)
            hi.append(max(p, e + 1) + 2 * q)
        return all((t in self) == (t in other) for t in closed_box(tuple(hi)))


@dataclass(frozen=True)
class SyndeticVerdict:
    syndetic: bool
    compact: frozenset[Elem] | None


def is_syndetic(a: ResidueClassSet) -> SyndeticVerdict:
    """Decide syndeticity and produce a corresponding compact.

    A residue-class set is syndetic exactly when it contains a full
    residue class:  translating the closed box [0, preperiod + period]
    always lands on a class member, while a set without residues has all
    members below the preperiod corner in some coordinate, so far-out
    translates of any finite set miss it entirely.
    """
    if not a.residues:
        return SyndeticVerdict(False, None)
    corner = add(a.preperiod, a.period)
    return SyndeticVerdict(True, frozenset(closed_box(corner)))


def certify_syndetic_window(
    a: ResidueClassSet, compact: Iterable[Elem], window: Elem
) -> bool:
    """Check (t + K) ∩ A != ∅ for every t in the closed box [0, window]."""
    k = [tuple(u) for u in compact]
    return all(any(add(t, u) in a for u in k) for t in closed_box(window))


def submonoid_closure_contains(
    generators: Iterable[Elem], t: Elem, bound: int
) -> bool:
    """Is t a sum of at most ``bound`` generators (with repetition)?

    Breadth-first over partial sums, pruning anything exceeding t in some
    coordinate (generators are non-negative, so sums only grow).
    """
    if bound < 0:
        raise ValueError("bound must be >= 0")
    t = tuple(t)
    gens = [tuple(g) for g in generators]
    frontier = {zero(len(t))}
    seen = set(frontier)
    for _ in range(bound):
        if t in seen:
            return True
        nxt = set()
        for s in frontier:
            for g in gens:
                v = add(s, g)
                if leq(v, t) and v not in seen:
                    nxt.add(v)
        seen |= nxt
        frontier = nxt
        if not frontier:
            break
    return t in seen
