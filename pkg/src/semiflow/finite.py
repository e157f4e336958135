"""Finite metric semiflows: k commuting self-maps of a finite point set.

All metric and commutation axioms are checked exhaustively at
construction, so downstream property checks can rely on them.  Distances
are exact rationals (or the discrete metric).  The action of t in N0^k is
t.x = f_1^{t_1} ∘ ... ∘ f_k^{t_k} (x); order is irrelevant because the
generators commute.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from .monoid import Elem, ResidueClassSet, half_open_box, leq

Metric = tuple[tuple[Fraction, ...], ...]


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(v).limit_denominator(10**12)
    raise ValueError(f"cannot read metric entry {v!r}")


class FiniteSemiflow:
    """n points, an exact metric, and k >= 1 commuting generator maps."""

    def __init__(
        self,
        n: int,
        generators: Sequence[Sequence[int]],
        metric: str | Sequence[Sequence] | None = "discrete",
        name: str | None = None,
    ):
        if n < 1:
            raise ValueError("need at least one point")
        gens = tuple(tuple(int(v) for v in g) for g in generators)
        if not gens:
            raise ValueError("need at least one generator")
        for g in gens:
            if len(g) != n or any(not 0 <= v < n for v in g):
                raise ValueError(f"generator {g} is not a self-map of 0..{n - 1}")
        for f, g in itertools.combinations(gens, 2):
            for x in range(n):
                if f[g[x]] != g[f[x]]:
                    raise ValueError(
                        f"generators do not commute at point {x}: f(g(x))={f[g[x]]} g(f(x))={g[f[x]]}"
                    )
        self.n = n
        self.generators = gens
        self.rank = len(gens)
        self.name = name
        self._fixer_cache: dict[int, ResidueClassSet] = {}
        if metric is None or metric == "discrete":
            self.metric: Metric | None = None
        else:
            m = tuple(tuple(_as_fraction(v) for v in row) for row in metric)
            if len(m) != n or any(len(row) != n for row in m):
                raise ValueError("metric matrix must be n x n")
            self._check_metric(m)
            self.metric = m

    def _check_metric(self, m: Metric) -> None:
        for x in range(self.n):
            for y in range(self.n):
                if m[x][y] < 0:
                    raise ValueError("metric entries must be non-negative")
                if (m[x][y] == 0) != (x == y):
                    raise ValueError(f"d({x},{y}) must vanish exactly on the diagonal")
                if m[x][y] != m[y][x]:
                    raise ValueError(f"metric not symmetric at ({x},{y})")
        for x in range(self.n):
            for y in range(self.n):
                for z in range(self.n):
                    if m[x][z] > m[x][y] + m[y][z]:
                        raise ValueError(f"triangle inequality fails at ({x},{y},{z})")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteSemiflow)
            and self.n == other.n
            and self.generators == other.generators
            and self.metric == other.metric
        )

    def __hash__(self) -> int:
        return hash((self.n, self.generators, self.metric))

    def __repr__(self) -> str:
        tag = self.name or f"{self.n}pt/k={self.rank}"
        return f"FiniteSemiflow({tag})"

    # -- action ------------------------------------------------------------

    def points(self) -> range:
        return range(self.n)

    def act(self, t: Elem, x: int) -> int:
        if len(t) != self.rank:
            raise ValueError(f"time {t} has wrong rank (expected {self.rank})")
        if not 0 <= x < self.n:
            raise ValueError(f"{x} is not a point of the system")
        for g, ti in zip(self.generators, t):
            if ti < 0:
                raise ValueError("times must be non-negative")
            for _ in range(ti):
                x = g[x]
        return x

    def distance(self, x: int, y: int) -> Fraction:
        if self.metric is None:
            return Fraction(0 if x == y else 1)
        return self.metric[x][y]

    def min_positive_distance(self) -> Fraction:
        if self.metric is None:
            return Fraction(1)
        return min(
            self.metric[x][y]
            for x in range(self.n)
            for y in range(self.n)
            if x != y
        ) if self.n > 1 else Fraction(1)

    def reach(self, x: int) -> frozenset[int]:
        """The orbit {t.x : t in N0^k}, as closure under the generators."""
        seen = {x}
        frontier = [x]
        while frontier:
            cur = frontier.pop()
            for g in self.generators:
                y = g[cur]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    # -- eventual periodicity ------------------------------------------------

    def coordinate_rho(self, x: int, i: int) -> tuple[int, int]:
        """(preperiod, period) of the orbit of x under generator i alone."""
        g = self.generators[i]
        seen: dict[int, int] = {}
        cur, step = x, 0
        while cur not in seen:
            seen[cur] = step
            cur = g[cur]
            step += 1
        first = seen[cur]
        return first, step - first

    def action_table(self, x: int) -> tuple[Elem, Elem, dict[Elem, int]]:
        """(preperiod, period, table) with table[t] = t.x over the box [0, p+q).

        t.x is eventually periodic per coordinate with the parameters of
        the single-generator orbits, because the generators commute.
        """
        rho = [self.coordinate_rho(x, i) for i in range(self.rank)]
        p = tuple(r[0] for r in rho)
        q = tuple(r[1] for r in rho)
        dims = tuple(pi + qi for pi, qi in zip(p, q))
        table: dict[Elem, int] = {}
        for t in half_open_box(dims):
            if all(v == 0 for v in t):
                table[t] = x
                continue
            i = next(j for j, v in enumerate(t) if v > 0)
            prev = t[:i] + (t[i] - 1,) + t[i + 1 :]
            table[t] = self.generators[i][table[prev]]
        return p, q, table

    def fixer(self, x: int) -> ResidueClassSet:
        """Fix(x) read off the fundamental box of the action table.

        Exact for all rank-1 systems and for every periodic point.  For
        non-periodic points of rank >= 2 the returned set captures the
        cone above the preperiod corner plus the fundamental box; members
        confined to lower-dimensional strips outside that region are not
        representable in this set class (syndeticity is unaffected).
        """
        cached = self._fixer_cache.get(x)
        if cached is not None:
            return cached
        p, q, table = self.action_table(x)
        residues = frozenset(
            r for r in half_open_box(q)
            if table[tuple(pi + ri for pi, ri in zip(p, r))] == x
        )
        exceptional = frozenset(
            t for t in table
            if table[t] == x and not leq(p, t)
        )
        out = ResidueClassSet(
            rank=self.rank,
            preperiod=p,
            period=q,
            residues=residues,
            exceptional=exceptional,
        )
        self._fixer_cache[x] = out
        return out

    def is_periodic(self, x: int) -> bool:
        """Syndetic fixer, equivalently some t at or past the preperiod corner fixes x."""
        return bool(self.fixer(x).residues)

    def pair_separation_sup(self, x: int, y: int) -> tuple[Fraction, Elem]:
        """Exact sup over all t of d(t.x, t.y), with an attaining time.

        The pair orbit is eventually periodic with the joint preperiod and
        the lcm of the periods, so the supremum is attained on the joint
        fundamental box.
        """
        p = []
        q = []
        for i in range(self.rank):
            px, qx = self.coordinate_rho(x, i)
            py, qy = self.coordinate_rho(y, i)
            p.append(max(px, py))
            q.append(math.lcm(qx, qy))
        dims = tuple(pi + qi for pi, qi in zip(p, q))
        table: dict[Elem, tuple[int, int]] = {}
        best = Fraction(-1)
        best_t: Elem = (0,) * self.rank
        for t in half_open_box(dims):
            if all(v == 0 for v in t):
                table[t] = (x, y)
            else:
                i = next(j for j, v in enumerate(t) if v > 0)
                prev = t[:i] + (t[i] - 1,) + t[i + 1 :]
                a, b = table[prev]
                table[t] = (self.generators[i][a], self.generators[i][b])
            d = self.distance(*table[t])
            if d > best:
                best, best_t = d, t
        return best, best_t
