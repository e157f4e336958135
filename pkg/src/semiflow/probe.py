"""Representation-agnostic property checkers producing witnessed verdicts.

Exact on finite systems (exhaustive neighborhoods, eventually periodic
time boxes) and on shift systems (forced-walk analysis); evidence-grade
on numerical cascades, where verdicts are sampled and horizon-bounded and
are labeled as non-proofs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .finite import FiniteSemiflow
from .numeric import NumericCascade
from .sft import SftSystem
from . import sft_decide
from .verdicts import Status, Verdict, WitnessRecord

DEFAULT_EPS_LADDER: tuple[float, ...] = tuple(2.0**-m for m in range(1, 11))
DEFAULT_HORIZON = 64
DEFAULT_T0_HORIZON = 16
NUMERIC_TOL = 1e-9


@dataclass(frozen=True)
class SampleSpec:
    """Sampling budget: how many base points, which seed, which epsilons.

    Finite systems ignore ``points`` and use every point of the space.
    """

    points: int = 64
    seed: int = 2024
    eps_ladder: tuple[float, ...] = DEFAULT_EPS_LADDER


def default_horizon(system) -> int:
    if isinstance(system, SftSystem):
        return 8 + system.vertices
    return DEFAULT_HORIZON


def sample_points(system, spec: SampleSpec) -> list:
    if isinstance(system, FiniteSemiflow):
        return list(system.points())
    if isinstance(system, SftSystem):
        rng = random.Random(spec.seed)
        return [system.random_point(rng, extra=4) for _ in range(spec.points)]
    if isinstance(system, NumericCascade):
        n = spec.points
        return [(i + 0.5) / n for i in range(n)]
    raise ValueError(f"cannot sample {system!r}")


def _budget(samples: SampleSpec, horizon, **extra) -> dict:
    b = {
        "points": samples.points,
        "seed": samples.seed,
        "eps_ladder": [float(e) for e in samples.eps_ladder],
        "horizon": horizon,
        "tolerance": NUMERIC_TOL,
    }
    b.update(extra)
    return b


def revalidate_witness(system, w: WitnessRecord):
    """Recompute the recorded separation from the raw witness data."""
    base = system.act(w.t0, w.x) if w.t0 is not None else w.x
    return system.distance(system.act(w.t, base), system.act(w.t, w.y))


@lru_cache(maxsize=256)
def _min_divergence_index(eps) -> int:
    """Smallest i with 2^-i < eps: a neighbor in B(x, eps) may first
    differ from x at index i or later."""
    e = Fraction(eps) if not isinstance(eps, Fraction) else eps
    if e <= 0:
        raise ValueError("epsilon must be positive")
    i = 0
    while Fraction(1, 2**i) >= e:
        i += 1
    return i


# -- sensitivity -------------------------------------------------------------


def sensitivity_report(
    system, c, samples: SampleSpec | None = None, horizon: int | None = None
) -> Verdict:
    """Search for the sensitivity quantifier at constant c.

    Holds needs a separated pair in every sampled neighborhood at every
    ladder epsilon; Fails needs one neighborhood where no pair can ever
    separate (finite systems: exhaustive over the periodicity box; shift
    systems: a walk that never meets a branching vertex has a singleton
    cylinder).
    """
    if c <= 0:
        raise ValueError("sensitivity constant must be positive")
    samples = samples or SampleSpec()
    horizon = horizon if horizon is not None else default_horizon(system)
    if isinstance(system, FiniteSemiflow):
        return _finite_sensitivity(system, c, samples, horizon, t0_horizon=None)
    if isinstance(system, SftSystem):
        return _sft_sensitivity(system, c, samples, horizon, t0_horizon=None)
    return _numeric_sensitivity(system, c, samples, horizon, t0_horizon=None)


def eventual_sensitivity_report(
    system,
    c,
    samples: SampleSpec | None = None,
    horizon: int | None = None,
    t0_horizon: int | None = None,
) -> Verdict:
    """Same search with an extra scan over starting shifts t0; a plain
    sensitivity witness is reused with t0 = 0."""
    if c <= 0:
        raise ValueError("sensitivity constant must be positive")
    samples = samples or SampleSpec()
    horizon = horizon if horizon is not None else default_horizon(system)
    t0_horizon = t0_horizon if t0_horizon is not None else DEFAULT_T0_HORIZON
    if isinstance(system, FiniteSemiflow):
        return _finite_sensitivity(system, c, samples, horizon, t0_horizon)
    if isinstance(system, SftSystem):
        return _sft_sensitivity(system, c, samples, horizon, t0_horizon)
    return _numeric_sensitivity(system, c, samples, horizon, t0_horizon)


def _finite_sensitivity(
    system: FiniteSemiflow, c, samples: SampleSpec, horizon, t0_horizon
) -> Verdict:
    """Exact on finite systems.  Below the minimum positive distance every
    ball is a singleton, so the search always terminates in a refutation."""
    c = Fraction(c)
    eventual = t0_horizon is not None
    ladder = [Fraction(e) for e in samples.eps_ladder]
    eps_star = system.min_positive_distance() / 2
    if eps_star not in ladder:
        ladder.append(eps_star)
    budget = _budget(samples, horizon, constant=float(c), mode="exact")
    zero_t = (0,) * system.rank
    witnesses = []
    for x in system.points():
        for eps in ladder:
            best = (Fraction(-1), x, zero_t)
            for y in system.points():
                if system.distance(x, y) >= eps:
                    continue
                sep, t = system.pair_separation_sup(x, y)
                if sep > best[0]:
                    best = (sep, y, t)
            sep, y, t = best
            if sep >= c:
                witnesses.append(WitnessRecord(x, eps, y, t, sep, t0=zero_t if eventual else None))
            else:
                # exhaustive over the neighborhood and the whole time grid
                w = WitnessRecord(x, eps, y, t, sep, t0=zero_t if eventual else None)
                return Verdict(
                    Status.FAILS,
                    (w,),
                    budget,
                    exact=True,
                    note="no neighbor separates; supremum taken over the exact periodicity box",
                )
    return Verdict(Status.HOLDS, tuple(witnesses), budget, exact=True)


def _sft_sensitivity(
    system: SftSystem, c, samples: SampleSpec, horizon, t0_horizon
) -> Verdict:
    c = Fraction(c)
    eventual = t0_horizon is not None
    budget = _budget(
        samples, horizon, constant=float(c), t0_horizon=t0_horizon, mode="forced-walk"
    )
    pts = sample_points(system, samples)
    if c > 1:
        x = pts[0]
        w = WitnessRecord(x, samples.eps_ladder[0], x, (0,), Fraction(0), t0=(0,) if eventual else None)
        return Verdict(
            Status.FAILS, (w,), budget, exact=True, note="constant exceeds the metric diameter 1"
        )
    witnesses = []
    short_budget = False
    for x in pts:
        for eps in samples.eps_ladder:
            m = _min_divergence_index(eps)
            if sft_decide.first_branch_at_or_after(system, x, max(m - 1, 0)) is None:
                # no branching vertex ever again: the ball around x (and
                # around every shift of x) is the singleton, so no pair
                # can separate at any time whatsoever
                refuted = WitnessRecord(
                    x, eps, x, (0,), Fraction(0), t0=(0,) if eventual else None
                )
                return Verdict(
                    Status.FAILS,
                    (refuted,),
                    budget,
                    exact=True,
                    note="walk never meets a branching vertex; its cylinder is a singleton",
                )
            t0_range = (
                range(min(t0_horizon + 1, len(x.preperiod) + len(x.cycle)))
                if eventual
                else range(1)
            )
            got = None
            for t0 in t0_range:
                base = x.shift(t0) if t0 else x
                j = sft_decide.first_branch_at_or_after(system, base, max(m - 1, 0))
                if j is None:
                    continue
                i = j + 1
                t = min(i, horizon)
                sep = Fraction(1, 2 ** (i - t))
                if sep < c:
                    continue
                y = sft_decide.split_at(system, base, j)
                got = WitnessRecord(x, eps, y, (t,), sep, t0=(t0,) if eventual else None)
                break
            if got is not None:
                witnesses.append(got)
            else:
                short_budget = True
    if short_budget:
        return Verdict(Status.INCONCLUSIVE, (), budget, note="horizon too small for the ladder")
    return Verdict(Status.HOLDS, tuple(witnesses), budget)


def _numeric_offsets(system: NumericCascade, x: float, eps: float, rng) -> list[float]:
    cands = []
    for f in (0.5, -0.5, 0.25, -0.25, 0.125):
        cands.append(x + eps * f)
    for _ in range(4):
        cands.append(x + eps * (rng.random() * 2.0 - 1.0))
    out = []
    for y in cands:
        if system.space == "circle":
            y %= 1.0
        else:
            y = min(max(y, 0.0), 1.0)
        if system.distance(x, y) < eps and y != x:
            out.append(y)
    return out


def _numeric_track(system: NumericCascade, x: float, y: float, horizon: int):
    """(max separation, attaining time, min separation) up to the horizon."""
    d0 = system.distance(x, y)
    best = (d0, (0,) * system.rank)
    low = d0
    if system.rank == 1:
        xt, yt = x, y
        for t in range(1, horizon + 1):
            xt, yt = system.step(0, xt), system.step(0, yt)
            d = system.distance(xt, yt)
            if d > best[0]:
                best = (d, (t,))
            low = min(low, d)
        return best[0], best[1], low
    # rank 2: bounded box per axis; 24 steps of any expanding factor
    # already amplify far past every ladder delta
    h = min(horizon, 24)
    x1, y1 = x, y
    for t1 in range(h + 1):
        xt, yt = x1, y1
        for t2 in range(h + 1):
            d = system.distance(xt, yt)
            if d > best[0]:
                best = (d, (t1, t2))
            low = min(low, d)
            xt, yt = system.step(1, xt), system.step(1, yt)
        x1, y1 = system.step(0, x1), system.step(0, y1)
    return best[0], best[1], low


def _numeric_sensitivity(
    system: NumericCascade, c, samples: SampleSpec, horizon, t0_horizon
) -> Verdict:
    c = float(c)
    eventual = t0_horizon is not None
    budget = _budget(
        samples,
        horizon,
        constant=c,
        t0_horizon=t0_horizon,
        mode="evidence",
    )
    note = "sampled evidence, not a proof"
    rng = random.Random(samples.seed)
    witnesses = []
    refuted: WitnessRecord | None = None
    inconclusive = False
    for x in sample_points(system, samples):
        for eps in samples.eps_ladder:
            got = None
            flat = True
            best_rec = None
            t0s = range(t0_horizon + 1) if eventual else (0,)
            for t0 in t0s:
                base = system.act((t0,) * system.rank, x) if t0 else x
                for y in _numeric_offsets(system, base, eps, rng):
                    d0 = system.distance(base, y)
                    sep, t, low = _numeric_track(system, base, y, horizon)
                    # only a separation pinned to its initial value (an
                    # isometry signature) counts as failure evidence
                    if sep - d0 > NUMERIC_TOL or d0 - low > NUMERIC_TOL:
                        flat = False
                    if best_rec is None or sep > best_rec.separation:
                        best_rec = WitnessRecord(
                            x, eps, y, t, sep, t0=(t0,) * system.rank if eventual else None
                        )
                    if sep >= c - NUMERIC_TOL:
                        got = WitnessRecord(
                            x, eps, y, t, sep, t0=(t0,) * system.rank if eventual else None
                        )
                        break
                if got:
                    break
            if got is not None:
                witnesses.append(got)
            elif flat and best_rec is not None:
                # separations stayed exactly at their initial size
                refuted = best_rec
            else:
                inconclusive = True
    if refuted is not None:
        return Verdict(
            Status.FAILS, (refuted,), budget, note="no amplification observed; " + note
        )
    if inconclusive:
        return Verdict(Status.INCONCLUSIVE, (), budget, note="budget exhausted mid-growth")
    return Verdict(Status.HOLDS, tuple(witnesses), budget, note=note)


# -- equicontinuity ----------------------------------------------------------


@dataclass(frozen=True)
class EquicontinuityReport:
    equicontinuous: bool | None
    delta: object = None
    violation: WitnessRecord | None = None
    exact: bool = False
    budget: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "equicontinuous": self.equicontinuous,
            "delta": None if self.delta is None else (
                str(self.delta) if isinstance(self.delta, Fraction) else self.delta
            ),
            "violation": self.violation.to_dict() if self.violation else None,
            "exact": self.exact,
            "budget": self.budget,
        }


def _sft_cycle_through(system: SftSystem, v: int) -> list[int]:
    """A shortest cycle through v, as the vertex word starting at v."""
    if v in system.succ[v]:
        return [v]
    parent: dict[int, int] = {}
    frontier = []
    for w in system.succ[v]:
        if w not in parent:
            parent[w] = -1  # first layer: direct successor of v
            frontier.append(w)
    while frontier and v not in parent:
        nxt = []
        for w in frontier:
            for u in system.succ[w]:
                if u not in parent:
                    parent[u] = w
                    nxt.append(u)
        frontier = nxt
    if v not in parent:
        raise ValueError(f"vertex {v} lies on no cycle")
    path = []
    cur = parent[v]
    while cur != -1:
        path.append(cur)
        cur = parent[cur]
    path.append(v)
    path.reverse()
    return path


def equicontinuity_report(
    system,
    mode: str = "uniform",
    x=None,
    eps: float = 0.1,
    horizon: int | None = None,
) -> EquicontinuityReport:
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if mode not in ("uniform", "at_point"):
        raise ValueError("mode must be 'uniform' or 'at_point'")
    if mode == "at_point" and x is None:
        raise ValueError("at_point mode needs the point")
    horizon = horizon if horizon is not None else default_horizon(system)
    budget = {"eps": float(eps), "horizon": horizon, "mode": mode}

    if isinstance(system, FiniteSemiflow):
        delta = system.min_positive_distance() / 2
        return EquicontinuityReport(True, delta, exact=True, budget=budget)

    if isinstance(system, SftSystem):
        return _sft_equicontinuity(system, mode, x, Fraction(eps), horizon, budget)

    return _numeric_equicontinuity(system, mode, x, float(eps), horizon, budget)


def _sft_equicontinuity(system, mode, x, eps, horizon, budget) -> EquicontinuityReport:
    ana = sft_decide.analyze(system)
    if eps > 1:
        # beyond the diameter nothing can ever separate that far
        return EquicontinuityReport(True, Fraction(1), exact=True, budget=budget)
    if mode == "at_point":
        if not (set(x.cycle) & ana.branching):
            # finitely many branch positions: past the last one the walk
            # is forced, so close neighbors coincide with x outright
            jmax = max(
                (j for j in range(len(x.preperiod)) if x.preperiod[j] in ana.branching),
                default=-1,
            )
            delta = Fraction(1, 2 ** (jmax + 2))
            return EquicontinuityReport(True, delta, exact=True, budget=budget)
        # branches recur along the cycle: split off a neighbor at the
        # latest branch position the horizon can still separate
        j = max(
            (j for j in range(horizon) if x.coordinate(j) in ana.branching),
            default=None,
        )
        if j is None:
            return EquicontinuityReport(None, budget=budget)
        y = sft_decide.split_at(system, x, j)
        sep = system.distance(system.act((j + 1,), x), system.act((j + 1,), y))
        w = WitnessRecord(x, float(eps), y, (j + 1,), sep)
        return EquicontinuityReport(False, None, w, exact=True, budget=budget)

    if not sft_decide.is_infinite_exact(system):
        pts = system.enumerate_points()
        if pts is None or len(pts) < 2:
            return EquicontinuityReport(True, Fraction(1, 2), exact=True, budget=budget)
        dmin = min(
            system.distance(a, b) for a in pts for b in pts if a != b
        )
        return EquicontinuityReport(True, dmin / 2, exact=True, budget=budget)

    # infinite shift: loop a branching cycle long, then split
    b = min(ana.branching & ana.cycle_vertices)
    cyc = _sft_cycle_through(system, b)
    x0 = system.point((), cyc)
    loops = max(1, (horizon - 2) // len(cyc))
    j = loops * len(cyc)  # x0 sits on the branching vertex here
    if j + 1 > horizon:
        j = 0
    y = sft_decide.split_at(system, x0, j)
    sep = system.distance(system.act((j + 1,), x0), system.act((j + 1,), y))
    w = WitnessRecord(x0, float(eps), y, (j + 1,), sep)
    return EquicontinuityReport(False, None, w, exact=True, budget=budget)


def _numeric_equicontinuity(system, mode, x, eps, horizon, budget) -> EquicontinuityReport:
    bases = [x] if mode == "at_point" else [(i + 0.5) / 16 for i in range(16)]
    violation = None
    for j in range(0, 21):
        delta = eps * 2.0**-j
        ok = True
        for b in bases:
            y = b + delta / 2
            if system.space == "circle":
                y %= 1.0
            else:
                y = min(y, 1.0)
            sep, t, _low = _numeric_track(system, b, y, horizon)
            if sep >= eps:
                violation = WitnessRecord(b, delta, y, t, sep)
                ok = False
                break
        if ok:
            return EquicontinuityReport(True, delta, exact=False, budget=budget)
    return EquicontinuityReport(False, None, violation, exact=False, budget=budget)


# -- Good-Macias cover sensitivity -------------------------------------------


@dataclass(frozen=True)
class CoverMember:
    kind: str  # "ball" | "cylinder"
    center: object = None
    radius: object = None
    word: tuple[int, ...] = ()

    def contains(self, system, point) -> bool:
        if self.kind == "ball":
            return system.distance(self.center, point) < self.radius
        w = self.word
        return point.coordinates(len(w)) == w


@dataclass(frozen=True)
class Cover:
    members: tuple[CoverMember, ...]


def unit_cylinder_cover(system: SftSystem) -> Cover:
    return Cover(tuple(CoverMember("cylinder", word=(v,)) for v in sorted(system.alive)))


def ball_cover(centers_radii: Iterable[tuple[object, object]]) -> Cover:
    return Cover(tuple(CoverMember("ball", center=c, radius=r) for c, r in centers_radii))


def cover_is_valid(system, cover: Cover) -> bool:
    """Do the members cover the phase space?  Exhaustive for finite
    systems, prefix-completeness for cylinder covers, interval sweep for
    numeric ball covers."""
    if not cover.members:
        return False
    if isinstance(system, FiniteSemiflow):
        return all(
            any(m.contains(system, x) for m in cover.members) for x in system.points()
        )
    if isinstance(system, SftSystem):
        if any(m.kind != "cylinder" or not m.word for m in cover.members):
            return False
        max_len = max(len(m.word) for m in cover.members)
        words = {m.word for m in cover.members}

        def uncovered(prefix: tuple[int, ...]) -> bool:
            if any(prefix[: len(w)] == w for w in words if len(w) <= len(prefix)):
                return False
            if len(prefix) == max_len:
                return True
            return any(uncovered(prefix + (b,)) for b in system.succ[prefix[-1]])

        return not any(uncovered((v,)) for v in system.alive)
    # numeric: open interval sweep with a hair of tolerance
    iv = []
    for m in cover.members:
        if m.kind != "ball":
            return False
        lo, hi = m.center - m.radius, m.center + m.radius
        iv.append((lo, hi))
        if system.space == "circle":
            iv.append((lo - 1.0, hi - 1.0))
            iv.append((lo + 1.0, hi + 1.0))
    iv.sort()
    covered = 0.0
    for lo, hi in iv:
        if lo > covered + 1e-12:
            return False
        covered = max(covered, hi)
        if covered >= 1.0 - 1e-12:
            return True
    return covered >= 1.0 - 1e-12


def _no_common_member(system, cover: Cover, a, b) -> bool:
    return not any(
        m.contains(system, a) and m.contains(system, b) for m in cover.members
    )


def gms_sensitivity_report(
    system, cover: Cover, samples: SampleSpec | None = None, horizon: int | None = None
) -> Verdict:
    """Cover-based sensitivity: near every point there must be a neighbor
    and a time at which no single cover member holds both images."""
    if not cover_is_valid(system, cover):
        raise ValueError("cover does not cover the phase space")
    samples = samples or SampleSpec()
    if horizon is None:
        # full separation needs the divergence time itself, which can sit
        # one ladder depth plus a forced chain past the agreement prefix
        horizon = 12 + system.vertices if isinstance(system, SftSystem) else DEFAULT_HORIZON
    budget = _budget(samples, horizon, cover_size=len(cover.members))

    if isinstance(system, FiniteSemiflow):
        # the singleton neighborhood forces y = x, and t.x always shares a
        # cover member with itself
        x = 0
        w = WitnessRecord(x, float(system.min_positive_distance() / 2), x, (0,) * system.rank, Fraction(0))
        return Verdict(
            Status.FAILS,
            (w,),
            budget,
            exact=True,
            note="singleton neighborhoods keep both images in one member",
        )

    if isinstance(system, SftSystem):
        witnesses = []
        short = False
        for x in sample_points(system, samples):
            for eps in samples.eps_ladder:
                m = _min_divergence_index(eps)
                j = sft_decide.first_branch_at_or_after(system, x, max(m - 1, 0))
                if j is None:
                    w = WitnessRecord(x, eps, x, (0,), Fraction(0))
                    return Verdict(
                        Status.FAILS,
                        (w,),
                        budget,
                        exact=True,
                        note="isolated walk: every neighborhood is the singleton",
                    )
                t = j + 1
                if t > horizon:
                    short = True
                    continue
                y = sft_decide.split_at(system, x, j)
                xt, yt = system.act((t,), x), system.act((t,), y)
                if _no_common_member(system, cover, xt, yt):
                    witnesses.append(
                        WitnessRecord(x, eps, y, (t,), system.distance(xt, yt))
                    )
                else:
                    short = True
        if short:
            return Verdict(Status.INCONCLUSIVE, (), budget, note="budget too small")
        return Verdict(Status.HOLDS, tuple(witnesses), budget)

    # numeric
    rng = random.Random(samples.seed)
    witnesses = []
    short = False
    for x in sample_points(system, samples):
        for eps in samples.eps_ladder:
            got = None
            for y in _numeric_offsets(system, x, eps, rng):
                xt, yt = x, y
                for t in range(horizon + 1):
                    if _no_common_member(system, cover, xt, yt):
                        got = WitnessRecord(x, eps, y, (t,) * system.rank, system.distance(xt, yt))
                        break
                    if system.rank == 1:
                        xt, yt = system.step(0, xt), system.step(0, yt)
                    else:
                        xt = system.act((1,) * system.rank, xt)
                        yt = system.act((1,) * system.rank, yt)
                if got:
                    break
            if got is None:
                short = True
            else:
                witnesses.append(got)
    if short:
        return Verdict(Status.INCONCLUSIVE, (), budget, note="no separating time found in budget")
    return Verdict(Status.HOLDS, tuple(witnesses), budget, note="sampled evidence, not a proof")


# -- numeric evidence probes ---------------------------------------------------


TRANSITIVITY_SEED = Fraction(40961, 1000003)


def transitivity_evidence(
    system: NumericCascade, grid: int = 256, horizon: int = 65536
) -> Verdict:
    """Single-orbit density check at the grid resolution.

    Doubling and integer tent maps are iterated in exact rational
    arithmetic (float iteration of those maps collapses onto dyadics);
    other families use floats with a 1e-9 revisit test that flags finite
    orbits as evidence of a forward-invariant gap.
    """
    if grid < 2:
        raise ValueError("grid must be >= 2")
    budget = {"grid": grid, "horizon": horizon, "seed": str(TRANSITIVITY_SEED)}
    bins = [False] * grid
    filled = 0

    if system.rank == 2:
        h = max(2, math.isqrt(horizon))
        x0 = 0.239017
        xi = x0
        for _ in range(h):
            xt = xi
            for _ in range(h):
                b = min(int(xt * grid), grid - 1)
                if not bins[b]:
                    bins[b] = True
                    filled += 1
                xt = system.step(1, xt)
            xi = system.step(0, xi)
        w = WitnessRecord(x0, 1.0 / grid, xi, (h, h), filled / grid)
        if filled == grid:
            return Verdict(Status.HOLDS, (w,), budget, note="orbit grid fills every bin (evidence)")
        return Verdict(Status.INCONCLUSIVE, (), budget, note=f"{filled}/{grid} bins")

    exact = system.supports_exact_orbit()
    x = TRANSITIVITY_SEED if exact else (math.sqrt(2.0) - 1.0)
    start = x
    revisit_at = None
    steps = 0
    seen_exact: set[Fraction] = set()
    for t in range(horizon):
        xf = float(x)
        b = min(int(xf * grid), grid - 1)
        if not bins[b]:
            bins[b] = True
            filled += 1
        if filled == grid:
            steps = t + 1
            break
        if exact:
            if x in seen_exact:
                revisit_at = t
                break
            seen_exact.add(x)
            x = system.exact_step(x)
        else:
            x = system.step(0, x)
            if system.distance(float(x), float(start)) < NUMERIC_TOL and t > 0:
                revisit_at = t
                break
        steps = t + 1
    coverage = filled / grid
    w = WitnessRecord(float(start), 1.0 / grid, float(x), (steps,), coverage)
    if filled == grid:
        return Verdict(Status.HOLDS, (w,), budget, note="orbit fills every bin (evidence)")
    if revisit_at is not None:
        return Verdict(
            Status.FAILS,
            (w,),
            budget,
            note=f"orbit closed after {revisit_at} steps leaving {grid - filled} empty bins",
        )
    return Verdict(Status.INCONCLUSIVE, (), budget, note=f"{filled}/{grid} bins filled")


def _displacement(system: NumericCascade, u: float, n: int) -> float:
    v = u
    for _ in range(n):
        v = system.step(0, v)
    if system.space == "circle":
        return ((v - u + 0.5) % 1.0) - 0.5
    return v - u


def _root_in_window(system, lo: float, hi: float, n: int) -> float | None:
    """Sign-change bisection for the n-step displacement on [lo, hi]."""
    steps = max(64, 2 ** min(n + 2, 12))
    width = hi - lo
    prev_u = lo
    prev_g = _displacement(system, lo, n)
    for i in range(1, steps + 1):
        u = lo + width * i / steps
        g = _displacement(system, u, n)
        if prev_g == 0.0:
            return prev_u
        # reject wrap jumps on the circle
        if prev_g * g < 0 and abs(prev_g - g) < 0.45:
            a, b, ga = prev_u, u, prev_g
            for _ in range(80):
                mid = 0.5 * (a + b)
                gm = _displacement(system, mid, n)
                if gm == 0.0:
                    return mid
                if ga * gm < 0:
                    b = mid
                else:
                    a, ga = mid, gm
            root = 0.5 * (a + b)
            if abs(_displacement(system, root, n)) < NUMERIC_TOL:
                return root
        prev_u, prev_g = u, g
    return None


def periodic_density_evidence(
    system: NumericCascade, eps: float, period_bound: int
) -> Verdict:
    """Look for a periodic point in every eps-ball on a grid of centers."""
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if system.rank != 1:
        raise ValueError("periodic density probe handles rank-1 cascades")
    budget = {"eps": eps, "period_bound": period_bound, "bisection_tol": 1e-12}
    centers = [k * eps for k in range(int(1.0 / eps) + 1)]
    witnesses = []
    missing = []
    for cpt in centers:
        lo, hi = cpt - eps, cpt + eps
        if system.space == "interval":
            lo, hi = max(lo, 0.0), min(hi, 1.0)
        found = None
        for n in range(1, period_bound + 1):
            root = _root_in_window(system, lo, hi, n)
            if root is not None:
                found = WitnessRecord(
                    cpt, eps, root, (n,), abs(_displacement(system, root, n))
                )
                break
        if found is not None:
            witnesses.append(found)
        else:
            missing.append(cpt)
    if not missing:
        return Verdict(
            Status.HOLDS, tuple(witnesses), budget, note="roots found in every ball (evidence)"
        )
    if not witnesses:
        # double the period budget before conceding failure evidence
        for cpt in centers:
            lo, hi = cpt - eps, cpt + eps
            if system.space == "interval":
                lo, hi = max(lo, 0.0), min(hi, 1.0)
            for n in range(period_bound + 1, 2 * period_bound + 1):
                if _root_in_window(system, lo, hi, n) is not None:
                    return Verdict(Status.INCONCLUSIVE, (), budget, note="roots only beyond budget")
        w = WitnessRecord(centers[0], eps, centers[0], (period_bound,), 0.0)
        return Verdict(
            Status.FAILS,
            (w,),
            budget,
            note="no fixed point of any iterate up to twice the budget anywhere",
        )
    return Verdict(
        Status.INCONCLUSIVE, (), budget, note=f"{len(missing)} balls without roots"
    )
