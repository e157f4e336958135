"""Cross-checks between deciders and the logical structure they must obey:
equivalence of the three chaos definitions, the equicontinuity-or-eventual-
sensitivity dichotomy under transitivity and dense periodicity, the orbit
structure of periodic points, and the constant extracted from a pair of
disjoint periodic orbits.

A counterexample from any of these checks means a decider is wrong (or a
theorem is), so the harness embeds the full profile for postmortems and
the corpus runner treats it as a build failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import probe, sft_decide
from .finite import FiniteSemiflow
from .monoid import is_syndetic
from .numeric import NumericCascade
from .sft import SftSystem
from .systems import System, orbit
from .verdicts import (
    CheckStatus,
    ConsistencyVerdict,
    PropertyProfile,
    PropertyValue,
    Status,
    Verdict,
    WitnessRecord,
    evidence_value,
    exact_value,
)


class NotPeriodicError(ValueError):
    """The operation needs a periodic point (a syndetic fixer)."""


class OrbitOverlapError(ValueError):
    """The two given periodic points share an orbit."""


# -- classification ----------------------------------------------------------


def classify(system: System, samples: probe.SampleSpec | None = None) -> PropertyProfile:
    if isinstance(system, SftSystem):
        return _classify_sft(system)
    if isinstance(system, FiniteSemiflow):
        return _classify_finite(system)
    return _classify_numeric(system, samples or probe.SampleSpec())


def _classify_sft(s: SftSystem) -> PropertyProfile:
    tt = sft_decide.is_transitive_exact(s)
    dpp = sft_decide.has_dense_periodic_points_exact(s)
    minimal = sft_decide.is_minimal_exact(s)
    sens = sft_decide.is_sensitive_exact(s)
    es = sft_decide.is_eventually_sensitive_exact(s)
    ueq = sft_decide.is_ueq_exact(s)
    infinite = sft_decide.is_infinite_exact(s)
    constants = {}
    if sens.sensitive:
        constants["sensitivity"] = sens.constant
        constants["eventual_sensitivity"] = sens.constant
    src = "sft-graph-decider"
    return PropertyProfile(
        tt=exact_value(tt, src),
        dpp=exact_value(dpp, src),
        minimal=exact_value(minimal, src),
        sensitive=exact_value(sens.sensitive, src),
        eventually_sensitive=exact_value(es, src),
        ueq=exact_value(ueq, src),
        infinite=exact_value(infinite, src),
        devaney=tt and dpp and not minimal,
        constants=constants,
    )


def _classify_finite(s: FiniteSemiflow) -> PropertyProfile:
    src = "finite-exhaustive"
    full = frozenset(s.points())
    tt = all(s.reach(x) == full for x in s.points())
    dpp = all(s.is_periodic(x) for x in s.points())
    minimal = tt  # on a finite space both say: every orbit is everything
    return PropertyProfile(
        tt=exact_value(tt, src),
        dpp=exact_value(dpp, src),
        minimal=exact_value(minimal, src),
        sensitive=exact_value(False, src + " (balls shrink below the minimum distance)"),
        eventually_sensitive=exact_value(False, src),
        ueq=exact_value(True, src),
        infinite=exact_value(False, src),
        devaney=tt and dpp and not minimal,
    )


def _classify_numeric(s: NumericCascade, samples: probe.SampleSpec) -> PropertyProfile:
    src = "numeric-evidence"
    tt_v = probe.transitivity_evidence(s, grid=128, horizon=20000) if s.rank == 1 else probe.transitivity_evidence(s)
    dpp_v = probe.periodic_density_evidence(s, eps=1 / 16, period_bound=8) if s.rank == 1 else Verdict(Status.INCONCLUSIVE, (), {}, note="rank-2 density probe not implemented")
    sens_v = probe.sensitivity_report(s, c=1 / 4, samples=samples)
    eq = probe.equicontinuity_report(s, "uniform", eps=1 / 8)
    if eq.equicontinuous is None:
        ueq = PropertyValue(None, False, src)
    else:
        ueq = PropertyValue(eq.equicontinuous, eq.exact, src)
    if sens_v.status is Status.HOLDS:
        es = PropertyValue(True, False, src + " (sensitive implies eventually sensitive)")
    else:
        es_v = probe.eventual_sensitivity_report(s, c=1 / 4, samples=samples)
        es = evidence_value(es_v, src)
    if dpp_v.status is Status.HOLDS:
        # a periodic orbit is finite, so it cannot be dense in a continuum
        minimal = PropertyValue(False, False, src + " (periodic points rule out minimality)")
    else:
        minimal = PropertyValue(None, False, src + " (minimality not probed)")
    return PropertyProfile(
        tt=evidence_value(tt_v, src),
        dpp=evidence_value(dpp_v, src),
        minimal=minimal,
        sensitive=evidence_value(sens_v, src),
        eventually_sensitive=es,
        ueq=ueq,
        infinite=exact_value(True, "phase space is a continuum"),
        devaney=None,
    )


# -- theorem checks ----------------------------------------------------------


def _exact_bools(profile: PropertyProfile, names: Sequence[str], allow_evidence: bool):
    vals = {}
    for name in names:
        pv: PropertyValue = getattr(profile, name)
        if pv.value is None or (not pv.exact and not allow_evidence):
            return None
        vals[name] = pv.value
    return vals


def check_main_theorem(
    profile: PropertyProfile, allow_evidence: bool = False
) -> ConsistencyVerdict:
    """The three definitions of chaos must agree: transitive + dense
    periodic points, combined with any of non-minimality, sensitivity, or
    eventual sensitivity, name the same class."""
    need = ["tt", "dpp", "minimal", "sensitive", "eventually_sensitive"]
    vals = _exact_bools(profile, need, allow_evidence)
    if vals is None:
        return ConsistencyVerdict(
            "main_theorem",
            CheckStatus.NOT_APPLICABLE,
            "needs exact tt/dpp/min/sensitive/eventually_sensitive verdicts",
        )
    base = vals["tt"] and vals["dpp"]
    a = base and not vals["minimal"]
    b = base and vals["sensitive"]
    c = base and vals["eventually_sensitive"]
    conj = {"nmin_form": a, "sensitive_form": b, "eventually_sensitive_form": c}
    if a == b == c:
        return ConsistencyVerdict("main_theorem", CheckStatus.CONSISTENT, conjunctions=conj)
    return ConsistencyVerdict(
        "main_theorem",
        CheckStatus.COUNTEREXAMPLE,
        detail=(
            "the three equivalent chaos definitions disagree; deciders involved: "
            + ", ".join(
                f"{n}={getattr(profile, n).source}" for n in need
            )
        ),
        conjunctions=conj,
        profile=profile,
    )


def check_dichotomy(
    profile: PropertyProfile, allow_evidence: bool = False
) -> ConsistencyVerdict:
    """Under transitivity and dense periodic points, exactly one of
    uniform equicontinuity and eventual sensitivity must hold."""
    need = ["tt", "dpp", "ueq", "eventually_sensitive"]
    vals = _exact_bools(profile, need, allow_evidence)
    if vals is None:
        return ConsistencyVerdict(
            "dichotomy",
            CheckStatus.NOT_APPLICABLE,
            "needs exact tt/dpp/ueq/eventually_sensitive verdicts",
        )
    if not (vals["tt"] and vals["dpp"]):
        return ConsistencyVerdict(
            "dichotomy", CheckStatus.NOT_APPLICABLE, "hypothesis tt and dpp fails"
        )
    conj = {"ueq": vals["ueq"], "eventually_sensitive": vals["eventually_sensitive"]}
    if vals["ueq"] != vals["eventually_sensitive"]:
        return ConsistencyVerdict("dichotomy", CheckStatus.CONSISTENT, conjunctions=conj)
    return ConsistencyVerdict(
        "dichotomy",
        CheckStatus.COUNTEREXAMPLE,
        detail="expected exactly one of uniform equicontinuity and eventual sensitivity",
        conjunctions=conj,
        profile=profile,
    )


def is_devaney_chaotic(profile: PropertyProfile, allow_evidence: bool = False) -> bool | None:
    vals = _exact_bools(profile, ["tt", "dpp", "minimal"], allow_evidence)
    if vals is None:
        return None
    return vals["tt"] and vals["dpp"] and not vals["minimal"]


# -- the constant from two disjoint periodic orbits ---------------------------


@dataclass(frozen=True)
class OrbitConstantResult:
    c: Fraction
    orbit1: frozenset
    orbit2: frozenset
    claim_check: Verdict
    sensitivity: Verdict | None

    @property
    def ok(self) -> bool:
        return self.claim_check.status is Status.HOLDS and (
            self.sensitivity is None or self.sensitivity.status is Status.HOLDS
        )


def _orbit_of_periodic(system, q) -> frozenset:
    fx = system.fixer(q)
    verdict = is_syndetic(fx)
    if not verdict.syndetic:
        raise NotPeriodicError(f"{q!r} is not periodic")
    return orbit(system, q, compact=verdict.compact).points


def _set_distance(system, o1: frozenset, o2: frozenset):
    return min(system.distance(a, b) for a in o1 for b in o2)


def sensitivity_constant_from_orbits(
    system,
    q1,
    q2,
    samples: probe.SampleSpec | None = None,
    horizon: int | None = None,
    expect_sensitive: bool | None = None,
) -> OrbitConstantResult:
    """Derive a sensitivity constant as one eighth of the distance between
    two disjoint periodic orbits, and verify its supporting claim: every
    point sits at distance at least four times the constant from one of
    the orbits (a triangle-inequality fact, so it must hold exactly).
    """
    samples = samples or probe.SampleSpec(points=100)
    o1 = _orbit_of_periodic(system, q1)
    o2 = _orbit_of_periodic(system, q2)
    if o1 == o2:
        raise OrbitOverlapError("the two periodic points share an orbit")
    if o1 & o2:
        # periodic orbits partition: partial overlap means a decider bug
        raise AssertionError(f"periodic orbits overlap partially: {o1 & o2!r}")
    gap = _set_distance(system, o1, o2)
    c = Fraction(gap) / 8
    pts = probe.sample_points(system, samples)
    budget = {"points": len(pts), "seed": samples.seed, "orbit_gap": str(Fraction(gap))}
    witnesses = []
    for x in pts:
        d1 = min(system.distance(x, a) for a in o1)
        d2 = min(system.distance(x, b) for b in o2)
        far = max(d1, d2)
        if far < 4 * c:
            w = WitnessRecord(x, float(4 * c), x, (0,) * system.rank, far)
            claim = Verdict(
                Status.FAILS,
                (w,),
                budget,
                exact=True,
                note="a point is closer than four times the constant to both orbits",
            )
            return OrbitConstantResult(c, o1, o2, claim, None)
        witnesses.append(WitnessRecord(x, float(4 * c), x, (0,) * system.rank, far))
    claim = Verdict(Status.HOLDS, tuple(witnesses), budget, exact=True)
    sens = None
    if expect_sensitive is None:
        expect_sensitive = (
            sft_decide.is_sensitive_exact(system).sensitive
            if isinstance(system, SftSystem)
            else False
        )
    if expect_sensitive and c > 0:
        sens = probe.sensitivity_report(system, c, samples=samples, horizon=horizon)
    return OrbitConstantResult(c, o1, o2, claim, sens)


# -- orbit structure of a periodic point --------------------------------------


@dataclass(frozen=True)
class StructureReport:
    checks: dict
    orbit: frozenset
    compact: frozenset

    @property
    def ok(self) -> bool:
        return all(v is not False for v in self.checks.values())

    def to_dict(self) -> dict:
        return {"checks": dict(self.checks), "orbit_size": len(self.orbit)}


def verify_orbit_structure(
    system, x, period_bound: int = 8
) -> StructureReport:
    """Exercise the periodic-orbit facts on one point: orbit equality along
    the orbit, the orbit partition against other periodic points, fixer
    constancy, the compact-certificate form of the orbit, and, when the
    orbit is the whole space, minimality plus uniform equicontinuity.
    """
    fx = system.fixer(x)
    verdict = is_syndetic(fx)
    if not verdict.syndetic:
        raise NotPeriodicError(f"{x!r} has a non-syndetic fixer")
    compact = verdict.compact
    orb = orbit(system, x, compact=compact).points
    checks: dict[str, bool | None] = {}

    full_orbits = {y: orbit(system, y).points for y in orb}
    checks["orbit_constant_along_orbit"] = all(o == orb for o in full_orbits.values())

    others = _enumerate_periodic_points(system, period_bound)
    ok_b = True
    for p in others:
        po = orbit(system, p).points
        if po != orb and (po & orb):
            ok_b = False
            break
    checks["orbit_partition"] = ok_b

    checks["fixer_constant_along_orbit"] = all(
        system.fixer(y).equivalent(fx) for y in orb
    )

    checks["orbit_is_compact_certificate_image"] = (
        frozenset(system.act(tuple(k), x) for k in compact) == orb
    )

    whole = _whole_space(system)
    if whole is not None and whole == orb:
        checks["minimal_when_space_is_orbit"] = _is_minimal(system)
        checks["ueq_when_space_is_orbit"] = _is_ueq(system)
    else:
        checks["minimal_when_space_is_orbit"] = None
        checks["ueq_when_space_is_orbit"] = None
    return StructureReport(checks, orb, compact)


def _enumerate_periodic_points(system, period_bound: int):
    if isinstance(system, FiniteSemiflow):
        return [x for x in system.points() if system.is_periodic(x)]
    if isinstance(system, SftSystem):
        return sorted(
            sft_decide.periodic_points_up_to(system, period_bound),
            key=lambda p: (len(p.cycle), p.cycle),
        )
    raise ValueError("periodic point enumeration needs a finite or shift system")


def _whole_space(system):
    if isinstance(system, FiniteSemiflow):
        return frozenset(system.points())
    if isinstance(system, SftSystem):
        return system.enumerate_points(max_count=10000)
    return None


def _is_minimal(system) -> bool:
    if isinstance(system, FiniteSemiflow):
        full = frozenset(system.points())
        return all(system.reach(x) == full for x in system.points())
    return sft_decide.is_minimal_exact(system)


def _is_ueq(system) -> bool:
    if isinstance(system, FiniteSemiflow):
        return True
    return sft_decide.is_ueq_exact(system)


# -- relative compactness acting equicontinuously ------------------------------


def check_compact_equicontinuity(
    system, compact: Iterable, eps, samples: probe.SampleSpec | None = None
) -> Verdict:
    """A finite time set acts (uniformly) equicontinuously: exhibit a delta
    below which no pair separates past eps under any time in the set."""
    samples = samples or probe.SampleSpec()
    times = [t if isinstance(t, tuple) else (t,) for t in compact]
    if not times:
        raise ValueError("compact time set must be nonempty")
    budget = {"eps": float(eps), "compact_size": len(times), "seed": samples.seed}

    if isinstance(system, FiniteSemiflow):
        delta = system.min_positive_distance()
        w = WitnessRecord(0, float(delta), 0, times[0], Fraction(0))
        return Verdict(
            Status.HOLDS,
            (w,),
            {**budget, "delta": str(delta)},
            exact=True,
            note="pairs closer than the minimum distance coincide",
        )

    if isinstance(system, SftSystem):
        eps = Fraction(eps)
        m = max(t[0] for t in times)
        delta = eps * Fraction(1, 2**m)
        rng = random.Random(samples.seed)
        depth = probe._min_divergence_index(delta)
        witnesses = []
        for _ in range(min(samples.points, 32)):
            xx = system.random_point(rng)
            j = sft_decide.first_branch_at_or_after(system, xx, depth - 1)
            yy = sft_decide.split_at(system, xx, j) if j is not None else xx
            worst = Fraction(0)
            worst_t = times[0]
            for t in times:
                d = system.distance(system.act(t, xx), system.act(t, yy))
                if d > worst:
                    worst, worst_t = d, t
            if system.distance(xx, yy) < delta and worst >= eps:
                w = WitnessRecord(xx, float(delta), yy, worst_t, worst)
                return Verdict(Status.FAILS, (w,), {**budget, "delta": str(delta)}, exact=True)
            witnesses.append(WitnessRecord(xx, float(delta), yy, worst_t, worst))
        return Verdict(
            Status.HOLDS,
            tuple(witnesses),
            {**budget, "delta": str(delta)},
            exact=True,
            note="a shift by at most m multiplies distances by at most 2^m",
        )

    # numeric: Lipschitz-scaled delta, verified on sampled pairs
    from .numeric import lipschitz_bound

    maxk = max(max(t) for t in times)
    lip = lipschitz_bound(system)
    delta = float(eps) / (lip**maxk) if lip > 1 else float(eps)
    witnesses = []
    for x in probe.sample_points(system, samples)[:32]:
        y = x + delta / 2
        y = y % 1.0 if system.space == "circle" else min(y, 1.0)
        worst = 0.0
        worst_t = times[0]
        for t in times:
            d = system.distance(system.act(t, x), system.act(t, y))
            if d > worst:
                worst, worst_t = d, t
        if worst >= float(eps):
            w = WitnessRecord(x, delta, y, worst_t, worst)
            return Verdict(Status.FAILS, (w,), {**budget, "delta": delta})
        witnesses.append(WitnessRecord(x, delta, y, worst_t, worst))
    return Verdict(
        Status.HOLDS,
        tuple(witnesses),
        {**budget, "delta": delta},
        note="sampled evidence with a Lipschitz-scaled delta",
    )


# -- cover-sensitivity exploration over a corpus -------------------------------


@dataclass(frozen=True)
class ProbeRow:
    system_id: str
    devaney: bool | None
    gms: str

    def to_dict(self) -> dict:
        return {"system": self.system_id, "devaney": self.devaney, "gms": self.gms}


@dataclass(frozen=True)
class ProbeReport:
    rows: tuple[ProbeRow, ...]
    devaney_count: int
    gms_holds: int
    candidates: tuple[str, ...]  # chaotic systems where the cover check did not hold

    def to_dict(self) -> dict:
        return {
            "rows": [r.to_dict() for r in self.rows],
            "devaney_count": self.devaney_count,
            "gms_holds": self.gms_holds,
            "candidate_counterexamples": list(self.candidates),
        }


def gms_probe(
    corpus: Sequence[tuple[str, SftSystem]] | Sequence[SftSystem],
    samples: probe.SampleSpec | None = None,
    horizon: int | None = None,
) -> ProbeReport:
    """Run the cover-based sensitivity check on every chaotic shift in the
    corpus, under the one-letter cylinder cover.

    This gathers empirical rows only; a chaotic system failing the check
    would be a noteworthy candidate for closer inspection, and the report
    surfaces it rather than judging it.
    """
    if not corpus:
        raise ValueError("corpus must be nonempty")
    samples = samples or probe.SampleSpec(points=8)
    rows = []
    candidates = []
    devaney_count = holds = 0
    for i, entry in enumerate(corpus):
        name, system = entry if isinstance(entry, tuple) else (f"sft-{i}", entry)
        profile = classify(system)
        dev = is_devaney_chaotic(profile)
        if not dev:
            rows.append(ProbeRow(name, dev, "skipped"))
            continue
        devaney_count += 1
        verdict = probe.gms_sensitivity_report(
            system, probe.unit_cylinder_cover(system), samples=samples, horizon=horizon
        )
        rows.append(ProbeRow(name, dev, verdict.status.value))
        if verdict.status is Status.HOLDS:
            holds += 1
        else:
            candidates.append(name)
    return ProbeReport(tuple(rows), devaney_count, holds, tuple(candidates))
