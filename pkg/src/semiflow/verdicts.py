"""Shared result types: three-valued verdicts with machine-checkable
witnesses, per-system property profiles, and consistency-check outcomes."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .sft import EventuallyPeriodicPoint


class Status(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


def _jsonable_point(p):
    if isinstance(p, EventuallyPeriodicPoint):
        return {"preperiod": list(p.preperiod), "cycle": list(p.cycle)}
    return p


def _jsonable_scalar(v):
    if isinstance(v, Fraction):
        return str(v)
    return v


@dataclass(frozen=True)
class WitnessRecord:
    """One point of evidence for a quantified property.

    For a Holds verdict the record satisfies the property's inner
    existential (y near x or t0.x, separated by >= the constant at time
    t); for a Fails verdict it records the best pair an exhaustive search
    produced, whose separation stays below the constant.  Either way,
    re-running the action and metric on the recorded data reproduces
    ``separation``.
    """

    x: Any
    epsilon: Any
    y: Any
    t: tuple[int, ...]
    separation: Any
    t0: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        out = {
            "x": _jsonable_point(self.x),
            "epsilon": _jsonable_scalar(self.epsilon),
            "y": _jsonable_point(self.y),
            "t": list(self.t),
            "separation": _jsonable_scalar(self.separation),
        }
        if self.t0 is not None:
            out["t0"] = list(self.t0)
        return out


@dataclass(frozen=True)
class Verdict:
    """Holds/Fails verdicts always carry at least one witness;
    Inconclusive verdicts never do."""

    status: Status
    witnesses: tuple[WitnessRecord, ...] = ()
    budget: dict = field(default_factory=dict)
    exact: bool = False
    note: str = ""

    def __post_init__(self) -> None:
        if self.status is Status.INCONCLUSIVE and self.witnesses:
            raise ValueError("inconclusive verdicts carry no witnesses")
        if self.status is not Status.INCONCLUSIVE and not self.witnesses:
            raise ValueError(f"{self.status.value} verdicts need a witness")

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "exact": self.exact,
            "note": self.note,
            "budget": {k: _jsonable_scalar(v) for k, v in self.budget.items()},
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


@dataclass(frozen=True)
class PropertyValue:
    """A property verdict plus provenance: exact decider or sampled evidence."""

    value: bool | None
    exact: bool
    source: str
    verdict: Verdict | None = None

    def to_dict(self) -> dict:
        return {"value": self.value, "exact": self.exact, "source": self.source}


def exact_value(value: bool, source: str) -> PropertyValue:
    return PropertyValue(value, True, source)


def evidence_value(verdict: Verdict, source: str) -> PropertyValue:
    value: bool | None
    if verdict.status is Status.HOLDS:
        value = True
    elif verdict.status is Status.FAILS:
        value = False
    else:
        value = None
    return PropertyValue(value, verdict.exact, source, verdict)


@dataclass(frozen=True)
class PropertyProfile:
    """Per-system record of the chaos-related properties.

    ``devaney`` is derived: transitive, dense periodic points, and not
    minimal.  It is None when one of those three is not known exactly
    (unless evidence was explicitly allowed by the caller).
    """

    tt: PropertyValue
    dpp: PropertyValue
    minimal: PropertyValue
    sensitive: PropertyValue
    eventually_sensitive: PropertyValue
    ueq: PropertyValue
    infinite: PropertyValue
    devaney: bool | None
    constants: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "tt": self.tt.to_dict(),
            "dpp": self.dpp.to_dict(),
            "min": self.minimal.to_dict(),
            "sensitive": self.sensitive.to_dict(),
            "eventually_sensitive": self.eventually_sensitive.to_dict(),
            "ueq": self.ueq.to_dict(),
            "infinite": self.infinite.to_dict(),
            "devaney": self.devaney,
            "constants": {k: _jsonable_scalar(v) for k, v in self.constants.items()},
        }


class CheckStatus(enum.Enum):
    CONSISTENT = "consistent"
    COUNTEREXAMPLE = "counterexample"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class ConsistencyVerdict:
    check: str
    status: CheckStatus
    detail: str = ""
    conjunctions: dict | None = None
    profile: PropertyProfile | None = None

    @property
    def consistent(self) -> bool:
        return self.status is not CheckStatus.COUNTEREXAMPLE

    def to_dict(self) -> dict:
        out = {
            "check": self.check,
            "status": self.status.value,
            "detail": self.detail,
        }
        if self.conjunctions is not None:
            out["conjunctions"] = self.conjunctions
        if self.profile is not None and self.status is CheckStatus.COUNTEREXAMPLE:
            out["profile"] = self.profile.to_dict()
        return out
