"""Classic numerical cascades on the interval and the circle.

Families: doubling (2x mod 1), tent, logistic, circle rotation, and a
rank-2 action by two commuting integer multiplications mod 1.  Evaluation
is double precision; verdicts downstream compare with tolerance 1e-9.
The doubling and integer-slope tent maps also support exact rational
iteration, which the evidence probes use because repeated float doubling
sheds one mantissa bit per step and collapses onto the dyadics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

_FAMILIES = {
    # family: (space, rank, n_params)
    "doubling": ("circle", 1, 0),
    "tent": ("interval", 1, 1),
    "logistic": ("interval", 1, 1),
    "rotation": ("circle", 1, 1),
    "commuting_mult": ("circle", 2, 2),
}


@dataclass(frozen=True)
class NumericCascade:
    family: str
    params: tuple[float, ...] = ()
    name: str | None = None

    def __post_init__(self) -> None:
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        space, rank, nparams = _FAMILIES[self.family]
        if len(self.params) != nparams:
            raise ValueError(f"{self.family} takes {nparams} parameter(s)")
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))

    @property
    def space(self) -> str:
        return _FAMILIES[self.family][0]

    @property
    def rank(self) -> int:
        return _FAMILIES[self.family][1]

    def step(self, i: int, x: float) -> float:
        """One application of generator i."""
        if self.family == "doubling":
            return (2.0 * x) % 1.0
        if self.family == "tent":
            s = self.params[0]
            return s * (x if x <= 0.5 else 1.0 - x)
        if self.family == "logistic":
            r = self.params[0]
            return r * x * (1.0 - x)
        if self.family == "rotation":
            return (x + self.params[0]) % 1.0
        if self.family == "commuting_mult":
            a = self.params[i]
            return (a * x) % 1.0
        raise AssertionError(self.family)

    def act(self, t: tuple[int, ...], x: float) -> float:
        if len(t) != self.rank:
            raise ValueError(f"time {t} has wrong rank (expected {self.rank})")
        if self.family == "rotation":
            # one-shot form keeps rotations isometric to within a few ulps
            return (x + t[0] * self.params[0]) % 1.0
        for i, ti in enumerate(t):
            if ti < 0:
                raise ValueError("times must be non-negative")
            for _ in range(ti):
                x = self.step(i, x)
        return x

    def distance(self, x: float, y: float) -> float:
        if self.space == "circle":
            e = abs(x - y) % 1.0
            return min(e, 1.0 - e)
        return abs(x - y)

    # -- exact rational iteration (where the family allows it) --------------

    def supports_exact_orbit(self) -> bool:
        if self.family == "doubling":
            return True
        if self.family == "tent":
            return float(self.params[0]).is_integer()
        return False

    def exact_step(self, x: Fraction) -> Fraction:
        if self.family == "doubling":
            return (2 * x) % 1
        if self.family == "tent":
            s = int(self.params[0])
            return s * (x if x <= Fraction(1, 2) else 1 - x)
        raise ValueError(f"{self.family} has no exact rational iteration")

    def __repr__(self) -> str:
        tag = self.name or self.family
        ps = ",".join(f"{p:g}" for p in self.params)
        return f"NumericCascade({tag}{'(' + ps + ')' if ps else ''})"


def doubling() -> NumericCascade:
    return NumericCascade("doubling", (), name="doubling")


def tent(s: float = 2.0) -> NumericCascade:
    return NumericCascade("tent", (s,), name=f"tent-{s:g}")


def logistic(r: float = 4.0) -> NumericCascade:
    return NumericCascade("logistic", (r,), name=f"logistic-{r:g}")


def rotation(alpha: float) -> NumericCascade:
    return NumericCascade("rotation", (alpha,), name=f"rotation-{alpha:g}")


def commuting_mult(a: int = 2, b: int = 3) -> NumericCascade:
    return NumericCascade("commuting_mult", (float(a), float(b)), name=f"mult-{a}-{b}")


def lipschitz_bound(system: NumericCascade) -> float:
    """Per-step expansion bound, used to pick equicontinuity deltas."""
    if system.family == "doubling":
        return 2.0
    if system.family == "tent":
        return abs(system.params[0])
    if system.family == "logistic":
        return abs(system.params[0])
    if system.family == "rotation":
        return 1.0
    if system.family == "commuting_mult":
        return max(abs(p) for p in system.params)
    raise AssertionError(system.family)
