"""System dispatch plus the on-disk system spec document.

A system spec is a JSON object with a ``kind`` field:

* ``finite``:            ``n``, ``metric`` ("discrete" or a row-major list),
                         ``generators`` (list of map arrays)
* ``sft``:               ``vertices``, ``edges`` (list of pairs)
* ``map1d``:             ``family``, ``params``
* ``commuting_circle``:  ``a``, ``b``

These field names are a stable contract shared by the CLI and the corpus
writer.  Metric entries may be ints, floats, or exact "p/q" strings.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Union

from .finite import FiniteSemiflow
from .monoid import Elem, ResidueClassSet
from .numeric import NumericCascade, commuting_mult
from .sft import EventuallyPeriodicPoint, SftSystem

System = Union[FiniteSemiflow, SftSystem, NumericCascade]
Point = Union[int, float, EventuallyPeriodicPoint]


class SpecError(ValueError):
    """A system spec document failed to parse or validate."""


def act(system: System, t: Elem, x: Point) -> Point:
    return system.act(t, x)


def distance(system: System, x: Point, y: Point):
    return system.distance(x, y)


@dataclass(frozen=True)
class OrbitResult:
    points: frozenset
    complete: bool


def orbit(
    system: System,
    x: Point,
    compact=None,
    depth: int | None = None,
) -> OrbitResult:
    """Either the exact K.x form (for periodic x with certificate K) or a
    bounded forward enumeration; the latter is complete only when the
    space guarantees it."""
    if compact is not None:
        pts = frozenset(system.act(tuple(k), x) for k in compact)
        return OrbitResult(pts, True)
    if isinstance(system, FiniteSemiflow):
        return OrbitResult(system.reach(x), True)
    if isinstance(system, SftSystem):
        return OrbitResult(system.shift_orbit(x), True)
    if depth is None:
        raise ValueError("numeric orbits need a depth cap")
    pts = set()
    cur = x
    for _ in range(depth):
        pts.add(cur)
        cur = system.act((1,) * system.rank, cur)
    return OrbitResult(frozenset(pts), False)


def fixer(system: System, x: Point) -> ResidueClassSet:
    if isinstance(system, (FiniteSemiflow, SftSystem)):
        return system.fixer(x)
    raise ValueError("exact fixers are only computable on finite and shift systems")


def is_periodic(system: System, x: Point) -> bool:
    return bool(fixer(system, x).residues)


# -- spec documents --------------------------------------------------------


def _metric_entry_out(v: Fraction):
    if v.denominator == 1:
        return int(v)
    return f"{v.numerator}/{v.denominator}"


def system_to_dict(system: System) -> dict:
    if isinstance(system, FiniteSemiflow):
        if system.metric is None:
            metric = "discrete"
        else:
            metric = [_metric_entry_out(v) for row in system.metric for v in row]
        return {
            "kind": "finite",
            "n": system.n,
            "metric": metric,
            "generators": [list(g) for g in system.generators],
        }
    if isinstance(system, SftSystem):
        return {
            "kind": "sft",
            "vertices": system.vertices,
            "edges": sorted([a, b] for a, b in system.edges),
        }
    if isinstance(system, NumericCascade):
        if system.family == "commuting_mult":
            a, b = system.params
            return {"kind": "commuting_circle", "a": int(a), "b": int(b)}
        return {
            "kind": "map1d",
            "family": system.family,
            "params": list(system.params),
        }
    raise ValueError(f"cannot serialize {system!r}")


def _require(d: dict, field: str):
    if field not in d:
        raise SpecError(f"missing field '{field}'")
    return d[field]


def system_from_dict(d: dict, name: str | None = None) -> System:
    if not isinstance(d, dict):
        raise SpecError("spec document must be a JSON object")
    kind = _require(d, "kind")
    try:
        if kind == "finite":
            n = int(_require(d, "n"))
            metric = _require(d, "metric")
            gens = _require(d, "generators")
            if metric != "discrete":
                if not isinstance(metric, list):
                    raise SpecError("field 'metric' must be 'discrete' or a row-major list")
                if len(metric) == n and all(isinstance(r, list) for r in metric):
                    rows = metric
                elif len(metric) == n * n:
                    rows = [metric[i * n : (i + 1) * n] for i in range(n)]
                else:
                    raise SpecError("field 'metric' has wrong length")
                metric = rows
            return FiniteSemiflow(n, gens, metric, name=name)
        if kind == "sft":
            vertices = int(_require(d, "vertices"))
            edges = [(int(a), int(b)) for a, b in _require(d, "edges")]
            return SftSystem(vertices, edges, name=name)
        if kind == "map1d":
            family = _require(d, "family")
            params = tuple(float(p) for p in _require(d, "params"))
            return NumericCascade(family, params, name=name)
        if kind == "commuting_circle":
            return commuting_mult(int(_require(d, "a")), int(_require(d, "b")))
    except SpecError:
        raise
    except (ValueError, TypeError) as exc:
        raise SpecError(f"invalid '{kind}' spec: {exc}") from exc
    raise SpecError(f"unknown kind {kind!r}")


def save_system(system: System, path: str | Path) -> None:
    path = Path(path)
    text = json.dumps(system_to_dict(system), sort_keys=True, indent=2) + "\n"
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    tmp.replace(path)


def load_system(path: str | Path) -> System:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return system_from_dict(doc, name=path.stem)


def file_digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
