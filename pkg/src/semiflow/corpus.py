"""Deterministic generators of test systems plus a catalog of named
classics.  Identical parameters and seed reproduce byte-identical corpora:
the PRNG is the stdlib Mersenne Twister, and every derived stream seeds a
fresh ``random.Random(base * 1_000_003 + index)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict
from fractions import Fraction
from pathlib import Path
from random import Random
from typing import Iterator

from .finite import FiniteSemiflow
from .numeric import commuting_mult, doubling, logistic, rotation, tent
from .sft import SftSystem
from .systems import System, save_system

GENERATOR_VERSION = "1"
SEED_STRIDE = 1_000_003


class GenerationFailedError(RuntimeError):
    """The retry budget ran out without producing a valid system."""


def _derived_rng(seed: int, index: int) -> Random:
    return Random(seed * SEED_STRIDE + index)


def random_sft(vertices: int, edge_prob: float, seed: int, retries: int = 64) -> SftSystem:
    """Each possible edge (loops included) appears independently with the
    given probability; regenerates with a stepped seed if trimming empties
    the graph."""
    if not 1 <= vertices <= 16:
        raise ValueError("vertices must be within 1..16")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge probability must be within [0, 1]")
    for attempt in range(retries):
        rng = _derived_rng(seed, attempt)
        edges = [
            (i, j)
            for i in range(vertices)
            for j in range(vertices)
            if rng.random() < edge_prob
        ]
        try:
            return SftSystem(vertices, edges, name=f"random-sft-{vertices}v-s{seed}")
        except ValueError:
            continue
    raise GenerationFailedError(
        f"no nonempty shift after {retries} attempts (v={vertices}, p={edge_prob})"
    )


def exhaustive_sft(vertices: int, allow_large: bool = False) -> Iterator[SftSystem]:
    """Every edge subset whose trim is nonempty, in mask order."""
    limit = 4 if allow_large else 3
    if not 1 <= vertices <= limit:
        raise ValueError(f"exhaustive enumeration supports up to {limit} vertices")
    pairs = [(i, j) for i in range(vertices) for j in range(vertices)]
    for mask in range(1 << len(pairs)):
        edges = [pairs[b] for b in range(len(pairs)) if mask >> b & 1]
        try:
            yield SftSystem(vertices, edges, name=f"sft-{vertices}v-m{mask}")
        except ValueError:
            continue


def _commutes(f: tuple[int, ...], g: tuple[int, ...]) -> bool:
    return all(f[g[x]] == g[f[x]] for x in range(len(f)))


def random_finite(
    n: int, k: int, seed: int, metric: str = "discrete", commutant_tries: int = 200
) -> FiniteSemiflow:
    """Random self-maps; a second generator is drawn from the commutant of
    the first by rejection, falling back to a power of it (always
    commutes).  The optional non-discrete metric places the points on a
    rational grid and uses taxicab distances, keeping every axiom exact.
    """
    if not 1 <= n <= 32:
        raise ValueError("n must be within 1..32")
    if k not in (1, 2):
        raise ValueError("rank must be 1 or 2")
    rng = _derived_rng(seed, 0)
    f = tuple(rng.randrange(n) for _ in range(n))
    gens = [f]
    if k == 2:
        g = None
        for _ in range(commutant_tries):
            cand = tuple(rng.randrange(n) for _ in range(n))
            if _commutes(f, cand):
                g = cand
                break
        if g is None:
            j = rng.randrange(n + 1)
            g = tuple(range(n))
            for _ in range(j):
                g = tuple(f[v] for v in g)
        gens.append(g)
    metric_arg: str | list | None = "discrete"
    if metric == "grid-l1":
        cells = rng.sample(range(64 * 64), n)
        pts = [(Fraction(c % 64, 64), Fraction(c // 64, 64)) for c in cells]
        metric_arg = [
            [abs(a[0] - b[0]) + abs(a[1] - b[1]) for b in pts] for a in pts
        ]
    elif metric != "discrete":
        raise ValueError("metric must be 'discrete' or 'grid-l1'")
    return FiniteSemiflow(n, gens, metric_arg, name=f"random-finite-{n}n{k}k-s{seed}")


GOLDEN_FRACTION = (math.sqrt(5.0) - 1.0) / 2.0


def catalog() -> list[tuple[str, System]]:
    """The named classics used throughout the tests and reports."""
    full2 = SftSystem(2, [(0, 0), (0, 1), (1, 0), (1, 1)], name="full-2-shift")
    golden = SftSystem(2, [(0, 0), (0, 1), (1, 0)], name="golden-mean-shift")
    out: list[tuple[str, System]] = [
        ("full-2-shift", full2),
        ("golden-mean-shift", golden),
        ("cycle-1", SftSystem(1, [(0, 0)], name="cycle-1")),
        ("cycle-2", SftSystem(2, [(0, 1), (1, 0)], name="cycle-2")),
        ("cycle-3", SftSystem(3, [(0, 1), (1, 2), (2, 0)], name="cycle-3")),
        ("two-loops", SftSystem(2, [(0, 0), (1, 1)], name="two-loops")),
        ("path-loop", SftSystem(2, [(0, 1), (1, 1)], name="path-loop")),
        ("doubling", doubling()),
        ("tent-2", tent(2.0)),
        ("logistic-4", logistic(4.0)),
        ("rotation-golden", rotation(GOLDEN_FRACTION)),
        ("rotation-1-3", rotation(1.0 / 3.0)),
        ("commuting-mult-2-3", commuting_mult(2, 3)),
    ]
    return out


@dataclass(frozen=True)
class CorpusSpec:
    generator: str  # random_sft | random_finite | exhaustive_sft | catalog
    seed: int = 0
    count: int = 0
    vertices: int = 4
    edge_prob: float = 0.5
    n: int = 6
    k: int = 1

    def to_dict(self) -> dict:
        return asdict(self)


def generate(spec: CorpusSpec) -> list[tuple[str, System]]:
    if spec.generator == "catalog":
        return catalog()
    if spec.generator == "exhaustive_sft":
        return [(s.name, s) for s in exhaustive_sft(spec.vertices)]
    if spec.generator == "random_sft":
        out = []
        for i in range(spec.count):
            seed_i = spec.seed + i
            extra = 0
            while True:
                try:
                    s = random_sft(spec.vertices, spec.edge_prob, seed_i + extra * 10**9)
                    break
                except GenerationFailedError:
                    extra += 1
                    if extra > 8:
                        raise
            out.append((f"random-sft-{i:05d}", s))
        return out
    if spec.generator == "random_finite":
        return [
            (f"random-finite-{i:05d}", random_finite(spec.n, spec.k, spec.seed + i))
            for i in range(spec.count)
        ]
    raise ValueError(f"unknown generator {spec.generator!r}")


def mixed_random_sfts(
    count: int, max_vertices: int, seed: int, edge_probs: tuple[float, ...] = (0.2, 0.35, 0.5, 0.8)
) -> list[tuple[str, SftSystem]]:
    """A deterministic stream of random shifts with mixed sizes and
    densities, for fuzzing the deciders and theorem checks."""
    out = []
    for i in range(count):
        vertices = 1 + (i * 2654435761 + seed) % max_vertices
        p = edge_probs[i % len(edge_probs)]
        seed_i = seed + i
        extra = 0
        while True:
            try:
                s = random_sft(vertices, p, seed_i + extra * 10**9)
                break
            except GenerationFailedError:
                extra += 1
        out.append((f"fuzz-sft-{i:05d}", s))
    return out


def write_corpus(spec: CorpusSpec, out_dir: str | Path) -> list[Path]:
    """System spec files plus a manifest; reruns are byte-identical."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    systems = generate(spec)
    paths = []
    for name, system in systems:
        p = out_dir / f"{name}.json"
        save_system(system, p)
        paths.append(p)
    manifest = {
        "spec": spec.to_dict(),
        "count": len(systems),
        "files": [p.name for p in paths],
        "prng": "mt19937 (random.Random); stream seed = seed * 1000003 + attempt",
        "generator_version": GENERATOR_VERSION,
    }
    mp = out_dir / "manifest.json"
    tmp = mp.with_suffix(".json.tmp")
    tmp.write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    tmp.replace(mp)
    return paths
