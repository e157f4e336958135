"""Command-line entry point.

Commands: ``analyze`` one system spec, ``theorem-check`` a whole corpus,
``witness`` a single property search, ``corpus`` generation.  Exit codes
are a stable contract: 0 consistent/holds, 1 counterexample/fails,
2 invalid input, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__, corpus as corpus_mod, probe, sft_decide, theorems
from .sft import SftSystem
from .systems import SpecError, file_digest, load_system, system_to_dict
from .verdicts import CheckStatus, Status

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_FAILS = 1
EXIT_INVALID = 2
EXIT_INCONCLUSIVE = 3


def _write_report(report: dict, path: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"
    if path is None:
        sys.stdout.write(text)
        return
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    tmp = p.with_suffix(p.suffix + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    tmp.replace(p)


def _sample_spec(args) -> probe.SampleSpec:
    return probe.SampleSpec(points=args.samples, seed=args.seed)


def _add_budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=int, default=32, help="sample points per check")
    p.add_argument("--seed", type=int, default=2024, help="sampling seed")
    p.add_argument("--horizon", type=int, default=None, help="time horizon")
    p.add_argument("--t0-horizon", type=int, default=16, help="start-shift horizon")
    p.add_argument(
        "--allow-evidence",
        action="store_true",
        help="let sampled evidence feed the consistency checks (advisory only)",
    )


def cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    try:
        system = load_system(args.system)
    except SpecError as exc:
        print(f"invalid system spec: {exc}", file=sys.stderr)
        return EXIT_INVALID
    samples = _sample_spec(args)
    profile = theorems.classify(system, samples)
    main = theorems.check_main_theorem(profile, allow_evidence=args.allow_evidence)
    dichotomy = theorems.check_dichotomy(profile, allow_evidence=args.allow_evidence)
    devaney = theorems.is_devaney_chaotic(profile, allow_evidence=args.allow_evidence)
    report = {
        "tool": "semiflow",
        "version": __version__,
        "input": {"path": str(args.system), "sha256": file_digest(args.system)},
        "system": system_to_dict(system),
        "profile": profile.to_dict(),
        "checks": {
            "main_theorem": main.to_dict(),
            "dichotomy": dichotomy.to_dict(),
            "devaney": devaney,
        },
        "budgets": {"samples": samples.points, "seed": samples.seed},
        "timings_ms": {"total": round(1000 * (time.perf_counter() - t0), 3)},
    }
    _write_report(report, args.report)
    if main.status is CheckStatus.COUNTEREXAMPLE or dichotomy.status is CheckStatus.COUNTEREXAMPLE:
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def _load_corpus(args) -> list[tuple[str, object]]:
    if args.corpus is not None:
        d = Path(args.corpus)
        if not d.is_dir():
            raise SpecError(f"corpus directory {d} does not exist")
        files = sorted(p for p in d.glob("*.json") if p.name != "manifest.json")
        return [(p.stem, load_system(p)) for p in files]
    if args.exhaustive is not None:
        return [(s.name, s) for s in corpus_mod.exhaustive_sft(args.exhaustive)]
    if args.catalog:
        return corpus_mod.catalog()
    if args.random_sft is not None:
        spec = corpus_mod.CorpusSpec(
            "random_sft",
            seed=args.gen_seed,
            count=args.random_sft,
            vertices=args.vertices,
            edge_prob=args.edge_prob,
        )
        return corpus_mod.generate(spec)
    raise SpecError("no corpus source given (use --corpus/--exhaustive/--catalog/--random-sft)")


def cmd_theorem_check(args) -> int:
    t0 = time.perf_counter()
    try:
        systems = _load_corpus(args)
    except (SpecError, ValueError) as exc:
        print(f"invalid corpus: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if not systems:
        print("empty corpus", file=sys.stderr)
        return EXIT_INVALID
    samples = _sample_spec(args)
    counts = {"consistent": 0, "not_applicable": 0, "counterexample": 0}
    counterexamples = []
    orbit_checks = {"run": 0, "ok": 0, "failures": []}
    for name, system in systems:
        profile = theorems.classify(system, samples)
        for verdict in (
            theorems.check_main_theorem(profile, allow_evidence=args.allow_evidence),
            theorems.check_dichotomy(profile, allow_evidence=args.allow_evidence),
        ):
            if verdict.status is CheckStatus.COUNTEREXAMPLE:
                counts["counterexample"] += 1
                counterexamples.append(
                    {
                        "system": name,
                        "spec": system_to_dict(system),
                        "verdict": verdict.to_dict(),
                    }
                )
            else:
                counts[verdict.status.value] += 1
        if isinstance(system, SftSystem) and profile.devaney:
            pair = sft_decide.two_disjoint_periodic_orbits(system, args.period_bound)
            if pair is not None:
                orbit_checks["run"] += 1
                result = theorems.sensitivity_constant_from_orbits(
                    system, pair[0], pair[1], samples=samples, horizon=args.horizon
                )
                if result.ok:
                    orbit_checks["ok"] += 1
                else:
                    orbit_checks["failures"].append(
                        {"system": name, "spec": system_to_dict(system), "c": str(result.c)}
                    )
    report = {
        "tool": "semiflow",
        "version": __version__,
        "systems": len(systems),
        "checks": counts,
        "counterexamples": counterexamples,
        "orbit_constant_checks": {
            "run": orbit_checks["run"],
            "ok": orbit_checks["ok"],
            "failures": orbit_checks["failures"],
        },
        "budgets": {"samples": samples.points, "seed": samples.seed, "period_bound": args.period_bound},
        "timings_ms": {"total": round(1000 * (time.perf_counter() - t0), 3)},
    }
    _write_report(report, args.report)
    bad = counts["counterexample"] + len(orbit_checks["failures"])
    print(
        f"checked {len(systems)} systems: {counts['consistent']} consistent, "
        f"{counts['not_applicable']} n/a, {bad} failures",
        file=sys.stderr,
    )
    return EXIT_COUNTEREXAMPLE if bad else EXIT_OK


def cmd_witness(args) -> int:
    try:
        system = load_system(args.system)
    except SpecError as exc:
        print(f"invalid system spec: {exc}", file=sys.stderr)
        return EXIT_INVALID
    samples = _sample_spec(args)
    prop = args.property.upper()
    try:
        if prop == "S":
            verdict = probe.sensitivity_report(
                system, args.constant, samples=samples, horizon=args.horizon
            )
        elif prop == "ES":
            verdict = probe.eventual_sensitivity_report(
                system,
                args.constant,
                samples=samples,
                horizon=args.horizon,
                t0_horizon=args.t0_horizon,
            )
        elif prop == "GMS":
            if isinstance(system, SftSystem):
                cover = probe.unit_cylinder_cover(system)
            else:
                cover = probe.ball_cover([(k / 8 + 1 / 16, 1 / 8) for k in range(8)])
            verdict = probe.gms_sensitivity_report(
                system, cover, samples=samples, horizon=args.horizon
            )
        elif prop == "EQ":
            eq = probe.equicontinuity_report(
                system, "uniform", eps=args.eps, horizon=args.horizon
            )
            report = {
                "tool": "semiflow",
                "version": __version__,
                "property": "EQ",
                "input": {"path": str(args.system), "sha256": file_digest(args.system)},
                "result": eq.to_dict(),
            }
            _write_report(report, args.report)
            if eq.equicontinuous is True:
                return EXIT_OK
            if eq.equicontinuous is False:
                return EXIT_FAILS
            return EXIT_INCONCLUSIVE
        else:
            print(f"unknown property {args.property!r}", file=sys.stderr)
            return EXIT_INVALID
    except ValueError as exc:
        print(f"invalid request: {exc}", file=sys.stderr)
        return EXIT_INVALID
    report = {
        "tool": "semiflow",
        "version": __version__,
        "property": prop,
        "constant": args.constant,
        "input": {"path": str(args.system), "sha256": file_digest(args.system)},
        "verdict": verdict.to_dict(),
    }
    _write_report(report, args.report)
    if verdict.status is Status.HOLDS:
        return EXIT_OK
    if verdict.status is Status.FAILS:
        return EXIT_FAILS
    return EXIT_INCONCLUSIVE


def cmd_corpus(args) -> int:
    spec = corpus_mod.CorpusSpec(
        generator=args.generator,
        seed=args.gen_seed,
        count=args.count,
        vertices=args.vertices,
        edge_prob=args.edge_prob,
        n=args.n,
        k=args.k,
    )
    try:
        paths = corpus_mod.write_corpus(spec, args.out)
    except (ValueError, corpus_mod.GenerationFailedError) as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(f"wrote {len(paths)} system specs to {args.out}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semiflow",
        description="analyze semiflows, fuzz their chaos properties, and emit reports",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify one system and run the consistency checks")
    p.add_argument("--system", required=True, help="system spec file")
    p.add_argument("--report", default=None, help="report path (stdout when omitted)")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("theorem-check", help="run the consistency checks across a corpus")
    p.add_argument("--corpus", default=None, help="directory of system spec files")
    p.add_argument("--exhaustive", type=int, default=None, help="all shifts on <= N vertices")
    p.add_argument("--catalog", action="store_true", help="use the built-in catalog")
    p.add_argument("--random-sft", type=int, default=None, help="count of random shifts")
    p.add_argument("--vertices", type=int, default=6)
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--gen-seed", type=int, default=7)
    p.add_argument("--period-bound", type=int, default=8)
    p.add_argument("--report", default=None)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_theorem_check)

    p = sub.add_parser("witness", help="search witnesses for one property")
    p.add_argument("--system", required=True)
    p.add_argument("--property", required=True, help="S, ES, GMS, or EQ")
    p.add_argument("--constant", type=float, default=0.25, help="separation constant")
    p.add_argument("--eps", type=float, default=0.1, help="epsilon for EQ mode")
    p.add_argument("--report", default=None)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("corpus", help="write a deterministic corpus of system specs")
    p.add_argument("--generator", required=True,
                   choices=["random_sft", "random_finite", "exhaustive_sft", "catalog"])
    p.add_argument("--out", required=True)
    p.add_argument("--count", type=int, default=16)
    p.add_argument("--vertices", type=int, default=4)
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--gen-seed", type=int, default=7)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, which matches the invalid-input code
        return int(exc.code or 0)
    return args.func(args)


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
