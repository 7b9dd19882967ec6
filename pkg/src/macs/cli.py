"""Command line interface.

Verbs:

``run``
    One seeded optimization run; writes the resulting front as CSV.
``campaign``
    Repeated seeded runs with metric statistics (see harness).
``reference``
    Merge front CSV files into a reference front.
``metrics``
    Score a candidate front file against a reference front file.
``list-presets``
    Show the named experiment presets.

Options may also be supplied through ``--config file.json``; explicit
command line flags take precedence over values from the file. The JSON
schema mirrors the flag names: ``problem``, ``preset``, ``evals``,
``pop``, ``fe``, ``seed``, ``reps``, ``out``, ``reference``,
``tol_conv``, ``tol_spr``, ``workers``, plus any optimizer setting
(``w_c``, ``rho_tol``, ``rho_min``, ``archive_capacity``, ...) and
``problem_overrides`` for problem constructor keywords.

Exit codes: 0 on success, 2 on configuration errors (bad flags, bad
config file, malformed input CSV), 3 on runtime failures.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .core import ContractViolation
from .engine import MacsConfig, run
from .harness import (
    ExperimentConfig,
    read_front_csv,
    run_campaign,
    write_front_csv,
)
from .metrics import build_reference_front, evaluate_fronts
from .presets import PRESETS, get_preset, make_problem, preset_config

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macs",
        description="Multi-agent collaborative search for multiobjective "
        "optimization.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, reps=False):
        p.add_argument("--problem", help="problem name")
        p.add_argument("--preset", help="named preset (see list-presets)")
        p.add_argument("--evals", type=int, help="evaluation budget")
        p.add_argument("--pop", type=int, help="population size")
        p.add_argument("--fe", type=float,
                       help="fraction of agents doing local search")
        p.add_argument("--seed", type=int, help="base random seed")
        p.add_argument("--config", metavar="JSON",
                       help="JSON file with any of these options")
        if reps:
            p.add_argument("--reps", type=int, help="number of runs")
            p.add_argument("--reference",
                           help="reference front CSV (default: self-built)")
            p.add_argument("--tol-conv", type=float, dest="tol_conv",
                           help="convergence success threshold")
            p.add_argument("--tol-spr", type=float, dest="tol_spr",
                           help="spreading success threshold")
            p.add_argument("--workers", type=int,
                           help="parallel worker processes")

    p_run = sub.add_parser("run", help="single optimization run")
    common(p_run)
    p_run.add_argument("--out", help="front CSV output path")

    p_camp = sub.add_parser("campaign", help="repeated seeded runs")
    common(p_camp, reps=True)
    p_camp.add_argument("--out", help="output directory")

    p_ref = sub.add_parser("reference", help="merge fronts into a reference")
    p_ref.add_argument("fronts", nargs="+", help="front CSV files")
    p_ref.add_argument("--out", required=True, help="output CSV path")
    p_ref.add_argument("--max-points", type=int, default=2000)

    p_met = sub.add_parser("metrics", help="score a front against a reference")
    p_met.add_argument("candidate", help="candidate front CSV")
    p_met.add_argument("--reference", required=True,
                       help="reference front CSV")
    p_met.add_argument("--tol-conv", type=float, dest="tol_conv")
    p_met.add_argument("--tol-spr", type=float, dest="tol_spr")

    sub.add_parser("list-presets", help="show the named presets")
    return parser


_FLAG_KEYS = (
    "problem", "preset", "evals", "pop", "fe", "seed",
    "reps", "out", "reference", "tol_conv", "tol_spr", "workers",
)
_CONFIG_ONLY_KEYS = ("problem_overrides",)


def _load_settings(args) -> dict:
    """Merge the JSON config file (if any) under the explicit flags."""
    settings: dict = {}
    path = getattr(args, "config", None)
    if path:
        try:
            with open(path) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ContractViolation(f"cannot read config {path}: {exc}")
        if not isinstance(loaded, dict):
            raise ContractViolation(f"{path}: top level must be an object")
        known = set(_FLAG_KEYS) | set(_CONFIG_ONLY_KEYS) | set(
            MacsConfig.__dataclass_fields__
        )
        for key in loaded:
            if key not in known:
                raise ContractViolation(f"{path}: unknown option {key!r}")
        settings.update(loaded)
    for key in _FLAG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return settings


def _engine_overrides(settings: dict) -> dict:
    """MacsConfig keyword overrides drawn from merged settings."""
    out = {}
    for key in MacsConfig.__dataclass_fields__:
        if key in settings:
            out[key] = settings[key]
    for src, dst in (("evals", "max_evals"), ("pop", "n_pop"), ("fe", "f_e")):
        if src in settings:
            out[dst] = settings[src]
    if "seed" in settings:
        out["seed"] = settings["seed"]
    return out


def _single_config(settings: dict):
    """(problem name, problem overrides, MacsConfig) for the run verb."""
    overrides = _engine_overrides(settings)
    problem_overrides = settings.get("problem_overrides", {})
    if "preset" in settings:
        preset = get_preset(settings["preset"])
        name = settings.get("problem", preset.problem)
        cfg = preset_config(preset, **overrides)
    else:
        if "problem" not in settings:
            raise ContractViolation("need --preset or --problem")
        name = settings["problem"]
        for key in ("n_pop", "f_e", "max_evals"):
            if key not in overrides:
                flag = {"n_pop": "--pop", "f_e": "--fe",
                        "max_evals": "--evals"}[key]
                raise ContractViolation(f"{flag} is required without --preset")
        cfg = MacsConfig(**overrides)
    return name, problem_overrides, cfg


def _cmd_run(settings: dict) -> int:
    name, problem_overrides, cfg = _single_config(settings)
    problem = make_problem(name, **problem_overrides)
    report = run(problem, cfg)
    out = settings.get("out")
    if out:
        write_front_csv(out, report.archive_f, report.archive_x)
    info = {
        "problem": name,
        "seed": report.seed,
        "evals": report.n_eval,
        "front_size": int(len(report.archive_f)),
        "out": out,
    }
    json.dump(info, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_campaign(settings: dict) -> int:
    if "preset" in settings:
        preset = get_preset(settings["preset"])
        problem = settings.get("problem", preset.problem)
        cfg = preset_config(preset, **_engine_overrides(settings))
        tol_conv = settings.get("tol_conv", preset.tol_conv)
        tol_spr = settings.get("tol_spr", preset.tol_spr)
    else:
        problem, _, cfg = _single_config(settings)
        tol_conv = settings.get("tol_conv")
        tol_spr = settings.get("tol_spr")
    experiment = ExperimentConfig(
        problem=problem,
        config=cfg,
        repetitions=settings.get("reps", 1),
        base_seed=settings.get("seed", 0),
        output_dir=settings.get("out"),
        reference_front=settings.get("reference"),
        tol_conv=tol_conv,
        tol_spr=tol_spr,
        workers=settings.get("workers", 1),
        problem_overrides=settings.get("problem_overrides", {}),
    )
    result = run_campaign(experiment)
    json.dump(result.summary, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_reference(args) -> int:
    fronts = [read_front_csv(path)[0] for path in args.fronts]
    reference = build_reference_front(fronts, max_points=args.max_points)
    write_front_csv(args.out, reference)
    json.dump({"out": args.out, "points": int(len(reference))}, sys.stdout,
              indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_metrics(args) -> int:
    candidate, _ = read_front_csv(args.candidate)
    reference, _ = read_front_csv(args.reference)
    report = evaluate_fronts(reference, candidate)
    info = {
        "m_conv": report.m_conv,
        "m_spr": report.m_spr,
        "reference_size": report.reference_size,
        "candidate_size": report.candidate_size,
    }
    if args.tol_conv is not None:
        info["pass_conv"] = bool(report.m_conv < args.tol_conv)
    if args.tol_spr is not None:
        info["pass_spr"] = bool(report.m_spr < args.tol_spr)
    json.dump(info, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_list_presets() -> int:
    rows = [
        (p.name, p.problem, str(p.n_pop), f"{p.f_e:.3g}", str(p.max_evals),
         p.description)
        for p in PRESETS.values()
    ]
    header = ("name", "problem", "pop", "fe", "evals", "description")
    widths = [max(len(r[j]) for r in rows + [header]) for j in range(6)]
    for row in [header] + rows:
        print("  ".join(col.ljust(w) for col, w in zip(row, widths)).rstrip())
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.verb == "list-presets":
            return _cmd_list_presets()
        if args.verb == "reference":
            return _cmd_reference(args)
        if args.verb == "metrics":
            return _cmd_metrics(args)
        settings = _load_settings(args)
        if args.verb == "run":
            return _cmd_run(settings)
        return _cmd_campaign(settings)
    except (ContractViolation, KeyError, TypeError, ValueError) as exc:
        print(f"macs: configuration error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"macs: runtime failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
