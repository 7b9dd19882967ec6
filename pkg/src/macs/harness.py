"""Batch campaign driver: seeded repetitions, front files, statistics.

A campaign runs the optimizer ``repetitions`` times with seeds
``base_seed + i``, writes every resulting front to CSV, scores each run
against a reference front with the spreading and convergence metrics,
and emits a summary in both CSV and JSON. When no reference front is
supplied, one is built from the campaign's own merged runs and the
summary is marked as self-referenced.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import ContractViolation
from .engine import MacsConfig, RunReport, run
from .metrics import (
    build_reference_front,
    dedupe_filter,
    m_conv,
    m_spr,
    success_rate,
)
from .presets import get_preset, make_problem, preset_config

__all__ = [
    "ExperimentConfig",
    "CampaignResult",
    "run_campaign",
    "write_front_csv",
    "read_front_csv",
]


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce a campaign."""

    problem: str
    config: MacsConfig
    repetitions: int = 1
    base_seed: int = 0
    output_dir: str | None = None
    reference_front: str | None = None
    tol_conv: float | None = None
    tol_spr: float | None = None
    include_decisions: bool = True
    workers: int = 1
    problem_overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.repetitions < 1:
            raise ContractViolation("repetitions must be at least 1")
        if self.workers < 1:
            raise ContractViolation("workers must be at least 1")

    @classmethod
    def from_preset(cls, name: str, **overrides) -> "ExperimentConfig":
        preset = get_preset(name)
        config_fields = {
            k: overrides.pop(k)
            for k in list(overrides)
            if k in MacsConfig.__dataclass_fields__
        }
        cfg = preset_config(preset, **config_fields)
        overrides.setdefault("tol_conv", preset.tol_conv)
        overrides.setdefault("tol_spr", preset.tol_spr)
        return cls(problem=preset.problem, config=cfg, **overrides)


@dataclass(frozen=True)
class CampaignResult:
    """Summary of a finished campaign."""

    reports: tuple
    front_files: tuple
    reference: np.ndarray
    m_conv_values: tuple
    m_spr_values: tuple
    failures: tuple
    summary: dict
    summary_json: str | None
    summary_csv: str | None


def write_front_csv(path, front_f, front_x=None) -> None:
    """Write a front file: header ``f1,...,fm[,x1..xn]``, one row per
    point."""
    front_f = np.atleast_2d(np.asarray(front_f, dtype=float))
    m = front_f.shape[1]
    header = [f"f{j + 1}" for j in range(m)]
    rows = front_f
    if front_x is not None:
        front_x = np.atleast_2d(np.asarray(front_x, dtype=float))
        header += [f"x{j + 1}" for j in range(front_x.shape[1])]
        rows = np.hstack([front_f, front_x])
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) for v in row])


def read_front_csv(path) -> tuple[np.ndarray, np.ndarray | None]:
    """Read a front file; returns (objectives, decisions or None)."""
    path = Path(path)
    try:
        handle = open(path, newline="")
    except OSError as exc:
        raise ContractViolation(f"cannot read front file: {exc}") from None
    with handle as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ContractViolation(f"{path}: empty front file") from None
        m = sum(1 for name in header if name.strip().startswith("f"))
        n = len(header) - m
        if m == 0:
            raise ContractViolation(f"{path}, line 1: no objective columns")
        fs, xs = [], []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ContractViolation(
                    f"{path}, line {lineno}: expected {len(header)} fields, "
                    f"got {len(row)}"
                )
            try:
                vals = [float(v) for v in row]
            except ValueError as exc:
                raise ContractViolation(
                    f"{path}, line {lineno}: {exc}"
                ) from None
            fs.append(vals[:m])
            xs.append(vals[m:])
    if not fs:
        raise ContractViolation(f"{path}: front file has no data rows")
    f_arr = np.array(fs)
    x_arr = np.array(xs) if n else None
    return f_arr, x_arr


def _single_run(args) -> RunReport:
    problem_name, overrides, config = args
    problem = make_problem(problem_name, **overrides)
    return run(problem, config)


def _score(reference: np.ndarray, candidate: np.ndarray, dedupe_tol: float):
    joint = np.vstack([reference, candidate])
    span = (joint.min(axis=0), joint.max(axis=0))
    ref_f = dedupe_filter(reference, dedupe_tol, span=span)
    cand_f = dedupe_filter(candidate, dedupe_tol, span=span)
    return m_conv(ref_f, cand_f), m_spr(ref_f, cand_f)


def run_campaign(experiment: ExperimentConfig) -> CampaignResult:
    """Execute a campaign and (optionally) write its artifacts."""
    out_dir = None
    if experiment.output_dir is not None:
        out_dir = Path(experiment.output_dir)
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            probe = out_dir / ".write_probe"
            probe.write_text("")
            probe.unlink()
        except OSError as exc:
            raise ContractViolation(
                f"output directory {out_dir} is not writable: {exc}"
            ) from exc

    # Fail fast on an unknown problem or bad overrides instead of
    # recording the same error once per repetition.
    make_problem(experiment.problem, **experiment.problem_overrides)

    jobs = []
    for i in range(experiment.repetitions):
        cfg_fields = {
            k: getattr(experiment.config, k)
            for k in MacsConfig.__dataclass_fields__
        }
        cfg_fields["seed"] = experiment.base_seed + i
        jobs.append(
            (experiment.problem, experiment.problem_overrides,
             MacsConfig(**cfg_fields))
        )

    reports: list = [None] * len(jobs)
    failures: list = []
    if experiment.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=experiment.workers) as pool:
            futures = {i: pool.submit(_single_run, job) for i, job in enumerate(jobs)}
            for i, fut in futures.items():
                try:
                    reports[i] = fut.result()
                except Exception as exc:
                    failures.append((i, f"{type(exc).__name__}: {exc}"))
    else:
        for i, job in enumerate(jobs):
            try:
                reports[i] = _single_run(job)
            except Exception as exc:  # record, keep going
                failures.append((i, f"{type(exc).__name__}: {exc}"))

    done = [r for r in reports if r is not None]
    if not done:
        details = "; ".join(msg for _, msg in failures)
        raise RuntimeError(f"every run in the campaign failed: {details}")

    front_files = []
    if out_dir is not None:
        for i, rep in enumerate(reports):
            if rep is None:
                continue
            path = out_dir / f"run_{i:03d}.csv"
            write_front_csv(
                path,
                rep.archive_f,
                rep.archive_x if experiment.include_decisions else None,
            )
            front_files.append(str(path))

    self_referenced = experiment.reference_front is None
    if self_referenced:
        reference = build_reference_front([r.archive_f for r in done])
    else:
        reference, _ = read_front_csv(experiment.reference_front)

    conv_vals, spr_vals = [], []
    for rep in done:
        c, s = _score(reference, rep.archive_f, dedupe_tol=1e-3)
        conv_vals.append(c)
        spr_vals.append(s)

    conv = np.array(conv_vals)
    spr = np.array(spr_vals)
    summary = {
        "problem": experiment.problem,
        "evals": experiment.config.max_evals,
        "reps": experiment.repetitions,
        "mean_conv": float(conv.mean()),
        "var_conv": float(conv.var(ddof=0)) if len(conv) > 1 else 0.0,
        "mean_spr": float(spr.mean()),
        "var_spr": float(spr.var(ddof=0)) if len(spr) > 1 else 0.0,
        "p_conv": (
            success_rate(conv, experiment.tol_conv)
            if experiment.tol_conv is not None
            else None
        ),
        "p_spr": (
            success_rate(spr, experiment.tol_spr)
            if experiment.tol_spr is not None
            else None
        ),
        "self_referenced": self_referenced,
        "failures": [{"run": i, "error": msg} for i, msg in failures],
    }

    summary_json = summary_csv = None
    if out_dir is not None:
        summary_json = str(out_dir / "summary.json")
        with open(summary_json, "w") as fh:
            json.dump(summary, fh, indent=2)
            fh.write("\n")
        summary_csv = str(out_dir / "summary.csv")
        with open(summary_csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["run", "seed", "m_conv", "m_spr", "n_eval"])
            j = 0
            for i, rep in enumerate(reports):
                if rep is None:
                    continue
                writer.writerow(
                    [i, rep.seed, repr(conv_vals[j]), repr(spr_vals[j]),
                     rep.n_eval]
                )
                j += 1
        write_front_csv(out_dir / "reference.csv", reference)

    return CampaignResult(
        reports=tuple(reports),
        front_files=tuple(front_files),
        reference=reference,
        m_conv_values=tuple(conv_vals),
        m_spr_values=tuple(spr_vals),
        failures=tuple(failures),
        summary=summary,
        summary_json=summary_json,
        summary_csv=summary_csv,
    )
