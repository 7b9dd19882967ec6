"""Convergence and spreading metrics for Pareto front comparison.

Both metrics are normalized mean minimum distances between a candidate
front and a reference front, expressed in percent. ``m_spr`` measures
how well the candidate covers the reference (a high value means parts
of the reference front were missed); ``m_conv`` measures how accurate
the candidate points are. Success probabilities over repeated runs are
computed by thresholding the metric samples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ContractViolation

__all__ = [
    "MetricReport",
    "m_spr",
    "m_conv",
    "dedupe_filter",
    "build_reference_front",
    "success_rate",
    "evaluate_fronts",
    "mean_euclidean_distance",
]

# Floor applied to reference components before division, to avoid
# blowing up on fronts that touch zero in some objective.
_DIV_FLOOR = 1e-9


@dataclass(frozen=True)
class MetricReport:
    m_spr: float
    m_conv: float
    reference_size: int
    candidate_size: int


def _as_front(points) -> np.ndarray:
    fs = np.atleast_2d(np.asarray(points, dtype=float))
    if fs.shape[0] == 0:
        raise ContractViolation("front must be nonempty")
    return fs


def _floored(fs: np.ndarray) -> np.ndarray:
    out = fs.copy()
    small = np.abs(out) < _DIV_FLOOR
    out[small] = np.where(np.signbit(out[small]), -_DIV_FLOOR, _DIV_FLOOR)
    return out


def m_spr(reference, candidate) -> float:
    """Mean over reference points of the minimum relative distance to the
    candidate front, in percent."""
    ref = _as_front(reference)
    cand = _as_front(candidate)
    if ref.shape[1] != cand.shape[1]:
        raise ContractViolation("fronts differ in objective dimension")
    denom = _floored(ref)
    rel = (cand[None, :, :] - ref[:, None, :]) / denom[:, None, :]
    d = 100.0 * np.sqrt((rel * rel).sum(axis=2))
    return float(d.min(axis=1).mean())


def m_conv(reference, candidate) -> float:
    """Mean over candidate points of the minimum relative distance to the
    reference front, in percent."""
    ref = _as_front(reference)
    cand = _as_front(candidate)
    if ref.shape[1] != cand.shape[1]:
        raise ContractViolation("fronts differ in objective dimension")
    denom = _floored(ref)
    rel = (ref[None, :, :] - cand[:, None, :]) / denom[None, :, :]
    d = 100.0 * np.sqrt((rel * rel).sum(axis=2))
    return float(d.min(axis=1).mean())


def dedupe_filter(front, tol: float = 1e-3, span=None) -> np.ndarray:
    """Greedy near-duplicate removal in normalized criteria space.

    A point is kept only if its normalized distance to every already
    kept point exceeds ``tol``. ``span`` may supply an external
    (mins, maxs) normalization, e.g. the joint span of a candidate and
    reference pair; by default the front's own min-max span is used.
    """
    if tol <= 0:
        raise ContractViolation("tol must be positive")
    fs = _as_front(front)
    if fs.shape[0] == 1:
        return fs
    if span is None:
        mins, maxs = fs.min(axis=0), fs.max(axis=0)
    else:
        mins, maxs = (np.asarray(v, dtype=float) for v in span)
    width = maxs - mins
    width[width <= 0] = 1.0
    unit = (fs - mins) / width
    kept = [0]
    for i in range(1, len(fs)):
        d = unit[kept] - unit[i]
        if np.min(np.sqrt((d * d).sum(axis=1))) > tol:
            kept.append(i)
    return fs[kept]


def _nondominated(fs: np.ndarray) -> np.ndarray:
    finite = np.all(np.isfinite(fs), axis=1)
    fs = fs[finite]
    if len(fs) == 0:
        return fs
    dom = np.all(fs[:, None, :] < fs[None, :, :], axis=2)
    return fs[~dom.any(axis=0)]


def build_reference_front(runs, max_points: int = 2000) -> np.ndarray:
    """Merge fronts from many runs into one reference front.

    Keeps the nondominated union, then thins to at most ``max_points``
    approximately equispaced points via farthest-point selection in
    normalized criteria space (extremes always retained). Output is
    sorted by the first objective.
    """
    pools = [np.atleast_2d(np.asarray(r, dtype=float)) for r in runs if len(r)]
    if not pools:
        raise ContractViolation("need at least one nonempty run")
    merged = np.vstack(pools)
    front = _nondominated(merged)
    if len(front) == 0:
        raise ContractViolation("no feasible nondominated points in input runs")
    front = front[np.lexsort((front[:, 1], front[:, 0]))]
    if len(front) > max_points:
        mins, maxs = front.min(axis=0), front.max(axis=0)
        width = maxs - mins
        width[width <= 0] = 1.0
        unit = (front - mins) / width
        chosen = list(np.unique(np.concatenate(
            [np.argmin(front, axis=0), np.argmax(front, axis=0)])))
        best = np.full(len(front), np.inf)
        for c in chosen:
            d = unit - unit[c]
            best = np.minimum(best, np.sqrt((d * d).sum(axis=1)))
        while len(chosen) < max_points:
            nxt = int(np.argmax(best))
            chosen.append(nxt)
            d = unit - unit[nxt]
            best = np.minimum(best, np.sqrt((d * d).sum(axis=1)))
        chosen = sorted(chosen)
        front = front[chosen]
    return front


def success_rate(metric_values, tol: float) -> float:
    """Fraction of metric samples strictly below the threshold."""
    vals = np.asarray(metric_values, dtype=float)
    if vals.size == 0:
        raise ContractViolation("empty sample")
    return float(np.mean(vals < tol))


def evaluate_fronts(
    reference,
    candidate,
    dedupe_tol: float = 1e-3,
) -> MetricReport:
    """Apply the near-duplicate filter to both fronts (joint
    normalization), then compute both metrics."""
    ref = _as_front(reference)
    cand = _as_front(candidate)
    joint = np.vstack([ref, cand])
    span = (joint.min(axis=0), joint.max(axis=0))
    ref_f = dedupe_filter(ref, dedupe_tol, span=span)
    cand_f = dedupe_filter(cand, dedupe_tol, span=span)
    return MetricReport(
        m_spr=m_spr(ref_f, cand_f),
        m_conv=m_conv(ref_f, cand_f),
        reference_size=len(ref_f),
        candidate_size=len(cand_f),
    )


def mean_euclidean_distance(reference, candidate) -> float:
    """Mean over reference points of the plain Euclidean distance to the
    nearest candidate point (no normalization)."""
    ref = _as_front(reference)
    cand = _as_front(candidate)
    diff = cand[None, :, :] - ref[:, None, :]
    d = np.sqrt((diff * diff).sum(axis=2))
    return float(d.min(axis=1).mean())
