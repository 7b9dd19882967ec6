"""Analytic biobjective benchmark functions and their optimal fronts.

Six classic problems: Scha and Deb (disconnected fronts), Deb2 (many
local fronts), and ZDT2/ZDT4/ZDT6. All are minimization problems with
two objectives. ``true_front`` returns uniformly spaced samples of the
known optimal front for metric evaluation.
"""

from __future__ import annotations

import numpy as np

from .core import ContractViolation, ProblemDefinition, SearchSpace

__all__ = ["PROBLEM_NAMES", "analytic_problem", "true_front"]

PROBLEM_NAMES = ("scha", "deb", "deb2", "zdt2", "zdt4", "zdt6")


def _scha(x: np.ndarray) -> np.ndarray:
    v = float(x[0])
    if v <= 1:
        f1 = -v
    elif v <= 3:
        f1 = -2 + v
    elif v <= 4:
        f1 = 4 - v
    else:
        f1 = -4 + v
    return np.array([f1, (v - 5.0) ** 2])


def _deb(x: np.ndarray) -> np.ndarray:
    alpha, q = 2.0, 4.0
    x1, x2 = float(x[0]), float(x[1])
    b = 1 + 10 * x2
    ratio = x1 / b
    f2 = b * (1 - ratio**alpha - ratio * np.sin(2 * np.pi * q * x1))
    return np.array([x1, f2])


def _deb2(x: np.ndarray) -> np.ndarray:
    x1, x2 = float(x[0]), float(x[1])
    g = 11 + x2**2 - 10 * np.cos(2 * np.pi * x2)
    h = 1 - np.sqrt(x1 / g) if x1 <= g else 0.0
    return np.array([x1, g * h])


def _zdt2(x: np.ndarray) -> np.ndarray:
    f1 = float(x[0])
    g = 1 + 9 * np.sum(x[1:]) / (len(x) - 1)
    return np.array([f1, g * (1 - (f1 / g) ** 2)])


def _zdt4(x: np.ndarray) -> np.ndarray:
    f1 = float(x[0])
    xi = x[1:]
    g = 1 + 10 * (len(x) - 1) + np.sum(xi**2 - 10 * np.cos(4 * np.pi * xi))
    return np.array([f1, g * (1 - np.sqrt(f1 / g))])


def _zdt6(x: np.ndarray) -> np.ndarray:
    f1 = 1 - np.exp(-4 * float(x[0])) * np.sin(6 * np.pi * float(x[0])) ** 6
    g = 1 + 9 * (np.sum(x[1:]) / (len(x) - 1)) ** 0.25
    return np.array([f1, g * (1 - (f1 / g) ** 2)])


_SPECS = {
    "scha": (_scha, [-5.0], [10.0]),
    "deb": (_deb, [0.0, 0.0], [1.0, 1.0]),
    "deb2": (_deb2, [0.0, -30.0], [1.0, 30.0]),
    "zdt2": (_zdt2, [0.0] * 30, [1.0] * 30),
    "zdt4": (_zdt4, [0.0] + [-5.0] * 9, [1.0] + [5.0] * 9),
    "zdt6": (_zdt6, [0.0] * 10, [1.0] * 10),
}


def analytic_problem(name: str) -> ProblemDefinition:
    key = name.lower()
    if key not in _SPECS:
        raise ContractViolation(f"unknown problem {name!r}")
    fn, lo, hi = _SPECS[key]
    space = SearchSpace(np.array(lo), np.array(hi))

    def evaluate(x: np.ndarray, _fn=fn, _space=space) -> np.ndarray:
        if not _space.contains(x):
            raise ContractViolation(f"decision vector outside bounds for {key}")
        # Round-off from boundary-clipped moves can leave coordinates
        # a few ulp outside the box; snap them back before evaluating.
        return _fn(_space.clip(np.asarray(x, dtype=float)))

    return ProblemDefinition(key, space, 2, evaluate)


def _nondominated_curve(f1: np.ndarray, f2: np.ndarray) -> np.ndarray:
    """Nondominated filter for a dense 2-objective sweep.

    Sorts by f1 and keeps points whose f2 strictly improves on every
    point with smaller f1. Duplicate f1 values keep only their best f2.
    """
    order = np.lexsort((f2, f1))
    f1, f2 = f1[order], f2[order]
    keep_f1, keep_f2 = [f1[0]], [f2[0]]
    for a, b in zip(f1[1:], f2[1:]):
        if a == keep_f1[-1]:
            continue
        if b < keep_f2[-1]:
            keep_f1.append(a)
            keep_f2.append(b)
    return np.column_stack([keep_f1, keep_f2])


def _resample_piece(points: np.ndarray, count: int) -> np.ndarray:
    """Resample one contiguous polyline at uniform arc length."""
    if count <= 1 or len(points) < 2:
        return points[:1]
    seg = np.sqrt(((np.diff(points, axis=0)) ** 2).sum(axis=1))
    arc = np.concatenate([[0.0], np.cumsum(seg)])
    targets = np.linspace(0.0, arc[-1], count)
    out = np.empty((count, points.shape[1]))
    for j in range(points.shape[1]):
        out[:, j] = np.interp(targets, arc, points[:, j])
    return out


def _arclength_resample(points: np.ndarray, count: int) -> np.ndarray:
    """Resample a front at uniform arc length, keeping endpoints.

    Disconnected fronts are split at jump discontinuities so that no
    sample is interpolated across a gap; each piece receives a share of
    the samples proportional to its arc length.
    """
    seg = np.sqrt(((np.diff(points, axis=0)) ** 2).sum(axis=1))
    median = np.median(seg[seg > 0]) if np.any(seg > 0) else 0.0
    breaks = np.where(seg > 200.0 * max(median, 1e-300))[0]
    pieces = np.split(points, breaks + 1)
    pieces = [p for p in pieces if len(p) > 0]
    if len(pieces) == 1:
        return _resample_piece(points, count)

    lengths = []
    for p in pieces:
        d = np.sqrt(((np.diff(p, axis=0)) ** 2).sum(axis=1))
        lengths.append(float(d.sum()))
    total = sum(lengths) or 1.0
    counts = [max(2, int(round(count * w / total))) for w in lengths]
    # Trim the largest piece so the total matches the request.
    while sum(counts) > count:
        counts[int(np.argmax(counts))] -= 1
    out = np.vstack([_resample_piece(p, c) for p, c in zip(pieces, counts)])
    return out


def _sweep_front(name: str, count: int, samples: int = 200_001) -> np.ndarray:
    """Dense 1-D sweep of the front-generating manifold + filtering."""
    if name == "scha":
        x = np.linspace(-5.0, 10.0, samples)
        fs = np.array([_scha(np.array([v])) for v in x])
    elif name == "deb":
        x1 = np.linspace(0.0, 1.0, samples)
        fs = np.array([_deb(np.array([v, 0.0])) for v in x1])
    elif name == "deb2":
        x1 = np.linspace(0.0, 1.0, samples)
        fs = np.array([_deb2(np.array([v, 0.0])) for v in x1])
    else:
        raise ContractViolation(f"no sweep front for {name}")
    front = _nondominated_curve(fs[:, 0], fs[:, 1])
    return _arclength_resample(front, count)


def true_front(name: str, count: int) -> np.ndarray:
    """``count`` uniformly spaced points on the known optimal front."""
    if count < 2:
        raise ContractViolation("count must be at least 2")
    key = name.lower()
    if key == "zdt2":
        f1 = np.linspace(0.0, 1.0, count)
        return np.column_stack([f1, 1 - f1**2])
    if key == "zdt4":
        f1 = np.linspace(0.0, 1.0, count)
        return np.column_stack([f1, 1 - np.sqrt(f1)])
    if key == "zdt6":
        # f2 = 1 - f1^2 on the achievable f1 range; the lower end is the
        # minimum of the oscillatory f1(x1) map.
        x1 = np.linspace(0.0, 1.0, 200_001)
        f1_min = float(np.min(1 - np.exp(-4 * x1) * np.sin(6 * np.pi * x1) ** 6))
        f1 = np.linspace(f1_min, 1.0, count)
        return np.column_stack([f1, 1 - f1**2])
    if key in ("scha", "deb", "deb2"):
        return _sweep_front(key, count)
    raise ContractViolation(f"unknown problem {name!r}")
