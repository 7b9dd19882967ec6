"""Domain types and Pareto dominance / archiving primitives.

Everything here is deliberately small and pure: dominance tests, the
scalar dominance index, the modified (component-counting) dominance
index used to rank local samples, normalized decision-space distances,
and the crowding-pruned nondominated archive.

Minimization convention throughout. Dominance is *strong*: a point
dominates another only if it is strictly better in every objective.
Infeasible evaluations are encoded as all-infinity objective vectors,
which makes them dominated by any feasible point and keeps them out of
every archive.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ContractViolation",
    "SearchSpace",
    "ProblemDefinition",
    "Agent",
    "Archive",
    "INFEASIBLE",
    "infeasible_objectives",
    "is_feasible",
    "dominates",
    "dominance_index",
    "modified_dominance_index",
    "select_partially_dominated",
    "normalized_distance",
    "crowding_values",
    "prune_archive",
]

#: Sentinel value for objective vectors of infeasible evaluations.
INFEASIBLE = np.inf


class ContractViolation(ValueError):
    """An operation was called with arguments violating its contract."""


@dataclass(frozen=True)
class SearchSpace:
    """Bounds hyperrectangle for the decision vector."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float)
        hi = np.asarray(self.upper, dtype=float)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        if lo.ndim != 1 or lo.shape != hi.shape or lo.size < 1:
            raise ContractViolation("bounds must be equal-length 1-D arrays")
        if not np.all(lo < hi):
            raise ContractViolation("every lower bound must be below its upper bound")
        object.__setattr__(self, "span", hi - lo)

    @property
    def n(self) -> int:
        return self.lower.size

    def contains(self, x: np.ndarray, atol: float = 1e-12) -> bool:
        return bool(
            np.all(x >= self.lower - atol) and np.all(x <= self.upper + atol)
        )

    def clip(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, self.lower, self.upper)

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        return self.lower + rng.random(self.n) * self.span

    def normalize(self, x: np.ndarray) -> np.ndarray:
        return (x - self.lower) / self.span


@dataclass(frozen=True)
class ProblemDefinition:
    """A bounded vector-valued minimization problem."""

    name: str
    space: SearchSpace
    n_objectives: int
    evaluate: "callable"


@dataclass
class Agent:
    """A candidate solution with attached local-search state."""

    x: np.ndarray
    f: np.ndarray
    x_prev: np.ndarray
    f_prev: np.ndarray | None = None
    # Displacement over the previous generation, used by the inertia
    # move.
    delta_i: np.ndarray | None = None
    rho: float = 1.0
    s: int = 1
    improved: bool = False
    fail_streak: int = 0
    # Set by the attraction mechanism to redirect the next inertia move.
    delta_override: np.ndarray | None = None


def infeasible_objectives(m: int) -> np.ndarray:
    return np.full(m, INFEASIBLE)


def is_feasible(f: np.ndarray) -> bool:
    return bool(np.all(np.isfinite(f)))


def dominates(a: np.ndarray, b: np.ndarray) -> bool:
    """True iff ``a`` is strictly better than ``b`` in every objective."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ContractViolation("objective vectors differ in length")
    return bool(np.all(a < b))


def dominance_index(objectives: np.ndarray) -> np.ndarray:
    """Number of set members strongly dominating each member.

    ``objectives`` is a (k, m) array; returns a length-k integer array.
    """
    fs = np.asarray(objectives, dtype=float)
    if fs.ndim != 2 or fs.shape[0] == 0:
        raise ContractViolation("need a nonempty (k, m) objective array")
    # dom[i, j] == True iff point i strongly dominates point j.
    dom = np.all(fs[:, None, :] < fs[None, :, :], axis=2)
    return dom.sum(axis=0)


def modified_dominance_index(x_f: np.ndarray, y_f: np.ndarray) -> int:
    """Component-count dominance of ``y`` relative to ``x``.

    Counts the objectives where y ties x (weighted by whether x is
    strictly better anywhere) plus the objectives where y is worse.
    0 means y is at least as good as x everywhere that matters; m means
    y is weakly dominated in every component.
    """
    x_f = np.asarray(x_f, dtype=float)
    y_f = np.asarray(y_f, dtype=float)
    if x_f.shape != y_f.shape:
        raise ContractViolation("objective vectors differ in length")
    kappa = 1 if np.any(x_f < y_f) else 0
    n_equal = int(np.sum(y_f == x_f))
    n_worse = int(np.sum(y_f > x_f))
    return n_equal * kappa + n_worse


def select_partially_dominated(x_f: np.ndarray, candidates: np.ndarray) -> int:
    """Pick among equally-indexed partially dominated candidates.

    Returns the index of the candidate minimizing the projection of
    f(x) - f(y) onto the unit diagonal direction. Ties resolve to the
    lowest index.
    """
    x_f = np.asarray(x_f, dtype=float)
    cands = np.atleast_2d(np.asarray(candidates, dtype=float))
    if cands.shape[0] == 0:
        raise ContractViolation("empty candidate set")
    m = x_f.size
    scores = (x_f[None, :] - cands).sum(axis=1) / np.sqrt(m)
    return int(np.argmin(scores))


def normalized_distance(a: np.ndarray, b: np.ndarray, space: SearchSpace) -> float:
    """Euclidean distance after mapping each coordinate to [0, 1]."""
    d = (np.asarray(a, dtype=float) - np.asarray(b, dtype=float)) / space.span
    return float(np.sqrt(np.dot(d, d)))


def _nondominated_mask(fs: np.ndarray) -> np.ndarray:
    """Keep entries not weakly dominated by any other entry.

    The archive filter uses weak dominance (no component worse, some
    component strictly better) so that ties in one objective cannot
    shelter entries that are strictly worse in the others.
    """
    finite = np.all(np.isfinite(fs), axis=1)
    if not np.any(finite):
        return finite
    mask = finite.copy()
    idx = np.where(finite)[0]
    sub = fs[idx]
    dom = np.all(sub[:, None, :] <= sub[None, :, :], axis=2) & np.any(
        sub[:, None, :] < sub[None, :, :], axis=2
    )
    mask[idx] = ~dom.any(axis=0)
    return mask


def crowding_values(fs: np.ndarray) -> np.ndarray:
    """Criteria-space crowding: sum of distances to the two nearest
    neighbors. Extreme points (per-objective minima and maxima) get
    +inf so they are always preserved.
    """
    fs = np.asarray(fs, dtype=float)
    k = fs.shape[0]
    if k <= 2:
        return np.full(k, np.inf)
    diff = fs[:, None, :] - fs[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=2))
    np.fill_diagonal(dist, np.inf)
    two = np.partition(dist, 1, axis=1)[:, :2]
    crowd = two.sum(axis=1)
    crowd[np.argmin(fs, axis=0)] = np.inf
    crowd[np.argmax(fs, axis=0)] = np.inf
    return crowd


@dataclass
class Archive:
    """Crowding-pruned set of nondominated (decision, objective) pairs.

    Stored as parallel arrays: ``x`` with shape (k, n), ``f`` with shape
    (k, m). ``capacity`` of ``None`` means unbounded.
    """

    x: np.ndarray
    f: np.ndarray
    capacity: int | None = None

    @classmethod
    def empty(cls, n: int, m: int, capacity: int | None = None) -> "Archive":
        return cls(np.empty((0, n)), np.empty((0, m)), capacity)

    def __len__(self) -> int:
        return self.x.shape[0]


def prune_archive(
    archive: Archive,
    space: SearchSpace,
    w_c: float,
    capacity: int | None = None,
) -> Archive:
    """Dominance filter, minimum-spacing sweep, then capacity eviction.

    Keeps only entries with dominance index 0, removes entries closer
    than ``w_c`` (normalized decision space) to an already-kept entry in
    a greedy insertion-order sweep, and finally evicts the most crowded
    entries in criteria space until at most ``capacity`` remain.
    """
    if w_c < 0:
        raise ContractViolation("w_c must be nonnegative")
    if capacity is None:
        capacity = archive.capacity
    xs, fs = archive.x, archive.f
    mask = _nondominated_mask(fs)
    xs, fs = xs[mask], fs[mask]

    if len(xs) > 1 and w_c > 0:
        unit = (xs - space.lower) / space.span
        kept: list[int] = []
        kept_unit = np.empty((0, space.n))
        for i in range(len(xs)):
            if kept:
                d = kept_unit - unit[i]
                if np.min(np.sqrt((d * d).sum(axis=1))) <= w_c:
                    continue
            kept.append(i)
            kept_unit = np.vstack([kept_unit, unit[i]])
        xs, fs = xs[kept], fs[kept]

    if capacity is not None and len(xs) > capacity:
        keep = np.ones(len(xs), dtype=bool)
        diff = fs[:, None, :] - fs[None, :, :]
        dist = np.sqrt((diff * diff).sum(axis=2))
        np.fill_diagonal(dist, np.inf)
        protected = np.zeros(len(xs), dtype=bool)
        protected[np.argmin(fs, axis=0)] = True
        protected[np.argmax(fs, axis=0)] = True
        n_keep = len(xs)
        while n_keep > capacity:
            sub = dist[np.ix_(keep, keep)]
            crowd = np.partition(sub, 1, axis=1)[:, :2].sum(axis=1)
            order = np.where(keep)[0]
            crowd[protected[order]] = np.inf
            victim = order[int(np.argmin(crowd))]
            keep[victim] = False
            n_keep -= 1
        xs, fs = xs[keep], fs[keep]

    return Archive(xs, fs, capacity)
