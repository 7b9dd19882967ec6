"""Multi-agent collaborative search main loop.

One generation executes, in order: collaborative actions on paired
agents, dominance ranking, crowding restart, mutation of the worse
subpopulation, individualistic local cycles for the better
subpopulation (inertia, differential, random sampling with a line
search), global archive merge and pruning, bubble restart, and
attraction of dominated agents toward the archive. The run stops once
the evaluation budget is consumed; the final population is folded into
the archive.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .core import (
    Agent,
    Archive,
    ContractViolation,
    ProblemDefinition,
    SearchSpace,
    crowding_values,
    dominance_index,
    dominates,
    is_feasible,
    modified_dominance_index,
    normalized_distance,
    prune_archive,
    select_partially_dominated,
)

__all__ = ["MacsConfig", "MacsState", "RunReport", "run"]


@dataclass(frozen=True)
class MacsConfig:
    """Settings for one MACS run."""

    n_pop: int
    f_e: float
    max_evals: int
    w_c: float = 1e-5
    rho_tol: float = 1e-5
    rho_min: float = 1e-5
    archive_capacity: int | None = 200
    F: float = 0.8
    e_prob: float = 0.8
    # Minimum relative criteria-space displacement for a move to count
    # as an improvement in the rho/s adaptation. Smaller accepted moves
    # still happen but drain rho, so agents polishing below this
    # resolution are eventually recycled.
    improve_tol: float = 1e-4
    # Fraction of neighborhood samples that perturb a single randomly
    # chosen component instead of every component at once.
    single_coord_prob: float = 0.9
    # Cap on the share of evaluations spent interpolating across
    # archive gaps.
    interp_frac: float = 0.10
    seed: int = 0
    s_max: int | None = None  # defaults to the problem dimension
    use_individualistic: bool = True
    use_attraction: bool = True

    def __post_init__(self):
        n_local = int(round(self.f_e * self.n_pop))
        if not 1 <= n_local <= self.n_pop:
            raise ContractViolation("f_e * n_pop must round into [1, n_pop]")
        if self.max_evals <= self.n_pop:
            raise ContractViolation("max_evals must exceed n_pop")
        if not 0.0 < self.rho_min <= self.rho_tol <= 1.0:
            raise ContractViolation("need 0 < rho_min <= rho_tol <= 1")

    @property
    def n_local(self) -> int:
        return int(round(self.f_e * self.n_pop))


@dataclass
class MacsState:
    """Mutable state of a run in progress."""

    problem: ProblemDefinition
    config: MacsConfig
    population: list
    archive: Archive
    rng: np.random.Generator
    generation: int = 0
    n_eval: int = 0
    s_max: int = 1
    phase: str = "init"
    phase_counts: dict = field(default_factory=dict)
    # Feasible (x, f) samples produced during the current generation
    # that should be offered to the global archive.
    sample_pool: list = field(default_factory=list)
    # Evaluations spent so far on archive gap interpolation.
    n_interp: int = 0

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        try:
            f = np.asarray(self.problem.evaluate(x), dtype=float)
        except ContractViolation:
            raise
        except Exception as exc:
            raise RuntimeError(
                f"objective evaluation failed at generation "
                f"{self.generation} ({self.phase})"
            ) from exc
        self.n_eval += 1
        self.phase_counts[self.phase] = self.phase_counts.get(self.phase, 0) + 1
        return f


@dataclass(frozen=True)
class RunReport:
    """Outcome of one seeded run."""

    archive_x: np.ndarray
    archive_f: np.ndarray
    n_eval: int
    seed: int
    config: MacsConfig
    problem_name: str
    trace: tuple  # per generation: (archive size, {phase: eval count})
    wall_time: float


def _max_step(x: np.ndarray, d: np.ndarray, space: SearchSpace) -> float:
    """Largest lambda in [0, 1] with x + lambda*d inside the bounds."""
    lam = 1.0
    for j in range(x.size):
        dj = d[j]
        if dj > 0.0:
            lam = min(lam, (space.upper[j] - x[j]) / dj)
        elif dj < 0.0:
            lam = min(lam, (space.lower[j] - x[j]) / dj)
    return max(lam, 0.0)


def _shape_t(s1: int, s2: int, s_max: int) -> float:
    return 0.75 * (s1 - s2) / s_max + 1.25


def _ranking(population) -> np.ndarray:
    """Agent indices sorted best first by dominance index, ties by index."""
    fs = np.array([a.f for a in population])
    idx = dominance_index(np.where(np.isfinite(fs), fs, np.inf))
    return np.argsort(idx, kind="stable"), idx


def _collaborative(state: MacsState) -> None:
    pop = state.population
    n_pop = len(pop)
    if n_pop < 2:
        return
    order, idx = _ranking(pop)
    worst_half = order[n_pop // 2 :]
    space = state.problem.space
    for _ in range(n_pop // 2):
        a = int(state.rng.choice(worst_half))
        b = int(state.rng.integers(n_pop - 1))
        if b >= a:
            b += 1
        # x1 is the better of the pair, x2 the worse; x2 is moved.
        if idx[a] < idx[b] or (idx[a] == idx[b] and a < b):
            i1, i2 = a, b
        else:
            i1, i2 = b, a
        x1, x2 = pop[i1], pop[i2]

        samples = []
        # Extrapolation on the far side of the better agent. When x1
        # sits on a bound along the step, the shrunk step collapses to
        # (nearly) zero and would just duplicate x1; skip it then.
        step = -state.rng.random() * (x2.x - x1.x)
        step = _max_step(x1.x, step, space) * step
        if float(np.linalg.norm(step)) >= 1e-12 * float(np.linalg.norm(space.span)):
            samples.append(x1.x + step)
        # Interpolation between the pair, shaped toward the better one.
        t = _shape_t(x1.s, x2.s, state.s_max)
        y2 = x1.x + state.rng.random() ** t * (x2.x - x1.x)
        samples.append(y2)
        # Single-point crossover children. A child identical to one of
        # its parents (always the case in one dimension, and whenever
        # the parents agree on one side of the cut) would only waste an
        # evaluation on a known point.
        n = space.n
        if n > 1:
            cut = int(state.rng.integers(1, n))
            for child in (
                np.concatenate([x1.x[:cut], x2.x[cut:]]),
                np.concatenate([x2.x[:cut], x1.x[cut:]]),
            ):
                if np.any(child != x1.x) and np.any(child != x2.x):
                    samples.append(space.clip(child))

        fs = [x2.f] + [state.evaluate(y) for y in samples]
        cand_x = [x2.x] + samples
        # Collaborative samples feed the global archive alongside the
        # local archives and the population.
        for y, f in zip(samples, fs[1:]):
            if is_feasible(f):
                state.sample_pool.append((y, f))
        d_idx = dominance_index(np.array(fs))
        winner = int(np.flatnonzero(d_idx == 0)[0])
        if winner != 0:
            x2.x = np.asarray(cand_x[winner], dtype=float)
            x2.f = np.asarray(fs[winner], dtype=float)

    _archive_interpolation(state)


def _archive_interpolation(state: MacsState) -> None:
    """Collaborative samples between archive entries flanking a gap.

    The population pairs drive agents toward the front; this pass picks
    the least-crowded archive entries and interpolates in decision
    space between each of them and its nearest criteria-space
    neighbor. When the front is thin somewhere, these are the points on
    either side of the hole, and the interpolant frequently lands
    inside it. The pass is capped at a small fraction of the overall
    evaluation budget so that short runs are not starved by it.
    """
    archive = state.archive
    k = len(archive)
    if k < 4:
        return
    n_samples = min(
        2, int(state.config.interp_frac * state.n_eval) - state.n_interp
    )
    if n_samples < 1:
        return
    fs = archive.f
    crowd = crowding_values(fs)
    finite = np.isfinite(crowd)
    if not np.any(finite):
        return
    order = np.argsort(-np.where(finite, crowd, -np.inf), kind="stable")
    diff = fs[:, None, :] - fs[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=2))
    np.fill_diagonal(dist, np.inf)
    # Drawing from the several thinnest regions instead of always the
    # thinnest one keeps a genuinely disconnected front from eating
    # every sample on a hole that cannot be filled.
    top = order[: max(8, n_samples)]
    picks = state.rng.choice(
        top, size=min(n_samples, len(top)), replace=False
    )
    for t in picks:
        u = int(np.argmin(dist[t]))
        y = archive.x[t] + state.rng.random() * (archive.x[u] - archive.x[t])
        if not np.any(y != archive.x[t]):
            continue
        f = state.evaluate(y)
        state.n_interp += 1
        if is_feasible(f):
            state.sample_pool.append((y, f))


def _restart_crowded(state: MacsState) -> None:
    pop = state.population
    space = state.problem.space
    _, idx = _ranking(pop)
    n = len(pop)
    restarted = set()
    for i in range(n):
        if i in restarted:
            continue
        for j in range(i + 1, n):
            if j in restarted:
                continue
            if normalized_distance(pop[i].x, pop[j].x, space) <= state.config.w_c:
                # Reinitialize the worse of the pair, ties to the
                # higher index.
                victim = j if idx[j] >= idx[i] else i
                _reinit_agent(state, pop[victim])
                restarted.add(victim)
                if victim == i:
                    break


def _reinit_agent(state: MacsState, agent: Agent) -> None:
    agent.x = state.problem.space.sample(state.rng)
    agent.f = state.evaluate(agent.x)
    agent.x_prev = agent.x.copy()
    agent.f_prev = agent.f.copy()
    agent.delta_i = None
    agent.rho = 1.0
    agent.s = state.s_max
    agent.improved = False
    agent.fail_streak = 0
    agent.delta_override = None


def _mutation(state: MacsState, agent: Agent, rank_position: int) -> None:
    """Uniform mutation block for one P^u agent (0-based rank)."""
    n_p = 1 + int(rank_position / len(state.population) * (state.s_max - 1))
    space = state.problem.space
    mut_x = [space.sample(state.rng) for _ in range(n_p)]
    mut_f = [state.evaluate(y) for y in mut_x]
    for y, f in zip(mut_x, mut_f):
        if is_feasible(f):
            state.sample_pool.append((y, f))
    d_idx = dominance_index(np.array(mut_f + [agent.f]))
    best = None
    best_disp = -1.0
    for p in range(n_p):
        if d_idx[p] == 0 and is_feasible(mut_f[p]):
            disp = float(np.linalg.norm(mut_f[p] - agent.f)) if is_feasible(agent.f) else np.inf
            if disp > best_disp:
                best, best_disp = p, disp
    if best is not None:
        agent.x = mut_x[best]
        agent.f = mut_f[best]


def _neighborhood_sample(state: MacsState, agent: Agent) -> np.ndarray:
    """Random sample in N_rho, perturbing a random subset of components.

    Half the samples perturb a single randomly chosen component
    (pattern-search style); the other half perturb every component.
    Inactive components keep the agent's value, and the resulting exact
    ties are what lets the modified dominance index accept moves that
    slide along one objective while improving the others.
    """
    space = state.problem.space
    half = agent.rho * np.maximum(space.upper - agent.x, agent.x - space.lower)
    lo = np.maximum(agent.x - half, space.lower)
    hi = np.minimum(agent.x + half, space.upper)
    if space.n > 1 and state.rng.random() < state.config.single_coord_prob:
        j = int(state.rng.integers(space.n))
        y = agent.x.copy()
        y[j] = lo[j] + state.rng.random() * (hi[j] - lo[j])
        return y
    return lo + state.rng.random(space.n) * (hi - lo)


def _differential_sample(state: MacsState, agent: Agent, self_index: int) -> np.ndarray:
    pop = state.population
    if len(pop) < 4:
        raise ContractViolation("differential move needs a population of 4")
    others = [i for i in range(len(pop)) if i != self_index]
    i1, i2, i3 = state.rng.choice(others, size=3, replace=False)
    e = state.rng.random(state.problem.space.n) < state.config.e_prob
    y = agent.x.copy()
    y[e] = agent.x[e] + (pop[i1].x[e] - agent.x[e]) + state.config.F * (
        pop[i3].x[e] - pop[i2].x[e]
    )
    space = state.problem.space
    out = (y < space.lower) | (y > space.upper)
    if np.any(out):
        y[out] = space.lower[out] + state.rng.random(int(out.sum())) * space.span[out]
    return y


def _quadratic_sample(state, agent, y_s, f_s, y_s1, f_s1, try_candidate) -> None:
    """One-dimensional quadratic model of the modified dominance index
    along y_s1 - y_s; samples its minimum when the parabola is convex.
    """
    space = state.problem.space
    direction = y_s1 - y_s
    dir_norm = float(np.linalg.norm(direction))
    if dir_norm < 1e-14:
        return
    sigma_x = float(np.linalg.norm(agent.x - y_s)) / dir_norm
    if float(np.dot(agent.x - y_s, direction)) < 0.0:
        sigma_x = -sigma_x
    if abs(sigma_x) < 1e-12 or abs(sigma_x - 1.0) < 1e-12:
        return
    m = float(agent.f.size)
    g0 = float(modified_dominance_index(agent.f, f_s)) if is_feasible(f_s) else m
    g1 = float(modified_dominance_index(agent.f, f_s1)) if is_feasible(f_s1) else m
    gx = 0.0
    # f_l(0)=g0, f_l(1)=g1, f_l(sigma_x)=gx with a3=g0.
    a1 = ((gx - g0) - sigma_x * (g1 - g0)) / (sigma_x * sigma_x - sigma_x)
    a2 = (g1 - g0) - a1
    if a1 <= 1e-12:
        return
    sigma_min = -a2 / (2.0 * a1)
    step = sigma_min * direction
    # A near-zero displacement would re-evaluate (almost) the current
    # sample; treat it as degenerate like the flat-parabola case.
    if float(np.linalg.norm(step)) < 1e-6 * float(np.linalg.norm(space.span)):
        return
    y_s2 = y_s + _max_step(y_s, step, space) * step
    try_candidate(y_s2)


def _individualistic(state: MacsState, agent: Agent, self_index: int):
    """Algorithm-2 cycle for one P^l agent.

    Returns (moved, local_archive_entries) where entries are (x, f)
    pairs.
    """
    space = state.problem.space
    budget = agent.s
    spent = 0
    stop = False
    cands: list = []  # (x, f)
    teleports: set = set()  # candidate indices from the differential move

    f_ref = agent.f.copy()

    # Criteria-space scale for judging whether a move is large enough
    # to count as an improvement for the adaptation.
    if len(state.archive) >= 2:
        f_scale = state.archive.f.max(axis=0) - state.archive.f.min(axis=0)
    else:
        f_scale = np.zeros(f_ref.size)
    f_scale = np.where(f_scale > 0, f_scale, np.maximum(np.abs(f_ref), 1.0))

    def significant(f) -> bool:
        return bool(
            np.any(np.abs(f - f_ref) > state.config.improve_tol * f_scale)
        )

    def try_candidate(y):
        # The cycle ends at the first candidate that is at least as
        # good as the agent in every component and strictly better in
        # some (modified dominance index 0); everything else feeds the
        # local archive.
        nonlocal spent, stop
        f = state.evaluate(y)
        spent += 1
        cands.append((y, f))
        if (
            is_feasible(f)
            and np.any(f != f_ref)
            and modified_dominance_index(f_ref, f) == 0
        ):
            stop = True

    # Inertia: follow the last improvement, or the attraction
    # override.
    delta = None
    if agent.delta_override is not None:
        delta = agent.delta_override
        agent.delta_override = None
    elif agent.improved and agent.delta_i is not None:
        delta = agent.delta_i
    if delta is not None and np.any(delta != 0.0) and spent < budget:
        step = _max_step(agent.x, delta, space) * delta
        # A collapsed step (agent pinned against a bound along the
        # improvement direction) is treated like a zero direction.
        if float(np.linalg.norm(step)) >= 1e-12 * float(np.linalg.norm(space.span)):
            try_candidate(agent.x + step)

    # Differential, then the random sample with line search; the
    # sequence repeats until the budget runs out or a candidate
    # dominates.
    while not stop and spent < budget:
        # The differential move needs three partners; with a tiny
        # population the cycle falls through to the neighborhood
        # sampling directly.
        if len(state.population) >= 4:
            try_candidate(_differential_sample(state, agent, self_index))
            teleports.add(len(cands) - 1)
            if stop or spent >= budget:
                break

        y_s = _neighborhood_sample(state, agent)
        try_candidate(y_s)
        f_s = cands[-1][1]
        if stop or spent >= budget:
            break

        # Extrapolate on the side of the better of (agent, y_s): the
        # sample is better when it improves more components than it
        # worsens, ties going to the agent.
        better = np.sum(f_s < agent.f) > np.sum(f_s > agent.f)
        r = state.rng.random()
        if better:
            step = (1.0 + r) * (y_s - agent.x)
        else:
            step = -r * (y_s - agent.x)
        y_s1 = agent.x + _max_step(agent.x, step, space) * step
        try_candidate(y_s1)
        f_s1 = cands[-1][1]
        if stop or spent >= budget:
            break

        _quadratic_sample(state, agent, y_s, f_s, y_s1, f_s1, try_candidate)

    # Selection: prefer the candidate that is at least as good in every
    # component with the largest criteria-space displacement, and fall
    # back to sliding onto a mutually nondominated rho-local candidate
    # so the agent diffuses along the trade-off surface while rho keeps
    # contracting.
    moved = False
    best = None
    best_disp = -1.0
    for i, (y, f) in enumerate(cands):
        if (
            is_feasible(f)
            and np.any(f != f_ref)
            and modified_dominance_index(f_ref, f) == 0
        ):
            disp = (
                float(np.linalg.norm(f - f_ref))
                if is_feasible(f_ref)
                else np.inf
            )
            if disp > best_disp:
                best, best_disp = i, disp
    if best is not None:
        agent.x = np.asarray(cands[best][0], dtype=float)
        agent.f = cands[best][1]
        moved = significant(agent.f)
    if best is None and cands:
        # Differential candidates are excluded from the sliding
        # fallback: their step size is set by the population spread,
        # not by rho, and sliding onto them would turn the local cycle
        # into a global random walk.
        fs = np.array([f for _, f in cands] + [f_ref])
        d_idx = dominance_index(np.where(np.isfinite(fs), fs, np.inf))
        for i, (y, f) in enumerate(cands):
            if i in teleports or d_idx[i] != 0:
                continue
            if not is_feasible(f) or not np.any(f != f_ref):
                continue
            if modified_dominance_index(f, f_ref) == 0:
                # The agent is at least as good as this candidate in
                # every component; sliding there would gain nothing.
                continue
            disp = (
                float(np.linalg.norm(f - f_ref))
                if is_feasible(f_ref)
                else np.inf
            )
            if disp > best_disp:
                best, best_disp = i, disp
        if best is not None:
            agent.x = np.asarray(cands[best][0], dtype=float)
            agent.f = cands[best][1]

    # Local archive: nondominated leftovers plus one representative per
    # partial-dominance level, judged against the pre-move position.
    leftovers = [
        (y, f) for i, (y, f) in enumerate(cands) if i != best and is_feasible(f)
    ]
    local: list = []
    if leftovers:
        m = f_ref.size
        levels: dict = {}
        for y, f in leftovers:
            ihat = modified_dominance_index(f_ref, f) if is_feasible(f_ref) else 0
            if ihat == 0:
                local.append((y, f))
            elif 0 < ihat < m:
                levels.setdefault(ihat, []).append((y, f))
        for group in levels.values():
            pick = select_partially_dominated(
                f_ref, np.array([f for _, f in group])
            )
            local.append(group[pick])
    return moved, local


def _adapt(agent: Agent, improved: bool, config: MacsConfig, s_max: int) -> None:
    if improved:
        agent.rho = min(1.0, 2.0 * agent.rho)
        agent.s = min(s_max, agent.s + 1)
        agent.fail_streak = 0
    else:
        agent.rho = agent.rho / 2.0
        agent.s = max(1, agent.s - 1)
        agent.fail_streak += 1
        if agent.rho < config.rho_tol:
            if agent.fail_streak >= 2:
                agent.rho = max(agent.rho, config.rho_min)
            else:
                agent.rho = config.rho_tol


def _bubble_restart(state: MacsState) -> None:
    # rho only reaches rho_min after repeated failures at the
    # contraction limit, so it doubles as the exhaustion signal: the
    # agent has nothing left to sample and is recycled. Half the
    # recycled agents restart from a fresh uniform sample; the other
    # half respawn on the least-crowded archive element so exhausted
    # search effort is redirected at the thinnest part of the front.
    for agent in state.population:
        if agent.rho <= state.config.rho_min:
            if len(state.archive) >= 3 and state.rng.random() < 0.75:
                ranked = np.argsort(
                    -crowding_values(state.archive.f), kind="stable"
                )
                t = int(ranked[state.rng.integers(min(len(ranked), 8))])
                agent.x = state.archive.x[t].copy()
                agent.f = state.archive.f[t].copy()
                agent.x_prev = agent.x.copy()
                agent.f_prev = agent.f.copy()
                agent.delta_i = None
                agent.rho = 1.0
                agent.s = state.s_max
                agent.improved = False
                agent.fail_streak = 0
                agent.delta_override = None
            else:
                _reinit_agent(state, agent)


def _attract(state: MacsState) -> None:
    if len(state.archive) == 0:
        return
    order, idx = _ranking(state.population)
    targets = np.argsort(-crowding_values(state.archive.f), kind="stable")
    slot = 0
    # Worst agents first; entries assigned least-crowded first, cycling.
    for i in reversed(order):
        if idx[i] == 0:
            continue
        agent = state.population[i]
        t = targets[slot % len(targets)]
        slot += 1
        x_a = state.archive.x[t]
        # The dominated agent takes over the archive element's position
        # (no evaluation needed, its objectives are stored) and keeps an
        # inertia kick pointing from its old position to the new one.
        agent.delta_override = state.rng.random() * (x_a - agent.x)
        agent.x = x_a.copy()
        agent.f = state.archive.f[t].copy()
        agent.improved = True


def _merge_archive(state: MacsState, extra) -> None:
    xs = [state.archive.x] + [np.atleast_2d(x) for x, _ in extra]
    fs = [state.archive.f] + [np.atleast_2d(f) for _, f in extra]
    merged = Archive(np.vstack(xs), np.vstack(fs), state.config.archive_capacity)
    state.archive = prune_archive(
        merged, state.problem.space, state.config.w_c, state.config.archive_capacity
    )


def run(problem: ProblemDefinition, config: MacsConfig) -> RunReport:
    """Execute one seeded MACS run and return its report."""
    t_start = time.perf_counter()
    space = problem.space
    s_max = config.s_max if config.s_max is not None else space.n
    rng = np.random.default_rng(config.seed)
    state = MacsState(
        problem=problem,
        config=config,
        population=[],
        archive=Archive.empty(space.n, problem.n_objectives, config.archive_capacity),
        rng=rng,
        s_max=max(1, s_max),
    )

    state.phase = "init"
    for _ in range(config.n_pop):
        x = space.sample(rng)
        f = state.evaluate(x)
        state.population.append(
            Agent(x=x, f=f, x_prev=x.copy(), rho=1.0, s=state.s_max)
        )
        state.population[-1].f_prev = f.copy()

    trace = []
    while state.n_eval < config.max_evals:
        state.generation += 1
        state.phase_counts = {}
        state.sample_pool = []
        pop = state.population
        for agent in pop:
            # Improvement and inertia direction reflect the whole
            # previous generation (collaborative and individualistic
            # moves included).
            agent.improved = (
                agent.f_prev is not None
                and is_feasible(agent.f)
                and dominates(agent.f, agent.f_prev)
            )
            agent.delta_i = agent.x - agent.x_prev
            agent.x_prev = agent.x.copy()
            agent.f_prev = agent.f.copy()

        state.phase = "collaborative"
        _collaborative(state)

        state.phase = "restart_crowding"
        _restart_crowded(state)

        order, _ = _ranking(pop)
        n_local = config.n_local

        state.phase = "mutation"
        for rank_pos in range(n_local, len(pop)):
            _mutation(state, pop[order[rank_pos]], rank_pos)

        local_entries = []
        if config.use_individualistic:
            state.phase = "individualistic"
            for rank_pos in range(n_local):
                agent = pop[order[rank_pos]]
                moved, local = _individualistic(state, agent, int(order[rank_pos]))
                _adapt(agent, moved, config, state.s_max)
                local_entries.extend(local)

        state.phase = "archive"
        entries = (
            local_entries
            + state.sample_pool
            + [(a.x, a.f) for a in pop if is_feasible(a.f)]
        )
        if entries:
            _merge_archive(state, entries)

        state.phase = "restart_bubble"
        _bubble_restart(state)

        state.phase = "attraction"
        if config.use_attraction:
            _attract(state)

        trace.append((len(state.archive), dict(state.phase_counts)))

    final = [(a.x, a.f) for a in state.population if is_feasible(a.f)]
    if final:
        _merge_archive(state, final)

    return RunReport(
        archive_x=state.archive.x.copy(),
        archive_f=state.archive.f.copy(),
        n_eval=state.n_eval,
        seed=config.seed,
        config=config,
        problem_name=problem.name,
        trace=tuple(trace),
        wall_time=time.perf_counter() - t_start,
    )
