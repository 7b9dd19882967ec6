"""Multi-agent collaborative search for multiobjective optimization.

The package bundles the optimizer itself, six analytic biobjective
benchmarks, three impulsive space-trajectory design problems, front
comparison metrics, and a batch campaign harness with a command line
interface.
"""

from .core import (
    Agent,
    Archive,
    ContractViolation,
    ProblemDefinition,
    SearchSpace,
    dominance_index,
    dominates,
    modified_dominance_index,
    prune_archive,
)
from .engine import MacsConfig, RunReport, run
from .harness import ExperimentConfig, run_campaign
from .metrics import (
    MetricReport,
    build_reference_front,
    dedupe_filter,
    evaluate_fronts,
    m_conv,
    m_spr,
    mean_euclidean_distance,
    success_rate,
)
from .presets import PRESETS, Preset, get_preset, make_problem, preset_config
from .problems import PROBLEM_NAMES, analytic_problem, true_front

__version__ = "0.1.0"

__all__ = [
    "Agent",
    "Archive",
    "ContractViolation",
    "ExperimentConfig",
    "MacsConfig",
    "MetricReport",
    "PRESETS",
    "PROBLEM_NAMES",
    "Preset",
    "ProblemDefinition",
    "RunReport",
    "SearchSpace",
    "analytic_problem",
    "build_reference_front",
    "dedupe_filter",
    "dominance_index",
    "dominates",
    "evaluate_fronts",
    "get_preset",
    "m_conv",
    "m_spr",
    "make_problem",
    "mean_euclidean_distance",
    "modified_dominance_index",
    "preset_config",
    "prune_archive",
    "run",
    "run_campaign",
    "success_rate",
    "true_front",
]
