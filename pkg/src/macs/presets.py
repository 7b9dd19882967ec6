"""Named experiment presets.

Each preset bundles the published settings for one test case: the
problem, the population and local-fraction sizes, and the evaluation
budget. The shared constants (w_c, rho_tol, rho_min, archive capacity)
are identical across presets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ProblemDefinition
from .engine import MacsConfig
from .problems import analytic_problem
from .astro import cassini_problem, three_impulse_problem, two_impulse_problem

__all__ = ["Preset", "PRESETS", "get_preset", "make_problem", "preset_config"]


@dataclass(frozen=True)
class Preset:
    name: str
    problem: str
    n_pop: int
    f_e: float
    max_evals: int
    tol_conv: float | None = None
    tol_spr: float | None = None
    description: str = ""


PRESETS = {
    p.name: p
    for p in [
        Preset("scha", "scha", 2, 1 / 2, 1200,
               description="biobjective benchmark, 1-D decision space"),
        Preset("deb", "deb", 2, 1 / 2, 4000,
               description="biobjective benchmark, disconnected front"),
        Preset("deb2", "deb2", 2, 1 / 2, 3200,
               description="biobjective benchmark, multimodal g"),
        Preset("zdt2", "zdt2", 3, 2 / 3, 25000,
               description="30-D concave-front benchmark"),
        Preset("zdt4", "zdt4", 4, 3 / 4, 25000,
               description="10-D multimodal benchmark"),
        Preset("zdt6", "zdt6", 4, 3 / 4, 25000,
               description="10-D biased-density benchmark"),
        Preset("two_impulse", "two_impulse", 15, 1 / 3, 2000,
               tol_conv=0.1, tol_spr=2.5,
               description="LEO to elliptical orbit, two impulses"),
        Preset("three_impulse", "three_impulse", 15, 1 / 3, 30000,
               tol_conv=5.0, tol_spr=5.0,
               description="LEO to GEO, three impulses"),
        Preset("cassini", "cassini", 15, 1 / 3, 600000,
               description="Earth to Saturn multi-gravity-assist"),
        Preset("cassini_180k", "cassini", 15, 1 / 3, 180000,
               description="Cassini case, reduced budget"),
        Preset("cassini_300k", "cassini", 15, 1 / 3, 300000,
               description="Cassini case, intermediate budget"),
    ]
}

_TRAJECTORY_FACTORIES = {
    "two_impulse": two_impulse_problem,
    "three_impulse": three_impulse_problem,
    "cassini": cassini_problem,
}


def get_preset(name: str) -> Preset:
    key = name.lower()
    if key not in PRESETS:
        known = ", ".join(sorted(PRESETS))
        raise KeyError(f"unknown preset {name!r}; available: {known}")
    return PRESETS[key]


def make_problem(name: str, **overrides) -> ProblemDefinition:
    """Instantiate a problem by name (analytic or trajectory)."""
    key = name.lower()
    if key in _TRAJECTORY_FACTORIES:
        return _TRAJECTORY_FACTORIES[key](**overrides)
    if overrides:
        raise ValueError(f"problem {name!r} takes no overrides")
    return analytic_problem(key)


def preset_config(preset: Preset, seed: int = 0, **overrides) -> MacsConfig:
    """MacsConfig for a preset, with optional field overrides."""
    fields = dict(
        n_pop=preset.n_pop,
        f_e=preset.f_e,
        max_evals=preset.max_evals,
        seed=seed,
    )
    fields.update(overrides)
    return MacsConfig(**fields)
