"""Orbital mechanics kernel and impulsive trajectory problems."""

from .ephemeris import AU_KM, MU_SUN, PlanetData, ephemeris, planet_data
from .kepler import StateVector, UnsupportedRegime, propagate_kepler, solve_kepler
from .lambert import LambertError, lambert
from .swingby import SwingbyError, powered_swingby
from .trajectory import (
    CassiniProblem,
    ThreeImpulseProblem,
    TwoImpulseProblem,
    cassini_problem,
    three_impulse_problem,
    two_impulse_problem,
)

__all__ = [
    "AU_KM",
    "MU_SUN",
    "PlanetData",
    "StateVector",
    "UnsupportedRegime",
    "LambertError",
    "SwingbyError",
    "CassiniProblem",
    "ThreeImpulseProblem",
    "TwoImpulseProblem",
    "ephemeris",
    "planet_data",
    "propagate_kepler",
    "solve_kepler",
    "lambert",
    "powered_swingby",
    "cassini_problem",
    "three_impulse_problem",
    "two_impulse_problem",
]
