"""Impulsive trajectory design problems.

Three biobjective cases: a two-impulse LEO to Molniya-like transfer, a
three-impulse LEO to GEO transfer, and a multi-gravity-assist transfer
to Saturn (Earth-Venus-Venus-Earth-Jupiter-Saturn). Every evaluator is
pure and total: geometrically infeasible inputs return the infeasible
sentinel instead of raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..core import ContractViolation, ProblemDefinition, SearchSpace, infeasible_objectives
from .ephemeris import MU_SUN, ephemeris, planet_data
from .kepler import StateVector, solve_kepler
from .lambert import LambertError, lambert
from .swingby import SwingbyError, powered_swingby

__all__ = [
    "TwoImpulseProblem",
    "ThreeImpulseProblem",
    "CassiniProblem",
    "two_impulse_problem",
    "three_impulse_problem",
    "cassini_problem",
]

MU_EARTH = 3.9860e5  # km^3/s^2


def _circular_state(radius: float, mu: float, phase: float):
    """Position/velocity on a counterclockwise circular orbit."""
    vc = math.sqrt(mu / radius)
    c, s = math.cos(phase), math.sin(phase)
    r = np.array([radius * c, radius * s, 0.0])
    v = np.array([-vc * s, vc * c, 0.0])
    return r, v


def _ellipse_state(a: float, e: float, mu: float, t: float, phase: float):
    """State on a coplanar ellipse with periapsis passage at t=0 and
    argument of periapsis ``phase``."""
    n = math.sqrt(mu / (a * a * a))
    E = solve_kepler(n * t, e)
    b = math.sqrt(1.0 - e * e)
    den = 1.0 - e * math.cos(E)
    xp = a * (math.cos(E) - e)
    yp = a * b * math.sin(E)
    vxp = -a * n * math.sin(E) / den
    vyp = a * b * n * math.cos(E) / den
    c, s = math.cos(phase), math.sin(phase)
    r = np.array([c * xp - s * yp, s * xp + c * yp, 0.0])
    v = np.array([c * vxp - s * vyp, s * vxp + c * vyp, 0.0])
    return r, v


def _norm(v) -> float:
    return math.sqrt(float(v @ v))


@dataclass(frozen=True)
class TwoImpulseProblem:
    """Two-impulse transfer, circular LEO to a Molniya-like ellipse.

    Decision vector [t0, tf]: departure epoch and arrival epoch. The
    arrival target is a virtual spacecraft on the ellipse with periapsis
    passage at t=0. Objectives: (transfer time, total delta-v).
    """

    mu: float = MU_EARTH
    r0: float = 6721.0
    a_target: float = 26610.0
    e_target: float = 0.667
    t0_bounds: tuple = (0.0, 10.8)
    tf_bounds: tuple = (0.03, 10.8)
    time_scale: float = 3600.0  # seconds per decision-time unit (hours)
    plane_rotation: float = 0.0  # rotates all in-plane geometry, rad

    @property
    def space(self) -> SearchSpace:
        return SearchSpace(
            np.array([self.t0_bounds[0], self.tf_bounds[0]]),
            np.array([self.t0_bounds[1], self.tf_bounds[1]]),
        )

    def objectives(self, x) -> np.ndarray:
        t0, tf = float(x[0]), float(x[1])
        if tf <= t0 + 0.03:
            return infeasible_objectives(2)
        t0s, tfs = t0 * self.time_scale, tf * self.time_scale
        n0 = math.sqrt(self.mu / self.r0**3)
        r_dep, v_dep = _circular_state(
            self.r0, self.mu, n0 * t0s + self.plane_rotation
        )
        r_arr, v_arr = _ellipse_state(
            self.a_target, self.e_target, self.mu, tfs, self.plane_rotation
        )
        try:
            v1, v2 = lambert(r_dep, r_arr, tfs - t0s, self.mu)
        except LambertError:
            return infeasible_objectives(2)
        dv = _norm(v1 - v_dep) + _norm(v_arr - v2)
        return np.array([tf - t0, dv])


@dataclass(frozen=True)
class ThreeImpulseProblem:
    """Three-impulse transfer, circular LEO to GEO radius.

    Decision vector [t0, t1, r1, theta1, t2]: departure epoch, first
    leg duration, intermediate maneuver point in polar coordinates, and
    second leg duration. Arrival is a rendezvous with a virtual slot on
    the target circle whose phase is zero at t=0. Objectives:
    (transfer time, total delta-v).
    """

    mu: float = MU_EARTH
    r0: float = 7000.0
    rf: float = 42000.0
    bounds_lower: tuple = (0.0, 0.03, 7010.0, 0.01, 0.03)
    bounds_upper: tuple = (1.62, 21.54, 105410.0, 2 * math.pi - 0.01, 21.54)
    time_scale: float = 3600.0
    plane_rotation: float = 0.0

    @property
    def space(self) -> SearchSpace:
        return SearchSpace(np.array(self.bounds_lower), np.array(self.bounds_upper))

    def objectives(self, x) -> np.ndarray:
        t0, t1, r1, theta1, t2 = (float(v) for v in x)
        t0s = t0 * self.time_scale
        t1s = t1 * self.time_scale
        t2s = t2 * self.time_scale
        n0 = math.sqrt(self.mu / self.r0**3)
        nf = math.sqrt(self.mu / self.rf**3)
        r_dep, v_dep = _circular_state(
            self.r0, self.mu, n0 * t0s + self.plane_rotation
        )
        ang1 = theta1 + self.plane_rotation
        r_mid = np.array([r1 * math.cos(ang1), r1 * math.sin(ang1), 0.0])
        r_arr, v_arr = _circular_state(
            self.rf, self.mu, nf * (t0s + t1s + t2s) + self.plane_rotation
        )
        try:
            v1a, v1b = lambert(r_dep, r_mid, t1s, self.mu)
            v2a, v2b = lambert(r_mid, r_arr, t2s, self.mu)
        except LambertError:
            return infeasible_objectives(2)
        dv = _norm(v1a - v_dep) + _norm(v2a - v1b) + _norm(v_arr - v2b)
        return np.array([t1 + t2, dv])


@dataclass(frozen=True)
class CassiniProblem:
    """Multi-gravity-assist transfer Earth-Venus-Venus-Earth-Jupiter-Saturn.

    Decision vector [t0, T1..T5]: departure epoch (MJD2000 days) and
    the five leg durations (days). The cost objective is the departure
    impulse, the four powered swing-by impulses, and the Saturn orbit
    insertion impulse, plus a quadratic penalty on swing-by pericenters
    below their minimum normalized radii. Objectives: (total transfer
    time, augmented delta-v).
    """

    sequence: tuple = ("earth", "venus", "venus", "earth", "jupiter", "saturn")
    bounds_lower: tuple = (-1000.0, 30.0, 100.0, 30.0, 400.0, 1000.0)
    bounds_upper: tuple = (0.0, 400.0, 470.0, 400.0, 2000.0, 6000.0)
    rp_min: tuple = (1.0496, 1.0496, 1.0627, 9.3925)
    penalty_weights: tuple = (1.0, 1.0, 1.0, 1.0)
    # Arrival: insertion burn at the pericenter of a capture ellipse
    # around Saturn. Set arrival_rp to None for a plain velocity match.
    arrival_rp: float | None = 108950.0
    arrival_e: float = 0.98

    @property
    def space(self) -> SearchSpace:
        return SearchSpace(np.array(self.bounds_lower), np.array(self.bounds_upper))

    def objectives(self, x) -> np.ndarray:
        t0 = float(x[0])
        legs = [float(v) for v in x[1:6]]
        epochs = [t0]
        for leg in legs:
            epochs.append(epochs[-1] + leg)
        try:
            states = [ephemeris(p, ep) for p, ep in zip(self.sequence, epochs)]
            v_legs = []
            for i in range(5):
                tof = (epochs[i + 1] - epochs[i]) * 86400.0
                v_legs.append(
                    lambert(states[i].r, states[i + 1].r, tof, MU_SUN)
                )
            dv = _norm(v_legs[0][0] - states[0].v)
            penalty = 0.0
            for i in range(4):
                body = planet_data(self.sequence[i + 1])
                dv_i, rp_norm = powered_swingby(
                    v_legs[i][1],
                    v_legs[i + 1][0],
                    states[i + 1],
                    body.mu,
                    body.radius,
                )
                dv += dv_i
                violation = max(0.0, self.rp_min[i] - rp_norm)
                penalty += self.penalty_weights[i] * violation * violation
            dv += self._arrival_dv(v_legs[4][1], states[5])
        except (LambertError, SwingbyError):
            return infeasible_objectives(2)
        return np.array([sum(legs), dv + penalty])

    def _arrival_dv(self, v_arr, planet: StateVector) -> float:
        vinf = _norm(np.asarray(v_arr) - planet.v)
        if self.arrival_rp is None:
            return vinf
        mu = planet_data(self.sequence[-1]).mu
        rp = self.arrival_rp
        v_hyp = math.sqrt(vinf * vinf + 2.0 * mu / rp)
        a_cap = rp / (1.0 - self.arrival_e)
        v_ell = math.sqrt(2.0 * mu / rp - mu / a_cap)
        return abs(v_hyp - v_ell)


def _wrap(case, name: str) -> ProblemDefinition:
    space = case.space

    def evaluate(x, _case=case, _space=space):
        if not _space.contains(x):
            raise ContractViolation(f"decision vector outside bounds for {name}")
        return _case.objectives(np.asarray(x, dtype=float))

    return ProblemDefinition(name, space, 2, evaluate)


def two_impulse_problem(**overrides) -> ProblemDefinition:
    return _wrap(TwoImpulseProblem(**overrides), "two_impulse")


def three_impulse_problem(**overrides) -> ProblemDefinition:
    return _wrap(ThreeImpulseProblem(**overrides), "three_impulse")


def cassini_problem(**overrides) -> ProblemDefinition:
    return _wrap(CassiniProblem(**overrides), "cassini")
