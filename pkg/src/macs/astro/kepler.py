"""Kepler's equation and two-body propagation (elliptic orbits).

Scalar math on purpose: these routines sit in the inner loop of the
trajectory objective functions and are called millions of times per
campaign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["StateVector", "UnsupportedRegime", "solve_kepler", "propagate_kepler"]

_TWO_PI = 2.0 * math.pi


class UnsupportedRegime(ValueError):
    """Propagation requested for a non-elliptic orbit."""


@dataclass(frozen=True)
class StateVector:
    """Cartesian position (km) and velocity (km/s)."""

    r: np.ndarray
    v: np.ndarray


def solve_kepler(M: float, e: float, tol: float = 1e-13, max_iter: int = 100) -> float:
    """Eccentric anomaly E with E - e*sin(E) = M, for 0 <= e < 1.

    Newton iteration with a bisection fallback; the residual of the
    returned value is below 1e-12.
    """
    if not 0.0 <= e < 1.0:
        raise ValueError("eccentricity must be in [0, 1)")
    if e == 0.0:
        return M
    # Reduce to [-pi, pi] and restore the revolution count at the end.
    k = math.floor((M + math.pi) / _TWO_PI)
    m = M - k * _TWO_PI
    E = m + e * math.sin(m)
    for _ in range(max_iter):
        f = E - e * math.sin(E) - m
        if abs(f) < tol:
            return E + k * _TWO_PI
        E -= f / (1.0 - e * math.cos(E))
    # Newton stalled (practically unreachable for e < 1): bisect.
    lo, hi = m - e, m + e
    for _ in range(200):
        E = 0.5 * (lo + hi)
        f = E - e * math.sin(E) - m
        if abs(f) < tol:
            return E + k * _TWO_PI
        if f < 0:
            lo = E
        else:
            hi = E
    raise RuntimeError("Kepler solver did not converge")


def _propagate_scalar(rx, ry, rz, vx, vy, vz, dt, mu):
    r0 = math.sqrt(rx * rx + ry * ry + rz * rz)
    v2 = vx * vx + vy * vy + vz * vz
    alpha = 2.0 / r0 - v2 / mu
    if alpha <= 1e-12 / r0:
        raise UnsupportedRegime("propagation supports elliptic orbits only")
    a = 1.0 / alpha
    n = math.sqrt(mu / (a * a * a))
    sigma0 = (rx * vx + ry * vy + rz * vz) / math.sqrt(mu)
    sqrt_a = math.sqrt(a)
    c1 = sigma0 / sqrt_a          # e*sin(E0)
    c2 = 1.0 - r0 / a             # e*cos(E0)
    dM = n * dt

    # Kepler's equation in the eccentric-anomaly difference dE:
    #   dM = dE + c1*(1 - cos dE) - c2*sin dE
    dE = dM
    for _ in range(50):
        sin_de = math.sin(dE)
        cos_de = math.cos(dE)
        f = dE + c1 * (1.0 - cos_de) - c2 * sin_de - dM
        if abs(f) < 1e-13:
            break
        dE -= f / (1.0 + c1 * sin_de - c2 * cos_de)
    else:
        lo, hi = dM - _TWO_PI, dM + _TWO_PI
        for _ in range(200):
            dE = 0.5 * (lo + hi)
            f = dE + c1 * (1.0 - math.cos(dE)) - c2 * math.sin(dE) - dM
            if abs(f) < 1e-13:
                break
            if f < 0:
                lo = dE
            else:
                hi = dE
        sin_de = math.sin(dE)
        cos_de = math.cos(dE)

    one_m_cos = 1.0 - cos_de
    lf = 1.0 - (a / r0) * one_m_cos
    lg = dt - (1.0 / n) * (dE - sin_de)
    nrx = lf * rx + lg * vx
    nry = lf * ry + lg * vy
    nrz = lf * rz + lg * vz
    r1 = math.sqrt(nrx * nrx + nry * nry + nrz * nrz)
    lfd = -math.sqrt(mu * a) * sin_de / (r0 * r1)
    lgd = 1.0 - (a / r1) * one_m_cos
    nvx = lfd * rx + lgd * vx
    nvy = lfd * ry + lgd * vy
    nvz = lfd * rz + lgd * vz
    return (nrx, nry, nrz, nvx, nvy, nvz)


def propagate_kepler(state: StateVector, dt: float, mu: float) -> StateVector:
    """Advance an elliptic two-body state by ``dt`` seconds."""
    r = np.asarray(state.r, dtype=float)
    v = np.asarray(state.v, dtype=float)
    out = _propagate_scalar(r[0], r[1], r[2], v[0], v[1], v[2], float(dt), float(mu))
    return StateVector(np.array(out[:3]), np.array(out[3:]))
