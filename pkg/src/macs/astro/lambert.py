"""Single-revolution Lambert solver.

Iterates in the universal Lancaster-Blanchard variable x with a
Householder scheme, which stays well conditioned even for transfer
angles approaching a full revolution (needed by resonant gravity-assist
legs). Zero-revolution solutions only; transfer direction selectable as
prograde or retrograde about the +z axis.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import hyp2f1

__all__ = ["LambertError", "lambert"]


class LambertError(ValueError):
    """Degenerate geometry or solver non-convergence."""


def _cross3(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # np.cross carries axis-handling overhead that dominates profiles
    # of the trajectory objectives; these are always 3-vectors.
    return np.array(
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    )


def _hyp2f1b(x: float) -> float:
    """Gauss hypergeometric 2F1(3, 1; 5/2; x) for x < 1."""
    if x >= 1.0:
        return math.inf
    return float(hyp2f1(3.0, 1.0, 2.5, x))


def _compute_y(x: float, ll: float) -> float:
    return math.sqrt(1.0 - ll * ll * (1.0 - x * x))

def _compute_psi(x: float, y: float, ll: float) -> float:
    """Auxiliary angle: eccentric-anomaly difference flavor of x."""
    if -1.0 <= x < 1.0:
        return math.acos(max(-1.0, min(1.0, x * y + ll * (1.0 - x * x))))
    if x > 1.0:
        return math.asinh((y - x * ll) * math.sqrt(x * x - 1.0))
    return 0.0


def _tof(x: float, ll: float) -> float:
    """Nondimensional time of flight for zero revolutions."""
    if 0.6 < x * x < 1.4:
        # Battin series near the parabolic point, where the closed form
        # loses precision.
        eta = _compute_y(x, ll) - ll * x
        s1 = (1.0 - ll - x * eta) * 0.5
        q = 4.0 / 3.0 * _hyp2f1b(s1)
        return (eta**3 * q + 4.0 * ll * eta) * 0.5
    y = _compute_y(x, ll)
    psi = _compute_psi(x, y, ll)
    return (psi / math.sqrt(abs(1.0 - x * x)) - x + ll * y) / (1.0 - x * x)


def _find_x(target_t: float, ll: float, rtol: float, max_iter: int) -> float:
    # Initial guess from the T(0) and parabolic T(1) anchors.
    t00 = math.acos(ll) + ll * math.sqrt(1.0 - ll * ll)
    t1 = 2.0 / 3.0 * (1.0 - ll**3)
    if target_t >= t00:
        x = (t00 / target_t) ** (2.0 / 3.0) - 1.0
    elif target_t < t1:
        x = 5.0 / 2.0 * t1 / target_t * (t1 - target_t) / (1.0 - ll**5) + 1.0
    else:
        x = (t00 / target_t) ** (math.log2(t1 / t00)) - 1.0

    prev_abs_f = math.inf
    for _ in range(max_iter):
        y = _compute_y(x, ll)
        t = _tof(x, ll)
        f = t - target_t
        if abs(f) <= rtol * max(target_t, 1e-12):
            return x
        # The iteration normally contracts at a high order; a small
        # residual that stops shrinking means the flight-time evaluation
        # has hit its noise floor (near-full-revolution geometry), so
        # the current iterate is as good as it gets.
        if abs(f) <= 1e-6 * target_t and abs(f) >= 0.5 * prev_abs_f:
            return x
        prev_abs_f = abs(f)
        one_m_x2 = 1.0 - x * x
        dt = (3.0 * t * x - 2.0 + 2.0 * ll**3 * x / y) / one_m_x2
        ddt = (3.0 * t + 5.0 * x * dt + 2.0 * (1.0 - ll * ll) * ll**3 / y**3) / one_m_x2
        dddt = (7.0 * x * ddt + 8.0 * dt - 6.0 * (1.0 - ll * ll) * ll**5 * x / y**5) / one_m_x2
        # Householder third-order step.
        denom = dt * (dt * dt - f * ddt) + dddt * f * f / 6.0
        if denom == 0.0:
            break
        x_new = x - f * (dt * dt - f * ddt / 2.0) / denom
        if x_new <= -1.0:
            x_new = 0.5 * (x - 1.0)
        # When the flight-time evaluation is noise limited (near-full
        # revolution geometry), the residual test above cannot trigger,
        # but the iterate itself goes stationary. Accept it then, with
        # a loose sanity bound on the residual.
        if abs(x_new - x) <= 1e-12 * max(1.0, abs(x)):
            if abs(f) <= 1e-6 * max(target_t, 1e-12):
                return x_new
            raise LambertError("Lambert iteration did not converge")
        x = x_new
    if abs(_tof(x, ll) - target_t) <= 1e-6 * max(target_t, 1e-12):
        return x
    raise LambertError("Lambert iteration did not converge")


def lambert(
    r1,
    r2,
    tof: float,
    mu: float,
    prograde: bool = True,
    rtol: float = 1e-12,
    max_iter: int = 60,
):
    """Solve the two-point boundary value problem.

    Returns ``(v1, v2)`` in km/s. Raises :class:`LambertError` for
    non-positive times of flight, transfer angles within ~1e-6 rad of 0
    or pi, or failure to converge.
    """
    if tof <= 0:
        raise LambertError("time of flight must be positive")
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    r1n = math.sqrt(float(r1 @ r1))
    r2n = math.sqrt(float(r2 @ r2))
    if r1n == 0.0 or r2n == 0.0:
        raise LambertError("zero-radius endpoint")

    cos_dt = float(r1 @ r2) / (r1n * r2n)
    cos_dt = max(-1.0, min(1.0, cos_dt))
    cross = _cross3(r1, r2)
    cross_n = math.sqrt(float(cross @ cross))
    dtheta = math.acos(cos_dt)
    if prograde:
        if cross[2] < 0.0:
            dtheta = 2.0 * math.pi - dtheta
    else:
        if cross[2] >= 0.0:
            dtheta = 2.0 * math.pi - dtheta
    if min(dtheta, abs(math.pi - dtheta)) < 1e-6 or cross_n == 0.0:
        raise LambertError("transfer angle too close to 0 or pi")

    chord = math.sqrt(r1n * r1n + r2n * r2n - 2.0 * r1n * r2n * cos_dt)
    s = 0.5 * (r1n + r2n + chord)
    ll = math.sqrt(max(0.0, 1.0 - chord / s))
    if dtheta > math.pi:
        ll = -ll
    target_t = math.sqrt(2.0 * mu / s**3) * tof

    x = _find_x(target_t, ll, rtol, max_iter)
    y = _compute_y(x, ll)

    gamma = math.sqrt(mu * s / 2.0)
    rho = (r1n - r2n) / chord
    sigma = math.sqrt(max(0.0, 1.0 - rho * rho))
    vr1 = gamma * ((ll * y - x) - rho * (ll * y + x)) / r1n
    vr2 = -gamma * ((ll * y - x) + rho * (ll * y + x)) / r2n
    vt1 = gamma * sigma * (y + ll * x) / r1n
    vt2 = gamma * sigma * (y + ll * x) / r2n

    i_r1 = r1 / r1n
    i_r2 = r2 / r2n
    i_h = cross / cross_n
    # Orient the angular-momentum axis with the requested direction of
    # motion so the tangential unit vectors point along the transfer.
    if prograde:
        if i_h[2] < 0.0:
            i_h = -i_h
    else:
        if i_h[2] >= 0.0:
            i_h = -i_h
    i_t1 = _cross3(i_h, i_r1)
    i_t2 = _cross3(i_h, i_r2)
    v1 = vr1 * i_r1 + vt1 * i_t1
    v2 = vr2 * i_r2 + vt2 * i_t2
    return v1, v2
