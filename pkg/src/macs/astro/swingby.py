"""Powered swing-by in the linked-conic approximation.

The incoming and required outgoing hyperbolic excess velocities fix a
turn angle. The pericenter radius at which the two hyperbolic legs can
share a periapsis while producing that turn is found by root solving;
any speed mismatch is paid as an impulse at pericenter.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["SwingbyError", "powered_swingby"]

#: Upper end of the pericenter search bracket, km.
RP_MAX = 1.0e6


class SwingbyError(ValueError):
    """No admissible pericenter radius for the required turn."""


def _turn_angle(rp: float, a_in: float, a_out: float) -> float:
    return math.asin(1.0 / (1.0 + rp * a_in)) + math.asin(1.0 / (1.0 + rp * a_out))


def powered_swingby(
    v_in,
    v_rout,
    planet_state,
    mu_planet: float,
    planet_radius: float,
):
    """Pericenter impulse and normalized pericenter radius.

    ``v_in`` is the heliocentric arrival velocity, ``v_rout`` the
    required heliocentric departure velocity, ``planet_state`` the
    planet's state. Returns ``(dv, rp_over_radius)``.
    """
    v_in = np.asarray(v_in, dtype=float)
    v_rout = np.asarray(v_rout, dtype=float)
    vp = np.asarray(planet_state.v, dtype=float)
    ix, iy, iz = v_in - vp
    ox, oy, oz = v_rout - vp
    vin2 = ix * ix + iy * iy + iz * iz
    vout2 = ox * ox + oy * oy + oz * oz
    vin = math.sqrt(vin2)
    vout = math.sqrt(vout2)
    if vin == 0.0 or vout == 0.0:
        raise SwingbyError("zero hyperbolic excess velocity")
    cos_d = (ix * ox + iy * oy + iz * oz) / (vin * vout)
    delta = math.acos(max(-1.0, min(1.0, cos_d)))

    a_in = vin2 / mu_planet
    a_out = vout2 / mu_planet

    rp = None
    if delta <= _turn_angle(RP_MAX, a_in, a_out):
        # Little or no turn required: distant pass at the bracket edge.
        rp = RP_MAX
    elif delta > _turn_angle(planet_radius, a_in, a_out):
        raise SwingbyError("required turn angle exceeds the surface-grazing limit")
    else:
        lo, hi = planet_radius, RP_MAX
        # _turn_angle is monotone decreasing in rp.
        for _ in range(200):
            rp = 0.5 * (lo + hi)
            if _turn_angle(rp, a_in, a_out) > delta:
                lo = rp
            else:
                hi = rp
            if hi - lo <= 1e-14 * hi:
                break
        rp = 0.5 * (lo + hi)

    dv = abs(
        math.sqrt(vout2 + 2.0 * mu_planet / rp)
        - math.sqrt(vin2 + 2.0 * mu_planet / rp)
    )
    return dv, rp / planet_radius
