"""Analytic planetary ephemerides from mean Keplerian elements.

Positions and velocities come from a shipped table of J2000 mean
elements with linear secular rates (see ``planets.txt``). Accuracy is
at the arcminute / thousands-of-km level, which is adequate for
preliminary trajectory design.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from ..core import ContractViolation
from .kepler import StateVector, solve_kepler

__all__ = ["MU_SUN", "AU_KM", "PlanetData", "planet_data", "ephemeris"]

MU_SUN = 1.32712440018e11  # km^3/s^2
AU_KM = 1.495978707e8

_DEG = math.pi / 180.0
_TWO_PI = 2.0 * math.pi
# The element table epoch is MJD2000 = 0.0 (2000 Jan 1.0).
_EPOCH_MJD2000 = 0.0


@dataclass(frozen=True)
class PlanetData:
    name: str
    elements: tuple  # (a_au, e, i, raan, argp, M0) angles in deg
    rates: tuple     # same order, per Julian century
    mu: float        # km^3/s^2
    radius: float    # km


def _load_table() -> dict[str, PlanetData]:
    text = resources.files(__package__).joinpath("planets.txt").read_text()
    table: dict[str, PlanetData] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        name = parts[0].lower()
        vals = [float(p) for p in parts[1:]]
        table[name] = PlanetData(
            name=name,
            elements=tuple(vals[0:6]),
            rates=tuple(vals[6:12]),
            mu=vals[12],
            radius=vals[13],
        )
    return table


_TABLE = _load_table()


def planet_data(planet: str) -> PlanetData:
    key = planet.lower()
    if key not in _TABLE:
        raise ContractViolation(f"unknown planet {planet!r}")
    return _TABLE[key]


def _state_scalar(body: PlanetData, epoch_mjd2000: float):
    t = (epoch_mjd2000 - _EPOCH_MJD2000) / 36525.0
    a0, e0, i0, o0, w0, m0 = body.elements
    da, de, di, do_, dw, dm = body.rates
    a = (a0 + da * t) * AU_KM
    e = e0 + de * t
    inc = (i0 + di * t) * _DEG
    raan = (o0 + do_ * t) * _DEG
    argp = (w0 + dw * t) * _DEG
    M = math.fmod((m0 + dm * t) * _DEG, _TWO_PI)

    E = solve_kepler(M, e)
    cos_e, sin_e = math.cos(E), math.sin(E)
    b = math.sqrt(1.0 - e * e)
    # Perifocal coordinates.
    xp = a * (cos_e - e)
    yp = a * b * sin_e
    r = a * (1.0 - e * cos_e)
    n = math.sqrt(MU_SUN / (a * a * a))
    vxp = -a * n * sin_e / (1.0 - e * cos_e)
    vyp = a * b * n * cos_e / (1.0 - e * cos_e)

    co, so = math.cos(raan), math.sin(raan)
    cw, sw = math.cos(argp), math.sin(argp)
    ci, si = math.cos(inc), math.sin(inc)
    # Rotation perifocal -> heliocentric ecliptic: Rz(raan) Rx(inc) Rz(argp).
    r11 = co * cw - so * sw * ci
    r12 = -co * sw - so * cw * ci
    r21 = so * cw + co * sw * ci
    r22 = -so * sw + co * cw * ci
    r31 = sw * si
    r32 = cw * si
    return (
        r11 * xp + r12 * yp,
        r21 * xp + r22 * yp,
        r31 * xp + r32 * yp,
        r11 * vxp + r12 * vyp,
        r21 * vxp + r22 * vyp,
        r31 * vxp + r32 * vyp,
        r,
    )


def ephemeris(planet: str, epoch_mjd2000: float) -> StateVector:
    """Heliocentric state of a planet at an MJD2000 epoch."""
    if not -36525.0 <= epoch_mjd2000 <= 36525.0:
        raise ContractViolation("epoch outside the supported +-100 yr window")
    body = planet_data(planet)
    out = _state_scalar(body, float(epoch_mjd2000))
    return StateVector(np.array(out[:3]), np.array(out[3:6]))
