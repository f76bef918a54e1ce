"""Geometry and channel gains.

The pinched antenna sits on the waveguide directly above its user, so the
large-scale gain reduces to eta / (y^2 + d^2).  The full two-antenna complex
channel vector is kept for cross-validation; the secrecy pipeline consumes
only the simplified gain.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .config import PhysicalConstants


@dataclass(frozen=True)
class Point3:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(map(math.isfinite, (self.x, self.y, self.z))):
            raise ValueError(f"non-finite coordinates: {self}")

    def dist(self, other: "Point3") -> float:
        return math.sqrt((self.x - other.x) ** 2
                         + (self.y - other.y) ** 2
                         + (self.z - other.z) ** 2)


@dataclass(frozen=True)
class PaLayout:
    pa1: Point3
    pa2: Point3
    bs: Point3

    def __post_init__(self):
        for p in (self.pa1, self.pa2, self.bs):
            if p.y != 0.0:
                raise ValueError(f"waveguide points must have y = 0, got {p}")
        if not (self.pa1.z == self.pa2.z == self.bs.z):
            raise ValueError("PAs and BS must share the waveguide height")


def place_pa_for_user(user: Point3, height: float) -> Point3:
    """Pinch the antenna onto the waveguide at the user's x coordinate."""
    if user.z != 0.0:
        raise ValueError(f"users live in the z = 0 plane, got z = {user.z}")
    return Point3(user.x, 0.0, height)


def gain_simplified(user: Point3, pa: Point3, eta: float) -> float:
    """Large-scale channel gain eta / ||user - pa||^2."""
    d2 = (user.x - pa.x) ** 2 + (user.y - pa.y) ** 2 + (user.z - pa.z) ** 2
    if d2 == 0.0:
        raise ValueError("user and antenna positions coincide")
    return eta / d2


def channel_vector(user: Point3, layout: PaLayout,
                   constants: PhysicalConstants) -> tuple[complex, complex]:
    """Complex amplitudes from both antennas to one user.

    Entry n has magnitude sqrt(eta)/dist and phase
    -(2 pi / lambda) dist - theta_n, where theta_n is the in-guide phase
    accumulated between the feed and antenna n (guide wavelength
    lambda / n_eff).  Phases are reduced mod 2 pi before exponentiation.
    """
    from .config import free_space_factor

    eta = free_space_factor(constants)
    lam = constants.wavelength_m
    lam_g = constants.guide_wavelength_m
    entries = []
    for pa in (layout.pa1, layout.pa2):
        dist = user.dist(pa)
        if dist == 0.0:
            raise ValueError("user and antenna positions coincide")
        theta = (2.0 * math.pi / lam_g) * layout.bs.dist(pa)
        phase = math.remainder(-(2.0 * math.pi / lam) * dist - theta, 2.0 * math.pi)
        entries.append((math.sqrt(eta) / dist) * cmath.exp(1j * phase))
    return entries[0], entries[1]
