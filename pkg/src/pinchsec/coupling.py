"""Coupled-mode power splitting along the waveguide.

A pinched antenna with coupling length L radiates the fraction
F sin^2(kappa L) of the power still guided when the wave reaches it, so the
second antenna sees only what the first left behind.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class CouplingLengths:
    l1: float
    l2: float

    def __post_init__(self):
        if not (self.l1 > 0 and self.l2 > 0):
            raise ValueError(f"coupling lengths must be positive: {self}")


@dataclass(frozen=True)
class PowerCoefficients:
    eps1: float
    eps2: float


@dataclass(frozen=True)
class EqualPower:
    """Both antennas radiate the same normalized power (at most 0.5)."""
    target_eps: float


@dataclass(frozen=True)
class ProportionalPower:
    """Identical coupling lengths; power decays geometrically along the guide."""
    shared_length: float


@dataclass(frozen=True)
class FlexiblePower:
    lengths: CouplingLengths


PowerModel = EqualPower | ProportionalPower | FlexiblePower


def max_length(kappa: float) -> float:
    return math.pi / (2.0 * kappa)


def coefficients(lengths: CouplingLengths, coupling_efficiency: float,
                 kappa: float) -> PowerCoefficients:
    """Normalized per-antenna power fractions for the given lengths."""
    lmax = max_length(kappa)
    for l in (lengths.l1, lengths.l2):
        if not (0 < l <= lmax):
            raise ValueError(f"coupling length {l} outside (0, pi/(2 kappa) = {lmax}]")
    f = coupling_efficiency
    eps1 = f * math.sin(kappa * lengths.l1) ** 2
    eps2 = (1.0 - eps1) * f * math.sin(kappa * lengths.l2) ** 2
    return PowerCoefficients(eps1, eps2)


def lengths_for_model(model: PowerModel, coupling_efficiency: float,
                      kappa: float) -> CouplingLengths:
    """Coupling lengths realizing a power model.

    EqualPower solves F sin^2(kappa l1) = e and (1-e) F sin^2(kappa l2) = e;
    the split is unreachable when e/(F(1-e)) > 1.
    """
    f = coupling_efficiency
    if isinstance(model, FlexiblePower):
        return model.lengths
    if isinstance(model, ProportionalPower):
        if not (0 < model.shared_length <= max_length(kappa)):
            raise ValueError(f"shared_length {model.shared_length} outside (0, pi/(2 kappa)]")
        return CouplingLengths(model.shared_length, model.shared_length)
    if isinstance(model, EqualPower):
        e = model.target_eps
        if not (0 < e <= 0.5):
            raise ValueError(f"equal-power target {e} outside (0, 0.5]")
        arg1 = e / f
        arg2 = e / (f * (1.0 - e))
        if arg1 > 1 or arg2 > 1:
            raise ValueError(f"equal split eps = {e} unreachable with F = {f}")
        return CouplingLengths(math.asin(math.sqrt(arg1)) / kappa,
                               math.asin(math.sqrt(arg2)) / kappa)
    raise TypeError(f"unknown power model: {model!r}")
