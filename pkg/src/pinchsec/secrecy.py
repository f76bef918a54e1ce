"""Closed-form secrecy outage probability.

The outage event reduces to a rectangle in (y1^2, y2^2): U1 must sit close
enough to decode s1 but far enough not to decode s2, while U2 must sit close
enough to decode both.  The four squared-distance thresholds omega_1..omega_4
drive a piecewise product of two uniform-position probabilities.

Branch boundaries are closed toward the higher-probability branch (>= at
every threshold) so the closed form is upper semicontinuous; this differs
from the published piecewise symbols only on measure-zero sets.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import SystemConfig, linear_to_db
from .coupling import CouplingLengths, PowerCoefficients, coefficients

# branch tags for Omega_1
O1_FULL = "full"       # omega1 <= 0 and omega2 >= D^2/4: probability 1
O1_INNER = "inner"     # omega1 <= 0 < omega2 < D^2/4: 2 sqrt(omega2)/D
O1_RING = "ring"       # 0 < omega1 < omega2 < D^2/4: 2(sqrt(omega2)-sqrt(omega1))/D
O1_OUTER = "outer"     # 0 < omega1 < D^2/4 <= omega2: 2(D/2 - sqrt(omega1))/D
O1_EMPTY = "empty"

# branch tags for Omega_2
O2_FULL = "full"
O2_PARTIAL = "partial"
O2_EMPTY = "empty"


@dataclass(frozen=True)
class OmegaSet:
    omega1: float
    omega2: float
    omega3: float
    omega4: float


@dataclass(frozen=True)
class SopBreakdown:
    omega_set: OmegaSet
    prob_omega1: float
    prob_omega2: float
    sop: float
    branch1: str
    branch2: str


@dataclass(frozen=True)
class SecurityDistances:
    max_eavesdrop_m: float
    max_reliable_u1_m: float
    max_reliable_u2_m: float


@dataclass(frozen=True)
class AsymptoticSop:
    limit: float
    onset_rho_linear: float
    onset_rho_db: float


def ab_factors(config: SystemConfig) -> tuple[float, float]:
    """A = eta alpha2/gamma2 and B = eta (alpha1/gamma1 - alpha2)."""
    eta = config.eta
    a = config.allocation
    link = config.link
    return (eta * a.alpha2 / link.gamma2_linear,
            eta * (a.alpha1 / link.gamma1_linear - a.alpha2))


def omegas(config: SystemConfig, eps: PowerCoefficients) -> OmegaSet:
    """Squared-distance thresholds for the outage rectangle."""
    A, B = ab_factors(config)
    d2 = config.geometry.waveguide_height_m ** 2
    rho1 = config.link.rho_t_linear * eps.eps1
    rho2 = config.link.rho_t_linear * eps.eps2
    return OmegaSet(
        omega1=A * rho1 - d2,
        omega2=B * rho1 - d2,
        omega3=B * rho2 - d2,
        omega4=A * rho2 - d2,
    )


def prob_omega1(omega1: float, omega2: float, D: float) -> tuple[float, str]:
    """Pr[omega1 < y1^2 <= omega2] for y1 uniform on [-D/2, D/2]."""
    if not D > 0:
        raise ValueError(f"cell side must be positive, got {D}")
    q = D * D / 4.0
    if omega1 <= 0.0 and omega2 >= q:
        return 1.0, O1_FULL
    if omega1 <= 0.0 and 0.0 < omega2 < q:
        return 2.0 * math.sqrt(omega2) / D, O1_INNER
    if 0.0 < omega1 < q and omega2 >= q:
        return 2.0 * (D / 2.0 - math.sqrt(omega1)) / D, O1_OUTER
    if 0.0 < omega1 < omega2 < q:
        return 2.0 * (math.sqrt(omega2) - math.sqrt(omega1)) / D, O1_RING
    return 0.0, O1_EMPTY


def prob_omega2(omega3: float, omega4: float, D: float) -> tuple[float, str]:
    """Pr[y2^2 <= min(omega3, omega4)] for y2 uniform on [-D/2, D/2]."""
    if not D > 0:
        raise ValueError(f"cell side must be positive, got {D}")
    q = D * D / 4.0
    m = min(omega3, omega4)
    if m >= q:
        return 1.0, O2_FULL
    if m > 0.0:
        return 2.0 * math.sqrt(m) / D, O2_PARTIAL
    return 0.0, O2_EMPTY


def sop_closed_form(config: SystemConfig, lengths: CouplingLengths,
                    cell1_side: float | None = None,
                    cell2_side: float | None = None) -> SopBreakdown:
    """SOP = 1 - Omega_1 * Omega_2 for the given coupling lengths.

    cell1_side / cell2_side override the common square side for the
    respective user's activity cell (used by the cell-size sweeps).
    """
    c = config.constants
    eps = coefficients(lengths, c.coupling_efficiency, c.coupling_coefficient_per_m)
    om = omegas(config, eps)
    d1 = config.geometry.cell_side_m if cell1_side is None else cell1_side
    d2 = config.geometry.cell_side_m if cell2_side is None else cell2_side
    p1, b1 = prob_omega1(om.omega1, om.omega2, d1)
    p2, b2 = prob_omega2(om.omega3, om.omega4, d2)
    return SopBreakdown(om, p1, p2, 1.0 - p1 * p2, b1, b2)


def sop_surface(config: SystemConfig, l1, l2,
                cell1_side: float | None = None,
                cell2_side: float | None = None) -> np.ndarray:
    """Vectorized SOP over broadcastable arrays of coupling lengths."""
    c = config.constants
    f = c.coupling_efficiency
    kappa = c.coupling_coefficient_per_m
    l1 = np.asarray(l1, dtype=float)
    l2 = np.asarray(l2, dtype=float)
    eps1 = f * np.sin(kappa * l1) ** 2
    eps2 = (1.0 - eps1) * f * np.sin(kappa * l2) ** 2

    A, B = ab_factors(config)
    rho_t = config.link.rho_t_linear
    dd = config.geometry.waveguide_height_m ** 2
    w1 = A * rho_t * eps1 - dd
    w2 = B * rho_t * eps1 - dd
    w3 = B * rho_t * eps2 - dd
    w4 = A * rho_t * eps2 - dd

    d1 = config.geometry.cell_side_m if cell1_side is None else cell1_side
    d2 = config.geometry.cell_side_m if cell2_side is None else cell2_side
    p1 = _omega1_array(w1, w2, d1)
    p2 = _omega2_array(w3, w4, d2)
    return 1.0 - p1 * p2


def _omega1_array(w1, w2, D):
    q = D * D / 4.0
    s1 = np.sqrt(np.maximum(w1, 0.0))
    s2 = np.sqrt(np.maximum(w2, 0.0))
    conds = [
        (w1 <= 0) & (w2 >= q),
        (w1 <= 0) & (w2 > 0),
        (w1 > 0) & (w1 < q) & (w2 >= q),
        (w1 > 0) & (w1 < w2) & (w2 < q),
    ]
    choices = [
        np.ones_like(s2),
        2.0 * s2 / D,
        2.0 * (D / 2.0 - s1) / D,
        2.0 * (s2 - s1) / D,
    ]
    return np.select(conds, choices, default=0.0)


def _omega2_array(w3, w4, D):
    q = D * D / 4.0
    m = np.minimum(w3, w4)
    sm = np.sqrt(np.maximum(m, 0.0))
    return np.select([m >= q, m > 0], [np.ones_like(sm), 2.0 * sm / D], default=0.0)


def sop_asymptotic(config: SystemConfig, eps1: float) -> AsymptoticSop:
    """High-SNR limit of the SOP plus the finite onset of certain outage.

    Above onset_rho_linear the eavesdropping radius sqrt(omega1) covers the
    whole of U1's cell, so the closed form equals 1 exactly (a stronger,
    finite statement than the limit).  onset_rho_db is on the plotted axis,
    i.e. with the noise-floor offset removed.
    """
    if not (0 < eps1 <= 1):
        raise ValueError(f"eps1 must be in (0, 1], got {eps1}")
    A, _ = ab_factors(config)
    g = config.geometry
    target = g.waveguide_height_m ** 2 + g.cell_side_m ** 2 / 4.0
    onset = target / (A * eps1)
    return AsymptoticSop(
        limit=1.0,
        onset_rho_linear=onset,
        onset_rho_db=linear_to_db(onset) - config.link.noise_floor_offset_db,
    )


def security_distances(omega_set: OmegaSet) -> SecurityDistances:
    """Eavesdropping and reliable-transmission radii (clamped at zero)."""
    return SecurityDistances(
        max_eavesdrop_m=math.sqrt(max(omega_set.omega1, 0.0)),
        max_reliable_u1_m=math.sqrt(max(omega_set.omega2, 0.0)),
        max_reliable_u2_m=math.sqrt(max(min(omega_set.omega3, omega_set.omega4), 0.0)),
    )
