"""Decoding SINRs of the two-user SIC chain.

U1 decodes its own s1 against s2's residual; U2 first decodes s1 (the SIC
prerequisite), cancels it, then decodes s2 interference-free.  U1 eavesdrops
on s2 the same way after cancelling its own s1.
"""
from __future__ import annotations

from dataclasses import dataclass

from .config import NomaAllocation


@dataclass(frozen=True)
class SinrSet:
    u1_decodes_s1: float
    u1_decodes_s2: float
    u2_decodes_s1: float
    u2_decodes_s2: float


def compute_sinrs(allocation: NomaAllocation, rho1: float, rho2: float,
                  g1: float, g2: float) -> SinrSet:
    """Linear SINRs for both users and both signals.

    rho_i is the transmit SNR at antenna i (rho_t * eps_i), g_i the
    large-scale gain of user i's serving antenna.
    """
    for name, v in (("rho1", rho1), ("rho2", rho2), ("g1", g1), ("g2", g2)):
        if v < 0:
            raise ValueError(f"{name} must be non-negative, got {v}")
    a1, a2 = allocation.alpha1, allocation.alpha2
    p1 = rho1 * g1
    p2 = rho2 * g2
    return SinrSet(
        u1_decodes_s1=a1 * p1 / (a2 * p1 + 1.0),
        u1_decodes_s2=a2 * p1,
        u2_decodes_s1=a1 * p2 / (a2 * p2 + 1.0),
        u2_decodes_s2=a2 * p2,
    )
