"""Monte Carlo estimation of the secrecy outage probability.

Independent stochastic oracle for the closed form: draw user positions
uniformly in their activity cells, pinch the serving antennas overhead, and
count the four-way decoding event.

Reproducibility: the sample stream is split into fixed-size blocks and block
i is generated from the seed pair (seed, i).  The estimate is therefore a
deterministic function of (seed, samples) alone -- identical for any chunk
partition, worker count, or execution order.  Chunks only group blocks for
parallel execution.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import Point3, place_pa_for_user, gain_simplified
from .config import Geometry, SystemConfig
from .coupling import CouplingLengths, coefficients
from .sinr import compute_sinrs

BLOCK_SIZE = 1 << 16


@dataclass(frozen=True)
class McSettings:
    samples: int = 1_000_000
    seed: int = 0
    chunks: int = 1

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if self.chunks < 1:
            raise ValueError(f"chunks must be >= 1, got {self.chunks}")


@dataclass(frozen=True)
class McEstimate:
    sop_hat: float
    std_err: float
    samples_used: int


def worker_count(chunks: int) -> int:
    """Worker cap: min(chunks, PINCHSEC_THREADS or cpu count)."""
    env = os.environ.get("PINCHSEC_THREADS")
    cap = int(env) if env else (os.cpu_count() or 1)
    return max(1, min(chunks, cap))


def _draw_block(seed: int, block_index: int, n: int, geometry: Geometry,
                cell1_side: float | None = None, cell2_side: float | None = None):
    """Positions for block `block_index`: (x1, y1, x2, y2) arrays."""
    rng = np.random.default_rng([seed, block_index])
    d1 = geometry.cell_side_m if cell1_side is None else cell1_side
    d2 = geometry.cell_side_m if cell2_side is None else cell2_side
    u = rng.random((4, n))
    x1 = -geometry.cell1_center_offset_m + (u[0] - 0.5) * d1
    y1 = (u[1] - 0.5) * d1
    x2 = geometry.cell2_center_offset_m + (u[2] - 0.5) * d2
    y2 = (u[3] - 0.5) * d2
    return x1, y1, x2, y2


def sample_positions(rng_state, geometry: Geometry) -> tuple[Point3, Point3]:
    """One uniform draw of (u1, u2) from the two activity cells.

    rng_state is either a numpy Generator or a seed accepted by
    numpy.random.default_rng.
    """
    rng = rng_state if isinstance(rng_state, np.random.Generator) \
        else np.random.default_rng(rng_state)
    D = geometry.cell_side_m
    u = rng.random(4)
    return (Point3(-geometry.cell1_center_offset_m + (u[0] - 0.5) * D,
                   (u[1] - 0.5) * D, 0.0),
            Point3(geometry.cell2_center_offset_m + (u[2] - 0.5) * D,
                   (u[3] - 0.5) * D, 0.0))


def secrecy_event(u1: Point3, u2: Point3, config: SystemConfig,
                  lengths: CouplingLengths) -> bool:
    """True when no secrecy outage occurs for this position pair.

    Routes through the placement, gain, and SINR modules: both antennas are
    pinched over their users, and the four decoding tests are evaluated
    against the linear thresholds.
    """
    c = config.constants
    d = config.geometry.waveguide_height_m
    eps = coefficients(lengths, c.coupling_efficiency, c.coupling_coefficient_per_m)
    eta = config.eta
    g1 = gain_simplified(u1, place_pa_for_user(u1, d), eta)
    g2 = gain_simplified(u2, place_pa_for_user(u2, d), eta)
    rho_t = config.link.rho_t_linear
    s = compute_sinrs(config.allocation, rho_t * eps.eps1, rho_t * eps.eps2, g1, g2)
    gamma1 = config.link.gamma1_linear
    gamma2 = config.link.gamma2_linear
    return (s.u1_decodes_s1 >= gamma1 and s.u1_decodes_s2 < gamma2
            and s.u2_decodes_s1 >= gamma1 and s.u2_decodes_s2 >= gamma2)


def _event_counts(config: SystemConfig, y1, y2, rho1: float, rho2: float) -> int:
    """Vectorized success count for the pinched-antenna system."""
    a1 = config.allocation.alpha1
    a2 = config.allocation.alpha2
    eta = config.eta
    dd = config.geometry.waveguide_height_m ** 2
    gamma1 = config.link.gamma1_linear
    gamma2 = config.link.gamma2_linear
    p1 = rho1 * eta / (y1 * y1 + dd)
    p2 = rho2 * eta / (y2 * y2 + dd)
    ok = (a1 * p1 / (a2 * p1 + 1.0) >= gamma1) & (a2 * p1 < gamma2) \
        & (a1 * p2 / (a2 * p2 + 1.0) >= gamma1) & (a2 * p2 >= gamma2)
    return int(np.count_nonzero(ok))


def _fixed_antenna_counts(config: SystemConfig, x1, y1, x2, y2) -> int:
    """Success count when one antenna at (0, 0, d) serves both users at full power."""
    a1 = config.allocation.alpha1
    a2 = config.allocation.alpha2
    eta = config.eta
    dd = config.geometry.waveguide_height_m ** 2
    rho_t = config.link.rho_t_linear
    gamma1 = config.link.gamma1_linear
    gamma2 = config.link.gamma2_linear
    p1 = rho_t * eta / (x1 * x1 + y1 * y1 + dd)
    p2 = rho_t * eta / (x2 * x2 + y2 * y2 + dd)
    ok = (a1 * p1 / (a2 * p1 + 1.0) >= gamma1) & (a2 * p1 < gamma2) \
        & (a1 * p2 / (a2 * p2 + 1.0) >= gamma1) & (a2 * p2 >= gamma2)
    return int(np.count_nonzero(ok))


def _run_blocks(config: SystemConfig, settings: McSettings, count_fn,
                cell1_side=None, cell2_side=None) -> McEstimate:
    n_blocks = (settings.samples + BLOCK_SIZE - 1) // BLOCK_SIZE

    def one_block(i: int) -> int:
        n = min(BLOCK_SIZE, settings.samples - i * BLOCK_SIZE)
        pos = _draw_block(settings.seed, i, n, config.geometry, cell1_side, cell2_side)
        return count_fn(pos)

    workers = worker_count(settings.chunks)
    if workers == 1 or n_blocks == 1:
        successes = sum(one_block(i) for i in range(n_blocks))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            successes = sum(pool.map(one_block, range(n_blocks)))

    sop_hat = 1.0 - successes / settings.samples
    std_err = math.sqrt(sop_hat * (1.0 - sop_hat) / settings.samples)
    return McEstimate(sop_hat, std_err, settings.samples)


def estimate_sop(config: SystemConfig, lengths: CouplingLengths,
                 settings: McSettings,
                 cell1_side: float | None = None,
                 cell2_side: float | None = None) -> McEstimate:
    """Plain Monte Carlo SOP estimate for the pinched-antenna system."""
    c = config.constants
    eps = coefficients(lengths, c.coupling_efficiency, c.coupling_coefficient_per_m)
    rho_t = config.link.rho_t_linear
    rho1 = rho_t * eps.eps1
    rho2 = rho_t * eps.eps2

    def count(pos):
        _, y1, _, y2 = pos
        return _event_counts(config, y1, y2, rho1, rho2)

    return _run_blocks(config, settings, count, cell1_side, cell2_side)


def estimate_sop_fixed_antenna(config: SystemConfig, settings: McSettings,
                               cell1_side: float | None = None,
                               cell2_side: float | None = None) -> McEstimate:
    """SOP of the conventional single fixed antenna baseline.

    The benchmark antenna sits at (0, 0, d), midway between the cell centers
    on the waveguide axis, and radiates the full transmit power; gains then
    depend on both x and y.
    """
    def count(pos):
        x1, y1, x2, y2 = pos
        return _fixed_antenna_counts(config, x1, y1, x2, y2)

    return _run_blocks(config, settings, count, cell1_side, cell2_side)
