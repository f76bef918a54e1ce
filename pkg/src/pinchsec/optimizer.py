"""Minimum-SOP coupling lengths.

Four closed-form candidate regimes, classified by whether the two event
probabilities can reach 1, plus a grid safety net.  Dispatch is by exhaustive
evaluation: every applicable candidate is pushed through the closed form and
the argmin wins, which is robust to boundary ties and to the regime overlap
(the zero-outage region's lower edge coincides with the point optima).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import SystemConfig
from .coupling import CouplingLengths, max_length
from .secrecy import SopBreakdown, ab_factors, sop_closed_form, sop_surface

GRID_N = 400
BISECT_TOL = 1e-9
BISECT_MAX_ITER = 200

CASE1 = "case1"
CASE2 = "case2"
CASE3 = "case3"
CASE4 = "case4"
GRID_FALLBACK = "grid_fallback"
INFEASIBLE = "infeasible"

Interval = tuple[float, float]


class CaseInapplicable(ValueError):
    """The requested closed-form regime does not exist for this config."""


@dataclass(frozen=True)
class P1Constraints:
    alpha_ratio_ok: bool      # alpha1/alpha2 > gamma1
    omega_min_positive: bool  # min(omega3, omega4) > 0 at the probed lengths
    b_exceeds_a: bool         # B > A
    lengths_in_range: bool    # 0 < L1, L2 <= pi/(2 kappa)


@dataclass(frozen=True)
class OptimizerResult:
    case_tag: str
    l1: float | Interval | None
    l2: float | Interval | None
    min_sop: float
    certificate: SopBreakdown | None

    @property
    def l1_point(self) -> float | None:
        return _midpoint(self.l1)

    @property
    def l2_point(self) -> float | None:
        return _midpoint(self.l2)


def _midpoint(v):
    if v is None or isinstance(v, float):
        return v
    lo, hi = v
    return 0.5 * (lo + hi)


def _scenario(config: SystemConfig):
    c = config.constants
    g = config.geometry
    A, B = ab_factors(config)
    return dict(
        A=A, B=B,
        F=c.coupling_efficiency,
        kappa=c.coupling_coefficient_per_m,
        rho=config.link.rho_t_linear,
        d2=g.waveguide_height_m ** 2,
        q=g.cell_side_m ** 2 / 4.0,
        lmax=c.max_coupling_length_m,
    )


def check_constraints(config: SystemConfig,
                      lengths: CouplingLengths | None = None) -> P1Constraints:
    """Evaluate the four feasibility flags in linear units.

    The min(omega3, omega4) > 0 flag depends on the coupling lengths; when
    none are given it is evaluated at the most favorable point (all residual
    power to the second antenna), i.e. it reports attainability.
    """
    s = _scenario(config)
    a = config.allocation
    alpha_ratio_ok = a.alpha1 / a.alpha2 > config.link.gamma1_linear
    b_exceeds_a = s["B"] > s["A"]
    if lengths is None:
        lengths_in_range = True
        omega_min_positive = min(s["A"], s["B"]) * s["F"] * s["rho"] > s["d2"]
    else:
        lengths_in_range = (0 < lengths.l1 <= s["lmax"]) and (0 < lengths.l2 <= s["lmax"])
        from .coupling import coefficients
        eps = coefficients(lengths, s["F"], s["kappa"])
        rho2 = s["rho"] * eps.eps2
        omega_min_positive = min(s["A"], s["B"]) * rho2 > s["d2"]
    return P1Constraints(alpha_ratio_ok, omega_min_positive,
                         b_exceeds_a, lengths_in_range)


@dataclass(frozen=True)
class Case1Region:
    r_low: float
    r_high: float
    l1_low: float
    l1_high: float
    l2_high: float
    _min_ab_f_rho: float
    _threshold: float  # d^2 + D^2/4
    _f: float
    _kappa: float

    def l2_interval(self, l1: float) -> Interval:
        """Zero-outage l2 interval induced by a chosen l1 inside the region."""
        r = math.sin(self._kappa * l1) ** 2
        t_low = self._threshold / (self._min_ab_f_rho * (1.0 - self._f * r))
        if t_low > 1.0:
            raise CaseInapplicable(f"l1 = {l1} leaves no zero-outage l2")
        return (math.asin(math.sqrt(t_low)) / self._kappa, self.l2_high)


def case1_region(config: SystemConfig) -> Case1Region | None:
    """Open (l1, l2) region with zero secrecy outage, or None if empty."""
    s = _scenario(config)
    if s["B"] <= 0:
        return None
    thr = s["d2"] + s["q"]
    r_low = thr / (s["B"] * s["F"] * s["rho"])
    min_ab_f_rho = min(s["A"], s["B"]) * s["F"] * s["rho"]
    r_high = min((1.0 / s["F"]) * (1.0 - thr / min_ab_f_rho),
                 1.0,
                 s["d2"] / (s["A"] * s["F"] * s["rho"]))
    if r_high <= 0 or r_low >= r_high or r_low > 1.0:
        return None
    return Case1Region(
        r_low=r_low, r_high=r_high,
        l1_low=math.asin(math.sqrt(r_low)) / s["kappa"],
        l1_high=math.asin(math.sqrt(min(r_high, 1.0))) / s["kappa"],
        l2_high=s["lmax"],
        _min_ab_f_rho=min_ab_f_rho, _threshold=thr,
        _f=s["F"], _kappa=s["kappa"],
    )


def _nudge_omega1_full(config: SystemConfig, l1: float, l2: float) -> float:
    # fp round-trip through sin^2 can land a hair below the branch boundary;
    # bump l1 by ulps until the full branch actually fires.
    for _ in range(64):
        bd = sop_closed_form(config, CouplingLengths(l1, l2))
        if bd.prob_omega1 == 1.0:
            return l1
        l1 = np.nextafter(l1, np.inf)
    return l1


def case2_optimum(config: SystemConfig) -> CouplingLengths:
    """Smallest l1 keeping U1's event certain, all residual power to PA-2."""
    s = _scenario(config)
    if s["B"] <= 0:
        raise CaseInapplicable("B <= 0: U1 can never decode its own signal")
    r = (s["d2"] + s["q"]) / (s["B"] * s["F"] * s["rho"])
    r_cap = min(1.0, s["d2"] / (s["A"] * s["F"] * s["rho"]))
    if r > r_cap:
        raise CaseInapplicable("Omega_1 cannot reach 1; defer to case 4")
    l1 = math.asin(math.sqrt(r)) / s["kappa"]
    l1 = _nudge_omega1_full(config, l1, s["lmax"])
    return CouplingLengths(l1, s["lmax"])


def case3_optimum(config: SystemConfig) -> tuple[float, Interval]:
    """l1 point and l2 interval when only U2's event can be certain."""
    s = _scenario(config)
    if s["B"] <= 0:
        raise CaseInapplicable("B <= 0")
    thr = s["d2"] + s["q"]
    r = thr / (s["B"] * s["F"] * s["rho"])
    if r > 1.0:
        raise CaseInapplicable("no admissible l1")
    t_low = thr / (min(s["A"], s["B"]) * s["F"] * s["rho"] * (1.0 - s["F"] * r))
    if not (0 < t_low <= 1.0):
        raise CaseInapplicable("Omega_2 cannot reach 1 at the case-3 l1")
    l1 = math.asin(math.sqrt(r)) / s["kappa"]
    return l1, (math.asin(math.sqrt(t_low)) / s["kappa"], s["lmax"])


def _case4_g_and_dg(r, A, B, F, rho, d2):
    """g(r) and dg/dr for the interior-regime objective, t = 1.

    g = u * v with u = (sqrt(omega2) - sqrt(omega1))^2 and
    v = min(A,B) F rho (1 - F r) - d^2 (the binding U2 threshold).
    """
    b = B * F * rho * r - d2
    a = A * F * rho * r - d2
    v = min(A, B) * F * rho * (1.0 - F * r) - d2
    if b <= 0 or v <= 0:
        return 0.0, 0.0
    a = max(a, 0.0)
    sb, sa = math.sqrt(b), math.sqrt(a)
    u = (sb - sa) ** 2
    g = u * v
    if a == 0.0:
        du = float("-inf") if A > 0 else B * F * rho
    else:
        du = (sb - sa) * (B * F * rho / sb - A * F * rho / sa)
    dv = -min(A, B) * F * F * rho
    return g, du * v + u * dv


def case4_optimum(config: SystemConfig) -> CouplingLengths:
    """Interior optimum when neither event probability can reach 1.

    Seeds at the approximate stationary point (B F rho - d^2)/(2 B F^2 rho),
    brackets the argmax of g on the feasible interval, and refines by
    bisection on the sign of dg/dr.
    """
    s = _scenario(config)
    A, B, F, rho, d2 = s["A"], s["B"], s["F"], s["rho"], s["d2"]
    if B <= 0 or A <= 0:
        raise CaseInapplicable("need A, B > 0")
    r_low = d2 / (A * F * rho)
    mab = min(A, B)
    r_high = min((d2 + s["q"]) / (B * F * rho),
                 (mab * F * rho - d2) / (mab * F * F * rho),
                 1.0)
    if not (0 < r_low < r_high):
        raise CaseInapplicable("empty interior feasible interval")

    def dg(r):
        return _case4_g_and_dg(r, A, B, F, rho, d2)[1]

    def g(r):
        return _case4_g_and_dg(r, A, B, F, rho, d2)[0]

    r_seed = (B * F * rho - d2) / (2.0 * B * F * F * rho)
    pad = 1e-12 * (r_high - r_low)
    grid = np.linspace(r_low + pad, r_high - pad, 512)
    if r_low < r_seed < r_high:
        grid = np.sort(np.append(grid, r_seed))
    vals = [g(r) for r in grid]
    k = int(np.argmax(vals))
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, len(grid) - 1)]
    if dg(lo) > 0 > dg(hi):
        for _ in range(BISECT_MAX_ITER):
            mid = 0.5 * (lo + hi)
            if hi - lo <= BISECT_TOL:
                break
            if dg(mid) > 0:
                lo = mid
            else:
                hi = mid
        r_star = 0.5 * (lo + hi)
    else:
        r_star = float(grid[k])
    return CouplingLengths(math.asin(math.sqrt(r_star)) / s["kappa"], s["lmax"])


def _grid_minimum(config: SystemConfig, n: int = GRID_N):
    lmax = config.constants.max_coupling_length_m
    axis = np.linspace(lmax / n, lmax, n)
    sop = sop_surface(config, axis[:, None], axis[None, :])
    k = int(np.argmin(sop))
    i, j = divmod(k, n)
    return float(sop[i, j]), float(axis[i]), float(axis[j])


def solve_p1(config: SystemConfig) -> OptimizerResult:
    """Minimize the closed-form SOP over both coupling lengths.

    Returns the zero-outage region when it exists; otherwise evaluates every
    applicable closed-form candidate and a GRID_N x GRID_N sweep, returning
    the argmin (grid_fallback tag when the sweep strictly beats all
    closed-form candidates by more than 1e-6).
    """
    cons = check_constraints(config)
    nominal = CouplingLengths(config.constants.max_coupling_length_m / 2.0,
                              config.constants.max_coupling_length_m)
    if not cons.alpha_ratio_ok:
        return OptimizerResult(INFEASIBLE, None, None, 1.0,
                               sop_closed_form(config, nominal))

    region = case1_region(config)
    if region is not None:
        l1_mid = 0.5 * (region.l1_low + region.l1_high)
        l2_int = region.l2_interval(l1_mid)
        cert = sop_closed_form(config, CouplingLengths(l1_mid, _midpoint(l2_int)))
        return OptimizerResult(CASE1, (region.l1_low, region.l1_high),
                               l2_int, cert.sop, cert)

    candidates: list[tuple[str, CouplingLengths, float | Interval, float | Interval]] = []
    try:
        lng = case2_optimum(config)
        candidates.append((CASE2, lng, lng.l1, lng.l2))
    except CaseInapplicable:
        pass
    try:
        l1, l2_int = case3_optimum(config)
        candidates.append((CASE3, CouplingLengths(l1, _midpoint(l2_int)), l1, l2_int))
    except CaseInapplicable:
        pass
    try:
        lng = case4_optimum(config)
        candidates.append((CASE4, lng, lng.l1, lng.l2))
    except CaseInapplicable:
        pass

    best = None
    for tag, lng, l1_out, l2_out in candidates:
        bd = sop_closed_form(config, lng)
        if best is None or bd.sop < best[4].sop:
            best = (tag, lng, l1_out, l2_out, bd)

    grid_sop, grid_l1, grid_l2 = _grid_minimum(config)
    if best is None or grid_sop < best[4].sop - 1e-6:
        lng = CouplingLengths(grid_l1, grid_l2)
        bd = sop_closed_form(config, lng)
        return OptimizerResult(GRID_FALLBACK, grid_l1, grid_l2, bd.sop, bd)

    tag, lng, l1_out, l2_out, bd = best
    return OptimizerResult(tag, l1_out, l2_out, bd.sop, bd)
