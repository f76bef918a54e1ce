import math

import numpy as np
import pytest

from pinchsec import (CouplingLengths, LinkBudget, NomaAllocation,
                      SystemConfig, case1_region, case2_optimum, case4_optimum,
                      check_constraints, solve_p1, sop_closed_form,
                      sop_surface)
from pinchsec.optimizer import (CASE1, CASE2, CASE4, GRID_FALLBACK, INFEASIBLE,
                                CaseInapplicable)

from _oracles import random_config, sweep_config

# continuous-optimum anchors for the default scenario, one per transmit SNR
CASE2_L1 = {
    17.0: 1.0257770644e-3,
    18.0: 9.1389395299e-4,
    19.0: 8.1427505229e-4,
    20.0: 7.2555812328e-4,
    21.0: 6.4653747718e-4,
}
CASE1_L1 = {
    22.0: (5.7614446022e-4, 2.6143544258e-3),
    23.0: (5.1343080345e-4, 4.5890141832e-3),
}
MIN_SOP = {
    17.0: 0.690120,
    18.0: 0.535939,
    19.0: 0.395370,
    20.0: 0.255219,
    21.0: 0.109613,
    22.0: 0.0,
    23.0: 0.0,
}


@pytest.mark.parametrize("rho_db", sorted(CASE2_L1))
def test_point_optimum_anchors(rho_db):
    result = solve_p1(sweep_config(rho_db))
    assert result.case_tag == CASE2
    assert result.l1 == pytest.approx(CASE2_L1[rho_db], rel=1e-6)
    assert result.l2 == pytest.approx(math.pi / 200.0)
    assert result.min_sop == pytest.approx(MIN_SOP[rho_db], abs=1e-5)


@pytest.mark.parametrize("rho_db", sorted(CASE1_L1))
def test_zero_outage_interval_anchors(rho_db):
    result = solve_p1(sweep_config(rho_db))
    assert result.case_tag == CASE1
    lo, hi = CASE1_L1[rho_db]
    assert result.l1[0] == pytest.approx(lo, rel=1e-6)
    assert result.l1[1] == pytest.approx(hi, rel=1e-6)
    assert result.min_sop == 0.0
    assert result.certificate.sop == 0.0


def test_case1_region_soundness():
    """100 interior points of the zero-outage region really give SOP = 0."""
    cfg = sweep_config(22.0)
    region = case1_region(cfg)
    assert region is not None
    rng = np.random.default_rng(1)
    span = region.l1_high - region.l1_low
    for _ in range(100):
        l1 = region.l1_low + rng.uniform(0.05, 0.95) * span
        lo, hi = region.l2_interval(l1)
        l2 = lo + rng.uniform(0.05, 0.95) * (hi - lo)
        assert sop_closed_form(cfg, CouplingLengths(l1, l2)).sop == 0.0


def test_case2_first_order_optimality():
    cfg = sweep_config(20.0)
    lng = case2_optimum(cfg)
    best = sop_closed_form(cfg, lng).sop
    for delta in (1e-7, 1e-6, 1e-5):
        assert sop_closed_form(cfg, CouplingLengths(lng.l1 + delta, lng.l2)).sop >= best
        assert sop_closed_form(cfg, CouplingLengths(lng.l1 - delta, lng.l2)).sop >= best


def test_case2_keeps_u1_event_certain():
    cfg = sweep_config(20.0)
    bd = sop_closed_form(cfg, case2_optimum(cfg))
    assert bd.prob_omega1 == 1.0


def test_full_l2_dominates_at_default_scenario():
    """With omega3 >> omega4, pushing all residual power to PA-2 never hurts."""
    cfg = sweep_config(20.0)
    lmax = cfg.constants.max_coupling_length_m
    rng = np.random.default_rng(2)
    for _ in range(200):
        l1 = rng.uniform(1e-5, lmax)
        l2 = rng.uniform(1e-5, lmax)
        full = sop_closed_form(cfg, CouplingLengths(l1, lmax)).sop
        assert full <= sop_closed_form(cfg, CouplingLengths(l1, l2)).sop + 1e-12


def test_solver_beats_grid_oracle_on_random_configs():
    rng = np.random.default_rng(3)
    lmax = math.pi / 200.0
    axis = np.linspace(lmax / 400, lmax, 400)
    for _ in range(50):
        cfg = random_config(rng)
        result = solve_p1(cfg)
        grid_min = float(np.min(sop_surface(cfg, axis[:, None], axis[None, :])))
        assert result.min_sop <= grid_min + 1e-6, (cfg, result)


def _interior_scenario() -> SystemConfig:
    """Neither event probability can reach 1: the optimum is interior."""
    return SystemConfig(
        allocation=NomaAllocation(alpha1=0.6, alpha2=0.4),
        link=LinkBudget(rho_t_db=-4.6,
                        gamma1_db=10 * math.log10(1.25),
                        gamma2_db=10 * math.log10(5.05)),
    )


def test_case4_interior_optimum_matches_fine_grid():
    cfg = _interior_scenario()
    result = solve_p1(cfg)
    assert result.case_tag == CASE4
    lmax = cfg.constants.max_coupling_length_m
    step = 1e-5
    grid = np.append(np.arange(step, lmax, step), lmax)
    sops = sop_surface(cfg, grid, lmax)
    k = int(np.argmin(sops))
    assert abs(result.l1 - grid[k]) <= step
    assert result.min_sop <= sops[k] + 1e-12
    assert 0.0 < result.min_sop < 1.0


def test_case4_rejects_easy_scenarios():
    with pytest.raises(CaseInapplicable):
        case4_optimum(sweep_config(22.0))


def test_infeasible_allocation():
    cfg = SystemConfig(allocation=NomaAllocation(alpha1=0.9, alpha2=0.1))
    result = solve_p1(cfg)
    assert result.case_tag == INFEASIBLE
    assert result.min_sop == 1.0
    assert result.l1 is None and result.l2 is None


def test_check_constraints_flags():
    cons = check_constraints(sweep_config(20.0))
    assert cons.alpha_ratio_ok and cons.b_exceeds_a
    assert cons.omega_min_positive and cons.lengths_in_range
    weak = check_constraints(
        SystemConfig(allocation=NomaAllocation(alpha1=0.9, alpha2=0.1)))
    assert not weak.alpha_ratio_ok
    lmax = math.pi / 200.0
    out = check_constraints(sweep_config(20.0),
                            CouplingLengths(lmax, lmax))
    assert not out.omega_min_positive  # PA-2 starved at full first coupling


def test_case1_region_empty_below_window():
    assert case1_region(sweep_config(20.0)) is None


def test_grid_fallback_tag_is_reachable_or_absent():
    """Whatever the solver returns, its SOP must be certified by re-evaluation."""
    rng = np.random.default_rng(4)
    for _ in range(20):
        cfg = random_config(rng)
        result = solve_p1(cfg)
        assert result.case_tag in (CASE1, CASE2, "case3", CASE4,
                                   GRID_FALLBACK, INFEASIBLE)
        if result.l1_point is not None:
            bd = sop_closed_form(cfg, CouplingLengths(result.l1_point,
                                                      result.l2_point))
            assert bd.sop == pytest.approx(result.min_sop, abs=1e-9)
