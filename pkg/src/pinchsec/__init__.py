"""Secrecy outage analysis for a two-user pinching-antenna NOMA downlink."""

from .config import (ConfigError, Geometry, LinkBudget, NomaAllocation,
                     PhysicalConstants, SystemConfig, ValidationIssue,
                     apply_overrides, db_to_linear, free_space_factor,
                     linear_to_db, load_config, parse_config_text, validate)
from .channel import Point3, PaLayout, channel_vector, gain_simplified, place_pa_for_user
from .coupling import (CouplingLengths, EqualPower, FlexiblePower,
                       PowerCoefficients, ProportionalPower, coefficients,
                       lengths_for_model, max_length)
from .sinr import SinrSet, compute_sinrs
from .secrecy import (AsymptoticSop, OmegaSet, SecurityDistances, SopBreakdown,
                      ab_factors, omegas, prob_omega1, prob_omega2,
                      security_distances, sop_asymptotic, sop_closed_form,
                      sop_surface)
from .montecarlo import (McEstimate, McSettings, estimate_sop,
                         estimate_sop_fixed_antenna, sample_positions,
                         secrecy_event, worker_count)
from .optimizer import (Case1Region, CaseInapplicable, OptimizerResult,
                        P1Constraints, case1_region, case2_optimum,
                        case3_optimum, case4_optimum, check_constraints,
                        solve_p1)

__version__ = "0.1.0"
