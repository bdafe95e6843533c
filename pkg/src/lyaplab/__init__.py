"""lyaplab: two competing Lyapunov-exponent spectra, limit-cycle detection,
and attractor classification for 3-D autonomous flows.

The library computes exponents along a reference orbit by two routes that
coincide only for symmetric (normal) integrated Jacobians -- the eigenvalue
route and the symmetrized route -- plus a fully time-ordered propagator/SVD
route for comparison.  It detects and refines limit cycles of the Silnikov
flow, probes their stability empirically, classifies exponent sign patterns,
and ships a registry of reference cases with a regression runner and a
parameter-sweep tool (also exposed as the ``lyaplab`` CLI).
"""

from .systems import (Forcing, LinearSystem, TwoRingTorus, CubedRing, Silnikov,
                      as_state, eval_field, eval_jacobian)
from .integrate import (IntegrationError, Trajectory, IntegratedJacobian,
                        Propagator, integrate, integrate_augmented,
                        integrate_propagator, relax, write_trajectory_csv,
                        RTOL_DEFAULT, ATOL_DEFAULT)
from .mat3 import (eig_general, eig_symmetric, symmetrize_scaled, expm,
                   singular_values)
from .exponents import (ExponentSpectrum, PerturbationDirection,
                        GrowthEigenstructure, MaximalExponentEstimate,
                        linear_exponents, eigenvalue_exponents,
                        symmetrized_exponents, svd_exponents,
                        periodic_exponents, directional_growth,
                        growth_eigenstructure, maximal_exponent_estimate)
from .cycles import (NotPeriodicError, LimitCycle, StabilityAssessment,
                     ProbeResult, SignDistribution, SymmetricPair,
                     find_attractor_orbit, refine_period, rotation_number,
                     detect_symmetric_pair, assess_stability, classify_signs,
                     classify_attractor, default_zero_tol, make_cycle,
                     distance_to_cycle, write_cycle_csv, cycle_sidecar_json)
from .cases import (CaseRecord, CaseReport, FieldCheck, list_cases, get_case,
                    run_case, sweep_silnikov, SweepRow, write_sweep_csv,
                    SWEEP_CSV_HEADER)

__version__ = "0.1.0"
