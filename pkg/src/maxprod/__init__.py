"""Max-product Kantorovich sampling operators over generalized kernels,
Orlicz-space error measures (modulars, Luxemburg norms) and an empirical
verification harness for the operator inequalities."""

from .analysis import (CampaignResult, ComparisonTable, ConvergenceReport,
                       InequalityCheck, check_jackson,
                       check_lp_lipschitz, check_modular_inequality,
                       check_zygmund_lipschitz, compare_linear_vs_maxprod,
                       campaign_exponential_instance, campaign_lp_lipschitz,
                       campaign_max_convexity, campaign_modular_inequality,
                       campaign_operator_algebra, campaign_zygmund_instance,
                       find_modular_lambda, fit_rate, modulus_of_continuity,
                       run_convergence)
from .errors import (EmptyIndexSetError, InadmissibleKernelError,
                     MaxprodError, QuadratureError, TruncationError,
                     UnknownNameError)
from .kernels import (Kernel, KernelDiagnostics, bspline, check_assumptions,
                      de_la_vallee_poussin, ensure_l1, fejer, kernel_by_name,
                      l1_norm, lower_bound_constant, moment)
from .operators import (OperatorConfig, linear_kantorovich,
                        linear_kantorovich_grid, maxprod_kantorovich,
                        maxprod_kantorovich_grid, operator_config,
                        shift_wrapper)
from .orlicz import (PhiFunction, exponential_phi, luxemburg_norm,
                     maxphi_inequality_check, modular, phi_by_name,
                     power_phi, zygmund_phi)
from .signals import (MeanValueTable, PiecewisePoly, Signal, catalog,
                      from_csv, mean_values, random_piecewise_poly)

__version__ = "0.1.0"
