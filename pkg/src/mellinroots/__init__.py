"""Principal roots of Z^n + x1*Z^n1 + ... + xp*Z^np - 1 = 0 on the positive orthant.

Three independent routes to the same number, cross-checked throughout:
a safeguarded Newton oracle, the parametric substitution that linearizes
the root to (1 + s)^(-1/n), and a Mellin-Barnes contour integral of the
gamma-ratio kernel.
"""

from .errors import (ConvergenceConditionError, ContinuationError,
                     DivergentIntegralError, GammaOverflowError, PoleError,
                     QuadratureError, RootConvergenceError, StepTooSmallError)
from .gamma import gamma_ratio, log_gamma
from .hyper import (FactorPair, LinearFactor, check_functional_equation,
                    pde_residual, series_coefficients, shift_ratio_factors)
from .identities import (det_cofactor, det_rank_one, dirichlet_integral,
                         i0_ii_decomposition_check)
from .mellin import (Contour, MellinParams, QuadResult, default_contour,
                     forward_mellin_check, kernel, kernel_value,
                     principal_root_mb, quadratic_mb_check)
from .oracle import Problem, RootSet, all_roots, epsilon_family, principal_root
from .param import (ParamPoint, jacobian_det, principal_root_param,
                    psi_forward, psi_forward_complex, psi_inverse)

__version__ = "0.1.0"

__all__ = [
    "Problem", "RootSet", "ParamPoint", "MellinParams", "Contour",
    "QuadResult", "LinearFactor", "FactorPair",
    "principal_root", "all_roots", "epsilon_family",
    "psi_forward", "psi_forward_complex", "psi_inverse", "jacobian_det",
    "principal_root_param",
    "kernel", "kernel_value", "forward_mellin_check", "default_contour",
    "principal_root_mb", "quadratic_mb_check",
    "shift_ratio_factors", "check_functional_equation", "pde_residual",
    "series_coefficients",
    "det_rank_one", "det_cofactor", "dirichlet_integral",
    "i0_ii_decomposition_check",
    "log_gamma", "gamma_ratio",
    "PoleError", "GammaOverflowError", "ConvergenceConditionError",
    "DivergentIntegralError", "QuadratureError", "RootConvergenceError",
    "ContinuationError", "StepTooSmallError",
    "__version__",
]
