"""Floquet spectra of the periodic conservative Camassa-Holm isospectral problem.

The spectral problem is -f'' + f/4 = z omega f + z^2 upsilon f for a periodic
pair (u, mu), where omega = u - u'' and mu = (u^2 + u'^2) dx + upsilon.  Two
backends cover the phase space: an exact polynomial transfer-matrix engine
for multi-peakon pairs and an RK4 shooting engine for grid-sampled smooth
pairs.  On top sit eigenvalue labeling (gaps, kappa sequence), trace-formula
verification with sharp bounds, and a weak-* convergence laboratory.
"""

from .convergence import (ConvergenceReport, cosine_bump, dirichlet_distance,
                          discriminant_distance, mollify, run_family,
                          weak_star_functional)
from .errors import (BaseAtNodeError, ChspecError, EpsilonTooLargeError,
                     LabelingConflictError, NonFiniteStateError, QuadratureError,
                     RootDeficitError, ZeroEigenvalueError)
from .floquet import (Monodromy, discriminant, interval_matrix, monodromy,
                      node_matrix, solution_matrix)
from .pairs import (PairHandle, PeakonNode, PeakonPair, SampledPair, Violation,
                    dumps_pair, green_potential, handle_from_dict, handle_to_dict,
                    load_pair, loads_pair, periodic_kernel, save_pair, validate)
from .polynomial import Mat2Poly, Poly, coeffs_close, real_roots
from .quadrature import adaptive_quad
from .shooting import (RootScan, dirichlet_value_at, discriminant_at,
                       eigenvalue_window, find_real_roots, monodromy_at, rhs)
from .spectra import (ANTIPERIODIC, DIRICHLET, PERIODIC, Gap, LabeledEigenvalue,
                      SpectrumReport, build_report, dirichlet,
                      periodic_antiperiodic)
from .traces import (BoundCheck, RecoveredValues, TraceCheckResult, bounds,
                     check_dirichlet_traces, check_periodic_traces,
                     poly_from_roots, product_check, recover_point_values,
                     sum_reciprocal, sum_reciprocal_sq)

__version__ = "0.1.0"

__all__ = [
    "ANTIPERIODIC", "BaseAtNodeError", "BoundCheck", "ChspecError",
    "ConvergenceReport", "DIRICHLET", "EpsilonTooLargeError", "Gap",
    "LabeledEigenvalue", "LabelingConflictError", "Mat2Poly", "Monodromy",
    "NonFiniteStateError", "PERIODIC", "PairHandle", "PeakonNode", "PeakonPair",
    "Poly", "QuadratureError", "RecoveredValues", "RootDeficitError", "RootScan",
    "SampledPair", "SpectrumReport", "TraceCheckResult", "Violation",
    "ZeroEigenvalueError", "adaptive_quad", "bounds", "build_report",
    "check_dirichlet_traces", "check_periodic_traces", "coeffs_close",
    "cosine_bump", "dirichlet", "dirichlet_distance", "dirichlet_value_at",
    "discriminant", "discriminant_at", "discriminant_distance", "dumps_pair",
    "eigenvalue_window", "find_real_roots", "green_potential",
    "handle_from_dict", "handle_to_dict", "interval_matrix", "load_pair",
    "loads_pair", "mollify", "monodromy", "monodromy_at", "node_matrix",
    "periodic_antiperiodic", "periodic_kernel", "poly_from_roots",
    "product_check", "real_roots", "recover_point_values", "rhs", "run_family",
    "save_pair", "solution_matrix", "sum_reciprocal", "sum_reciprocal_sq",
    "validate", "weak_star_functional",
]
