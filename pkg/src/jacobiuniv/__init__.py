"""Christoffel-Darboux kernels, Bessel universality kernels and equilibrium
measures for generalized Jacobi measures on unions of intervals."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .cdkernel import (KernelZeroSet, christoffel, christoffel_oracle, correlation_det,
                       f_n_ratio, kernel_cd, kernel_direct, kernel_zeros, normalized_kernel)
from .errors import (DomainError, JacobiUnivError, NumericError, PreconditionError,
                     SchemaError, UnsupportedRegimeError)
from .measure import (AlgebraicSingularity, GJMeasure, Interval, density_at, load_measure,
                      make_model_bulk, make_model_edge, parse_measure, serialize_measure)
from .orthopoly import (QuadratureRule, RecurrenceTable, composite_quadrature,
                        eval_orthonormal, gauss_rule, jacobi_recurrence, lanczos_recurrence,
                        poly_zeros, recurrence_for, symmetric_singular_recurrence)
from .potential import (AdmissiblePolynomial, EquilibriumDensity, IntervalSystem,
                        density_at_eq, edge_constant, equilibrium_density, inverse_image,
                        inverse_image_density, pushforward_check)
from .specfun import (bessel_g, bessel_j, bessel_j_zeros, cardinal_series, gamma_fn,
                      kernel_J, kernel_L)
from .universality import (ScanConfig, ScanReport, check_markov_stieltjes,
                           check_nevai_bounds, check_reproducing, rate_fit, scan_bulk,
                           scan_edge, zero_spacing_report)

__all__ = [name for name in dir() if not name.startswith("_")]
