"""Stability bounds for kernel matrices of shifted and convolutional kernels."""

from ._version import __version__
from .analysis import (
    BoundCheck,
    CONV_BOUND_CONSTANTS,
    EquivalenceResult,
    FittedLaw,
    SYMMETRIC_BOUND_CONSTANTS,
    SharpEquivalenceResult,
    cond_upper_bound,
    conv_lower_bound,
    conv_lower_bound_from_sym,
    default_conv_constant,
    default_symmetric_constant,
    fit_power_law,
    symmetric_lower_bound,
    verify_conv_chain,
    verify_damping_bound,
    verify_equivalence,
    verify_sharp_equivalence,
    verify_shift_identity,
    write_checks_csv,
)
from .assembly import (
    GramMatrix,
    MatrixKind,
    antisymmetric_part,
    conv_gram,
    gram,
    interpolate,
    shifted_gram,
    symmetric_part,
    write_matrix_csv,
)
from .errors import QuadratureError, SingularMatrixError, UnsupportedKernelError
from .experiments import ExperimentConfig, ExperimentReport, run, sample_grid
from .geometry import (
    PointSet,
    boundary_distance,
    equispaced,
    halton,
    read_points_csv,
    separation_distance,
    shift,
    write_points_csv,
)
from .kernels import (
    Family,
    KernelSpec,
    SpectralDensity,
    has_finite_smoothness,
    kernel_value,
    phi,
    smoothness,
    spectral_density_1d,
)
from .quadrature import (
    FourierFormResult,
    QuadratureConfig,
    QuadratureRule,
    closed_form_conv_exp,
    conv_value,
    fourier_quadratic_form,
    gauss_legendre,
    integrate,
)
from .rng import SplitMix64
from .spectral import (
    EigenDecomposition,
    below_precision_floor,
    cond,
    inv_sqrt,
    lambda_max,
    lambda_min,
    precision_floor,
    rayleigh,
    sym_eigen,
    whiten,
)
