"""Coherent-state kernels and star-product calculus on the noncommutative plane."""

from .fock import FockSpace, coherent_overlap, coherent_vector, ladder_operators, min_fock_dim
from .hilbert import (
    apply_b,
    apply_b_adjoint,
    apply_momentum,
    apply_p,
    apply_p_adjoint,
    apply_position,
    dagger,
    hs_inner,
    hs_norm,
    interior,
    momentum_state,
    position_momentum_overlap,
    position_overlap,
    position_state,
    superop_adjoint,
)
from .oracles import (
    CheckResult,
    build_hamiltonian_superop,
    check_momentum_completeness,
    check_position_star_completeness,
    evolve_kernel_oracle,
    kernel_comparison,
    run_verification_suite,
)
from .params import (
    DegenerateCompositionError,
    MomentumPoint,
    NonIntegrableError,
    PhysicalParams,
    PlanePoint,
    TruncationError,
    separation_sq,
)
from .propagator import (
    GaussianSlice,
    SliceSchedule,
    closed_form_kernel,
    commutative_kernel,
    compose,
    kernel_magnitude_bound,
    short_time_slice,
    sliced_kernel,
)
from .quadrature import QuadratureSpec, adaptive_plane_integral, tensor_gauss_legendre
from .star import (
    GaussianSymbol,
    polynomial_star,
    star,
    star_integral,
    star_series_oracle,
    symbol_product,
)

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "DegenerateCompositionError",
    "FockSpace",
    "GaussianSlice",
    "GaussianSymbol",
    "MomentumPoint",
    "NonIntegrableError",
    "PhysicalParams",
    "PlanePoint",
    "QuadratureSpec",
    "SliceSchedule",
    "TruncationError",
    "adaptive_plane_integral",
    "apply_b",
    "apply_b_adjoint",
    "apply_momentum",
    "apply_p",
    "apply_p_adjoint",
    "apply_position",
    "build_hamiltonian_superop",
    "check_momentum_completeness",
    "check_position_star_completeness",
    "closed_form_kernel",
    "coherent_overlap",
    "coherent_vector",
    "commutative_kernel",
    "compose",
    "dagger",
    "evolve_kernel_oracle",
    "hs_inner",
    "hs_norm",
    "interior",
    "kernel_comparison",
    "kernel_magnitude_bound",
    "ladder_operators",
    "min_fock_dim",
    "momentum_state",
    "polynomial_star",
    "position_momentum_overlap",
    "position_overlap",
    "position_state",
    "run_verification_suite",
    "separation_sq",
    "short_time_slice",
    "sliced_kernel",
    "star",
    "star_integral",
    "star_series_oracle",
    "superop_adjoint",
    "symbol_product",
    "tensor_gauss_legendre",
]
