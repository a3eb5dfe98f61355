"""Exact arithmetic: semirings, integer polynomials, dense matrices, SNF, determinants, series."""

from .det import InternalConsistencyError, det_poly, identity_minus_t, t_identity_minus, to_poly_matrix
from .matrix import (
    DimensionError,
    SemiringMatrix,
    SemiringMismatch,
    block_swap,
    block_swap_perm,
    compose_perm,
    conjugate,
    direct_sum,
    int_matrix,
    invert_perm,
    mat_direct_sum,
    mat_mul,
    permutation_matrix,
    render_matrix,
)
from .poly import T, IntPoly
from .semiring import (
    INF,
    NATINF,
    REGISTERED,
    Z,
    Z_T,
    ZPLUS,
    ZPLUS_T,
    NatInf,
    SemiringSpec,
    by_name,
    finite_field,
    is_prime,
)
from .series import SeriesError, TruncatedSeries
from .snf import SmithForm, smith_decomposition, smith_normal_form

__all__ = [
    "DimensionError", "INF", "IntPoly", "InternalConsistencyError", "NATINF", "NatInf",
    "REGISTERED", "SemiringMatrix", "SemiringMismatch", "SemiringSpec", "SeriesError",
    "SmithForm", "T", "TruncatedSeries", "Z", "ZPLUS", "ZPLUS_T", "Z_T", "block_swap",
    "block_swap_perm", "by_name", "compose_perm", "conjugate", "det_poly", "direct_sum",
    "finite_field", "identity_minus_t", "int_matrix", "invert_perm", "is_prime",
    "mat_direct_sum", "mat_mul", "permutation_matrix", "render_matrix",
    "smith_decomposition", "smith_normal_form", "t_identity_minus", "to_poly_matrix",
]
