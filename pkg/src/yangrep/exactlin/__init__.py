"""Exact arithmetic and linear algebra over Q."""

from .linalg import (
    InterpolationError,
    Subspace,
    bareiss_echelon,
    intersect_kernels,
    interpolate_ratfunc,
    inverse,
    kernel,
    rank,
    solve,
    stack,
    subspace_closure,
)
from .poly import PolyU, RatFuncU, linear_factors
from .rat import HALF, ONE, ZERO, Rat, RatParseError, bitsize, is_integer, is_nonneg_int, rat, rat_str
from .ratmat import RatFuncMat
from .sparse import SparseMat, proportionality, unit, vec_add, vec_is_zero, vec_scale, vec_sub, vec_zero

__all__ = [
    "HALF", "ONE", "ZERO", "Rat", "RatParseError", "bitsize", "is_integer", "is_nonneg_int", "rat", "rat_str",
    "PolyU", "RatFuncU", "linear_factors", "SparseMat", "RatFuncMat", "Subspace",
    "InterpolationError", "bareiss_echelon", "intersect_kernels", "interpolate_ratfunc", "inverse", "kernel", "rank",
    "solve", "stack", "subspace_closure", "proportionality", "unit", "vec_add", "vec_is_zero", "vec_scale",
    "vec_sub", "vec_zero",
]
