"""Projection matrices, the category Mat_B and its equivalence with based Hilbert modules."""

from sheafmod.matrix.algebra import (
    apply,
    check_arrow,
    check_self_duality,
    compose,
    identity,
    is_projection_matrix,
    make_arrow,
    matmul,
    transpose,
)
from sheafmod.matrix.functors import (
    check_functor_M,
    check_functor_X,
    check_round_trips,
    functor_M,
    functor_X,
)
from sheafmod.matrix.models import ColumnVector, MatArrow, MatrixModule, ProjectionMatrix
from sheafmod.matrix.modules import (
    CanonicalIso,
    canonical_iso,
    check_matrix_roundtrip,
    check_module_roundtrip,
    matrix_from_module,
    module_from_matrix,
)

__all__ = [
    "CanonicalIso",
    "ColumnVector",
    "MatArrow",
    "MatrixModule",
    "ProjectionMatrix",
    "apply",
    "canonical_iso",
    "check_arrow",
    "check_functor_M",
    "check_functor_X",
    "check_matrix_roundtrip",
    "check_module_roundtrip",
    "check_round_trips",
    "check_self_duality",
    "compose",
    "functor_M",
    "functor_X",
    "identity",
    "is_projection_matrix",
    "make_arrow",
    "matmul",
    "matrix_from_module",
    "module_from_matrix",
    "transpose",
]
