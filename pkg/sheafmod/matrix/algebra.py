"""Matrix algebra over the (v, ^) semiring and the category Mat_B."""

import numpy as np

from sheafmod.errors import ArrowLawViolation, DimensionMismatch, MalformedInput
from sheafmod.lattice.frame import semiring_matmul
from sheafmod.lattice.models import Frame
from sheafmod.matrix.models import ColumnVector, MatArrow, ProjectionMatrix
from sheafmod.report import LawReport, first_violation


def matmul(base: Frame, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """(AB)_{su} = V_t a_{st} ^ b_{tu}; ``right`` may be a vector."""
    a = np.asarray(left, dtype=np.int64)
    b = np.asarray(right, dtype=np.int64)
    if a.ndim != 2 or b.ndim not in (1, 2) or a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return semiring_matmul(base, a, b)


def apply(matrix: ProjectionMatrix, vector: ColumnVector) -> ColumnVector:
    """(Mf)_s = V_t m_{st} ^ f_t."""
    if vector.index != matrix.index:
        raise DimensionMismatch("vector and matrix index sets differ")
    values = matmul(matrix.base, matrix.entries, vector.values)
    return ColumnVector(matrix.base, matrix.index, values)


def is_projection_matrix(matrix: ProjectionMatrix) -> LawReport:
    """Symmetry M^T = M and idempotence M^2 = M, with the first bad entry as witness."""
    base, m = matrix.base, matrix.entries
    report = LawReport(subject="projection matrix")
    hit = first_violation(m != m.T)
    report.check(
        "M^T = M",
        hit is None,
        f"m[{matrix.index[hit[0]]},{matrix.index[hit[1]]}] != m[{matrix.index[hit[1]]},"
        f"{matrix.index[hit[0]]}]"
        if hit
        else None,
    )
    squared = matmul(base, m, m)
    hit = first_violation(squared != m)
    report.check(
        "M^2 = M",
        hit is None,
        f"(M^2)[{matrix.index[hit[0]]},{matrix.index[hit[1]]}]={base.labels[squared[hit]]}, "
        f"m={base.labels[m[hit]]}"
        if hit
        else None,
    )
    return report


def check_arrow(arrow: MatArrow) -> LawReport:
    """FM = F and NF = F."""
    base = arrow.base
    f = arrow.entries
    report = LawReport(subject="arrow laws")
    for law, product in (
        ("FM = F", matmul(base, f, arrow.source.entries)),
        ("NF = F", matmul(base, arrow.target.entries, f)),
    ):
        hit = first_violation(product != f)
        report.check(
            law,
            hit is None,
            f"entry ({arrow.target.index[hit[0]]},{arrow.source.index[hit[1]]})" if hit else None,
        )
    return report


def make_arrow(
    source: ProjectionMatrix, target: ProjectionMatrix, entries: np.ndarray
) -> MatArrow:
    """Build an arrow, raising ArrowLawViolation when FM = F = NF fails."""
    arrow = MatArrow(source, target, entries)
    report = check_arrow(arrow)
    if not report.passed:
        failure = report.failures[0]
        raise ArrowLawViolation(f"not an arrow: {failure.law} fails", failure.witness)
    return arrow


def identity(matrix: ProjectionMatrix) -> MatArrow:
    """The unit arrow of an object is the object itself."""
    return MatArrow(matrix, matrix, matrix.entries)


def compose(outer: MatArrow, inner: MatArrow) -> MatArrow:
    """outer ∘ inner as a matrix product, re-verified against the arrow laws."""
    if not inner.target.same_as(outer.source):
        raise MalformedInput("arrows do not compose: inner target differs from outer source")
    entries = matmul(outer.base, outer.entries, inner.entries)
    return make_arrow(inner.source, outer.target, entries)


def transpose(arrow: MatArrow) -> MatArrow:
    return make_arrow(arrow.target, arrow.source, arrow.entries.T)


def check_self_duality(arrow: MatArrow, other: MatArrow | None = None) -> LawReport:
    """Transpose is involutive, fixes identities and reverses composition."""
    report = LawReport(subject="transpose duality")
    report.check("(F^T)^T = F", transpose(transpose(arrow)).same_as(arrow))
    source_id = identity(arrow.source)
    report.check("id^T = id", transpose(source_id).same_as(source_id))
    report.check(
        "id o F = F = F o id",
        compose(identity(arrow.target), arrow).same_as(arrow)
        and compose(arrow, source_id).same_as(arrow),
    )
    if other is not None and other.target.same_as(arrow.source):
        lhs = transpose(compose(arrow, other))
        rhs = compose(transpose(other), transpose(arrow))
        report.check("(F o G)^T = G^T o F^T", lhs.same_as(rhs))
    return report
