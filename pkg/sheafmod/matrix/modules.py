"""Passing between projection matrices and based Hilbert modules."""

import logging
from dataclasses import dataclass
from itertools import product

import numpy as np

from sheafmod.bmodule.construct import make_blocale
from sheafmod.bmodule.models import BModule, ModuleHom
from sheafmod.bmodule.morphism import check_module_hom
from sheafmod.config import LimitsConfig
from sheafmod.errors import NotProjection, SizeExceeded
from sheafmod.hilbert.basis import is_hilbert_basis
from sheafmod.hilbert.inner import make_hilbert
from sheafmod.hilbert.models import BasedModule, HilbertBasis, InnerProduct
from sheafmod.lattice.frame import as_frame, vector_lattice
from sheafmod.matrix.algebra import is_projection_matrix, matmul
from sheafmod.matrix.models import MatrixModule, ProjectionMatrix
from sheafmod.report import LawReport, describe, first_violation

logger = logging.getLogger(__name__)


def module_from_matrix(
    matrix: ProjectionMatrix,
    limits: LimitsConfig | None = None,
    name: str | None = None,
) -> MatrixModule:
    """The module MB^S = {Mf : f in B^S} with the inner product of B^S and the column basis."""
    limits = limits or LimitsConfig()
    verdict = is_projection_matrix(matrix)
    if not verdict.passed:
        failure = verdict.failures[0]
        raise NotProjection(f"matrix fails {failure.law}", failure.witness)

    base, k = matrix.base, matrix.size
    total = base.size**k
    if total > limits.max_free_carrier:
        raise SizeExceeded(f"|B|^|S| = {total} exceeds {limits.max_free_carrier}")
    domain = np.array(list(product(range(base.size), repeat=k)), dtype=np.int64).reshape(total, k)
    images = matmul(base, matrix.entries, domain.T).T if k else domain
    vectors = np.unique(images, axis=0) if k else images
    logger.debug("MB^S over %d indices: %d of %d vectors are images", k, len(vectors), total)

    name = name or "MB^S"
    frame = as_frame(vector_lattice(base, vectors, name=name), limits)
    vectors = np.asarray(frame.keys, dtype=np.int64).reshape(frame.size, k)
    index = frame.key_index

    def lookup(rows: np.ndarray) -> np.ndarray:
        return np.array([index[tuple(int(v) for v in row)] for row in rows], dtype=np.int64)

    # (bf)(s) = b ^ f(s) stays inside MB^S since M(b ^ f) = b ^ Mf
    action = np.stack(
        [lookup(base.meet_table[b][vectors]) for b in range(base.size)]
    ).reshape(base.size, frame.size)
    locale = make_blocale(BModule(base, frame, action, name=name), limits)

    inner = InnerProduct(locale, matmul(base, vectors, vectors.T))
    hilbert = make_hilbert(inner)
    columns = lookup(matrix.entries.T)
    basis = HilbertBasis(tuple(int(c) for c in columns), matrix.index)

    report = LawReport(subject=f"matrix module {name}")
    gram = inner.table[np.ix_(columns, columns)]
    hit = first_violation(gram != matrix.entries)
    report.check(
        "m_st = <s~,t~>",
        hit is None,
        describe("st", [matrix.index[i] for i in hit]) if hit else None,
    )
    report.check("carrier is a frame", True, note="verified while building the carrier")
    reconstruction = is_hilbert_basis(hilbert, basis)
    report.check("columns form a Hilbert basis", reconstruction.passed, reconstruction.witness)
    report.check("inherited inner product axioms", hilbert.axioms.passed)
    return MatrixModule(
        matrix=matrix,
        locale=locale,
        hilbert=hilbert,
        basis=basis,
        vectors=vectors,
        report=report,
    )


def matrix_from_module(basis_module: BasedModule) -> ProjectionMatrix:
    """m_st = <s,t> over the basis, indexed by the basis labels."""
    sigma = basis_module.basis.array
    entries = basis_module.inner.table[np.ix_(sigma, sigma)]
    return ProjectionMatrix(basis_module.module.base, basis_module.basis.labels, entries)


@dataclass(frozen=True, eq=False)
class CanonicalIso:
    """psi: X -> MB^S, x -> <x,-> on the basis, and its inverse phi: f -> V f_s s."""

    forward: ModuleHom
    backward: ModuleHom
    report: LawReport


def canonical_iso(basis_module: BasedModule, matrix_module: MatrixModule) -> CanonicalIso:
    """The specific isomorphism between a based module and MB^S of its Gram matrix."""
    module = basis_module.module
    target = matrix_module.locale
    sigma = basis_module.basis.array
    report = LawReport(subject=f"canonical iso {module.name} -> {target.name}")

    index = target.carrier.key_index
    coords = basis_module.coordinates
    missing = [x for x in range(module.size) if tuple(int(v) for v in coords[x]) not in index]
    report.check(
        "<x,-> lands in MB^S",
        not missing,
        describe("x", [module.carrier.labels[missing[0]]]) if missing else None,
    )
    if missing:
        forward_table = np.zeros(module.size, dtype=np.int64)
    else:
        forward_table = np.array(
            [index[tuple(int(v) for v in coords[x])] for x in range(module.size)], dtype=np.int64
        )
    terms = module.action[matrix_module.vectors, sigma[None, :]]
    backward_table = module.carrier.fold_join(terms, axis=1)
    forward = ModuleHom(module, target, forward_table, name="psi")
    backward = ModuleHom(target, module, backward_table, name="phi")

    report.check(
        "phi . psi = id",
        bool((backward_table[forward_table] == np.arange(module.size)).all()),
    )
    report.check(
        "psi . phi = id",
        bool((forward_table[backward_table] == np.arange(target.size)).all()),
    )
    report.extend(check_module_hom(forward), prefix="psi")
    report.extend(check_module_hom(backward), prefix="phi")
    moved = matrix_module.hilbert.inner.table[np.ix_(forward_table, forward_table)]
    hit = first_violation(moved != basis_module.inner.table)
    report.check(
        "<psi x, psi y> = <x, y>",
        hit is None,
        describe("xy", [module.carrier.labels[i] for i in hit]) if hit else None,
    )
    return CanonicalIso(forward=forward, backward=backward, report=report)


def check_matrix_roundtrip(
    matrix: ProjectionMatrix, limits: LimitsConfig | None = None
) -> LawReport:
    """matrix_from_module(module_from_matrix(M)) = M exactly."""
    matrix_module = module_from_matrix(matrix, limits)
    again = matrix_from_module(matrix_module.based)
    report = LawReport(subject="matrix round trip")
    report.extend(matrix_module.report)
    hit = first_violation(again.entries != matrix.entries)
    report.check(
        "M -> MB^S -> M is the identity",
        hit is None,
        describe("st", [matrix.index[i] for i in hit]) if hit else None,
    )
    return report


def check_module_roundtrip(
    basis_module: BasedModule, limits: LimitsConfig | None = None
) -> LawReport:
    """module_from_matrix(matrix_from_module(X)) is X up to the canonical iso."""
    matrix = matrix_from_module(basis_module)
    report = LawReport(subject=f"module round trip of {basis_module.module.name}")
    report.extend(is_projection_matrix(matrix))
    matrix_module = module_from_matrix(matrix, limits)
    report.extend(canonical_iso(basis_module, matrix_module).report)
    return report
