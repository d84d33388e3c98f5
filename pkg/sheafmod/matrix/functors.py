"""The functors M: based Hilbert modules -> Mat_B and X: Mat_B -> based Hilbert modules."""

import numpy as np

from sheafmod.bmodule.models import ModuleHom
from sheafmod.bmodule.morphism import compose as compose_homs
from sheafmod.bmodule.morphism import identity_hom, require_module_hom
from sheafmod.config import LimitsConfig
from sheafmod.errors import ArrowLawViolation, MalformedInput
from sheafmod.hilbert.models import BasedModule
from sheafmod.matrix.algebra import check_arrow, identity, make_arrow, matmul
from sheafmod.matrix.algebra import compose as compose_arrows
from sheafmod.matrix.models import MatArrow, MatrixModule
from sheafmod.matrix.modules import canonical_iso, matrix_from_module, module_from_matrix
from sheafmod.report import LawReport, describe, first_violation


def functor_M(hom: ModuleHom, source: BasedModule, target: BasedModule) -> MatArrow:
    """(M(h))_{st} = <h(t), s> for t in the source basis and s in the target basis."""
    if hom.source is not source.module or hom.target is not target.module:
        raise MalformedInput(f"{hom.name} does not run between the given based modules")
    require_module_hom(hom)
    images = hom.table[source.basis.array]
    entries = target.inner.table[np.ix_(images, target.basis.array)].T
    return make_arrow(matrix_from_module(source), matrix_from_module(target), entries)


def functor_X(
    arrow: MatArrow,
    source: MatrixModule | None = None,
    target: MatrixModule | None = None,
    limits: LimitsConfig | None = None,
) -> ModuleHom:
    """f -> Ff from MB^S to NB^T."""
    report = check_arrow(arrow)
    if not report.passed:
        failure = report.failures[0]
        raise ArrowLawViolation(f"not an arrow: {failure.law} fails", failure.witness)
    source = source or module_from_matrix(arrow.source, limits)
    target = target or module_from_matrix(arrow.target, limits)
    images = matmul(arrow.base, arrow.entries, source.vectors.T).T
    index = target.locale.carrier.key_index
    table = np.array([index[tuple(int(v) for v in row)] for row in images], dtype=np.int64)
    return ModuleHom(source.locale, target.locale, table, name="X(F)")


def check_functor_M(
    outer: ModuleHom,
    inner: ModuleHom,
    first: BasedModule,
    middle: BasedModule,
    last: BasedModule,
) -> LawReport:
    """M(h o k) = M(h) o M(k) and M(id) is the object matrix."""
    report = LawReport(subject="functor M")
    lhs = functor_M(compose_homs(outer, inner), first, last)
    rhs = compose_arrows(functor_M(outer, middle, last), functor_M(inner, first, middle))
    report.check("M(h o k) = M(h) o M(k)", lhs.same_as(rhs))
    ident = functor_M(identity_hom(first.module), first, first)
    report.check("M(id) = identity", ident.same_as(identity(matrix_from_module(first))))
    return report


def check_functor_X(
    outer: MatArrow, inner: MatArrow, limits: LimitsConfig | None = None
) -> LawReport:
    """X(F o G) = X(F) o X(G) and X(id) = id."""
    report = LawReport(subject="functor X")
    first = module_from_matrix(inner.source, limits)
    middle = module_from_matrix(inner.target, limits)
    last = module_from_matrix(outer.target, limits)
    lhs = functor_X(compose_arrows(outer, inner), first, last)
    rhs = compose_homs(functor_X(outer, middle, last), functor_X(inner, first, middle))
    report.check("X(F o G) = X(F) o X(G)", bool(np.array_equal(lhs.table, rhs.table)))
    ident = functor_X(identity(inner.source), first, first)
    report.check("X(id) = id", bool(np.array_equal(ident.table, np.arange(first.locale.size))))
    return report


def check_round_trips(
    hom: ModuleHom,
    source: BasedModule,
    target: BasedModule,
    limits: LimitsConfig | None = None,
) -> LawReport:
    """X(M(h)) agrees with h through the canonical isos, and M(X(F)) = F for F = M(h)."""
    report = LawReport(subject=f"M/X round trips on {hom.name}")
    arrow = functor_M(hom, source, target)
    src_mod = module_from_matrix(arrow.source, limits)
    tgt_mod = module_from_matrix(arrow.target, limits)
    psi_src = canonical_iso(source, src_mod).forward
    psi_tgt = canonical_iso(target, tgt_mod).forward
    back = functor_X(arrow, src_mod, tgt_mod)

    lhs = back.table[psi_src.table]
    rhs = psi_tgt.table[hom.table]
    hits = np.flatnonzero(lhs != rhs)
    report.check(
        "X(M(h)) o psi = psi o h",
        not len(hits),
        describe("x", [source.module.carrier.labels[hits[0]]]) if len(hits) else None,
    )

    again = functor_M(back, src_mod.based, tgt_mod.based)
    hit = first_violation(again.entries != arrow.entries)
    report.check(
        "M(X(F)) = F",
        hit is None,
        f"entry ({arrow.target.index[hit[0]]},{arrow.source.index[hit[1]]})" if hit else None,
    )
    return report
