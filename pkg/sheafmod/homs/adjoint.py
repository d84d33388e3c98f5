"""Adjoints of maps between based Hilbert modules."""

import numpy as np

from sheafmod.bmodule.models import ModuleHom
from sheafmod.bmodule.morphism import check_module_hom, identity_hom
from sheafmod.bmodule.morphism import compose as compose_homs
from sheafmod.errors import MalformedInput, NoBasis
from sheafmod.hilbert.basis import is_hilbert_basis
from sheafmod.hilbert.models import BasedModule, HilbertModule
from sheafmod.homs.models import Adjoint
from sheafmod.matrix.algebra import transpose
from sheafmod.matrix.functors import functor_M
from sheafmod.report import LawReport, describe, first_violation


def adjoint_table(table: np.ndarray, source: BasedModule, target: HilbertModule) -> np.ndarray:
    """h†(y) = V_t <h(t), y> t over the source basis."""
    module = source.module
    sigma = source.basis.array
    h = np.asarray(table, dtype=np.int64)
    # coeffs[y, t] = <h(t), y>
    coeffs = target.inner.table[h[sigma]].T
    return module.carrier.fold_join(module.action[coeffs, sigma[None, :]], axis=1)


def _adjoint_identity(
    table: np.ndarray, dagger: np.ndarray, source: HilbertModule, target: HilbertModule
) -> tuple[int, ...] | None:
    """First (x, y) with <h(x), y> != <x, h†(y)>, or None."""
    lhs = target.inner.table[table]
    rhs = source.inner.table[:, dagger]
    return first_violation(lhs != rhs)


def adjoint(hom: ModuleHom, source: BasedModule, target: HilbertModule) -> Adjoint:
    """h† from a basis of the source, with the adjoint identity and uniqueness checked."""
    if hom.source is not source.module or hom.target is not target.module:
        raise MalformedInput(f"{hom.name} does not run between the given modules")
    verdict = is_hilbert_basis(source.hilbert, source.basis)
    if not verdict.passed:
        raise NoBasis(f"source of {hom.name} has no valid basis", verdict.witness)

    dagger = adjoint_table(hom.table, source, target)
    report = LawReport(subject=f"adjoint of {hom.name}")
    hit = _adjoint_identity(hom.table, dagger, source.hilbert, target)
    xlab, ylab = source.module.carrier.labels, target.module.carrier.labels
    report.check(
        "<h(x),y> = <x,h†(y)>",
        hit is None,
        describe("xy", [xlab[hit[0]], ylab[hit[1]]]) if hit else None,
    )

    # z satisfies the identity at y iff the column <-, z> equals <h(-), y>
    wanted = target.inner.table[hom.table]
    matches = (source.inner.table[:, :, None] == wanted[:, None, :]).all(axis=0)
    counts = matches.sum(axis=0)
    bad = np.flatnonzero(counts != 1)
    report.check(
        "adjoint is unique",
        not len(bad),
        f"y={ylab[bad[0]]} has {counts[bad[0]]} solutions" if len(bad) else None,
    )
    result = ModuleHom(target.module, source.module, dagger, name=f"{hom.name}†")
    return Adjoint(hom=result, report=report)


def is_adjointable_iff_hom_check(
    table: np.ndarray, source: BasedModule, target: BasedModule, name: str = "h"
) -> LawReport:
    """Decide hom-ness and adjointability independently; the verdicts must agree."""
    candidate = ModuleHom(source.module, target.module, table, name=name)
    is_hom = check_module_hom(candidate).passed
    dagger = adjoint_table(candidate.table, source, target.hilbert)
    adjointable = _adjoint_identity(candidate.table, dagger, source.hilbert, target.hilbert) is None
    report = LawReport(subject=f"adjointable iff hom for {name}")
    report.check(
        "adjointable iff module hom",
        is_hom == adjointable,
        f"hom={is_hom}, adjointable={adjointable}",
        note=f"hom={is_hom}, adjointable={adjointable}",
    )
    return report


def check_strong_duality(
    outer: ModuleHom,
    inner: ModuleHom,
    first: BasedModule,
    middle: BasedModule,
    last: BasedModule,
) -> LawReport:
    """(h o k)† = k† o h†, id† = id and (h†)† = h."""
    report = LawReport(subject="dagger duality")
    h_dag = adjoint(outer, middle, last.hilbert).hom
    k_dag = adjoint(inner, first, middle.hilbert).hom
    composite = adjoint(compose_homs(outer, inner), first, last.hilbert).hom
    report.check(
        "(h o k)† = k† o h†",
        bool(np.array_equal(composite.table, k_dag.table[h_dag.table])),
    )
    ident = identity_hom(first.module)
    report.check(
        "id† = id",
        bool(np.array_equal(adjoint(ident, first, first.hilbert).hom.table, ident.table)),
    )
    twice = adjoint(h_dag, last, middle.hilbert).hom
    report.check("(h†)† = h", bool(np.array_equal(twice.table, outer.table)))
    return report


def check_dagger_is_transpose(
    hom: ModuleHom, source: BasedModule, target: BasedModule
) -> LawReport:
    """M(h†) = M(h)^T."""
    report = LawReport(subject=f"matrix of the adjoint of {hom.name}")
    dagger = adjoint(hom, source, target.hilbert).hom
    lhs = functor_M(dagger, target, source)
    rhs = transpose(functor_M(hom, source, target))
    report.check("M(h†) = M(h)^T", lhs.same_as(rhs))
    return report
