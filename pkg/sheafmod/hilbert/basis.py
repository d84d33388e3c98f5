"""Hilbert bases, the eight basis clauses, projectivity and the étale equivalence."""

import logging
from collections.abc import Sequence
from itertools import combinations

import numpy as np

from sheafmod.bmodule.construct import free_module, make_blocale
from sheafmod.bmodule.laws import check_stability
from sheafmod.bmodule.models import BLocale, BModule, ModuleHom, Projection
from sheafmod.bmodule.morphism import check_module_hom
from sheafmod.bmodule.support import check_open_conditions, support_candidate
from sheafmod.config import LimitsConfig
from sheafmod.errors import (
    InconsistentVerdicts,
    NoBasis,
    NotABLocale,
    NotAFrame,
    NotEtale,
    NotSupported,
)
from sheafmod.hilbert.inner import support_hilbert
from sheafmod.hilbert.models import (
    BasedModule,
    EquivalenceVerdict,
    HilbertBasis,
    HilbertModule,
    ProjectivitySplit,
    Verdict,
)
from sheafmod.lattice.frame import as_frame, semiring_matmul
from sheafmod.lattice.models import Frame
from sheafmod.report import LawReport, LawResult, describe, first_violation

logger = logging.getLogger(__name__)


def reconstruct(hilbert: HilbertModule, basis: Sequence[int] | np.ndarray) -> np.ndarray:
    """x -> V_{s in basis} <x,s>s for every x."""
    module = hilbert.module
    sigma = np.asarray(basis, dtype=np.int64)
    terms = module.action[hilbert.inner.table[:, sigma], sigma[None, :]]
    return module.carrier.fold_join(terms, axis=1)


def is_hilbert_basis(hilbert: HilbertModule, basis: Sequence[int] | HilbertBasis) -> LawResult:
    """Reconstruction x = V <x,s>s for every x, with the first failing x as witness."""
    elements = basis.elements if isinstance(basis, HilbertBasis) else tuple(basis)
    rebuilt = reconstruct(hilbert, elements)
    hits = np.flatnonzero(rebuilt != np.arange(hilbert.module.size))
    witness = None
    if len(hits):
        labels = hilbert.module.carrier.labels
        x = int(hits[0])
        witness = f"x={labels[x]} rebuilds to {labels[rebuilt[x]]}"
    return LawResult(law="x = V <x,s>s", passed=not len(hits), witness=witness)


def based(hilbert: HilbertModule, basis: Sequence[int] | HilbertBasis) -> BasedModule:
    """Attach a basis after checking reconstruction; raises NoBasis otherwise."""
    if not isinstance(basis, HilbertBasis):
        basis = HilbertBasis(tuple(int(s) for s in basis))
    verdict = is_hilbert_basis(hilbert, basis)
    if not verdict.passed:
        raise NoBasis(f"family is not a Hilbert basis of {hilbert.module.name}", verdict.witness)
    return BasedModule(hilbert, basis)


def check_projection_entries(base: Frame, entries: np.ndarray) -> LawReport:
    """M^T = M and M^2 = M over the (v, ^) semiring of ``base``."""
    report = LawReport(subject="projection matrix")
    labels = base.labels
    hit = first_violation(entries != entries.T)
    report.check(
        "M^T = M",
        hit is None,
        f"m[{hit[0]},{hit[1]}]={labels[entries[hit]]}" if hit else None,
    )
    squared = semiring_matmul(base, entries, entries)
    hit = first_violation(squared != entries)
    report.check(
        "M^2 = M",
        hit is None,
        f"(M^2)[{hit[0]},{hit[1]}]={labels[squared[hit]]}" if hit else None,
    )
    return report


def basis_properties(basis_module: BasedModule) -> LawReport:
    """The eight consequences of having a Hilbert basis, each checked exhaustively."""
    hilbert = basis_module.hilbert
    module = hilbert.module
    base, carrier = module.base, module.carrier
    ip = hilbert.inner.table
    diag = hilbert.inner.diagonal
    sigma = basis_module.basis.array
    coords = basis_module.coordinates
    xidx = np.arange(carrier.size)
    xlab = carrier.labels
    report = LawReport(subject=f"basis clauses on {module.name}")

    # (1) psi(x) = <x,-> is a module hom into B^S and phi(psi(x)) = x
    joined = base.join_table[coords[:, None, :], coords[None, :, :]]
    bad_join = coords[carrier.join_table] != joined
    bad_act = coords[module.action] != base.meet_table[
        np.arange(base.size)[:, None, None], coords[None, :, :]
    ]
    hit = first_violation(bad_join.any(axis=-1)) or first_violation(bad_act.any(axis=-1))
    split_ok = hit is None and bool((reconstruct(hilbert, sigma) == xidx).all())
    report.check(
        "(1) X is a retract of B^S",
        split_ok,
        "psi is not a module hom" if hit else "phi.psi != id",
    )

    report.check(
        "(2) V S = 1",
        carrier.join_set(int(s) for s in sigma) == carrier.top,
        f"V S = {xlab[carrier.join_set(int(s) for s in sigma)]}",
    )

    witness = None
    if len(sigma):
        _, first_idx, inverse = np.unique(coords, axis=0, return_index=True, return_inverse=True)
        first = first_idx[inverse.reshape(-1)]
    else:
        first = np.zeros(carrier.size, dtype=np.int64)
    dup = np.flatnonzero(first != xidx)
    if len(dup):
        witness = describe("xy", [xlab[first[dup[0]]], xlab[dup[0]]])
    report.check("(3) <x,s> = <y,s> for all s implies x = y", not len(dup), witness)

    gram = semiring_matmul(base, coords, coords.T)
    hit = first_violation(gram != ip)
    report.check(
        "(4) <x,y> = V <x,s> ^ <s,y>",
        hit is None,
        describe("xy", [xlab[i] for i in hit]) if hit else None,
    )

    hits = np.flatnonzero(module.action[diag, xidx] != xidx)
    report.check(
        "(5) <x,x>x = x",
        not len(hits),
        describe("x", [xlab[hits[0]]]) if len(hits) else None,
    )

    hit = first_violation(~base.order[ip, diag[:, None]])
    report.check(
        "(6) <x,y> <= <x,x>",
        hit is None,
        describe("xy", [xlab[i] for i in hit]) if hit else None,
    )

    below = carrier.order[:, sigma]
    by_norm = module.action[diag[:, None], sigma[None, :]] == xidx[:, None]
    by_coord = module.action[coords, sigma[None, :]] == xidx[:, None]
    hit = first_violation((below != by_norm) | (by_norm != by_coord))
    report.check(
        "(7) x <= s iff x = <x,x>s iff x = <x,s>s",
        hit is None,
        describe("xs", [xlab[hit[0]], xlab[sigma[hit[1]]]]) if hit else None,
    )

    gram_sigma = ip[np.ix_(sigma, sigma)]
    matrix = check_projection_entries(base, gram_sigma)
    report.check(
        "(8) m_st = <s,t> is a projection matrix",
        matrix.passed,
        matrix.failures[0].witness if not matrix.passed else None,
    )
    return report


def check_basis_converse(hilbert: HilbertModule, basis: Sequence[int]) -> LawReport:
    """A nondegenerate inner product satisfying clause (4) for S has S as a Hilbert basis."""
    module = hilbert.module
    sigma = np.asarray(basis, dtype=np.int64)
    coords = hilbert.inner.table[:, sigma]
    report = LawReport(subject=f"basis converse on {module.name}")
    gram = semiring_matmul(module.base, coords, coords.T)
    premises = hilbert.nondegenerate.passed and bool((gram == hilbert.inner.table).all())
    verdict = is_hilbert_basis(hilbert, sigma)
    report.check(
        "nondegenerate and clause (4) imply S is a Hilbert basis",
        verdict.passed or not premises,
        verdict.witness,
        note=None if premises else "premises do not hold",
    )
    return report


def projectivity_split(
    basis_module: BasedModule, limits: LimitsConfig | None = None
) -> ProjectivitySplit:
    """phi(f) = V f(s)s and psi(x)(s) = <x,s>, with phi.psi = id checked.

    Builds the free module B^S explicitly, so it is bounded by the free-carrier
    guardrail.
    """
    module = basis_module.module
    sigma = basis_module.basis.array
    free = free_module(module.base, len(sigma), limits=limits)
    vectors = np.asarray(free.carrier.keys, dtype=np.int64).reshape(free.size, len(sigma))
    phi_table = module.carrier.fold_join(module.action[vectors, sigma[None, :]], axis=1)
    psi_table = np.array(
        [free.carrier.key_index[tuple(int(v) for v in row)] for row in basis_module.coordinates],
        dtype=np.int64,
    )
    phi = ModuleHom(free, module, phi_table, name="phi")
    psi = ModuleHom(module, free, psi_table, name="psi")

    report = LawReport(subject=f"projectivity split of {module.name}")
    report.extend(check_module_hom(phi), prefix="phi")
    report.extend(check_module_hom(psi), prefix="psi")
    hits = np.flatnonzero(phi_table[psi_table] != np.arange(module.size))
    report.check(
        "phi.psi = id",
        not len(hits),
        describe("x", [module.carrier.labels[hits[0]]]) if len(hits) else None,
    )
    psi_phi = bool((psi_table[phi_table] == np.arange(free.size)).all())
    logger.debug("projectivity split of %s: psi.phi = id is %s", module.name, psi_phi)
    return ProjectivitySplit(phi=phi, psi=psi, report=report, psi_phi_identity=psi_phi)


def support_from_inner(hilbert: HilbertModule, limits: LimitsConfig | None = None) -> Projection:
    """spp(x) = <x,x> for a supported inner product on a frame carrier.

    The module is re-validated as a B-locale; stability, openness with this
    support and agreement with the meet formula are recorded on the report.
    """
    module = hilbert.module
    if not hilbert.supported.passed:
        raise NotSupported(
            f"inner product on {module.name} is not supported", hilbert.supported.witness
        )
    frame = as_frame(module.carrier, limits)
    framed = BModule(module.base, frame, module.action, name=module.name)
    spp = np.array(hilbert.inner.diagonal, dtype=np.int64)

    report = LawReport(subject=f"support from inner product on {module.name}")
    report.extend(check_stability(framed))
    conditions = check_open_conditions(framed, spp)
    report.extend(conditions)
    candidate = support_candidate(framed)
    hits = np.flatnonzero(candidate != spp)
    report.check(
        "<x,x> = meet {b : x <= b1}",
        not len(hits),
        describe("x", [frame.labels[hits[0]]]) if len(hits) else None,
    )
    return Projection(
        pstar=framed.unit_image,
        spp=spp,
        is_open=report.passed,
        report=report,
    )


def etale_based(locale: BLocale) -> BasedModule:
    """An étale B-locale with its support inner product and its local sections as basis."""
    if not locale.is_open or not locale.etale:
        raise NotEtale(f"{locale.name} is not étale")
    hilbert = support_hilbert(locale)
    labels = tuple(locale.carrier.labels[s] for s in locale.sections)
    return based(hilbert, HilbertBasis(locale.sections, labels))


def _admissible_family(hilbert: HilbertModule) -> np.ndarray:
    """Elements s whose terms <x,s>s never exceed x; every basis lies inside this set."""
    module = hilbert.module
    terms = module.action[hilbert.inner.table, np.arange(module.size)[None, :]]
    ok = module.carrier.order[terms, np.arange(module.size)[:, None]]
    return np.flatnonzero(ok.all(axis=0))


def find_basis(
    hilbert: HilbertModule, limits: LimitsConfig | None = None
) -> tuple[int, ...] | None:
    """Search for a Hilbert basis of the given inner product.

    Reconstruction is monotone in the family and a basis can only use
    admissible elements, so the full admissible family decides existence.
    Small carriers are additionally searched exhaustively and the two answers
    must agree.
    """
    limits = limits or LimitsConfig()
    family = tuple(int(s) for s in _admissible_family(hilbert))
    found = family if is_hilbert_basis(hilbert, family).passed else None
    if hilbert.module.size <= limits.basis_search_carrier:
        xidx = np.arange(hilbert.module.size)
        nonzero = list(range(1, hilbert.module.size))
        searched = None
        for r in range(len(nonzero) + 1):
            for subset in combinations(nonzero, r):
                if (reconstruct(hilbert, subset) == xidx).all():
                    searched = subset
                    break
            if searched is not None:
                break
        if (searched is None) != (found is None):
            raise InconsistentVerdicts(
                f"basis search and admissible family disagree on {hilbert.module.name}",
                f"search={searched}, admissible={found}",
            )
        return searched
    return found


def etale_equivalence_check(
    module: BModule, limits: LimitsConfig | None = None
) -> EquivalenceVerdict:
    """Decide pre-Hilbert-with-basis, Hilbert-with-basis and étale independently."""
    limits = limits or LimitsConfig()
    report = LawReport(subject=f"étale equivalence on {module.name}")
    locale: BLocale | None = None
    try:
        locale = module if isinstance(module, BLocale) else make_blocale(module, limits)
    except (NotABLocale, NotAFrame) as exc:
        report.check("B-locale", False, str(exc))

    if locale is None or not locale.is_open:
        if locale is not None:
            report.check("open", False, "support fails spp(x)x = x or equivariance")
        no = Verdict.NO
        report.check("the three conditions agree", True)
        return EquivalenceVerdict(
            subject=module.name,
            pre_hilbert_with_basis=no,
            hilbert_with_basis=no,
            etale=no,
            report=report,
        )

    etale = Verdict.YES if locale.etale else Verdict.NO
    hilbert = support_hilbert(locale)
    report.check("support inner product axioms", hilbert.axioms.passed)
    report.check(
        "support inner product supported",
        hilbert.supported.passed,
        hilbert.supported.witness,
    )
    if hilbert.weakly_nondegenerate is not None:
        report.check(
            "support inner product weakly nondegenerate",
            hilbert.weakly_nondegenerate.passed,
            hilbert.weakly_nondegenerate.witness,
        )

    if locale.etale:
        canonical = is_hilbert_basis(hilbert, locale.sections)
        report.check("local sections form a Hilbert basis", canonical.passed, canonical.witness)
        basis: tuple[int, ...] | None = locale.sections if canonical.passed else None
    else:
        basis = find_basis(hilbert, limits)
    pre = Verdict.YES if basis is not None and hilbert.axioms.passed else Verdict.NO
    full = Verdict.YES if pre is Verdict.YES and hilbert.nondegenerate.passed else Verdict.NO
    if basis is not None:
        report.extend(basis_properties(BasedModule(hilbert, HilbertBasis(tuple(basis)))))

    verdict = EquivalenceVerdict(
        subject=module.name,
        pre_hilbert_with_basis=pre,
        hilbert_with_basis=full,
        etale=etale,
        report=report,
    )
    report.check(
        "the three conditions agree",
        verdict.agree,
        f"pre-Hilbert={pre.value}, Hilbert={full.value}, étale={etale.value}",
    )
    return verdict
