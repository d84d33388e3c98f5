"""Inner products: construction from supports, axioms and flags."""

import logging

import numpy as np

from sheafmod.bmodule.models import BLocale, BModule
from sheafmod.errors import NotOpen
from sheafmod.hilbert.models import HilbertModule, InnerProduct
from sheafmod.lattice.models import Frame
from sheafmod.report import LawReport, LawResult, describe, first_violation

logger = logging.getLogger(__name__)


def inner_from_support(locale: BLocale) -> InnerProduct:
    """<x, y> = spp(x ^ y) on an open B-locale."""
    if not locale.is_open:
        raise NotOpen(f"{locale.name} is not open; it has no support inner product")
    return InnerProduct(locale, locale.spp[locale.carrier.meet_table])


def check_axioms(inner: InnerProduct) -> LawReport:
    """Symmetry, equivariance in the left variable and join-linearity in the left variable."""
    module = inner.module
    base, carrier = module.base, module.carrier
    ip = inner.table
    xlab = carrier.labels
    report = LawReport(subject=f"inner product axioms on {module.name}")

    hit = first_violation(ip != ip.T)
    report.check(
        "<x,y> = <y,x>",
        hit is None,
        describe("xy", [xlab[i] for i in hit]) if hit else None,
    )

    bidx = np.arange(base.size)
    bad = ip[module.action] != base.meet_table[bidx[:, None, None], ip[None, :, :]]
    hit = first_violation(bad)
    report.check(
        "<bx,y> = b ^ <x,y>",
        hit is None,
        describe("bxy", [base.labels[hit[0]], xlab[hit[1]], xlab[hit[2]]]) if hit else None,
    )

    hit = first_violation(ip[carrier.bottom] != base.bottom)
    report.check("<0,y> = 0", hit is None, describe("y", [xlab[hit[0]]]) if hit else None)

    witness = None
    for x in range(carrier.size):
        # bad[x2, y]: <x v x2, y> != <x,y> v <x2,y>
        bad = ip[carrier.join_table[x]] != base.join_table[ip[x][None, :], ip]
        hit = first_violation(bad)
        if hit is not None:
            witness = describe(["x", "x'", "y"], [xlab[x], xlab[hit[0]], xlab[hit[1]]])
            break
    report.check("<x v x',y> = <x,y> v <x',y>", witness is None, witness)
    return report


def _duplicate_rows(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Representative row index for each row and a mask of rows equal to an earlier one."""
    if rows.shape[1] == 0:
        first = np.zeros(rows.shape[0], dtype=np.int64)
    else:
        _, first_idx, inverse = np.unique(rows, axis=0, return_index=True, return_inverse=True)
        first = first_idx[inverse.reshape(-1)]
    return first, first != np.arange(rows.shape[0])


def check_nondegenerate(inner: InnerProduct) -> LawResult:
    """<x,-> = <y,-> implies x = y."""
    first, dup = _duplicate_rows(inner.table)
    labels = inner.module.carrier.labels
    hits = np.flatnonzero(dup)
    witness = None
    if len(hits):
        y = int(hits[0])
        witness = describe("xy", [labels[first[y]], labels[y]])
    return LawResult(law="nondegenerate", passed=not len(hits), witness=witness)


def check_weakly_nondegenerate(inner: InnerProduct) -> LawResult:
    """<x,-> = <y,-> implies not x = not y, using the Heyting negation of the carrier."""
    carrier = inner.module.carrier
    if not isinstance(carrier, Frame):
        return LawResult(
            law="weakly nondegenerate",
            passed=False,
            witness="carrier is not a frame",
        )
    first, _ = _duplicate_rows(inner.table)
    neg = carrier.negation_table
    hits = np.flatnonzero(neg[first] != neg)
    witness = None
    if len(hits):
        y = int(hits[0])
        witness = describe("xy", [carrier.labels[first[y]], carrier.labels[y]])
    return LawResult(law="weakly nondegenerate", passed=not len(hits), witness=witness)


def check_strict(inner: InnerProduct) -> LawResult:
    """<x,x> = 0 implies x = 0."""
    module = inner.module
    hits = np.flatnonzero(
        (inner.diagonal == module.base.bottom) & (np.arange(module.size) != module.carrier.bottom)
    )
    witness = describe("x", [module.carrier.labels[hits[0]]]) if len(hits) else None
    return LawResult(law="strict", passed=not len(hits), witness=witness)


def check_supported(inner: InnerProduct) -> LawResult:
    """<x,x>x = x."""
    module = inner.module
    xidx = np.arange(module.size)
    hits = np.flatnonzero(module.action[inner.diagonal, xidx] != xidx)
    witness = describe("x", [module.carrier.labels[hits[0]]]) if len(hits) else None
    return LawResult(law="supported", passed=not len(hits), witness=witness)


def make_hilbert(inner: InnerProduct) -> HilbertModule:
    """Check the axioms and compute every flag once."""
    weak = None
    if isinstance(inner.module.carrier, Frame):
        weak = check_weakly_nondegenerate(inner)
    hilbert = HilbertModule(
        inner=inner,
        axioms=check_axioms(inner),
        nondegenerate=check_nondegenerate(inner),
        strict=check_strict(inner),
        supported=check_supported(inner),
        weakly_nondegenerate=weak,
    )
    logger.debug(
        "inner product on %s: pre-Hilbert=%s nondegenerate=%s",
        inner.module.name,
        hilbert.is_pre_hilbert,
        hilbert.nondegenerate.passed,
    )
    return hilbert


def support_hilbert(locale: BLocale) -> HilbertModule:
    """The Hilbert structure of an open B-locale given by its support."""
    return make_hilbert(inner_from_support(locale))


def inner_from_table(module: BModule, table: np.ndarray) -> HilbertModule:
    return make_hilbert(InnerProduct(module, table))
