"""Supports, openness, local sections and étale-ness."""

import logging

import numpy as np

from sheafmod.bmodule.laws import check_stability
from sheafmod.bmodule.models import BLocale, BModule, Projection
from sheafmod.errors import NotOpen
from sheafmod.lattice.frame import check_frame_hom, is_monotone
from sheafmod.report import LawReport, describe, first_violation

logger = logging.getLogger(__name__)


def support_candidate(module: BModule) -> np.ndarray:
    """spp(x) = meet {b : x <= b1}, the left adjoint candidate of b -> b1."""
    base, carrier = module.base, module.carrier
    pstar = module.unit_image
    admissible = carrier.order[:, pstar]
    candidates = np.where(admissible, np.arange(base.size)[None, :], base.top)
    return base.fold_meet(candidates, axis=1)


def compute_support(module: BModule) -> Projection:
    """Candidate support with its openness verdict and adjunction checks."""
    base, carrier = module.base, module.carrier
    a = module.action
    pstar = module.unit_image
    spp = support_candidate(module)
    bidx, xidx = np.arange(base.size), np.arange(carrier.size)
    blab, xlab = base.labels, carrier.labels

    report = LawReport(subject=f"support of {module.name}")
    bad = a[spp, xidx] != xidx
    hit = first_violation(bad)
    report.check("spp(x)x = x", hit is None, describe("x", [xlab[hit[0]]]) if hit else None)

    bad = spp[a] != base.meet_table[bidx[:, None], spp[None, :]]
    hit = first_violation(bad)
    report.check(
        "spp(bx) = b ^ spp(x)",
        hit is None,
        describe("bx", [blab[hit[0]], xlab[hit[1]]]) if hit else None,
    )
    is_open = report.passed

    shriek_meets: bool | None = None
    if is_open:
        adjoint = base.order[spp[:, None], bidx[None, :]] == carrier.order[:, pstar]
        hit = first_violation(~adjoint)
        report.check(
            "spp(x) <= b iff x <= b1",
            hit is None,
            describe("xb", [xlab[hit[0]], blab[hit[1]]]) if hit else None,
        )
        bad = ~base.order[spp[pstar], bidx]
        hit = first_violation(bad)
        report.check("spp(b1) <= b", hit is None, describe("b", [blab[hit[0]]]) if hit else None)
        hom = check_frame_hom(carrier, base, spp, "spp")
        for law in ("preserves 0", "preserves binary joins"):
            result = hom.verdict(law)
            if result is not None:
                report.check(f"spp {law}", result.passed, result.witness)
        # meets are recorded on the projection, not required of an open map
        shriek_meets = all(
            r.passed for r in hom.results if r.law in ("preserves 1", "preserves binary meets")
        )
    logger.debug("support of %s: open=%s", module.name, is_open)
    return Projection(
        pstar=pstar,
        spp=spp,
        is_open=is_open,
        report=report,
        shriek_preserves_meets=shriek_meets,
    )


def support(locale: BLocale) -> Projection:
    """The support of a B-locale with its openness verdict."""
    return locale.projection


def check_open_conditions(module: BModule, spp: np.ndarray) -> LawReport:
    """The three support conditions spp(x)1 >= x, spp(x)x >= x, spp(x)x = x, and their agreement."""
    base, carrier = module.base, module.carrier
    a = module.action
    spp = np.asarray(spp, dtype=np.int64)
    xidx, bidx = np.arange(carrier.size), np.arange(base.size)
    xlab = carrier.labels
    report = LawReport(subject=f"open-map conditions of {module.name}")

    hit = is_monotone(carrier, base, spp)
    report.check("monotone", hit is None, describe("xy", [xlab[i] for i in hit]) if hit else None)
    bad = spp[a] != base.meet_table[bidx[:, None], spp[None, :]]
    hit = first_violation(bad)
    report.check(
        "equivariant",
        hit is None,
        describe("bx", [base.labels[hit[0]], xlab[hit[1]]]) if hit else None,
    )

    c1 = carrier.order[xidx, module.unit_image[spp]]
    c2 = carrier.order[xidx, a[spp, xidx]]
    c3 = a[spp, xidx] == xidx
    for law, ok in (("spp(x)1 >= x", c1), ("spp(x)x >= x", c2), ("spp(x)x = x", c3)):
        hit = first_violation(~ok)
        report.check(law, hit is None, describe("x", [xlab[hit[0]]]) if hit else None)
    disagree = (c1 != c2) | (c2 != c3)
    hit = first_violation(disagree)
    report.check(
        "conditions agree pointwise",
        hit is None,
        describe("x", [xlab[hit[0]]]) if hit else None,
    )
    bad = ~base.order[spp[module.unit_image], bidx]
    hit = first_violation(bad)
    report.check(
        "counit spp(b1) <= b",
        hit is None,
        describe("b", [base.labels[hit[0]]]) if hit else None,
    )
    return report


def check_support_characterization(module: BModule, candidate: np.ndarray) -> LawReport:
    """A monotone equivariant s with s(x)x = x forces stability.

    Stability is not assumed; it is recomputed and must hold whenever the
    three premises do.
    """
    base, carrier = module.base, module.carrier
    a = module.action
    s = np.asarray(candidate, dtype=np.int64)
    xidx, bidx = np.arange(carrier.size), np.arange(base.size)
    xlab = carrier.labels
    report = LawReport(subject=f"support characterization of {module.name}")

    hit = is_monotone(carrier, base, s)
    report.check(
        "premise: monotone",
        hit is None,
        describe("xy", [xlab[i] for i in hit]) if hit else None,
    )
    bad = s[a] != base.meet_table[bidx[:, None], s[None, :]]
    hit = first_violation(bad)
    report.check(
        "premise: s(bx) = b ^ s(x)",
        hit is None,
        describe("bx", [base.labels[hit[0]], xlab[hit[1]]]) if hit else None,
    )
    hit = first_violation(a[s, xidx] != xidx)
    report.check("premise: s(x)x = x", hit is None, describe("x", [xlab[hit[0]]]) if hit else None)

    if report.passed:
        stability = check_stability(module)
        report.check(
            "stability forced",
            stability.passed,
            stability.failures[0].witness if not stability.passed else None,
        )
    return report


def compute_sections(module: BModule, spp: np.ndarray) -> tuple[int, ...]:
    """Elements s with spp(x)s = x for every x <= s."""
    carrier = module.carrier
    xidx = np.arange(carrier.size)
    restricted = module.action[spp[:, None], xidx[None, :]]
    ok = ~carrier.order | (restricted == xidx[:, None])
    return tuple(int(s) for s in np.flatnonzero(ok.all(axis=0)))


def local_sections(locale: BLocale) -> tuple[int, ...]:
    """The local sections of an open B-locale; always contains 0."""
    if not locale.is_open:
        raise NotOpen(f"{locale.name} is not open; local sections are undefined")
    return locale.sections


def is_etale(locale: BLocale) -> bool:
    """Whether the local sections join to the top element."""
    if not locale.is_open:
        raise NotOpen(f"{locale.name} is not open")
    return locale.etale
