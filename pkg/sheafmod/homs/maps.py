"""Maps of B-locales, direct images and the isomorphism of sheaf homs with étale maps."""

import logging
from collections.abc import Iterator, Sequence
from itertools import combinations

import numpy as np

from sheafmod.bmodule.models import BLocale, ModuleHom
from sheafmod.bmodule.morphism import check_module_hom
from sheafmod.config import LimitsConfig
from sheafmod.errors import NotAFrameHom, NotAHom, NotEtale, NotOpen
from sheafmod.hilbert.basis import etale_based
from sheafmod.homs.adjoint import adjoint
from sheafmod.homs.models import BLocaleMap, SheafHom
from sheafmod.homs.sheaf import is_sheaf_hom, make_sheaf_hom
from sheafmod.lattice.frame import check_frame_hom
from sheafmod.report import LawReport, describe, first_violation

logger = logging.getLogger(__name__)


def check_blocale_hom(source: BLocale, target: BLocale, inverse_image: np.ndarray) -> LawReport:
    """f*: Y -> X is a frame hom and a module hom, and module-hom-ness matches q* then f* = p*."""
    f = np.asarray(inverse_image, dtype=np.int64)
    report = check_frame_hom(target.carrier, source.carrier, f, subject="B-locale map f*")
    if not report.passed:
        return report
    pullback = ModuleHom(target, source, f, name="f*")
    module_hom = check_module_hom(pullback)
    report.extend(module_hom)
    over_base = f[target.pstar] == source.pstar
    hits = np.flatnonzero(~over_base)
    report.check(
        "f*(q*(b)) = p*(b)",
        not len(hits),
        describe("b", [source.base.labels[hits[0]]]) if len(hits) else None,
    )
    report.check(
        "module hom iff commutes with projections",
        module_hom.passed == (not len(hits)),
        f"module hom={module_hom.passed}, over B={not len(hits)}",
    )
    return report


def make_map(
    source: BLocale, target: BLocale, inverse_image: Sequence[int] | np.ndarray, name: str = "f"
) -> BLocaleMap:
    """Validate f* and wrap it as a map X -> Y."""
    table = np.asarray(inverse_image, dtype=np.int64)
    report = check_blocale_hom(source, target, table)
    if not report.passed:
        failure = report.failures[0]
        frame_law = failure.law.startswith(("preserves", "table"))
        error = NotAFrameHom if frame_law else NotAHom
        raise error(f"{name}* fails {failure.law}", failure.witness)
    return BLocaleMap(source, target, table, name=name)


def identity_map(locale: BLocale) -> BLocaleMap:
    return BLocaleMap(locale, locale, np.arange(locale.size), name=f"id_{locale.name}")


def direct_image_table(fmap: BLocaleMap) -> np.ndarray:
    """f_!(x) = meet {y : x <= f*(y)}."""
    source, target = fmap.source, fmap.target
    admissible = source.carrier.order[:, fmap.inverse_image]
    candidates = np.where(admissible, np.arange(target.size)[None, :], target.carrier.top)
    return target.carrier.fold_meet(candidates, axis=1)


def direct_image(fmap: BLocaleMap) -> tuple[ModuleHom, LawReport]:
    """f_! with the adjunction laws, and Frobenius reciprocity when both ends are étale."""
    source, target = fmap.source, fmap.target
    if not source.is_open or not target.is_open:
        raise NotOpen(f"direct image of {fmap.name} needs open source and target")
    shriek = direct_image_table(fmap)
    fstar = fmap.inverse_image
    xlab, ylab = source.carrier.labels, target.carrier.labels
    report = LawReport(subject=f"direct image of {fmap.name}")

    hits = np.flatnonzero(~source.carrier.order[np.arange(source.size), fstar[shriek]])
    report.check(
        "x <= f*(f_!(x))",
        not len(hits),
        describe("x", [xlab[hits[0]]]) if len(hits) else None,
    )
    hits = np.flatnonzero(~target.carrier.order[shriek[fstar], np.arange(target.size)])
    report.check(
        "f_!(f*(y)) <= y",
        not len(hits),
        describe("y", [ylab[hits[0]]]) if len(hits) else None,
    )
    if source.etale and target.etale:
        # lhs[x, y] = f_!(x ^ f*(y)), rhs[x, y] = f_!(x) ^ y
        lhs = shriek[source.carrier.meet_table[:, fstar]]
        rhs = target.carrier.meet_table[shriek]
        hit = first_violation(lhs != rhs)
        report.check(
            "f_!(x ^ f*(y)) = f_!(x) ^ y",
            hit is None,
            describe("xy", [xlab[hit[0]], ylab[hit[1]]]) if hit else None,
        )
    hom = ModuleHom(source, target, shriek, name=f"{fmap.name}_!")
    return hom, report


def check_dagger_is_direct_image(fmap: BLocaleMap) -> LawReport:
    """f_! = (f*)† and f* = (f_!)† as exact tables."""
    source, target = fmap.source, fmap.target
    if not source.etale or not target.etale:
        raise NotEtale(f"{fmap.name} does not run between étale B-locales")
    based_x, based_y = etale_based(source), etale_based(target)
    shriek, report = direct_image(fmap)
    report.subject = f"f_! = (f*)† for {fmap.name}"

    pull_dagger = adjoint(fmap.pullback, based_y, based_x.hilbert)
    report.extend(pull_dagger.report, prefix="f*")
    hits = np.flatnonzero(pull_dagger.hom.table != shriek.table)
    report.check(
        "f_! = (f*)†",
        not len(hits),
        describe("x", [source.carrier.labels[hits[0]]]) if len(hits) else None,
    )
    shriek_dagger = adjoint(shriek, based_x, based_y.hilbert)
    hits = np.flatnonzero(shriek_dagger.hom.table != fmap.inverse_image)
    report.check(
        "f* = (f_!)†",
        not len(hits),
        describe("y", [target.carrier.labels[hits[0]]]) if len(hits) else None,
    )
    return report


def _subsets(size: int, limits: LimitsConfig, seed: int) -> Iterator[np.ndarray]:
    """Every subset of range(size), or a seeded sample (always including the empty set)."""
    if size <= limits.exhaustive_meet_carrier:
        for r in range(size + 1):
            for subset in combinations(range(size), r):
                yield np.asarray(subset, dtype=np.int64)
        return
    rng = np.random.default_rng(seed)
    yield np.zeros(0, dtype=np.int64)
    for _ in range(limits.random_meet_subsets - 1):
        yield np.flatnonzero(rng.random(size) < 0.5)


def check_meet_preservation(
    sheaf_hom: SheafHom | ModuleHom,
    limits: LimitsConfig | None = None,
    seed: int = 0,
) -> LawReport:
    """h† preserves all meets, checked alongside the section meet lemmas of the source."""
    limits = limits or LimitsConfig()
    if isinstance(sheaf_hom, ModuleHom):
        sheaf_hom = make_sheaf_hom(sheaf_hom)
    source, target = sheaf_hom.source, sheaf_hom.target
    based_x, based_y = etale_based(source), etale_based(target)
    dagger = adjoint(sheaf_hom.hom, based_x, based_y.hilbert).hom.table
    report = LawReport(subject=f"meet preservation of {sheaf_hom.hom.name}†")

    ycar, xcar = target.carrier, source.carrier
    witness = None
    sampled = target.size > limits.exhaustive_meet_carrier
    for subset in _subsets(target.size, limits, seed):
        lhs = dagger[ycar.meet_set(int(y) for y in subset)]
        rhs = xcar.meet_set(int(dagger[y]) for y in subset)
        if lhs != rhs:
            witness = "S={" + ", ".join(ycar.labels[y] for y in subset) + "}"
            break
    report.check(
        "h†(meet S) = meet h†(S)",
        witness is None,
        witness,
        note=f"{limits.random_meet_subsets} seeded subsets" if sampled else None,
    )
    report.extend(check_section_meet_lemmas(source, limits, seed))
    return report


def check_section_meet_lemmas(
    locale: BLocale, limits: LimitsConfig | None = None, seed: int = 0
) -> LawReport:
    """(meet b_a)s = meet (b_a s) and spp(meet S) = meet spp(S) over non-empty families."""
    limits = limits or LimitsConfig()
    base, carrier = locale.base, locale.carrier
    sections = np.asarray(locale.sections, dtype=np.int64)
    report = LawReport(subject=f"section meet lemmas on {locale.name}")

    # binary case: (a ^ b)s = as ^ bs
    lhs = locale.action[base.meet_table][:, :, sections]
    act = locale.action[:, sections]
    rhs = carrier.meet_table[act[:, None, :], act[None, :, :]]
    hit = first_violation(lhs != rhs)
    witness = None
    if hit is not None:
        witness = describe(
            "abs", [base.labels[hit[0]], base.labels[hit[1]], carrier.labels[sections[hit[2]]]]
        )
    if witness is None and base.size <= limits.exhaustive_meet_carrier:
        for subset in _subsets(base.size, limits, seed):
            if not len(subset):
                continue
            b = base.meet_set(int(v) for v in subset)
            expected = carrier.fold_meet(locale.action[subset][:, sections], axis=0)
            bad = np.flatnonzero(locale.action[b, sections] != expected)
            if len(bad):
                witness = "b={" + ", ".join(base.labels[v] for v in subset) + "}, "
                witness += f"s={carrier.labels[sections[bad[0]]]}"
                break
    report.check("(meet b_a)s = meet (b_a s)", witness is None, witness)

    witness = None
    is_section = np.zeros(locale.size, dtype=bool)
    is_section[sections] = True
    spp = locale.spp
    for subset in _subsets(len(sections), limits, seed):
        if not len(subset):
            continue
        members = sections[subset]
        if not is_section[carrier.join_set(int(s) for s in members)]:
            continue
        lhs_val = spp[carrier.meet_set(int(s) for s in members)]
        rhs_val = base.meet_set(int(spp[s]) for s in members)
        if lhs_val != rhs_val:
            witness = "S={" + ", ".join(carrier.labels[s] for s in members) + "}"
            break
    report.check("spp(meet S) = meet spp(S) when V S is a section", witness is None, witness)
    return report


def check_direct_image_is_sheaf_hom(fmap: BLocaleMap) -> LawReport:
    """f_! of a map between étale B-locales preserves sections and supports."""
    shriek, _ = direct_image(fmap)
    return is_sheaf_hom(shriek)


def map_from_sheaf_hom(sheaf_hom: SheafHom) -> tuple[BLocaleMap | None, LawReport]:
    """The map with inverse image h†, when h† is a map of B-locales."""
    source, target = sheaf_hom.source, sheaf_hom.target
    based_x, based_y = etale_based(source), etale_based(target)
    dagger = adjoint(sheaf_hom.hom, based_x, based_y.hilbert).hom
    report = check_blocale_hom(source, target, dagger.table)
    if not report.passed:
        return None, report
    return BLocaleMap(source, target, dagger.table, name=f"S({sheaf_hom.hom.name})"), report


def functor_S_iso_check(
    maps: Sequence[BLocaleMap],
    homs: Sequence[ModuleHom] = (),
    limits: LimitsConfig | None = None,
    seed: int = 0,
    require_negative: bool = False,
) -> LawReport:
    """f -> f_! is a bijection between maps of étale B-locales and sheaf homs.

    Each map's direct image must be a sheaf hom whose adjoint gives back f*.
    Every sheaf hom, whether a direct image or one of ``homs``, must define a
    map S(h) with S(h)_! = h and S(h)* = (S(h)_!)†. Module homs among ``homs``
    that are not sheaf homs must fail to define a map over B; with
    ``require_negative`` at least one of them must be found.
    """
    limits = limits or LimitsConfig()
    report = LawReport(subject="sheaf homs and étale maps")
    for k, fmap in enumerate(maps):
        prefix = fmap.name or f"map{k}"
        shriek, _ = direct_image(fmap)
        sheaf_report = is_sheaf_hom(shriek)
        report.check(f"{prefix}: f_! is a sheaf hom", sheaf_report.passed, _first(sheaf_report))
        if not sheaf_report.passed:
            continue
        rebuilt = _check_sheaf_hom(
            report, prefix, SheafHom(hom=shriek, report=sheaf_report), limits, seed
        )
        if rebuilt is not None:
            report.check(
                f"{prefix}: f* = (f_!)†",
                bool(np.array_equal(rebuilt.inverse_image, fmap.inverse_image)),
            )

    found_negative = False
    for hom in homs:
        source, target = hom.source, hom.target
        assert isinstance(source, BLocale) and isinstance(target, BLocale)
        sheaf_report = is_sheaf_hom(hom)
        if sheaf_report.passed:
            _check_sheaf_hom(report, hom.name, SheafHom(hom=hom, report=sheaf_report), limits, seed)
            continue
        based_x, based_y = etale_based(source), etale_based(target)
        dagger = adjoint(hom, based_x, based_y.hilbert).hom
        map_report = check_blocale_hom(source, target, dagger.table)
        if not map_report.passed:
            found_negative = True
            logger.debug("negative witness %s: %s", hom.name, _first(map_report))
        report.check(
            f"{hom.name}: not a sheaf hom, so h† is not a map of B-locales",
            not map_report.passed,
            f"{_first(sheaf_report)}; h† passes as a map",
        )
    if require_negative:
        report.check("a module hom outside the sheaf homs was found", found_negative)
    return report


def _check_sheaf_hom(
    report: LawReport, prefix: str, sheaf_hom: SheafHom, limits: LimitsConfig, seed: int
) -> BLocaleMap | None:
    """Record that h† is a map S(h) of B-locales with S(h)_! = h and S(h)* = (S(h)_!)†."""
    shriek = sheaf_hom.hom
    meets = check_meet_preservation(sheaf_hom, limits, seed)
    report.check(f"{prefix}: h† preserves meets", meets.passed, _first(meets))
    rebuilt, map_report = map_from_sheaf_hom(sheaf_hom)
    report.check(f"{prefix}: h† is a map of B-locales", rebuilt is not None, _first(map_report))
    if rebuilt is None:
        return None
    again, _ = direct_image(rebuilt)
    report.check(f"{prefix}: S(h)_! = h", bool(np.array_equal(again.table, shriek.table)))
    dagger = check_dagger_is_direct_image(rebuilt)
    report.check(f"{prefix}: S(h)* = (S(h)_!)†", dagger.passed, _first(dagger))
    return rebuilt


def _first(report: LawReport) -> str | None:
    if report.passed:
        return None
    failure = report.failures[0]
    return f"{failure.law}: {failure.witness}" if failure.witness else failure.law
