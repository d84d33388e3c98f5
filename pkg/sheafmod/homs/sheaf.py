"""Sheaf homomorphisms and the sections presheaf."""

import numpy as np

from sheafmod.bmodule.models import BLocale, BModule, ModuleHom
from sheafmod.bmodule.morphism import check_module_hom
from sheafmod.errors import NotEtale, NotSheafHom
from sheafmod.homs.models import NaturalTransformation, SectionsPresheaf, SheafHom
from sheafmod.report import LawReport, describe


def _require_etale(module: BModule) -> BLocale:
    if not isinstance(module, BLocale) or not module.is_open or not module.etale:
        raise NotEtale(f"{module.name} is not an étale B-locale")
    return module


def is_sheaf_hom(hom: ModuleHom) -> LawReport:
    """Module-hom laws, h(S_X) in S_Y and spp(h(s)) = spp(s).

    The support condition is checked on sections and on all elements; the two
    forms must agree.
    """
    source, target = _require_etale(hom.source), _require_etale(hom.target)
    h = hom.table
    xlab = source.carrier.labels
    report = LawReport(subject=f"sheaf hom {hom.name}")
    report.extend(check_module_hom(hom))

    sections = np.asarray(source.sections, dtype=np.int64)
    target_sections = np.zeros(target.size, dtype=bool)
    target_sections[list(target.sections)] = True
    lost = sections[~target_sections[h[sections]]]
    report.check(
        "h(S_X) in S_Y",
        not len(lost),
        describe("s", [xlab[lost[0]]]) if len(lost) else None,
    )

    same = target.spp[h] == source.spp
    on_sections = bool(same[sections].all())
    everywhere = bool(same.all())
    bad = sections[~same[sections]]
    report.check(
        "spp(h(s)) = spp(s) on sections",
        on_sections,
        describe("s", [xlab[bad[0]]]) if len(bad) else None,
    )
    hits = np.flatnonzero(~same)
    report.check(
        "spp(h(x)) = spp(x) for all x",
        everywhere,
        describe("x", [xlab[hits[0]]]) if len(hits) else None,
    )
    report.check(
        "section form agrees with all-x form",
        on_sections == everywhere,
        f"sections={on_sections}, all={everywhere}",
    )
    return report


def make_sheaf_hom(hom: ModuleHom) -> SheafHom:
    """Wrap ``hom`` as a SheafHom, raising NotSheafHom with the first failing law."""
    report = is_sheaf_hom(hom)
    if not report.passed:
        failure = report.failures[0]
        raise NotSheafHom(f"{hom.name} fails {failure.law}", failure.witness)
    return SheafHom(hom=hom, report=report)


def sections_presheaf(locale: BLocale) -> SectionsPresheaf:
    """G(b) = {s : spp(s) = b} with restriction s -> as, functoriality checked."""
    locale = _require_etale(locale)
    base = locale.base
    spp = locale.spp
    fibers = tuple(
        tuple(s for s in locale.sections if spp[s] == b) for b in range(base.size)
    )
    report = LawReport(subject=f"sections presheaf of {locale.name}")
    sections = np.asarray(locale.sections, dtype=np.int64)
    is_section = np.zeros(locale.size, dtype=bool)
    is_section[sections] = True

    # restricted[a, s] = a s for every b-section s, landing in G(a ^ b)
    restricted = locale.action[:, sections]
    lands = is_section[restricted] & (
        spp[restricted] == base.meet_table[:, spp[sections]]
    )
    bad = np.argwhere(~lands)
    report.check(
        "as lies in G(a ^ spp(s))",
        not len(bad),
        describe("as", [base.labels[bad[0][0]], locale.carrier.labels[sections[bad[0][1]]]])
        if len(bad)
        else None,
    )
    report.check(
        "restriction along b <= b is the identity",
        bool((locale.action[spp[sections], sections] == sections).all()),
    )
    # a(bs) = (a ^ b)s covers composition along a <= b <= c
    twice = locale.action[np.arange(base.size)[:, None, None], restricted[None, :, :]]
    once = locale.action[base.meet_table][:, :, sections]
    report.check("restrictions compose", bool((twice == once).all()))
    report.check("G(0) = {0}", fibers[base.bottom] == (locale.carrier.bottom,))
    return SectionsPresheaf(locale=locale, fibers=fibers, report=report)


def presheaf_of_hom(sheaf_hom: SheafHom) -> NaturalTransformation:
    """The components s -> h(s) between sections presheaves, naturality checked."""
    source = sections_presheaf(sheaf_hom.source)
    target = sections_presheaf(sheaf_hom.target)
    h = sheaf_hom.hom.table
    base = sheaf_hom.source.base
    components = tuple({s: int(h[s]) for s in fiber} for fiber in source.fibers)
    report = LawReport(subject=f"natural transformation of {sheaf_hom.hom.name}")

    misplaced = [
        (b, s) for b, comp in enumerate(components) for s, t in comp.items()
        if t not in target.fibers[b]
    ]
    report.check(
        "components land in the matching fiber",
        not misplaced,
        describe(
            "bs",
            [base.labels[misplaced[0][0]], sheaf_hom.source.carrier.labels[misplaced[0][1]]],
        )
        if misplaced
        else None,
    )
    sections = np.asarray(sheaf_hom.source.sections, dtype=np.int64)
    lhs = h[sheaf_hom.source.action[:, sections]]
    rhs = sheaf_hom.target.action[:, h[sections]]
    report.check("h(as) = a h(s)", bool((lhs == rhs).all()))
    return NaturalTransformation(
        source=source, target=target, components=components, report=report
    )
