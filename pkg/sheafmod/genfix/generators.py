"""Seeded generators for posets, presheaves, étale B-locales, their maps and projection matrices.

Every generator is a pure function of its seed and parameters. Sub-seeds are
drawn from ``numpy.random.default_rng`` so nested generation stays
reproducible bit for bit.
"""

import logging
from itertools import product
from typing import cast

import numpy as np

from sheafmod.bmodule.construct import blocale_from_map
from sheafmod.config import LimitsConfig
from sheafmod.errors import MalformedInput, NotEtale, SizeExceeded
from sheafmod.genfix.models import EtaleInstance, Presheaf, PresheafMap
from sheafmod.hilbert.basis import based
from sheafmod.hilbert.inner import support_hilbert
from sheafmod.hilbert.models import BasedModule, HilbertBasis
from sheafmod.homs.maps import make_map
from sheafmod.homs.models import BLocaleMap
from sheafmod.lattice.frame import count_downsets, downset_frame
from sheafmod.lattice.models import Frame, Poset
from sheafmod.matrix.algebra import is_projection_matrix
from sheafmod.matrix.models import ProjectionMatrix
from sheafmod.report import LawReport, describe

logger = logging.getLogger(__name__)

MAX_RANDOM_POSET = 8
FIBER_NAMES = ("x", "y", "z")


def _subseed(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2**63))


def random_poset(seed: int, n: int, density: float = 0.4) -> Poset:
    """A random DAG on p0..p(n-1) in index order, closed transitively."""
    if not 0 <= n <= MAX_RANDOM_POSET:
        raise SizeExceeded(f"random posets have at most {MAX_RANDOM_POSET} elements, got {n}")
    rng = np.random.default_rng(seed)
    edges = np.triu(rng.random((n, n)) < density, k=1)
    pairs = [(int(i), int(j)) for i, j in np.argwhere(edges)]
    return Poset.from_pairs([f"p{i}" for i in range(n)], pairs)


def _compatible_families(
    poset: Poset,
    below: list[int],
    fibers: list[tuple[str, ...]],
    restrictions: dict[tuple[int, int], tuple[int, ...]],
) -> list[tuple[int, ...]]:
    """Choices (x_p) over ``below`` that are closed under the restrictions already built."""
    families = []
    for choice in product(*(range(len(fibers[p])) for p in below)):
        picked = dict(zip(below, choice))
        if all(
            restrictions[(r, p)][picked[r]] == picked[p]
            for r in below
            for p in below
            if p != r and poset.leq[p, r]
        ):
            families.append(choice)
    return families


def random_presheaf(seed: int, poset: Poset, max_fiber: int = 3) -> Presheaf:
    """Random fibers and restrictions, functorial by construction.

    Points are visited along a linear extension. Each new element of F(q)
    is given a compatible family of elements below q, so every restriction
    out of q is the composite of restrictions already present.
    """
    if not 0 <= max_fiber <= len(FIBER_NAMES):
        raise SizeExceeded(f"fibers hold at most {len(FIBER_NAMES)} elements, got {max_fiber}")
    rng = np.random.default_rng(seed)
    fibers: list[tuple[str, ...]] = [()] * poset.size
    restrictions: dict[tuple[int, int], tuple[int, ...]] = {}
    for q in poset.linear_extension():
        below = [p for p in range(poset.size) if p != q and poset.leq[p, q]]
        families = _compatible_families(poset, below, fibers, restrictions)
        size = int(rng.integers(0, max_fiber + 1)) if families else 0
        picks = [families[int(k)] for k in rng.integers(0, len(families), size)] if size else []
        fibers[q] = FIBER_NAMES[:size]
        for position, p in enumerate(below):
            restrictions[(q, p)] = tuple(family[position] for family in picks)
    return Presheaf(poset, tuple(fibers), restrictions)


def terminal_presheaf(poset: Poset) -> Presheaf:
    """One element in every fiber."""
    restrictions = {
        (q, p): (0,)
        for q in range(poset.size)
        for p in range(poset.size)
        if p != q and poset.leq[p, q]
    }
    return Presheaf(poset, (("x",),) * poset.size, restrictions)


def check_presheaf(presheaf: Presheaf) -> LawReport:
    """Restrictions are present for every p < q and compose along p <= r <= q."""
    poset = presheaf.poset
    names = poset.elements
    report = LawReport(subject="presheaf functoriality")
    missing = [
        (q, p)
        for q in range(poset.size)
        for p in range(poset.size)
        if p != q and poset.leq[p, q] and (q, p) not in presheaf.restrictions
    ]
    report.check(
        "restrictions present",
        not missing,
        describe("qp", [names[missing[0][0]], names[missing[0][1]]]) if missing else None,
    )
    if missing:
        return report
    witness = None
    for q, r, p in product(range(poset.size), repeat=3):
        if not (poset.leq[p, r] and poset.leq[r, q]):
            continue
        for y in range(len(presheaf.fibers[q])):
            via = presheaf.restrict(r, p, presheaf.restrict(q, r, y))
            if via != presheaf.restrict(q, p, y):
                witness = describe("prqy", [names[p], names[r], names[q], presheaf.fibers[q][y]])
                break
        if witness:
            break
    report.check("restrictions compose", witness is None, witness)
    return report


def elements_poset(presheaf: Presheaf) -> Poset:
    """(p, x) <= (q, y) iff p <= q and y restricts to x."""
    poset = presheaf.poset
    points = presheaf.elements()
    names = [f"{presheaf.fibers[p][x]}@{poset.elements[p]}" for p, x in points]
    pairs = [
        (i, j)
        for i, (p, x) in enumerate(points)
        for j, (q, y) in enumerate(points)
        if i != j and poset.leq[p, q] and presheaf.restrict(q, p, y) == x
    ]
    return Poset.from_pairs(names, pairs)


def etale_from_presheaf(
    presheaf: Presheaf,
    limits: LimitsConfig | None = None,
    name: str = "E",
    base: Frame | None = None,
    seed: int | None = None,
) -> EtaleInstance:
    """The étale B-locale of down-sets of the category of elements, over B = D(P).

    p*(U) collects the elements lying over U. The result must come out open
    and étale with every principal down-set a local section; otherwise
    NotEtale is raised.
    """
    limits = limits or LimitsConfig()
    poset = presheaf.poset
    if poset.size > limits.max_generated_poset:
        raise SizeExceeded(
            f"presheaf poset has {poset.size} points; limit is {limits.max_generated_poset}"
        )
    if presheaf.total > limits.max_elements:
        raise SizeExceeded(
            f"category of elements has {presheaf.total} objects; limit is {limits.max_elements}"
        )
    report = check_presheaf(presheaf)
    if not report.passed:
        failure = report.failures[0]
        raise MalformedInput(f"presheaf fails {failure.law}", failure.witness)

    elements = elements_poset(presheaf)
    base = base or downset_frame(poset, name=f"D({poset.size})", limits=limits)
    carrier = downset_frame(elements, name=name, limits=limits)
    points = presheaf.elements()
    pstar = []
    for key in base.keys:
        bits = cast(int, key)
        mask = sum(1 << i for i, (p, _) in enumerate(points) if bits >> p & 1)
        pstar.append(carrier.key_index[mask])
    locale = blocale_from_map(base, carrier, pstar, name=name, limits=limits)

    report.check("open", locale.is_open)
    report.check("étale", locale.etale)
    sections = set(locale.sections)
    lost = [
        i
        for i, mask in enumerate(elements.down_masks)
        if carrier.key_index[mask] not in sections
    ]
    report.check(
        "principal down-sets are local sections",
        not lost,
        f"down-set of {elements.elements[lost[0]]}" if lost else None,
    )
    if not report.passed:
        failure = report.failures[0]
        raise NotEtale(f"{name} fails {failure.law}", failure.witness)
    logger.debug(
        "étale instance %s: |P|=%d, |E|=%d, carrier %d, %d sections",
        name,
        poset.size,
        elements.size,
        carrier.size,
        len(sections),
    )
    return EtaleInstance(presheaf, elements, locale, report, seed=seed)


def _fits(presheaf: Presheaf, limits: LimitsConfig) -> bool:
    if presheaf.total > limits.max_elements:
        return False
    return count_downsets(elements_poset(presheaf)) <= limits.max_generated_carrier


def random_etale_instance(
    seed: int,
    limits: LimitsConfig | None = None,
    poset: Poset | None = None,
    name: str = "E",
) -> EtaleInstance:
    """A random presheaf on a random poset, turned étale; oversized draws are regenerated."""
    limits = limits or LimitsConfig()
    rng = np.random.default_rng(seed)
    for attempt in range(limits.regeneration_attempts):
        points = poset
        if points is None:
            size = int(rng.integers(1, max(limits.max_generated_poset, 1) + 1))
            points = random_poset(_subseed(rng), min(size, limits.max_generated_poset))
        presheaf = random_presheaf(_subseed(rng), points, limits.max_fiber)
        if _fits(presheaf, limits):
            logger.debug("seed %d accepted after %d regenerations", seed, attempt)
            return etale_from_presheaf(presheaf, limits, name=name, seed=seed)
    logger.debug("seed %d fell back to the terminal presheaf", seed)
    points = poset if poset is not None else Poset.antichain(["p0"])
    return etale_from_presheaf(terminal_presheaf(points), limits, name=name, seed=seed)


def _components(
    rng: np.random.Generator, source: Presheaf, target: Presheaf
) -> tuple[tuple[int, ...], ...] | None:
    """Random natural components F -> G chosen along a linear extension, or None if stuck."""
    poset = source.poset
    components: list[tuple[int, ...]] = [()] * poset.size
    for q in poset.linear_extension():
        below = [p for p in range(poset.size) if p != q and poset.leq[p, q]]
        chosen = []
        for y in range(len(source.fibers[q])):
            candidates = [
                z
                for z in range(len(target.fibers[q]))
                if all(
                    target.restrict(q, p, z) == components[p][source.restrict(q, p, y)]
                    for p in below
                )
            ]
            if not candidates:
                return None
            chosen.append(candidates[int(rng.integers(0, len(candidates)))])
        components[q] = tuple(chosen)
    return tuple(components)


def random_presheaf_map(
    seed: int, source: Presheaf, limits: LimitsConfig | None = None
) -> PresheafMap:
    """A natural transformation out of ``source`` into a random presheaf on the same poset.

    After the configured number of failed attempts the target is the
    terminal presheaf, which always receives the unique map.
    """
    limits = limits or LimitsConfig()
    rng = np.random.default_rng(seed)
    for _ in range(limits.regeneration_attempts):
        target = random_presheaf(_subseed(rng), source.poset, limits.max_fiber)
        if not _fits(target, limits):
            continue
        components = _components(rng, source, target)
        if components is not None:
            return PresheafMap(source, target, components)
    target = terminal_presheaf(source.poset)
    components = tuple((0,) * len(fiber) for fiber in source.fibers)
    return PresheafMap(source, target, components)


def identity_presheaf_map(presheaf: Presheaf) -> PresheafMap:
    return PresheafMap(
        presheaf, presheaf, tuple(tuple(range(len(f))) for f in presheaf.fibers)
    )


def etale_map(
    source: EtaleInstance,
    target: EtaleInstance,
    transformation: PresheafMap,
    name: str = "f",
) -> BLocaleMap:
    """The map of étale B-locales induced by a natural transformation.

    On elements (p, x) -> (p, a_p(x)); the inverse image takes a down-set of
    the target elements to its preimage.
    """
    if source.locale.base is not target.locale.base:
        raise MalformedInput("étale instances must share their base frame")
    source_points = source.presheaf.elements()
    target_index = {point: j for j, point in enumerate(target.presheaf.elements())}
    image = [target_index[(p, transformation.components[p][x])] for p, x in source_points]
    source_carrier = source.locale.carrier
    inverse = []
    for key in target.locale.carrier.keys:
        bits = cast(int, key)
        mask = sum(1 << i for i, j in enumerate(image) if bits >> j & 1)
        inverse.append(source_carrier.key_index[mask])
    return make_map(source.locale, target.locale, inverse, name=name)


def random_projection_matrix(
    seed: int,
    k: int,
    limits: LimitsConfig | None = None,
    poset: Poset | None = None,
) -> ProjectionMatrix:
    """Gram matrix of k local sections (with repetition) of a generated étale instance.

    Picks that do not give a projection matrix are redrawn; after the
    configured number of attempts the full section set is used.
    """
    if k < 0:
        raise MalformedInput(f"matrix size must be non-negative, got {k}")
    limits = limits or LimitsConfig()
    rng = np.random.default_rng(seed)
    instance = random_etale_instance(_subseed(rng), limits, poset=poset)
    locale = instance.locale
    gram = support_hilbert(locale).inner.table
    sections = np.asarray(locale.sections, dtype=np.int64)
    for _ in range(limits.regeneration_attempts):
        picked = sections[rng.integers(0, len(sections), k)]
        matrix = ProjectionMatrix(
            locale.base, tuple(f"s{j}" for j in range(k)), gram[np.ix_(picked, picked)]
        )
        if is_projection_matrix(matrix).passed:
            return matrix
    logger.debug("seed %d: using the full section set", seed)
    labels = tuple(locale.carrier.labels[s] for s in sections)
    return ProjectionMatrix(locale.base, labels, gram[np.ix_(sections, sections)])


def principal_basis(instance: EtaleInstance) -> BasedModule:
    """The principal down-sets of the category of elements, a Hilbert basis of the étale locale."""
    carrier = instance.locale.carrier
    members = tuple(carrier.key_index[mask] for mask in instance.elements.down_masks)
    basis = HilbertBasis(members, instance.elements.elements)
    return based(support_hilbert(instance.locale), basis)


def sibling_presheaf_map(seed: int, transformation: PresheafMap, attempts: int = 50) -> PresheafMap:
    """Another random natural transformation with the same source and target.

    Falls back to ``transformation`` itself when the draws keep getting stuck.
    """
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        components = _components(rng, transformation.source, transformation.target)
        if components is not None:
            return PresheafMap(transformation.source, transformation.target, components)
    return transformation
