"""Building B-modules and B-locales from tables and maps."""

import logging
from collections.abc import Sequence

import numpy as np

from sheafmod.bmodule.laws import check_module_laws, check_stability
from sheafmod.bmodule.models import BLocale, BModule, Projection
from sheafmod.bmodule.support import compute_sections, compute_support
from sheafmod.config import LimitsConfig
from sheafmod.errors import NotABLocale, NotAFrame, NotAFrameHom
from sheafmod.lattice import Frame, Lattice, as_frame, check_frame_hom, power_lattice

logger = logging.getLogger(__name__)


def module_from_map(
    base: Frame, carrier: Lattice, pstar: Sequence[int], name: str = "X"
) -> BModule:
    """The B-module induced by a frame hom p*: B -> X, acting by bx = p*(b) ^ x."""
    table = np.asarray(pstar, dtype=np.int64)
    report = check_frame_hom(base, carrier, table, subject=f"p* of {name}")
    if not report.passed:
        failure = report.failures[0]
        raise NotAFrameHom(f"p* of {name} fails {failure.law}", failure.witness)
    action = carrier.meet_table[table[:, None], np.arange(carrier.size)[None, :]]
    return BModule(base, carrier, action, name=name)


def make_blocale(module: BModule, limits: LimitsConfig | None = None) -> BLocale:
    """Validate a B-module as a B-locale and compute its support and local sections.

    Raises NotABLocale when the carrier is not a frame, a module law fails or
    stability fails. Openness is computed, not required.
    """
    try:
        frame = as_frame(module.carrier, limits)
    except NotAFrame as exc:
        raise NotABLocale(f"carrier of {module.name} is not a frame: {exc}") from exc

    for report in (check_module_laws(module), check_stability(module)):
        if not report.passed:
            failure = report.failures[0]
            raise NotABLocale(f"{module.name} fails {failure.law}", failure.witness)

    framed = BModule(module.base, frame, module.action, name=module.name)
    projection = compute_support(framed)
    sections: tuple[int, ...] = ()
    etale = False
    if projection.is_open and projection.spp is not None:
        sections = compute_sections(framed, projection.spp)
        etale = frame.join_set(sections) == frame.top
    logger.debug(
        "B-locale %s: %d elements, open=%s, %d sections, etale=%s",
        module.name,
        frame.size,
        projection.is_open,
        len(sections),
        etale,
    )
    return BLocale(
        base=module.base,
        carrier=frame,
        action=module.action,
        name=module.name,
        projection=projection,
        sections=sections,
        etale=etale,
    )


def blocale_from_map(
    base: Frame,
    carrier: Lattice,
    pstar: Sequence[int],
    name: str = "X",
    limits: LimitsConfig | None = None,
) -> BLocale:
    """Shortcut for make_blocale(module_from_map(...))."""
    frame = as_frame(carrier, limits)
    return make_blocale(module_from_map(base, frame, pstar, name=name), limits)


def projection_of(locale: BLocale) -> Projection:
    """The projection p* of a B-locale (b -> b1) with its support data."""
    return locale.projection


def free_module(
    base: Frame,
    generators: int | Sequence[str],
    name: str | None = None,
    limits: LimitsConfig | None = None,
) -> BLocale:
    """The free B-locale B^S, with p*(b) the constant vector b."""
    width = generators if isinstance(generators, int) else len(generators)
    carrier = power_lattice(base, width, name=name, limits=limits)
    pstar = [carrier.key_index[(b,) * width] for b in range(base.size)]
    return make_blocale(module_from_map(base, carrier, pstar, name=carrier.name), limits)


def unit_vectors(locale: BLocale, width: int) -> tuple[int, ...]:
    """Indices of the vectors with 1 in one coordinate and 0 elsewhere in a power lattice."""
    top = locale.base.top
    index = locale.carrier.key_index
    return tuple(
        index[tuple(top if i == j else 0 for i in range(width))] for j in range(width)
    )
