"""Named fixtures: hand-built instances with known verdicts."""

from collections.abc import Callable
from typing import cast

import numpy as np

from sheafmod.bmodule.construct import blocale_from_map, free_module
from sheafmod.bmodule.models import BModule
from sheafmod.errors import MalformedInput
from sheafmod.genfix.generators import etale_from_presheaf
from sheafmod.genfix.models import Fixture, Presheaf
from sheafmod.lattice.frame import downset_frame
from sheafmod.lattice.library import boolean_frame, chain_frame, diamond_frame, m3_lattice
from sheafmod.lattice.models import Poset
from sheafmod.report import LawReport, describe


def free2() -> Fixture:
    locale = free_module(boolean_frame(), 2, name="FREE2")
    return Fixture(
        "FREE2", "free module B2^{s,t} with unit vectors", locale.carrier, locale, locale
    )


def chain3() -> Fixture:
    """The 3-chain over B2: open, not étale, degenerate support inner product."""
    base = boolean_frame()
    locale = blocale_from_map(base, chain_frame(), [0, 2], name="CHAIN3")
    return Fixture("CHAIN3", "3-chain over B2, not étale", locale.carrier, locale, locale)


def ident() -> Fixture:
    base = diamond_frame()
    locale = blocale_from_map(base, base, list(range(base.size)), name="IDENT")
    return Fixture("IDENT", "B over itself", locale.carrier, locale, locale)


def sierp_prod() -> Fixture:
    """Product B (x) X of the Sierpinski frame with BD, as down-sets of the product poset.

    The support of a rectangle b (x) x is b whenever x is non-zero.
    """
    left = Poset.from_pairs(["u", "1"], [(0, 1)])
    right = Poset.antichain(["a", "b"])
    base = downset_frame(left, name="S")
    fiber = downset_frame(right, name="BD")
    carrier = downset_frame(left.product(right), name="SxBD")
    width = right.size

    def rectangle(b: int, x: int) -> int:
        rows = cast(int, base.keys[b])
        cols = cast(int, fiber.keys[x])
        mask = sum(
            1 << (i * width + j)
            for i in range(left.size)
            for j in range(width)
            if rows >> i & 1 and cols >> j & 1
        )
        return carrier.key_index[mask]

    pstar = [rectangle(b, fiber.top) for b in range(base.size)]
    locale = blocale_from_map(base, carrier, pstar, name="SIERP-PROD")
    report = LawReport(subject="rectangle supports of SIERP-PROD")
    report.check("open", locale.is_open)
    if locale.is_open:
        rects = np.array(
            [[rectangle(b, x) for x in range(fiber.size)] for b in range(base.size)],
            dtype=np.int64,
        )
        expected = np.where(
            np.arange(fiber.size)[None, :] == fiber.bottom,
            base.bottom,
            np.arange(base.size)[:, None],
        )
        bad = np.argwhere(locale.spp[rects] != expected)
        report.check(
            "spp(b (x) x) = b for x != 0, and 0 for x = 0",
            not len(bad),
            describe("bx", [base.labels[bad[0][0]], fiber.labels[bad[0][1]]]) if len(bad) else None,
        )
    return Fixture(
        "SIERP-PROD", "product of the Sierpinski frame with BD", carrier, locale, locale, report
    )


def split() -> Fixture:
    """Sheaf on p < q with two sections over p, one of which extends to q."""
    poset = Poset.from_pairs(["p", "q"], [(0, 1)])
    presheaf = Presheaf(poset, (("x", "y"), ("x",)), {(1, 0): (0,)})
    instance = etale_from_presheaf(presheaf, name="SPLIT")
    locale = instance.locale
    return Fixture(
        "SPLIT", "étale space of a non-free sheaf", locale.carrier, locale, locale, instance.report
    )


def m3() -> Fixture:
    lattice = m3_lattice()
    return Fixture("M3", "non-distributive lattice M3", lattice)


def corrupt() -> Fixture:
    """CHAIN3 with the action edited so that 0 * 1 = u."""
    base = boolean_frame()
    carrier = chain_frame()
    action = np.array([[0, 0, 1], [0, 1, 2]], dtype=np.int64)
    module = BModule(base, carrier, action, name="CORRUPT")
    return Fixture("CORRUPT", "corrupted action table over B2", carrier, module)


FIXTURES: dict[str, Callable[[], Fixture]] = {
    "FREE2": free2,
    "CHAIN3": chain3,
    "IDENT": ident,
    "SIERP-PROD": sierp_prod,
    "SPLIT": split,
    "M3": m3,
    "CORRUPT": corrupt,
}


def fixtures() -> dict[str, Fixture]:
    """Build the whole library, in a fixed order."""
    return {name: build() for name, build in FIXTURES.items()}


def fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name.upper()]()
    except KeyError:
        raise MalformedInput(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
