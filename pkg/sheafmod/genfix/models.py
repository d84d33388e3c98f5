"""Data models for generated presheaves, étale instances and named fixtures."""

from dataclasses import dataclass, field

from sheafmod.bmodule.models import BLocale, BModule
from sheafmod.errors import MalformedInput
from sheafmod.lattice.models import Frame, Lattice, Poset
from sheafmod.report import LawReport


@dataclass(frozen=True, eq=False)
class Presheaf:
    """A set-valued presheaf on a finite poset.

    ``fibers[p]`` names the elements of F(p). ``restrictions[(q, p)]`` is the
    map F(q) -> F(p) for p <= q, stored as indices into ``fibers[p]``.
    Functoriality is a verdict of check_presheaf.
    """

    poset: Poset
    fibers: tuple[tuple[str, ...], ...]
    restrictions: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.fibers) != self.poset.size:
            raise MalformedInput(
                f"presheaf needs {self.poset.size} fibers, got {len(self.fibers)}"
            )
        for (q, p), table in self.restrictions.items():
            if not self.poset.leq[p, q]:
                raise MalformedInput(
                    f"restriction from {self.poset.elements[q]} to {self.poset.elements[p]} "
                    "runs against the order"
                )
            if len(table) != len(self.fibers[q]) or any(
                not 0 <= v < len(self.fibers[p]) for v in table
            ):
                raise MalformedInput(
                    f"restriction {self.poset.elements[q]} -> {self.poset.elements[p]} "
                    "is not a total map between the fibers"
                )

    def restrict(self, q: int, p: int, y: int) -> int:
        """y|_p for y in F(q)."""
        if p == q:
            return y
        return self.restrictions[(q, p)][y]

    @property
    def total(self) -> int:
        return sum(len(f) for f in self.fibers)

    def elements(self) -> list[tuple[int, int]]:
        """The category of elements as (p, index in F(p)) pairs, fiber by fiber."""
        return [(p, x) for p, fiber in enumerate(self.fibers) for x in range(len(fiber))]


@dataclass(frozen=True, eq=False)
class PresheafMap:
    """A natural transformation F -> G, one component per point of the poset."""

    source: Presheaf
    target: Presheaf
    components: tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class EtaleInstance:
    """An étale B-locale built from a presheaf through its category of elements."""

    presheaf: Presheaf
    elements: Poset
    locale: BLocale
    report: LawReport
    seed: int | None = None

    @property
    def base(self) -> Frame:
        return self.locale.base

    def descriptor(self) -> dict[str, int | str]:
        info: dict[str, int | str] = {
            "poset": self.presheaf.poset.size,
            "elements": self.elements.size,
            "base": self.locale.base.size,
            "carrier": self.locale.size,
            "sections": len(self.locale.sections),
        }
        if self.seed is not None:
            info["seed"] = self.seed
        return info


@dataclass(frozen=True, eq=False)
class Fixture:
    """A named instance of the fixture library.

    ``lattice`` is always set; ``module`` and ``locale`` only when the
    fixture is meant to be read as a B-module or a B-locale.
    """

    name: str
    source: str
    lattice: Lattice
    module: BModule | None = None
    locale: BLocale | None = None
    report: LawReport | None = None

    def descriptor(self) -> dict[str, int | str]:
        info: dict[str, int | str] = {"fixture": self.name, "carrier": self.lattice.size}
        if self.module is not None:
            info["base"] = self.module.base.size
        return info
