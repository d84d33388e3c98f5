"""Data models for adjoints, sheaf homomorphisms, B-locale maps and sections presheaves."""

from dataclasses import dataclass

import numpy as np

from sheafmod.bmodule.models import BLocale, ModuleHom
from sheafmod.errors import MalformedInput
from sheafmod.report import LawReport


@dataclass(frozen=True, eq=False)
class Adjoint:
    """h† with the report of the adjoint identity and its uniqueness."""

    hom: ModuleHom
    report: LawReport


@dataclass(frozen=True, eq=False)
class SheafHom:
    """A module hom between étale B-locales that preserves sections and their supports."""

    hom: ModuleHom
    report: LawReport

    @property
    def source(self) -> BLocale:
        assert isinstance(self.hom.source, BLocale)
        return self.hom.source

    @property
    def target(self) -> BLocale:
        assert isinstance(self.hom.target, BLocale)
        return self.hom.target


@dataclass(frozen=True, eq=False)
class BLocaleMap:
    """A map f: X -> Y of B-locales given by its inverse image f*: Y -> X."""

    source: BLocale
    target: BLocale
    inverse_image: np.ndarray
    name: str = "f"

    def __post_init__(self) -> None:
        table = np.array(self.inverse_image, dtype=np.int64, copy=True)
        if table.shape != (self.target.size,):
            raise MalformedInput(f"f* needs {self.target.size} entries, got {table.shape}")
        if table.size and (table.min() < 0 or table.max() >= self.source.size):
            raise MalformedInput(f"f* has values outside {self.source.name}")
        table.setflags(write=False)
        object.__setattr__(self, "inverse_image", table)

    @property
    def pullback(self) -> ModuleHom:
        """f* as a module hom Y -> X."""
        return ModuleHom(self.target, self.source, self.inverse_image, name=f"{self.name}*")


@dataclass(frozen=True, eq=False)
class SectionsPresheaf:
    """b -> G(b) = {s in sections : spp(s) = b}, restricting along a <= b by s -> as."""

    locale: BLocale
    fibers: tuple[tuple[int, ...], ...]
    report: LawReport

    def restrict(self, a: int, s: int) -> int:
        return self.locale.act(a, s)

    def rows(self) -> list[tuple[str, list[str]]]:
        base, carrier = self.locale.base, self.locale.carrier
        return [
            (base.labels[b], [carrier.labels[s] for s in fiber])
            for b, fiber in enumerate(self.fibers)
        ]


@dataclass(frozen=True, eq=False)
class NaturalTransformation:
    """Components G_X(b) -> G_Y(b) given by s -> h(s)."""

    source: SectionsPresheaf
    target: SectionsPresheaf
    components: tuple[dict[int, int], ...]
    report: LawReport
