"""Data models for B-modules, B-locales, projections and module homomorphisms."""

from dataclasses import dataclass, field

import numpy as np

from sheafmod.errors import MalformedInput, NotOpen
from sheafmod.lattice.models import Frame, Lattice
from sheafmod.report import LawReport


def _table(values: np.ndarray, shape: tuple[int, ...], bound: int, what: str) -> np.ndarray:
    table = np.array(values, dtype=np.int64, copy=True)
    if table.shape != shape:
        raise MalformedInput(f"{what} must have shape {shape}, got {table.shape}")
    if table.size and (table.min() < 0 or table.max() >= bound):
        raise MalformedInput(f"{what} has entries outside 0..{bound - 1}")
    table.setflags(write=False)
    return table


@dataclass(frozen=True, eq=False)
class BModule:
    """A finite complete lattice with an action of the frame B, ``action[b, x] = bx``."""

    base: Frame
    carrier: Lattice
    action: np.ndarray
    name: str = "X"

    def __post_init__(self) -> None:
        shape = (self.base.size, self.carrier.size)
        object.__setattr__(self, "action", _table(self.action, shape, self.carrier.size, "action"))

    @property
    def size(self) -> int:
        return self.carrier.size

    def act(self, b: int, x: int) -> int:
        return int(self.action[b, x])

    @property
    def unit_image(self) -> np.ndarray:
        """The map b -> b1."""
        return self.action[:, self.carrier.top]

    def __str__(self) -> str:
        return f"{self.name} over {self.base.name} ({self.size} elements)"


@dataclass(frozen=True, eq=False)
class Projection:
    """The projection p*: B -> X of a B-locale and, when computed, its support.

    ``spp`` is the candidate left adjoint x -> meet{b : x <= b1}; ``is_open``
    says whether it is equivariant and satisfies spp(x)x = x.
    """

    pstar: np.ndarray
    spp: np.ndarray | None = None
    is_open: bool = False
    report: LawReport | None = None
    shriek_preserves_meets: bool | None = None


@dataclass(frozen=True, eq=False, kw_only=True)
class BLocale(BModule):
    """A B-module whose carrier is a frame and which satisfies bx = b1 ^ x.

    Openness, local sections and étale-ness are computed by make_blocale and
    carried on the value.
    """

    projection: Projection
    sections: tuple[int, ...] = field(default=())
    etale: bool = False

    @property
    def frame(self) -> Frame:
        assert isinstance(self.carrier, Frame)
        return self.carrier

    @property
    def is_open(self) -> bool:
        return self.projection.is_open

    @property
    def pstar(self) -> np.ndarray:
        return self.projection.pstar

    @property
    def spp(self) -> np.ndarray:
        if not self.is_open or self.projection.spp is None:
            raise NotOpen(f"{self.name} is not an open B-locale")
        return self.projection.spp


@dataclass(frozen=True, eq=False)
class ModuleHom:
    """A function table between the carriers of two B-modules."""

    source: BModule
    target: BModule
    table: np.ndarray
    name: str = "h"

    def __post_init__(self) -> None:
        table = _table(self.table, (self.source.size,), self.target.size, f"table of {self.name}")
        object.__setattr__(self, "table", table)

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def same_as(self, other: "ModuleHom") -> bool:
        """Table equality between homs with the same source and target."""
        return (
            self.source is other.source
            and self.target is other.target
            and bool(np.array_equal(self.table, other.table))
        )

    def __str__(self) -> str:
        return f"{self.name}: {self.source.name} -> {self.target.name}"
