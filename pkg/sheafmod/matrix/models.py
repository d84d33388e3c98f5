"""Data models for B-valued matrices, arrows of Mat_B and the modules they generate."""

from dataclasses import dataclass, field

import numpy as np

from sheafmod.bmodule.models import BLocale
from sheafmod.errors import DimensionMismatch, MalformedInput
from sheafmod.hilbert.models import BasedModule, HilbertBasis, HilbertModule
from sheafmod.lattice.models import Frame
from sheafmod.report import LawReport


def _entries(values: np.ndarray, shape: tuple[int, ...], base: Frame, what: str) -> np.ndarray:
    entries = np.array(values, dtype=np.int64, copy=True).reshape(shape)
    if entries.size and (entries.min() < 0 or entries.max() >= base.size):
        raise MalformedInput(f"{what} has entries outside {base.name}")
    entries.setflags(write=False)
    return entries


@dataclass(frozen=True, eq=False)
class ProjectionMatrix:
    """A square B-valued matrix over an ordered index set.

    Symmetry and idempotence are verdicts from is_projection_matrix, not
    construction invariants, so adversarial matrices can be represented.
    """

    base: Frame
    index: tuple[str, ...]
    entries: np.ndarray

    def __post_init__(self) -> None:
        k = len(self.index)
        values = np.asarray(self.entries)
        if values.size != k * k:
            raise DimensionMismatch(f"matrix over {k} indices needs {k}x{k} entries")
        object.__setattr__(self, "entries", _entries(values, (k, k), self.base, "matrix"))

    @classmethod
    def identity(cls, base: Frame, index: tuple[str, ...]) -> "ProjectionMatrix":
        k = len(index)
        return cls(base, index, np.where(np.eye(k, dtype=bool), base.top, base.bottom))

    @property
    def size(self) -> int:
        return len(self.index)

    def same_as(self, other: "ProjectionMatrix") -> bool:
        return (
            self.base is other.base
            and self.index == other.index
            and bool(np.array_equal(self.entries, other.entries))
        )

    def render(self) -> list[list[str]]:
        return [[self.base.labels[v] for v in row] for row in self.entries]


@dataclass(frozen=True, eq=False)
class ColumnVector:
    """A function f: S -> B over the index set of a matrix."""

    base: Frame
    index: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        values = _entries(self.values, (len(self.index),), self.base, "vector")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True, eq=False)
class MatArrow:
    """An arrow F: M -> N of Mat_B, stored as a T x S matrix."""

    source: ProjectionMatrix
    target: ProjectionMatrix
    entries: np.ndarray

    def __post_init__(self) -> None:
        if self.source.base is not self.target.base:
            raise MalformedInput("arrow endpoints have different base frames")
        shape = (self.target.size, self.source.size)
        values = np.asarray(self.entries)
        if values.size != shape[0] * shape[1]:
            raise DimensionMismatch(f"arrow needs {shape[0]}x{shape[1]} entries")
        object.__setattr__(self, "entries", _entries(values, shape, self.source.base, "arrow"))

    @property
    def base(self) -> Frame:
        return self.source.base

    def same_as(self, other: "MatArrow") -> bool:
        return (
            self.source.same_as(other.source)
            and self.target.same_as(other.target)
            and bool(np.array_equal(self.entries, other.entries))
        )


@dataclass(frozen=True, eq=False)
class MatrixModule:
    """The B-locale MB^S of a projection matrix with its inherited Hilbert structure.

    ``basis`` holds the columns of M in the order of the index set; equal
    columns appear more than once.
    """

    matrix: ProjectionMatrix
    locale: BLocale
    hilbert: HilbertModule
    basis: HilbertBasis
    vectors: np.ndarray
    report: LawReport = field(default_factory=lambda: LawReport(subject="matrix module"))

    @property
    def based(self) -> BasedModule:
        return BasedModule(self.hilbert, self.basis)
