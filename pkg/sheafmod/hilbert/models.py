"""Data models for inner products, Hilbert modules and Hilbert bases."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from pydantic import BaseModel

from sheafmod.bmodule.models import BModule, ModuleHom
from sheafmod.errors import MalformedInput
from sheafmod.lattice.models import Frame
from sheafmod.report import LawReport, LawResult


@dataclass(frozen=True, eq=False)
class InnerProduct:
    """A B-valued form on a module, ``table[x, y] = <x, y>``."""

    module: BModule
    table: np.ndarray

    def __post_init__(self) -> None:
        n = self.module.size
        table = np.array(self.table, dtype=np.int64, copy=True)
        if table.shape != (n, n):
            raise MalformedInput(f"inner product must be {n}x{n}, got {table.shape}")
        if table.size and (table.min() < 0 or table.max() >= self.module.base.size):
            raise MalformedInput("inner product has values outside the base frame")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @property
    def base(self) -> Frame:
        return self.module.base

    def __call__(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    @property
    def diagonal(self) -> np.ndarray:
        """x -> <x, x>."""
        return self.table.diagonal()


@dataclass(frozen=True, eq=False)
class HilbertModule:
    """A module with an inner product and its eagerly computed flags.

    Each flag is kept as a LawResult so a failing flag carries its witness.
    """

    inner: InnerProduct
    axioms: LawReport
    nondegenerate: LawResult
    strict: LawResult
    supported: LawResult
    weakly_nondegenerate: LawResult | None = None

    @property
    def module(self) -> BModule:
        return self.inner.module

    @property
    def is_pre_hilbert(self) -> bool:
        return self.axioms.passed

    @property
    def is_hilbert(self) -> bool:
        return self.axioms.passed and self.nondegenerate.passed

    def flags(self) -> LawReport:
        report = LawReport(subject=f"flags of {self.module.name}")
        results = [self.nondegenerate, self.strict, self.supported]
        if self.weakly_nondegenerate is not None:
            results.append(self.weakly_nondegenerate)
        report.results.extend(results)
        return report


@dataclass(frozen=True, eq=False)
class HilbertBasis:
    """A family of module elements indexed by ``labels``; repeated elements are allowed."""

    elements: tuple[int, ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"s{i}" for i in range(len(self.elements))))
        if len(self.labels) != len(self.elements):
            raise MalformedInput("basis labels and elements differ in length")

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True, eq=False)
class BasedModule:
    """A Hilbert module together with a Hilbert basis."""

    hilbert: HilbertModule
    basis: HilbertBasis

    @property
    def module(self) -> BModule:
        return self.hilbert.module

    @property
    def inner(self) -> InnerProduct:
        return self.hilbert.inner

    @property
    def coordinates(self) -> np.ndarray:
        """``coordinates[x, s] = <x, s>`` for s in the basis."""
        return self.inner.table[:, self.basis.array]


@dataclass(frozen=True, eq=False)
class ProjectivitySplit:
    """The retraction phi: B^S -> X and section psi: X -> B^S of a based module."""

    phi: ModuleHom
    psi: ModuleHom
    report: LawReport
    psi_phi_identity: bool


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"


class EquivalenceVerdict(BaseModel):
    """The three conditions of the étale equivalence, decided independently."""

    subject: str
    pre_hilbert_with_basis: Verdict
    hilbert_with_basis: Verdict
    etale: Verdict
    report: LawReport

    @property
    def agree(self) -> bool:
        return self.pre_hilbert_with_basis == self.hilbert_with_basis == self.etale
