"""JSON input documents for the CLI.

Elements are referenced either by index or by label. A frame is given by
name, by a poset (its down-set frame) or by explicit tables; modules,
Hilbert modules, matrices, homs and maps build on those.
"""

import json
from pathlib import Path
from typing import TypeVar

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from sheafmod.bmodule import (
    BLocale,
    BModule,
    ModuleHom,
    free_module,
    make_blocale,
    module_from_map,
)
from sheafmod.config import LimitsConfig
from sheafmod.errors import MalformedInput, NotABLocale
from sheafmod.genfix import fixture
from sheafmod.hilbert import HilbertModule, inner_from_table, support_hilbert
from sheafmod.homs import BLocaleMap, make_map
from sheafmod.lattice import (
    Frame,
    Lattice,
    Poset,
    as_frame,
    downset_frame,
    lattice_from_tables,
    named_lattice,
)
from sheafmod.matrix import ProjectionMatrix

ElementRef = int | str
Doc = TypeVar("Doc", bound=BaseModel)


def resolve(lattice: Lattice, ref: ElementRef) -> int:
    """Index of an element given by index or label."""
    if isinstance(ref, str):
        try:
            return lattice.labels.index(ref)
        except ValueError:
            raise MalformedInput(f"{lattice.name} has no element labelled {ref!r}")
    return lattice.index(ref)


def resolve_all(lattice: Lattice, refs: list[ElementRef]) -> list[int]:
    return [resolve(lattice, r) for r in refs]

    """Base for input documents; unknown keys are errors."""
class InputDoc(BaseModel):
    """Unknown keys are rejected rather than silently dropped."""

    model_config = ConfigDict(extra="forbid")


class PosetDoc(InputDoc):
    """``leq`` lists pairs i <= j; the reflexive-transitive closure is taken."""

    elements: list[str]
    leq: list[tuple[int, int]] = []

    def build(self) -> Poset:
        return Poset.from_pairs(self.elements, self.leq)


class TablesDoc(InputDoc):
    labels: list[str]
    join: list[list[int]]
    meet: list[list[int]]


class FrameDoc(InputDoc):
    """Exactly one of ``named``, ``poset`` or ``tables``."""

    name: str | None = None
    named: str | None = None
    poset: PosetDoc | None = None
    tables: TablesDoc | None = None

    @model_validator(mode="after")
    def _one_source(self) -> "FrameDoc":
        given = [s for s in (self.named, self.poset, self.tables) if s is not None]
        if len(given) != 1:
            raise ValueError("give exactly one of 'named', 'poset' or 'tables'")
        return self

    def build_lattice(self, limits: LimitsConfig | None = None) -> Lattice:
        if self.named is not None:
            return named_lattice(self.named)
        if self.poset is not None:
            return downset_frame(self.poset.build(), name=self.name, limits=limits)
        assert self.tables is not None
        t = self.tables
        return lattice_from_tables(t.labels, t.join, t.meet, name=self.name or "L")

    def build(self, limits: LimitsConfig | None = None) -> Frame:
        return as_frame(self.build_lattice(limits), limits)


class FreeDoc(InputDoc):
    base: FrameDoc
    generators: int | list[str]


class ModuleDoc(InputDoc):
    """A fixture, a free module, or a base and carrier with either p* or a full action."""

    name: str = "X"
    fixture: str | None = None
    free: FreeDoc | None = None
    base: FrameDoc | None = None
    carrier: FrameDoc | None = None
    pstar: list[ElementRef] | None = None
    action: list[list[ElementRef]] | None = None

    @model_validator(mode="after")
    def _one_source(self) -> "ModuleDoc":
        tabled = self.base is not None and self.carrier is not None
        if tabled and (self.pstar is None) == (self.action is None):
            raise ValueError("give exactly one of 'pstar' or 'action'")
        if sum([self.fixture is not None, self.free is not None, tabled]) != 1:
            raise ValueError("give exactly one of 'fixture', 'free' or 'base' with 'carrier'")
        return self

    def build(self, limits: LimitsConfig | None = None) -> BModule:
        """The module as described; no B-locale laws are checked here."""
        if self.fixture is not None:
            fx = fixture(self.fixture)
            if fx.module is None:
                raise MalformedInput(f"fixture {fx.name} is not a module")
            return fx.module
        if self.free is not None:
            return free_module(
                self.free.base.build(limits), self.free.generators, name=self.name, limits=limits
            )
        assert self.base is not None and self.carrier is not None
        base = self.base.build(limits)
        carrier = self.carrier.build_lattice(limits)
        if self.pstar is not None:
            pstar = resolve_all(carrier, self.pstar)
            return module_from_map(base, carrier, pstar, name=self.name)
        assert self.action is not None
        rows = [resolve_all(carrier, row) for row in self.action]
        return BModule(base, carrier, np.asarray(rows), name=self.name)

    def build_locale(self, limits: LimitsConfig | None = None) -> BLocale:
        module = self.build(limits)
        return module if isinstance(module, BLocale) else make_blocale(module, limits)


class HilbertDoc(InputDoc):
    """A module with an explicit inner product table, or its support inner product."""

    module: ModuleDoc
    inner: list[list[ElementRef]] | None = None

    def build(self, limits: LimitsConfig | None = None) -> HilbertModule:
        if self.inner is None:
            return support_hilbert(self.module.build_locale(limits))
        module = self.module.build(limits)
        try:
            module = make_blocale(module, limits)
        except NotABLocale:
            pass
        table = [resolve_all(module.base, row) for row in self.inner]
        return inner_from_table(module, np.asarray(table))


class MatrixDoc(InputDoc):
    base: FrameDoc
    index: list[str] | None = None
    entries: list[list[ElementRef]]

    def build(self, limits: LimitsConfig | None = None) -> ProjectionMatrix:
        base = self.base.build(limits)
        index = self.index or [f"s{i}" for i in range(len(self.entries))]
        rows = [resolve_all(base, row) for row in self.entries]
        return ProjectionMatrix(base, tuple(index), np.asarray(rows))


class HomDoc(InputDoc):
    """A function table between two modules; a shared ``base`` is not required."""

    source: ModuleDoc
    target: ModuleDoc
    table: list[ElementRef]
    name: str = "h"

    def build(self, limits: LimitsConfig | None = None) -> ModuleHom:
        source = self.source.build_locale(limits)
        target = _rebased(self.target.build_locale(limits), source)
        table = np.asarray(resolve_all(target.carrier, self.table))
        return ModuleHom(source, target, table, name=self.name)


class MapDoc(InputDoc):
    """A map of B-locales X -> Y given by its inverse image Y -> X."""

    source: ModuleDoc
    target: ModuleDoc
    inverse_image: list[ElementRef]
    name: str = "f"

    def build(self, limits: LimitsConfig | None = None) -> BLocaleMap:
        source = self.source.build_locale(limits)
        target = _rebased(self.target.build_locale(limits), source)
        return make_map(source, target, resolve_all(source.carrier, self.inverse_image), self.name)


def _rebased(locale: BLocale, other: BLocale) -> BLocale:
    """``locale`` over the very base frame object of ``other`` when the tables agree."""
    if locale.base is other.base:
        return locale
    same = (
        locale.base.size == other.base.size
        and (locale.base.join_table == other.base.join_table).all()
        and (locale.base.meet_table == other.base.meet_table).all()
    )
    if not same:
        return locale
    module = BModule(other.base, locale.carrier, locale.action, name=locale.name)
    return make_blocale(module)


def load_doc(path: Path, model: type[Doc]) -> Doc:
    """Parse a JSON file into ``model``, raising MalformedInput on any problem."""
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}")
    try:
        return model.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "document"
        raise MalformedInput(f"{path}: {where}: {first['msg']}")
