"""Data models for finite posets, lattices and frames."""

from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Union

import numpy as np

from sheafmod.errors import ForeignElement, MalformedInput
from sheafmod.report import describe, first_violation


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.int64, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Poset:
    """A finite partial order given by its full ``leq`` adjacency matrix."""

    elements: tuple[str, ...]
    leq: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.elements)
        leq = np.array(self.leq, dtype=bool).reshape((n, n))
        leq.setflags(write=False)
        object.__setattr__(self, "leq", leq)
        if len(set(self.elements)) != n:
            raise MalformedInput("poset element names must be distinct")

        if not leq.diagonal().all():
            i = int(np.flatnonzero(~leq.diagonal())[0])
            raise MalformedInput("order is not reflexive", describe(["x"], [self.elements[i]]))

        antisym = leq & leq.T & ~np.eye(n, dtype=bool)
        hit = first_violation(antisym)
        if hit is not None:
            raise MalformedInput(
                "order is not antisymmetric",
                describe(["x", "y"], [self.elements[i] for i in hit]),
            )

        # leq[i,k] and leq[k,j] must give leq[i,j]
        composed = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
        hit = first_violation(composed & ~leq)
        if hit is not None:
            raise MalformedInput(
                "order is not transitive",
                describe(["x", "z"], [self.elements[i] for i in hit]),
            )

    @classmethod
    def from_pairs(cls, elements: Sequence[str], pairs: Iterable[tuple[int, int]]) -> "Poset":
        """Build from generating pairs i <= j, closing reflexively and transitively."""
        n = len(elements)
        leq = np.eye(n, dtype=bool)
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise MalformedInput(f"pair ({i}, {j}) out of range for {n} elements")
            leq[i, j] = True
        for k in range(n):
            leq |= leq[:, k, None] & leq[None, k, :]
        return cls(tuple(elements), leq)

    @classmethod
    def chain(cls, n: int, prefix: str = "c") -> "Poset":
        names = [f"{prefix}{i}" for i in range(n)]
        return cls.from_pairs(names, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def antichain(cls, names: Sequence[str]) -> "Poset":
        return cls.from_pairs(list(names), [])

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        """Bitmask of the principal down-set of each element."""
        return tuple(
            sum(1 << j for j in np.flatnonzero(self.leq[:, i])) for i in range(self.size)
        )

    def covers(self) -> list[tuple[int, int]]:
        """Cover relation i < j with nothing strictly between."""
        strict = self.leq & ~np.eye(self.size, dtype=bool)
        between = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
        return [(int(i), int(j)) for i, j in np.argwhere(strict & ~between)]

    def linear_extension(self) -> list[int]:
        """Elements ordered so that i <= j implies i comes first."""
        below = self.leq.sum(axis=0)
        return [int(i) for i in np.argsort(below, kind="stable")]

    def product(self, other: "Poset") -> "Poset":
        """Componentwise product order."""
        names = [f"{a}.{b}" for a in self.elements for b in other.elements]
        n = self.size * other.size
        pairs = np.einsum("ij,kl->ikjl", self.leq.astype(np.int64), other.leq.astype(np.int64))
        leq = pairs.reshape(n, n) > 0
        return Poset(tuple(names), leq)


@dataclass(frozen=True, eq=False)
class Lattice:
    """A finite lattice stored as total join and meet tables.

    Index 0 is the bottom and the last index is the top. ``keys`` holds the
    underlying representation of each element (down-set bitsets, vectors or
    plain labels) and ``labels`` their rendering.
    """

    labels: tuple[str, ...]
    join_table: np.ndarray
    meet_table: np.ndarray
    name: str = "L"
    keys: tuple[Hashable, ...] = field(default=())

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n == 0:
            raise MalformedInput("a lattice needs at least one element")
        for attr in ("join_table", "meet_table"):
            table = _frozen(getattr(self, attr))
            if table.shape != (n, n):
                raise MalformedInput(f"{attr} must be {n}x{n}, got {table.shape}")
            if table.size and (table.min() < 0 or table.max() >= n):
                raise MalformedInput(f"{attr} has entries outside 0..{n - 1}")
            object.__setattr__(self, attr, table)
        if not self.keys:
            object.__setattr__(self, "keys", tuple(self.labels))
        if len(self.keys) != n:
            raise MalformedInput("keys and labels differ in length")

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.size - 1

    @cached_property
    def order(self) -> np.ndarray:
        """Boolean matrix ``order[x, y]`` iff x <= y, i.e. x v y = y."""
        order = self.join_table == np.arange(self.size)[None, :]
        order.setflags(write=False)
        return order

    @cached_property
    def downcount(self) -> np.ndarray:
        return self.order.sum(axis=0)

    @cached_property
    def key_index(self) -> dict[Hashable, int]:
        return {k: i for i, k in enumerate(self.keys)}

    def index(self, x: "Element") -> int:
        """Resolve an element reference to an index of this lattice."""
        if isinstance(x, FrameElement):
            if x.lattice is not self:
                raise ForeignElement(f"element {x} belongs to {x.lattice.name}, not {self.name}")
            return x.index
        x = int(x)
        if not 0 <= x < self.size:
            raise ForeignElement(f"index {x} out of range for {self.name} ({self.size} elements)")
        return x

    def element(self, x: "Element") -> "FrameElement":
        return FrameElement(self, self.index(x))

    def label(self, x: int) -> str:
        return self.labels[x]

    def join(self, x: int, y: int) -> int:
        return int(self.join_table[x, y])

    def meet(self, x: int, y: int) -> int:
        return int(self.meet_table[x, y])

    def leq(self, x: int, y: int) -> bool:
        return bool(self.order[x, y])

    def join_set(self, xs: Iterable[int]) -> int:
        return reduce(lambda a, b: int(self.join_table[a, b]), xs, self.bottom)

    def meet_set(self, xs: Iterable[int]) -> int:
        return reduce(lambda a, b: int(self.meet_table[a, b]), xs, self.top)

    def fold_join(self, values: np.ndarray, axis: int = -1) -> np.ndarray:
        """Join-reduce an array of element indices along ``axis``."""
        values = np.moveaxis(np.asarray(values, dtype=np.int64), axis, -1)
        acc = np.zeros(values.shape[:-1], dtype=np.int64)
        for k in range(values.shape[-1]):
            acc = self.join_table[acc, values[..., k]]
        return acc

    def fold_meet(self, values: np.ndarray, axis: int = -1) -> np.ndarray:
        values = np.moveaxis(np.asarray(values, dtype=np.int64), axis, -1)
        acc = np.full(values.shape[:-1], self.top, dtype=np.int64)
        for k in range(values.shape[-1]):
            acc = self.meet_table[acc, values[..., k]]
        return acc

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges x < y with nothing strictly between."""
        strict = self.order & ~np.eye(self.size, dtype=bool)
        between = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
        return [(int(i), int(j)) for i, j in np.argwhere(strict & ~between)]

    def __str__(self) -> str:
        return f"{self.name} ({self.size} elements)"


class Frame(Lattice):
    """A lattice that has passed the frame laws, with its Heyting structure."""

    @cached_property
    def implication_table(self) -> np.ndarray:
        """``implication_table[x, y]`` is x -> y, the largest z with z ^ x <= y."""
        n = self.size
        table = np.empty((n, n), dtype=np.int64)
        for x in range(n):
            # admissible[z, y]: z ^ x <= y
            admissible = self.order[self.meet_table[:, x]]
            table[x] = np.where(admissible, self.downcount[:, None], -1).argmax(axis=0)
        table.setflags(write=False)
        return table

    def heyting(self, x: int, y: int) -> int:
        return int(self.implication_table[x, y])

    def negation(self, x: int) -> int:
        return int(self.implication_table[x, self.bottom])

    @cached_property
    def negation_table(self) -> np.ndarray:
        return self.implication_table[:, self.bottom]


@dataclass(frozen=True, eq=False)
class FrameElement:
    """An element bound to its lattice; comparing across lattices is an error."""

    lattice: Lattice
    index: int

    def __post_init__(self) -> None:
        if not 0 <= self.index < self.lattice.size:
            raise ForeignElement(f"index {self.index} out of range for {self.lattice.name}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FrameElement):
            return NotImplemented
        if other.lattice is not self.lattice:
            raise ForeignElement(
                f"cannot compare elements of {self.lattice.name} and {other.lattice.name}"
            )
        return self.index == other.index

    def __hash__(self) -> int:
        return hash((id(self.lattice), self.index))

    @property
    def key(self) -> Hashable:
        return self.lattice.keys[self.index]

    def __str__(self) -> str:
        return self.lattice.labels[self.index]


Element = Union[int, FrameElement]
