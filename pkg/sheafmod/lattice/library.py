"""Named frames used by fixtures and JSON references."""

from sheafmod.errors import MalformedInput
from sheafmod.lattice.frame import downset_frame, lattice_from_tables
from sheafmod.lattice.models import Frame, Lattice, Poset


def trivial_frame() -> Frame:
    """B1: the one-element frame, 0 = 1."""
    return downset_frame(Poset.antichain([]), name="B1")


def boolean_frame() -> Frame:
    """B2 = {0, 1}."""
    return downset_frame(Poset.antichain(["1"]), name="B2")


def diamond_frame() -> Frame:
    """BD = {0, a, b, 1} with a, b incomparable."""
    return downset_frame(Poset.antichain(["a", "b"]), name="BD")


def chain_frame() -> Frame:
    """The 3-chain {0 < u < 1}."""
    return downset_frame(Poset.from_pairs(["u", "1"], [(0, 1)]), name="CHAIN3")


def m3_lattice() -> Lattice:
    """The non-distributive lattice M3: bottom, three incomparable atoms, top."""
    labels = ["0", "a", "b", "c", "1"]
    join = [
        [0, 1, 2, 3, 4],
        [1, 1, 4, 4, 4],
        [2, 4, 2, 4, 4],
        [3, 4, 4, 3, 4],
        [4, 4, 4, 4, 4],
    ]
    meet = [
        [0, 0, 0, 0, 0],
        [0, 1, 0, 0, 1],
        [0, 0, 2, 0, 2],
        [0, 0, 0, 3, 3],
        [0, 1, 2, 3, 4],
    ]
    return lattice_from_tables(labels, join, meet, name="M3")


NAMED_LATTICES = {
    "B1": trivial_frame,
    "B2": boolean_frame,
    "BD": diamond_frame,
    "CHAIN3": chain_frame,
    "M3": m3_lattice,
}


def named_lattice(name: str) -> Lattice:
    try:
        return NAMED_LATTICES[name]()
    except KeyError:
        raise MalformedInput(f"unknown frame {name!r}; known: {', '.join(NAMED_LATTICES)}")
