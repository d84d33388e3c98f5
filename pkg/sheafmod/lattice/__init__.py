"""Finite frames: construction, element arithmetic, Heyting operations and law checks."""

from sheafmod.lattice.dot import hasse_dot
from sheafmod.lattice.frame import (
    as_frame,
    check_frame_hom,
    count_downsets,
    downset_frame,
    heyting,
    join_set,
    lattice_from_order,
    lattice_from_tables,
    meet_set,
    power_lattice,
    semiring_matmul,
    vector_lattice,
    verify_frame,
    verify_lattice,
)
from sheafmod.lattice.library import (
    boolean_frame,
    chain_frame,
    diamond_frame,
    m3_lattice,
    named_lattice,
    trivial_frame,
)
from sheafmod.lattice.models import Element, Frame, FrameElement, Lattice, Poset

__all__ = [
    "Element",
    "Frame",
    "FrameElement",
    "Lattice",
    "Poset",
    "as_frame",
    "boolean_frame",
    "chain_frame",
    "check_frame_hom",
    "count_downsets",
    "diamond_frame",
    "downset_frame",
    "hasse_dot",
    "heyting",
    "join_set",
    "lattice_from_order",
    "lattice_from_tables",
    "m3_lattice",
    "meet_set",
    "named_lattice",
    "power_lattice",
    "semiring_matmul",
    "trivial_frame",
    "vector_lattice",
    "verify_frame",
    "verify_lattice",
]
