"""Tests for finite frames."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sheafmod.config import LimitsConfig
from sheafmod.errors import ForeignElement, MalformedInput, NotAFrame, SizeExceeded
from sheafmod.genfix import random_poset
from sheafmod.lattice import (
    Frame,
    FrameElement,
    Poset,
    as_frame,
    count_downsets,
    downset_frame,
    hasse_dot,
    heyting,
    join_set,
    meet_set,
    named_lattice,
    verify_frame,
)

DISTRIBUTIVE = "distributive x ^ (y v z) = (x ^ y) v (x ^ z)"
SUBSETS = "frame distributivity over all subsets"


def test_downset_frame_of_empty_poset_is_trivial():
    frame = downset_frame(Poset.antichain([]))
    assert frame.size == 1
    assert frame.bottom == frame.top == 0


def test_downset_frame_of_point_is_b2():
    frame = downset_frame(Poset.antichain(["p"]))
    assert frame.labels == ("0", "1")


def test_downset_frame_of_antichain_is_diamond(bd: Frame):
    assert bd.labels == ("0", "a", "b", "1")
    a, b = bd.labels.index("a"), bd.labels.index("b")
    assert bd.join(a, b) == bd.top
    assert bd.meet(a, b) == bd.bottom


def test_downset_frame_respects_size_guardrail():
    with pytest.raises(SizeExceeded):
        downset_frame(Poset.chain(4), limits=LimitsConfig(max_poset=3))


def test_verify_frame_passes_on_b2(b2: Frame):
    assert verify_frame(b2).passed


def test_verify_frame_reports_m3_distributivity_witness():
    report = verify_frame(named_lattice("M3"))
    result = report.verdict(DISTRIBUTIVE)
    assert result is not None
    assert not result.passed
    assert result.witness is not None
    assert not report.passed


def test_as_frame_rejects_m3():
    with pytest.raises(NotAFrame):
        as_frame(named_lattice("M3"))


def test_subset_distributivity_is_exhaustive_up_to_64_elements():
    frame = downset_frame(Poset.antichain(list("abcdef")))
    assert frame.size == 64
    result = verify_frame(frame).verdict(SUBSETS)
    assert result is not None
    assert result.passed
    assert result.note is None


def test_subset_distributivity_names_a_violating_family_in_m3():
    result = verify_frame(named_lattice("M3")).verdict(SUBSETS)
    assert result is not None
    assert not result.passed
    assert result.witness is not None and "S={" in result.witness


def test_heyting_into_top_is_top(bd: Frame):
    for x in range(bd.size):
        assert heyting(bd, x, bd.top) == bd.top


def test_heyting_negation_in_chain(chain: Frame):
    u = chain.labels.index("u")
    assert heyting(chain, u, chain.bottom) == chain.bottom
    assert chain.negation(chain.bottom) == chain.top


def test_heyting_in_diamond(bd: Frame):
    a, b = bd.labels.index("a"), bd.labels.index("b")
    assert heyting(bd, a, b) == b


def test_empty_join_and_meet(bd: Frame):
    assert join_set(bd, []) == bd.bottom
    assert meet_set(bd, []) == bd.top


def test_join_and_meet_of_atoms(bd: Frame):
    a, b = bd.labels.index("a"), bd.labels.index("b")
    assert join_set(bd, [a, b]) == bd.top
    assert meet_set(bd, [a, b]) == bd.bottom
    assert join_set(bd, [a]) == meet_set(bd, [a]) == a


def test_frame_elements_from_different_frames_do_not_compare(bd: Frame):
    other = downset_frame(Poset.antichain(["a", "b"]))
    with pytest.raises(ForeignElement):
        _ = FrameElement(bd, 1) == FrameElement(other, 1)


def test_poset_rejects_cycles():
    with pytest.raises(MalformedInput):
        Poset.from_pairs(["x", "y"], [(0, 1), (1, 0)])


def test_named_lattice_rejects_unknown_name():
    with pytest.raises(MalformedInput):
        named_lattice("N5")


def test_hasse_dot_draws_covers_bottom_to_top(bd: Frame):
    source = hasse_dot(bd)
    assert "rankdir=BT" in source
    assert source.count("->") == 4


@given(st.integers(min_value=0, max_value=2**32), st.integers(min_value=0, max_value=4))
@settings(max_examples=40, deadline=None)
def test_generated_frames_pass_frame_laws_and_residuation(seed: int, n: int):
    poset = random_poset(seed, n)
    frame = downset_frame(poset)
    assert frame.size == count_downsets(poset)
    assert verify_frame(frame).passed
    order, meet = frame.order, frame.meet_table
    for x in range(frame.size):
        for y in range(frame.size):
            implication = heyting(frame, x, y)
            for z in range(frame.size):
                assert bool(order[meet[z, x], y]) == bool(order[z, implication])
