"""Tests for generators, named fixtures and the brute-force oracle."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sheafmod.errors import MalformedInput, SizeExceeded
from sheafmod.genfix import (
    FIXTURES,
    Presheaf,
    brute_force,
    brute_force_map,
    cached_map_verdicts,
    cached_verdicts,
    check_presheaf,
    elements_poset,
    etale_from_presheaf,
    fixture,
    fixtures,
    oracle_verify,
    oracle_verify_map,
    random_etale_instance,
    random_poset,
    random_presheaf,
    terminal_presheaf,
)
from sheafmod.genfix import oracle
from sheafmod.homs import identity_map, make_map
from sheafmod.lattice import Poset
from sheafmod.report import LawReport


def test_random_poset_edge_sizes():
    assert random_poset(3, 0).size == 0
    assert random_poset(3, 1).elements == ("p0",)
    with pytest.raises(SizeExceeded):
        random_poset(3, 9)


def test_random_poset_is_deterministic():
    first, second = random_poset(42, 5), random_poset(42, 5)
    assert np.array_equal(first.leq, second.leq)


def test_point_with_two_sections_gives_diamond():
    presheaf = Presheaf(Poset.antichain(["p"]), (("x", "y"),))
    assert elements_poset(presheaf).size == 2
    instance = etale_from_presheaf(presheaf)
    assert instance.locale.size == 4
    assert instance.report.passed


def test_empty_presheaf_gives_trivial_carrier():
    poset = Poset.from_pairs(["p", "q"], [(0, 1)])
    instance = etale_from_presheaf(Presheaf(poset, ((), ()), {(1, 0): ()}))
    assert instance.locale.size == 1
    assert instance.locale.etale


def test_terminal_presheaf_gives_the_base():
    poset = Poset.from_pairs(["p", "q", "r"], [(0, 1), (0, 2)])
    instance = etale_from_presheaf(terminal_presheaf(poset))
    assert instance.locale.size == instance.base.size
    assert len(instance.locale.sections) == instance.base.size


def test_presheaf_rejects_restriction_against_the_order():
    poset = Poset.from_pairs(["p", "q"], [(0, 1)])
    with pytest.raises(MalformedInput):
        Presheaf(poset, (("x",), ("x",)), {(0, 1): (0,)})


@given(st.integers(min_value=0, max_value=2**32), st.integers(min_value=0, max_value=4))
@settings(max_examples=30, deadline=None)
def test_random_presheaves_are_functors(seed: int, n: int):
    presheaf = random_presheaf(seed, random_poset(seed, n))
    assert check_presheaf(presheaf).passed


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=15, deadline=None)
def test_random_instances_are_deterministic_and_oracle_clean(seed: int):
    first, second = random_etale_instance(seed), random_etale_instance(seed)
    assert np.array_equal(first.locale.action, second.locale.action)
    assert first.descriptor() == second.descriptor()
    assert oracle_verify(first.locale).passed


def test_fixture_lookup_is_case_insensitive():
    assert fixture("free2").name == "FREE2"
    with pytest.raises(MalformedInput):
        fixture("NOPE")


def test_fixture_library_order():
    assert list(fixtures()) == list(FIXTURES)


@pytest.mark.parametrize("name", list(FIXTURES))
def test_oracle_agrees_on_every_fixture(name: str):
    fx = fixture(name)
    assert oracle_verify(fx.module if fx.module is not None else fx.lattice).passed
    if fx.report is not None:
        assert fx.report.passed


def test_oracle_verdicts_on_chain3():
    verdicts = brute_force(fixture("CHAIN3").module)
    assert verdicts["open"] is True
    assert verdicts["étale"] is False
    assert verdicts["nondegenerate"] is False
    assert verdicts["weakly nondegenerate"] is True
    assert verdicts["has Hilbert basis"] is False


def test_oracle_verdicts_on_corrupt_and_m3():
    assert brute_force(fixture("CORRUPT").module)["module laws"] is False
    assert brute_force(fixture("M3").lattice) == {"frame": False}


def test_sierp_prod_is_open_with_rectangle_supports():
    fx = fixture("SIERP-PROD")
    assert fx.locale is not None and fx.locale.is_open
    assert fx.report is not None and fx.report.passed


def test_split_is_etale():
    fx = fixture("SPLIT")
    assert fx.locale is not None and fx.locale.etale


def test_oracle_rederives_basis_matrix_and_hom_verdicts():
    free2 = fixture("FREE2").module
    verdicts = brute_force(free2)
    assert verdicts["has Hilbert basis"] is True
    assert verdicts["basis clauses"] == (True,) * 8
    assert verdicts["projection matrix"] == ((0, 0, 0), (0, 1, 0), (0, 0, 1))
    assert verdicts["projection laws"] is True
    assert verdicts["matrix module"] is True
    assert verdicts["sheaf homs"] == (True, False)
    assert verdicts["adjoints"] == ((0, 1, 2, 3), (0, 0, 0, 0))
    assert set(verdicts) == set(cached_verdicts(free2))


def test_oracle_reports_a_disagreeing_library_verdict(monkeypatch: pytest.MonkeyPatch):
    def broken(matrix: object) -> LawReport:
        report = LawReport(subject="projection matrix")
        report.check("M^2 = M", False)
        return report

    monkeypatch.setattr(oracle, "is_projection_matrix", broken)
    report = oracle_verify(fixture("FREE2").module)
    assert [r.law for r in report.failures] == ["oracle agrees: projection laws"]


def test_map_oracle_on_coordinate_swap():
    locale = fixture("FREE2").locale
    assert locale is not None
    index = locale.carrier.key_index
    table = [index[(key[1], key[0])] for key in locale.carrier.keys]  # type: ignore[index]
    swap = make_map(locale, locale, table, name="swap")
    verdicts = brute_force_map(swap)
    assert verdicts["direct image"] == tuple(table)
    assert verdicts["adjunction"] is True
    assert verdicts["Frobenius"] is True
    assert verdicts["direct image is sheaf hom"] is True
    assert verdicts["dagger is direct image"] is True
    assert verdicts == cached_map_verdicts(swap)
    assert oracle_verify_map(identity_map(locale)).passed
