"""Tests for B-modules, B-locales and supports."""

import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sheafmod.bmodule import (
    BLocale,
    BModule,
    Projection,
    check_map_roundtrip,
    check_meet_distribution,
    check_module_hom,
    check_module_laws,
    check_open_conditions,
    check_stability,
    check_support_characterization,
    compose,
    identity_hom,
    is_etale,
    join_homs,
    local_sections,
    make_blocale,
    module_from_map,
    unit_vectors,
    zero_hom,
)
from sheafmod.errors import NotABLocale, NotAFrameHom, NotOpen
from sheafmod.genfix import random_etale_instance
from sheafmod.lattice import Frame


def labels_of(locale: BLocale, elements: tuple[int, ...]) -> set[str]:
    return {locale.carrier.labels[e] for e in elements}


def test_free2_sections_are_zero_and_unit_vectors(free2: BLocale):
    assert labels_of(free2, local_sections(free2)) == {"(0,0)", "(1,0)", "(0,1)"}
    assert is_etale(free2)


def test_free2_support_of_unit_vector(free2: BLocale):
    x = free2.carrier.labels.index("(1,0)")
    assert free2.spp[x] == free2.base.top
    assert free2.spp[free2.carrier.bottom] == free2.base.bottom


def test_unit_vectors_of_free2(free2: BLocale):
    units = unit_vectors(free2, 2)
    assert labels_of(free2, units) == {"(1,0)", "(0,1)"}


def test_chain3_is_open_but_not_etale(chain3: BLocale):
    assert chain3.is_open
    assert labels_of(chain3, chain3.sections) == {"0", "u"}
    assert not chain3.etale


def test_chain3_support(chain3: BLocale):
    u = chain3.carrier.labels.index("u")
    assert chain3.spp[u] == chain3.base.top
    assert check_open_conditions(chain3, chain3.spp).passed
    assert check_support_characterization(chain3, chain3.spp).passed


def test_support_characterization_on_unstable_module(chain: Frame):
    # m.1 = 1 but m.u = 0, so bx = b1 ^ x fails at (m, u)
    module = BModule(chain, chain, np.array([[0, 0, 0], [0, 0, 2], [0, 1, 2]]), name="LOOSE")
    assert check_module_laws(module).passed
    assert not check_stability(module).passed
    report = check_support_characterization(module, np.array([0, 2, 1]))
    assert not report.passed
    assert report.verdict("premise: monotone") is not None
    assert not report.verdict("premise: monotone").passed
    assert report.verdict("stability forced") is None


def test_module_from_map_rejects_non_frame_hom(b2: Frame, chain: Frame):
    with pytest.raises(NotAFrameHom):
        module_from_map(b2, chain, [0, 1])


def test_corrupted_action_is_not_a_blocale(b2: Frame, chain: Frame):
    module = BModule(b2, chain, np.array([[0, 0, 1], [0, 1, 2]]), name="CORRUPT")
    assert not check_module_laws(module).passed
    with pytest.raises(NotABLocale):
        make_blocale(module)


def test_identity_and_zero_homs(free2: BLocale):
    assert check_module_hom(identity_hom(free2)).passed
    zero = zero_hom(free2, free2)
    assert check_module_hom(zero).passed
    joined = join_homs(identity_hom(free2), zero)
    assert np.array_equal(joined.table, np.arange(free2.size))
    assert np.array_equal(compose(zero, identity_hom(free2)).table, zero.table)


def test_projection_round_trip(free2: BLocale, chain3: BLocale, ident: BLocale):
    for locale in (free2, chain3, ident):
        assert check_map_roundtrip(locale).passed
        assert check_meet_distribution(locale).passed


def test_spp_of_non_open_locale_raises(b2: Frame):
    locale = BLocale(
        base=b2,
        carrier=b2,
        action=np.array([[0, 0], [0, 1]]),
        name="CLOSED",
        projection=Projection(pstar=np.array([0, 1])),
    )
    with pytest.raises(NotOpen):
        _ = locale.spp


def test_round_trip_catches_action_that_ignores_pstar(b2: Frame, chain: Frame):
    locale = BLocale(
        base=b2,
        carrier=chain,
        action=np.array([[0, 0, 0], [0, 1, 1]]),
        name="SKEW",
        projection=Projection(pstar=np.array([0, 2])),
    )
    report = check_map_roundtrip(locale)
    assert [r.law for r in report.failures] == ["p*(b) ^ x = bx"]


def test_round_trip_rejects_pstar_that_is_not_a_frame_hom(b2: Frame, chain: Frame):
    locale = BLocale(
        base=b2,
        carrier=chain,
        action=np.array([[0, 0, 0], [0, 1, 2]]),
        name="SHORT",
        projection=Projection(pstar=np.array([0, 1])),
    )
    report = check_map_roundtrip(locale)
    assert [r.law for r in report.failures] == ["p* is a frame hom"]


def test_make_blocale_is_quiet_at_info(b2: Frame, caplog: pytest.LogCaptureFixture):
    with caplog.at_level(logging.INFO, logger="sheafmod"):
        make_blocale(module_from_map(b2, b2, [0, 1], name="B2"))
    assert caplog.records == []


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=25, deadline=None)
def test_generated_instances_are_etale_blocales(seed: int):
    instance = random_etale_instance(seed)
    locale = instance.locale
    assert check_module_laws(locale).passed
    assert check_stability(locale).passed
    assert locale.is_open and locale.etale
    assert check_open_conditions(locale, locale.spp).passed
    assert check_map_roundtrip(locale).passed
