"""Tests for adjoints, sheaf homs and maps of étale B-locales."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sheafmod.bmodule import BLocale, identity_hom, zero_hom
from sheafmod.errors import NotAFrameHom, NotAHom, NotEtale, NotSheafHom
from sheafmod.genfix import (
    etale_from_presheaf,
    etale_map,
    random_etale_instance,
    random_presheaf_map,
)
from sheafmod.hilbert import etale_based, support_hilbert
from sheafmod.homs import (
    BLocaleMap,
    adjoint,
    check_blocale_hom,
    check_dagger_is_direct_image,
    check_dagger_is_transpose,
    check_meet_preservation,
    check_section_meet_lemmas,
    check_strong_duality,
    direct_image,
    functor_S_iso_check,
    identity_map,
    is_adjointable_iff_hom_check,
    is_sheaf_hom,
    make_map,
    make_sheaf_hom,
    map_from_sheaf_hom,
    presheaf_of_hom,
    sections_presheaf,
)


def swap_map(locale: BLocale) -> BLocaleMap:
    """(x, y) -> (y, x) on a free module with two generators."""
    index = locale.carrier.key_index
    table = [index[(key[1], key[0])] for key in locale.carrier.keys]  # type: ignore[index]
    return make_map(locale, locale, table, name="swap")


def test_identity_map_has_identity_direct_image(free2: BLocale):
    shriek, report = direct_image(identity_map(free2))
    assert np.array_equal(shriek.table, np.arange(free2.size))
    assert report.passed


def test_direct_image_is_adjoint_of_inverse_image(free2: BLocale):
    assert check_dagger_is_direct_image(identity_map(free2)).passed
    assert check_dagger_is_direct_image(swap_map(free2)).passed


def test_swap_direct_image_is_swap(free2: BLocale):
    fmap = swap_map(free2)
    shriek, report = direct_image(fmap)
    assert report.passed
    assert np.array_equal(shriek.table, fmap.inverse_image)


def test_dagger_check_requires_etale_ends(chain3: BLocale):
    with pytest.raises(NotEtale):
        check_dagger_is_direct_image(identity_map(chain3))


def test_make_map_rejects_non_frame_hom(free2: BLocale):
    with pytest.raises(NotAFrameHom):
        make_map(free2, free2, np.zeros(free2.size, dtype=np.int64))


def test_frame_hom_off_the_base_is_not_a_map(ident: BLocale):
    a, b = ident.carrier.labels.index("a"), ident.carrier.labels.index("b")
    table = np.arange(ident.size)
    table[a], table[b] = b, a
    report = check_blocale_hom(ident, ident, table)
    assert not report.passed
    assert report.verdict("module hom iff commutes with projections").passed
    with pytest.raises(NotAHom):
        make_map(ident, ident, table)


def test_adjoint_of_identity_is_identity(free2: BLocale):
    basis = etale_based(free2)
    result = adjoint(identity_hom(free2), basis, support_hilbert(free2))
    assert result.report.passed
    assert np.array_equal(result.hom.table, np.arange(free2.size))


def test_identity_is_a_sheaf_hom_and_zero_is_not(free2: BLocale):
    assert is_sheaf_hom(identity_hom(free2)).passed
    assert not is_sheaf_hom(zero_hom(free2, free2)).passed
    with pytest.raises(NotSheafHom):
        make_sheaf_hom(zero_hom(free2, free2))


def test_zero_hom_is_a_negative_witness(free2: BLocale):
    report = functor_S_iso_check(
        [identity_map(free2), swap_map(free2)],
        [zero_hom(free2, free2)],
        require_negative=True,
    )
    assert report.passed


def test_independent_sheaf_homs_define_maps(free2: BLocale):
    report = functor_S_iso_check([], [identity_hom(free2)])
    laws = [r.law for r in report.results]
    assert f"id_{free2.name}: S(h)_! = h" in laws
    assert f"id_{free2.name}: S(h)* = (S(h)_!)†" in laws
    assert report.passed


def test_sheaf_hom_gives_back_its_map(free2: BLocale):
    fmap = swap_map(free2)
    shriek, _ = direct_image(fmap)
    rebuilt, report = map_from_sheaf_hom(make_sheaf_hom(shriek))
    assert report.passed
    assert rebuilt is not None
    assert np.array_equal(rebuilt.inverse_image, fmap.inverse_image)


def test_adjointable_iff_hom_on_tables(free2: BLocale):
    basis = etale_based(free2)
    zero = np.zeros(free2.size, dtype=np.int64)
    constant_top = np.full(free2.size, free2.carrier.top)
    for table in (zero, np.arange(free2.size), constant_top):
        assert is_adjointable_iff_hom_check(table, basis, basis).passed


def test_dagger_duality_and_transpose(free2: BLocale):
    basis = etale_based(free2)
    shriek, _ = direct_image(swap_map(free2))
    assert check_strong_duality(shriek, shriek, basis, basis, basis).passed
    assert check_dagger_is_transpose(shriek, basis, basis).passed


def test_meet_preservation_and_section_lemmas(free2: BLocale, limits):
    sheaf_hom = make_sheaf_hom(identity_hom(free2))
    assert check_meet_preservation(sheaf_hom, limits, seed=0).passed
    assert check_section_meet_lemmas(free2, limits, seed=0).passed


def test_sections_presheaf_of_free2(free2: BLocale):
    presheaf = sections_presheaf(free2)
    labels = free2.carrier.labels
    top = {labels[s] for s in presheaf.fibers[free2.base.top]}
    assert top == {"(1,0)", "(0,1)"}
    assert presheaf.fibers[free2.base.bottom] == (free2.carrier.bottom,)
    assert presheaf.report.passed
    assert presheaf_of_hom(make_sheaf_hom(identity_hom(free2))).report.passed


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=10, deadline=None)
def test_generated_maps_satisfy_dagger_and_bijection(seed: int):
    rng = np.random.default_rng(seed)
    source = random_etale_instance(int(rng.integers(0, 2**63)))
    map_seed = int(rng.integers(0, 2**63))
    transformation = random_presheaf_map(map_seed, source.presheaf, None)
    target = etale_from_presheaf(transformation.target, base=source.base, seed=map_seed)
    fmap = etale_map(source, target, transformation)
    assert check_dagger_is_direct_image(fmap).passed
    report = functor_S_iso_check([fmap], [zero_hom(source.locale, target.locale)])
    assert report.passed
