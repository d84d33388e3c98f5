"""Tests for inner products, Hilbert bases and the étale equivalence."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sheafmod.bmodule import BLocale, free_module, unit_vectors
from sheafmod.errors import InconsistentVerdicts
from sheafmod.genfix import principal_basis, random_etale_instance
from sheafmod.hilbert import (
    Verdict,
    basis_properties,
    based,
    check_basis_converse,
    etale_based,
    etale_equivalence_check,
    find_basis,
    inner_from_table,
    is_hilbert_basis,
    projectivity_split,
    support_from_inner,
    support_hilbert,
)
from sheafmod.hilbert import basis as basis_module
from sheafmod.homs import adjoint
from sheafmod.lattice import Frame


def element(locale: BLocale, label: str) -> int:
    return locale.carrier.labels.index(label)


def test_free2_support_inner_product(free2: BLocale):
    hilbert = support_hilbert(free2)
    e1, e2 = element(free2, "(1,0)"), element(free2, "(0,1)")
    assert hilbert.inner(e1, e2) == free2.base.bottom
    assert hilbert.inner(e1, e1) == free2.base.top
    assert hilbert.is_hilbert
    assert hilbert.strict.passed and hilbert.supported.passed


def test_chain3_is_degenerate_but_weakly_nondegenerate(chain3: BLocale):
    hilbert = support_hilbert(chain3)
    assert hilbert.is_pre_hilbert
    assert not hilbert.nondegenerate.passed
    assert hilbert.nondegenerate.witness is not None
    assert hilbert.weakly_nondegenerate is not None
    assert hilbert.weakly_nondegenerate.passed


def test_chain3_has_no_hilbert_basis(chain3: BLocale):
    assert find_basis(support_hilbert(chain3)) is None


def test_basis_search_disagreement_raises(free2: BLocale, monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setattr(basis_module, "_admissible_family", lambda hilbert: np.array([], int))
    with pytest.raises(InconsistentVerdicts):
        find_basis(support_hilbert(free2))


def test_sections_form_a_basis_of_free2(free2: BLocale):
    hilbert = support_hilbert(free2)
    assert is_hilbert_basis(hilbert, free2.sections).passed
    assert basis_properties(etale_based(free2)).passed
    assert check_basis_converse(hilbert, free2.sections).passed


def test_unit_vectors_alone_are_a_basis(free2: BLocale):
    hilbert = support_hilbert(free2)
    basis = based(hilbert, unit_vectors(free2, 2))
    assert basis_properties(basis).passed
    split = projectivity_split(basis)
    assert split.report.passed
    assert split.psi_phi_identity


def test_adjoint_of_phi_is_psi(free2: BLocale):
    basis = based(support_hilbert(free2), unit_vectors(free2, 2))
    split = projectivity_split(basis)
    result = adjoint(split.phi, etale_based(split.phi.source), basis.hilbert)
    assert result.report.passed
    assert np.array_equal(result.hom.table, split.psi.table)


def test_redundant_family_splits_only_one_way(free2: BLocale):
    split = projectivity_split(etale_based(free2))
    assert 0 in etale_based(free2).basis.elements
    assert split.report.passed
    assert not split.psi_phi_identity


def test_trivial_module_is_etale_with_a_basis(b2: Frame):
    verdict = etale_equivalence_check(free_module(b2, 0))
    assert verdict.agree
    assert verdict.etale is Verdict.YES


def test_single_unit_vector_is_not_a_basis(free2: BLocale):
    result = is_hilbert_basis(support_hilbert(free2), [element(free2, "(1,0)")])
    assert not result.passed
    assert result.witness is not None


def test_support_from_inner_recovers_spp(free2: BLocale):
    projection = support_from_inner(support_hilbert(free2))
    assert projection.is_open
    assert np.array_equal(projection.spp, free2.spp)


def test_table_inner_product_must_vanish_on_zero(free2: BLocale):
    table = np.full((free2.size, free2.size), free2.base.top)
    hilbert = inner_from_table(free2, table)
    assert not hilbert.is_pre_hilbert
    assert hilbert.axioms.verdict("<0,y> = 0") is not None
    assert not hilbert.axioms.verdict("<0,y> = 0").passed


def test_equivalence_on_free2_and_chain3(free2: BLocale, chain3: BLocale):
    yes = etale_equivalence_check(free2)
    assert yes.agree and yes.etale is Verdict.YES
    no = etale_equivalence_check(chain3)
    assert no.agree and no.etale is Verdict.NO
    assert no.pre_hilbert_with_basis is Verdict.NO


def test_identity_locale_is_etale_with_every_element_a_section(ident: BLocale):
    assert ident.etale
    assert ident.sections == tuple(range(ident.size))


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=20, deadline=None)
def test_principal_basis_satisfies_basis_lemma(seed: int):
    instance = random_etale_instance(seed)
    basis = principal_basis(instance)
    assert len(basis.basis) == instance.elements.size
    assert basis_properties(basis).passed
    assert etale_equivalence_check(instance.locale).agree
