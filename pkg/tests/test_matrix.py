"""Tests for projection matrices and the module/matrix round trips."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sheafmod.bmodule import BLocale, ModuleHom, identity_hom, unit_vectors
from sheafmod.config import LimitsConfig
from sheafmod.errors import NotProjection, SizeExceeded
from sheafmod.genfix import random_projection_matrix
from sheafmod.hilbert import based, etale_based, support_hilbert
from sheafmod.lattice import Frame
from sheafmod.matrix import (
    ProjectionMatrix,
    check_functor_M,
    check_functor_X,
    check_matrix_roundtrip,
    check_module_roundtrip,
    check_round_trips,
    check_self_duality,
    functor_M,
    identity,
    is_projection_matrix,
    matrix_from_module,
    module_from_matrix,
)
from sheafmod.suite import guarded


def vectors_of(matrix: ProjectionMatrix) -> set[tuple[int, ...]]:
    module = module_from_matrix(matrix)
    return {tuple(int(v) for v in row) for row in module.vectors}


def test_all_ones_matrix_gives_diagonal(b2: Frame):
    matrix = ProjectionMatrix(b2, ("s", "t"), np.array([[1, 1], [1, 1]]))
    assert is_projection_matrix(matrix).passed
    assert vectors_of(matrix) == {(0, 0), (1, 1)}


def test_one_by_one_matrix_over_diamond(bd: Frame):
    a = bd.labels.index("a")
    matrix = ProjectionMatrix(bd, ("s",), np.array([[a]]))
    assert vectors_of(matrix) == {(0,), (a,)}


def test_identity_matrix_gives_free_module(b2: Frame):
    matrix = ProjectionMatrix.identity(b2, ("s", "t"))
    module = module_from_matrix(matrix)
    assert module.locale.size == 4
    assert module.locale.etale
    assert len(module.locale.sections) == 3
    assert module.report.passed


def test_non_symmetric_matrix_is_rejected(b2: Frame):
    matrix = ProjectionMatrix(b2, ("s", "t"), np.array([[1, 0], [1, 1]]))
    assert not is_projection_matrix(matrix).passed
    with pytest.raises(NotProjection):
        module_from_matrix(matrix)


def test_module_from_matrix_respects_guardrail(b2: Frame):
    matrix = ProjectionMatrix.identity(b2, ("s", "t"))
    with pytest.raises(SizeExceeded):
        module_from_matrix(matrix, LimitsConfig(max_free_carrier=3))


def test_unit_vectors_give_identity_matrix(free2: BLocale):
    basis = based(support_hilbert(free2), unit_vectors(free2, 2))
    matrix = matrix_from_module(basis)
    assert np.array_equal(matrix.entries, np.eye(2, dtype=np.int64))


def test_round_trips_on_free2(free2: BLocale):
    basis = etale_based(free2)
    assert check_module_roundtrip(basis).passed
    assert check_matrix_roundtrip(matrix_from_module(basis)).passed


def test_functors_on_identity(free2: BLocale):
    basis = based(support_hilbert(free2), unit_vectors(free2, 2))
    ident = identity_hom(free2)
    assert check_functor_M(ident, ident, basis, basis, basis).passed
    assert check_round_trips(ident, basis, basis).passed
    arrow = identity(matrix_from_module(basis))
    assert check_functor_X(arrow, arrow).passed


def test_coordinate_swap_gives_permutation_matrix(free2: BLocale):
    basis = based(support_hilbert(free2), unit_vectors(free2, 2))
    index = free2.carrier.key_index
    table = [index[(key[1], key[0])] for key in free2.carrier.keys]  # type: ignore[index]
    swap = ModuleHom(free2, free2, np.array(table, dtype=np.int64), name="swap")
    arrow = functor_M(swap, basis, basis)
    assert np.array_equal(arrow.entries, np.array([[0, 1], [1, 0]]))
    assert check_round_trips(swap, basis, basis).passed
    assert check_functor_M(swap, swap, basis, basis, basis).passed
    assert check_functor_X(arrow, arrow).passed
    assert check_functor_X(arrow, identity(arrow.source)).passed


@given(st.integers(min_value=0, max_value=2**32), st.integers(min_value=0, max_value=3))
@settings(max_examples=25, deadline=None)
def test_generated_matrices_are_projections(seed: int, k: int):
    matrix = random_projection_matrix(seed, k)
    assert is_projection_matrix(matrix).passed
    assert check_self_duality(identity(matrix)).passed
    assert guarded("matrix round trip", lambda: check_matrix_roundtrip(matrix)).passed


def test_generated_matrices_are_deterministic():
    first = random_projection_matrix(11, 3)
    second = random_projection_matrix(11, 3)
    assert first.index == second.index
    assert np.array_equal(first.entries, second.entries)
