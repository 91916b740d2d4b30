import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import naive_delta
from deltamod.constructions import lower_bound_matrix
from deltamod.exactmat import DimensionError, ExactMatrix, PreconditionError
from deltamod.modularity import (ColumnMultiset, canonical_sign, delta, has_differing_columns, is_delta_modular,
                                 is_primitive, normalize)


def test_pruned_delta_matches_naive_on_50_random_matrices(backend):
    rng = random.Random(11)
    for _ in range(50):
        m = rng.randint(1, 4)
        n = rng.randint(m, 10)
        cols = [tuple(rng.randint(-4, 4) for _ in range(m)) for _ in range(n)]
        A = ExactMatrix.from_columns(cols)
        rep = delta(A)
        assert rep.delta == naive_delta(cols, m)
        if rep.delta:
            from deltamod.exactmat import det_bareiss
            assert abs(det_bareiss(A.select_columns(rep.witness))) == rep.delta
        assert delta(A, use_hadamard=False).delta == rep.delta


def test_big_entries_use_exact_path():
    big = 10**12
    A = ExactMatrix([[big, 1, 0], [1, big, 1]])
    assert delta(A).delta == big * big - 1


@given(st.integers(1, 3).flatmap(lambda m: st.lists(
    st.tuples(*[st.integers(-3, 3)] * m), min_size=m, max_size=7)))
@settings(max_examples=80, deadline=None)
def test_delta_property_matches_naive(cols):
    m = len(cols[0])
    assert delta(ExactMatrix.from_columns(cols)).delta == naive_delta(cols, m)


@pytest.mark.parametrize("d, m", [(1, 3), (2, 3), (3, 4), (4, 2)])
def test_lower_bound_family_is_delta_modular(d, m):
    A = lower_bound_matrix(d, m)
    assert delta(A).delta == d
    assert is_delta_modular(A, d) == (True, None)
    ok, witness = is_delta_modular(A, d - 1) if d > 1 else (False, None)
    if d > 1:
        assert not ok and witness is not None


def test_delta_needs_enough_columns():
    with pytest.raises(DimensionError):
        delta(ExactMatrix([[1], [0]]))


@pytest.mark.parametrize("v, expected", [((0, -2, 3), (0, 2, -3)), ((1, -1), (1, -1)), ((0, 0), (0, 0))])
def test_canonical_sign(v, expected):
    assert canonical_sign(v) == expected


def test_is_primitive():
    assert is_primitive((2, 3))
    assert not is_primitive((2, 4))
    with pytest.raises(PreconditionError):
        is_primitive((0, 0))


def test_has_differing_columns_witnesses():
    assert has_differing_columns(ExactMatrix.from_columns([(1, 0), (0, 1)])) == (True, None)
    assert has_differing_columns(ExactMatrix.from_columns([(1, 0), (0, 0)])) == (False, (1,))
    assert has_differing_columns(ExactMatrix.from_columns([(1, 2), (0, 1), (-1, -2)])) == (False, (0, 2))


def test_normalize_merges_signs():
    ms = normalize(ExactMatrix.from_columns([(0, 1), (0, -1), (1, 0), (0, 0)]))
    assert ms.columns == ((0, 1), (1, 0))
    assert ms.multiplicities == (2, 1)
    assert not ms.is_differing
    assert ColumnMultiset(2, ((1, 0), (0, 1))).is_differing
    with pytest.raises(DimensionError):
        ColumnMultiset(2, ((1, 0, 0),))
