import pytest

from helpers import grid_columns, naive_max_subset
from deltamod.bounds import lower_bound_value
from deltamod.constructions import lower_bound_matrix, tight_bimodular_example
from deltamod.exactmat import ExactMatrix, PreconditionError, det_bareiss, is_hnf, rank
from deltamod.modularity import delta, has_differing_columns
from deltamod.search import (Budget, candidate_box, enumerate_hnf_bases, max_differing_columns, root_classes,
                             stabilizer, verify_maximal)


@pytest.mark.parametrize("d, m, count", [(1, 2, 1), (2, 2, 3), (4, 2, 7), (2, 3, 7), (6, 1, 1)])
def test_hnf_basis_count(d, m, count):
    bases = enumerate_hnf_bases(d, m)
    # sum over diagonals of prod d_j^(j) with 0-based column index j
    assert len(bases) == count
    assert all(is_hnf(H) and det_bareiss(H) == d for H in bases)


@pytest.mark.parametrize("m, classes", [(1, 1), (2, 2), (3, 3), (4, 4)])
def test_root_classes_for_delta_two(m, classes):
    assert len(root_classes(2, m)) == classes


def test_candidate_box_excludes_basis_and_is_canonical():
    box = candidate_box(ExactMatrix([[1, 0], [0, 2]]))
    assert box.delta == 2
    assert (1, 0) not in box.candidates and (0, 2) not in box.candidates
    assert all(c == tuple(c) and next(x for x in c if x) > 0 for c in box.candidates)
    with pytest.raises(PreconditionError):
        candidate_box(ExactMatrix([[1, 0], [1, 1]]))


def test_stabilizer_is_a_group_of_permutations():
    H = ExactMatrix.identity(3)
    cands = list(candidate_box(H).candidates)
    group = stabilizer(H, cands)
    # the hyperoctahedral group of order 48 acts on sign classes, where -I is trivial
    assert len(group) == 24
    assert group[0].tolist() == list(range(len(cands)))
    keys = {tuple(g) for g in group}
    for g in group[:6]:
        for h in group[:6]:
            assert tuple(g[h]) in keys


@pytest.mark.parametrize("d, m, value", [
    (1, 1, 1), (1, 2, 3), (1, 3, 6), (2, 1, 2), (2, 2, 5), (2, 3, 9), (3, 2, 7), (4, 2, 9), (3, 1, 3),
])
def test_small_exact_values(d, m, value, backend):
    res = max_differing_columns(d, m)
    assert res.exhaustive
    assert res.value == value
    W = res.witness
    assert W.cols == value and rank(W) == m
    assert delta(W).delta <= d and has_differing_columns(W)[0]


@pytest.mark.parametrize("d, m, radius", [(1, 2, 1), (2, 2, 2), (1, 3, 1)])
def test_search_matches_naive_grid_maximisation(d, m, radius):
    naive = naive_max_subset(grid_columns(m, radius), m, d)
    assert max_differing_columns(d, m).value == naive


@pytest.mark.parametrize("d, m", [(1, 2), (2, 2), (1, 3)])
def test_search_matches_naive_maximisation_over_candidate_boxes(d, m):
    # every feasible set contains a basis of largest |det| delta' <= d, which
    # after an HNF change of basis lies in that root's candidate box
    best = 0
    for dl in range(1, d + 1):
        for H in enumerate_hnf_bases(dl, m):
            cols = [tuple(c) for c in H.columns()] + list(candidate_box(H).candidates)
            best = max(best, naive_max_subset(cols, m, dl))
    assert max_differing_columns(d, m).value == best


@pytest.mark.parametrize("d, m", [(1, 3), (2, 3), (3, 2)])
def test_symmetry_and_seeding_do_not_change_the_value(d, m):
    plain = max_differing_columns(d, m, orbit_depth=0, seed_with_construction=False)
    full = max_differing_columns(d, m)
    assert plain.value == full.value
    assert plain.exhaustive and full.exhaustive


def test_threads_give_the_same_answer():
    one = max_differing_columns(2, 3, threads=1)
    two = max_differing_columns(2, 3, threads=2)
    assert one.value == two.value == 9
    assert one.witness == two.witness


def test_witness_is_deterministic():
    a = max_differing_columns(2, 3)
    b = max_differing_columns(2, 3)
    assert a.witness == b.witness
    assert a.as_dict()["value"] == 9


def test_tiny_budget_is_reported_as_not_exhaustive():
    res = max_differing_columns(2, 4, budget=Budget(nodes=1), seed_with_construction=False)
    assert not res.exhaustive
    assert res.value <= 14


def test_collect_returns_only_optimal_sets():
    res = max_differing_columns(2, 3, collect=True)
    assert res.optimal_sets
    for W in res.optimal_sets:
        assert W.cols == 9 and delta(W).delta <= 2 and has_differing_columns(W)[0]


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_lower_bound_matrix_is_maximal(m):
    assert verify_maximal(lower_bound_matrix(2, m), 2) == (True, None)


def test_claim1_is_maximal():
    assert verify_maximal(tight_bimodular_example(3, "claim1"), 2) == (True, None)


def test_non_maximal_matrix_gets_an_addable_column():
    A = ExactMatrix.identity(3)
    ok, column = verify_maximal(A, 1)
    assert not ok
    B = A.append_columns([column])
    assert delta(B).delta <= 1 and has_differing_columns(B)[0]


def test_bstar4_example_is_not_maximal():
    A = tight_bimodular_example(4, "bstar4")
    ok, column = verify_maximal(A, 2)
    assert not ok
    assert delta(A.append_columns([column])).delta <= 2


def test_verify_maximal_preconditions():
    with pytest.raises(PreconditionError):
        verify_maximal(ExactMatrix([[1, 0], [0, 0]]), 2)
    with pytest.raises(PreconditionError):
        verify_maximal(lower_bound_matrix(3, 2), 2)


def test_lower_bound_value_is_met_by_search():
    for d, m in [(1, 3), (2, 2), (3, 2)]:
        assert max_differing_columns(d, m).value >= lower_bound_value(d, m)
