import time

import pytest

from deltamod import catalog
from deltamod.constructions import (FAMILIES, CatalogError, ConstructionRecipe, catalog_entries,
                                    complete_digraph_incidence, heller_matrix, lower_bound_matrix,
                                    tight_bimodular_example, unit, verify_construction)
from deltamod.exactmat import ExactMatrix
from deltamod.bounds import lower_bound_value
from deltamod.modularity import delta, has_differing_columns


def test_lower_bound_matrix_matches_display():
    assert lower_bound_matrix(3, 4) == ExactMatrix(catalog.LOWER_BOUND_3_4)


@pytest.mark.parametrize("d, m", [(d, m) for d in range(1, 5) for m in range(1, 5)])
def test_lower_bound_matrix_reaches_the_count(d, m):
    A = lower_bound_matrix(d, m)
    report = verify_construction(A, d, lower_bound_value(d, m))
    assert report.passed, report.as_dict()


def test_heller_matrix_is_unimodular():
    A = heller_matrix(4)
    assert A.cols == 10 and delta(A).delta == 1


def test_unit_and_digraph():
    assert unit(2, 3) == (0, 1, 0)
    cols = complete_digraph_incidence(4, skip=(1, 2))
    assert len(cols) == 5 and (1, -1, 0, 0) not in cols


def test_every_catalog_entry_verifies_fast():
    for entry in catalog_entries():
        t = time.perf_counter()
        report = verify_construction(entry.matrix, entry.delta, entry.count, primitive=entry.primitive)
        assert report.passed, (entry.name, report.failures())
        assert time.perf_counter() - t < 1.0


@pytest.mark.parametrize("m, count", [(7, 32), (8, 41), (9, 51)])
def test_general_family_counts(m, count):
    A = tight_bimodular_example(m, "general")
    assert A.cols == count == (m * m + m) // 2 + m - 3
    assert has_differing_columns(A)[0]


def test_claim1_variants_have_the_same_numbers():
    A = tight_bimodular_example(3, "claim1")
    B = tight_bimodular_example(3, "claim1-equivalent")
    assert delta(A).delta == delta(B).delta == 2
    assert A.cols == B.cols == 9


def test_bstar4_is_the_restriction_of_the_m5_example():
    A = tight_bimodular_example(4, "bstar4")
    assert A.cols == 12
    assert set(catalog.PRIMITIVE_M4_BSTAR) <= set(A.columns())


@pytest.mark.parametrize("family", FAMILIES)
def test_every_family_builds(family):
    m = {"generalPrimitive": 7, "primitiveTight": 4}.get(family, 3)
    recipe = ConstructionRecipe(family, delta=2, m=m)
    A = recipe.build()
    assert has_differing_columns(A)[0]


def test_verification_reports_failures():
    report = verify_construction(lower_bound_matrix(2, 3), 1, 9)
    assert not report.passed
    assert report.failures() == ["delta"]
    loose = verify_construction(lower_bound_matrix(2, 3), 3, 9, delta_exact=False)
    assert loose.passed


@pytest.mark.parametrize("m, variant", [(2, "claim1"), (3, "bstar4"), (3, "bstar2"), (6, "general"), (1, "nope")])
def test_unknown_or_mismatched_variants(m, variant):
    with pytest.raises(CatalogError):
        tight_bimodular_example(m, variant)


def test_unknown_family():
    with pytest.raises(CatalogError):
        ConstructionRecipe("banana")
