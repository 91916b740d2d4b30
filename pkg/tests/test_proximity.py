import math
from fractions import Fraction
from itertools import product

import pytest

from deltamod.exactmat import ExactMatrix, PreconditionError
from deltamod.proximity import (ConfigurationError, IPInstance, integer_points, lp_vertices, nearest_ip_point,
                                proximity, random_instances)

F = Fraction
PAIR = IPInstance(ExactMatrix([[2, 1]]), [1], [0, 0], [1, 1])


def test_one_dimensional_vertex():
    assert lp_vertices(IPInstance(ExactMatrix([[1]]), [1], [0], [2])) == [(F(1),)]


def test_two_vertices_of_the_pair_instance():
    assert lp_vertices(PAIR) == [(F(0), F(1)), (F(1, 2), F(0))]


def test_nearest_points_on_the_pair_instance():
    assert nearest_ip_point((0, 1), PAIR) == ((0, 1), F(0))
    assert nearest_ip_point((F(1, 2), 0), PAIR) == ((0, 1), F(3, 2))


def test_pair_instance_proximity_and_bounds():
    rep = proximity(PAIR)
    assert rep.pi == F(3, 2)
    assert rep.bounds_checked["column_bound"] == 20
    assert rep.bounds_checked["cook_bound"] == 8
    assert rep.satisfied


def test_infeasible_ip():
    inst = IPInstance(ExactMatrix([[2]]), [1], [0], [1])
    assert nearest_ip_point((F(1, 2),), inst) is None
    rep = proximity(inst)
    assert rep.ip_empty and rep.pi is None


def test_unimodular_vertices_are_integral():
    inst = IPInstance(ExactMatrix([[1, -1, 0], [0, 1, -1]]), [1, -2], [-3, -3, -3], [3, 3, 3])
    verts = lp_vertices(inst)
    assert verts and all(v.denominator == 1 for x in verts for v in x)
    assert proximity(inst).pi == 0


def test_infinite_bounds_need_a_window():
    inst = IPInstance(ExactMatrix([[1, 2]]), [3], ["-inf", 0], ["+inf", 4])
    with pytest.raises(ConfigurationError):
        proximity(inst)
    rep = proximity(inst, window=2)
    assert rep.pi == 0
    assert nearest_ip_point((F(3), F(0)), inst, window=[(-5, 5), (0, 4)]) == ((3, 0), F(0))


def test_instance_validation():
    with pytest.raises(ValueError):
        IPInstance(ExactMatrix([[1, 1]]), [1], [0, 2], [1, 1])
    with pytest.raises(PreconditionError):
        IPInstance(ExactMatrix([[1, 1], [2, 2]]), [1, 2], [0, 0], [1, 1])
    with pytest.raises(ValueError):
        lp_vertices(IPInstance(ExactMatrix([[1] * 11]), [1], [0] * 11, [1] * 11))


def test_json_round_trip():
    inst = IPInstance.from_json_obj({"A": [[1, 1]], "b": [1], "l": ["−inf", 0], "u": ["+inf", 3]})
    assert inst.l[0] == -math.inf
    assert IPInstance.from_json_obj(inst.to_json_obj()) == inst


def _full_scan(inst):
    lo = [int(x) for x in inst.l]
    hi = [int(x) for x in inst.u]
    return sorted(z for z in product(*[range(a, b + 1) for a, b in zip(lo, hi)]) if inst.is_feasible(z))


def test_integer_points_match_a_full_rescan():
    for inst in random_instances(10, seed=3):
        pts = integer_points(inst, [int(x) for x in inst.l], [int(x) for x in inst.u])
        assert [tuple(int(v) for v in z) for z in pts] == _full_scan(inst)


def test_nearest_points_match_a_full_rescan():
    for inst in random_instances(10, seed=5):
        pts = _full_scan(inst)
        for v in lp_vertices(inst):
            z, dist = nearest_ip_point(v, inst)
            ref = min(pts, key=lambda p: (sum(abs(a - b) for a, b in zip(v, p)), p))
            assert z == ref
            assert dist == sum(abs(a - b) for a, b in zip(v, ref))


def test_vertices_are_exact():
    for inst in random_instances(30, seed=8):
        for v in lp_vertices(inst):
            assert inst.is_feasible(v)


def test_random_instances_are_seeded():
    a = random_instances(5, seed=1)
    b = random_instances(5, seed=1)
    assert a == b
    assert all(inst.n <= 6 and inst.m <= 3 for inst in a)


def test_pi_is_the_max_of_the_per_vertex_minima():
    for inst in random_instances(20, seed=13):
        rep = proximity(inst)
        assert rep.pi == max(d for _, _, d in rep.per_vertex_nearest)
        for v, z, d in rep.per_vertex_nearest:
            assert inst.is_feasible(z)
            assert d == sum(abs(a - b) for a, b in zip(v, z))
