import itertools
import random

import numpy as np
import pytest

from deltamod import _kernels
from deltamod.exactmat import det_cofactor

pytestmark = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="backend parity needs numba")


def _both(fn, *args, **kwargs):
    with _kernels.use_backend("numpy"):
        a = fn(*args, **kwargs)
    with _kernels.use_backend("numba"):
        b = fn(*args, **kwargs)
    return a, b


def test_det_batch_matches_cofactor():
    rng = np.random.default_rng(3)
    for n in range(1, 6):
        mats = rng.integers(-5, 6, size=(40, n, n))
        a, b = _both(_kernels.det_batch, mats)
        ref = [det_cofactor(M.tolist()) for M in mats]
        assert a.tolist() == ref and b.tolist() == ref


def test_normals_give_determinants():
    rng = random.Random(5)
    for m in range(2, 5):
        T = np.array([[rng.randint(-3, 3) for _ in range(m)] for _ in range(m + 2)])
        a, b = _both(_kernels.all_normals, T)
        assert np.array_equal(a, b)
        y = np.array([rng.randint(-3, 3) for _ in range(m)])
        combos = [c for last in range(m - 2, len(T)) for c in itertools.combinations(range(last), m - 2)
                  for c in [c + (last,)]]
        for normal, idx in zip(a, combos):
            cols = [T[i].tolist() for i in idx] + [y.tolist()]
            assert int(normal @ y) == det_cofactor([list(r) for r in zip(*cols)])


def test_max_abs_minor_backends_agree():
    rng = np.random.default_rng(9)
    for _ in range(30):
        m = int(rng.integers(1, 5))
        n = int(rng.integers(m, 9))
        cols = rng.integers(-3, 4, size=(n, m))
        for prune in (True, False):
            a, b = _both(_kernels.max_abs_minor, cols, -1, prune)
            assert a[0] == b[0]
            a, b = _both(_kernels.max_abs_minor, cols, 2, prune)
            assert a[3] == b[3]
            if a[3]:
                assert a[0] == b[0] and a[1].tolist() == b[1].tolist()


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        _kernels.set_backend("cuda")


def test_int64_safe():
    assert _kernels.int64_safe([(1, 2), (3, 4)], 2)
    assert not _kernels.int64_safe([(10**9, 10**9), (10**9, 1)], 2)
