"""Independent brute-force oracles used across the test modules."""
from itertools import combinations, product

from deltamod.exactmat import det_cofactor


def naive_delta(columns, m):
    best = 0
    for idx in combinations(range(len(columns)), m):
        rows = [[columns[j][i] for j in idx] for i in range(m)]
        best = max(best, abs(det_cofactor(rows)))
    return best


def grid_columns(m, radius):
    """Nonzero integer vectors in [-radius, radius]^m with first nonzero entry positive."""
    out = []
    for v in product(range(-radius, radius + 1), repeat=m):
        nz = next((x for x in v if x), 0)
        if nz > 0:
            out.append(v)
    return out


def naive_max_subset(columns, m, delta):
    """Largest subset of ``columns`` with rank m and every m x m minor at most delta, by increasing size."""
    best = 0
    n = len(columns)
    # grow incrementally: a subset is feasible only if it extends a feasible subset
    feasible = [()]
    for k in range(1, n + 1):
        nxt = []
        for s in feasible:
            start = s[-1] + 1 if s else 0
            for j in range(start, n):
                t = s + (j,)
                if k < m or _minors_ok(columns, t, m, delta):
                    nxt.append(t)
        if not nxt:
            break
        feasible = nxt
        if k >= m and any(_full_rank(columns, t, m) for t in nxt):
            best = k
    return best


def _minors_ok(columns, t, m, delta):
    last = t[-1]
    for idx in combinations(t[:-1], m - 1):
        cols = idx + (last,)
        rows = [[columns[j][i] for j in cols] for i in range(m)]
        if abs(det_cofactor(rows)) > delta:
            return False
    return True


def _full_rank(columns, t, m):
    return any(det_cofactor([[columns[j][i] for j in idx] for i in range(m)]) for idx in combinations(t, m))
