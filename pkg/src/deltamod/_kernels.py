"""Hot inner loops on small int64 matrices.

Each kernel has a numba ``@njit`` implementation and a pure-numpy
fallback with identical results.  The backend is picked once from the
``DELTAMOD_BACKEND`` environment variable (``numba`` or ``numpy``); the
default is numba when it imports.  :func:`use_backend` switches it at
runtime, which the tests and the benchmark use to compare both paths.

The kernels run in int64.  Callers must check :func:`int64_safe` first and
fall back to exact Python integers otherwise; nothing in here detects
overflow on its own.
"""
from __future__ import annotations

import contextlib
import itertools
import math
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


_env = os.environ.get("DELTAMOD_BACKEND", "").strip().lower()
if _env not in ("", "numba", "numpy"):
    raise ImportError(f"DELTAMOD_BACKEND must be 'numba' or 'numpy', got {_env!r}")
_BACKEND = "numpy" if _env == "numpy" or not HAVE_NUMBA else "numba"

INT64_LIMIT = 2**62


def backend() -> str:
    return _BACKEND


def set_backend(name: str) -> None:
    global _BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _BACKEND = name


@contextlib.contextmanager
def use_backend(name: str):
    old = _BACKEND
    set_backend(name)
    try:
        yield
    finally:
        set_backend(old)


def int64_safe(columns, m: int) -> bool:
    """True when every Bareiss intermediate on m-subsets of ``columns`` fits in int64.

    Bareiss intermediates are at most a product of two minors, and every
    minor of size <= m is bounded by the product of the m largest column
    norms; we require the square of that bound to stay below 2**62.
    """
    sq = sorted((sum(int(x) * int(x) for x in c) for c in columns), reverse=True)[:m]
    bound_sq = 1
    for s in sq:
        bound_sq *= max(s, 1)
    return bound_sq * bound_sq < INT64_LIMIT


# ------------------------------------------------------------------ numba side


@njit(cache=True)
def _det_small(a):
    """Bareiss determinant of a square int64 array; ``a`` is clobbered."""
    n = a.shape[0]
    if n == 0:
        return np.int64(1)
    sign = 1
    prev = np.int64(1)
    for c in range(n - 1):
        if a[c, c] == 0:
            r = c + 1
            while r < n and a[r, c] == 0:
                r += 1
            if r == n:
                return np.int64(0)
            for j in range(n):
                t = a[c, j]
                a[c, j] = a[r, j]
                a[r, j] = t
            sign = -sign
        piv = a[c, c]
        for r in range(c + 1, n):
            f = a[r, c]
            for j in range(c + 1, n):
                a[r, j] = (a[r, j] * piv - f * a[c, j]) // prev
            a[r, c] = 0
        prev = piv
    return sign * a[n - 1, n - 1]


@njit(cache=True)
def _det_batch_nb(mats):
    k = mats.shape[0]
    out = np.empty(k, np.int64)
    work = np.empty((mats.shape[1], mats.shape[2]), np.int64)
    for t in range(k):
        work[:, :] = mats[t]
        out[t] = _det_small(work)
    return out


@njit(cache=True)
def _normal_of(cols, count, m, out, work):
    """Cofactor vector n with n . y = det[cols[0..count) | y]; count == m - 1."""
    for i in range(m):
        r = 0
        for row in range(m):
            if row == i:
                continue
            for c in range(count):
                work[r, c] = cols[c, row]
            r += 1
        d = _det_small(work)
        if (i + m - 1) % 2 == 1:
            d = -d
        out[i] = d


@njit(cache=True)
def _normals_with_nb(T, x):
    """Normals of [R | x] for every (m-2)-subset R of the rows of T, in lexicographic order."""
    t, m = T.shape
    k = m - 2
    total = 1
    for i in range(k):
        total = total * (t - i) // (i + 1)
    out = np.empty((total, m), np.int64)
    if total == 0:
        return out
    idx = np.arange(k)
    cols = np.empty((m - 1, m), np.int64)
    work = np.empty((m - 1, m - 1), np.int64)
    row = 0
    while True:
        for c in range(k):
            cols[c, :] = T[idx[c]]
        cols[k, :] = x
        _normal_of(cols, m - 1, m, out[row], work)
        row += 1
        # next combination
        i = k - 1
        while i >= 0 and idx[i] == t - k + i:
            i -= 1
        if i < 0:
            break
        idx[i] += 1
        for j in range(i + 1, k):
            idx[j] = idx[j - 1] + 1
    return out


@njit(cache=True)
def _max_abs_minor_nb(cols, bound, use_hadamard):
    """Lexicographic m-subset enumeration with incremental Bareiss.

    ``cols`` is (n, m).  With ``bound >= 0`` stops at the first subset whose
    |det| exceeds bound.  Returns (best, witness, evaluated, violated).
    """
    n, m = cols.shape
    best = np.int64(0)
    witness = np.full(m, -1, np.int64)
    evaluated = 0
    if n < m:
        return best, witness, evaluated, False
    sq = np.empty(n, np.int64)
    for j in range(n):
        s = 0
        for i in range(m):
            s += cols[j, i] * cols[j, i]
        sq[j] = s
    # suffix_top[s, r]: product of the r largest squared norms among cols[s:]
    suffix_top = np.ones((n + 1, m + 1), np.int64)
    for s in range(n - 1, -1, -1):
        vals = np.sort(sq[s:])[::-1]
        for r in range(1, m + 1):
            if r <= vals.shape[0]:
                suffix_top[s, r] = suffix_top[s, r - 1] * max(vals[r - 1], 1)
            else:
                suffix_top[s, r] = 0
    # lin[k, i] is the integer functional giving row i of a column reduced
    # through the first k elimination stages, so candidates cost dot
    # products and exact divisions only happen once per descent
    lin = np.zeros((m, m, m), np.int64)
    for i in range(m):
        lin[0, i, i] = 1
    # row_stage[i]: stage at which row i became a pivot row (m if never)
    row_stage = np.full(m, m, np.int64)
    pivrow = np.full(m, -1, np.int64)
    piv = np.ones(m + 1, np.int64)  # piv[k+1] is the pivot at stage k, piv[0] = 1
    prefsq = np.ones(m + 1, np.int64)
    choice = np.full(m, -1, np.int64)
    v = np.zeros(m, np.int64)
    depth = 0
    choice[0] = -1
    limit_sq = bound * bound if bound >= 0 else np.int64(0)
    while depth >= 0:
        choice[depth] += 1
        j = choice[depth]
        if j > n - (m - depth):
            depth -= 1
            if depth >= 0:
                row_stage[pivrow[depth]] = m
                pivrow[depth] = -1
            continue
        if use_hadamard:
            ub = prefsq[depth] * sq[j] * suffix_top[j + 1, m - depth - 1]
            target = limit_sq if bound >= 0 else best * best
            if ub <= target:
                continue
        r = -1
        for i in range(m):
            if row_stage[i] == m:
                acc = np.int64(0)
                for t in range(m):
                    acc += lin[depth, i, t] * cols[j, t]
                v[i] = acc
                if r < 0 and acc != 0:
                    r = i
        if r < 0:
            continue
        if depth == m - 1:
            evaluated += 1
            d = abs(v[r])
            if bound >= 0:
                if d > bound:
                    for s in range(m - 1):
                        witness[s] = choice[s]
                    witness[m - 1] = j
                    return d, witness, evaluated, True
                if d > best:
                    best = d
            elif d > best:
                best = d
                for s in range(m - 1):
                    witness[s] = choice[s]
                witness[m - 1] = j
            continue
        pv = v[r]
        pp = piv[depth]
        for i in range(m):
            if row_stage[i] == m and i != r:
                for t in range(m):
                    lin[depth + 1, i, t] = (lin[depth, i, t] * pv - v[i] * lin[depth, r, t]) // pp
        pivrow[depth] = r
        row_stage[r] = depth
        piv[depth + 1] = pv
        prefsq[depth + 1] = prefsq[depth] * max(sq[j], 1)
        depth += 1
        choice[depth] = j
    return best, witness, evaluated, False


@njit(cache=True)
def _skew_form(S, k, m, W, cols, work):
    """W with y @ W @ z == det[S | y | z] for the k = m - 2 columns in S."""
    for i in range(m):
        for c in range(k):
            cols[c, :] = S[c]
        for r in range(m):
            cols[k, r] = 0
        cols[k, i] = 1
        _normal_of(cols, m - 1, m, W[i], work)


@njit(cache=True)
def _restrict_pairs(adj, n, members, F, W, delta, m, G):
    """Clear adj[a, b] when |det[S | F[a] | F[b]]| exceeds delta for the form W of S."""
    for a in range(n):
        fa = F[members[a]]
        for c in range(m):
            s = 0
            for r in range(m):
                s += fa[r] * W[r, c]
            G[a, c] = s
    for a in range(n):
        for b in range(a + 1, n):
            if adj[a, b]:
                fb = F[members[b]]
                s = 0
                for c in range(m):
                    s += G[a, c] * fb[c]
                if s > delta or s < -delta:
                    adj[a, b] = False
                    adj[b, a] = False


@njit(cache=True)
def _color_sort(n, adj, perm, colors, cls):
    """Greedy colouring in the given vertex order; perm lists vertices by colour, colors[i] is 1-based."""
    for v in range(n):
        c = 0
        while True:
            clash = False
            for u in range(v):
                if cls[u] == c and adj[v, u]:
                    clash = True
                    break
            if not clash:
                break
            c += 1
        cls[v] = c
    pos = 0
    c = 0
    while pos < n:
        for v in range(n):
            if cls[v] == c:
                perm[pos] = v
                colors[pos] = c + 1
                pos += 1
        c += 1


@njit(cache=True)
def _bnb_nb(T0, F, delta, best_in, node_limit, collect, cap):
    """Largest S within the rows of F such that rows(T0) + S has all m x m minors <= delta.

    Every row of F must already be compatible with T0 on its own.  Pairs
    that clash given the current set are tracked in an adjacency matrix, and
    a greedy colouring of it bounds how many more rows can be added.  Only
    sets larger than ``best_in`` are recorded (or equal ones in ``collect``
    mode).
    """
    t0, m = T0.shape
    f = F.shape[0]
    width = max(f, 1)
    maxdepth = f + 1
    k = m - 2
    members = np.empty((maxdepth, width), np.int64)
    colors = np.empty((maxdepth, width), np.int64)
    adjs = np.zeros((maxdepth, width, width), np.bool_)
    count = np.zeros(maxdepth, np.int64)
    pos = np.zeros(maxdepth, np.int64)
    chosen = np.empty(width, np.int64)
    Tcur = np.zeros((t0 + f, m), np.int64)
    Tcur[:t0] = T0
    perm = np.empty(width, np.int64)
    cls = np.empty(width, np.int64)
    tmp_members = np.empty(width, np.int64)
    tmp_adj = np.zeros((width, width), np.bool_)
    G = np.empty((width, m), np.int64)
    W = np.empty((m, m), np.int64)
    cols = np.empty((max(m - 1, 1), m), np.int64)
    work = np.empty((max(m - 1, 1), max(m - 1, 1)), np.int64)
    S = np.empty((max(m, 1), m), np.int64)
    idx = np.empty(max(m, 1), np.int64)

    # root level: pair constraints from every (m-2)-subset of T0
    for a in range(f):
        tmp_members[a] = a
        for b in range(f):
            tmp_adj[a, b] = a != b
    if k >= 0 and t0 >= k:
        for q in range(k):
            idx[q] = q
        while True:
            for q in range(k):
                S[q, :] = T0[idx[q]]
            _skew_form(S, k, m, W, cols, work)
            _restrict_pairs(tmp_adj, f, tmp_members, F, W, delta, m, G)
            q = k - 1
            while q >= 0 and idx[q] == t0 - k + q:
                q -= 1
            if q < 0:
                break
            idx[q] += 1
            for r in range(q + 1, k):
                idx[r] = idx[r - 1] + 1
    _color_sort(f, tmp_adj, perm, colors[0], cls)
    for a in range(f):
        members[0, a] = tmp_members[perm[a]]
        for b in range(f):
            adjs[0, a, b] = tmp_adj[perm[a], perm[b]]
    count[0] = f
    pos[0] = f - 1

    best = best_in
    sets = np.full((cap, width), -1, np.int64)
    nstored = 0
    ntied = 0
    nodes = 0
    complete = True
    depth = 0 if f > 0 else -1
    while depth >= 0:
        d = depth
        size = t0 + d
        i = pos[d]
        if i < 0:
            depth -= 1
            continue
        c = colors[d, i]
        if collect:
            if size + c < best:
                depth -= 1
                continue
        elif size + c <= best:
            depth -= 1
            continue
        pos[d] = i - 1
        nodes += 1
        if nodes > node_limit:
            complete = False
            break
        v = members[d, i]
        chosen[d] = v
        Tcur[size, :] = F[v]
        newsize = size + 1
        store = False
        if newsize > best:
            best = newsize
            nstored = 0
            ntied = 0
            store = True
        elif collect and newsize == best:
            store = True
        if store:
            ntied += 1
            if nstored < cap:
                for q in range(d + 1):
                    sets[nstored, q] = chosen[q]
                for q in range(d + 1, width):
                    sets[nstored, q] = -1
                nstored += 1
        # child candidates: earlier vertices adjacent to v
        n = 0
        for a in range(i):
            if adjs[d, i, a]:
                tmp_members[n] = a
                n += 1
        if n == 0:
            continue
        for a in range(n):
            for b in range(n):
                tmp_adj[a, b] = adjs[d, tmp_members[a], tmp_members[b]]
        for a in range(n):
            tmp_members[a] = members[d, tmp_members[a]]
        # new pair constraints: (m-2)-sets made of v and m-3 earlier columns
        kk = m - 3
        if kk >= 0 and size >= kk:
            for q in range(kk):
                idx[q] = q
            while True:
                for q in range(kk):
                    S[q, :] = Tcur[idx[q]]
                S[kk, :] = F[v]
                _skew_form(S, k, m, W, cols, work)
                _restrict_pairs(tmp_adj, n, tmp_members, F, W, delta, m, G)
                q = kk - 1
                while q >= 0 and idx[q] == size - kk + q:
                    q -= 1
                if q < 0:
                    break
                idx[q] += 1
                for r in range(q + 1, kk):
                    idx[r] = idx[r - 1] + 1
        _color_sort(n, tmp_adj, perm, colors[d + 1], cls)
        for a in range(n):
            members[d + 1, a] = tmp_members[perm[a]]
            for b in range(n):
                adjs[d + 1, a, b] = tmp_adj[perm[a], perm[b]]
        count[d + 1] = n
        pos[d + 1] = n - 1
        depth += 1
    return best, sets[:nstored], ntied, nodes, complete


# ------------------------------------------------------------------ numpy side


def _det_batch_np(mats: np.ndarray) -> np.ndarray:
    a = np.array(mats, dtype=np.int64, copy=True)
    k, n, _ = a.shape
    if n == 0:
        return np.ones(k, np.int64)
    sign = np.ones(k, np.int64)
    dead = np.zeros(k, bool)
    prev = np.ones(k, np.int64)
    ar = np.arange(k)
    for c in range(n):
        nz = a[:, c:, c] != 0
        has = nz.any(axis=1)
        first = nz.argmax(axis=1) + c
        dead |= ~has
        swap = has & (first != c)
        if swap.any():
            rows_c = a[ar, c].copy()
            a[ar, c] = a[ar, first]
            a[ar, first] = rows_c
            sign[swap] = -sign[swap]
        a[dead, c, c] = 1
        if c == n - 1:
            break
        piv = a[:, c, c]
        sub = a[:, c + 1:, c + 1:] * piv[:, None, None] - a[:, c + 1:, c:c + 1] * a[:, c:c + 1, c + 1:]
        a[:, c + 1:, c + 1:] = sub // prev[:, None, None]
        a[:, c + 1:, c] = 0
        prev = piv
    out = sign * a[:, n - 1, n - 1]
    out[dead] = 0
    return out


def _normals_batch_np(C: np.ndarray) -> np.ndarray:
    """C is (k, m, m-1): normals of each stacked column block."""
    k, m, _ = C.shape
    out = np.empty((k, m), np.int64)
    for i in range(m):
        minors = np.delete(C, i, axis=1)
        d = _det_batch_np(minors)
        out[:, i] = -d if (i + m - 1) % 2 else d
    return out


def _normals_with_np(T: np.ndarray, x: np.ndarray) -> np.ndarray:
    t, m = T.shape
    k = m - 2
    combo_list = list(itertools.combinations(range(t), k))
    combos = np.array(combo_list, dtype=np.int64).reshape(len(combo_list), k)
    if combos.shape[0] == 0:
        return np.empty((0, m), np.int64)
    C = np.empty((combos.shape[0], m, m - 1), np.int64)
    if k:
        C[:, :, :k] = T[combos].transpose(0, 2, 1)
    C[:, :, k] = x
    return _normals_batch_np(C)


def _max_abs_minor_np(cols: np.ndarray, bound: int, use_hadamard: bool, chunk: int = 20000):
    n, m = cols.shape
    witness = np.full(m, -1, np.int64)
    if n < m:
        return 0, witness, 0, False
    best = 0
    evaluated = 0
    it = itertools.combinations(range(n), m)
    while True:
        block = np.fromiter(itertools.chain.from_iterable(itertools.islice(it, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        block = block.reshape(-1, m)
        mats = cols[block].transpose(0, 2, 1)
        dets = np.abs(_det_batch_np(mats))
        evaluated += int(np.count_nonzero(dets))
        if bound >= 0:
            over = np.nonzero(dets > bound)[0]
            if over.size:
                w = over[0]
                return int(dets[w]), block[w].copy(), evaluated, True
            best = max(best, int(dets.max()))
        else:
            w = int(dets.argmax())
            if dets[w] > best:
                best = int(dets[w])
                witness = block[w].copy()
    return best, witness, evaluated, False


def _skew_form_np(S: np.ndarray, m: int) -> np.ndarray:
    eye = np.eye(m, dtype=np.int64)
    C = np.empty((m, m, m - 1), np.int64)
    C[:, :, :m - 2] = S.T[None, :, :]
    C[:, :, m - 2] = eye
    return _normals_batch_np(C)


def _color_sort_np(adj: np.ndarray):
    n = adj.shape[0]
    cls = np.empty(n, np.int64)
    for v in range(n):
        used = set(cls[:v][adj[v, :v]].tolist())
        c = 0
        while c in used:
            c += 1
        cls[v] = c
    perm = np.argsort(cls, kind="stable")
    return perm, cls[perm] + 1


def _bnb_np(T0, F, delta, best_in, node_limit, collect, cap):
    t0, m = T0.shape
    f = F.shape[0]
    k = m - 2

    def restrict(adj, rows, S):
        W = _skew_form_np(S, m)
        vals = rows @ W @ rows.T
        return adj & (np.abs(vals) <= delta)

    adj = ~np.eye(f, dtype=bool)
    if k >= 0 and f:
        for R in itertools.combinations(range(t0), k):
            adj = restrict(adj, F, T0[list(R)].reshape(k, m))
    perm, colors = _color_sort_np(adj)
    state = {"best": best_in, "nodes": 0, "complete": True, "sets": [], "tied": 0}
    chosen: list[int] = []

    def rec(T, members, colors, adj):
        size = T.shape[0]
        for i in range(len(members) - 1, -1, -1):
            c = colors[i]
            if (size + c < state["best"]) if collect else (size + c <= state["best"]):
                return
            state["nodes"] += 1
            if state["nodes"] > node_limit:
                state["complete"] = False
                return
            v = int(members[i])
            chosen.append(v)
            newsize = size + 1
            if newsize > state["best"]:
                state["best"] = newsize
                state["sets"] = [list(chosen)]
                state["tied"] = 1
            elif collect and newsize == state["best"]:
                state["tied"] += 1
                if len(state["sets"]) < cap:
                    state["sets"].append(list(chosen))
            local = np.flatnonzero(adj[i, :i])
            if local.size:
                sub = adj[np.ix_(local, local)]
                mem = members[local]
                if m - 3 >= 0:
                    rows = F[mem]
                    for R in itertools.combinations(range(size), m - 3):
                        S = np.vstack([T[list(R)].reshape(m - 3, m), F[v:v + 1]])
                        sub = restrict(sub, rows, S)
                p2, c2 = _color_sort_np(sub)
                rec(np.vstack([T, F[v:v + 1]]), mem[p2], c2, sub[np.ix_(p2, p2)])
            chosen.pop()
            if not state["complete"]:
                return

    if f:
        rec(np.asarray(T0, np.int64), np.arange(f)[perm], colors, adj[np.ix_(perm, perm)])
    sets = np.full((len(state["sets"]), max(f, 1)), -1, np.int64)
    for r, s_ in enumerate(state["sets"]):
        sets[r, :len(s_)] = s_
    return state["best"], sets, state["tied"], state["nodes"], state["complete"]


# ------------------------------------------------------------------- dispatch


def det_batch(mats) -> np.ndarray:
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValueError("det_batch expects a (k, n, n) array")
    if _BACKEND == "numba":
        return _det_batch_nb(mats)
    return _det_batch_np(mats)


def normals_with(T, x) -> np.ndarray:
    """Cofactor vectors of [R | x] over all (m-2)-subsets R of the rows of T.

    Row r of the result dotted with y gives det[R_r | x | y].
    """
    T = np.ascontiguousarray(T, dtype=np.int64)
    x = np.ascontiguousarray(x, dtype=np.int64)
    m = x.shape[0]
    if m < 2:
        return np.empty((0, m), np.int64)
    if _BACKEND == "numba":
        return _normals_with_nb(T.reshape(-1, m), x)
    return _normals_with_np(T.reshape(-1, m), x)


def all_normals(T) -> np.ndarray:
    """Cofactor vectors of every (m-1)-subset of the rows of T (lexicographic)."""
    T = np.ascontiguousarray(T, dtype=np.int64)
    t, m = T.shape
    if m == 1:
        return np.ones((1, 1), np.int64)
    blocks = []
    for last in range(m - 2, t):
        # subsets whose largest element is `last`
        blocks.append(normals_with(T[:last], T[last]))
    if not blocks:
        return np.empty((0, m), np.int64)
    return np.vstack(blocks)


def compatible_mask(normals, F, delta: int) -> np.ndarray:
    """Rows y of F with |n . y| <= delta for every normal n."""
    F = np.asarray(F, dtype=np.int64)
    normals = np.asarray(normals, dtype=np.int64)
    if normals.shape[0] == 0 or F.shape[0] == 0:
        return np.ones(F.shape[0], bool)
    return np.all(np.abs(normals @ F.T) <= delta, axis=0)


def max_abs_minor(cols, bound: int = -1, use_hadamard: bool = True):
    """Scan all m-subsets of the rows of ``cols`` (shape (n, m)).

    Returns ``(best, witness, evaluated, violated)``; see ``_max_abs_minor_nb``.
    With ``bound >= 0`` only ``violated`` and, when it is set, the first
    violating subset and its |det| are comparable across backends: the
    numba scan skips subsets whose Hadamard bound cannot exceed ``bound``.
    """
    cols = np.ascontiguousarray(cols, dtype=np.int64)
    if _BACKEND == "numba":
        best, w, ev, viol = _max_abs_minor_nb(cols, np.int64(bound), use_hadamard)
        return int(best), w, int(ev), bool(viol)
    return _max_abs_minor_np(cols, int(bound), use_hadamard)


def bnb_subtree(T0, F, delta: int, best: int, node_limit: int, collect: bool = False, cap: int = 64):
    """Run the exhaustive extension search below a fixed column set ``T0``.

    Returns ``(best, sets, tied, nodes, complete)`` where ``sets`` rows are
    index lists into F padded with -1.
    """
    T0 = np.ascontiguousarray(T0, dtype=np.int64)
    F = np.ascontiguousarray(F, dtype=np.int64).reshape(-1, T0.shape[1])
    if _BACKEND == "numba":
        b, sets, tied, nodes, complete = _bnb_nb(
            T0, F, np.int64(delta), np.int64(best), np.int64(node_limit), collect, max(cap, 1))
        return int(b), sets, int(tied), int(nodes), bool(complete)
    return _bnb_np(T0, F, int(delta), int(best), int(node_limit), collect, max(cap, 1))


def comb(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0
