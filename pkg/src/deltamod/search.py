"""Exhaustive computation of the maximum number of differing columns.

Any rank-m integer matrix A with largest minor delta contains a basis
with |det| = delta, and after a unimodular change of coordinates that basis
is in Hermite normal form H.  Every other column a of A then satisfies
||H^-1 a||_inf <= 1, so A lives inside a finite candidate box.  The
search roots itself at one H per equivalence class for every
delta <= Delta, and finds the largest extension of H by box candidates
that keeps every m x m minor at most delta, with

* orbital branching over the signed column permutations that fix H, for
  the first few levels, and below that
* a colouring-bound branch and bound in :mod:`deltamod._kernels`.

The search value is exhaustive when every branch finishes inside the
budget.
"""
from __future__ import annotations

import itertools
import math
import contextlib
import multiprocessing as mp
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .bounds import naive_bound
from .constructions import lower_bound_matrix
from .exactmat import ExactMatrix, PreconditionError, adjugate, as_matrix, det_bareiss, hnf, rank
from .modularity import canonical_sign, delta as max_minor, has_differing_columns, is_delta_modular

Column = tuple[int, ...]


# ---------------------------------------------------------------- HNF roots


def _ordered_factorizations(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for d in range(1, n + 1):
        if n % d == 0:
            for rest in _ordered_factorizations(n // d, parts - 1):
                yield (d,) + rest


def enumerate_hnf_bases(delta: int, m: int) -> list[ExactMatrix]:
    """Every m x m Hermite normal form with determinant ``delta``.

    Upper triangular with diagonal d_1..d_m multiplying to delta; the
    entries above d_j range over [0, d_j).
    """
    if delta < 1 or m < 1:
        raise ValueError("delta and m must be positive")
    out = []
    for diag in _ordered_factorizations(delta, m):
        slots = [(i, j) for j in range(m) for i in range(j)]
        ranges = [range(diag[j]) for i, j in slots]
        for values in itertools.product(*ranges):
            rows = [[0] * m for _ in range(m)]
            for j in range(m):
                rows[j][j] = diag[j]
            for (i, j), x in zip(slots, values):
                rows[i][j] = x
            out.append(ExactMatrix(rows))
    return out


def signed_permutations(m: int):
    for perm in itertools.permutations(range(m)):
        for signs in itertools.product((1, -1), repeat=m):
            yield perm, signs


def _apply_signed_perm(H: ExactMatrix, perm, signs) -> ExactMatrix:
    cols = H.columns()
    return ExactMatrix.from_columns([tuple(s * x for x in cols[p]) for p, s in zip(perm, signs)])


def root_classes(delta: int, m: int) -> list[ExactMatrix]:
    """One HNF basis per class under column permutation and negation.

    The class representative is the lexicographically smallest HNF reached
    from any signed column permutation, so the choice is canonical.
    """
    seen = {}
    for H in enumerate_hnf_bases(delta, m):
        key = min(hnf(_apply_signed_perm(H, p, s)).H.tolist() for p, s in signed_permutations(m))
        seen.setdefault(tuple(map(tuple, key)), ExactMatrix(key))
    return [seen[k] for k in sorted(seen)]


# -------------------------------------------------------------- candidates


def box_points(H: ExactMatrix, radius: Fraction | int = 1) -> list[Column]:
    """All integer a with ||H^-1 a||_inf <= radius for upper-triangular nonsingular H.

    Back substitution: v_i = (a_i - sum_{j>i} H_ij v_j) / H_ii, so once the
    later coordinates are fixed, a_i ranges over an interval.
    """
    m = H.rows
    radius = Fraction(radius)
    out = []
    a = [0] * m
    v = [Fraction(0)] * m

    def rec(i: int):
        if i < 0:
            out.append(tuple(a))
            return
        d = H[i, i]
        shift = sum(H[i, j] * v[j] for j in range(i + 1, m))
        lo = math.ceil(shift - radius * d)
        hi = math.floor(shift + radius * d)
        for x in range(lo, hi + 1):
            a[i] = x
            v[i] = (x - shift) / d
            rec(i - 1)

    rec(m - 1)
    return out


@dataclass(frozen=True)
class CandidateBox:
    basis: ExactMatrix
    candidates: tuple[Column, ...]

    @property
    def delta(self) -> int:
        return abs(det_bareiss(self.basis))


def candidate_box(H) -> CandidateBox:
    """Sign-normalised, deduplicated box points of H other than zero and H's own columns."""
    H = as_matrix(H)
    if any(H[i, j] for i in range(H.rows) for j in range(i)):
        raise PreconditionError("candidate_box expects an upper-triangular basis")
    basis = {canonical_sign(c) for c in H.columns()}
    pts = {canonical_sign(a) for a in box_points(H) if any(a)}
    return CandidateBox(H, tuple(sorted(pts - basis)))


# ----------------------------------------------------------------- symmetry


def stabilizer(H: ExactMatrix, candidates: list[Column]) -> list[np.ndarray]:
    """Permutations of the candidate list induced by unimodular maps fixing H's columns up to sign.

    For every signed permutation Q with U = H Q H^-1 integral, U maps H's
    columns to themselves up to sign and preserves the box, so it permutes
    the (sign-normalised) candidates.  Returned as index arrays, identity
    first.
    """
    m = H.rows
    d = det_bareiss(H)
    adj = adjugate(H)  # H @ adj == d * I
    index = {c: i for i, c in enumerate(candidates)}
    group = []
    seen = set()
    for perm, signs in signed_permutations(m):
        HQ = _apply_signed_perm(H, perm, signs)
        num = HQ @ adj
        if any(x % d for row in num.tolist() for x in row):
            continue
        U = [[x // d for x in row] for row in num.tolist()]
        image = []
        for c in candidates:
            img = canonical_sign(tuple(sum(U[i][j] * c[j] for j in range(m)) for i in range(m)))
            image.append(index[img])
        key = tuple(image)
        if key not in seen:
            seen.add(key)
            group.append(np.array(image, dtype=np.int64))
    ident = tuple(range(len(candidates)))
    group.sort(key=lambda g: tuple(g) != ident)
    return group


def _orbits(group: list[np.ndarray], items: list[int]) -> list[list[int]]:
    pending = set(items)
    orbits = []
    for x in sorted(items):
        if x not in pending:
            continue
        orb = sorted({int(g[x]) for g in group})
        pending.difference_update(orb)
        orbits.append(orb)
    return orbits


# ---------------------------------------------------------------- search


@dataclass
class Budget:
    nodes: int = 10**12
    seconds: float = float("inf")


@dataclass
class SearchResult:
    delta: int
    m: int
    value: int
    witness: ExactMatrix
    exhaustive: bool
    nodes_explored: int
    wall_time: float
    optimal_sets: list[ExactMatrix] = field(default_factory=list)
    ties_found: int = 0

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "m": self.m,
            "value": self.value,
            "exhaustive": self.exhaustive,
            "nodes_explored": self.nodes_explored,
            "witness": {"rows": self.witness.rows, "cols": self.witness.cols, "data": self.witness.tolist()},
        }


@dataclass
class _TaskResult:
    order: int
    best: int
    sets: list[list[Column]]
    ties: int
    nodes: int
    complete: bool


_SHARED_BEST = None


def _init_worker(shared):
    global _SHARED_BEST
    _SHARED_BEST = shared


class _Runner:
    """Orbital branching down to ``orbit_depth`` levels, then the kernel."""

    def __init__(self, m, delta, H, candidates, group, orbit_depth, collect, cap, shared_best, deadline,
                 node_cap):
        self.m = m
        self.delta = delta
        self.H = H
        self.cands = candidates
        self.F = np.array(candidates, dtype=np.int64).reshape(len(candidates), m)
        self.group = group
        self.orbit_depth = orbit_depth
        self.collect = collect
        self.cap = cap
        self.shared_best = shared_best
        self.deadline = deadline
        self.node_cap = node_cap
        self.best = -1
        self.sets: list[list[int]] = []
        self.ties = 0
        self.nodes = 0
        self.complete = True
        self.rate = 2e5

    def threshold(self) -> int:
        """Incumbent below which branches are cut.

        Ordinary runs only chase sets beyond (global best - 1), which keeps
        the first maximum set found in each root independent of how other
        workers progress.  Collecting runs keep every set tying the best.
        """
        g = self.shared_best()
        return max(self.best, g) if self.collect else max(self.best, g - 1)

    def _record(self, size, chosen_sets, ties):
        if size > self.best:
            self.best, self.sets, self.ties = size, [], 0
        if size == self.best:
            room = self.cap - len(self.sets)
            self.sets.extend(chosen_sets[:max(room, 0)])
            self.ties += ties

    def run(self, T_idx: list[int], allowed: list[int], group: list[np.ndarray], level: int):
        if not self.complete:
            return
        size = self.m + len(T_idx)
        if self.collect:
            if size + len(allowed) < self.threshold():
                return
        elif size + len(allowed) <= self.threshold():
            return
        if len(group) <= 1 or level >= self.orbit_depth or not allowed:
            self._kernel(T_idx, allowed)
            return
        remaining = list(allowed)
        for orb in _orbits(group, allowed):
            if not self.complete:
                return
            if len(orb) == 0:
                continue
            x = orb[0]
            rest = [u for u in remaining if u != x]
            self.nodes += 1
            new_size = size + 1
            if new_size > self.best or (self.collect and new_size == self.best):
                self._record(new_size, [T_idx + [x]], 1)
            child = self._compatible(T_idx, x, rest)
            sub = [g for g in group if g[x] == x]
            self.run(T_idx + [x], child, sub, level + 1)
            orb_set = set(orb)
            remaining = [u for u in remaining if u not in orb_set]
            if (size + len(remaining) < self.threshold()) if self.collect else \
                    (size + len(remaining) <= self.threshold()):
                break

    def _current(self, T_idx):
        cols = list(self.H.columns()) + [self.cands[i] for i in T_idx]
        return np.array(cols, dtype=np.int64).reshape(len(cols), self.m)

    def _compatible(self, T_idx, x, rest):
        if not rest:
            return []
        if self.m < 2:
            return rest
        T = self._current(T_idx)
        N = _kernels.normals_with(T, self.F[x])
        mask = _kernels.compatible_mask(N, self.F[rest], self.delta)
        return [u for u, ok in zip(rest, mask) if ok]

    def _kernel(self, T_idx, allowed):
        limit = self.node_cap - self.nodes
        remaining = self.deadline - time.monotonic()
        if remaining <= 0 or limit <= 0:
            self.complete = False
            return
        if math.isfinite(remaining):
            limit = min(limit, max(1000, int(self.rate * remaining)))
        T0 = self._current(T_idx)
        F = self.F[allowed] if allowed else np.zeros((0, self.m), np.int64)
        t = time.monotonic()
        best, sets, ties, nodes, complete = _kernels.bnb_subtree(
            T0, F, self.delta, self.threshold(), limit, collect=self.collect, cap=self.cap)
        elapsed = time.monotonic() - t
        if nodes > 1000 and elapsed > 0:
            self.rate = nodes / elapsed
        self.nodes += nodes
        if not complete:
            self.complete = False
        if len(sets):
            chosen = [T_idx + [allowed[i] for i in row if i >= 0] for row in sets]
            self._record(best, chosen, ties)


def _root_data(delta: int, m: int):
    out = []
    for H in root_classes(delta, m):
        box = candidate_box(H)
        cands = list(box.candidates)
        group = stabilizer(H, cands)
        out.append((H, cands, group))
    return out


def _run_task(args):
    (order, m, delta, H, cands, group, orbit_depth, collect, cap, deadline, node_cap, seed_best) = args
    shared = _SHARED_BEST
    getter = (lambda: shared.value) if shared is not None else (lambda: seed_best)
    runner = _Runner(m, delta, H, cands, group, orbit_depth, collect, cap, getter, deadline, node_cap)
    runner._record(m, [[]], 1)
    runner.run([], list(range(len(cands))), group, 0)
    if shared is not None and runner.best > 0:
        with shared.get_lock():
            if runner.best > shared.value:
                shared.value = runner.best
    cols = [[tuple(c) for c in H.columns()] + [cands[i] for i in s] for s in runner.sets]
    return _TaskResult(order, runner.best, cols, runner.ties, runner.nodes, runner.complete)


def max_differing_columns(delta: int, m: int, budget: Budget | None = None, threads: int = 1,
                          collect: bool = False, cap: int = 256, orbit_depth: int = 2,
                          seed_with_construction: bool = True) -> SearchResult:
    """Maximum number of differing columns of a rank-m matrix with all m x m minors <= delta.

    With ``collect`` the search also gathers every maximum column set it
    meets (up to ``cap``, one per symmetry class of partial choices), for
    downstream structural checks.  ``seed_with_construction`` first
    verifies the lower-bound construction and uses its size minus one as
    the incumbent, which only ever prunes branches that cannot beat it.
    """
    if delta < 1 or m < 1:
        raise ValueError("delta and m must be positive")
    budget = budget or Budget()
    start = time.monotonic()
    deadline = start + budget.seconds
    seed = -1
    if seed_with_construction:
        L = lower_bound_matrix(delta, m)
        if is_delta_modular(L, delta)[0] and has_differing_columns(L)[0] and rank(L) == m:
            seed = L.cols
    tasks = []
    order = 0
    for dlt in range(delta, 0, -1):
        for H, cands, group in _root_data(dlt, m):
            tasks.append((order, m, dlt, H, cands, group, orbit_depth, collect, cap, deadline,
                          budget.nodes, seed))
            order += 1
    results: list[_TaskResult] = []
    if threads > 1 and len(tasks) > 1:
        shared = mp.Value("q", seed)
        ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else None
        with ProcessPoolExecutor(max_workers=threads, mp_context=ctx, initializer=_init_worker,
                                 initargs=(shared,)) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        class _Local:
            value = seed

            def get_lock(self):
                return contextlib.nullcontext()

        local = _Local()
        _init_worker(local)
        try:
            for t in tasks:
                results.append(_run_task(t))
        finally:
            _init_worker(None)
    results.sort(key=lambda r: r.order)
    value = max(r.best for r in results)
    assert value <= naive_bound(delta, m)
    nodes = sum(r.nodes for r in results)
    exhaustive = all(r.complete for r in results)
    winners = [r for r in results if r.best == value and r.sets]
    witness_cols = sorted(canonical_sign(c) for c in winners[0].sets[0])
    witness = ExactMatrix.from_columns(witness_cols)
    optimal = []
    ties = 0
    if collect:
        for r in winners:
            ties += r.ties
            for s in r.sets:
                if len(optimal) < cap:
                    optimal.append(ExactMatrix.from_columns(sorted(canonical_sign(c) for c in s)))
    return SearchResult(delta=delta, m=m, value=value, witness=witness, exhaustive=exhaustive,
                        nodes_explored=nodes, wall_time=time.monotonic() - start,
                        optimal_sets=optimal, ties_found=ties)


# ------------------------------------------------------------- maximality


def verify_maximal(A, delta: int) -> tuple[bool, Column | None]:
    """True iff no integer column can be appended keeping differing columns and all minors <= delta.

    Take a basis B of A with |det B| = delta(A) =: d.  Any addable a gives
    |det| <= delta after swapping it into B, so ||B^-1 a||_inf <= delta/d;
    that box is searched exhaustively in HNF coordinates.  The first
    addable column in canonical order is returned.
    """
    A = as_matrix(A)
    m = A.rows
    if rank(A) < m:
        raise PreconditionError("verify_maximal needs rank A = m")
    ok, _ = has_differing_columns(A)
    if not ok:
        raise PreconditionError("verify_maximal needs differing columns")
    report = max_minor(A)
    if report.delta > delta:
        raise PreconditionError(f"A has a minor of size {report.delta} > {delta}")
    B = A.select_columns(report.witness)
    form = hnf(B)
    U, H = form.U, form.H
    UA = U @ A
    existing = {canonical_sign(c) for c in UA.columns()}
    pts = sorted({canonical_sign(a) for a in box_points(H, Fraction(delta, report.delta)) if any(a)} - existing)
    if not pts:
        return True, None
    cols = np.array(UA.columns(), dtype=np.int64)
    P = np.array(pts, dtype=np.int64).reshape(len(pts), m)
    if _kernels.int64_safe(list(UA.columns()) + pts, m) and m >= 1:
        N = _kernels.all_normals(cols)
        mask = _kernels.compatible_mask(N, P, delta)
        good = [pts[i] for i in np.flatnonzero(mask)]
    else:
        good = [p for p in pts if is_delta_modular(UA.append_columns([p]), delta)[0]]
    if not good:
        return True, None
    # map back to the original coordinates and report canonically
    Uinv = adjugate(U)
    sign = det_bareiss(U)
    originals = sorted(canonical_sign(tuple(sign * x for x in (Uinv @ p))) for p in good)
    return False, originals[0]
