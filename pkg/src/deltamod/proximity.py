"""Exact LP-to-IP proximity for small box-constrained standard-form programs.

For {x : A x = b, l <= x <= u} the proximity is the largest l1 distance
from a vertex of the relaxation to its nearest feasible integer point.
Vertices come from enumerating bases and nonbasic bound patterns in
rational arithmetic; feasible integer points come from a full scan of a
finite box, so nothing here relies on a proximity bound.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .bounds import cook_bound, proximity_bound, thm_upper_bound
from .exactmat import ExactMatrix, PreconditionError, adjugate, as_matrix, det_bareiss, rank, solve_rational
from .modularity import delta

INF = math.inf
Bound = int | float  # an int, or -inf / +inf


class ConfigurationError(ValueError):
    """Raised when a finite search box cannot be formed."""


def _parse_bound(x) -> Bound:
    if isinstance(x, str):
        s = x.strip().replace("−", "-").lower()
        if s in ("-inf", "-infinity"):
            return -INF
        if s in ("inf", "+inf", "infinity", "+infinity"):
            return INF
        return int(s)
    if isinstance(x, float):
        if math.isinf(x):
            return x
        if not x.is_integer():
            raise ValueError(f"bound {x} is not an integer")
        return int(x)
    return int(x)


@dataclass(frozen=True)
class IPInstance:
    A: ExactMatrix
    b: tuple[int, ...]
    l: tuple[Bound, ...]
    u: tuple[Bound, ...]

    def __post_init__(self):
        A = as_matrix(self.A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        object.__setattr__(self, "l", tuple(_parse_bound(x) for x in self.l))
        object.__setattr__(self, "u", tuple(_parse_bound(x) for x in self.u))
        m, n = A.shape
        if len(self.b) != m or len(self.l) != n or len(self.u) != n:
            raise ValueError("b must have one entry per row, l and u one per column")
        if rank(A) != m:
            raise PreconditionError(f"A has rank {rank(A)} < {m}")
        if any(lo >= hi for lo, hi in zip(self.l, self.u)):
            raise ValueError("need l < u in every coordinate")

    @property
    def m(self) -> int:
        return self.A.rows

    @property
    def n(self) -> int:
        return self.A.cols

    @property
    def bounded(self) -> bool:
        return all(math.isfinite(x) for x in self.l + self.u)

    def is_feasible(self, x: Sequence) -> bool:
        if any(v < lo or v > hi for v, lo, hi in zip(x, self.l, self.u)):
            return False
        return all(sum(a * v for a, v in zip(row, x)) == bi for row, bi in zip(self.A.tolist(), self.b))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "IPInstance":
        return cls(ExactMatrix(obj["A"]), obj["b"], obj["l"], obj["u"])

    def to_json_obj(self) -> dict:
        def enc(x):
            return x if math.isfinite(x) else ("-inf" if x < 0 else "+inf")
        return {"A": self.A.tolist(), "b": list(self.b), "l": [enc(x) for x in self.l],
                "u": [enc(x) for x in self.u]}


def lp_vertices(inst: IPInstance, max_n: int = 10) -> list[tuple[Fraction, ...]]:
    """All vertices of the relaxation, sorted, each satisfying A x = b exactly.

    A vertex has m basic coordinates with a nonsingular basis and every
    other coordinate at a finite bound; patterns that would need an
    infinite bound are skipped.
    """
    if inst.n > max_n:
        raise ValueError(f"vertex enumeration is capped at n = {max_n}, got {inst.n}")
    A, m, n = inst.A, inst.m, inst.n
    cols = A.columns()
    found = set()
    for basis in combinations(range(n), m):
        B = A.select_columns(basis)
        if det_bareiss(B) == 0:
            continue
        rest = [j for j in range(n) if j not in basis]
        choices = [[v for v in (inst.l[j], inst.u[j]) if math.isfinite(v)] for j in rest]
        for values in product(*choices):
            rhs = [inst.b[i] - sum(cols[j][i] * v for j, v in zip(rest, values)) for i in range(m)]
            xb = solve_rational(B, rhs) if m else ()
            x = [Fraction(0)] * n
            for j, v in zip(basis, xb):
                x[j] = v
            for j, v in zip(rest, values):
                x[j] = Fraction(v)
            if all(inst.l[j] <= x[j] <= inst.u[j] for j in basis):
                found.add(tuple(x))
    return sorted(found)


def _box(inst: IPInstance, center: Sequence[Fraction] | None, window) -> tuple[list[int], list[int]]:
    """Finite integer box: the bounds, cut by an optional window.

    ``window`` is None, a radius r (the box floor(x_j) - r .. ceil(x_j) + r
    around ``center``), or explicit (lo, hi) pairs.
    """
    lo = [math.ceil(v) if math.isfinite(v) else None for v in inst.l]
    hi = [math.floor(v) if math.isfinite(v) else None for v in inst.u]
    if window is not None:
        if isinstance(window, (int, Fraction)) and not isinstance(window, bool):
            if center is None:
                raise ConfigurationError("a radius window needs a center point")
            r = int(window)
            wlo = [math.floor(c) - r for c in center]
            whi = [math.ceil(c) + r for c in center]
        else:
            wlo = [int(a) for a, _ in window]
            whi = [int(b) for _, b in window]
        lo = [w if v is None else max(v, w) for v, w in zip(lo, wlo)]
        hi = [w if v is None else min(v, w) for v, w in zip(hi, whi)]
    if any(v is None for v in lo + hi):
        raise ConfigurationError("infinite bounds need a finite window")
    return lo, hi


def integer_points(inst: IPInstance, lo: Sequence[int], hi: Sequence[int]) -> np.ndarray:
    """Every integer z in the box [lo, hi] with A z = b, as rows sorted lexicographically.

    The scan runs over the nonbasic coordinates of one basis (the one with
    the smallest nonbasic sub-box) and recovers the basic coordinates
    exactly through the adjugate, keeping only integral, in-box solutions.
    Every lattice point of the box with A z = b is produced this way.
    """
    A, m, n = inst.A, inst.m, inst.n
    if any(a > b for a, b in zip(lo, hi)):
        return np.zeros((0, n), dtype=object)
    best = None
    for basis in combinations(range(n), m):
        det = det_bareiss(A.select_columns(basis))
        if det == 0:
            continue
        size = math.prod(hi[j] - lo[j] + 1 for j in range(n) if j not in basis)
        if best is None or size < best[0]:
            best = (size, basis, det)
    _, basis, det = best
    rest = [j for j in range(n) if j not in basis]
    adj = np.array(adjugate(A.select_columns(basis)).tolist(), dtype=object).reshape(m, m)
    AN = np.array(A.select_columns(rest).tolist(), dtype=object).reshape(m, len(rest))
    if rest:
        grids = np.meshgrid(*[np.arange(lo[j], hi[j] + 1) for j in rest], indexing="ij")
        ZN = np.stack([g.ravel() for g in grids], axis=1).astype(object)
    else:
        ZN = np.zeros((1, 0), dtype=object)
    rhs = np.array(inst.b, dtype=object).reshape(m, 1) - AN.dot(ZN.T)
    num = adj.dot(rhs)  # det * z_B for each column
    ok = np.all(num % det == 0, axis=0)
    ZB = num[:, ok] // det
    ZN = ZN[ok]
    keep = np.ones(ZB.shape[1], dtype=bool)
    for r, j in enumerate(basis):
        keep &= (ZB[r] >= lo[j]) & (ZB[r] <= hi[j])
    Z = np.zeros((int(keep.sum()), n), dtype=object)
    for r, j in enumerate(basis):
        Z[:, j] = ZB[r, keep]
    for k, j in enumerate(rest):
        Z[:, j] = ZN[keep, k]
    if len(Z):
        Z = Z[np.lexsort(Z.T[::-1].astype(np.int64))] if _fits_int64(Z) else np.array(sorted(map(tuple, Z)))
    return Z


def _fits_int64(Z: np.ndarray) -> bool:
    return not len(Z) or int(np.max(np.abs(Z))) < 2**62


def _nearest_in(x: Sequence[Fraction], Z: np.ndarray) -> tuple[tuple[int, ...], Fraction]:
    """Lexicographically first point of the sorted rows Z at least l1 distance from x."""
    den = math.lcm(*(v.denominator for v in x))
    scaled = np.array([int(v * den) for v in x], dtype=object)
    dist = np.abs(Z * den - scaled).sum(axis=1)
    k = int(np.argmin(dist))  # argmin returns the first minimiser, and Z is sorted
    return tuple(int(v) for v in Z[k]), Fraction(int(dist[k]), den)


def nearest_ip_point(x: Sequence, inst: IPInstance, window=None) -> tuple[tuple[int, ...], Fraction] | None:
    """Closest feasible integer point to x in l1 distance, ties to the lexicographically smallest.

    The search is a full scan of the bounded box (cut by ``window`` when
    given); None means the box holds no feasible integer point.
    """
    x = tuple(Fraction(v) for v in x)
    lo, hi = _box(inst, x, window)
    Z = integer_points(inst, lo, hi)
    if not len(Z):
        return None
    return _nearest_in(x, Z)


@dataclass
class ProximityReport:
    vertices: list[tuple[Fraction, ...]]
    per_vertex_nearest: list[tuple[tuple[Fraction, ...], tuple[int, ...], Fraction]]
    pi: Fraction | None
    ip_empty: bool
    bounds_checked: dict = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        return all(self.bounds_checked.get(k, True) for k in ("column_satisfied", "cook_satisfied"))

    def as_dict(self) -> dict:
        def q(v):
            return [str(t) for t in v]
        return {
            "vertices": [q(v) for v in self.vertices],
            "per_vertex_nearest": [{"vertex": q(v), "nearest": list(z), "distance": str(d)}
                                   for v, z, d in self.per_vertex_nearest],
            "pi": None if self.pi is None else str(self.pi),
            "ip_empty": self.ip_empty,
            "bounds_checked": self.bounds_checked,
        }


def proximity(inst: IPInstance, window=None, c_upper: int | None = None) -> ProximityReport:
    """Exact proximity with both known upper bounds checked.

    One integer-point scan over the box serves every vertex.  With a
    radius window the box is the union of the per-vertex windows.
    ``c_upper`` defaults to the closed-form upper bound on the number of
    differing columns for (Delta(A), m).
    """
    verts = lp_vertices(inst)
    if window is not None and not isinstance(window, (int, Fraction)):
        lo, hi = _box(inst, None, window)
    elif window is not None and verts:
        boxes = [_box(inst, v, window) for v in verts]
        lo = [min(b[0][j] for b in boxes) for j in range(inst.n)]
        hi = [max(b[1][j] for b in boxes) for j in range(inst.n)]
    else:
        lo, hi = _box(inst, None, None)
    Z = integer_points(inst, lo, hi)
    d = delta(inst.A).delta
    c = c_upper if c_upper is not None else thm_upper_bound(d, inst.m)
    checks = {"delta": d, "c_upper": c, "column_bound": proximity_bound(d, inst.m, c),
              "cook_bound": cook_bound(inst.n, d)}
    if not len(Z):
        return ProximityReport(verts, [], None, True, checks)
    nearest = []
    for v in verts:
        if window is not None and isinstance(window, (int, Fraction)):
            vlo, vhi = _box(inst, v, window)
            mask = np.all((Z >= np.array(vlo)) & (Z <= np.array(vhi)), axis=1)
            if not mask.any():
                continue
            z, dist = _nearest_in(v, Z[mask])
        else:
            z, dist = _nearest_in(v, Z)
        nearest.append((v, z, dist))
    pi = max((dist for _, _, dist in nearest), default=None)
    if pi is not None:
        checks["column_satisfied"] = pi <= checks["column_bound"]
        checks["cook_satisfied"] = pi <= checks["cook_bound"]
    return ProximityReport(verts, nearest, pi, False, checks)


def random_instance(rng: random.Random, max_m: int = 3, max_n: int = 6, entry: int = 3,
                    bound: int = 4) -> IPInstance:
    """Random bounded instance with a known feasible integer point z0 and b = A z0."""
    while True:
        m = rng.randint(1, max_m)
        n = rng.randint(m, max_n)
        rows = [[rng.randint(-entry, entry) for _ in range(n)] for _ in range(m)]
        A = ExactMatrix(rows, n)
        if rank(A) == m:
            break
    l, u = [], []
    for _ in range(n):
        lo = rng.randint(-bound, bound - 1)
        l.append(lo)
        u.append(rng.randint(lo + 1, bound))
    z0 = [rng.randint(lo, hi) for lo, hi in zip(l, u)]
    b = A @ z0
    return IPInstance(A, b, l, u)


def random_instances(count: int, seed: int = 42, **kwargs) -> list[IPInstance]:
    rng = random.Random(seed)
    return [random_instance(rng, **kwargs) for _ in range(count)]
