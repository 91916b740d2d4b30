"""Largest m x m minor, Delta-modularity and differing-column predicates."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .exactmat import DimensionError, ExactMatrix, PreconditionError, as_matrix


Column = tuple[int, ...]


def canonical_sign(v: Sequence[int]) -> Column:
    """Flip v so its first nonzero entry is positive (zero stays zero)."""
    v = tuple(int(x) for x in v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def is_primitive(v: Sequence[int]) -> bool:
    if not any(v):
        raise PreconditionError("the zero vector has no gcd")
    return math.gcd(*(int(x) for x in v)) == 1


@dataclass(frozen=True)
class ColumnMultiset:
    """Columns of one dimension with multiplicities.

    ``normalize`` produces the canonical form: nonzero columns with their
    first nonzero entry positive, sorted lexicographically, merged with
    multiplicities.  ``len`` counts distinct columns.
    """

    dim: int
    columns: tuple[Column, ...]
    multiplicities: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.multiplicities:
            object.__setattr__(self, "multiplicities", (1,) * len(self.columns))
        if len(self.multiplicities) != len(self.columns):
            raise DimensionError("one multiplicity per column required")
        if any(len(c) != self.dim for c in self.columns):
            raise DimensionError("column of the wrong dimension")

    def __len__(self) -> int:
        return len(self.columns)

    def __iter__(self):
        return iter(self.columns)

    def __contains__(self, v) -> bool:
        return tuple(v) in self.columns

    @property
    def is_differing(self) -> bool:
        return all(k == 1 for k in self.multiplicities) and has_differing_columns(self)[0]

    def as_matrix(self) -> ExactMatrix:
        return ExactMatrix.from_columns(self.columns, nrows=self.dim)


def _columns_of(A) -> tuple[list[Column], int]:
    if isinstance(A, ColumnMultiset):
        return list(A.columns), A.dim
    M = as_matrix(A)
    return M.columns(), M.rows


def normalize(A) -> ColumnMultiset:
    """Drop zero columns, fix signs, sort, and merge duplicates."""
    cols, dim = _columns_of(A)
    counts: dict[Column, int] = {}
    for c in cols:
        if any(c):
            key = canonical_sign(c)
            counts[key] = counts.get(key, 0) + 1
    ordered = sorted(counts)
    return ColumnMultiset(dim, tuple(ordered), tuple(counts[c] for c in ordered))


def has_differing_columns(A) -> tuple[bool, tuple[int, ...] | None]:
    """Check for zero columns and pairs equal up to sign.

    Returns ``(True, None)`` or ``(False, witness)`` where the witness is
    ``(j,)`` for a zero column or ``(i, j)`` for a clashing pair.
    """
    cols, _ = _columns_of(A)
    seen: dict[Column, int] = {}
    for j, c in enumerate(cols):
        if not any(c):
            return False, (j,)
        key = canonical_sign(c)
        if key in seen:
            return False, (seen[key], j)
        seen[key] = j
    return True, None


# ------------------------------------------------------------------- Delta(A)


@dataclass(frozen=True)
class DeltaReport:
    """Largest absolute m x m minor with the lexicographically first subset attaining it."""

    delta: int
    witness: tuple[int, ...]
    minors_evaluated: int


def _scan_exact(cols: list[Column], m: int, bound: int, use_hadamard: bool):
    """Pure-Python twin of the int64 kernel in :mod:`_kernels`.

    Enumerates m-subsets lexicographically, eliminating one column at a
    time (fraction-free) so a dependent prefix is abandoned immediately.
    """
    n = len(cols)
    sq = [max(sum(x * x for x in c), 1) for c in cols]
    # top[s][r]: product of the r largest squared norms among cols[s:]
    top = []
    for s in range(n + 1):
        vals = sorted(sq[s:], reverse=True)
        row = [1]
        for r in range(1, m + 1):
            row.append(row[-1] * vals[r - 1] if r <= len(vals) else 0)
        top.append(row)

    best = 0
    witness: tuple[int, ...] = ()
    evaluated = 0
    reduced: list[list[int]] = []
    pivrows: list[int] = []
    pivots = [1]
    row_stage = [m] * m
    chosen: list[int] = []
    prefsq = [1]

    def extend(start: int) -> bool:
        nonlocal best, witness, evaluated
        depth = len(chosen)
        for j in range(start, n - (m - depth) + 1):
            if use_hadamard:
                ub = prefsq[depth] * sq[j] * top[j + 1][m - depth - 1]
                if ub <= (bound * bound if bound >= 0 else best * best):
                    continue
            v = list(cols[j])
            for s in range(depth):
                pr, pv, pp = pivrows[s], pivots[s + 1], pivots[s]
                vp = v[pr]
                red = reduced[s]
                for i in range(m):
                    if row_stage[i] > s:
                        v[i] = (v[i] * pv - red[i] * vp) // pp
            r = next((i for i in range(m) if row_stage[i] == m and v[i]), -1)
            if r < 0:
                continue
            if depth == m - 1:
                evaluated += 1
                d = abs(v[r])
                if bound >= 0:
                    if d > bound:
                        best, witness = d, tuple(chosen) + (j,)
                        return True
                    best = max(best, d)
                elif d > best:
                    best, witness = d, tuple(chosen) + (j,)
                continue
            reduced.append(v)
            pivrows.append(r)
            pivots.append(v[r])
            row_stage[r] = depth
            prefsq.append(prefsq[-1] * sq[j])
            chosen.append(j)
            if extend(j + 1):
                return True
            chosen.pop()
            prefsq.pop()
            row_stage[r] = m
            pivots.pop()
            pivrows.pop()
            reduced.pop()
        return False

    violated = extend(0) if n >= m else False
    return best, witness, evaluated, violated


def _scan(A, bound: int, use_hadamard: bool = True):
    M = as_matrix(A) if not isinstance(A, ExactMatrix) else A
    m, n = M.shape
    if n < m:
        raise DimensionError(f"need at least {m} columns, got {n}")
    cols = M.columns()
    if m == 0:
        return 1, (), 1, bound >= 0 and 1 > bound
    if _kernels.int64_safe(cols, m):
        best, w, ev, viol = _kernels.max_abs_minor(np.array(cols, dtype=np.int64), bound, use_hadamard)
        witness = tuple(int(x) for x in w) if (best or viol) else ()
        return best, witness, ev, viol
    return _scan_exact(cols, m, bound, use_hadamard)


def delta(A, use_hadamard: bool = True) -> DeltaReport:
    """Maximum |det| over all m x m column submatrices of A.

    Returns 0 with an empty witness when A has rank below m.
    """
    best, witness, evaluated, _ = _scan(A, -1, use_hadamard)
    return DeltaReport(delta=best, witness=witness if best else (), minors_evaluated=evaluated)


def is_delta_modular(A, bound: int) -> tuple[bool, tuple[int, ...] | None]:
    """True iff no m x m minor exceeds ``bound`` in absolute value.

    Stops at the first violating subset, which is returned as the witness.
    Rank is not checked here; see :func:`delta` for that.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    _, witness, _, violated = _scan(A, bound)
    return (False, witness) if violated else (True, None)
