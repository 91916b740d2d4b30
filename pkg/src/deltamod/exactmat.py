"""Exact integer linear algebra.

Everything here works on Python ints, so there is no overflow anywhere.
Matrices are small (desk scale), so the algorithms favour clarity over
asymptotics: fraction-free Bareiss elimination for determinants and an
extended-gcd row reduction for the Hermite normal form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Raised when matrix shapes do not fit the requested operation."""


class PreconditionError(ValueError):
    """Raised when an input violates a documented precondition."""


class ExactMatrix:
    """Immutable dense matrix of arbitrary-precision integers.

    Stored row-major as a tuple of row tuples.  ``cols`` may be zero, in
    which case ``rows`` is kept explicitly.
    """

    __slots__ = ("_rows", "_nrows", "_ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        data = tuple(tuple(_as_int(x) for x in row) for row in rows)
        nrows = len(data)
        if nrows:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionError("ragged rows")
            if ncols is not None and ncols != width:
                raise DimensionError("ncols does not match row width")
        else:
            width = ncols or 0
        self._rows = data
        self._nrows = nrows
        self._ncols = width
        self._hash = None

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        if ncols == 0:
            return cls._empty(nrows)
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], nrows: int | None = None) -> "ExactMatrix":
        cols = [tuple(_as_int(x) for x in c) for c in columns]
        if not cols:
            if nrows is None:
                raise DimensionError("nrows required for a matrix without columns")
            return cls._empty(nrows)
        height = len(cols[0])
        if any(len(c) != height for c in cols):
            raise DimensionError("columns of different lengths")
        if nrows is not None and nrows != height:
            raise DimensionError("nrows does not match column length")
        return cls(zip(*cols)) if height else cls._empty(0)

    @classmethod
    def _empty(cls, nrows: int) -> "ExactMatrix":
        obj = cls([])
        obj._rows = tuple(() for _ in range(nrows))
        obj._nrows = nrows
        obj._ncols = 0
        return obj

    @property
    def rows(self) -> int:
        return self._nrows

    @property
    def cols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return self._nrows, self._ncols

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self._ncols)]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def transpose(self) -> "ExactMatrix":
        if self._nrows == 0:
            return ExactMatrix._empty(self._ncols)
        return ExactMatrix.from_columns(self._rows, nrows=self._ncols)

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def select_columns(self, idx: Iterable[int]) -> "ExactMatrix":
        return ExactMatrix.from_columns([self.column(j) for j in idx], nrows=self._nrows)

    def append_columns(self, columns: Iterable[Sequence[int]]) -> "ExactMatrix":
        return ExactMatrix.from_columns(self.columns() + [tuple(c) for c in columns], nrows=self._nrows)

    def select_rows(self, idx: Iterable[int]) -> "ExactMatrix":
        picked = [self._rows[i] for i in idx]
        if self._ncols == 0:
            return ExactMatrix._empty(len(picked))
        return ExactMatrix(picked, ncols=self._ncols)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self._ncols != other._nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = other.columns()
            if not ocols:
                return ExactMatrix._empty(self._nrows)
            return ExactMatrix([[sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self._rows])
        vec = tuple(other)
        if len(vec) != self._ncols:
            raise DimensionError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, self._rows))
        return self._hash

    def __repr__(self) -> str:
        return f"ExactMatrix({self.tolist()!r})"

    def __str__(self) -> str:
        if not self._nrows or not self._ncols:
            return f"<{self._nrows}x{self._ncols} matrix>"
        width = max(len(str(x)) for r in self._rows for x in r)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self._rows)


def _as_int(x) -> int:
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    try:
        import numpy as np

        if isinstance(x, np.integer):
            return int(x)
    except ImportError:  # pragma: no cover
        pass
    raise TypeError(f"matrix entries must be integers, got {type(x).__name__}")


def as_matrix(M) -> ExactMatrix:
    """Coerce nested row lists (or numpy arrays) to an ExactMatrix."""
    if isinstance(M, ExactMatrix):
        return M
    if hasattr(M, "tolist"):
        M = M.tolist()
    return ExactMatrix(M)


# ---------------------------------------------------------------- elementary ops


@dataclass(frozen=True)
class ElementaryOp:
    """An integrality-preserving row operation.

    ``kind`` is one of ``"swap"`` (rows i, j), ``"negate"`` (row i) or
    ``"add"`` (row i += c * row j).
    """

    kind: str
    i: int
    j: int = 0
    c: int = 0

    def __post_init__(self):
        if self.kind not in ("swap", "negate", "add"):
            raise ValueError(f"unknown elementary op {self.kind!r}")
        if self.kind == "add" and self.i == self.j:
            raise ValueError("add-multiple needs two distinct rows")

    def apply_rows(self, rows: list[list[int]]) -> None:
        """Apply in place to a list of mutable rows."""
        if self.kind == "swap":
            rows[self.i], rows[self.j] = rows[self.j], rows[self.i]
        elif self.kind == "negate":
            rows[self.i] = [-x for x in rows[self.i]]
        else:
            rows[self.i] = [a + self.c * b for a, b in zip(rows[self.i], rows[self.j])]

    def apply(self, M: ExactMatrix) -> ExactMatrix:
        rows = M.tolist()
        self.apply_rows(rows)
        return ExactMatrix(rows, ncols=M.cols) if rows else M

    def as_matrix(self, m: int) -> ExactMatrix:
        return self.apply(ExactMatrix.identity(m))

    def inverse(self) -> "ElementaryOp":
        if self.kind == "add":
            return ElementaryOp("add", self.i, self.j, -self.c)
        return self


# ----------------------------------------------------------------- determinants


def det_bareiss(M) -> int:
    """Determinant by fraction-free (Bareiss) elimination with row pivoting."""
    M = as_matrix(M)
    n, k = M.shape
    if n != k:
        raise DimensionError(f"determinant of non-square {n}x{k} matrix")
    if n == 0:
        return 1
    a = M.tolist()
    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            for r in range(c + 1, n):
                if a[r][c] != 0:
                    a[c], a[r] = a[r], a[c]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[c][c]
        row_c = a[c]
        for r in range(c + 1, n):
            row_r = a[r]
            f = row_r[c]
            for j in range(c + 1, n):
                # exact by Sylvester's identity
                row_r[j] = (row_r[j] * piv - f * row_c[j]) // prev
            row_r[c] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


def det_cofactor(M) -> int:
    """Naive Laplace expansion along the first row.  Exponential; oracle use only."""
    M = as_matrix(M)
    n, k = M.shape
    if n != k:
        raise DimensionError(f"determinant of non-square {n}x{k} matrix")
    return _laplace(M.tolist())


def _laplace(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    total = 0
    for j, x in enumerate(a[0]):
        if x:
            minor = [row[:j] + row[j + 1:] for row in a[1:]]
            total += (-1) ** j * x * _laplace(minor)
    return total


def rank(M) -> int:
    """Rank over the rationals (fraction-free elimination)."""
    M = as_matrix(M)
    a = M.tolist()
    nrows, ncols = M.shape
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            a[i] = [(x * piv - f * y) // prev for x, y in zip(a[i], a[r])]
        prev = piv
        r += 1
    return r


def adjugate(M) -> ExactMatrix:
    """Adjugate matrix, so that ``M @ adj = det(M) * I``."""
    M = as_matrix(M)
    n, k = M.shape
    if n != k:
        raise DimensionError("adjugate of non-square matrix")
    if n == 1:
        return ExactMatrix([[1]])
    a = M.tolist()
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for r, row in enumerate(a) if r != i]
            adj[j][i] = (-1) ** (i + j) * det_bareiss(minor)
    return ExactMatrix(adj)


def solve_rational(M, b: Sequence[int]) -> tuple[Fraction, ...]:
    """Solve a nonsingular square system exactly."""
    M = as_matrix(M)
    n, k = M.shape
    if n != k or len(b) != n:
        raise DimensionError("solve_rational needs a square system")
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(M.tolist(), b)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise PreconditionError("singular system")
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(row[n] for row in a)


def nullspace_vector(columns: Sequence[Sequence[int]]) -> tuple[Fraction, ...] | None:
    """A nonzero rational v with sum v_j * columns[j] = 0, if the kernel is 1-dimensional.

    Returns None when the columns are independent or the kernel has dimension
    greater than one.
    """
    if not columns:
        return None
    dim = len(columns[0])
    k = len(columns)
    a = [[Fraction(columns[j][i]) for j in range(k)] for i in range(dim)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, dim) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(dim):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(k) if c not in pivots]
    if len(free) != 1:
        return None
    fc = free[0]
    v = [Fraction(0)] * k
    v[fc] = Fraction(1)
    for row_idx, pc in enumerate(pivots):
        v[pc] = -a[row_idx][fc]
    return tuple(v)


# ---------------------------------------------------------- Hermite normal form


@dataclass(frozen=True)
class HnfForm:
    """Row-style Hermite normal form ``U @ original == H``.

    ``pivot_cols[r]`` is the column holding the pivot of row ``r``; rows past
    ``len(pivot_cols)`` are zero.  ``diagonal`` lists the pivots that exceed 1.
    """

    H: ExactMatrix
    U: ExactMatrix
    pivot_cols: tuple[int, ...]

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self.H[r, c] for r, c in enumerate(self.pivot_cols))

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(p for p in self.pivots if p != 1)

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hnf(M) -> HnfForm:
    """Row-style Hermite normal form by extended-gcd elimination.

    Upper-triangular on the pivot columns, positive pivots, entries above a
    pivot reduced into ``[0, pivot)``, zero rows at the bottom.  Rows below
    the current pivot row are folded into it in increasing row order, which
    makes the result (and ``U``) deterministic.
    """
    M = as_matrix(M)
    nrows, ncols = M.shape
    a = M.tolist()
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    pivot_cols = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            y = a[i][c]
            if y == 0:
                continue
            x = a[r][c]
            if x == 0:
                a[r], a[i] = a[i], a[r]
                u[r], u[i] = u[i], u[r]
                continue
            if y % x == 0:
                q = y // x
                a[i] = [p - q * s for p, s in zip(a[i], a[r])]
                u[i] = [p - q * s for p, s in zip(u[i], u[r])]
                continue
            g, s, t = _xgcd(x, y)
            xg, yg = x // g, y // g
            # [[s, t], [-y/g, x/g]] has determinant 1
            ar, ai = a[r], a[i]
            a[r] = [s * p + t * q for p, q in zip(ar, ai)]
            a[i] = [-yg * p + xg * q for p, q in zip(ar, ai)]
            ur, ui = u[r], u[i]
            u[r] = [s * p + t * q for p, q in zip(ur, ui)]
            u[i] = [-yg * p + xg * q for p, q in zip(ur, ui)]
        piv = a[r][c]
        if piv == 0:
            continue
        if piv < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
            piv = -piv
        for i in range(r):
            q = a[i][c] // piv
            if q:
                a[i] = [p - q * s for p, s in zip(a[i], a[r])]
                u[i] = [p - q * s for p, s in zip(u[i], u[r])]
        pivot_cols.append(c)
        r += 1
    H = ExactMatrix(a, ncols=ncols) if nrows else M
    return HnfForm(H=H, U=ExactMatrix(u) if nrows else ExactMatrix._empty(0), pivot_cols=tuple(pivot_cols))


def is_hnf(H) -> bool:
    """True iff H is in the row-style Hermite normal form used by :func:`hnf`."""
    H = as_matrix(H)
    nrows, ncols = H.shape
    last = -1
    r = 0
    for r in range(nrows):
        nz = next((c for c in range(ncols) if H[r, c] != 0), None)
        if nz is None:
            return all(H[i, c] == 0 for i in range(r, nrows) for c in range(ncols))
        if nz <= last or H[r, nz] <= 0:
            return False
        if any(not 0 <= H[i, nz] < H[r, nz] for i in range(r)):
            return False
        last = nz
    return True


def unimodular_completion(v: Sequence[int]) -> ExactMatrix:
    """Unimodular U with ``U @ v == e1`` for a primitive integer vector v."""
    v = tuple(_as_int(x) for x in v)
    if not v or math.gcd(*v) != 1:
        raise PreconditionError(f"vector {v} is not primitive")
    form = hnf(ExactMatrix.from_columns([v]))
    return form.U


def full_row_rank_projection(M) -> tuple[ExactMatrix, ExactMatrix]:
    """Return ``(Mbar, U)`` with U unimodular and ``U @ M`` = Mbar on top of zero rows."""
    M = as_matrix(M)
    form = hnf(M)
    return form.H.select_rows(range(form.rank)), form.U
