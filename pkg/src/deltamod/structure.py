"""Contraction, original sets and circuit structure of bimodular matrices.

The central object is the contraction of A on a primitive column a0: a
unimodular U sends a0 to e1, the first row of U A is dropped, and the
remaining columns are sign-normalised and merged.  Every merged column b
keeps the list of columns of A that project onto it (its originals); the
ones with two or more originals form the set ``M``.

:func:`check_structural_lemmas` evaluates the known structural facts about
maximal bimodular matrices on any input.  A fact whose hypotheses the input
does not meet is reported with status ``"flagged"`` rather than failed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from math import gcd, lcm
from typing import Sequence

from .exactmat import (ExactMatrix, PreconditionError, as_matrix, det_bareiss, full_row_rank_projection,
                       hnf, nullspace_vector, rank, unimodular_completion)
from .modularity import (Column, ColumnMultiset, _columns_of, canonical_sign, delta, has_differing_columns,
                         is_primitive)


# ---------------------------------------------------------------- contraction


@dataclass(frozen=True)
class ContractionReport:
    """Result of contracting A on one primitive column.

    ``transformed`` is U A after flipping every column whose projection
    was not already canonical, so an original of b always reads (beta, b).
    ``originals`` maps each contracted column b to the indices (into A) of
    its originals in increasing beta; ``zero_set`` lists the columns that
    project to zero, the pivot included.
    """

    pivot_index: int
    pivot: Column
    transform: ExactMatrix
    transformed: ExactMatrix
    contracted: ColumnMultiset
    originals: dict[Column, tuple[int, ...]]
    zero_set: tuple[int, ...]
    M: ColumnMultiset

    def betas(self, b: Sequence[int]) -> tuple[int, ...]:
        """First coordinates of the originals of b, in increasing order."""
        return tuple(self.transformed[0, j] for j in self.originals[tuple(b)])

    def original_columns(self, b: Sequence[int]) -> list[Column]:
        return [self.transformed.column(j) for j in self.originals[tuple(b)]]

    @property
    def max_originals(self) -> int:
        return max((len(v) for v in self.originals.values()), default=0)

    def counting_identity(self) -> bool:
        extra = sum(len(v) - 1 for v in self.originals.values())
        return self.transformed.cols == len(self.zero_set) + len(self.contracted) + extra


def _check_input(A: ExactMatrix) -> None:
    ok, pair = has_differing_columns(A)
    if not ok:
        raise PreconditionError(f"columns {pair} are zero or equal up to sign")
    if rank(A) != A.rows:
        raise PreconditionError(f"rank {rank(A)} is below the row count {A.rows}")


def contract(A, pivot_index: int) -> ContractionReport:
    A = as_matrix(A)
    _check_input(A)
    if not 0 <= pivot_index < A.cols:
        raise IndexError(f"pivot index {pivot_index} out of range for {A.cols} columns")
    a0 = A.column(pivot_index)
    if not is_primitive(a0):
        raise PreconditionError(f"pivot column {a0} is not primitive")
    U = unimodular_completion(a0)
    UA = U @ A
    zero_set = []
    groups: dict[Column, list[tuple[int, int]]] = {}
    flipped = []
    for j, col in enumerate(UA.columns()):
        tail = col[1:]
        if not any(tail):
            zero_set.append(j)
            flipped.append(col)
            continue
        b = canonical_sign(tail)
        if b != tail:
            col = tuple(-x for x in col)
        flipped.append(col)
        groups.setdefault(b, []).append((col[0], j))
    transformed = ExactMatrix.from_columns(flipped, nrows=A.rows)
    keys = sorted(groups)
    originals = {b: tuple(j for _, j in sorted(groups[b])) for b in keys}
    contracted = ColumnMultiset(A.rows - 1, tuple(keys))
    multi = [b for b in keys if len(originals[b]) >= 2]
    M = ColumnMultiset(A.rows - 1, tuple(multi), tuple(len(originals[b]) for b in multi))
    report = ContractionReport(pivot_index, a0, U, transformed, contracted, originals, tuple(zero_set), M)
    assert report.counting_identity()
    return report


# ------------------------------------------------------------------- circuits


@dataclass(frozen=True)
class Circuit:
    """A minimal dependent set, with its dependence scaled to coprime integers, first entry positive."""

    column_indices: tuple[int, ...]
    dependence_coeffs: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.column_indices)


def _integral_dependence(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    scale = lcm(*(x.denominator for x in v))
    ints = [int(x * scale) for x in v]
    g = gcd(*ints)
    sign = 1 if next(x for x in ints if x) > 0 else -1
    return tuple(Fraction(sign * x // g) for x in ints)


def enumerate_circuits(X, max_size: int = 6) -> list[Circuit]:
    """All circuits with at most ``max_size`` columns, by increasing size then index list.

    A k-subset is a circuit exactly when its kernel is one-dimensional and
    the kernel vector has no zero entry.  Circuits have at most dim + 1
    columns, which caps the enumeration.
    """
    cols, dim = _columns_of(X)
    if max_size < 1:
        raise ValueError("max_size must be positive")
    top = min(max_size, len(cols), dim + 1)
    found = []
    for k in range(1, top + 1):
        for idx in combinations(range(len(cols)), k):
            if k == 1:
                if not any(cols[idx[0]]):
                    found.append(Circuit(idx, (Fraction(1),)))
                continue
            v = nullspace_vector([cols[i] for i in idx])
            if v is not None and all(v):
                found.append(Circuit(idx, _integral_dependence(v)))
    return found


# ------------------------------------------------------------------------ B*


def _standard_columns(s: int, m: int) -> list[Column]:
    cols = [tuple(int(r == i) for r in range(m)) for i in range(s - 1)]
    cols.append(tuple(1 if r < s - 1 else (2 if r == s - 1 else 0) for r in range(m)))
    return cols


@dataclass(frozen=True)
class BStar:
    """Smallest independent column subset whose column sum is even in every entry."""

    columns: ExactMatrix
    half_sum: Column
    indices: tuple[int, ...] = field(default=())

    @property
    def size(self) -> int:
        return self.columns.cols

    @property
    def m(self) -> int:
        return self.columns.rows

    def standard_form(self) -> ExactMatrix:
        """[e1 | ... | e(s-1) | e1 + ... + e(s-1) + 2 e(s)] in dimension m."""
        return ExactMatrix.from_columns(_standard_columns(self.size, self.m), nrows=self.m)

    def standardizations(self) -> list[tuple[ExactMatrix, tuple[int, ...], tuple[int, ...]]]:
        """Every signed ordering of the columns that a unimodular map sends to the standard form.

        Each entry is (U, order, signs) with U applied to the reordered,
        re-signed columns giving exactly :meth:`standard_form`.  Two full
        column rank matrices are related by a unimodular row transform
        exactly when their row-style Hermite forms agree, which is what
        is compared.
        """
        target = hnf(self.standard_form()).H
        cols = self.columns.columns()
        out = []
        for order in permutations(range(self.size)):
            for signs in product((1, -1), repeat=self.size):
                B = ExactMatrix.from_columns([tuple(sg * x for x in cols[i]) for i, sg in zip(order, signs)],
                                             nrows=self.m)
                form = hnf(B)
                if form.H == target:
                    out.append((form.U, order, signs))
        return out

    def c_star(self) -> list[Column]:
        """The columns e(s-1) + sum of alpha_i e^i over i <= s-2, alpha in {0,1}, in dimension m-1."""
        s, dim = self.size, self.m - 1
        cols = []
        for alpha in product((0, 1), repeat=max(s - 2, 0)):
            v = [0] * dim
            v[s - 2] = 1
            for i, a in enumerate(alpha):
                v[i] = a
            cols.append(tuple(v))
        return cols

    def d_star(self) -> ExactMatrix:
        """The standard form contracted on its first column, in dimension m-1."""
        return ExactMatrix.from_columns([c[1:] for c in _standard_columns(self.size, self.m)[1:]],
                                        nrows=self.m - 1)


def _column_sorted(A: ExactMatrix) -> list[tuple[Column, int]]:
    return sorted((canonical_sign(c), j) for j, c in enumerate(A.columns()))


def find_bstar(A, max_delta: int = 2) -> BStar | None:
    """Smallest independent subset of A with even column sum, or None.

    Candidates are tried by increasing size, and within one size in
    lexicographic order of the sign-normalised, sorted columns; the
    returned columns are sign-normalised.  A single even column counts (it
    is the non-primitive column 2a).  The input must have differing
    columns and all m x m minors at most ``max_delta``.
    """
    A = as_matrix(A)
    ok, pair = has_differing_columns(A)
    if not ok:
        raise PreconditionError(f"columns {pair} are zero or equal up to sign")
    if A.cols >= A.rows and delta(A).delta > max_delta:
        raise PreconditionError(f"some m x m minor exceeds {max_delta}")
    items = _column_sorted(A)
    parity = [tuple(x & 1 for x in c) for c, _ in items]
    for k in range(1, A.rows + 1):
        for idx in combinations(range(len(items)), k):
            if any(sum(parity[i][r] for i in idx) & 1 for r in range(A.rows)):
                continue
            chosen = [items[i][0] for i in idx]
            B = ExactMatrix.from_columns(chosen, nrows=A.rows)
            if rank(B) != k:
                continue
            half = tuple(sum(c[r] for c in chosen) // 2 for r in range(A.rows))
            return BStar(B, half, tuple(items[i][1] for i in idx))
    return None


# ------------------------------------------------------------- lemma checker


@dataclass
class Predicate:
    name: str
    status: str  # "pass", "fail" or "flagged"
    detail: str
    witness: object = None


@dataclass
class PredicateReport:
    predicates: list[Predicate] = field(default_factory=list)
    maximal: bool | None = None
    all_primitive: bool | None = None

    @property
    def passed(self) -> bool:
        return all(p.status != "fail" for p in self.predicates)

    def failures(self) -> list[Predicate]:
        return [p for p in self.predicates if p.status == "fail"]

    def flagged(self) -> list[Predicate]:
        return [p for p in self.predicates if p.status == "flagged"]

    def get(self, name: str) -> Predicate:
        return next(p for p in self.predicates if p.name == name)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "maximal": self.maximal,
            "all_primitive": self.all_primitive,
            "predicates": [{"name": p.name, "status": p.status, "detail": p.detail,
                            "witness": _jsonable(p.witness)} for p in self.predicates],
        }


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, ExactMatrix):
        return x.tolist()
    return x


def _verdict(holds: bool, hypotheses_met: bool) -> str:
    if not hypotheses_met:
        return "flagged"
    return "pass" if holds else "fail"


def find_gamma(report: ContractionReport, circuit: Circuit) -> tuple[int, ...] | None:
    """Search gamma over the originals' first coordinates with |det(gamma^T ; C bar)| = 2.

    C bar is the circuit in M brought to full row rank by a unimodular
    transform of the contracted coordinates.
    """
    cols = [report.M.columns[i] for i in circuit.column_indices]
    Cbar, _ = full_row_rank_projection(ExactMatrix.from_columns(cols, nrows=report.M.dim))
    choices = [report.betas(b) for b in cols]
    for gamma in product(*choices):
        rows = [list(gamma)] + Cbar.tolist()
        if abs(det_bareiss(ExactMatrix(rows))) == 2:
            return gamma
    return None


def _bspan_holds(A: ExactMatrix, bstar: BStar) -> tuple[bool, object]:
    """Containment of A within span B* in the shape allowed for a minimal B*, up to column sign.

    The shape is checked in the coordinates of every standardisation of B*;
    it suffices that one of them works.
    """
    s, m = bstar.size, bstar.m
    standard = {canonical_sign(c) for c in _standard_columns(s, m)}
    extra = set()
    for alpha in product((0, 1), repeat=s - 1):
        v = [0] * m
        v[s - 1] = 1
        for i, a in enumerate(alpha):
            v[i] = a
        extra.add(canonical_sign(v))
    allowed = standard | extra
    bad = None
    for U, _, _ in bstar.standardizations():
        inside = [canonical_sign(c) for c in (U @ A).columns() if not any(c[s:])]
        outside = [c for c in inside if c not in allowed]
        if not outside:
            return True, None
        bad = outside
    return False, bad


def check_structural_lemmas(A, maximal: bool | None = None, max_circuit_size: int = 6) -> PredicateReport:
    """Evaluate the structural facts known for maximal bimodular matrices.

    ``maximal`` may be passed when already known; otherwise it is decided
    with :func:`deltamod.search.verify_maximal`.  Predicates whose
    hypotheses (maximality, only primitive columns, existence of B*) fail
    are evaluated anyway and reported as flagged.
    """
    from .search import verify_maximal

    A = as_matrix(A)
    _check_input(A)
    d = delta(A).delta
    if d > 2:
        raise PreconditionError(f"A is not bimodular: a minor of absolute value {d}")
    if maximal is None:
        maximal = verify_maximal(A, 2)[0]
    cols = A.columns()
    nonprim = [j for j, c in enumerate(cols) if not is_primitive(c)]
    all_primitive = not nonprim
    report = PredicateReport(maximal=maximal, all_primitive=all_primitive)
    add = report.predicates.append

    # at most one non-primitive column, of the form 2a; needs only bimodularity
    shapes_ok = all(all(x % 2 == 0 for x in cols[j]) and is_primitive([x // 2 for x in cols[j]]) for j in nonprim)
    add(Predicate("non_primitive", _verdict(len(nonprim) <= 1 and shapes_ok, True),
                  f"{len(nonprim)} non-primitive column(s)", [cols[j] for j in nonprim]))

    pivots = [j for j, c in enumerate(cols) if is_primitive(c)]
    reports = {j: contract(A, j) for j in pivots}

    worst = max(((r.max_originals, j) for j, r in reports.items()), default=(0, None))
    add(Predicate("originals_at_most_3", _verdict(worst[0] <= 3, maximal),
                  f"largest original set {worst[0]} (pivot {worst[1]})", worst[1]))

    gaps = []
    for j, r in reports.items():
        for b in r.originals:
            betas = r.betas(b)
            if list(betas) != list(range(betas[0], betas[0] + len(betas))):
                gaps.append((j, b, betas))
    add(Predicate("originals_consecutive", _verdict(not gaps, maximal),
                  "first coordinates of every original set are consecutive" if not gaps
                  else f"{len(gaps)} original set(s) with gaps", gaps[:1]))

    zero_ok = all(len(r.zero_set) == 1 for r in reports.values())
    add(Predicate("zero_set_single", _verdict(zero_ok, maximal and all_primitive),
                  "every pivot is alone in its zero set" if zero_ok else "a pivot has a multiple in A"))

    bad_sizes, missing_gamma, any_circuit = [], [], False
    circuits_of = {}
    for j, r in reports.items():
        circuits_of[j] = enumerate_circuits(r.M, max_circuit_size) if len(r.M) else []
        for c in circuits_of[j]:
            any_circuit = True
            if not 3 <= len(c) <= 4:
                bad_sizes.append((j, [r.M.columns[i] for i in c.column_indices]))
            if find_gamma(r, c) is None:
                missing_gamma.append((j, [r.M.columns[i] for i in c.column_indices]))
    hyp = maximal and all_primitive
    add(Predicate("circuit_sizes", _verdict(not bad_sizes, hyp),
                  "every circuit in M has 3 or 4 columns" if not bad_sizes
                  else f"{len(bad_sizes)} circuit(s) outside sizes 3..4", bad_sizes[:1]))
    add(Predicate("circuit_gamma", _verdict(not missing_gamma, hyp),
                  "every circuit in M admits gamma with |det| = 2" if not missing_gamma
                  else f"{len(missing_gamma)} circuit(s) without such gamma", missing_gamma[:1]))

    bstar = find_bstar(A)
    size = bstar.size if bstar else None
    if any_circuit:
        add(Predicate("bstar_size", _verdict(size is not None and 2 <= size <= 4, hyp),
                      f"|B*| = {size}", bstar.columns.columns() if bstar else None))
    add(_m_bound_predicate(A, bstar, hyp))
    if bstar is not None and size >= 2:
        holds, witness = _bspan_holds(A, bstar)
        add(Predicate("bstar_span", _verdict(holds, hyp),
                      "columns in span B* have the allowed shape up to sign" if holds
                      else "a column in span B* has a forbidden shape", witness))
    return report


def _m_bound_predicate(A: ExactMatrix, bstar: BStar | None, hypotheses: bool) -> Predicate:
    """|M| <= m for |B*| in {2, 3} and |M| <= m + 1 for |B*| = 4.

    M is taken on the pivots that some standardisation of B* sends to e1,
    since the bound is stated for B* in standard form.
    """
    m = A.rows
    if bstar is None or bstar.size < 2:
        return Predicate("m_size", "flagged", "no B* with at least two columns", None)
    cap = m + 1 if bstar.size == 4 else m
    if bstar.size > 4:
        return Predicate("m_size", _verdict(False, hypotheses), f"|B*| = {bstar.size} exceeds 4", None)
    first = sorted({bstar.indices[order[0]] for _, order, _ in bstar.standardizations()})
    if not first:
        return Predicate("m_size", _verdict(False, hypotheses), "B* has no standard form", None)
    sizes = {j: len(contract(A, j).M) for j in first}
    worst = max(sizes, key=lambda j: sizes[j])
    return Predicate("m_size", _verdict(sizes[worst] <= cap, hypotheses),
                     f"|B*| = {bstar.size}, largest |M| = {sizes[worst]} (cap {cap}) over pivots {first}",
                     worst)
