"""Extremal and near-extremal matrices with bounded minors.

``lower_bound_matrix`` is the parametric family reaching the known lower
bound on the number of differing columns.  ``tight_bimodular_example``
returns the bimodular examples with only primitive columns, either from
the literal data in :mod:`deltamod.catalog` or generated from their
graph description.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import catalog
from .exactmat import ExactMatrix, as_matrix, rank
from .modularity import delta, has_differing_columns, is_primitive


class CatalogError(KeyError):
    """Raised for an (m, variant) pair that has no stored or generated matrix."""


def unit(i: int, m: int) -> tuple[int, ...]:
    """Standard unit vector, 1-based to match the usual e^1..e^m labels."""
    return tuple(int(k == i - 1) for k in range(m))


def _combo(m: int, *terms: tuple[int, int]) -> tuple[int, ...]:
    """Integer combination sum(coef * e^i) from (coef, i) pairs."""
    v = [0] * m
    for coef, i in terms:
        v[i - 1] += coef
    return tuple(v)


def lower_bound_matrix(delta_: int, m: int) -> ExactMatrix:
    """The (m^2+m)/2 + m(delta-1) column family.

    Columns in order: unit vectors; k e^1 for k = 2..delta; k e^1 - e^i
    grouped by k then i; e^i - e^j for 2 <= i < j <= m.
    """
    if delta_ < 1 or m < 1:
        raise ValueError("delta and m must be positive")
    cols = [unit(i, m) for i in range(1, m + 1)]
    cols += [_combo(m, (k, 1)) for k in range(2, delta_ + 1)]
    cols += [_combo(m, (k, 1), (-1, i)) for k in range(1, delta_ + 1) for i in range(2, m + 1)]
    cols += [_combo(m, (1, i), (-1, j)) for i in range(2, m + 1) for j in range(i + 1, m + 1)]
    return ExactMatrix.from_columns(cols)


def heller_matrix(m: int) -> ExactMatrix:
    """Unimodular matrix with the maximum (m^2+m)/2 differing columns."""
    return lower_bound_matrix(1, m)


def complete_digraph_incidence(m: int, skip: tuple[int, int] | None = None) -> list[tuple[int, ...]]:
    """Columns e^i - e^j for i < j, optionally leaving one pair out."""
    return [_combo(m, (1, i), (-1, j)) for i, j in combinations(range(1, m + 1), 2) if (i, j) != skip]


def _bstar2(m: int) -> list[tuple[int, ...]]:
    if not (m == 2 or m >= 4):
        raise CatalogError(f"bstar2 needs m = 2 or m >= 4, got {m}")
    cols = complete_digraph_incidence(m) + [unit(i, m) for i in range(1, m + 1)]
    return cols + [_combo(m, (1, 1), (1, i)) for i in range(2, m + 1)]


def _bstar3(m: int) -> list[tuple[int, ...]]:
    if m < 3:
        raise CatalogError(f"bstar3 needs m >= 3, got {m}")
    cols = complete_digraph_incidence(m) + [unit(i, m) for i in range(1, m + 1)]
    cols += [_combo(m, (1, 1), (1, 2), (-1, i)) for i in range(3, m + 1)]
    if m == 4:
        cols.append(_combo(m, (1, 1), (1, 2), (-1, 3), (-1, 4)))
    return cols


def _bstar4(m: int) -> list[tuple[int, ...]]:
    if m != 4:
        raise CatalogError("the stored |B*| = 4 example for m <= 4 has m = 4")
    return [tuple(row[:4]) for row in zip(*catalog.PRIMITIVE_M5)][:12]


def _example_m6(m: int) -> list[tuple[int, ...]]:
    if m != 6:
        raise CatalogError("the 25-column example is for m = 6")
    cols = complete_digraph_incidence(6) + [unit(i, 6) for i in range(3, 7)]
    return cols + [_combo(6, (-1, 1), (1, i), (1, j)) for i, j in combinations(range(3, 7), 2)]


def _general(m: int) -> list[tuple[int, ...]]:
    if m < 7:
        raise CatalogError(f"the general primitive family starts at m = 7, got {m}")
    cols = complete_digraph_incidence(m, skip=(1, 2)) + [unit(i, m) for i in range(1, m + 1)]
    return cols + [_combo(m, (1, 1), (1, 2), (-1, i)) for i in range(3, m + 1)]


def _literal(rows, m_required: int):
    def build(m: int):
        if m != m_required:
            raise CatalogError(f"stored matrix has m = {m_required}, got {m}")
        return list(zip(*rows))
    return build


VARIANTS = {
    "claim1": _literal(catalog.CLAIM1, 3),
    "claim1-equivalent": _literal(catalog.CLAIM1_EQUIVALENT, 3),
    "bstar2": _bstar2,
    "bstar3": _bstar3,
    "bstar4": _bstar4,
    "primitive": _literal(catalog.PRIMITIVE_M5, 5),
    "example": _example_m6,
    "general": _general,
}


def tight_bimodular_example(m: int, variant: str) -> ExactMatrix:
    """Catalogued bimodular matrix with only primitive columns."""
    try:
        build = VARIANTS[variant]
    except KeyError:
        raise CatalogError(f"unknown variant {variant!r}; known: {sorted(VARIANTS)}") from None
    return ExactMatrix.from_columns(build(m))


# ------------------------------------------------------------- named families

FAMILIES = ("lowerBound", "heller", "bimodularTight", "primitiveTight",
            "claim1", "m5Primitive", "m6Example", "generalPrimitive")


def _family_key(name: str) -> str:
    return name.replace("-", "").replace("_", "").lower()


@dataclass(frozen=True)
class ConstructionRecipe:
    family: str
    delta: int = 2
    m: int = 3
    variant: str | None = None

    def __post_init__(self):
        key = _family_key(self.family)
        match = [f for f in FAMILIES if _family_key(f) == key]
        if not match:
            raise CatalogError(f"unknown family {self.family!r}; known: {', '.join(FAMILIES)}")
        object.__setattr__(self, "family", match[0])

    def build(self) -> ExactMatrix:
        fam = self.family
        if fam == "lowerBound":
            return lower_bound_matrix(self.delta, self.m)
        if fam == "heller":
            return heller_matrix(self.m)
        if fam == "bimodularTight":
            return lower_bound_matrix(2, self.m)
        if fam == "primitiveTight":
            return tight_bimodular_example(self.m, self.variant or "bstar2")
        if fam == "claim1":
            return tight_bimodular_example(3, self.variant or "claim1")
        if fam == "m5Primitive":
            return tight_bimodular_example(5, "primitive")
        if fam == "m6Example":
            return tight_bimodular_example(6, "example")
        return tight_bimodular_example(self.m, "general")


# -------------------------------------------------------------- verification


@dataclass
class VerificationReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)
    delta: int | None = None

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [name for name, ok, _ in self.checks if not ok]

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "delta": self.delta,
            "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in self.checks],
        }


def verify_construction(A, expected_delta: int, expected_count: int,
                        delta_exact: bool = True, primitive: bool = False) -> VerificationReport:
    """Check rank, differing columns, Delta and column count.

    With ``delta_exact`` the largest minor must equal ``expected_delta``,
    otherwise it only has to stay at or below it.  ``primitive`` adds a
    per-column gcd check.
    """
    A = as_matrix(A)
    report = VerificationReport()
    r = rank(A)
    report.checks.append(("rank", r == A.rows, f"rank {r}, rows {A.rows}"))
    ok, pair = has_differing_columns(A)
    report.checks.append(("differing", ok, "ok" if ok else f"columns {pair} clash"))
    if A.cols >= A.rows:
        d = delta(A)
        report.delta = d.delta
        good = d.delta == expected_delta if delta_exact else d.delta <= expected_delta
        rel = "==" if delta_exact else "<="
        report.checks.append(("delta", good, f"delta {d.delta} (want {rel} {expected_delta}), witness {list(d.witness)}"))
    else:
        report.checks.append(("delta", False, "fewer columns than rows"))
    report.checks.append(("count", A.cols == expected_count, f"{A.cols} columns, want {expected_count}"))
    if primitive:
        bad = [j for j, c in enumerate(A.columns()) if any(c) and not is_primitive(c)]
        report.checks.append(("primitive", not bad, "ok" if not bad else f"non-primitive columns {bad}"))
    return report


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    matrix: ExactMatrix
    delta: int
    count: int
    status: str  # "tight" or "best known"
    primitive: bool


def catalog_entries() -> list[CatalogEntry]:
    """Every stored or described example with the numbers it is known to reach."""
    lb34 = ExactMatrix(catalog.LOWER_BOUND_3_4)
    entries = [
        CatalogEntry("lower-bound display (3,4)", lb34, 3, 18, "lower bound", False),
        CatalogEntry("claim1 (m=3)", tight_bimodular_example(3, "claim1"), 2, 9, "tight", True),
        CatalogEntry("claim1 equivalent (m=3)", tight_bimodular_example(3, "claim1-equivalent"), 2, 9, "tight", True),
        CatalogEntry("|B*|=4 (m=4)", tight_bimodular_example(4, "bstar4"), 2, 12, "tight", True),
        CatalogEntry("primitive (m=5)", tight_bimodular_example(5, "primitive"), 2, 20, "tight", True),
        CatalogEntry("example (m=6)", tight_bimodular_example(6, "example"), 2, 25, "best known", True),
        CatalogEntry("general (m=7)", tight_bimodular_example(7, "general"), 2, 32, "best known", True),
    ]
    for m in (2, 4, 5):
        entries.append(CatalogEntry(f"|B*|=2 (m={m})", tight_bimodular_example(m, "bstar2"), 2,
                                    (m * m + m) // 2 + m - 1, "tight", True))
    for m in (3, 4, 5):
        count = (m * m + m) // 2 + m - 2 + (1 if m == 4 else 0)
        entries.append(CatalogEntry(f"|B*|=3 (m={m})", tight_bimodular_example(m, "bstar3"), 2,
                                    count, "tight", True))
    for d, m in ((1, 4), (2, 4), (2, 5)):
        entries.append(CatalogEntry(f"lower bound ({d},{m})", lower_bound_matrix(d, m), d,
                                    (m * m + m) // 2 + m * (d - 1), "lower bound", False))
    return entries
