"""Closed-form and recursive bounds on the number of differing columns.

Everything returns exact integers or rationals except the two places that
need real exponents, :func:`glanzer_bound` for Delta >= 4 (ceiling of a
high-precision value, flagged non-exact unless delta is a power of two)
and :func:`exponent_condition` for non-integer q (reported, never
certified).
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
import mpmath
import numpy as np


def heller_count(m: int) -> int:
    return (m * m + m) // 2


def lower_bound_value(delta: int, m: int) -> int:
    _check(delta, m)
    return heller_count(m) + m * (delta - 1)


def thm_upper_bound(delta: int, m: int) -> int:
    _check(delta, m)
    if delta <= 2:
        return heller_count(m) + m * (delta - 1)
    return heller_count(m) * delta * delta


def glanzer_is_exact(delta: int) -> bool:
    """True when the older bound is an exact integer computation.

    For delta = 2**k the power delta**log2(log2(delta)) equals k**k, so the
    whole expression is rational; other delta >= 4 need real arithmetic.
    """
    return delta <= 3 or delta & (delta - 1) == 0


def glanzer_bound(delta: int, m: int) -> int:
    """The older piecewise bound; for delta >= 4 the ceiling of m^2 delta^(2 + log2 log2 delta) / 2."""
    _check(delta, m)
    if delta == 1:
        return heller_count(m)
    if delta <= 3:
        return m * m * delta
    if delta & (delta - 1) == 0:
        k = delta.bit_length() - 1
        return -(-(m * m * delta * delta * k**k) // 2)
    dps = 50
    while True:
        with mpmath.workdps(dps):
            x = mpmath.mpf(m * m) / 2 * mpmath.power(delta, 2 + mpmath.log(mpmath.log(delta, 2), 2))
            c = mpmath.ceil(x)
            margin = mpmath.mpf(10) ** (-dps // 2)
            # a value this close to an integer at this precision gets more digits
            if (c - x > margin and x - (c - 1) > margin) or dps >= 3200:
                return int(c)
        dps *= 2


def naive_bound(delta: int, m: int) -> int:
    _check(delta, m)
    return 3**m * delta


def proximity_bound(delta: int, m: int, c_upper: int) -> int:
    if min(delta, m, c_upper) < 1:
        raise ValueError("inputs must be positive")
    return (m + 1) * delta * (2 * c_upper + 1)


def cook_bound(n: int, delta: int) -> int:
    return n * n * delta


def _check(delta: int, m: int) -> None:
    if delta < 1 or m < 1:
        raise ValueError("delta and m must be positive")


# ------------------------------------------------------------------- primes


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return [int(p) for p in np.flatnonzero(sieve)]


def prime_zeta_partial(s: int, cutoff: int):
    """Exact sum of 1/p^s over primes p <= cutoff, as a reduced gmpy2 ``mpq``.

    The denominators p^s are pairwise coprime, so summing by binary
    splitting gives a numerator coprime to the product of denominators and
    no gcd is ever needed.  ``mpq`` compares and mixes exactly with
    ``fractions.Fraction``.
    """
    if s < 2 or cutoff < 2:
        raise ValueError("need s >= 2 and cutoff >= 2")
    dens = [gmpy2.mpz(p) ** s for p in primes_upto(cutoff)]

    def split(lo: int, hi: int):
        if hi - lo == 1:
            return gmpy2.mpz(1), dens[lo]
        mid = (lo + hi) // 2
        n1, d1 = split(lo, mid)
        n2, d2 = split(mid, hi)
        return n1 * d2 + n2 * d1, d1 * d2

    num, den = split(0, len(dens))
    return gmpy2.mpq(num, den)


def prime_zeta_upper(s: int, cutoff: int):
    """Rigorous upper bound: partial sum plus the integral tail bound 1/((s-1) N^(s-1))."""
    tail = gmpy2.mpq(1, (s - 1) * cutoff ** (s - 1))
    return prime_zeta_partial(s, cutoff) + tail


def exponent_condition(q, cutoff: int = 10**5) -> dict:
    """Evaluate max(2/3^q + 1/2^q, 2/4^q + 1/(2^q - 1), 2/2^q) against 1 - p(q).

    For integer q the comparison is exact: the left side in rationals and
    p(q) replaced by a certified upper bound.  Other q use mpmath's prime
    zeta and are returned with ``certified = False``.
    """
    if isinstance(q, int) or (isinstance(q, Fraction) and q.denominator == 1):
        q = int(q)
        lhs = max(Fraction(2, 3**q) + Fraction(1, 2**q),
                  Fraction(2, 4**q) + Fraction(1, 2**q - 1),
                  Fraction(2, 2**q))
        upper = prime_zeta_upper(q, cutoff)
        rhs = 1 - upper
        return {"q": q, "lhs": str(lhs), "rhs_lower": float(rhs), "holds": bool(gmpy2.mpq(lhs) <= rhs),
                "certified": True}
    with mpmath.workdps(40):
        q = mpmath.mpf(q)
        lhs = max(2 / mpmath.power(3, q) + 1 / mpmath.power(2, q),
                  2 / mpmath.power(4, q) + 1 / (mpmath.power(2, q) - 1),
                  2 / mpmath.power(2, q))
        rhs = 1 - mpmath.primezeta(q)
        return {"q": float(q), "lhs": float(lhs), "rhs": float(rhs), "holds": bool(lhs <= rhs),
                "certified": False}


# ---------------------------------------------------------------- recursion


@lru_cache(maxsize=None)
def _primes_cached(n: int) -> tuple[int, ...]:
    return tuple(primes_upto(n))


@lru_cache(maxsize=None)
def recursive_bound(delta: int, m: int) -> int:
    """Upper bound U(delta, m) from the prime-splitting recursion.

    U(1), U(2) are the exact values and U(3) = 3 m^2.  For delta >= 4 the
    result is the largest right-hand side among the case formulas that can
    apply, each evaluated with U in place of the unknown exact values:
    the unimodular-prefix case, and for every factorisation delta = d * e
    with d, e >= 2 the case where the last two non-unit pivots are d and e
    (e is taken as large as possible, which maximises the prime sum).
    """
    _check(delta, m)
    if delta <= 2:
        return lower_bound_value(delta, m)
    if delta == 3:
        return 3 * m * m

    def prime_sum(limit: int) -> int:
        return sum(recursive_bound(delta // p, m) for p in _primes_cached(limit))

    candidates = [prime_sum(delta) + 2 * recursive_bound(delta // 2, m)]
    for d in range(2, delta // 2 + 1):
        if delta % d:
            continue
        rest = delta // d
        value = prime_sum(rest) + 2 * recursive_bound(rest, m)
        if d == 3:
            value += recursive_bound(delta // 2, m)
        elif d >= 4:
            value += sum(recursive_bound(delta >> (ell + 1), m)
                         for ell in range((d - 1).bit_length() - 1))
        candidates.append(value)
    return max(candidates)


# -------------------------------------------------------------------- table


@dataclass(frozen=True)
class BoundsTable:
    delta: int
    m: int
    lower: int
    thm_upper: int
    glanzer: int
    glanzer_exact: bool
    recursive: int
    naive3m: int
    proximity_upper: int

    def cook_upper(self, n: int) -> int:
        return cook_bound(n, self.delta)

    @property
    def consistent(self) -> bool:
        return self.lower <= min(self.thm_upper, self.recursive, self.naive3m)


def bounds_table(delta: int, m: int) -> BoundsTable:
    thm = thm_upper_bound(delta, m)
    return BoundsTable(
        delta=delta,
        m=m,
        lower=lower_bound_value(delta, m),
        thm_upper=thm,
        glanzer=glanzer_bound(delta, m),
        glanzer_exact=glanzer_is_exact(delta),
        recursive=recursive_bound(delta, m),
        naive3m=naive_bound(delta, m),
        proximity_upper=proximity_bound(delta, m, thm),
    )


def sweep(max_delta: int, max_m: int) -> list[BoundsTable]:
    return [bounds_table(d, m) for d in range(1, max_delta + 1) for m in range(1, max_m + 1)]


def to_csv(rows: list[BoundsTable]) -> str:
    buf = io.StringIO()
    fields = list(asdict(rows[0])) if rows else []
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(asdict(r))
    return buf.getvalue()


def to_json(rows: list[BoundsTable]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=1)
