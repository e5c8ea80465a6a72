"""Rank-r vector configurations over F_p (and Q) with a positively
correlated pair, their closed-form basis counts, and a seeded sparse-paving
instance generator.

The configuration M_{r,p} consists of the 2 + p(r-1) columns

    e_1,   v = e_2 + ... + e_r,   v_{k,l} = k e_1 + e_l
                                  for 2 <= l <= r and 0 <= k < p,

in exactly that order (v_{k,l} sorted by (l, k)), so the distinguished
pair is always the column pair (0, 1) = (e_1, v).  Over F_p the partition
counts for that pair have closed forms

    b_ij    = (r-1) p^{r-2}
    b_i^j   = p^{r-1}
    b_j^i   = p^{r-2} (p-1) (2 + (r-1)(r-2)) / 2
    b^{ij}  = (r-1) (p-1) p^{r-1} / 2

and consequently alpha(M_{r,p}; i, j) = (r-1)^2 / (2 + (r-1)(r-2))
independently of p, maximized at r = 5 where it equals 8/7.  Read over Q
the same columns give the same counts except

    b_j^i   = p^{r-1} - 1 + (r-1)(r-2) (p-1) p^{r-2} / 2,

because a sum of the nonnegative offsets k_l vanishes over Q only when all
of them do, not merely when it is divisible by p.
"""

from __future__ import annotations

import random
import warnings
from fractions import Fraction
from itertools import combinations

from .counting import BasisCounts
from .errors import NotPrime, OutOfRange
from .exact import is_prime
from .linalg import RATIONALS, Matrix
from .matroid import CircuitListMatroid, Matroid, linear_matroid, sparse_paving_from_circuits

GF_FIELD = "gf"
Q_FIELD = "q"


def _m_rp_rows(r: int, p: int) -> list[list[int]]:
    """Row-major integer entries of the configuration, columns as documented."""
    cols: list[list[int]] = []
    e1 = [1] + [0] * (r - 1)
    cols.append(e1)
    cols.append([0] + [1] * (r - 1))
    for ell in range(2, r + 1):
        for k in range(p):
            col = [0] * r
            col[0] = k
            col[ell - 1] = 1
            cols.append(col)
    return [[col[row] for col in cols] for row in range(r)]


def build_M_rp(r: int, p: int) -> tuple[Matrix, tuple[int, int]]:
    """The configuration over F_p together with its distinguished pair (0, 1)."""
    if r < 2:
        raise OutOfRange(f"configuration needs rank r >= 2, got {r}")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return Matrix(p, _m_rp_rows(r, p)), (0, 1)


def build_M_rp_rational(r: int, p: int) -> tuple[Matrix, tuple[int, int]]:
    """The same columns read as integer vectors in Q^r.

    Primality of p is not needed over Q; any integer p >= 2 is accepted,
    with a warning for composite p since the closed-form count b_j^i is
    only asserted for primes (it does hold for composites as well, the
    sum-of-nonnegatives argument never uses primality).
    """
    if r < 2:
        raise OutOfRange(f"configuration needs rank r >= 2, got {r}")
    if p < 2:
        raise OutOfRange(f"configuration needs p >= 2, got {p}")
    if not is_prime(p):
        warnings.warn(f"building the rational configuration with composite p={p}")
    return Matrix(RATIONALS, _m_rp_rows(r, p)), (0, 1)


def m_rp_matroid(r: int, p: int, field: str = GF_FIELD) -> Matroid:
    """Convenience: the matroid of the configuration with the pair attached."""
    if field == GF_FIELD:
        matrix, pair = build_M_rp(r, p)
    elif field == Q_FIELD:
        matrix, pair = build_M_rp_rational(r, p)
    else:
        raise OutOfRange(f"field must be {GF_FIELD!r} or {Q_FIELD!r}, got {field!r}")
    return linear_matroid(matrix, pair=pair)


def _exact_half(value: int) -> int:
    half, rem = divmod(value, 2)
    assert rem == 0, f"count formula produced odd intermediate {value}"
    return half


def closed_form_counts(r: int, p: int, field: str = GF_FIELD) -> BasisCounts:
    """The partition counts of the distinguished pair, by formula.

    The divisions by 2 are exact: 2 + (r-1)(r-2) is always even, and
    (p-1) p^{r-1} is even for every p >= 2, r >= 2.
    """
    if r < 2:
        raise OutOfRange(f"closed forms need r >= 2, got {r}")
    if field == GF_FIELD:
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
    elif field == Q_FIELD:
        if p < 2:
            raise OutOfRange(f"closed forms need p >= 2, got {p}")
    else:
        raise OutOfRange(f"field must be {GF_FIELD!r} or {Q_FIELD!r}, got {field!r}")
    b_ij = (r - 1) * p ** (r - 2)
    b_i_only = p ** (r - 1)
    b_neither = _exact_half((r - 1) * (p - 1) * p ** (r - 1))
    if field == GF_FIELD:
        b_j_only = _exact_half(p ** (r - 2) * (p - 1) * (2 + (r - 1) * (r - 2)))
    else:
        b_j_only = p ** (r - 1) - 1 + _exact_half((r - 1) * (r - 2) * (p - 1) * p ** (r - 2))
    counts = BasisCounts.from_partition(b_ij, b_i_only, b_j_only, b_neither)
    counts.validate()
    return counts


def alpha_closed_form(r: int) -> Fraction:
    """alpha of the configuration: (r-1)^2 / (2 + (r-1)(r-2)), independent of p."""
    if r < 2:
        raise OutOfRange(f"closed form needs r >= 2, got {r}")
    return Fraction((r - 1) ** 2, 2 + (r - 1) * (r - 2))


def generate_sparse_paving(n: int, r: int, target_circuits: int, seed: int) -> CircuitListMatroid:
    """Greedy seeded sparse-paving instance: scan a shuffled list of all
    r-subsets, keeping each one that stays pairwise at distance >= 2 from
    those already kept, until target_circuits are collected or the scan
    ends.  The result always validates; the achieved circuit count may be
    smaller than requested.
    """
    if not 0 < r < n:
        raise OutOfRange(f"sparse paving needs 0 < r < n, got r={r}, n={n}")
    if target_circuits < 0:
        raise OutOfRange(f"target_circuits must be >= 0, got {target_circuits}")
    subsets = list(combinations(range(n), r))
    rng = random.Random(seed)
    rng.shuffle(subsets)
    chosen: list[tuple[int, ...]] = []
    for s in subsets:
        if len(chosen) >= target_circuits:
            break
        ss = set(s)
        if all(len(ss & set(c)) <= r - 2 for c in chosen):
            chosen.append(s)
    return sparse_paving_from_circuits(n, r, chosen)
