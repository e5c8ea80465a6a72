"""Basis-correlation invariants of a matroid and a distinguished pair.

For non-loops i, j the correlation constant of the pair is

    beta(M; i, j) = b * b_ij / (b_i * b_j),

and for a valid pair (neither loops, coloops nor parallel) the alpha-ratio is

    alpha(M; i, j) = b^{ij} * b_ij / (b_i^j * b_j^i).

beta > 1 means membership of i and j in a uniformly random basis is
positively correlated.  The two invariants are tied together by the exact
identity

    beta = (b^{ij} b_ij + (b_i^j + b_j^i + b_ij) b_ij)
         / (b_i^j b_j^i + (b_i^j + b_j^i + b_ij) b_ij),

equivalently  P * (1 - beta) = beta - alpha  with the factor
P = (b_i^j + b_j^i + b_ij) b_ij / (b_i^j b_j^i), which is positive exactly
when b_ij > 0.  Consequently every classifiable pair falls in exactly one
of four cases: alpha > beta > 1, alpha = beta = 1, alpha < beta < 1, or
alpha = beta = 0.

Note the third case can have alpha = 0 (whenever no basis avoids both
elements, e.g. any two edges of a cycle graph): the identity forces
alpha < beta < 1 but nothing more.  NEGATIVE therefore covers
0 <= alpha < beta < 1.

Replacing every element outside the pair by k parallel copies scales the
partition counts by k^{r-2}, k^{r-1}, k^{r-1}, k^r respectively, which
drives beta monotonically to alpha as k grows; beta_parallel_sequence
evaluates that trajectory from the counts alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .counting import BasisCounts, count_partition
from .errors import (
    DegeneratePair,
    InvalidPair,
    LoopElement,
    NoEligiblePair,
    OutOfRange,
)
from .matroid import Matroid, check_pair, is_coloop, is_loop, is_parallel


class CaseLabel(str, enum.Enum):
    POSITIVE = "POSITIVE"
    UNCORRELATED = "UNCORRELATED"
    NEGATIVE = "NEGATIVE"
    ZERO = "ZERO"
    DEGENERATE = "DEGENERATE"

    def __str__(self) -> str:  # stable serialization
        return self.value


@dataclass(frozen=True)
class CorrelationReport:
    """Counts and invariants for one distinguished pair.

    ``alpha`` is None exactly when the defining ratio is 0/0 (a coloop on
    either side), which is also when ``case_label`` is DEGENERATE.  ZERO
    marks pairs with b_ij = 0 (parallel non-loops): both invariants vanish.
    """

    pair: tuple[int, int]
    counts: BasisCounts
    alpha: Fraction | None
    beta: Fraction
    case_label: CaseLabel


@dataclass(frozen=True)
class ConvergenceTrace:
    """The exact values beta(M_k; i, j) for k = 1..k_max and their limit alpha."""

    entries: tuple[tuple[int, Fraction], ...]
    limit: Fraction
    pair: tuple[int, int] | None = None


def beta_from_counts(c: BasisCounts) -> Fraction:
    if c.b_i == 0 or c.b_j == 0:
        raise LoopElement("beta undefined: a distinguished element lies in no basis")
    return Fraction(c.b * c.b_ij, c.b_i * c.b_j)


def alpha_from_counts(c: BasisCounts) -> Fraction | None:
    """The alpha formula, or None when it degenerates to 0/0."""
    if c.b_i_only == 0 or c.b_j_only == 0:
        return None
    return Fraction(c.b_neither * c.b_ij, c.b_i_only * c.b_j_only)


def classify_counts(c: BasisCounts) -> CaseLabel:
    """Four-way classification from the counts (eligibility already checked)."""
    alpha = alpha_from_counts(c)
    if alpha is None:
        return CaseLabel.DEGENERATE
    if c.b_ij == 0:
        return CaseLabel.ZERO
    beta = beta_from_counts(c)
    if beta > 1:
        assert alpha > beta, (alpha, beta)
        return CaseLabel.POSITIVE
    if beta == 1:
        assert alpha == 1, (alpha, beta)
        return CaseLabel.UNCORRELATED
    assert alpha < beta, (alpha, beta)
    return CaseLabel.NEGATIVE


def beta_pair(m: Matroid, pair: Sequence[int], *, threads: int = 1) -> Fraction:
    """beta(M; i, j) = b * b_ij / (b_i * b_j) for non-loops i, j."""
    i, j = check_pair(m, pair)
    if is_loop(m, i) or is_loop(m, j):
        raise LoopElement(f"pair ({i}, {j}) contains a loop")
    return beta_from_counts(count_partition(m, (i, j), threads=threads))


def _validate_alpha_pair(m: Matroid, i: int, j: int) -> None:
    for e in (i, j):
        if is_loop(m, e):
            raise InvalidPair(f"element {e} is a loop")
        if is_coloop(m, e):
            raise InvalidPair(f"element {e} is a coloop")
    if is_parallel(m, i, j):
        raise InvalidPair(f"elements {i} and {j} are parallel")


def alpha_pair(m: Matroid, pair: Sequence[int], *, threads: int = 1) -> Fraction:
    """alpha(M; i, j) = b^{ij} * b_ij / (b_i^j * b_j^i) for a valid pair.

    Validity means neither element is a loop or a coloop and the two are
    not parallel.  A vanishing denominator despite validity is surfaced as
    DegeneratePair (it cannot occur for a genuine matroid, where a basis
    avoiding j can always be exchanged toward one through i).
    """
    i, j = check_pair(m, pair)
    _validate_alpha_pair(m, i, j)
    counts = count_partition(m, (i, j), threads=threads)
    alpha = alpha_from_counts(counts)
    if alpha is None:
        raise DegeneratePair(f"pair ({i}, {j}) has b_i^j * b_j^i = 0")
    return alpha


def classify_pair(m: Matroid, pair: Sequence[int], *, threads: int = 1) -> CaseLabel:
    """Which of the four cases holds for a non-loop, non-parallel pair.

    Coloops are permitted here; they make alpha degenerate (0/0) and are
    reported as DEGENERATE rather than forced into a case.
    """
    i, j = check_pair(m, pair)
    for e in (i, j):
        if is_loop(m, e):
            raise InvalidPair(f"element {e} is a loop")
    if is_parallel(m, i, j):
        raise InvalidPair(f"elements {i} and {j} are parallel")
    return classify_counts(count_partition(m, (i, j), threads=threads))


def report_for(m: Matroid, pair: Sequence[int], *, threads: int = 1,
               counts: BasisCounts | None = None) -> CorrelationReport:
    """Full CorrelationReport for a non-loop pair.

    Unlike classify_pair this accepts parallel pairs and labels them ZERO
    (b_ij = 0 forces alpha = beta = 0).
    """
    i, j = check_pair(m, pair)
    if counts is None:
        counts = count_partition(m, (i, j), threads=threads)
    beta = beta_from_counts(counts)
    alpha = alpha_from_counts(counts)
    label = classify_counts(counts)
    return CorrelationReport(pair=(i, j), counts=counts, alpha=alpha, beta=beta,
                             case_label=label)


def pair_counts_table(m: Matroid) -> dict[tuple[int, int], BasisCounts]:
    """Counts for every unordered pair from a single enumeration pass.

    One sweep over the bases feeds per-element and per-pair tallies; the
    seven counts for each pair follow arithmetically.  Loops show up as
    elements with b_e = 0.
    """
    n = m.n
    r = m.full_rank
    b = 0
    per_element = [0] * n
    per_pair: dict[tuple[int, int], int] = {}
    for s in combinations(range(n), r):
        if m.rank_of(s) != r:
            continue
        b += 1
        for e in s:
            per_element[e] += 1
        for duo in combinations(s, 2):
            per_pair[duo] = per_pair.get(duo, 0) + 1
    table = {}
    for i in range(n):
        for j in range(i + 1, n):
            b_ij = per_pair.get((i, j), 0)
            b_i, b_j = per_element[i], per_element[j]
            table[(i, j)] = BasisCounts(
                b=b, b_i=b_i, b_j=b_j, b_ij=b_ij,
                b_i_only=b_i - b_ij, b_j_only=b_j - b_ij,
                b_neither=b - b_i - b_j + b_ij,
            )
    return table


def beta_max(m: Matroid, table=None) -> tuple[Fraction, tuple[int, int]]:
    """max beta(M; i, j) over unordered pairs of distinct non-loops.

    Ties break to the lexicographically smallest witnessing pair.  Pass a
    precomputed pair_counts_table to avoid re-enumerating.
    """
    if table is None:
        table = pair_counts_table(m)
    best = None
    for pair, c in sorted(table.items()):
        if c.b_i == 0 or c.b_j == 0:
            continue
        val = Fraction(c.b * c.b_ij, c.b_i * c.b_j)
        if best is None or val > best[0]:
            best = (val, pair)
    if best is None:
        raise NoEligiblePair("beta_max needs at least two non-loops")
    return best


def _counts_pair_valid(c: BasisCounts) -> bool:
    # loops: b_e = 0; coloops: b_e = b; parallel non-loops: b_ij = 0.
    return (
        0 < c.b_i < c.b
        and 0 < c.b_j < c.b
        and c.b_ij > 0
    )


def alpha_max(m: Matroid, table=None) -> tuple[Fraction, tuple[int, int]]:
    """max alpha(M; i, j) over valid pairs, with its lexicographic witness."""
    if table is None:
        table = pair_counts_table(m)
    best = None
    for pair, c in sorted(table.items()):
        if not _counts_pair_valid(c):
            continue
        alpha = alpha_from_counts(c)
        if alpha is None:
            continue
        if best is None or alpha > best[0]:
            best = (alpha, pair)
    if best is None:
        raise NoEligiblePair("alpha_max needs a pair that is neither loop, coloop nor parallel")
    return best


def uniform_closed_form(r: int, n: int) -> tuple[Fraction, Fraction]:
    """(alpha, beta) of U_{r,n} for 1 < r < n, by the closed forms

    alpha = (r-1)(n-r-1) / (r(n-r)),   beta = n(r-1) / (r(n-1)).
    """
    if not 1 < r < n:
        raise OutOfRange(f"uniform closed forms need 1 < r < n, got r={r}, n={n}")
    alpha = Fraction((r - 1) * (n - r - 1), r * (n - r))
    beta = Fraction(n * (r - 1), r * (n - 1))
    return alpha, beta


def beta_parallel_sequence(counts: BasisCounts, k_max: int,
                           pair: tuple[int, int] | None = None) -> ConvergenceTrace:
    """beta(M_k; i, j) for k = 1..k_max from the counts of M alone.

    M_k adds k-1 parallel copies of every element outside the pair, which
    scales (b_ij, b_i^j, b_j^i, b^{ij}) by (k^{r-2}, k^{r-1}, k^{r-1}, k^r);
    after cancelling k^{2r-4},

        beta(M_k) = (k^2 b^{ij} b_ij + (k b_j^i + k b_i^j + b_ij) b_ij)
                  / (k^2 b_i^j b_j^i + (k b_j^i + k b_i^j + b_ij) b_ij).

    The k = 1 entry is beta(M); the limit is alpha(M).  Consecutive
    differences all carry the sign of b^{ij} b_ij - b_i^j b_j^i, so the
    sequence is monotone.  This consumes counts, not a matroid, so brute
    force on a physically extended matroid stays an independent check.
    """
    if k_max < 1:
        raise OutOfRange(f"k_max must be >= 1, got {k_max}")
    if counts.b_i_only == 0 or counts.b_j_only == 0:
        raise DegeneratePair("parallel-extension sequence needs b_i^j * b_j^i != 0")
    entries = []
    for k in range(1, k_max + 1):
        mixed = (k * counts.b_j_only + k * counts.b_i_only + counts.b_ij) * counts.b_ij
        num = k * k * (counts.b_neither * counts.b_ij) + mixed
        den = k * k * (counts.b_i_only * counts.b_j_only) + mixed
        entries.append((k, Fraction(num, den)))
    limit = Fraction(counts.b_neither * counts.b_ij, counts.b_i_only * counts.b_j_only)
    return ConvergenceTrace(entries=tuple(entries), limit=limit, pair=pair)


def hr_expression(m: Matroid, pair: Sequence[int], *, threads: int = 1) -> int:
    """The exact integer 2(r-1)^2 b_i b_j b_ij - r(r-1) b b_ij^2.

    This is the determinant obtained by restricting the rank-pairing form
    to a three-dimensional subspace; its sign is that of
    2(r-1)/r - beta(M; i, j) whenever b_i b_j b_ij > 0.
    """
    i, j = check_pair(m, pair)
    r = m.full_rank
    if r < 2:
        raise OutOfRange(f"expression needs rank >= 2, got r={r}")
    c = count_partition(m, (i, j), threads=threads)
    return hr_from_counts(r, c)


def hr_from_counts(r: int, c: BasisCounts) -> int:
    return 2 * (r - 1) ** 2 * c.b_i * c.b_j * c.b_ij - r * (r - 1) * c.b * c.b_ij**2


def huh_wang_bound(r: int) -> Fraction:
    """The rank-r upper bound 2(r-1)/r on the correlation constant."""
    if r < 1:
        raise OutOfRange(f"rank must be >= 1, got {r}")
    return Fraction(2 * (r - 1), r)
