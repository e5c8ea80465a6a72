"""Exact basis counting by subset enumeration, plus the Matrix-Tree oracle.

Enumeration runs over r-subsets in lexicographic order (itertools
.combinations is exactly the standard lexicographic successor).  The
partition for a distinguished pair (i, j) classifies every basis by
membership of i and j into the four disjoint classes

    b_ij      bases containing both,
    b_i_only  bases containing i but not j   (b_i^j = b_i - b_ij),
    b_j_only  bases containing j but not i   (b_j^i = b_j - b_ij),
    b_neither bases avoiding both            (b^{ij} = b - b_i - b_j + b_ij).

Counts are exact Python ints.  Work may be partitioned across workers by
the first element of the combination; integer sums make the result
identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import DisconnectedGraph, OutOfRange
from .matroid import Matroid, check_pair


@dataclass(frozen=True)
class BasisCounts:
    """The seven exact counts for a distinguished pair of elements."""

    b: int
    b_i: int
    b_j: int
    b_ij: int
    b_i_only: int
    b_j_only: int
    b_neither: int

    @classmethod
    def from_partition(cls, b_ij: int, b_i_only: int, b_j_only: int, b_neither: int) -> "BasisCounts":
        return cls(
            b=b_ij + b_i_only + b_j_only + b_neither,
            b_i=b_ij + b_i_only,
            b_j=b_ij + b_j_only,
            b_ij=b_ij,
            b_i_only=b_i_only,
            b_j_only=b_j_only,
            b_neither=b_neither,
        )

    def validate(self) -> None:
        assert self.b == self.b_ij + self.b_i_only + self.b_j_only + self.b_neither
        assert self.b_i == self.b_ij + self.b_i_only
        assert self.b_j == self.b_ij + self.b_j_only
        assert min(self.b, self.b_i, self.b_j, self.b_ij,
                   self.b_i_only, self.b_j_only, self.b_neither) >= 0

    def as_tuple(self) -> tuple[int, int, int, int, int, int, int]:
        return (self.b, self.b_i, self.b_j, self.b_ij,
                self.b_i_only, self.b_j_only, self.b_neither)


def subsets_to_scan(n: int, r: int) -> int:
    """Number of r-subsets a single enumeration pass will visit."""
    return math.comb(n, r)


def _chunks(values: Sequence[int], workers: int) -> list[Sequence[int]]:
    return [values[w::workers] for w in range(workers)]


def _count_chunk(m: Matroid, r: int, firsts: Sequence[int]) -> int:
    n = m.n
    rank_of = m.rank_of
    total = 0
    for f in firsts:
        for rest in combinations(range(f + 1, n), r - 1):
            if rank_of((f,) + rest) == r:
                total += 1
    return total


def count_bases(m: Matroid, *, threads: int = 1) -> int:
    """Exact number of bases (r-subsets of full rank); 1 for rank 0."""
    r = m.full_rank
    if r == 0:
        return 1
    firsts = list(range(m.n - r + 1))
    if threads <= 1:
        return _count_chunk(m, r, firsts)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda c: _count_chunk(m, r, c), _chunks(firsts, threads))
    return sum(parts)


def _partition_chunk(m: Matroid, r: int, i: int, j: int, firsts: Sequence[int]):
    n = m.n
    rank_of = m.rank_of
    c_ij = c_i = c_j = c_no = 0
    for f in firsts:
        for rest in combinations(range(f + 1, n), r - 1):
            s = (f,) + rest
            if rank_of(s) != r:
                continue
            has_i = i in s
            has_j = j in s
            if has_i and has_j:
                c_ij += 1
            elif has_i:
                c_i += 1
            elif has_j:
                c_j += 1
            else:
                c_no += 1
    return c_ij, c_i, c_j, c_no


def count_partition(m: Matroid, pair: Sequence[int], *, threads: int = 1) -> BasisCounts:
    """One enumeration pass classifying every basis by membership of i and j."""
    i, j = check_pair(m, pair)
    r = m.full_rank
    if r == 0:
        return BasisCounts.from_partition(0, 0, 0, 1)
    firsts = list(range(m.n - r + 1))
    if threads <= 1:
        parts = [_partition_chunk(m, r, i, j, firsts)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(lambda c: _partition_chunk(m, r, i, j, c), _chunks(firsts, threads))
            )
    c_ij = sum(p[0] for p in parts)
    c_i = sum(p[1] for p in parts)
    c_j = sum(p[2] for p in parts)
    c_no = sum(p[3] for p in parts)
    counts = BasisCounts.from_partition(c_ij, c_i, c_j, c_no)
    counts.validate()
    return counts


def iter_bases(m: Matroid) -> Iterator[tuple[int, ...]]:
    """Yield bases as sorted tuples, in lexicographic order."""
    r = m.full_rank
    for s in combinations(range(m.n), r):
        if m.rank_of(s) == r:
            yield s


MATERIALIZE_LIMIT = 16


def list_bases(m: Matroid) -> list[tuple[int, ...]]:
    """Materialized basis list, guarded to small ground sets (debug aid)."""
    if m.n > MATERIALIZE_LIMIT:
        raise OutOfRange(
            f"basis materialization is limited to n <= {MATERIALIZE_LIMIT}, got n={m.n}"
        )
    return list(iter_bases(m))


def with_rank_cache(m: Matroid, max_size: int = 1 << 20) -> Matroid:
    """Wrap an oracle with a bounded rank memo keyed by subset bitmask.

    Off by default everywhere; counts are identical with or without it.
    """
    cache: dict[int, int] = {}

    def rank_fn(subset: tuple[int, ...]) -> int:
        key = 0
        for e in subset:
            key |= 1 << e
        hit = cache.get(key)
        if hit is None:
            hit = m.rank_of(subset)
            if len(cache) < max_size:
                cache[key] = hit
        return hit

    return Matroid(m.n, rank_fn, pair=m.pair)


def _det_bareiss(a: list[list[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((t for t in range(k + 1, n) if a[t][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for t in range(k + 1, n):
            for u in range(k + 1, n):
                a[t][u] = (a[t][u] * a[k][k] - a[t][k] * a[k][u]) // prev
            a[t][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def count_spanning_trees_matrix_tree(edges: Sequence[tuple[int, int]]) -> int:
    """Spanning-tree count of a connected multigraph via the Laplacian minor.

    Independent of basis enumeration: builds the V x V Laplacian over the
    integers (self-loops ignored, parallel edges accumulate) and returns
    the determinant of the principal minor at vertex 0, computed exactly.
    """
    if not edges:
        raise OutOfRange("matrix-tree needs a nonempty edge list")
    nv = 1 + max(max(u, v) for u, v in edges)
    parent = list(range(nv))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    roots = {find(x) for x in range(nv)}
    if len(roots) != 1:
        raise DisconnectedGraph(f"graph has {len(roots)} components")
    lap = [[0] * nv for _ in range(nv)]
    for u, v in edges:
        if u == v:
            continue
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    minor = [row[1:] for row in lap[1:]]
    return _det_bareiss(minor)


def parse_edge_file(text: str) -> list[tuple[int, int]]:
    """Parse a text edge list: one ``u v`` pair per line, '#' comments allowed."""
    from .errors import ParseError

    edges = []
    for ln_no, ln in enumerate(text.splitlines(), start=1):
        stripped = ln.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise ParseError(f"line {ln_no}: expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {ln_no}: vertex labels must be integers: {ln!r}") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {ln_no}: vertex labels must be nonnegative: {ln!r}")
        edges.append((u, v))
    if not edges:
        raise ParseError("edge list is empty")
    return edges
