"""Matroid oracles: a ground set {0, ..., n-1} plus an exact rank function.

Every construction here (linear, uniform, graphic, direct sum, parallel
extension, minors, circuit lists) produces the same thing: an immutable
`Matroid` whose rank function answers subset queries.  Bases are exactly
the r-subsets of full rank; they are never materialized here, counting
lives in the counting module.

Rank functions receive sorted tuples of distinct element indices.  The
public `Matroid.rank` accepts any iterable and normalizes; enumeration
loops call `rank_of` directly with already-sorted tuples.
"""

from __future__ import annotations

from bisect import bisect_left, insort
from typing import Callable, Iterable, Sequence

from .errors import (
    InvalidMultiplicity,
    InvalidPair,
    InvalidRank,
    LoopContraction,
    NotSparsePaving,
    OutOfRange,
)
from .linalg import Matrix

RankFn = Callable[[tuple[int, ...]], int]


class Matroid:
    """Rank-function oracle, immutable after construction.

    ``pair`` optionally records a distinguished element pair; minors and
    parallel extensions keep it traceable (or drop it when an endpoint is
    removed).
    """

    def __init__(self, n: int, rank_fn: RankFn, pair: tuple[int, int] | None = None):
        if n < 0:
            raise OutOfRange(f"ground set size {n} negative")
        self.n = n
        self._rank_fn = rank_fn
        self.pair = pair
        self._full_rank: int | None = None

    def rank_of(self, subset: tuple[int, ...]) -> int:
        """Rank of a sorted tuple of distinct indices (no validation)."""
        return self._rank_fn(subset)

    def rank(self, subset: Iterable[int]) -> int:
        """Rank of an arbitrary subset of the ground set."""
        s = tuple(sorted(set(subset)))
        for e in s:
            if not 0 <= e < self.n:
                raise OutOfRange(f"element {e} outside [0, {self.n})")
        return self._rank_fn(s)

    @property
    def full_rank(self) -> int:
        """r = rank of the whole ground set, cached."""
        if self._full_rank is None:
            self._full_rank = self._rank_fn(tuple(range(self.n)))
        return self._full_rank

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, r={self.full_rank})"

    # Conveniences mirroring the module-level operations.
    def delete(self, e: int) -> "Matroid":
        return delete(self, e)

    def contract(self, e: int) -> "Matroid":
        return contract(self, e)


def _check_element(m: Matroid, e: int) -> None:
    if not 0 <= e < m.n:
        raise OutOfRange(f"element {e} outside [0, {m.n})")


def check_pair(m: Matroid, pair: Sequence[int]) -> tuple[int, int]:
    """Validate a distinguished pair: two distinct in-range indices."""
    if len(pair) != 2:
        raise InvalidPair(f"pair must have two elements, got {pair!r}")
    i, j = pair
    if i == j:
        raise InvalidPair(f"pair elements must be distinct, got ({i}, {j})")
    _check_element(m, i)
    _check_element(m, j)
    return (i, j)


def linear_matroid(matrix: Matrix, pair: tuple[int, int] | None = None) -> Matroid:
    """Column matroid of an exact matrix: rk(S) = rank of the columns in S."""
    m = Matroid(matrix.ncols, matrix.rank_of_columns, pair=pair)
    m.matrix = matrix
    return m


def uniform_matroid(r: int, n: int) -> Matroid:
    """U_{r,n}: every subset of size at most r is independent."""
    if not 0 <= r <= n:
        raise InvalidRank(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
    return Matroid(n, lambda s: min(len(s), r))


def graphic_matroid(edges: Sequence[tuple[int, int]], pair: tuple[int, int] | None = None) -> Matroid:
    """Cycle matroid of a graph given as an edge list on vertices 0..V-1.

    rk(S) = V - (number of connected components of ([V], S)).  Parallel
    edges and self-loops are allowed; a self-loop is a matroid loop.  For a
    connected graph the bases are exactly the spanning trees.
    """
    if not edges:
        raise OutOfRange("graphic matroid needs a nonempty edge list")
    edge_list = []
    nv = 0
    for u, v in edges:
        if u < 0 or v < 0:
            raise OutOfRange(f"negative vertex label in edge ({u}, {v})")
        edge_list.append((u, v))
        nv = max(nv, u + 1, v + 1)

    def rank_fn(subset: tuple[int, ...]) -> int:
        parent = list(range(nv))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        merges = 0
        for e in subset:
            u, v = edge_list[e]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                merges += 1
        return merges

    m = Matroid(len(edge_list), rank_fn, pair=pair)
    m.edges = tuple(edge_list)
    m.num_vertices = nv
    return m


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    """M1 + M2 on the disjoint union; m2's elements are re-indexed after m1's."""
    n1 = m1.n

    def rank_fn(subset: tuple[int, ...]) -> int:
        split = bisect_left(subset, n1)
        return m1.rank_of(subset[:split]) + m2.rank_of(
            tuple(x - n1 for x in subset[split:])
        )

    return Matroid(n1 + m2.n, rank_fn)


def parallel_extend(m: Matroid, pair: Sequence[int], k: int) -> Matroid:
    """Replace every element outside the pair by k parallel copies.

    The result has k*(n-2) + 2 elements.  The distinguished pair occupies
    indices 0 and 1; the copies of the s-th remaining original (in
    increasing original order) occupy the contiguous block
    [2 + s*k, 2 + (s+1)*k).  Rank of a subset is the rank of the set of
    distinct originals it touches, so each copy is parallel to its
    original.  k = 1 reproduces the original rank function up to this
    fixed relabeling (the identity when pair == (0, 1)).
    """
    i, j = check_pair(m, pair)
    if k < 1:
        raise InvalidMultiplicity(f"multiplicity k must be >= 1, got {k}")
    others = [t for t in range(m.n) if t != i and t != j]
    origin = [i, j] + [t for t in others for _ in range(k)]

    def rank_fn(subset: tuple[int, ...]) -> int:
        touched = {origin[e] for e in subset}
        return m.rank_of(tuple(sorted(touched)))

    ext = Matroid(len(origin), rank_fn, pair=(0, 1))
    ext.element_origin = tuple(origin)
    return ext


def _removed_maps(n: int, e: int, pair):
    """Dense renumbering after removing e: old->new map and the remapped pair."""
    old_to_new = {old: old - (1 if old > e else 0) for old in range(n) if old != e}
    new_pair = None
    if pair is not None and e not in pair:
        new_pair = (old_to_new[pair[0]], old_to_new[pair[1]])
    return old_to_new, new_pair


def delete(m: Matroid, e: int) -> Matroid:
    """M \\ e; remaining elements are renumbered densely, keeping order.

    The minor carries ``element_map`` (old index -> new index) so a
    distinguished pair stays traceable; the recorded pair is remapped
    automatically (or dropped if e was one of its endpoints).
    """
    _check_element(m, e)
    old_to_new, new_pair = _removed_maps(m.n, e, m.pair)

    def rank_fn(subset: tuple[int, ...]) -> int:
        return m.rank_of(tuple(x if x < e else x + 1 for x in subset))

    minor = Matroid(m.n - 1, rank_fn, pair=new_pair)
    minor.element_map = old_to_new
    return minor


def contract(m: Matroid, e: int) -> Matroid:
    """M / e for a non-loop e: rk'(S) = rk(S + e) - 1, renumbered densely.

    Contracting a loop is rejected rather than silently treated as a
    deletion; the basis-count identities used downstream assume non-loops.
    """
    _check_element(m, e)
    if is_loop(m, e):
        raise LoopContraction(f"element {e} is a loop; delete it instead")
    old_to_new, new_pair = _removed_maps(m.n, e, m.pair)

    def rank_fn(subset: tuple[int, ...]) -> int:
        lifted = [x if x < e else x + 1 for x in subset]
        insort(lifted, e)
        return m.rank_of(tuple(lifted)) - 1

    minor = Matroid(m.n - 1, rank_fn, pair=new_pair)
    minor.element_map = old_to_new
    return minor


def is_loop(m: Matroid, e: int) -> bool:
    """A loop lies in no basis: rk({e}) = 0."""
    _check_element(m, e)
    return m.rank_of((e,)) == 0


def is_coloop(m: Matroid, e: int) -> bool:
    """A coloop lies in every basis: rk(E - e) = r - 1."""
    _check_element(m, e)
    rest = tuple(x for x in range(m.n) if x != e)
    return m.rank_of(rest) == m.full_rank - 1


def is_parallel(m: Matroid, e: int, f: int) -> bool:
    """Parallel elements: two non-loops whose pair has rank 1."""
    _check_element(m, e)
    _check_element(m, f)
    if e == f:
        raise InvalidPair("is_parallel needs two distinct elements")
    if is_loop(m, e) or is_loop(m, f):
        return False
    return m.rank_of((min(e, f), max(e, f))) == 1


class CircuitListMatroid(Matroid):
    """Sparse paving matroid given by its list of r-element circuits.

    Every r-subset is a basis unless it appears in ``circuits``; smaller
    sets are independent, larger sets have rank r.  The rank function is
    only a matroid when the circuit list satisfies the sparse-paving
    condition (pairwise symmetric difference at least 2, see
    is_sparse_paving); use sparse_paving_from_circuits for a validated
    constructor.
    """

    def __init__(self, n: int, r: int, circuits: Iterable[Iterable[int]]):
        circs = tuple(sorted(tuple(sorted(c)) for c in circuits))
        circuit_set = frozenset(frozenset(c) for c in circs)

        def rank_fn(subset: tuple[int, ...]) -> int:
            k = len(subset)
            if k < r:
                return k
            if k == r and frozenset(subset) in circuit_set:
                return r - 1
            return r

        super().__init__(n, rank_fn)
        self.r = r
        self.circuits = circs
        self._circuit_set = circuit_set


def sparse_paving_from_circuits(
    n: int, r: int, circuits: Iterable[Iterable[int]]
) -> CircuitListMatroid:
    """Validated sparse-paving constructor.

    Raises NotSparsePaving if a listed set is not an r-subset of [0, n) or
    if two listed circuits agree in r - 1 elements (such a pair would force
    an (r-1)-subset to be dependent, contradicting the paving property).
    """
    if not 0 < r < n:
        raise OutOfRange(f"sparse paving needs 0 < r < n, got r={r}, n={n}")
    m = CircuitListMatroid(n, r, circuits)
    for c in m.circuits:
        if len(set(c)) != r:
            raise NotSparsePaving(f"listed circuit {c} is not an {r}-subset")
        if c[0] < 0 or c[-1] >= n:
            raise NotSparsePaving(f"circuit {c} has elements outside [0, {n})")
    if not is_sparse_paving(m):
        raise NotSparsePaving("two listed circuits differ in fewer than 2 elements")
    return m


def is_sparse_paving(m: CircuitListMatroid) -> bool:
    """True iff every pair of listed circuits differs in at least 2 elements.

    Equivalently the listed r-sets form a stable set in the Johnson graph,
    which is exactly the condition for every listed set to be a genuine
    circuit of a (sparse paving) matroid.
    """
    circs = [set(c) for c in m.circuits]
    for a in range(len(circs)):
        for b in range(a + 1, len(circs)):
            if len(circs[a] & circs[b]) > m.r - 2:
                return False
    return True
