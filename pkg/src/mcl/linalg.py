"""Dense exact matrices over F_p or Q with rank and independence queries.

Columns are the vectors of a configuration; rank queries select a subset of
columns and run plain Gaussian elimination with exact field arithmetic
(ints mod p, or fractions.Fraction over Q).  Matrices are immutable after
construction and rank queries are pure functions, so instances are safe to
share across threads.

Matrix text format (one configuration per file)::

    field 2          # or: field Q
    dims 4 8
    1 0 0 0 0 1 0 1  # r rows of n whitespace-separated entries
    ...

Entries of a prime-field matrix are integers, reduced mod p on parse.
Entries of a rational matrix are integers or fractions ``a/b``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotPrime, OutOfRange, ParseError
from .exact import is_prime

# Field tags: a prime p for F_p, or RATIONALS for Q.
RATIONALS = "Q"


def _normalize_cols(cols: Iterable[int], n: int) -> tuple[int, ...]:
    """Sorted distinct column indices, validated against [0, n)."""
    out = tuple(sorted(cols))
    for idx, c in enumerate(out):
        if not 0 <= c < n:
            raise OutOfRange(f"column index {c} outside [0, {n})")
        if idx and out[idx - 1] == c:
            raise OutOfRange(f"duplicate column index {c}")
    return out


def _rank_gf(columns: Sequence[tuple[int, ...]], p: int) -> int:
    """Rank of the given column vectors over F_p by incremental elimination."""
    pivots: list[tuple[int, list[int]]] = []
    for col in columns:
        v = list(col)
        for row, pivot in pivots:
            c = v[row]
            if c:
                v = [(a - c * b) % p for a, b in zip(v, pivot)]
        for row, a in enumerate(v):
            if a:
                inv = pow(a, -1, p)
                pivots.append((row, [x * inv % p for x in v]))
                break
    return len(pivots)


def _rank_q(columns: Sequence[tuple[Fraction, ...]]) -> int:
    """Rank of the given column vectors over Q (exact rationals)."""
    pivots: list[tuple[int, list[Fraction]]] = []
    for col in columns:
        v = list(col)
        for row, pivot in pivots:
            c = v[row]
            if c:
                v = [a - c * b for a, b in zip(v, pivot)]
        for row, a in enumerate(v):
            if a:
                pivots.append((row, [x / a for x in v]))
                break
    return len(pivots)


class Matrix:
    """An r x n matrix over F_p (``field`` is the prime p) or Q (``field`` is RATIONALS)."""

    __slots__ = ("field", "nrows", "ncols", "rows", "columns")

    def __init__(self, field, rows: Sequence[Sequence]):
        if field != RATIONALS and not is_prime(field):
            raise NotPrime(f"matrix field modulus {field} is not prime")
        if not rows or not rows[0]:
            raise OutOfRange("matrix dimensions must be positive")
        ncols = len(rows[0])
        norm_rows = []
        for row in rows:
            if len(row) != ncols:
                raise OutOfRange("ragged rows in matrix")
            if field == RATIONALS:
                norm_rows.append(tuple(Fraction(x) for x in row))
            else:
                norm_rows.append(tuple(int(x) % field for x in row))
        self.field = field
        self.nrows = len(norm_rows)
        self.ncols = ncols
        self.rows = tuple(norm_rows)
        self.columns = tuple(tuple(r[j] for r in self.rows) for j in range(ncols))

    @classmethod
    def over_prime_field(cls, p: int, rows: Sequence[Sequence[int]]) -> "Matrix":
        return cls(p, rows)

    @classmethod
    def over_rationals(cls, rows: Sequence[Sequence]) -> "Matrix":
        return cls(RATIONALS, rows)

    def rank_of_columns(self, cols: Sequence[int]) -> int:
        """Rank of the selected columns; assumes indices already valid and sorted."""
        selected = [self.columns[c] for c in cols]
        if self.field == RATIONALS:
            return _rank_q(selected)
        return _rank_gf(selected, self.field)

    def __repr__(self) -> str:
        return f"Matrix(field={self.field}, {self.nrows}x{self.ncols})"


def rank(m: Matrix, cols: Iterable[int]) -> int:
    """Exact rank of the selected columns; the empty subset has rank 0."""
    return m.rank_of_columns(_normalize_cols(cols, m.ncols))


def is_independent(m: Matrix, cols: Iterable[int]) -> bool:
    """True iff the selected columns are linearly independent."""
    subset = _normalize_cols(cols, m.ncols)
    return m.rank_of_columns(subset) == len(subset)


def format_matrix(m: Matrix) -> str:
    """Serialize to the matrix text format (round-trips through parse_matrix)."""
    header = f"field {m.field}\ndims {m.nrows} {m.ncols}\n"
    lines = []
    for row in m.rows:
        if m.field == RATIONALS:
            cells = [str(x) if x.denominator != 1 else str(x.numerator) for x in row]
        else:
            cells = [str(x) for x in row]
        lines.append(" ".join(cells))
    return header + "\n".join(lines) + "\n"


def parse_matrix(text: str) -> Matrix:
    """Parse the matrix text format; raises ParseError on malformed input."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) < 2:
        raise ParseError("matrix file needs a field line and a dims line")
    field_parts = lines[0].split()
    if len(field_parts) != 2 or field_parts[0] != "field":
        raise ParseError(f"expected 'field p' or 'field Q', got {lines[0]!r}")
    if field_parts[1] == RATIONALS:
        field = RATIONALS
    else:
        try:
            field = int(field_parts[1])
        except ValueError:
            raise ParseError(f"bad field tag {field_parts[1]!r}") from None
        if not is_prime(field):
            raise ParseError(f"field modulus {field} is not prime")
    dims_parts = lines[1].split()
    if len(dims_parts) != 3 or dims_parts[0] != "dims":
        raise ParseError(f"expected 'dims r n', got {lines[1]!r}")
    try:
        r, n = int(dims_parts[1]), int(dims_parts[2])
    except ValueError:
        raise ParseError(f"bad dims line {lines[1]!r}") from None
    if r <= 0 or n <= 0:
        raise ParseError("matrix dimensions must be positive")
    if len(lines) != 2 + r:
        raise ParseError(f"expected {r} entry rows, found {len(lines) - 2}")
    rows = []
    for ln in lines[2:]:
        cells = ln.split()
        if len(cells) != n:
            raise ParseError(f"expected {n} entries per row, got {len(cells)}: {ln!r}")
        if field == RATIONALS:
            try:
                rows.append([Fraction(c) for c in cells])
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad rational entry in row {ln!r}") from None
        else:
            try:
                rows.append([int(c) for c in cells])
            except ValueError:
                raise ParseError(f"bad integer entry in row {ln!r}") from None
    return Matrix(field, rows)


def load_matrix(path) -> Matrix:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())
