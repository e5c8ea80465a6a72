"""mcl: exact basis-correlation invariants of matroids.

Everything is computed in exact arithmetic (arbitrary-precision integers,
rationals, prime fields); there is no floating point anywhere.  The two
central invariants for a pair of elements i, j and a uniformly random
basis B are

    beta(M; i, j)  = b b_ij / (b_i b_j)          (correlation constant)
    alpha(M; i, j) = b^{ij} b_ij / (b_i^j b_j^i) (alpha-ratio)

where the b's count bases by membership of i and j.
"""

__version__ = "0.1.0"

from .constructions import (
    alpha_closed_form,
    build_M_rp,
    build_M_rp_rational,
    closed_form_counts,
    generate_sparse_paving,
    m_rp_matroid,
)
from .correlation import (
    CaseLabel,
    ConvergenceTrace,
    CorrelationReport,
    alpha_max,
    alpha_pair,
    beta_max,
    beta_pair,
    beta_parallel_sequence,
    classify_pair,
    hr_expression,
    huh_wang_bound,
    pair_counts_table,
    report_for,
    uniform_closed_form,
)
from .counting import (
    BasisCounts,
    count_bases,
    count_partition,
    count_spanning_trees_matrix_tree,
    iter_bases,
    list_bases,
    with_rank_cache,
)
from .errors import (
    DegeneratePair,
    DisconnectedGraph,
    EnumLimitExceeded,
    InvalidMultiplicity,
    InvalidPair,
    InvalidRank,
    LoopContraction,
    LoopElement,
    MclError,
    NoEligiblePair,
    NotPrime,
    NotSparsePaving,
    OutOfRange,
    ParseError,
    ZeroDenominator,
    ZeroInverse,
)
from .exact import (
    PrimeField,
    PrimeFieldElement,
    Ratio,
    ff_inv,
    format_ratio,
    is_prime,
    parse_ratio,
    ratio_of,
)
from .linalg import Matrix, format_matrix, is_independent, load_matrix, parse_matrix, rank
from .matroid import (
    CircuitListMatroid,
    Matroid,
    contract,
    delete,
    direct_sum,
    graphic_matroid,
    is_coloop,
    is_loop,
    is_parallel,
    is_sparse_paving,
    linear_matroid,
    parallel_extend,
    sparse_paving_from_circuits,
    uniform_matroid,
)
