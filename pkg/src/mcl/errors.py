"""Exception hierarchy shared across the package.

Every error carries an ``exit_code`` so the CLI can map failures to
distinct, documented process exit codes (see README).
"""


class MclError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class ParseError(MclError):
    """Malformed input file or unusable command-line input."""

    exit_code = 2


class InvalidPair(MclError):
    """Element pair violates a precondition (loop, coloop, parallel, bad index)."""

    exit_code = 3


class LoopElement(InvalidPair):
    """A distinguished element is a loop where a non-loop is required."""


class DegeneratePair(MclError):
    """The alpha-ratio denominator vanishes (0/0), so the value is undefined."""

    exit_code = 4


class NoEligiblePair(MclError):
    """A maximum was requested but no pair satisfies the preconditions."""

    exit_code = 5


class EnumLimitExceeded(MclError):
    """Planned subset enumeration exceeds the configured guard."""

    exit_code = 7


class ZeroInverse(MclError):
    """Multiplicative inverse of zero requested in a prime field."""


class ZeroDenominator(MclError):
    """Ratio constructed with denominator zero."""


class NotPrime(MclError):
    """A prime modulus was required."""


class InvalidRank(MclError):
    """Rank parameter outside the allowed range."""


class LoopContraction(MclError):
    """Contraction of a loop was requested (use deletion instead)."""


class InvalidMultiplicity(MclError):
    """Parallel-extension multiplicity must be at least 1."""


class NotSparsePaving(MclError):
    """Circuit list violates the sparse-paving condition."""


class OutOfRange(MclError):
    """Numeric argument outside its documented domain."""


class DisconnectedGraph(MclError):
    """A connected graph was required."""
