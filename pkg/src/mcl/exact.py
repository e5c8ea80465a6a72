"""Exact arithmetic: unbounded integers, rationals, prime fields.

All counts in this package are plain Python ``int`` (arbitrary precision,
no overflow possible).  Rationals are ``fractions.Fraction``, which already
guarantees lowest terms and a positive denominator, so equality is
canonical-form equality.  This module adds the prime-field layer plus the
canonical constructors and serializers used everywhere else.  There is no
floating point anywhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotPrime, ParseError, ZeroDenominator, ZeroInverse

# Exact rational type used throughout; see ratio_of / format_ratio.
Ratio = Fraction


def is_prime(p: int) -> bool:
    """Deterministic trial division, adequate for desk-scale moduli."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeFieldElement:
    """An element of F_p: a residue in [0, p) together with its prime modulus."""

    residue: int
    p: int

    def _check(self, other: "PrimeFieldElement") -> None:
        if self.p != other.p:
            raise ValueError(f"mixed moduli {self.p} and {other.p}")

    def __add__(self, other: "PrimeFieldElement") -> "PrimeFieldElement":
        self._check(other)
        return PrimeFieldElement((self.residue + other.residue) % self.p, self.p)

    def __sub__(self, other: "PrimeFieldElement") -> "PrimeFieldElement":
        self._check(other)
        return PrimeFieldElement((self.residue - other.residue) % self.p, self.p)

    def __mul__(self, other: "PrimeFieldElement") -> "PrimeFieldElement":
        self._check(other)
        return PrimeFieldElement((self.residue * other.residue) % self.p, self.p)

    def __truediv__(self, other: "PrimeFieldElement") -> "PrimeFieldElement":
        self._check(other)
        return self * ff_inv(other)

    def __neg__(self) -> "PrimeFieldElement":
        return PrimeFieldElement(-self.residue % self.p, self.p)

    def __bool__(self) -> bool:
        return self.residue != 0

    def __repr__(self) -> str:
        return f"{self.residue} (mod {self.p})"


class PrimeField:
    """The prime field F_p.  Primality of p is validated at construction.

    A composite modulus would silently break every rank computation built
    on top, so this check is not optional.
    """

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"modulus {p} is not prime")
        self.p = p

    def __call__(self, value: int) -> PrimeFieldElement:
        return PrimeFieldElement(value % self.p, self.p)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


def ff_inv(a: PrimeFieldElement) -> PrimeFieldElement:
    """Multiplicative inverse in F_p, so that a * ff_inv(a) = 1.

    Raises ZeroInverse for the zero element.
    """
    if a.residue % a.p == 0:
        raise ZeroInverse(f"0 has no inverse mod {a.p}")
    return PrimeFieldElement(pow(a.residue, -1, a.p), a.p)


def ratio_of(num: int, den: int) -> Ratio:
    """Exact rational num/den in lowest terms with positive denominator."""
    if den == 0:
        raise ZeroDenominator(f"ratio {num}/0 has zero denominator")
    return Fraction(num, den)


def format_ratio(q: Ratio) -> str:
    """Canonical string form ``num/den``, e.g. 36/35, 0/1, 1/1."""
    return f"{q.numerator}/{q.denominator}"


def parse_ratio(text: str) -> Ratio:
    """Inverse of format_ratio; also accepts a bare integer or sign."""
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise ZeroDenominator(f"ratio {text!r} has zero denominator") from None
    except ValueError:
        raise ParseError(f"not a rational: {text!r}") from None
