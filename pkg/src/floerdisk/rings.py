"""Canonical exact arithmetic over Z, Z/n, Q and prime fields.

All values are immutable and carry their ring, so arithmetic is closed and
canonical by construction: residues live in [0, n), rationals are kept in
lowest terms with positive denominator (fractions.Fraction guarantees this).
No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InfiniteRing, NonInvertibleDenominator

INTEGERS = "Z"
INTEGERS_MOD = "Z/n"
RATIONALS = "Q"
PRIME_FIELD = "F_p"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Ring:
    """One of Z, Z/n (n >= 2), Q, or F_p (p prime).

    >>> Ring.parse("Z/8").name
    'Z/8'
    >>> Ring.parse("F5").is_finite
    True
    """

    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == INTEGERS_MOD:
            if self.modulus is None or self.modulus < 2:
                raise ValueError("Z/n requires n >= 2")
        elif self.kind == PRIME_FIELD:
            if self.modulus is None or not _is_prime(self.modulus):
                raise ValueError("prime field requires a prime modulus")
        elif self.kind in (INTEGERS, RATIONALS):
            if self.modulus is not None:
                raise ValueError("modulus only applies to finite rings")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    @classmethod
    def integers(cls) -> "Ring":
        return cls(INTEGERS)

    @classmethod
    def integers_mod(cls, n: int) -> "Ring":
        return cls(INTEGERS_MOD, n)

    @classmethod
    def rationals(cls) -> "Ring":
        return cls(RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> "Ring":
        return cls(PRIME_FIELD, p)

    @classmethod
    def parse(cls, name: str) -> "Ring":
        """Parse a ring name: "Z", "Z/<n>", "Q", "F<p>"."""
        name = name.strip()
        if name == "Z":
            return cls.integers()
        if name == "Q":
            return cls.rationals()
        if name.startswith("Z/"):
            return cls.integers_mod(int(name[2:]))
        if name.startswith("F"):
            return cls.prime_field(int(name[1:]))
        raise ValueError(f"cannot parse ring name {name!r}")

    @property
    def name(self) -> str:
        if self.kind == INTEGERS:
            return "Z"
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == INTEGERS_MOD:
            return f"Z/{self.modulus}"
        return f"F{self.modulus}"

    @property
    def is_finite(self) -> bool:
        return self.kind in (INTEGERS_MOD, PRIME_FIELD)

    @property
    def is_field(self) -> bool:
        return self.kind in (RATIONALS, PRIME_FIELD)

    def zero(self) -> "RingElement":
        return reduce(0, self)

    def one(self) -> "RingElement":
        return reduce(1, self)

    def __repr__(self):
        return f"Ring({self.name})"


@dataclass(frozen=True)
class RingElement:
    """A canonical representative together with its ring."""

    ring: Ring
    value: object  # int for Z and finite rings, Fraction for Q

    def _check(self, other: "RingElement"):
        if not isinstance(other, RingElement) or other.ring != self.ring:
            raise ValueError("ring mismatch in arithmetic")

    def __add__(self, other):
        self._check(other)
        return reduce(self.value + other.value, self.ring)

    def __sub__(self, other):
        self._check(other)
        return reduce(self.value - other.value, self.ring)

    def __mul__(self, other):
        self._check(other)
        return reduce(self.value * other.value, self.ring)

    def __neg__(self):
        return reduce(-self.value, self.ring)

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    @property
    def is_unit(self) -> bool:
        if self.ring.kind == INTEGERS:
            return self.value in (1, -1)
        if self.ring.kind == RATIONALS:
            return self.value != 0
        return gcd(int(self.value), self.ring.modulus) == 1

    def inverse(self) -> "RingElement":
        if not self.is_unit:
            raise NonInvertibleDenominator(
                f"{self.value} is not a unit in {self.ring.name}")
        if self.ring.kind == INTEGERS:
            return RingElement(self.ring, self.value)
        if self.ring.kind == RATIONALS:
            return RingElement(self.ring, 1 / Fraction(self.value))
        return RingElement(self.ring, pow(int(self.value), -1, self.ring.modulus))

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.ring.one()
        base = self
        for _ in range(exponent):
            result = result * base
        return result

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"{self.value} in {self.ring.name}"


def reduce(x, ring: Ring) -> RingElement:
    """Map an integer or fraction to its canonical representative in the ring.

    Fractions are only accepted when the denominator is invertible; in Z/n
    that means gcd(denominator, n) = 1.

    >>> reduce(16, Ring.parse("Z/8")).value
    0
    >>> reduce(Fraction(4, 6), Ring.parse("Q")).value
    Fraction(2, 3)
    """
    if isinstance(x, RingElement):
        if x.ring == ring:
            return x
        x = x.value
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise TypeError(f"cannot reduce {x!r} into {ring.name}")

    if ring.kind == RATIONALS:
        return RingElement(ring, Fraction(x))

    if ring.kind == INTEGERS:
        frac = Fraction(x)
        if frac.denominator != 1:
            raise NonInvertibleDenominator(
                f"{frac} has no integer representative")
        return RingElement(ring, int(frac))

    n = ring.modulus
    frac = Fraction(x)
    num, den = frac.numerator, frac.denominator
    if den != 1:
        if gcd(den, n) != 1:
            raise NonInvertibleDenominator(
                f"denominator {den} is a zero divisor in {ring.name}")
        return RingElement(ring, (num * pow(den, -1, n)) % n)
    return RingElement(ring, num % n)


def units_of(ring: Ring) -> list[RingElement]:
    """All invertible elements of a finite ring, sorted by representative.

    >>> [u.value for u in units_of(Ring.parse("Z/8"))]
    [1, 3, 5, 7]
    """
    if not ring.is_finite:
        raise InfiniteRing(f"{ring.name} has infinitely many elements")
    n = ring.modulus
    return [RingElement(ring, x) for x in range(n) if gcd(x, n) == 1]


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" with arbitrary-precision integers.

    Decimal notation is rejected on purpose: all inputs must be exact.
    """
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def rational_str(x) -> str:
    """Serialize a rational as "p/q" (q > 0, lowest terms) or "p"."""
    frac = Fraction(x)
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"
