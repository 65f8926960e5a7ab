"""Exact rationals and rational interval arithmetic.

Rationals are plain ``fractions.Fraction`` (always reduced, positive
denominator). This module adds parsing/formatting and the closed-interval
type used for every rigorous enclosure in the proof path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def rat(value: int | str | Fraction) -> Fraction:
    """Build an exact rational from an int, Fraction, "p/q" or decimal string.

    Decimal literals are exact: rat("1.136") == 1136/1000 reduced.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot build a rational from {value!r}")


def rat_str(q: Fraction) -> str:
    """Canonical "p/q" form with explicit denominator (zero is "0/1")."""
    return f"{q.numerator}/{q.denominator}"


def rat_show(q: Fraction) -> str:
    """Short display form: "3", "-1/2"."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _floor_to_grid(q: Fraction, bits: int) -> Fraction:
    step = Fraction(1, 2**bits)
    return (q.numerator * 2**bits // q.denominator) * step


def _ceil_to_grid(q: Fraction, bits: int) -> Fraction:
    step = Fraction(1, 2**bits)
    return (-((-q.numerator) * 2**bits // q.denominator)) * step


@dataclass(frozen=True)
class RatInterval:
    """Closed interval [lo, hi] with exact rational endpoints.

    All operations are inclusion-monotone: if x' is contained in x then
    op(x') is contained in op(x).
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, q: Fraction | int) -> "RatInterval":
        q = rat(q)
        return cls(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> "RatInterval":
        return RatInterval(-self.hi, -self.lo)

    def __mul__(self, other: "RatInterval") -> "RatInterval":
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RatInterval(min(products), max(products))

    def scale(self, q: Fraction | int) -> "RatInterval":
        q = rat(q)
        if q >= 0:
            return RatInterval(self.lo * q, self.hi * q)
        return RatInterval(self.hi * q, self.lo * q)

    def shift(self, q: Fraction | int) -> "RatInterval":
        q = rat(q)
        return RatInterval(self.lo + q, self.hi + q)

    def power(self, n: int) -> "RatInterval":
        """Integer power, tight for the even case straddling zero."""
        if n < 0:
            raise ValueError("negative powers are not supported")
        if n == 0:
            return RatInterval.point(1)
        if n % 2 == 1 or self.lo >= 0:
            return RatInterval(self.lo**n, self.hi**n)
        if self.hi <= 0:
            return RatInterval(self.hi**n, self.lo**n)
        return RatInterval(Fraction(0), max(self.lo**n, self.hi**n))

    def contains(self, q: Fraction | int) -> bool:
        q = rat(q)
        return self.lo <= q <= self.hi

    def contains_interval(self, other: "RatInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def sign(self) -> int | None:
        """+1 / -1 when the interval excludes 0, 0 for the point 0, else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 and self.hi == 0:
            return 0
        return None

    def outward_round(self, bits: int) -> "RatInterval":
        """Round endpoints outward to the dyadic grid of step 2^-bits."""
        return RatInterval(_floor_to_grid(self.lo, bits), _ceil_to_grid(self.hi, bits))
