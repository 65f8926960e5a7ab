"""Exact polynomials in pi over the rationals, with rigorous enclosures.

A PiPoly is an element of Q[pi]; since pi is transcendental, a nonzero
PiPoly never evaluates to the real number 0, so its sign can always be
decided by refining the pi enclosure far enough.

The pi enclosure comes from Machin's formula
    pi/4 = 4*arctan(1/5) - arctan(1/239)
with the alternating-series bracket for each arctan, so every bound is an
exact rational and enclosures are nested as precision grows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .rationals import RatInterval, rat, rat_show, rat_str


class PrecisionExhausted(Exception):
    """A sign decision did not resolve within the precision cap."""


def _strip(coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return coeffs[:n]


@dataclass(frozen=True)
class PiPoly:
    """Polynomial in pi; coeffs[i] is the rational coefficient of pi^i."""

    coeffs: tuple[Fraction, ...] = ()

    @classmethod
    def of(cls, *coeffs: int | str | Fraction) -> "PiPoly":
        return cls(_strip(tuple(rat(c) for c in coeffs)))

    @classmethod
    def const(cls, q: int | str | Fraction) -> "PiPoly":
        return cls.of(q)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _strip(tuple(self.coeffs)))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_rational(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not a plain rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if i < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "PiPoly") -> "PiPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return PiPoly(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __sub__(self, other: "PiPoly") -> "PiPoly":
        return self + (-other)

    def __neg__(self) -> "PiPoly":
        return PiPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "PiPoly") -> "PiPoly":
        if self.is_zero or other.is_zero:
            return PI_ZERO
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PiPoly(tuple(out))

    def scale(self, q: int | Fraction) -> "PiPoly":
        q = rat(q)
        if q == 0:
            return PI_ZERO
        return PiPoly(tuple(c * q for c in self.coeffs))

    def __pow__(self, n: int) -> "PiPoly":
        if n < 0:
            raise ValueError("negative powers leave Q[pi]")
        out = PI_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def enclose(self, precision_bits: int) -> RatInterval:
        return pipoly_enclose(self, precision_bits)

    def sign(self, start_bits: int = 64, cap_bits: int = 65536) -> int:
        return pipoly_sign(self, start_bits, cap_bits)

    def to_strings(self) -> list[str]:
        return [rat_str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: list[str]) -> "PiPoly":
        return cls.of(*items)

    def show(self) -> str:
        """Human-readable form like "-12*pi^4 + 120*pi^2 - 80"."""
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = rat_show(abs(c))
            if i == 0:
                body = mag
            else:
                pi_part = "pi" if i == 1 else f"pi^{i}"
                body = pi_part if abs(c) == 1 else f"{mag}*{pi_part}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)


PI_ZERO = PiPoly(())
PI_ONE = PiPoly((Fraction(1),))
PI = PiPoly((Fraction(0), Fraction(1)))
HALF_PI = PiPoly((Fraction(0), Fraction(1, 2)))


def _arctan_bracket(inverse: int, bits: int) -> RatInterval:
    """Alternating-series bracket of arctan(1/inverse) with width <= 2^-bits."""
    t = Fraction(1, inverse)
    tol = Fraction(1, 2**bits)
    term = t
    total = Fraction(0)
    i = 0
    while True:
        total += term if i % 2 == 0 else -term
        nxt = term * t * t * (2 * i + 1) / (2 * i + 3)
        if nxt <= tol:
            # partial sums alternate around the limit; the next term bounds the gap
            if i % 2 == 0:
                return RatInterval(total - nxt, total)
            return RatInterval(total, total + nxt)
        term = nxt
        i += 1


@lru_cache(maxsize=None)
def pi_enclosure(precision_bits: int) -> RatInterval:
    """Rational interval containing pi with width <= 2^-precision_bits.

    Enclosures are nested: pi_enclosure(p) contains pi_enclosure(q) for q >= p.
    """
    if precision_bits < 8:
        raise ValueError("precision_bits must be at least 8")
    work = max(precision_bits, 24) + 8
    a = _arctan_bracket(5, work + 6)
    b = _arctan_bracket(239, work + 4)
    raw = a.scale(16) - b.scale(4)
    return raw.outward_round(work)


def pipoly_enclose(p: PiPoly, precision_bits: int) -> RatInterval:
    """Enclosure of the real value p(pi); exact for rational p."""
    if p.is_zero:
        return RatInterval.point(0)
    if p.is_rational:
        return RatInterval.point(p.coeffs[0])
    pi_iv = pi_enclosure(precision_bits)
    acc = RatInterval.point(p.coeffs[-1])
    for i in range(len(p.coeffs) - 2, -1, -1):
        acc = acc * pi_iv + RatInterval.point(p.coeffs[i])
    return acc.outward_round(max(precision_bits, 24))


def pipoly_sign(p: PiPoly, start_bits: int = 64, cap_bits: int = 65536) -> int:
    """Certified sign of p(pi): -1, 0 (exact zero) or +1.

    Terminates for every nonzero p because pi is transcendental; the cap is
    a safety valve and exceeding it raises PrecisionExhausted.
    """
    if p.is_zero:
        return 0
    if p.is_rational:
        return 1 if p.coeffs[0] > 0 else -1
    bits = max(start_bits, 8)
    while True:
        s = pipoly_enclose(p, bits).sign()
        if s is not None and s != 0:
            return s
        if bits >= cap_bits:
            raise PrecisionExhausted(f"sign of {p.show()} unresolved at {bits} bits")
        bits *= 2


def trig_at_half_pi_multiple(func: str, k: int) -> Fraction:
    """Exact value of sin or cos at k*pi/2."""
    k %= 4
    if func == "sin":
        return Fraction((0, 1, 0, -1)[k])
    if func == "cos":
        return Fraction((1, 0, -1, 0)[k])
    raise ValueError(f"unknown function {func!r}")


def _trig_series_enclosure(x: Fraction, bits: int, even: bool) -> RatInterval:
    """Maclaurin enclosure of cos (even) or sin (odd) at an exact rational x.

    Uses the explicit remainder bound |R| <= |t|/(1 - x^2/((n+2)(n+3))) once
    the ratio drops below 1; valid for any finite rational argument.
    """
    tol = Fraction(1, 2 ** (bits + 2))
    x2 = x * x
    if even:
        term = Fraction(1)
        deg = 0
    else:
        term = x
        deg = 1
    total = Fraction(0)
    sign = 1
    while True:
        total += sign * term
        nxt = term * x2 / ((deg + 1) * (deg + 2))
        ratio_den = (deg + 3) * (deg + 4)
        if x2 < ratio_den:
            bound = abs(nxt) / (1 - x2 / ratio_den)
            if bound <= tol:
                return RatInterval(total - bound, total + bound).outward_round(bits + 1)
        term = nxt
        deg += 2
        sign = -sign


def sin_enclosure(x: Fraction, bits: int) -> RatInterval:
    return _trig_series_enclosure(rat(x), bits, even=False)


def cos_enclosure(x: Fraction, bits: int) -> RatInterval:
    return _trig_series_enclosure(rat(x), bits, even=True)
