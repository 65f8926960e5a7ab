"""Univariate polynomials in x with coefficients in Q[pi].

These carry every polynomial in the proof path: term factors h(x), the
Maclaurin bounds, and the downward approximations P(x). Evaluation at a
rational (or Q[pi]) point is exact; evaluation over a rational interval
gives a rigorous enclosure by Horner with interval coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .pipoly import PI_ONE, PI_ZERO, PiPoly, pipoly_enclose
from .rationals import RatInterval, rat


def _strip(coeffs: tuple[PiPoly, ...]) -> tuple[PiPoly, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1].is_zero:
        n -= 1
    return coeffs[:n]


def _as_pipoly(c: PiPoly | Fraction | int | str) -> PiPoly:
    if isinstance(c, PiPoly):
        return c
    return PiPoly.const(rat(c))


@dataclass(frozen=True)
class UniPoly:
    """coeffs[k] is the PiPoly coefficient of x^k; trailing zeros stripped."""

    coeffs: tuple[PiPoly, ...] = ()

    @classmethod
    def of(cls, *coeffs: PiPoly | Fraction | int | str) -> "UniPoly":
        return cls(_strip(tuple(_as_pipoly(c) for c in coeffs)))

    @classmethod
    def monomial(cls, degree: int, c: PiPoly | Fraction | int = 1) -> "UniPoly":
        c = _as_pipoly(c)
        if c.is_zero:
            return U_ZERO
        return cls(tuple([PI_ZERO] * degree) + (c,))

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
        return all(c.is_rational for c in self.coeffs)

    def coeff(self, k: int) -> PiPoly:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else PI_ZERO

    @property
    def leading(self) -> PiPoly:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def trailing_index(self) -> int:
        """Multiplicity of the root at x = 0 (0 for nonzero constant term)."""
        if self.is_zero:
            raise ValueError("zero polynomial")
        for k, c in enumerate(self.coeffs):
            if not c.is_zero:
                return k
        raise AssertionError("stripped polynomial with all-zero coefficients")

    def shift_down(self, j: int) -> "UniPoly":
        """Divide by x^j; requires the low coefficients to vanish."""
        if j == 0:
            return self
        if any(not c.is_zero for c in self.coeffs[:j]):
            raise ValueError(f"x^{j} does not divide this polynomial")
        return UniPoly(self.coeffs[j:])

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero or other.is_zero:
            return U_ZERO
        out = [PI_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return UniPoly(tuple(out))

    def scale(self, c: PiPoly | Fraction | int) -> "UniPoly":
        c = _as_pipoly(c)
        if c.is_zero:
            return U_ZERO
        return UniPoly(tuple(a * c for a in self.coeffs))

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(self.coeffs[k].scale(k) for k in range(1, len(self.coeffs))))

    def scale_arg(self, m: Fraction | int) -> "UniPoly":
        """p(m*x)."""
        m = rat(m)
        return UniPoly(tuple(c.scale(m**k) for k, c in enumerate(self.coeffs)))

    def compose_linear(self, a: PiPoly, b: Fraction | int) -> "UniPoly":
        """p(a + b*x) with a in Q[pi] and rational b, by binomial expansion."""
        b = rat(b)
        out = [PI_ZERO] * max(len(self.coeffs), 1)
        a_pows = [PI_ONE]
        for _ in range(self.degree):
            a_pows.append(a_pows[-1] * a)
        for d, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            for j in range(d + 1):
                out[j] = out[j] + c.scale(comb(d, j) * b**j) * a_pows[d - j]
        return UniPoly(tuple(out))

    def eval_rational(self, x: Fraction | int) -> PiPoly:
        """Exact value at a rational point (a PiPoly)."""
        x = rat(x)
        acc = PI_ZERO
        for c in reversed(self.coeffs):
            acc = acc.scale(x) + c
        return acc

    def eval_pipoly(self, x: PiPoly) -> PiPoly:
        """Exact value at a Q[pi] point, e.g. P(pi/2)."""
        acc = PI_ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_interval(self, x: RatInterval, precision_bits: int) -> RatInterval:
        return unipoly_eval_interval(self, x, precision_bits)

    def deflate_root(self, c: PiPoly) -> "UniPoly":
        """Exact quotient p / (x - c); requires p(c) == 0."""
        if self.is_zero:
            raise ValueError("zero polynomial")
        quotient = [PI_ZERO] * len(self.coeffs)
        acc = PI_ZERO
        for k in range(len(self.coeffs) - 1, -1, -1):
            acc = acc * c + self.coeffs[k]
            if k > 0:
                quotient[k - 1] = acc
        if not acc.is_zero:
            raise ValueError("not a root: nonzero remainder under synthetic division")
        return UniPoly(tuple(quotient[:-1]))

    def even_part_in_z(self) -> "UniPoly":
        """For a polynomial in x^2 only, return the same polynomial in z = x^2."""
        if any(k % 2 == 1 and not c.is_zero for k, c in enumerate(self.coeffs)):
            raise ValueError("polynomial has odd-degree terms")
        return UniPoly(tuple(self.coeffs[k] for k in range(0, len(self.coeffs), 2)))

    def rational_coeffs(self) -> list[Fraction] | None:
        """Dense Fraction coefficients, or None if any coefficient needs pi."""
        if not self.is_rational:
            return None
        return [c.rational_value for c in self.coeffs]

    def to_strings(self) -> list[list[str]]:
        return [c.to_strings() for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: list[list[str]]) -> "UniPoly":
        return cls(tuple(PiPoly.from_strings(c) for c in items))

    def show(self, var: str = "x") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero:
                continue
            cs = c.show() if c.is_rational else f"({c.show()})"
            if k == 0:
                parts.append(cs)
            elif cs == "1":
                parts.append(var if k == 1 else f"{var}^{k}")
            else:
                parts.append(f"{cs}*{var}" if k == 1 else f"{cs}*{var}^{k}")
        return " + ".join(parts)


U_ZERO = UniPoly(())
U_ONE = UniPoly((PI_ONE,))
X = UniPoly((PI_ZERO, PI_ONE))


@lru_cache(maxsize=512)
def _coeff_enclosures(p: UniPoly, precision_bits: int) -> tuple[RatInterval, ...]:
    return tuple(pipoly_enclose(c, precision_bits) for c in p.coeffs)


def unipoly_eval_interval(p: UniPoly, x: RatInterval, precision_bits: int) -> RatInterval:
    """Enclosure of {p(t) : t in x} by Horner with interval coefficients."""
    if p.is_zero:
        return RatInterval.point(0)
    ivs = _coeff_enclosures(p, precision_bits)
    acc = ivs[-1]
    for k in range(len(ivs) - 2, -1, -1):
        acc = acc * x + ivs[k]
    return acc
