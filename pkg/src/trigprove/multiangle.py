"""Multiple-angle expansion of powers and products of sin and cos.

cos^q(x) * sin^r(x) is rewritten as a linear combination of sin(kx) or
cos(kx) plus (for q, r both even) a constant, using the closed-form binomial
coefficient sums. Applied termwise to a mixed trigonometric polynomial this
yields the multiple-angle sum that the Maclaurin bounds are substituted into.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .problems import MixedTrigPoly
from .unipoly import U_ZERO, UniPoly


@dataclass(frozen=True)
class MultiAngleForm:
    """cos^q sin^r as constant + sum of coeff * kind(multiple * x)."""

    kind: str  # "sin" or "cos"
    constant: Fraction
    entries: tuple[tuple[int, Fraction], ...]  # (multiple, coeff), multiples decreasing

    def __post_init__(self) -> None:
        if self.kind == "sin" and self.constant != 0:
            raise ValueError("sine combinations have no constant term")
        mults = [m for m, _ in self.entries]
        if mults != sorted(mults, reverse=True) or len(set(mults)) != len(mults):
            raise ValueError("multiples must be strictly decreasing")
        if any(c == 0 for _, c in self.entries):
            raise ValueError("zero coefficients must be dropped")


def _entries(raw: list[tuple[int, Fraction]]) -> tuple[tuple[int, Fraction], ...]:
    return tuple((m, c) for m, c in raw if c != 0)


def sin_power(n: int) -> MultiAngleForm:
    """sin^n x as a sum of sines (n odd) or constant plus cosines (n even)."""
    if n < 1:
        raise ValueError("n must be positive")
    scale = Fraction(2, 2**n)
    if n % 2 == 1:
        raw = [
            (n - 2 * k, scale * (-1) ** ((n - 1) // 2 + k) * comb(n, k))
            for k in range((n - 1) // 2 + 1)
        ]
        return MultiAngleForm("sin", Fraction(0), _entries(raw))
    constant = Fraction(comb(n, n // 2), 2**n)
    raw = [
        (n - 2 * k, scale * (-1) ** (n // 2 + k) * comb(n, k))
        for k in range(n // 2)
    ]
    return MultiAngleForm("cos", constant, _entries(raw))


def cos_power(n: int) -> MultiAngleForm:
    """cos^n x as a sum of cosines; all coefficients are positive."""
    if n < 1:
        raise ValueError("n must be positive")
    scale = Fraction(2, 2**n)
    if n % 2 == 1:
        raw = [(n - 2 * k, scale * comb(n, k)) for k in range((n - 1) // 2 + 1)]
        return MultiAngleForm("cos", Fraction(0), _entries(raw))
    constant = Fraction(comb(n, n // 2), 2**n)
    raw = [(n - 2 * k, scale * comb(n, k)) for k in range(n // 2)]
    return MultiAngleForm("cos", constant, _entries(raw))


def _inner_sum(q: int, r: int, k: int) -> int:
    return sum(
        (-1) ** j * comb(q, j) * comb(r, k - j)
        for j in range(max(0, k - r), min(q, k) + 1)
    )


def product_expand(q: int, r: int) -> MultiAngleForm:
    """cos^q x * sin^r x in multiple-angle form (four parity cases)."""
    if q < 0 or r < 0 or q + r < 1:
        raise ValueError("need nonnegative exponents with q + r >= 1")
    if r == 0:
        return cos_power(q)
    if q == 0:
        return sin_power(r)
    scale = Fraction(1, 2 ** (q + r - 1))
    if r % 2 == 1:
        # odd sine power: a pure sine combination
        top = (q + r) // 2 - 1 if q % 2 == 1 else (q + r - 1) // 2
        raw = [
            (q + r - 2 * k, scale * (-1) ** ((r - 1) // 2 + k) * _inner_sum(q, r, k))
            for k in range(top + 1)
        ]
        return MultiAngleForm("sin", Fraction(0), _entries(raw))
    if q % 2 == 1:
        top = (q + r - 1) // 2
        raw = [
            (q + r - 2 * k, scale * (-1) ** (r // 2 + k) * _inner_sum(q, r, k))
            for k in range(top + 1)
        ]
        return MultiAngleForm("cos", Fraction(0), _entries(raw))
    # both even: cosine combination plus a standalone constant
    assert q % 2 == 0 and r % 2 == 0
    top = (q + r) // 2 - 1
    raw = [
        (q + r - 2 * k, scale * (-1) ** (r // 2 + k) * _inner_sum(q, r, k))
        for k in range(top + 1)
    ]
    constant = (
        Fraction(1, 2 ** (q + r))
        * (-1) ** ((2 * r + q) // 2)
        * _inner_sum(q, r, (q + r) // 2)
    )
    return MultiAngleForm("cos", constant, _entries(raw))


@dataclass(frozen=True)
class SubAddend:
    """One sub-addend coeff * factor(x) * func(multiple * x).

    For a rational monomial the scalar is split out into coeff and the
    factor is the monic power of x; otherwise coeff is 1 and the factor
    carries everything.
    """

    factor: UniPoly
    func: str
    multiple: int
    coeff: Fraction

    def __post_init__(self) -> None:
        if self.coeff == 0 or self.factor.is_zero:
            raise ValueError("degenerate sub-addend")
        if self.multiple < 1:
            raise ValueError("trig sub-addends need multiple >= 1")

    @property
    def poly(self) -> UniPoly:
        """The full polynomial multiplier coeff * factor."""
        return self.factor.scale(self.coeff)

    @classmethod
    def from_poly(cls, poly: UniPoly, func: str, multiple: int) -> "SubAddend":
        nonzero = [(k, c) for k, c in enumerate(poly.coeffs) if not c.is_zero]
        if len(nonzero) == 1 and nonzero[0][1].is_rational:
            k, c = nonzero[0]
            return cls(UniPoly.monomial(k), func, multiple, c.rational_value)
        return cls(poly, func, multiple, Fraction(1))

    def show(self) -> str:
        arg = "x" if self.multiple == 1 else f"{self.multiple}x"
        poly = self.poly
        nonzero = [(k, c) for k, c in enumerate(poly.coeffs) if not c.is_zero]
        if len(nonzero) == 1 and nonzero[0][0] == 0 and nonzero[0][1].is_rational:
            q = nonzero[0][1].rational_value
            return f"({q.numerator}/{q.denominator}){self.func}({arg})"
        return f"({poly.show()})*{self.func}({arg})"


def _sort_key(sub: SubAddend):
    return (sub.multiple, sub.func, sub.factor.degree, sub.factor.to_strings())


@dataclass(frozen=True)
class MultiAngleSum:
    """Sum of trig sub-addends plus a plain polynomial part."""

    sub_addends: tuple[SubAddend, ...] = ()
    constant_part: UniPoly = U_ZERO

    @property
    def is_zero(self) -> bool:
        return not self.sub_addends and self.constant_part.is_zero

    def show(self) -> str:
        parts = [s.show() for s in self.sub_addends]
        if not self.constant_part.is_zero:
            parts.append(f"({self.constant_part.show()})")
        return " + ".join(parts) if parts else "0"


def expand_poly(f: MixedTrigPoly) -> MultiAngleSum:
    """Expand every term and merge sub-addends sharing (func, multiple).

    The merged factor of a group can change sign inside a target interval;
    sign-directed substitution then requires the interval-aware monomial
    split (see taylor.normalize_signs), which is the step that reproduces
    the worked forms with their factors kept apart.
    """
    groups: dict[tuple[str, int], UniPoly] = {}
    constant = U_ZERO
    for t in f.terms:
        if t.cos_pow == 0 and t.sin_pow == 0:
            constant = constant + t.factor
            continue
        form = product_expand(t.cos_pow, t.sin_pow)
        if form.constant != 0:
            constant = constant + t.factor.scale(form.constant)
        for mult, c in form.entries:
            key = (form.kind, mult)
            groups[key] = groups.get(key, U_ZERO) + t.factor.scale(c)
    subs = [
        SubAddend.from_poly(poly, func, mult)
        for (func, mult), poly in groups.items()
        if not poly.is_zero
    ]
    subs.sort(key=_sort_key)
    return MultiAngleSum(tuple(subs), constant)
