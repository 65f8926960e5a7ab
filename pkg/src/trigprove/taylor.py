"""Maclaurin bounds for sin and cos and their sign-directed substitution.

On positive arguments the Maclaurin polynomial of sin of degree 4l+1 lies
above the function and degree 4l+3 lies below; for cos, degree 4l is above
and 4l+2 below. Each bound is guaranteed on [0, sqrt((n+3)(n+4))].

substitute_bounds replaces every trig sub-addend of a multiple-angle sum by
the Maclaurin bound pointing the right way for the certified sign of its
polynomial factor, producing a polynomial lower bound for the whole sum on
the target interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .multiangle import MultiAngleSum, SubAddend
from .pipoly import PiPoly, pipoly_sign
from .positivity import PositivityProof, sign_on_interval
from .unipoly import UniPoly


class SignNotConstant(ValueError):
    """A sub-addend factor changes sign on the target interval."""


class RadiusExceeded(ValueError):
    """The requested degree does not cover the interval; carries the fix."""

    def __init__(self, message: str, minimal_degree: int):
        super().__init__(message)
        self.minimal_degree = minimal_degree


@dataclass(frozen=True)
class TaylorBound:
    """Classification of a Maclaurin polynomial as a one-sided bound."""

    func: str
    degree: int
    direction: str  # "upper" or "lower", on positive arguments
    radius_sq: int  # the bound holds on [0, sqrt(radius_sq)]


def maclaurin(func: str, n: int) -> UniPoly:
    """Maclaurin polynomial of sin (odd n) or cos (even n) up to degree n."""
    _check_parity(func, n)
    coeffs: list[Fraction | int] = [0] * (n + 1)
    if func == "sin":
        for i in range(0, (n - 1) // 2 + 1):
            coeffs[2 * i + 1] = Fraction((-1) ** i, factorial(2 * i + 1))
    else:
        for i in range(0, n // 2 + 1):
            coeffs[2 * i] = Fraction((-1) ** i, factorial(2 * i))
    return UniPoly.of(*coeffs)


def classify(func: str, n: int) -> TaylorBound:
    """Bound direction and validity radius for the degree-n polynomial."""
    _check_parity(func, n)
    if func == "sin":
        direction = "upper" if n % 4 == 1 else "lower"
    else:
        direction = "upper" if n % 4 == 0 else "lower"
    return TaylorBound(func, n, direction, (n + 3) * (n + 4))


def _check_parity(func: str, n: int) -> None:
    if func not in ("sin", "cos"):
        raise ValueError(f"unknown function {func!r}")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if func == "sin" and n % 2 == 0:
        raise ValueError("sin polynomials have odd degree")
    if func == "cos" and n % 2 == 1:
        raise ValueError("cos polynomials have even degree")


def template_degree(func: str, direction: str, index: int) -> int:
    """Degree of the index-th bound of the given direction (4l+u template)."""
    if index < 0:
        raise ValueError("index must be nonnegative")
    offset = {("sin", "lower"): 3, ("sin", "upper"): 1,
              ("cos", "lower"): 2, ("cos", "upper"): 0}[(func, direction)]
    return 4 * index + offset


def direction_for(func: str, sign: int) -> str:
    """Bound direction making coeff*T a lower estimate of coeff*func."""
    if sign > 0:
        return "lower"
    if sign < 0:
        return "upper"
    raise ValueError("sign must be nonzero")


def radius_holds(degree: int, multiple: int, hi: PiPoly) -> bool:
    """(multiple*hi)^2 <= (degree+3)(degree+4), decided exactly."""
    gap = (hi * hi).scale(Fraction(multiple * multiple)) - PiPoly.const(
        (degree + 3) * (degree + 4)
    )
    return pipoly_sign(gap) <= 0


def min_valid_index(func: str, direction: str, multiple: int, hi: PiPoly) -> int:
    """Smallest template index whose validity radius covers (0, hi)."""
    index = 0
    while not radius_holds(template_degree(func, direction, index), multiple, hi):
        index += 1
        if index > 512:
            raise RuntimeError("validity radius search ran away")
    return index


@dataclass(frozen=True)
class DegreeAssignment:
    """Per-sub-addend template indices, all at least the global floor."""

    indices: tuple[int, ...]
    floor: int = 0

    def __post_init__(self) -> None:
        if any(i < self.floor for i in self.indices):
            raise ValueError("all indices must be at least the floor")


@dataclass(frozen=True)
class SignedSubAddend:
    """Sub-addend with its certified sign on the target interval."""

    sub: SubAddend
    sign: int
    sign_proof: PositivityProof


@dataclass(frozen=True)
class NormalizedSum:
    """Multiple-angle sum whose sub-addend factors all have constant sign."""

    parts: tuple[SignedSubAddend, ...]
    constant_part: UniPoly
    hi: PiPoly

    def as_sum(self) -> MultiAngleSum:
        return MultiAngleSum(tuple(p.sub for p in self.parts), self.constant_part)


def normalize_signs(
    s: MultiAngleSum, hi: PiPoly, precision_bits: int = 256
) -> NormalizedSum:
    """Certify factor signs on (0, hi), splitting sign-varying factors.

    A factor without certified constant sign is replaced by its monomials,
    each of which is sign-definite; this is what keeps separately-signed
    pieces of a merged group apart in the worked examples.
    """
    parts: list[SignedSubAddend] = []
    for sub in s.sub_addends:
        outcome = sign_on_interval(sub.poly, hi, precision_bits)
        if outcome is not None:
            parts.append(SignedSubAddend(sub, outcome[0], outcome[1]))
            continue
        for k, c in enumerate(sub.poly.coeffs):
            if c.is_zero:
                continue
            piece = SubAddend.from_poly(
                UniPoly.monomial(k, c), sub.func, sub.multiple
            )
            mono = sign_on_interval(piece.poly, hi, precision_bits)
            assert mono is not None, "monomials are sign-definite"
            parts.append(SignedSubAddend(piece, mono[0], mono[1]))
    parts.sort(key=lambda p: (p.sub.multiple, p.sub.func,
                              p.sub.factor.degree, p.sub.factor.to_strings()))
    return NormalizedSum(tuple(parts), s.constant_part, hi)


@dataclass(frozen=True)
class SubstitutionRow:
    """One substituted sub-addend: its sign, bound direction and degree."""

    sub: SubAddend
    sign: int
    direction: str
    degree: int
    radius_sq: int
    sign_proof: PositivityProof


@dataclass(frozen=True)
class SubstitutionResult:
    polynomial: UniPoly
    rows: tuple[SubstitutionRow, ...]
    constant_part: UniPoly
    hi: PiPoly


def substitute_bounds(
    s: MultiAngleSum | NormalizedSum,
    degrees: list[int] | tuple[int, ...] | DegreeAssignment,
    hi: PiPoly | None = None,
    precision_bits: int = 256,
) -> SubstitutionResult:
    """Build the downward polynomial approximation for the sum on (0, hi).

    Positive-factor sub-addends take the lower Maclaurin bound, negative
    ones the upper; every substituted degree must match the template of its
    direction and satisfy the validity radius for its angle multiple.
    """
    if isinstance(s, NormalizedSum):
        norm = s
        if hi is not None and hi != s.hi:
            raise ValueError("hi does not match the normalized sum")
    else:
        if hi is None:
            raise ValueError("hi is required to orient the bounds")
        try:
            norm = normalize_signs(s, hi, precision_bits)
        except AssertionError as exc:  # pragma: no cover
            raise SignNotConstant(str(exc)) from exc
    if isinstance(degrees, DegreeAssignment):
        realized: list[int] | None = None
        indices = degrees.indices
    else:
        realized = list(degrees)
        indices = ()
    if realized is not None and len(realized) != len(norm.parts):
        raise ValueError(
            f"got {len(realized)} degrees for {len(norm.parts)} sub-addends"
        )
    if realized is None and len(indices) != len(norm.parts):
        raise ValueError("degree assignment does not match the sub-addends")

    total = norm.constant_part
    rows: list[SubstitutionRow] = []
    for pos, part in enumerate(norm.parts):
        direction = direction_for(part.sub.func, part.sign)
        if realized is not None:
            n = realized[pos]
            if n < 0 or n % 4 != template_degree(part.sub.func, direction, 0):
                raise ValueError(
                    f"degree {n} does not fit the {direction} {part.sub.func} template"
                )
        else:
            n = template_degree(part.sub.func, direction, indices[pos])
        if not radius_holds(n, part.sub.multiple, norm.hi):
            minimal = template_degree(
                part.sub.func, direction,
                min_valid_index(part.sub.func, direction, part.sub.multiple, norm.hi),
            )
            raise RadiusExceeded(
                f"degree {n} is invalid for multiple {part.sub.multiple} on this "
                f"interval; smallest valid degree is {minimal}",
                minimal,
            )
        bound_poly = maclaurin(part.sub.func, n).scale_arg(part.sub.multiple)
        total = total + bound_poly * part.sub.poly
        rows.append(SubstitutionRow(
            part.sub, part.sign, direction, n, (n + 3) * (n + 4), part.sign_proof
        ))
    return SubstitutionResult(total, tuple(rows), norm.constant_part, norm.hi)
