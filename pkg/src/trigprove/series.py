"""Exact Maclaurin coefficients of a mixed trigonometric polynomial.

Used for the local-sign gate: the first nonvanishing series coefficient at
0 decides whether f can be positive on any right neighbourhood of 0 at all.
Two independent computation paths (through the multiple-angle form, and by
direct truncated power-series algebra) are kept for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .multiangle import expand_poly
from .pipoly import PI_ZERO, PiPoly, PrecisionExhausted, pipoly_sign
from .problems import MixedTrigPoly


@dataclass(frozen=True)
class LocalSign:
    """First nonvanishing Maclaurin coefficient of f at 0 and its sign."""

    order: int
    sign: int
    leading: PiPoly


def _func_series(func: str, multiple: int, order: int) -> list[Fraction]:
    """Coefficients of sin/cos(multiple * x) up to x^order."""
    out = [Fraction(0)] * (order + 1)
    if func == "sin":
        for i in range(0, (order - 1) // 2 + 1):
            d = 2 * i + 1
            if d <= order:
                out[d] = Fraction((-1) ** i * multiple**d, factorial(d))
    else:
        for i in range(0, order // 2 + 1):
            d = 2 * i
            if d <= order:
                out[d] = Fraction((-1) ** i * multiple**d, factorial(d))
    return out


def _series_multiangle(f: MixedTrigPoly, order: int) -> list[PiPoly]:
    out = [PI_ZERO] * (order + 1)
    s = expand_poly(f)
    for k in range(min(order, s.constant_part.degree) + 1):
        out[k] = out[k] + s.constant_part.coeff(k)
    for sub in s.sub_addends:
        series = _func_series(sub.func, sub.multiple, order)
        poly = sub.poly
        for i in range(min(order, poly.degree) + 1):
            c = poly.coeff(i)
            if c.is_zero:
                continue
            for d in range(order - i + 1):
                if series[d]:
                    out[i + d] = out[i + d] + c.scale(series[d])
    return out


def _truncated_mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if x == 0 or i > order:
            continue
        for j, y in enumerate(b):
            if i + j > order:
                break
            if y:
                out[i + j] += x * y
    return out


def _series_direct(f: MixedTrigPoly, order: int) -> list[PiPoly]:
    sin_s = _func_series("sin", 1, order)
    cos_s = _func_series("cos", 1, order)
    out = [PI_ZERO] * (order + 1)
    for t in f.terms:
        trig = [Fraction(0)] * (order + 1)
        trig[0] = Fraction(1)
        for _ in range(t.cos_pow):
            trig = _truncated_mul(trig, cos_s, order)
        for _ in range(t.sin_pow):
            trig = _truncated_mul(trig, sin_s, order)
        for i in range(min(order, t.factor.degree) + 1):
            c = t.factor.coeff(i)
            if c.is_zero:
                continue
            for d in range(order - i + 1):
                if trig[d]:
                    out[i + d] = out[i + d] + c.scale(trig[d])
    return out


def series_coeffs(
    f: MixedTrigPoly, order: int, method: str = "multiangle"
) -> list[PiPoly]:
    """Exact coefficients of x^0..x^order of the Maclaurin series of f."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if method == "multiangle":
        return _series_multiangle(f, order)
    if method == "direct":
        return _series_direct(f, order)
    raise ValueError(f"unknown method {method!r}")


def local_sign(
    f: MixedTrigPoly,
    max_order: int = 64,
    precision_bits: int = 64,
    precision_cap: int = 65536,
) -> LocalSign | None:
    """Locate and sign the first nonzero series coefficient of f at 0.

    Returns None when every coefficient through max_order is exactly zero
    (for a mixed trigonometric polynomial this means checking higher orders
    or concluding f == 0). The sign decision exploits that a nonzero
    element of Q[pi] is never zero as a real number.
    """
    coeffs = series_coeffs(f, max_order)
    for order, c in enumerate(coeffs):
        if c.is_zero:
            continue
        try:
            s = pipoly_sign(c, precision_bits, precision_cap)
        except PrecisionExhausted:
            raise
        return LocalSign(order, s, c)
    return None
