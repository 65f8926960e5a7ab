"""Mixed trigonometric polynomials, their textual grammar, and reflection.

A mixed trigonometric polynomial is a finite sum of terms
    h(x) * cos(x)^q * sin(x)^r
with h a polynomial over Q[pi]. Problems state "f > 0 on (lo, hi)" with open
intervals and Q[pi]-constant endpoints.

Grammar (extends the obvious arithmetic grammar with a leading unary minus
and division of a factor by an unsigned integer):

    problem := expr '>' expr 'on' '(' expr ',' expr ')'
    expr    := ['-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := base ('^' uint)? ('/' uint)?
    base    := number | 'pi' | 'x' | 'sin(x)' | 'cos(x)' | '(' expr ')'

Only sin(x) and cos(x) are accepted; tan and friends must be cleared by the
caller (clearing denominators changes the domain logic of the claim).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .pipoly import (
    PI_ONE,
    PI_ZERO,
    PiPoly,
    cos_enclosure,
    pipoly_sign,
    sin_enclosure,
    trig_at_half_pi_multiple,
)
from .rationals import RatInterval, rat
from .unipoly import U_ONE, UniPoly


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class ReflectionError(ValueError):
    pass


@dataclass(frozen=True)
class MixedTrigTerm:
    factor: UniPoly
    cos_pow: int
    sin_pow: int

    def __post_init__(self) -> None:
        if self.cos_pow < 0 or self.sin_pow < 0:
            raise ValueError("trig exponents must be nonnegative")
        if self.factor.is_zero:
            raise ValueError("term factor must be nonzero")


@dataclass(frozen=True)
class MixedTrigPoly:
    """Sum of terms, at most one per (cos_pow, sin_pow) pair."""

    terms: tuple[MixedTrigTerm, ...] = ()

    @classmethod
    def from_terms(cls, items: list[tuple[UniPoly, int, int]]) -> "MixedTrigPoly":
        merged: dict[tuple[int, int], UniPoly] = {}
        for factor, q, r in items:
            key = (q, r)
            merged[key] = merged.get(key, UniPoly()) + factor
        terms = tuple(
            MixedTrigTerm(f, q, r)
            for (q, r), f in sorted(merged.items())
            if not f.is_zero
        )
        return cls(terms)

    @classmethod
    def zero(cls) -> "MixedTrigPoly":
        return cls(())

    @classmethod
    def constant(cls, c: PiPoly | Fraction | int) -> "MixedTrigPoly":
        u = UniPoly.of(c)
        if u.is_zero:
            return cls.zero()
        return cls((MixedTrigTerm(u, 0, 0),))

    @classmethod
    def from_unipoly(cls, u: UniPoly) -> "MixedTrigPoly":
        if u.is_zero:
            return cls.zero()
        return cls((MixedTrigTerm(u, 0, 0),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "MixedTrigPoly") -> "MixedTrigPoly":
        return MixedTrigPoly.from_terms(
            [(t.factor, t.cos_pow, t.sin_pow) for t in self.terms + other.terms]
        )

    def __sub__(self, other: "MixedTrigPoly") -> "MixedTrigPoly":
        return self + (-other)

    def __neg__(self) -> "MixedTrigPoly":
        return MixedTrigPoly(
            tuple(MixedTrigTerm(-t.factor, t.cos_pow, t.sin_pow) for t in self.terms)
        )

    def __mul__(self, other: "MixedTrigPoly") -> "MixedTrigPoly":
        items = []
        for a in self.terms:
            for b in other.terms:
                items.append(
                    (a.factor * b.factor, a.cos_pow + b.cos_pow, a.sin_pow + b.sin_pow)
                )
        return MixedTrigPoly.from_terms(items)

    def __pow__(self, n: int) -> "MixedTrigPoly":
        if n < 0:
            raise ValueError("negative powers are outside the class")
        out = MixedTrigPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c: PiPoly | Fraction | int) -> "MixedTrigPoly":
        u = UniPoly.of(c)
        if u.is_zero:
            return MixedTrigPoly.zero()
        return MixedTrigPoly(
            tuple(
                MixedTrigTerm(t.factor.scale(u.coeff(0)), t.cos_pow, t.sin_pow)
                for t in self.terms
            )
        )


@dataclass(frozen=True)
class ProblemSpec:
    """Claim: f(x) > 0 for x in the open interval (lo, hi); 0 <= lo < hi."""

    f: MixedTrigPoly
    lo: PiPoly
    hi: PiPoly

    def __post_init__(self) -> None:
        if pipoly_sign(self.lo) < 0:
            raise ValueError(
                "negative interval endpoints are unsupported; substitute t = -x "
                "and prove the reflected problem on (0, -lo)"
            )
        if pipoly_sign(self.hi - self.lo) <= 0:
            raise ValueError("interval is empty: lo must be strictly below hi")


# --------------------------------------------------------------------------
# tokenizer / parser
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d+)?)|(?P<name>[A-Za-z_]+)|(?P<sym>[-+*/^(),>]))"
)

_KNOWN_FUNCTIONS = ("sin", "cos")
_REJECTED_FUNCTIONS = ("tan", "sec", "csc", "cot")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}", pos)
        if m.group("number") is not None:
            tokens.append(("number", m.group("number"), m.start("number")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("sym", m.group("sym"), m.start("sym")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_sym(self, sym: str) -> None:
        kind, value, pos = self.peek()
        if kind != "sym" or value != sym:
            raise ParseError(f"expected {sym!r}", pos)
        self.advance()

    def expect_uint(self) -> int:
        kind, value, pos = self.peek()
        if kind != "number":
            raise ParseError("expected an unsigned integer", pos)
        if "." in value:
            raise ParseError("non-integer exponent", pos)
        self.advance()
        return int(value)

    def parse_expr(self) -> MixedTrigPoly:
        kind, value, _ = self.peek()
        negate = kind == "sym" and value == "-"
        if negate:
            self.advance()
        acc = self.parse_term()
        if negate:
            acc = -acc
        while True:
            kind, value, _ = self.peek()
            if kind == "sym" and value in "+-":
                self.advance()
                rhs = self.parse_term()
                acc = acc + rhs if value == "+" else acc - rhs
            else:
                return acc

    def parse_term(self) -> MixedTrigPoly:
        acc = self.parse_factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "sym" and value == "*":
                self.advance()
                acc = acc * self.parse_factor()
            else:
                return acc

    def parse_factor(self) -> MixedTrigPoly:
        base = self.parse_base()
        kind, value, _ = self.peek()
        if kind == "sym" and value == "^":
            self.advance()
            base = base ** self.expect_uint()
        kind, value, pos = self.peek()
        if kind == "sym" and value == "/":
            self.advance()
            den = self.expect_uint()
            if den == 0:
                raise ParseError("division by zero", pos)
            base = base.scale(Fraction(1, den))
        return base

    def parse_base(self) -> MixedTrigPoly:
        kind, value, pos = self.peek()
        if kind == "number":
            self.advance()
            return MixedTrigPoly.constant(rat(value))
        if kind == "name":
            if value == "pi":
                self.advance()
                return MixedTrigPoly.constant(PiPoly.of(0, 1))
            if value == "x":
                self.advance()
                return MixedTrigPoly.from_unipoly(UniPoly.of(0, 1))
            if value in _KNOWN_FUNCTIONS:
                self.advance()
                self.expect_sym("(")
                kind2, value2, pos2 = self.peek()
                if kind2 != "name" or value2 != "x":
                    raise ParseError(f"{value} takes the bare argument x", pos2)
                self.advance()
                self.expect_sym(")")
                if value == "sin":
                    return MixedTrigPoly((MixedTrigTerm(U_ONE, 0, 1),))
                return MixedTrigPoly((MixedTrigTerm(U_ONE, 1, 0),))
            if value in _REJECTED_FUNCTIONS:
                raise ParseError(
                    f"{value} is not supported: clear denominators first so the "
                    "claim is a mixed trigonometric polynomial",
                    pos,
                )
            raise ParseError(f"unknown name {value!r}", pos)
        if kind == "sym" and value == "(":
            self.advance()
            inner = self.parse_expr()
            self.expect_sym(")")
            return inner
        raise ParseError("expected a number, pi, x, sin(x), cos(x) or '('", pos)

    def parse_const(self) -> PiPoly:
        expr = self.parse_expr()
        return _require_constant(expr, self.peek()[2])

    def at_end(self) -> bool:
        return self.peek()[0] == "end"


def _require_constant(p: MixedTrigPoly, pos: int) -> PiPoly:
    if p.is_zero:
        return PI_ZERO
    if len(p.terms) != 1:
        raise ParseError("expected a constant expression", pos)
    t = p.terms[0]
    if t.cos_pow or t.sin_pow or t.factor.degree > 0:
        raise ParseError("expected a constant expression (no x, sin, cos)", pos)
    return t.factor.coeff(0)


def parse_function(text: str) -> MixedTrigPoly:
    """Parse a bare mixed trigonometric polynomial expression."""
    p = _Parser(text)
    out = p.parse_expr()
    if not p.at_end():
        raise ParseError("trailing input after expression", p.peek()[2])
    return out


def parse_const(text: str) -> PiPoly:
    p = _Parser(text)
    out = p.parse_const()
    if not p.at_end():
        raise ParseError("trailing input after constant", p.peek()[2])
    return out


def parse_problem(text: str) -> ProblemSpec:
    """Parse "lhs > rhs on (lo, hi)" into a normalized ProblemSpec.

    The claim is normalized to lhs - rhs > 0; like terms merge; decimal and
    rational literals are exact.
    """
    p = _Parser(text)
    lhs = p.parse_expr()
    kind, value, pos = p.peek()
    if kind != "sym" or value != ">":
        raise ParseError("expected '>'", pos)
    p.advance()
    rhs = p.parse_expr()
    kind, value, pos = p.peek()
    if kind != "name" or value != "on":
        raise ParseError("expected 'on' before the interval", pos)
    p.advance()
    p.expect_sym("(")
    lo = p.parse_const()
    p.expect_sym(",")
    hi = p.parse_const()
    p.expect_sym(")")
    if not p.at_end():
        raise ParseError("trailing input after interval", p.peek()[2])
    return ProblemSpec(lhs - rhs, lo, hi)


# --------------------------------------------------------------------------
# printing (canonical, round-trippable)
# --------------------------------------------------------------------------


def _pipoly_text(c: PiPoly) -> str:
    return c.show()


def _monomial_pieces(c: PiPoly, k: int) -> tuple[int, str]:
    """(sign, unsigned text) for c*x^k, with pi-coefficients parenthesized."""
    xs = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
    if c.is_rational:
        q = c.rational_value
        sign = 1 if q > 0 else -1
        mag = abs(q)
        if k == 0:
            return sign, _rat_text(mag)
        if mag == 1:
            return sign, xs
        return sign, f"{_rat_text(mag)}*{xs}"
    body = f"({_pipoly_text(c)})"
    return 1, body if k == 0 else f"{body}*{xs}"


def _rat_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _unipoly_text(u: UniPoly) -> str:
    pieces = []
    for k, c in enumerate(u.coeffs):
        if c.is_zero:
            continue
        pieces.append(_monomial_pieces(c, k))
    out = ""
    for idx, (sign, body) in enumerate(pieces):
        if idx == 0:
            out = body if sign > 0 else f"-{body}"
        else:
            out += f" + {body}" if sign > 0 else f" - {body}"
    return out or "0"


def _term_text(t: MixedTrigTerm) -> tuple[int, str]:
    trig = []
    if t.cos_pow:
        trig.append("cos(x)" if t.cos_pow == 1 else f"cos(x)^{t.cos_pow}")
    if t.sin_pow:
        trig.append("sin(x)" if t.sin_pow == 1 else f"sin(x)^{t.sin_pow}")
    nonzero = [(k, c) for k, c in enumerate(t.factor.coeffs) if not c.is_zero]
    if len(nonzero) == 1:
        k, c = nonzero[0]
        sign, body = _monomial_pieces(c, k)
        if trig and body == "1":
            return sign, "*".join(trig)
        return sign, "*".join([body] + trig)
    body = f"({_unipoly_text(t.factor)})"
    return 1, "*".join([body] + trig)


def print_function(f: MixedTrigPoly) -> str:
    if f.is_zero:
        return "0"
    out = ""
    for idx, t in enumerate(f.terms):
        sign, body = _term_text(t)
        if idx == 0:
            out = body if sign > 0 else f"-{body}"
        else:
            out += f" + {body}" if sign > 0 else f" - {body}"
    return out


def print_const(c: PiPoly) -> str:
    return _pipoly_text(c)


def print_problem(p: ProblemSpec) -> str:
    return (
        f"{print_function(p.f)} > 0 on ({print_const(p.lo)}, {print_const(p.hi)})"
    )


# --------------------------------------------------------------------------
# reflection and evaluation
# --------------------------------------------------------------------------


def half_pi_multiple(c: PiPoly) -> int | None:
    """k such that c == k*pi/2, or None."""
    if c.is_zero:
        return 0
    if c.degree != 1 or c.coeff(0) != 0:
        return None
    two_k = c.coeff(1) * 2
    if two_k.denominator != 1:
        return None
    return int(two_k)


_REFLECT_TABLE = {
    # k mod 4 -> ((new function of cos, its sign), (new function of sin, its sign))
    0: (("cos", 1), ("sin", -1)),
    1: (("sin", 1), ("cos", 1)),
    2: (("cos", -1), ("sin", 1)),
    3: (("sin", -1), ("cos", -1)),
}


def reflect(f: MixedTrigPoly, c: PiPoly) -> MixedTrigPoly:
    """g with g(x) = f(c - x), for c an integer multiple of pi/2.

    Only these centers keep the class closed: cos(c - x) and sin(c - x) are
    then (up to sign) cos x or sin x.
    """
    k = half_pi_multiple(c)
    if k is None:
        raise ReflectionError(
            f"reflection center {c.show()} is not an integer multiple of pi/2"
        )
    (cos_f, cos_s), (sin_f, sin_s) = _REFLECT_TABLE[k % 4]
    items = []
    for t in f.terms:
        factor = t.factor.compose_linear(c, -1)
        sign = (cos_s**t.cos_pow) * (sin_s**t.sin_pow)
        q = (t.cos_pow if cos_f == "cos" else 0) + (t.sin_pow if sin_f == "cos" else 0)
        r = (t.cos_pow if cos_f == "sin" else 0) + (t.sin_pow if sin_f == "sin" else 0)
        items.append((factor.scale(Fraction(sign)), q, r))
    return MixedTrigPoly.from_terms(items)


def eval_at_half_pi_multiple(f: MixedTrigPoly, k: int) -> PiPoly:
    """Exact value f(k*pi/2) as a PiPoly."""
    point = PiPoly.of(0, Fraction(k, 2))
    total = PI_ZERO
    for t in f.terms:
        c = trig_at_half_pi_multiple("cos", k)
        s = trig_at_half_pi_multiple("sin", k)
        if (c == 0 and t.cos_pow > 0) or (s == 0 and t.sin_pow > 0):
            continue
        trig = Fraction(c**t.cos_pow * s**t.sin_pow)
        total = total + t.factor.eval_pipoly(point).scale(trig)
    return total


def eval_enclosure(f: MixedTrigPoly, x: Fraction, precision_bits: int) -> RatInterval:
    """Rigorous enclosure of f(x) at an exact rational point."""
    x = rat(x)
    sin_iv = sin_enclosure(x, precision_bits)
    cos_iv = cos_enclosure(x, precision_bits)
    total = RatInterval.point(0)
    for t in f.terms:
        piece = t.factor.eval_rational(x).enclose(precision_bits)
        if t.cos_pow:
            piece = piece * cos_iv.power(t.cos_pow)
        if t.sin_pow:
            piece = piece * sin_iv.power(t.sin_pow)
        total = total + piece
    return total


def eval_float(f: MixedTrigPoly, x: float) -> float:
    """Float evaluation; diagnostics only, never part of a proof."""
    total = 0.0
    for t in f.terms:
        acc = 0.0
        for c in reversed(t.factor.coeffs):
            acc = acc * x + sum(
                float(a) * math.pi**i for i, a in enumerate(c.coeffs)
            )
        total += acc * math.cos(x) ** t.cos_pow * math.sin(x) ** t.sin_pow
    return total
