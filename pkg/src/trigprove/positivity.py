"""Certified positivity and least-positive-root isolation for UniPoly.

Two backends:

* Sturm sequences over exact rationals, used whenever the polynomial has
  rational coefficients. Root counts on (a, b] are exact; endpoint roots
  are handled by exact deflation instead of perturbation.
* Adaptive interval bisection for Q[pi] coefficients: the target interval
  is covered by closed rational leaves on each of which interval Horner
  certifies a strictly positive rational lower bound. Pi precision is
  raised only where an enclosure straddles zero.

A positivity claim on (0, delta] is reduced to x^j * R with R(0) != 0; the
open-interval variant additionally deflates exact (delta - x) factors so
that factors vanishing at the right endpoint (squared endpoint factors in
reflected problems) still certify.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .pipoly import PI_ZERO, PiPoly, pipoly_sign
from .rationals import RatInterval, rat, rat_str
from .unipoly import UniPoly, unipoly_eval_interval


class PositivityDisproved(Exception):
    """A certified point with a nonpositive value was found."""

    def __init__(self, witness: Fraction, strict: bool = True):
        kind = "negative" if strict else "zero"
        super().__init__(f"certified {kind} value at x = {witness}")
        self.witness = witness
        self.strict = strict


class PositivityUndecided(Exception):
    """Resource caps reached before the claim could be settled either way."""


# --------------------------------------------------------------------------
# dense rational polynomial helpers (Sturm backend)
# --------------------------------------------------------------------------


def _poly_eval(cs: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _poly_deriv(cs: list[Fraction]) -> list[Fraction]:
    return [cs[k] * k for k in range(1, len(cs))]


def _poly_strip(cs: list[Fraction]) -> list[Fraction]:
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return cs[:n]


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        factor = a[k + len(b) - 1] / lead
        q[k] = factor
        if factor:
            for j in range(len(b)):
                a[k + j] -= factor * b[j]
    return _poly_strip(q), _poly_strip(a)


def _poly_monic(cs: list[Fraction]) -> list[Fraction]:
    lead = cs[-1]
    return [c / lead for c in cs]


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _poly_strip(list(a)), _poly_strip(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return _poly_monic(a) if a else a


def _squarefree(cs: list[Fraction]) -> list[Fraction]:
    if len(cs) <= 2:
        return list(cs)
    g = _poly_gcd(cs, _poly_deriv(cs))
    if len(g) <= 1:
        return list(cs)
    q, r = _poly_divmod(cs, g)
    assert not r, "gcd must divide the polynomial"
    return q


def _deflate_rational_root(cs: list[Fraction], r: Fraction) -> list[Fraction]:
    out = [Fraction(0)] * (len(cs) - 1)
    acc = Fraction(0)
    for k in range(len(cs) - 1, 0, -1):
        acc = acc * r + cs[k]
        out[k - 1] = acc
    assert acc * r + cs[0] == 0, "not a root"
    return out


def _sturm_chain(cs: list[Fraction]) -> list[list[Fraction]]:
    chain = [list(cs), _poly_deriv(cs)]
    while chain[-1]:
        _, r = _poly_divmod(chain[-2], chain[-1])
        chain.append([-c for c in r])
    chain.pop()
    return chain


def _variations(values: list[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for s1, s2 in zip(signs, signs[1:]) if s1 != s2)


def _count_roots(cs: list[Fraction], a: Fraction, b: Fraction) -> int:
    """Distinct real roots of cs in (a, b]; endpoint roots handled exactly."""
    s = _squarefree(_poly_strip(list(cs)))
    if len(s) <= 1:
        return 0
    extra = 0
    if _poly_eval(s, a) == 0:
        s = _deflate_rational_root(s, a)
    if _poly_eval(s, b) == 0:
        s = _deflate_rational_root(s, b)
        extra = 1
    if len(s) <= 1:
        return extra
    chain = _sturm_chain(s)
    va = _variations([_poly_eval(p, a) for p in chain])
    vb = _variations([_poly_eval(p, b) for p in chain])
    return va - vb + extra


def sturm_count(p: UniPoly, a: Fraction | int, b: Fraction | int) -> int:
    """Number of distinct real roots of p in (a, b] by Sturm's theorem.

    p must have rational coefficients. Roots exactly at the endpoints are
    split off by exact deflation of the square-free part, so no numeric
    perturbation is ever needed.
    """
    if p.is_zero:
        raise ValueError("zero polynomial has no root count")
    cs = p.rational_coeffs()
    if cs is None:
        raise ValueError("Sturm counting requires rational coefficients")
    a, b = rat(a), rat(b)
    if not a < b:
        raise ValueError("need a < b")
    return _count_roots(cs, a, b)


def _cauchy_bound(cs: list[Fraction]) -> Fraction:
    lead = abs(cs[-1])
    if len(cs) == 1:
        return Fraction(1)
    return 1 + max(abs(c) for c in cs[:-1]) / lead


def cauchy_root_bound(p: UniPoly, precision_bits: int = 64) -> Fraction:
    """Rational B with every real root of p in [-B, B], via coefficient enclosures."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    cs = p.rational_coeffs()
    if cs is not None:
        return _cauchy_bound(cs)
    bits = precision_bits
    while True:
        lead = p.leading.enclose(bits)
        if lead.sign() not in (None, 0):
            break
        bits *= 2
    lead_low = min(abs(lead.lo), abs(lead.hi))
    top = Fraction(0)
    for c in p.coeffs[:-1]:
        iv = c.enclose(bits)
        top = max(top, abs(iv.lo), abs(iv.hi))
    return 1 + top / lead_low


# --------------------------------------------------------------------------
# proof objects
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BisectionLeaf:
    lo: Fraction
    hi: Fraction
    precision_bits: int


@dataclass(frozen=True)
class PositivityProof:
    """Replayable evidence that x^j (delta-x)^end_deflation R > 0 on the target.

    mode "sturm": R is rational with no roots in (lo, bound] and R(lo) > 0
    (R(0) > 0 for anchored targets), with bound >= delta.
    mode "bisection": the leaves tile [lo, bound], bound >= delta, and on
    each leaf interval Horner at the recorded precision gives a positive
    rational lower bound for R.
    """

    mode: str
    j: int
    end_deflation: int
    lo: Fraction
    bound: Fraction
    leaves: tuple[BisectionLeaf, ...] = ()
    root_count: int = 0
    sign_at_lo: int = 1

    def to_json(self) -> dict:
        out = {
            "mode": self.mode,
            "j": self.j,
            "end_deflation": self.end_deflation,
            "lo": rat_str(self.lo),
            "bound": rat_str(self.bound),
            "root_count": self.root_count,
            "sign_at_lo": self.sign_at_lo,
        }
        if self.mode == "bisection":
            out["leaves"] = [
                [rat_str(l.lo), rat_str(l.hi), l.precision_bits] for l in self.leaves
            ]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "PositivityProof":
        leaves = tuple(
            BisectionLeaf(rat(l[0]), rat(l[1]), int(l[2]))
            for l in data.get("leaves", [])
        )
        return cls(
            mode=str(data["mode"]),
            j=int(data["j"]),
            end_deflation=int(data["end_deflation"]),
            lo=rat(data["lo"]),
            bound=rat(data["bound"]),
            leaves=leaves,
            root_count=int(data["root_count"]),
            sign_at_lo=int(data["sign_at_lo"]),
        )


@dataclass(frozen=True)
class RootEnclosure:
    """[lo, hi] certified to contain exactly one (simple) real root."""

    lo: Fraction
    hi: Fraction
    sign_left: int
    sign_right: int
    multiplicity_claim: str = "simple"

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, value: Fraction) -> bool:
        return self.lo <= value <= self.hi


@dataclass(frozen=True)
class NoPositiveRoot:
    """Certificate that the polynomial has no root in (0, bound]."""

    bound: Fraction


# --------------------------------------------------------------------------
# bisection engine
# --------------------------------------------------------------------------

_MAX_LEAVES = 20000


def _dyadic_above(c: PiPoly, bits: int) -> Fraction:
    """A dyadic rational >= c(pi)."""
    return c.enclose(bits).hi


def _bisect_positive(
    q: UniPoly,
    a: Fraction,
    b: Fraction,
    start_bits: int,
    cap_bits: int,
    trim_delta: PiPoly | None = None,
) -> tuple[tuple[BisectionLeaf, ...], Fraction]:
    """Cover [a, b] (or [a, some point >= trim_delta]) with positive leaves.

    Returns (leaves, effective right end). Raises PositivityDisproved on a
    certified negative leaf, PositivityUndecided on resource exhaustion.
    """
    min_width = (b - a) / 2**48
    stack = [(a, b, start_bits)]
    leaves: list[BisectionLeaf] = []
    stuck: list[tuple[Fraction, Fraction]] = []
    while stack:
        if len(leaves) + len(stack) > _MAX_LEAVES:
            raise PositivityUndecided("bisection leaf budget exhausted")
        lo, hi, bits = stack.pop()
        iv = unipoly_eval_interval(q, RatInterval(lo, hi), bits)
        if iv.lo > 0:
            leaves.append(BisectionLeaf(lo, hi, bits))
            continue
        if iv.hi < 0:
            mid = (lo + hi) / 2
            assert pipoly_sign(q.eval_rational(mid)) < 0
            raise PositivityDisproved(mid)
        if trim_delta is not None and lo != a:
            if pipoly_sign(PiPoly.const(lo) - trim_delta) >= 0:
                # everything past lo lies beyond delta: the cover may stop here
                return tuple(leaves), lo
        if hi - lo > min_width:
            mid = (lo + hi) / 2
            stack.append((mid, hi, bits))
            stack.append((lo, mid, bits))
        elif bits < cap_bits:
            stack.append((lo, hi, bits * 2))
        else:
            # keep going: a certified-negative leaf further right should
            # take precedence over an unresolved sliver
            stuck.append((lo, hi))
    if stuck:
        lo, hi = stuck[0]
        raise PositivityUndecided(
            f"enclosure straddles zero near [{lo}, {hi}] at {cap_bits} bits"
        )
    return tuple(leaves), b


# --------------------------------------------------------------------------
# positivity proofs
# --------------------------------------------------------------------------


def _find_negative_point_near_zero(q: UniPoly, upto: Fraction) -> Fraction:
    """A rational witness with q < 0, for q certified negative near 0+."""
    pt = upto / 2
    for _ in range(512):
        if pipoly_sign(q.eval_rational(pt)) < 0:
            return pt
        pt /= 2
    raise PositivityUndecided("could not realize a negative witness near zero")


def _reduced_parts(
    p: UniPoly, delta: PiPoly, lo: Fraction, open_right: bool
) -> tuple[UniPoly, int, int]:
    """Split p into x^j * (delta - x)^k * R; R is returned."""
    j = 0
    w = p
    if lo == 0:
        j = p.trailing_index
        w = p.shift_down(j)
    k = 0
    if open_right:
        while w.eval_pipoly(delta).is_zero and not w.is_zero:
            w = w.deflate_root(delta)
            k += 1
        if k % 2 == 1:
            w = -w
    return w, j, k


def prove_positive(
    p: UniPoly,
    delta: PiPoly,
    precision_bits: int = 256,
    *,
    lo: Fraction | int = 0,
    open_right: bool = False,
) -> PositivityProof:
    """Prove p(x) > 0 for x in (lo, delta] (or the open (lo, delta)).

    For lo == 0 the trailing power x^j is factored out exactly; with
    open_right, exact (delta - x) factors are deflated as well. Raises
    PositivityDisproved with a certified witness if p is negative
    somewhere, PositivityUndecided when resource caps are hit or p
    vanishes inside the closed target.
    """
    if p.is_zero:
        raise ValueError("zero polynomial is not positive")
    lo = rat(lo)
    if lo < 0:
        raise ValueError("target interval must sit in x >= 0")
    w, j, k_end = _reduced_parts(p, delta, lo, open_right)
    if w.is_zero:
        raise ValueError("polynomial is a pure power of deflated factors")
    delta_hint = delta.enclose(max(precision_bits, 64)).hi
    if lo == 0:
        s0 = pipoly_sign(w.eval_rational(0))
        if s0 < 0:
            raise PositivityDisproved(_find_negative_point_near_zero(w, delta_hint))
        assert s0 != 0, "trailing coefficient vanished after reduction"
    else:
        # box targets are closed at both ends: the edge value must be positive
        s_lo = pipoly_sign(w.eval_rational(lo))
        if s_lo < 0:
            raise PositivityDisproved(lo)
        if s_lo == 0:
            raise PositivityDisproved(lo, strict=False)
    if not open_right:
        v = p.eval_pipoly(delta)
        if v.is_zero:
            raise PositivityUndecided("p vanishes exactly at the right endpoint")

    if w.is_rational:
        return _prove_positive_sturm(w, delta, precision_bits, lo, j, k_end)
    return _prove_positive_bisect(w, delta, precision_bits, lo, j, k_end)


def _prove_positive_sturm(
    w: UniPoly, delta: PiPoly, bits: int, lo: Fraction, j: int, k_end: int
) -> PositivityProof:
    cs = w.rational_coeffs()
    assert cs is not None
    bound = delta.rational_value if delta.is_rational else _dyadic_above(delta, bits)
    attempt = 0
    while True:
        count = _count_roots(cs, lo, bound)
        if count == 0:
            return PositivityProof(
                mode="sturm", j=j, end_deflation=k_end, lo=lo, bound=bound,
                root_count=0, sign_at_lo=1,
            )
        root = _least_root_rational(w, lo, bound, Fraction(1, 10**6))
        assert isinstance(root, RootEnclosure)
        if delta.is_rational:
            # root lies at or below delta: strict positivity fails
            _raise_root_failure(w, root, bound)
        gap_bits = bits
        while gap_bits <= 1 << 20:
            d_iv = delta.enclose(gap_bits)
            if d_iv.hi < root.lo:
                bound = d_iv.hi
                break
            if root.hi < d_iv.lo:
                _raise_root_failure(w, root, bound)
            gap_bits *= 2
        else:
            raise PositivityUndecided("root enclosure inseparable from delta")
        attempt += 1
        if attempt > 64:
            raise PositivityUndecided("could not separate roots from delta")


def _raise_root_failure(w: UniPoly, root: RootEnclosure, bound: Fraction):
    """Root at or below the target: produce a witness if the sign flips."""
    step = max(root.width, Fraction(1, 10**6))
    pt = root.hi + step / 2
    for _ in range(64):
        if pt > bound:
            break
        if pipoly_sign(w.eval_rational(pt)) < 0:
            raise PositivityDisproved(pt)
        pt += step
        step *= 2
    raise PositivityUndecided(
        f"p has a root inside the target near [{root.lo}, {root.hi}]"
    )


def _prove_positive_bisect(
    w: UniPoly, delta: PiPoly, bits: int, lo: Fraction, j: int, k_end: int
) -> PositivityProof:
    if delta.is_rational:
        top = delta.rational_value
        trim = None
    else:
        top = _dyadic_above(delta, max(bits, 64))
        trim = delta
    leaves, effective = _bisect_positive(w, lo, top, min(bits, 64), bits, trim)
    return PositivityProof(
        mode="bisection", j=j, end_deflation=k_end, lo=lo, bound=effective,
        leaves=leaves, root_count=0, sign_at_lo=1,
    )


def verify_positivity(
    p: UniPoly,
    delta: PiPoly,
    proof: PositivityProof,
    *,
    lo: Fraction | int = 0,
    open_right: bool = False,
) -> None:
    """Deterministically re-verify a PositivityProof; raises ValueError on any defect."""
    lo = rat(lo)
    if p.is_zero:
        raise ValueError("zero polynomial")
    if proof.lo != lo:
        raise ValueError("proof target start does not match")
    if proof.root_count != 0 or proof.sign_at_lo != 1:
        raise ValueError("evidence must claim zero roots and a positive edge")
    if not open_right and proof.end_deflation:
        raise ValueError("end deflation is only sound for open targets")
    w = p
    if lo == 0:
        if proof.j != p.trailing_index:
            raise ValueError("recorded x-multiplicity is wrong")
        w = p.shift_down(proof.j)
    elif proof.j != 0:
        raise ValueError("box proofs cannot deflate x^j")
    for _ in range(proof.end_deflation):
        try:
            w = w.deflate_root(delta)
        except ValueError as exc:
            raise ValueError(f"end deflation does not divide: {exc}") from exc
    if proof.end_deflation % 2 == 1:
        w = -w
    if w.is_zero:
        raise ValueError("nothing left after deflation")
    if pipoly_sign(PiPoly.const(proof.bound) - delta) < 0:
        raise ValueError("recorded bound does not reach delta")
    if lo == 0:
        if pipoly_sign(w.eval_rational(0)) <= 0:
            raise ValueError("reduced polynomial is not positive at 0")
    else:
        if pipoly_sign(w.eval_rational(lo)) <= 0:
            raise ValueError("reduced polynomial is not positive at the box edge")
    if proof.mode == "sturm":
        if w.rational_coeffs() is None:
            raise ValueError("sturm evidence on a non-rational polynomial")
        if sturm_count(w, lo, proof.bound) != 0:
            raise ValueError("sturm recount found roots inside the target")
        return
    if proof.mode == "bisection":
        if not proof.leaves:
            raise ValueError("bisection evidence has no leaves")
        if proof.leaves[0].lo != lo or proof.leaves[-1].hi != proof.bound:
            raise ValueError("leaves do not span the recorded target")
        prev = lo
        for leaf in proof.leaves:
            if leaf.lo != prev or leaf.hi <= leaf.lo:
                raise ValueError("leaves do not tile the target")
            bits = leaf.precision_bits
            if bits < 8 or bits & (bits - 1):
                raise ValueError("leaf precision must be a power of two >= 8")
            iv = unipoly_eval_interval(w, RatInterval(leaf.lo, leaf.hi), bits)
            if not iv.lo > 0:
                raise ValueError(
                    f"leaf [{leaf.lo}, {leaf.hi}] is not certified positive"
                )
            prev = leaf.hi
        return
    raise ValueError(f"unknown positivity mode {proof.mode!r}")


# --------------------------------------------------------------------------
# least positive root
# --------------------------------------------------------------------------


def _least_root_rational(
    q: UniPoly, lo: Fraction, bound: Fraction, width: Fraction
) -> RootEnclosure | NoPositiveRoot:
    cs = q.rational_coeffs()
    assert cs is not None
    if _count_roots(cs, lo, bound) == 0:
        return NoPositiveRoot(bound)
    sf = _squarefree(_poly_strip(list(cs)))
    a, b = lo, bound
    inner = width / 2
    while True:
        if _count_roots(cs, a, b) == 1 and b - a <= inner:
            if _poly_eval(sf, b) == 0:
                # exact rational root at b: nudge the right edge past it
                step = width / 4
                while _poly_eval(sf, b + step) == 0 or _count_roots(cs, a, b + step) != 1:
                    step /= 2
                b = b + step
            sa, sb = _poly_eval(sf, a), _poly_eval(sf, b)
            return RootEnclosure(
                a, b,
                sign_left=1 if sa > 0 else -1,
                sign_right=1 if sb > 0 else -1,
            )
        m = (a + b) / 2
        if _count_roots(cs, a, m) >= 1:
            b = m
        else:
            a = m


def _grid_sign(q: UniPoly, x: Fraction) -> int:
    return pipoly_sign(q.eval_rational(x))


def _least_root_pipoly(
    q: UniPoly, bound: Fraction, width: Fraction, bits: int
) -> RootEnclosure | NoPositiveRoot:
    s0 = _grid_sign(q, Fraction(0))
    assert s0 != 0
    # find any point where the sign differs from the sign at 0+
    opposite: Fraction | None = None
    for depth in range(3, 24):
        step = bound / 2**depth
        pt = step
        while pt <= bound:
            s = _grid_sign(q, pt)
            if s == 0:
                pt += step / 3  # exact root on the grid: shift the probe
                continue
            if s != s0:
                opposite = pt
                break
            pt += step
        if opposite is not None:
            break
        try:
            _bisect_positive(q.scale(s0), Fraction(0), bound, min(bits, 64), bits)
            return NoPositiveRoot(bound)
        except PositivityDisproved as exc:
            opposite = exc.witness
            break
        except PositivityUndecided:
            continue
    if opposite is None:
        raise PositivityUndecided("no sign change found and positivity unresolved")

    a, b = Fraction(0), opposite
    while True:
        while b - a > width / 2:
            m = (a + b) / 2
            s = _grid_sign(q, m)
            if s == 0:
                m += (b - a) / 64
                s = _grid_sign(q, m)
                if s == 0:
                    raise PositivityUndecided("repeated exact roots while refining")
            if s == s0:
                a = m
            else:
                b = m
        # back the left edge off the crossing so the leastness certification
        # never has to separate a vanishingly small value from zero
        a = max(Fraction(0), a - width / 4)
        if a == 0:
            break  # the crossing hugs 0: nothing to the left to certify
        try:
            # leastness: the sign at 0+ persists on all of (0, a]
            _bisect_positive(q.scale(s0), Fraction(0), a, min(bits, 64), bits)
            break
        except PositivityDisproved as exc:
            # an earlier crossing exists below a: restart beneath it
            a, b = Fraction(0), exc.witness
    _certify_simple(q, a, b, bits)
    return RootEnclosure(a, b, sign_left=s0, sign_right=-s0)


def _certify_simple(q: UniPoly, a: Fraction, b: Fraction, bits: int) -> None:
    d = q.derivative()
    local_bits = min(bits, 64)
    while True:
        iv = unipoly_eval_interval(d, RatInterval(a, b), local_bits)
        if iv.sign() in (1, -1):
            return
        if local_bits >= bits:
            raise PositivityUndecided(
                "could not certify a simple root: derivative sign unresolved"
            )
        local_bits *= 2


def least_positive_root(
    p: UniPoly,
    width_target: Fraction | int = Fraction(1, 100000),
    precision_bits: int = 256,
    bound: Fraction | None = None,
) -> RootEnclosure | NoPositiveRoot:
    """Enclose the least positive root of p to the requested width.

    Returns NoPositiveRoot(B) when p has no root in (0, B] for the Cauchy
    bound B (or the supplied bound). The root at x = 0, if any, is ignored.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    width = rat(width_target)
    q = p.shift_down(p.trailing_index)
    if q.degree == 0:
        return NoPositiveRoot(bound if bound is not None else Fraction(1))
    top = bound if bound is not None else cauchy_root_bound(q, precision_bits)
    if q.is_rational:
        return _least_root_rational(q, Fraction(0), top, width)
    return _least_root_pipoly(q, top, width, precision_bits)


# --------------------------------------------------------------------------
# sign determination on an interval
# --------------------------------------------------------------------------


def sign_on_interval(
    m: UniPoly, hi: PiPoly, precision_bits: int = 256
) -> tuple[int, PositivityProof] | None:
    """Certified constant sign of m on the open interval (0, hi), or None.

    None means the sign could not be certified constant (it varies, m
    touches zero inside, or resources ran out); callers fall back to the
    monomial split, which always yields sign-definite pieces.
    """
    if m.is_zero:
        raise ValueError("zero polynomial has no sign")
    s0 = pipoly_sign(m.coeffs[m.trailing_index])
    try:
        proof = prove_positive(
            m.scale(s0), hi, precision_bits, open_right=True
        )
        return s0, proof
    except (PositivityDisproved, PositivityUndecided):
        return None
