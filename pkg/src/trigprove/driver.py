"""End-to-end proof search for mixed trigonometric polynomial inequalities.

Pipeline: a local-sign gate at 0 (fast refutation), multiple-angle
expansion with sign normalization, Maclaurin-bound substitution at the
smallest valid degrees, certified positivity of the resulting polynomial,
uniform degree escalation on failure, and - when the right endpoint is a
multiple of pi/2 where f vanishes - an interval split just below the least
positive root of the failed polynomial, with the right piece handled
through the reflection x -> endpoint - x.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import certificate as certmod
from .multiangle import expand_poly
from .pipoly import PiPoly, PrecisionExhausted, pipoly_sign
from .positivity import (
    NoPositiveRoot,
    PositivityDisproved,
    PositivityProof,
    PositivityUndecided,
    RootEnclosure,
    least_positive_root,
    prove_positive,
)
from .problems import (
    MixedTrigPoly,
    ProblemSpec,
    eval_at_half_pi_multiple,
    eval_enclosure,
    eval_float,
    half_pi_multiple,
    print_problem,
    reflect,
)
from .rationals import rat
from .series import LocalSign, local_sign
from .taylor import (
    NormalizedSum,
    SubstitutionRow,
    direction_for,
    min_valid_index,
    normalize_signs,
    substitute_bounds,
    template_degree,
)
from .unipoly import UniPoly

reflect_at = reflect


@dataclass(frozen=True)
class SearchConfig:
    k_max: int = 16
    split_depth_max: int = 4
    precision_cap: int = 256
    width_target: Fraction = Fraction(1, 100000)
    max_series_order: int = 64

    def __post_init__(self) -> None:
        if self.k_max < 0 or self.split_depth_max < 0:
            raise ValueError("caps must be nonnegative")
        if self.precision_cap < 8:
            raise ValueError("precision cap below 8 bits")
        if not self.width_target > 0:
            raise ValueError("width target must be positive")


@dataclass(frozen=True)
class Witness:
    """Rational point with a certified nonpositive value of f."""

    point: Fraction
    value_hi: Fraction
    strict: bool


@dataclass(frozen=True)
class Piece:
    """One proven sub-target, in the coordinates of its own function."""

    t_lo: Fraction
    t_target: PiPoly
    t_valid: PiPoly
    rows: tuple[SubstitutionRow, ...]
    constant_part: UniPoly
    polynomial: UniPoly
    positivity: PositivityProof


@dataclass(frozen=True)
class ProofStep:
    """Piece mapped onto the original x-axis."""

    x_lo: PiPoly
    x_hi: PiPoly
    reflect_center: PiPoly | None
    piece: Piece


@dataclass(frozen=True)
class ProofOutcome:
    verdict: str  # "proved" | "refuted" | "gave-up"
    problem: ProblemSpec
    steps: tuple[ProofStep, ...] = ()
    certificate: bytes | None = None
    witness: Witness | None = None
    diagnostics: tuple[dict, ...] = ()


class _PieceRefuted(Exception):
    """The piece's function is certifiably nonpositive somewhere."""

    def __init__(self, kind: str, t_point: Fraction | None = None):
        super().__init__(kind)
        self.kind = kind  # "near-zero" | "point"
        self.t_point = t_point


@dataclass(frozen=True)
class _ReflectRequest:
    split_at: Fraction
    left: Piece


def _floor_thousandth(r: Fraction) -> Fraction:
    n = (r.numerator * 1000) // r.denominator
    if Fraction(n, 1000) >= r:
        n -= 1
    return Fraction(n, 1000)


def _certify_negative_point(
    f: MixedTrigPoly, x: Fraction, cap_bits: int
) -> Witness | None:
    bits = 64
    while bits <= max(cap_bits, 64):
        iv = eval_enclosure(f, x, bits)
        if iv.hi < 0:
            return Witness(x, iv.hi, strict=True)
        if iv.lo > 0:
            return None
        bits *= 2
    return None


def _scan_for_negative(
    f: MixedTrigPoly,
    lo: PiPoly,
    hi: PiPoly,
    cfg: SearchConfig,
    hint: float | None = None,
    samples: int = 64,
) -> Witness | None:
    """Float scan for a negative region, then rigorous certification."""
    lo_f = lo.enclose(64).hi
    hi_f = hi.enclose(64).lo
    if not hi_f > lo_f:
        return None
    candidates: list[Fraction] = []
    if hint is not None:
        base = Fraction(hint).limit_denominator(10**6)
        for wiggle in (-2, -1, 0, 1, 2):
            candidates.append(base + Fraction(wiggle, 4096))
    step = (hi_f - lo_f) / (samples + 1)
    grid = [lo_f + step * i for i in range(1, samples + 1)]
    scored = sorted(grid, key=lambda q: eval_float(f, float(q)))
    candidates.extend(scored[:8])
    for x in candidates:
        if not lo_f < x < hi_f:
            continue
        if eval_float(f, float(x)) > 1e-9:
            continue
        w = _certify_negative_point(f, x, cfg.precision_cap * 64)
        if w is not None:
            return w
    return None


def _min_indices(norm: NormalizedSum) -> list[int]:
    out = []
    for part in norm.parts:
        direction = direction_for(part.sub.func, part.sign)
        out.append(
            min_valid_index(part.sub.func, direction, part.sub.multiple, norm.hi)
        )
    return out


def _degrees_at(norm: NormalizedSum, min_l: list[int], k: int) -> list[int]:
    out = []
    for part, l0 in zip(norm.parts, min_l):
        direction = direction_for(part.sub.func, part.sign)
        out.append(template_degree(part.sub.func, direction, max(l0, k)))
    return out


def _root_summary(res: RootEnclosure | NoPositiveRoot | None) -> str | None:
    if res is None:
        return None
    if isinstance(res, NoPositiveRoot):
        return f"no root below {res.bound}"
    return f"[{res.lo}, {res.hi}]"


def _prove_anchored(
    f_t: MixedTrigPoly,
    t_hi: PiPoly,
    cfg: SearchConfig,
    diags: list[dict],
    label: str,
    depth: int,
    allow_reflection: bool,
) -> list[Piece] | _ReflectRequest | None:
    """Prove f_t > 0 on (0, t_hi] - epsilon-free at the right end when
    f_t(t_hi) = 0 exactly, in which case a _ReflectRequest is returned."""
    bits = cfg.precision_cap
    ls = local_sign(f_t, cfg.max_series_order)
    if ls is None:
        diags.append({"piece": label, "stage": "local-sign",
                      "outcome": "vanishing series"})
        return None
    if ls.sign < 0:
        raise _PieceRefuted("near-zero")
    diags.append({"piece": label, "stage": "local-sign",
                  "order": ls.order, "sign": "+"})

    k_half = half_pi_multiple(t_hi)
    end_zero = False
    if k_half is not None and k_half >= 1:
        end_value = eval_at_half_pi_multiple(f_t, k_half)
        if end_value.is_zero:
            end_zero = True
        elif pipoly_sign(end_value) < 0:
            raise _PieceRefuted("point")

    s = expand_poly(f_t)
    norm = normalize_signs(s, t_hi, bits)
    if not norm.parts:
        # no trig content: the constant part is the function itself
        try:
            proof = prove_positive(norm.constant_part, t_hi, bits)
        except PositivityDisproved as exc:
            raise _PieceRefuted("point", exc.witness)
        except PositivityUndecided as exc:
            diags.append({"piece": label, "stage": "polynomial",
                          "outcome": "undecided", "detail": str(exc)})
            return None
        return [Piece(Fraction(0), t_hi, t_hi, (), norm.constant_part,
                      norm.constant_part, proof)]
    min_l = _min_indices(norm)

    snapshots: list[tuple[int, object, Fraction]] = []
    for k in range(cfg.k_max + 1):
        degrees = _degrees_at(norm, min_l, k)
        sub = substitute_bounds(norm, degrees)
        p = sub.polynomial
        record: dict = {"piece": label, "stage": "attempt", "K": k,
                        "degrees": degrees}
        if p.is_zero or pipoly_sign(p.coeffs[p.trailing_index]) < 0:
            record["outcome"] = "lower bound negative near 0"
            diags.append(record)
            continue
        try:
            proof = prove_positive(p, t_hi, bits)
            record["outcome"] = "proved"
            diags.append(record)
            return [Piece(Fraction(0), t_hi, t_hi, sub.rows,
                          sub.constant_part, p, proof)]
        except PositivityDisproved as exc:
            record["outcome"] = "lower bound fails"
            record["detail"] = f"negative near {float(exc.witness):.6f}"
        except PositivityUndecided as exc:
            record["outcome"] = "undecided"
            record["detail"] = str(exc)

        root: RootEnclosure | NoPositiveRoot | None = None
        if depth < cfg.split_depth_max:
            try:
                top = t_hi.enclose(64).hi * Fraction(17, 16)
                root = least_positive_root(p, cfg.width_target, bits, bound=top)
            except (PositivityUndecided, PrecisionExhausted):
                root = None
        record["root"] = _root_summary(root)
        diags.append(record)

        a_star = Fraction(0)
        if isinstance(root, RootEnclosure):
            a_star = _floor_thousandth(root.lo)
        usable = (
            a_star > 0
            and pipoly_sign(PiPoly.const(2 * a_star) - t_hi) >= 0
            and pipoly_sign(t_hi - PiPoly.const(a_star)) > 0
        )
        if not usable:
            continue
        if end_zero:
            # no P can be positive through an endpoint zero of f: split now
            if not (allow_reflection and k_half is not None and k_half >= 1):
                diags.append({"piece": label, "stage": "split",
                              "outcome": "endpoint zero but reflection "
                                         "unavailable"})
                return None
            try:
                left_proof = prove_positive(p, PiPoly.const(a_star), bits)
            except (PositivityDisproved, PositivityUndecided):
                continue
            diags.append({"piece": label, "stage": "split", "at": str(a_star),
                          "mode": "reflect"})
            left = Piece(Fraction(0), PiPoly.const(a_star), t_hi, sub.rows,
                         sub.constant_part, p, left_proof)
            return _ReflectRequest(a_star, left)
        snapshots.append((k, sub, a_star))

    # escalation exhausted: fall back to one interval split with the most
    # advanced usable attempt on the left and higher degrees on the right box
    for k, sub, a_star in reversed(snapshots):
        try:
            left_proof = prove_positive(sub.polynomial, PiPoly.const(a_star), bits)
        except (PositivityDisproved, PositivityUndecided):
            continue
        left = Piece(Fraction(0), PiPoly.const(a_star), t_hi, sub.rows,
                     sub.constant_part, sub.polynomial, left_proof)
        for k2 in range(k + 1, cfg.k_max + 1):
            sub2 = substitute_bounds(norm, _degrees_at(norm, min_l, k2))
            try:
                proof2 = prove_positive(sub2.polynomial, t_hi, bits, lo=a_star)
            except (PositivityDisproved, PositivityUndecided):
                continue
            diags.append({"piece": label, "stage": "split", "at": str(a_star),
                          "mode": "box", "K2": k2})
            return [left, Piece(a_star, t_hi, t_hi, sub2.rows,
                                sub2.constant_part, sub2.polynomial, proof2)]
    return None


def prove(p: ProblemSpec, cfg: SearchConfig | None = None) -> ProofOutcome:
    """Attempt to prove, refute, or give up on f > 0 over (lo, hi).

    A proved outcome carries a serialized certificate that replays without
    the search; a refuted outcome carries a rational witness point whose
    value is certified nonpositive.
    """
    cfg = cfg or SearchConfig()
    diags: list[dict] = []
    lo_is_zero = p.lo.is_zero

    if p.f.is_zero:
        point = p.hi.enclose(64).lo / 2
        return ProofOutcome(
            "refuted", p, witness=Witness(point, Fraction(0), strict=False),
            diagnostics=({"stage": "gate", "outcome": "identically zero"},),
        )

    if lo_is_zero:
        ls = local_sign(p.f, cfg.max_series_order)
        if ls is None:
            return ProofOutcome(
                "gave-up", p,
                diagnostics=({"stage": "gate",
                              "outcome": "series vanishes through cap"},),
            )
        if ls.sign < 0:
            w = _refute_near_zero(p.f, p.hi, cfg)
            if w is not None:
                diags.append({"stage": "gate", "outcome": "local sign negative",
                              "order": ls.order})
                return ProofOutcome("refuted", p, witness=w,
                                    diagnostics=tuple(diags))
            return ProofOutcome(
                "gave-up", p,
                diagnostics=({"stage": "gate",
                              "outcome": "negative local sign, witness "
                                         "certification failed"},),
            )

    w = _scan_for_negative(p.f, p.lo, p.hi, cfg)
    if w is not None:
        diags.append({"stage": "scan", "outcome": "negative sample certified"})
        return ProofOutcome("refuted", p, witness=w, diagnostics=tuple(diags))

    try:
        result = _prove_anchored(p.f, p.hi, cfg, diags, "direct", 0, True)
        steps: list[ProofStep] = []
        if isinstance(result, _ReflectRequest):
            center = p.hi
            g = reflect(p.f, center)
            c_rest = center - PiPoly.const(result.split_at)
            rest = _prove_anchored(g, c_rest, cfg, diags, "reflected", 1, False)
            if rest is None:
                return ProofOutcome("gave-up", p, diagnostics=tuple(diags))
            steps.append(ProofStep(PiPoly.const(0),
                                   PiPoly.const(result.split_at), None,
                                   result.left))
            for piece in rest:
                steps.append(ProofStep(center - piece.t_target,
                                       center - PiPoly.const(piece.t_lo),
                                       center, piece))
        elif result is None:
            return ProofOutcome("gave-up", p, diagnostics=tuple(diags))
        else:
            for piece in result:
                steps.append(ProofStep(PiPoly.const(piece.t_lo),
                                       piece.t_target, None, piece))
        steps.sort(key=lambda st: st.x_lo.enclose(64).lo)
        outcome = ProofOutcome("proved", p, steps=tuple(steps),
                               diagnostics=tuple(diags))
        cert = certmod.emit(outcome)
        return replace(outcome, certificate=cert)
    except _PieceRefuted as exc:
        hint: float | None = None
        if exc.t_point is not None:
            hint = float(exc.t_point)
        elif exc.kind == "near-zero":
            hint = None
        w = _scan_for_negative(p.f, p.lo, p.hi, cfg, hint=hint, samples=256)
        if w is None and lo_is_zero:
            w = _refute_near_zero(p.f, p.hi, cfg)
        if w is not None:
            diags.append({"stage": "search", "outcome": "refuted"})
            return ProofOutcome("refuted", p, witness=w,
                                diagnostics=tuple(diags))
        diags.append({"stage": "search",
                      "outcome": "nonpositive value detected but witness "
                                 "certification failed"})
        return ProofOutcome("gave-up", p, diagnostics=tuple(diags))


def _refute_near_zero(
    f: MixedTrigPoly, hi: PiPoly, cfg: SearchConfig
) -> Witness | None:
    base = hi.enclose(64).lo
    point = base / 2
    for _ in range(80):
        w = _certify_negative_point(f, point, cfg.precision_cap * 16)
        if w is not None:
            return w
        point /= 2
    return None
