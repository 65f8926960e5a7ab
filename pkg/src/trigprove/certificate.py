"""Serialized proof certificates and their independent checker.

A certificate stores, per proven piece: the covered slice of the original
interval, the reflection center (if the piece lives on reflected
coordinates), the expansion table with per-sub-addend certified signs, the
Maclaurin degree table, the resulting polynomial, and the positivity
evidence. The checker replays all of it from the problem text with the
algebraic core only - it never runs the proof search - and rejects on the
first mismatch.

Format v1 is canonical JSON: sorted keys, no insignificant whitespace, all
rationals as "p/q" strings, Q[pi] constants as arrays of such strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .multiangle import MultiAngleSum, SubAddend, expand_poly
from .pipoly import PI_ZERO, PiPoly, pipoly_sign
from .positivity import PositivityProof, verify_positivity
from .problems import (
    MixedTrigPoly,
    ProblemSpec,
    half_pi_multiple,
    parse_problem,
    print_problem,
    reflect,
)
from .rationals import rat, rat_str
from .taylor import maclaurin, template_degree
from .unipoly import U_ZERO, UniPoly

FORMAT_VERSION = 1


@dataclass(frozen=True)
class CheckResult:
    accepted: bool
    reason: str | None = None


def _pipoly_json(c: PiPoly) -> list[str]:
    return c.to_strings()


def _unipoly_json(u: UniPoly) -> list[list[str]]:
    return u.to_strings()


def _step_json(step) -> dict:
    piece = step.piece
    subaddends = []
    for row in piece.rows:
        subaddends.append({
            "factor": _unipoly_json(row.sub.factor),
            "func": row.sub.func,
            "multiple": row.sub.multiple,
            "coeff": rat_str(row.sub.coeff),
            "sign": "+" if row.sign > 0 else "-",
            "sign_evidence": row.sign_proof.to_json(),
        })
    return {
        "x_domain": [_pipoly_json(step.x_lo), _pipoly_json(step.x_hi)],
        "reflection": None if step.reflect_center is None
        else _pipoly_json(step.reflect_center),
        "t_target": [rat_str(piece.t_lo), _pipoly_json(piece.t_target)],
        "t_valid": _pipoly_json(piece.t_valid),
        "expansion": {
            "constant_part": _unipoly_json(piece.constant_part),
            "subaddends": subaddends,
        },
        "degrees": [row.degree for row in piece.rows],
        "polynomial": _unipoly_json(piece.polynomial),
        "positivity": piece.positivity.to_json(),
    }


def emit(outcome) -> bytes:
    """Serialize a proved outcome; canonical byte form, round-trip stable."""
    if outcome.verdict != "proved":
        raise ValueError(f"cannot emit a certificate for a {outcome.verdict} outcome")
    doc = {
        "version": FORMAT_VERSION,
        "problem": print_problem(outcome.problem),
        "steps": [_step_json(s) for s in outcome.steps],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("ascii")


def parse_certificate(data: bytes) -> dict:
    doc = json.loads(data.decode("utf-8"))
    if not isinstance(doc, dict):
        raise ValueError("certificate is not an object")
    return doc


class _Reject(Exception):
    pass


def _need(cond: bool, reason: str) -> None:
    if not cond:
        raise _Reject(reason)


def _load_pipoly(data) -> PiPoly:
    _need(isinstance(data, list) and all(isinstance(s, str) for s in data),
          "malformed Q[pi] constant")
    return PiPoly.from_strings(data)


def _load_unipoly(data) -> UniPoly:
    _need(isinstance(data, list), "malformed polynomial")
    for c in data:
        _need(isinstance(c, list) and all(isinstance(s, str) for s in c),
              "malformed polynomial coefficient")
    return UniPoly.from_strings(data)


def _check_step(index: int, step: dict, f: MixedTrigPoly) -> tuple[PiPoly, PiPoly]:
    """Verify one step; returns its (x_lo, x_hi) for the coverage check."""
    where = f"step {index}"
    for key in ("x_domain", "reflection", "t_target", "t_valid",
                "expansion", "degrees", "polynomial", "positivity"):
        _need(key in step, f"{where}: missing field {key}")
    x_lo = _load_pipoly(step["x_domain"][0])
    x_hi = _load_pipoly(step["x_domain"][1])
    t_lo = rat(step["t_target"][0])
    t_target = _load_pipoly(step["t_target"][1])
    t_valid = _load_pipoly(step["t_valid"])

    if step["reflection"] is None:
        f_t = f
        _need(x_lo == PiPoly.const(t_lo) and x_hi == t_target,
              f"{where}: domain does not match the positivity target")
    else:
        center = _load_pipoly(step["reflection"])
        k = half_pi_multiple(center)
        _need(k is not None and k >= 1,
              f"{where}: reflection center is not a positive multiple of pi/2")
        _need(x_lo == center - t_target and x_hi == center - PiPoly.const(t_lo),
              f"{where}: reflected domain does not match the positivity target")
        f_t = reflect(f, center)
    _need(pipoly_sign(t_valid - t_target) >= 0,
          f"{where}: positivity target exceeds the substitution interval")
    _need(t_lo >= 0, f"{where}: negative target start")

    # expansion table must reproduce the multiple-angle form of f_t exactly
    expansion = step["expansion"]
    constant_part = _load_unipoly(expansion["constant_part"])
    recorded: dict[tuple[str, int], UniPoly] = {}
    rows = []
    for sa in expansion["subaddends"]:
        factor = _load_unipoly(sa["factor"])
        func = sa["func"]
        _need(func in ("sin", "cos"), f"{where}: unknown function {func!r}")
        multiple = int(sa["multiple"])
        _need(multiple >= 1, f"{where}: bad angle multiple")
        coeff = rat(sa["coeff"])
        _need(coeff != 0 and not factor.is_zero, f"{where}: degenerate sub-addend")
        sign = {"+": 1, "-": -1}.get(sa["sign"])
        _need(sign is not None, f"{where}: bad sign tag")
        poly = factor.scale(coeff)
        key = (func, multiple)
        recorded[key] = recorded.get(key, U_ZERO) + poly
        rows.append((factor, func, multiple, coeff, sign,
                     PositivityProof.from_json(sa["sign_evidence"]), poly))
    expected = expand_poly(f_t)
    _need(expected.constant_part == constant_part,
          f"{where}: constant part does not match the expansion")
    expected_groups = {
        (sub.func, sub.multiple): sub.poly for sub in expected.sub_addends
    }
    _need(set(expected_groups) == set(recorded),
          f"{where}: expansion groups do not match")
    for key, poly in expected_groups.items():
        _need(recorded[key] == poly,
              f"{where}: expansion factors do not sum to the group {key}")

    # per-sub-addend sign evidence on the open substitution interval
    for factor, func, multiple, coeff, sign, proof, poly in rows:
        try:
            verify_positivity(poly.scale(sign), t_valid, proof, open_right=True)
        except ValueError as exc:
            raise _Reject(f"{where}: sign evidence fails: {exc}")

    # degree table: template form, validity radius, and P reproduction
    degrees = step["degrees"]
    _need(isinstance(degrees, list) and len(degrees) == len(rows),
          f"{where}: degree table length mismatch")
    rebuilt = constant_part
    for (factor, func, multiple, coeff, sign, proof, poly), n in zip(rows, degrees):
        n = int(n)
        direction = "lower" if sign > 0 else "upper"
        _need(n >= 0 and n % 4 == template_degree(func, direction, 0),
              f"{where}: degree {n} breaks the {direction} {func} template")
        gap = (t_valid * t_valid).scale(Fraction(multiple * multiple)) \
            - PiPoly.const((n + 3) * (n + 4))
        _need(pipoly_sign(gap) <= 0,
              f"{where}: degree {n} violates its validity radius")
        rebuilt = rebuilt + maclaurin(func, n).scale_arg(multiple) * poly
    polynomial = _load_unipoly(step["polynomial"])
    _need(rebuilt == polynomial,
          f"{where}: polynomial does not reproduce from the degree table")

    # positivity of the polynomial on the target
    proof = PositivityProof.from_json(step["positivity"])
    try:
        verify_positivity(polynomial, t_target, proof, lo=t_lo, open_right=False)
    except ValueError as exc:
        raise _Reject(f"{where}: positivity evidence fails: {exc}")
    return x_lo, x_hi


def check(data: bytes) -> CheckResult:
    """Re-verify a certificate without re-running the search."""
    try:
        doc = parse_certificate(data)
        _need(doc.get("version") == FORMAT_VERSION, "unsupported format version")
        _need(isinstance(doc.get("problem"), str), "missing problem text")
        problem = parse_problem(doc["problem"])
        steps = doc.get("steps")
        _need(isinstance(steps, list) and steps, "certificate has no steps")
        covered: list[tuple[PiPoly, PiPoly]] = []
        for i, step in enumerate(steps):
            _need(isinstance(step, dict), f"step {i}: not an object")
            covered.append(_check_step(i, step, problem.f))
        _need(covered[0][0].is_zero, "coverage does not start at 0")
        for i in range(len(covered) - 1):
            _need(covered[i][1] == covered[i + 1][0],
                  f"coverage gap between steps {i} and {i + 1}")
        _need(covered[-1][1] == problem.hi,
              "coverage does not reach the right endpoint")
        return CheckResult(True)
    except _Reject as exc:
        return CheckResult(False, str(exc))
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        return CheckResult(False, f"malformed certificate: {exc}")
