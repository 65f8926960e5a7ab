"""Shared property suites, run small in module tests and full-size in the
acceptance gate. Numeric oracles use mpmath at 40 digits; everything that
claims exactness is checked with exact rationals."""

from __future__ import annotations

import json
import random
from fractions import Fraction as F

import mpmath as mp

from trigprove import (
    MixedTrigPoly,
    PiPoly,
    UniPoly,
    check,
    expand_poly,
    maclaurin,
    parse_problem,
    print_problem,
    product_expand,
    sturm_count,
)
from trigprove.multiangle import MultiAngleSum
from trigprove.problems import MixedTrigTerm, ProblemSpec
from trigprove.taylor import classify

mp.mp.dps = 40

ORACLE_TOL = mp.mpf(10) ** -12


def mp_of(q: F) -> mp.mpf:
    return mp.mpf(q.numerator) / q.denominator


def mp_pipoly(c: PiPoly) -> mp.mpf:
    return sum(mp_of(a) * mp.pi**i for i, a in enumerate(c.coeffs))


def mp_unipoly(u: UniPoly, x) -> mp.mpf:
    acc = mp.mpf(0)
    for c in reversed(u.coeffs):
        acc = acc * x + mp_pipoly(c)
    return acc


def mp_mixed(f: MixedTrigPoly, x) -> mp.mpf:
    total = mp.mpf(0)
    for t in f.terms:
        total += (
            mp_unipoly(t.factor, x) * mp.cos(x) ** t.cos_pow * mp.sin(x) ** t.sin_pow
        )
    return total


def mp_sum(s: MultiAngleSum, x) -> mp.mpf:
    total = mp_unipoly(s.constant_part, x)
    for sub in s.sub_addends:
        fn = mp.sin if sub.func == "sin" else mp.cos
        total += mp_unipoly(sub.poly, x) * fn(sub.multiple * x)
    return total


# --------------------------------------------------------------------------


def multiangle_oracle_suite(max_pow: int = 8, points: int = 200, seed: int = 11) -> None:
    """|product_expand(q,r) evaluated - cos^q sin^r| <= 1e-12 on [0, 2pi)."""
    rng = random.Random(seed)
    xs = [mp.mpf(rng.randrange(0, 1 << 30)) / (1 << 30) * 2 * mp.pi
          for _ in range(points)]
    for q in range(0, max_pow + 1):
        for r in range(0, max_pow + 1):
            if q + r < 1:
                continue
            form = product_expand(q, r)
            mass = abs(form.constant) + sum(abs(c) for _, c in form.entries)
            assert mass <= 1, f"coefficient mass {mass} > 1 for ({q}, {r})"
            fn = mp.sin if form.kind == "sin" else mp.cos
            at_zero = form.constant + sum(
                c for _, c in form.entries) if form.kind == "cos" else F(0)
            assert at_zero == (1 if r == 0 else 0), f"x=0 mismatch for ({q}, {r})"
            for x in xs:
                direct = mp.cos(x) ** q * mp.sin(x) ** r
                via = mp_of(form.constant) + sum(
                    mp_of(c) * fn(m * x) for m, c in form.entries
                )
                assert abs(direct - via) <= ORACLE_TOL, (
                    f"expansion of ({q}, {r}) off by {abs(direct - via)} at {x}"
                )


def random_mixed(rng: random.Random, max_terms: int = 5) -> MixedTrigPoly:
    items = []
    for _ in range(rng.randint(1, max_terms)):
        q = rng.randint(0, 5)
        r = rng.randint(0, 5)
        degree = rng.randint(0, 6)
        coeffs = [PiPoly.of()] * (degree + 1)
        for _ in range(rng.randint(1, 3)):
            k = rng.randint(0, degree)
            entry = [F(0)] * 3
            entry[rng.randint(0, 2)] = F(rng.randint(-40, 40), rng.randint(1, 12))
            coeffs[k] = coeffs[k] + PiPoly.of(*entry)
        factor = UniPoly(tuple(coeffs))
        if factor.is_zero:
            continue
        items.append((factor, q, r))
    return MixedTrigPoly.from_terms(items)


def expand_equivalence_suite(count: int = 40, points: int = 200, seed: int = 7) -> None:
    """expand_poly(f) evaluates back to f at random points."""
    rng = random.Random(seed)
    done = 0
    while done < count:
        f = random_mixed(rng)
        if f.is_zero:
            continue
        s = expand_poly(f)
        for _ in range(points // 10):
            x = mp.mpf(rng.randrange(0, 1 << 30)) / (1 << 30) * 2 * mp.pi
            a, b = mp_mixed(f, x), mp_sum(s, x)
            scale = max(mp.mpf(1), abs(a))
            assert abs(a - b) <= ORACLE_TOL * scale, f"expand mismatch at {x}"
        done += 1


def taylor_direction_suite(max_degree: int = 21, points: int = 100, seed: int = 3) -> None:
    """Upper bounds sit above sin/cos and lower bounds below, inside the radius."""
    rng = random.Random(seed)
    for func, fn in (("sin", mp.sin), ("cos", mp.cos)):
        start = 1 if func == "sin" else 0
        for n in range(start, max_degree + 1, 2):
            bound = classify(func, n)
            poly = maclaurin(func, n)
            radius = mp.sqrt(bound.radius_sq)
            for _ in range(points):
                t = mp.mpf(rng.random()) * radius
                diff = mp_unipoly(poly, t) - fn(t)
                if bound.direction == "upper":
                    assert diff >= -mp.mpf(10) ** -35, (func, n, t)
                else:
                    assert diff <= mp.mpf(10) ** -35, (func, n, t)


def taylor_chain_suite(max_degree: int = 17, points: int = 60, seed: int = 5) -> None:
    """T_n and T_{n+4} of equal direction nest on the inner validity range."""
    rng = random.Random(seed)
    for func in ("sin", "cos"):
        start = 1 if func == "sin" else 0
        for n in range(start, max_degree + 1, 2):
            b = classify(func, n)
            higher = maclaurin(func, n + 4)
            lower = maclaurin(func, n)
            radius = mp.sqrt(b.radius_sq)
            for _ in range(points):
                t = mp.mpf(rng.random()) * radius
                gap = mp_unipoly(lower, t) - mp_unipoly(higher, t)
                if b.direction == "upper":
                    assert gap >= -mp.mpf(10) ** -35, (func, n, t)
                else:
                    assert gap <= mp.mpf(10) ** -35, (func, n, t)


def sturm_vs_scan_suite(count: int = 300, seed: int = 23) -> None:
    """Sturm counts match a 1e-4 sign-scan on scan-safe random polynomials."""
    import numpy as np

    rng = random.Random(seed)
    done = 0
    while done < count:
        degree = rng.randint(2, 8)
        coeffs = [rng.randint(-20, 20) for _ in range(degree + 1)]
        if coeffs[-1] == 0:
            continue
        # scan safety: real roots simple, separated, and away from endpoints
        np_roots = np.roots(list(reversed([float(c) for c in coeffs])))
        reals = sorted(r.real for r in np_roots if abs(r.imag) < 1e-9)
        if any(abs(r.imag) < 1e-6 and not abs(r.imag) < 1e-9 for r in np_roots):
            continue
        if any(b - a < 5e-3 for a, b in zip(reals, reals[1:])):
            continue
        a = F(rng.randint(-25, 15), 10) + F(1, 40)
        b = a + F(rng.randint(5, 10), 10)
        if any(abs(float(a) - r) < 1e-3 or abs(float(b) - r) < 1e-3 for r in reals):
            continue
        poly = UniPoly.of(*coeffs)
        counted = sturm_count(poly, a, b)
        xs = np.arange(float(a), float(b) + 1e-4, 1e-4)
        vals = np.polyval(list(reversed([float(c) for c in coeffs])), xs)
        keep = np.abs(vals) > 1e-9
        signs = np.sign(vals[keep])
        scanned = int(np.sum(signs[1:] != signs[:-1]))
        assert counted == scanned, (coeffs, a, b, counted, scanned)
        done += 1


def parser_roundtrip_suite(count: int = 500, seed: int = 31) -> None:
    rng = random.Random(seed)
    his = ["1", "pi/2", "2", "1.136", "pi", "3/2"]
    done = 0
    while done < count:
        f = random_mixed(rng, max_terms=4)
        if f.is_zero:
            continue
        spec = ProblemSpec(f, PiPoly.of(), PiPoly.of(*{
            "1": (1,), "pi/2": (0, F(1, 2)), "2": (2,),
            "1.136": (F(1136, 1000),), "pi": (0, 1), "3/2": (F(3, 2),),
        }[rng.choice(his)]))
        text = print_problem(spec)
        again = parse_problem(text)
        assert again == spec, f"round-trip failed for {text!r}"
        assert print_problem(again) == text
        done += 1


def tamper_mutations(doc: dict, count: int, seed: int = 41) -> list[bytes]:
    """Deterministic semantically-breaking single-field mutations."""
    rng = random.Random(seed)
    paths: list[tuple] = []

    def walk(node, path):
        if isinstance(node, dict):
            for k, v in node.items():
                if k == "bound" and node.get("mode") == "sturm":
                    # any bound >= delta with a zero recount stays valid
                    # evidence, so this field has legitimate slack
                    continue
                walk(v, path + (k,))
        elif isinstance(node, list):
            if node and path[-1] in ("leaves", "subaddends", "steps", "degrees"):
                paths.append(path + ("__drop__",))
            for i, v in enumerate(node):
                walk(v, path + (i,))
        elif isinstance(node, str):
            paths.append(path)
        elif isinstance(node, (int, float)) and not isinstance(node, bool):
            paths.append(path)
        elif node is None:
            paths.append(path)

    walk(doc, ())

    def mutate_value(value):
        if value is None:
            return ["0", "1/2"]  # turn "no reflection" into "reflect at pi/2"
        if isinstance(value, int):
            return value + 1
        if isinstance(value, str):
            if value == "sin":
                return "cos"
            if value == "cos":
                return "sin"
            if value == "+":
                return "-"
            if value == "-":
                return "+"
            if value == "sturm":
                return "bisection"
            if value == "bisection":
                return "sturm"
            import re

            if re.fullmatch(r"-?\d+/\d+", value):
                num, den = value.split("/")
                return f"{int(num) + 1}/{den}"
            digits = [i for i, ch in enumerate(value) if ch.isdigit()
                      and i < value.find(" on ") if " on " in value] or \
                     [i for i, ch in enumerate(value) if ch.isdigit()]
            if digits:
                i = digits[len(digits) // 2]
                ch = value[i]
                return value[:i] + ("7" if ch != "7" else "3") + value[i + 1:]
            return value + "x"
        raise AssertionError(f"unhandled value {value!r}")

    def apply(doc, path):
        import copy

        out = copy.deepcopy(doc)
        node = out
        for key in path[:-1]:
            node = node[key]
        last = path[-1]
        if last == "__drop__":
            assert isinstance(node, list) and node
            node.pop(rng.randrange(len(node)))
        else:
            node[last] = mutate_value(node[last])
        return out

    rng.shuffle(paths)
    out: list[bytes] = []
    i = 0
    while len(out) < count:
        path = paths[i % len(paths)]
        i += 1
        mutated = apply(doc, path)
        if mutated == doc:
            continue
        out.append(json.dumps(mutated, sort_keys=True,
                              separators=(",", ":")).encode())
    return out


def tamper_fuzz_suite(golden: bytes, count: int = 200) -> None:
    doc = json.loads(golden.decode())
    assert check(golden).accepted
    for blob in tamper_mutations(doc, count):
        result = check(blob)
        assert not result.accepted, (
            f"tampered certificate accepted; diff from golden required: {blob[:400]}"
        )
