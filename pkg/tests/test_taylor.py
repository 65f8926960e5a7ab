"""Maclaurin bounds: classification, the P16/P13/P11 fixtures, escalation."""

from fractions import Fraction as F
from math import factorial

import pytest

from trigprove import (
    PiPoly,
    UniPoly,
    classify,
    expand_poly,
    maclaurin,
    normalize_signs,
    parse_function,
    parse_problem,
    substitute_bounds,
    template_degree,
)
from trigprove.pipoly import HALF_PI, pipoly_sign
from trigprove.problems import parse_const, reflect
from trigprove.taylor import RadiusExceeded, min_valid_index, radius_holds

from paper_fixtures import (
    EQ57,
    EQ66,
    EQ81_SCALED,
    p11_expected,
    p13_expected,
    p16_expected,
)
from suites import taylor_chain_suite, taylor_direction_suite


def test_maclaurin_examples():
    assert maclaurin("sin", 3) == UniPoly.of(0, 1, 0, F(-1, 6))
    assert maclaurin("cos", 0) == UniPoly.of(1)
    m13 = maclaurin("sin", 13)
    assert m13.degree == 13
    # x^13 carries (-1)^6 / 13!: the positive 1/6227020800
    assert m13.coeff(13).rational_value == F(1, factorial(13))
    assert m13.coeff(13).rational_value == F(1, 6227020800)
    assert m13.coeff(11).rational_value == F(-1, factorial(11))


def test_maclaurin_parity_checked():
    with pytest.raises(ValueError):
        maclaurin("sin", 4)
    with pytest.raises(ValueError):
        maclaurin("cos", 3)


def test_classify_examples():
    b = classify("sin", 13)
    assert (b.direction, b.radius_sq) == ("upper", 16 * 17)
    b = classify("cos", 6)
    assert (b.direction, b.radius_sq) == ("lower", 90)
    b = classify("cos", 12)
    assert (b.direction, b.radius_sq) == ("upper", 240)
    assert classify("sin", 3).direction == "lower"
    assert classify("sin", 1).direction == "upper"
    assert classify("cos", 0).direction == "upper"


def test_template_degrees():
    assert [template_degree("sin", "lower", l) for l in range(3)] == [3, 7, 11]
    assert [template_degree("sin", "upper", l) for l in range(3)] == [1, 5, 9]
    assert [template_degree("cos", "lower", l) for l in range(3)] == [2, 6, 10]
    assert [template_degree("cos", "upper", l) for l in range(3)] == [0, 4, 8]


def test_radius_and_min_index():
    # argument 3x on (0, pi/2): (3 pi/2)^2 = 22.2 needs degree >= 4 for cos upper
    assert not radius_holds(0, 3, HALF_PI)
    assert radius_holds(4, 3, HALF_PI)
    assert min_valid_index("cos", "upper", 3, HALF_PI) == 1
    assert min_valid_index("sin", "upper", 3, HALF_PI) == 1
    assert min_valid_index("cos", "lower", 1, HALF_PI) == 0


def test_normalize_signs_reproduces_eq58():
    f = parse_function(EQ57.split(" > ")[0])
    norm = normalize_signs(expand_poly(f), HALF_PI)
    # exactly the five displayed sub-addends, with their exact slots
    summary = [
        (p.sub.func, p.sub.multiple, p.sub.coeff, p.sub.factor, p.sign)
        for p in norm.parts
    ]
    assert summary == [
        ("cos", 1, F(1, 2), UniPoly.of(1), 1),
        ("cos", 1, F(-1), UniPoly.of(0, 0, 1), -1),
        ("sin", 1, F(1), UniPoly.of(0, F(-1, 4), 0, F(1, 30)), -1),
        ("cos", 3, F(-1, 2), UniPoly.of(1), -1),
        ("sin", 3, F(1), UniPoly.of(0, F(-1, 4), 0, F(-1, 90)), -1),
    ]


def test_substitute_bounds_reproduces_p16():
    f = parse_function(EQ57.split(" > ")[0])
    norm = normalize_signs(expand_poly(f), HALF_PI)
    res = substitute_bounds(norm, [6, 12, 13, 12, 13])
    assert res.polynomial == p16_expected()
    directions = [(r.sub.func, r.degree, r.direction) for r in res.rows]
    assert directions == [
        ("cos", 6, "lower"), ("cos", 12, "upper"), ("sin", 13, "upper"),
        ("cos", 12, "upper"), ("sin", 13, "upper"),
    ]


def test_substitute_bounds_empty_sum():
    res = substitute_bounds(expand_poly(parse_function("x - x")), [], HALF_PI)
    assert res.polynomial.is_zero


def test_substitute_bounds_reproduces_p13():
    f = parse_function(EQ66.split(" > ")[0])
    hi = parse_const("1.136")
    norm = normalize_signs(expand_poly(f), hi)
    assert [(p.sub.func, p.sub.multiple, p.sign) for p in norm.parts] == [
        ("cos", 2, -1), ("sin", 2, -1),
    ]
    res = substitute_bounds(norm, [8, 9])
    assert res.polynomial == p13_expected()
    bracket = res.polynomial.scale(F(14175, 2)).shift_down(7)
    assert bracket.coeff(6) == PiPoly.of(-80, 0, 120, 0, -12)


def test_substitute_bounds_reproduces_p11():
    f = parse_function(EQ81_SCALED.split(" > ")[0])
    hi = parse_const("0.858")
    norm = normalize_signs(expand_poly(f), hi)
    assert [(p.sub.func, p.sub.multiple, p.sign) for p in norm.parts] == [
        ("cos", 2, 1), ("sin", 2, 1),
    ]
    res = substitute_bounds(norm, [6, 7])
    assert res.polynomial == p11_expected()
    bracket = res.polynomial.scale(F(945, 2)).shift_down(5)
    assert bracket.coeff(6) == PiPoly.of(-5376, 0, -96, 0, 56)


def test_substitute_bounds_radius_violation_reports_minimum():
    f = parse_function(EQ57.split(" > ")[0])
    norm = normalize_signs(expand_poly(f), HALF_PI)
    with pytest.raises(RadiusExceeded) as err:
        substitute_bounds(norm, [6, 12, 13, 0, 13])
    assert err.value.minimal_degree == 4


def test_substitute_bounds_rejects_wrong_template():
    f = parse_function(EQ57.split(" > ")[0])
    norm = normalize_signs(expand_poly(f), HALF_PI)
    with pytest.raises(ValueError):
        substitute_bounds(norm, [6, 12, 13, 12, 15])  # sin upper needs 4l+1


def test_downward_property_sampled():
    from suites import mp, mp_mixed, mp_unipoly

    f = parse_function(EQ57.split(" > ")[0])
    norm = normalize_signs(expand_poly(f), HALF_PI)
    p = substitute_bounds(norm, [6, 12, 13, 12, 13]).polynomial
    for i in range(1, 200):
        x = mp.pi / 2 * i / 200
        assert mp_unipoly(p, x) <= mp_mixed(f, x) + mp.mpf(10) ** -12


def test_escalation_improves_pointwise():
    f = parse_function(EQ57.split(" > ")[0])
    norm = normalize_signs(expand_poly(f), HALF_PI)
    base = substitute_bounds(norm, [6, 12, 13, 12, 13]).polynomial
    for slot, bumped in enumerate((
        [10, 12, 13, 12, 13],
        [6, 16, 13, 12, 13],
        [6, 12, 17, 12, 13],
        [6, 12, 13, 16, 13],
        [6, 12, 13, 12, 17],
    )):
        higher = substitute_bounds(norm, bumped).polynomial
        gap = higher - base
        for i in range(1, 40):
            x = F(i, 40) * F(3, 2)
            assert pipoly_sign(gap.eval_rational(x)) >= 0, (slot, x)


def test_bound_directions_sampled():
    taylor_direction_suite(max_degree=13, points=40)


def test_chain_monotonicity_sampled():
    taylor_chain_suite(max_degree=9, points=30)
