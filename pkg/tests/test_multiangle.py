"""Multiple-angle expansion: identities, the merged form, the Eq.58 shape."""

from fractions import Fraction as F

import pytest

from trigprove import (
    PiPoly,
    UniPoly,
    cos_power,
    expand_poly,
    parse_function,
    product_expand,
    sin_power,
)
from trigprove.multiangle import MultiAngleForm, SubAddend

from paper_fixtures import EQ57
from suites import expand_equivalence_suite, multiangle_oracle_suite


def test_sin_power_small_cases():
    assert sin_power(1) == MultiAngleForm("sin", F(0), ((1, F(1)),))
    assert sin_power(2) == MultiAngleForm("cos", F(1, 2), ((2, F(-1, 2)),))
    assert sin_power(3) == MultiAngleForm(
        "sin", F(0), ((3, F(-1, 4)), (1, F(3, 4)))
    )


def test_cos_power_small_cases():
    assert cos_power(1) == MultiAngleForm("cos", F(0), ((1, F(1)),))
    assert cos_power(2) == MultiAngleForm("cos", F(1, 2), ((2, F(1, 2)),))
    assert cos_power(4) == MultiAngleForm(
        "cos", F(3, 8), ((4, F(1, 8)), (2, F(1, 2)))
    )
    # all cosine-power coefficients are positive binomials
    for n in range(1, 9):
        form = cos_power(n)
        assert all(c > 0 for _, c in form.entries)
        assert form.constant >= 0


def test_product_expand_examples():
    assert product_expand(1, 1) == MultiAngleForm("sin", F(0), ((2, F(1, 2)),))
    assert product_expand(2, 1) == MultiAngleForm(
        "sin", F(0), ((3, F(1, 4)), (1, F(1, 4)))
    )
    assert product_expand(2, 2) == MultiAngleForm(
        "cos", F(1, 8), ((4, F(-1, 8)),)
    )


def test_product_expand_delegates_to_powers():
    assert product_expand(0, 3) == sin_power(3)
    assert product_expand(4, 0) == cos_power(4)
    with pytest.raises(ValueError):
        product_expand(0, 0)


def test_expand_poly_zero_and_cancellation():
    assert expand_poly(parse_function("x - x")).is_zero
    s = expand_poly(parse_function("cos(x)^2 + sin(x)^2 - 1"))
    assert s.is_zero


def test_expand_poly_eq57_merged_groups():
    s = expand_poly(parse_function(EQ57.split(" > ")[0]))
    groups = {(sub.func, sub.multiple): sub.poly for sub in s.sub_addends}
    assert set(groups) == {("cos", 1), ("cos", 3), ("sin", 1), ("sin", 3)}
    assert groups[("cos", 1)] == UniPoly.of(F(1, 2), 0, -1)
    assert groups[("cos", 3)] == UniPoly.of(F(-1, 2))
    assert groups[("sin", 1)] == UniPoly.of(0, F(-1, 4), 0, F(1, 30))
    assert groups[("sin", 3)] == UniPoly.of(0, F(-1, 4), 0, F(-1, 90))
    assert s.constant_part.is_zero


def test_expand_poly_constant_terms_pass_through():
    s = expand_poly(parse_function("x^3 - x + cos(x)"))
    assert s.constant_part == UniPoly.of(0, -1, 0, 1)
    assert len(s.sub_addends) == 1


def test_subaddend_monomial_coefficient_extraction():
    sub = SubAddend.from_poly(UniPoly.of(0, 0, F(-1, 2)), "cos", 3)
    assert sub.coeff == F(-1, 2)
    assert sub.factor == UniPoly.of(0, 0, 1)
    mixed = SubAddend.from_poly(UniPoly.of(0, F(-1, 4), 0, F(1, 30)), "sin", 1)
    assert mixed.coeff == F(1)
    assert mixed.factor == UniPoly.of(0, F(-1, 4), 0, F(1, 30))
    pi_mono = SubAddend.from_poly(
        UniPoly((PiPoly.of(), PiPoly.of(0, 1))), "sin", 2
    )
    assert pi_mono.coeff == F(1)  # pi coefficients stay in the factor


def test_numeric_oracle_small():
    multiangle_oracle_suite(max_pow=4, points=40)


def test_expand_matches_function_numerically():
    expand_equivalence_suite(count=12, points=60)
