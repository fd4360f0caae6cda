"""
Tests for the golayft polynomials module
"""
from fractions import Fraction

import pytest

from golayft.counting.bad import bad_bound
from golayft.polynomials import (CountPoly, Compose, Const, Interval, Jet, Leaf, Min1, Ratio, certify_monotone,
                                 eval_exact, from_dict, min_degree)


def one_cnot():
    """ a single CNOT: no X failure or one of weight 12 """
    return CountPoly.from_dict({0: 1, 1: 12}, (1, 0, 0))


def test_convolution_adds_censuses_and_multiplies_series():
    sq = one_cnot().convolve(one_cnot())
    assert sq.census == (2, 0, 0)
    assert sq.to_dict() == {0: 1, 1: 24, 2: 144}
    assert sq.convolve(CountPoly.unit()) == sq
    assert one_cnot().convolve(one_cnot(), max_order=1).to_dict() == {0: 1, 1: 24}


def test_complete_distribution_sums_to_one():
    for g in (Fraction(0), Fraction(1, 15000), Fraction(1, 100)):
        assert one_cnot().value(g) == 1
        assert one_cnot().convolve(one_cnot()).value(g) == 1


def test_order_m_term_with_m_cnot_census_is_plain_power():
    p = CountPoly.from_dict({3: 7}, (3, 0, 0))
    g = Fraction(1, 1000)
    assert p.value(g) == 7 * g ** 3
    assert p.lowest_order == 3
    assert p.rate == 36


def test_level_two_polynomials_are_plain_series():
    p = CountPoly.from_dict({2: 5, 3: 1}, kind="level2")
    assert p.value(Fraction(1, 10)) == Fraction(5, 100) + Fraction(1, 1000)
    with pytest.raises(ValueError, match="prefactor"):
        CountPoly((1, 0, 0), (1,), "level2")


def test_text_form_round_trips():
    p = CountPoly.from_dict({1: 12, 4: 3 ** 40}, (7, 2, 1))
    assert CountPoly.from_text(p.text()) == p


def test_countpoly_rejects_invalid_input():
    with pytest.raises(ValueError):
        CountPoly(kind="level3")
    with pytest.raises(ValueError, match="negative order"):
        CountPoly.from_dict({-1: 1})
    with pytest.raises(ValueError, match="censuses"):
        one_cnot() + CountPoly.unit()
    with pytest.raises(ValueError, match="cannot combine"):
        CountPoly.unit().convolve(CountPoly.unit("level2"))


def test_bad_bound_union_term():
    p = bad_bound((1, 0, 0), 0)
    assert p.to_dict() == {1: 12}
    assert p.value(Fraction(1, 15000)) == Fraction(12, 15000)
    assert bad_bound((1, 0, 0), 1).is_zero


def test_expression_arithmetic_is_exact():
    g = Fraction(1, 100)
    a = Leaf(bad_bound((1, 0, 0), 0))
    assert eval_exact(a * a, g) == Fraction(144, 10000)
    assert eval_exact(a + 1, g) == Fraction(112, 100)
    assert eval_exact(Ratio(a, Const(2)), g) == Fraction(6, 100)
    assert eval_exact(Min1(a * 100), g) == 1


def test_ratio_and_negative_strength_are_refused():
    with pytest.raises(ValueError, match="denominator"):
        eval_exact(Ratio(Const(1), Const(0)), 0)
    with pytest.raises(ValueError, match="nonnegative"):
        eval_exact(Const(1), -1)


def test_composition_with_level_two_polynomial():
    outer = Leaf(CountPoly.from_dict({2: 1}, kind="level2"))
    inner = Leaf(CountPoly.from_dict({1: 2}, (1, 0, 0)))
    e = Compose(outer, inner)
    assert eval_exact(e, Fraction(1, 10)) == Fraction(1, 25)
    assert min_degree(e) == 2
    with pytest.raises(ValueError):
        Compose(inner, outer)


def test_expression_dict_round_trip():
    a = Leaf(bad_bound((2, 1, 0), 1))
    e = Min1(Ratio(a * a + 3, Const(Fraction(1, 2))))
    back = from_dict(e.to_dict())
    g = Fraction(1, 7000)
    assert eval_exact(back, g) == eval_exact(e, g)
    assert min_degree(back) == 0


def test_min_degree_of_ratios():
    num = Leaf(CountPoly.from_dict({3: 1}, (3, 0, 0)))
    den = Leaf(CountPoly.from_dict({0: 1, 1: 12}, (1, 0, 0)))
    assert min_degree(Ratio(num, den)) == 3
    assert min_degree(Leaf(CountPoly.zero())) == float("inf")


def test_interval_arithmetic_encloses_results():
    a = Interval(1, 2)
    b = Interval(-1, 3)
    s = a + b
    assert (s.lo, s.hi) == (0, 5)
    m = a * b
    assert (m.lo, m.hi) == (-2, 6)
    assert (1 / a).contains(Fraction(2, 3))
    with pytest.raises(ValueError, match="empty"):
        Interval(2, 1)


def test_jet_derivatives():
    x = Jet.variable(Fraction(3), 2)
    f = x * x
    assert f.derivative(0) == 9
    assert f.derivative(1) == 6
    assert f.derivative(2) == 2
    r = 1 / x
    assert r.derivative(1) == Fraction(-1, 9)


def test_monotonicity_certificates():
    rising = Leaf(bad_bound((1, 0, 0), 0))
    cert = certify_monotone(rising, (Fraction(0), Fraction(1, 1000)))
    assert cert.ok
    assert cert.replay(rising)
    falling = certify_monotone(rising, (Fraction(0), Fraction(1, 1000)), "nonincreasing")
    assert not falling.ok
    assert not falling.replay(rising)
    assert certify_monotone(Const(3), (0, Fraction(1, 1000))).method == "constant"
    with pytest.raises(ValueError):
        certify_monotone(rising, (Fraction(1, 10), Fraction(1, 100)))
