"""
Tests for the golayft threshold module
"""
from fractions import Fraction

import pytest

from golayft.counting.exrec import EVENTS, GATE_EVENTS, VARIANTS
from golayft.noise.model import GAMMA_MAX, TransformedNoise
from golayft.polynomials import CountPoly, Leaf, eval_exact
from golayft.threshold import (EventBounds, Grid, build_transformed, compose_bounds, dominates, envelope,
                               iterate_levels, level1_replay, pseudo_threshold, scaling_check, structure_check,
                               threshold_lower_bound)
from golayft.threshold.envelope import CNOT_EVENT_NAMES

# C Gamma^4 <= Gamma exactly when Gamma <= 1/7500
QUARTIC = 7500 ** 3


def gate_events():
    return [e for names in GATE_EVENTS.values() for e in names]


def event_bounds(member, level=1):
    events = {e: {v: member for v in VARIANTS} for e in CNOT_EVENT_NAMES}
    events.update({e: {"": member} for e in gate_events()})
    return EventBounds(events, level)


def synthetic():
    """ Gamma = 2 gamma, every weight one and every level-two bound QUARTIC Gamma^4 """
    gamma = Leaf(CountPoly.from_dict({1: 2}, (1, 0, 0)))
    transformed = TransformedNoise(gamma, {e: 1 for e in EVENTS}, {e: Fraction(1) for e in EVENTS})
    level2 = event_bounds(Leaf(CountPoly.from_dict({4: QUARTIC}, kind="level2")), level=2)
    return transformed, level2


def test_event_bounds_need_every_event():
    with pytest.raises(ValueError, match="missing"):
        EventBounds({"XX": {"AB": Leaf(CountPoly.unit())}})
    bounds = event_bounds(Leaf(CountPoly.from_dict({1: 12}, (1, 0, 0))))
    assert len(list(bounds.all_members())) == 6 * len(VARIANTS) + len(gate_events())
    with pytest.raises(ValueError, match="unknown event"):
        bounds.members("YY")


def test_grid_validation_and_points():
    g = Grid(Fraction(1, 100), Fraction(2, 100), 4)
    assert g.points[0] == Fraction(1, 100) and g.points[-1] == Fraction(2, 100)
    assert len(g.points) == 5
    assert g.refined().n == 8
    assert Grid.from_ops({"grid_points": 20}).gamma_min == GAMMA_MAX / 10
    with pytest.raises(ValueError):
        Grid(Fraction(0), Fraction(1, 100))
    with pytest.raises(ValueError):
        Grid(Fraction(1, 10), Fraction(1, 100))
    with pytest.raises(ValueError):
        Grid(Fraction(1, 100), Fraction(2, 100), 0)


def test_envelope_dominates_its_members():
    grid = Grid(GAMMA_MAX / 10, GAMMA_MAX, 50)
    members = {"a": Leaf(CountPoly.from_dict({1: 12}, (1, 0, 0))),
               "b": Leaf(CountPoly.from_dict({1: 4}, (1, 0, 0)))}
    env = envelope(members, grid, "XX")
    assert env.base == "a"
    assert env.offset > 0
    assert dominates(env.bound, list(members.values()), grid)
    assert not dominates(members["b"], list(members.values()), grid)


def test_transformed_noise_dominates_level_one_bounds():
    grid = Grid(GAMMA_MAX / 10, GAMMA_MAX, 20)
    bounds = event_bounds(Leaf(CountPoly.from_dict({1: 12, 2: 30}, (2, 0, 0))))
    transformed, transcript = build_transformed(bounds, grid)
    assert transcript["ratio"] == 2
    assert all(a >= 1 for a in transformed.alpha.values())
    assert all(level1_replay(bounds, transformed, grid).values())
    with pytest.raises(ValueError, match="ratio"):
        build_transformed(bounds, grid, ratio=0)


def test_synthetic_threshold_is_found_exactly():
    transformed, level2 = synthetic()
    res = threshold_lower_bound(transformed, level2, check_points=20)
    assert res.status == "ok" and res.certified
    assert res.gamma_th == Fraction(1, 15000)
    assert res.p_th == Fraction(1, 1000)
    assert all(m >= 0 for m in res.margins.values())
    assert all(r["ok"] for r in res.transcript["replay"])


def test_no_threshold_when_conditions_always_fail():
    transformed, _ = synthetic()
    linear = event_bounds(Leaf(CountPoly.from_dict({1: 2}, kind="level2")), level=2)
    res = threshold_lower_bound(transformed, linear, max_halvings=10)
    assert res.status == "no threshold certified"
    assert res.gamma_th == 0


def test_iterated_levels_shrink_geometrically():
    transformed, level2 = synthetic()
    out = iterate_levels(transformed, level2, Fraction(1, 30000), levels=3)
    assert out["ok"]
    assert out["epsilon"] == "1/8"
    assert [row["ok"] for row in out["levels"]] == [True, True, True]
    assert not iterate_levels(transformed, level2, Fraction(1, 10000))["ok"]


def test_composed_bounds_evaluate_in_gamma():
    transformed, level2 = synthetic()
    composed = compose_bounds(level2, transformed)
    g = Fraction(1, 15000)
    assert eval_exact(composed["XX"]["AB"], g) == QUARTIC * (2 * g) ** 4


def test_structure_and_scaling_checks():
    quartic = Leaf(CountPoly.from_dict({4: QUARTIC}, kind="level2"))
    cubic = Leaf(CountPoly.from_dict({3: 1}, kind="level2"))
    gammas = [Fraction(1, 10000), Fraction(1, 5000)]
    s = structure_check(quartic)
    assert s["ok"] and s["min_degree"] == 4
    assert not structure_check(cubic)["ok"]
    sc = scaling_check(quartic, gammas)
    assert sc["ok"] and sc["worst_slack"] == "0"
    assert not scaling_check(cubic, gammas)["ok"]


def test_pseudo_threshold_crossing():
    # 225000 gamma^2 = 15 gamma at gamma = 1/15000
    res = pseudo_threshold(Leaf(CountPoly.from_dict({2: 225000}, (2, 0, 0))))
    assert res.status == "ok"
    target = Fraction(1, 15000)
    assert res.gamma <= target
    assert target - res.gamma <= res.gamma / 10 ** 4
    assert res.certificate.ok
    assert res.to_dict()["status"] == "ok"


def test_pseudo_threshold_edge_cases():
    res = pseudo_threshold(Leaf(CountPoly.from_dict({2: 1}, (2, 0, 0))))
    assert res.status == "at boundary" and res.gamma == GAMMA_MAX
    res = pseudo_threshold(Leaf(CountPoly.from_dict({2: 10 ** 40}, (2, 0, 0))), certify=False)
    assert res.status == "below range"
