"""
Tests for the golayft counting module
"""
from collections import defaultdict
from fractions import Fraction
from itertools import combinations, product

import numpy as np
import pytest

from golayft.circuits import network as nw
from golayft.circuits import prep
from golayft.circuits.propagate import accepted, fault_items, item_pauli, propagate
from golayft.code.tables import class_tables
from golayft.counting.bad import bad_expr, elementary
from golayft.counting.config import KGoodConfig
from golayft.counting.ec import lec_syndrome_classes
from golayft.counting.exrec import EVENTS, cnot_stages
from golayft.counting.pipeline import count_level
from golayft.counting.prep import count_prep
from golayft.counting.tables import DIRECT_KEYS, OrderTable, xor_convolve
from golayft.counting.verify import verify_network
from golayft.montecarlo import simulate_malignant
from golayft.noise.model import GAMMA_MAX, NoiseModel, TransformedNoise
from golayft.polynomials import CountPoly, Leaf, eval_exact
from golayft.threshold import EventBounds, enclose, level2_count

SMALL = KGoodConfig(prep=2, xver=2, xver_stage=2, k_best=0, zver=2, zver_stage=2, zver_xz=0, ec=3, ec_stage=2,
                    cnot_stage=2, exrec=4, g_split=2, g_stage=1, bad_terms=2)


def brute_force(network, code, sector, k_max, accept_only):
    """ {(order, output key): total weight} by propagating every configuration """
    ct = class_tables(code)
    items = fault_items(network, code, sector)
    out = network.outputs[0]
    keep = items.layout[items.field(network.names[out], "output")].keep
    counts = defaultdict(int)
    for k in range(k_max + 1):
        for chosen in combinations(range(items.n_items), k):
            ranges = [range(items.start[i], items.start[i + 1]) for i in chosen]
            for rows in product(*ranges):
                faults = {int(items.locations[i]): item_pauli(items, c) for i, c in zip(chosen, rows)}
                res = propagate(network, faults)
                if accept_only and not accepted(network, code, res):
                    continue
                err = res.outputs[out]
                mask = err.x_mask if sector == "X" else err.z_mask
                w = 1
                for c in rows:
                    w *= int(items.weight[c])
                counts[(k, ct.key(mask) & keep)] += w
    return dict(counts)


def test_prep_counts_match_brute_force(steane, steane_prep):
    for sector in ("X", "Z"):
        counts = count_prep(steane_prep, steane, sector, 2)
        expect = brute_force(nw.single_block_network(steane_prep), steane, sector, 2, False)
        assert counts.table.entries() == expect
        assert counts.census == nw.single_block_network(steane_prep).sector_census(sector)


def test_verified_pair_counts_match_brute_force(steane, steane_prep):
    net = nw.two_ancilla_network(steane_prep, steane_prep)
    cfg = KGoodConfig(prep=2, xver=2, xver_stage=2, k_best=0, zver=2, zver_stage=2, zver_xz=0)
    res = verify_network(net, steane, cfg, corrections=False).output
    assert res.good_x.entries() == brute_force(net, steane, "X", 2, True)
    assert res.good_z.entries() == brute_force(net, steane, "Z", 2, False)
    assert res.good_x.census == net.sector_census("X")


def test_verified_pair_acceptance_bound_is_a_probability(steane, steane_prep):
    net = nw.two_ancilla_network(steane_prep, steane_prep)
    res = verify_network(net, steane, KGoodConfig.profile("desk")).output
    g = Fraction(1, 15000)
    assert 0 < eval_exact(res.accept_lb, g) <= 1
    assert eval_exact(res.bad_x_ub, g) >= 0
    assert eval_exact(res.bad_z_ub, g) >= 0


def naive_xor(a, b, K):
    out = np.zeros((K + 1, a.size), dtype=object)
    for i in range(a.K + 1):
        for j in range(b.K + 1):
            if i + j > K:
                continue
            for x in range(a.size):
                for y in range(a.size):
                    out[i + j, x ^ y] += a.w[i, x] * b.w[j, y]
    return out


@pytest.mark.parametrize("max_order", [-1, 1])
def test_xor_convolution_matches_nested_loops(max_order):
    rng = np.random.default_rng(7)
    a = OrderTable(rng.integers(0, 50, size=(3, 64)), (2, 0, 1))
    b = OrderTable(rng.integers(0, 50, size=(2, 64)), (1, 1, 0))
    assert len(a.nonzero_keys()) > DIRECT_KEYS and len(b.nonzero_keys()) > DIRECT_KEYS
    out = xor_convolve(a, b, max_order)
    K = 3 if max_order < 0 else max_order
    assert out.census == (3, 1, 1)
    assert out.K == K
    assert np.array_equal(out.w, naive_xor(a, b, K))


def test_xor_convolution_of_sparse_tables():
    a = OrderTable.delta(16, 5)
    b = OrderTable(np.array([[0] * 16, [0, 3] + [0] * 14]))
    out = xor_convolve(a, b)
    assert out.entries() == {(1, 4): 3}
    with pytest.raises(ValueError, match="key spaces"):
        xor_convolve(a, OrderTable.delta(8))


def test_order_table_validation():
    with pytest.raises(ValueError, match="power of two"):
        OrderTable(np.zeros((1, 6), dtype=np.int64))
    t = OrderTable.delta(8, 3)
    with pytest.raises(ValueError, match="censuses"):
        t + t.with_census((1, 0, 0))


def test_elementary_symmetric_weights():
    # two CNOTs of weight 12 and one rest of weight 8
    e = elementary(((2, 12), (1, 8)), 3)
    assert e == [1, 32, 12 * 12 + 2 * 12 * 8, 12 * 12 * 8]


def test_bad_expr_counts_every_order_of_a_small_census():
    g = Fraction(1, 15000)
    p = 12 * g
    # Pr[at least two of three CNOTs fail], each failing with probability 12 gamma
    assert eval_exact(bad_expr((3, 0, 0), 1), g) == 3 * p * p * (1 - p) + p ** 3
    assert eval_exact(bad_expr((3, 0, 0), 3), g) == 0


def test_k_good_profiles_and_overrides():
    assert KGoodConfig.profile("full") == KGoodConfig()
    desk = KGoodConfig.profile("desk")
    assert desk.exrec == 10
    cfg = KGoodConfig.from_ops({"k_good_profile": "desk", "k_good": {"ec": 5}})
    assert cfg.ec == 5 and cfg.prep == desk.prep
    assert cfg.in_g(1, 1, 1)
    assert not cfg.in_g(5, 5, 5)


def test_k_good_rejects_invalid_values():
    with pytest.raises(ValueError, match="nonnegative"):
        KGoodConfig(prep=-1)
    with pytest.raises(ValueError, match="k_best"):
        KGoodConfig(xver=2, k_best=3)
    with pytest.raises(ValueError, match="unknown k_good keys"):
        KGoodConfig().updated({"gate": 1})
    with pytest.raises(ValueError, match="profile"):
        KGoodConfig.profile("quick")


@pytest.fixture(scope="module")
def steane_level(steane, steane_prep):
    return count_level(nw.two_ancilla_network(steane_prep, steane_prep), steane, SMALL)


def rectangles(level):
    return list(level.exrecs.values()) + list(level.gates.values())


def test_level_one_bounds_vanish_without_noise(steane_level):
    for rect in rectangles(steane_level):
        assert eval_exact(rect.denominator, Fraction(0)) == 1
        for expr in list(rect.malignant.values()) + list(rect.bad.values()):
            assert eval_exact(expr, Fraction(0)) == 0


def test_single_failures_are_never_malignant(steane_level):
    for rect in rectangles(steane_level):
        for e, poly in rect.counts.items():
            assert all(c == 0 for c in poly.coeffs[:2]), (rect.name, e)
    assert any(any(poly.coeffs) for poly in steane_level.exrecs["AB"].counts.values())


def test_lec_reaches_every_syndrome_with_one_failure(steane, steane_level):
    for sector in ("X", "Z"):
        assert lec_syndrome_classes(steane_level.ec, sector, 0, steane.r) == 1
        assert lec_syndrome_classes(steane_level.ec, sector, 1, steane.r) == 1 + steane.n


def test_transversal_cnot_stage_keys(golay, steane):
    for sector, st in cnot_stages(steane, 1).items():
        assert len(np.unique(st.key[st.order == 1])) == 3 * steane.n
        assert st.n_fields == 2
    for sector, st in cnot_stages(golay, 2).items():
        assert len(np.unique(st.key[st.order == 1])) == 69
        assert len(np.unique(st.key[st.order == 2])) == 2277


def test_simulated_malignant_events_stay_below_their_bounds(steane, steane_prep, steane_level):
    pair = nw.two_ancilla_network(steane_prep, steane_prep)
    bounds = EventBounds.from_level(steane_level)
    noise = NoiseModel.from_p(Fraction(1, 1000))
    est = simulate_malignant(steane, pair, pair.dual(), noise, 4000, seed=2, batches=4, progress=False)
    for e in est.counts:
        bound = enclose(bounds.members(e)["AB"], noise.gamma).hi
        assert 0 < bound < 1
        assert est.frequency(e) + 3 * est.stderr(e) <= bound


def test_level_two_counts_use_level_two_tables(steane, steane_prep):
    gamma = Leaf(CountPoly.from_dict({1: 2}, (1, 0, 0)))
    transformed = TransformedNoise(gamma, {e: 1 for e in EVENTS}, {e: Fraction(1) for e in EVENTS})
    bounds, counts = level2_count(transformed, nw.two_ancilla_network(steane_prep, steane_prep), steane, SMALL)
    assert counts.level == 2
    assert counts.ec.lec["X"].kind == "level2"
    assert all(poly.kind == "level2" for poly in counts.exrecs["AB"].counts.values())
    assert bounds.level == 2
    assert eval_exact(counts.incorrectness(), Fraction(0)) == 0


@pytest.mark.slow
def test_golay_level_one_counts(golay):
    net = nw.four_ancilla_network(prep.steane4_preps(), name="steane4")
    level = count_level(net, golay, KGoodConfig.profile("desk"))
    assert [lec_syndrome_classes(level.ec, "X", k, golay.r) for k in range(4)] == [1, 24, 277, 2048]
    for rect in rectangles(level):
        for e, poly in rect.counts.items():
            assert all(c == 0 for c in poly.coeffs[:golay.t]), (rect.name, e)
    g = GAMMA_MAX / 2
    ab = level.exrecs["AB"]
    assert eval_exact(ab.malignant["ZI"], g) > eval_exact(ab.malignant["IX"], g)
    assert eval_exact(level.incorrectness(), Fraction(0)) == 0
