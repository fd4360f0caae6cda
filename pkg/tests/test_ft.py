"""
Tests for the golayft ft module
"""
import json

import numpy as np
import pytest

from golayft.circuits import network as nw
from golayft.circuits import prep
from golayft.ft import correlated_errors, random_search, strict_ft_check
from golayft.ft.search import candidate_generator, resolve_overlap_convention


def test_steane_pair_is_strictly_fault_tolerant(steane, steane_prep):
    report = strict_ft_check(nw.two_ancilla_network(steane_prep, steane_prep), steane, 1)
    assert report.passed
    assert not report.witnesses
    assert report.max_weight["X"][1] <= 1
    assert report.max_weight["Z"][1] <= 1


def test_unverified_preparation_has_a_hook_error(steane, steane_prep):
    report = strict_ft_check(nw.single_block_network(steane_prep), steane, 1, sectors=("X",))
    assert not report.passed
    assert report.max_weight["X"][1] == 2
    w = report.witnesses[0]
    assert (w.sector, w.order, w.weight) == ("X", 1, 2)
    assert len(w.faults) == 1


def test_report_saves_as_json(tmpdir, steane, steane_prep):
    report = strict_ft_check(nw.single_block_network(steane_prep), steane, 1, sectors=("X",))
    path = str(tmpdir.join("ft.json"))
    report.save(path)
    with open(path) as f:
        d = json.load(f)
    assert d["passed"] is False
    assert d["n_violations"] == report.n_violations


def test_strict_check_needs_one_output(steane):
    with pytest.raises(ValueError, match="exactly one output"):
        strict_ft_check(nw.stage_network(7, "cnot"), steane, 1)


def test_correlated_errors_of_steane_preparation(steane, steane_prep):
    table = correlated_errors(steane_prep, steane, "X", 2)
    assert list(table.reachable[0]) == [0]
    assert table.max_order == 2
    # the hook fault on the first control leaves a weight-2 class
    assert table.histogram(1).get(2, 0) >= 1
    assert set(table.new[1]).isdisjoint(table.reachable[0])
    assert table.n_classes(1) > 0
    assert table.n_reachable(0) == 1
    assert table.n_reachable(2) == 1 + len(table.new[1]) + len(table.new[2])
    with pytest.raises(ValueError):
        correlated_errors(steane_prep, steane, "X", 4)


@pytest.mark.slow
def test_correlated_errors_of_stored_overlap_preparation(golay, overlap_prep):
    table = correlated_errors(overlap_prep, golay, "X", 2)
    assert table.histogram(1) == {2: 16, 3: 15, 4: 4}
    assert table.histogram(2) == {3: 493, 4: 400, 5: 35, 6: 1}
    assert [table.n_reachable(k) for k in range(3)] == [1, 59, 1225]


def test_candidate_generator_is_deterministic(steane):
    draw = candidate_generator("latin-round-permute", steane, prep.steane_latin_prep())
    a = draw(np.random.default_rng(2))
    b = draw(np.random.default_rng(2))
    assert a == b
    assert a.prepares(steane)
    with pytest.raises(ValueError):
        candidate_generator("overlap-m23-permute", steane)
    with pytest.raises(ValueError):
        candidate_generator("anneal", steane)


def test_random_search_results_pass_the_check(steane, steane_prep):
    found = random_search("latin-round-permute", 4, seed=1, code=steane, max_order=1,
                          base=steane_prep, progress=False)
    again = random_search("latin-round-permute", 4, seed=1, code=steane, max_order=1,
                          base=steane_prep, progress=False)
    assert found == again
    for quad in found:
        assert strict_ft_check(nw.four_ancilla_network(*quad), steane, 1).passed


@pytest.mark.slow
def test_steane4_network_passes_at_order_two(golay):
    net = nw.four_ancilla_network(prep.steane4_preps(), name="steane4")
    assert strict_ft_check(net, golay, 2, max_witnesses=1).passed


@pytest.mark.slow
def test_checker_failures_mask_a_weight_four_error_at_order_three(golay):
    net = nw.four_ancilla_network(prep.steane4_preps(), name="steane4")
    report = strict_ft_check(net, golay, 3, sectors=("X",), max_witnesses=1)
    assert not report.passed
    assert report.max_weight["X"][2] <= 2
    assert report.max_weight["X"][3] >= 4


@pytest.mark.slow
def test_four_copies_of_one_latin_preparation_fail(golay):
    base = prep.steane4_preps()[0]
    report = strict_ft_check(nw.four_ancilla_network([base] * 4), golay, 2, sectors=("X",), max_witnesses=1)
    assert not report.passed
    assert report.max_weight["X"][2] == 3


@pytest.mark.slow
def test_overlap4_network_passes_at_order_two(golay):
    convention, preps, report = resolve_overlap_convention(max_order=2, search_trials=400, progress=False)
    assert convention in ("image", "preimage")
    assert report.passed and report.max_order == 2
    net = nw.four_ancilla_network(*preps)
    assert net.cnot_count == 297
    assert not strict_ft_check(net, golay, 3, sectors=("X",), max_witnesses=1).passed
