"""
Tests for the golayft pipeline stages
"""
import os
from fractions import Fraction

import pytest

import golayft
from golayft.circuits.network import single_block_network, two_ancilla_network
from golayft.io import save
from golayft.run_golay import checkpoints, require_ft


def test_code_stage(test_ops):
    info = golayft.run_golay(test_ops, "code")
    assert info["n"] == 7 and info["distance"] == 3
    assert info["row_weights"] == [4]
    assert os.path.isfile(os.path.join(test_ops["save_path0"], "code_run.json"))


def test_prep_stage_writes_circuits(test_ops):
    info = golayft.run_golay(test_ops, "prep")
    path = test_ops["save_path0"]
    assert info["census"][0] == 25 and info["census"][-1] == 50
    first = next(iter(info["preps"].values()))
    assert first["x_classes"][0] == 1
    assert first["x_classes"][0] <= first["x_classes"][1] <= first["x_classes"][2]
    files = os.listdir(os.path.join(path, "circuits"))
    assert files
    assert save.load_json(os.path.join(path, "prep.json"))["network"] == info["network"]


def test_ft_stage_passes_on_a_steane_pair(test_ops):
    report = golayft.run_golay(test_ops, "ft")
    assert report.passed
    d = save.load_json(os.path.join(test_ops["save_path0"], "ft_report.json"))
    assert d["passed"]


def test_overhead_stage_writes_curve(test_ops):
    estimates = golayft.run_golay(test_ops, "overhead")
    assert len(estimates) == 1
    assert 0 < estimates[0].pr_accept <= 1
    rows = save.load_csv(os.path.join(test_ops["save_path0"], "overhead.csv"))
    assert len(rows) == 1


def test_unknown_stage_is_refused(test_ops):
    with pytest.raises(ValueError, match="unknown command"):
        golayft.run_golay(test_ops, "plot")


@pytest.mark.slow
def test_count_stage(test_ops):
    bounds, counts, pt = golayft.run_golay(test_ops, "count")
    assert pt.status in ("ok", "at boundary", "below range")
    for name in ("level1_curves.csv", "pseudo_threshold.json", "level1_bounds.json", "count_manifest.json"):
        assert os.path.isfile(os.path.join(test_ops["save_path0"], name))


@pytest.mark.slow
def test_threshold_stage(test_ops):
    result = golayft.run_golay(test_ops, "threshold")
    assert 0 < result.gamma_th <= Fraction(test_ops["gamma_max"])
    assert 0 < result.p_th < 1
    assert result.binding_event
    assert os.path.isfile(os.path.join(test_ops["save_path0"], "threshold.json"))
    assert os.path.isfile(os.path.join(test_ops["save_path0"], "envelopes.csv"))


def test_checkpoint_hash_tracks_seed_and_network(test_ops, steane_prep, monkeypatch):
    monkeypatch.delenv("GOLAYFT_CHECKPOINT_DIR", raising=False)
    ops = dict(test_ops, checkpoint_dir="")
    base = checkpoints(ops).ops_hash
    assert checkpoints(dict(ops)).ops_hash == base
    assert checkpoints(dict(ops, seed=ops["seed"] + 1)).ops_hash != base
    one = checkpoints(ops, single_block_network(steane_prep)).ops_hash
    assert one == checkpoints(ops, single_block_network(steane_prep)).ops_hash
    assert one != checkpoints(ops, two_ancilla_network(steane_prep, steane_prep)).ops_hash


def test_counting_refuses_a_network_that_is_not_fault_tolerant(test_ops, steane, steane_prep):
    bare = single_block_network(steane_prep)
    with pytest.raises(ValueError, match="not strictly fault tolerant"):
        require_ft(test_ops, bare, steane)
    require_ft(dict(test_ops, require_ft=False), bare, steane)
    require_ft(test_ops, two_ancilla_network(steane_prep, steane_prep), steane)
