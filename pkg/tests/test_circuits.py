"""
Tests for preparation circuits, networks and fault propagation
"""
import numpy as np
import pytest

from golayft.circuits import network as nw
from golayft.circuits import prep
from golayft.circuits.circuit import Circuit, Kind
from golayft.circuits.propagate import accepted, fault_effects, fault_items, propagate
from golayft.code import symmetry
from golayft.code.pauli import PauliVec
from golayft.code.tables import class_tables


def test_published_latin_schedules_prepare_golay_zero_with_exact_census(golay):
    for c in prep.steane4_preps():
        assert c.prepares(golay, "zero")
        assert c.depth == 7
        assert c.census().row() == (77, 23, 0, 6, 106)


def test_steane_latin_prep_census(steane, steane_prep):
    assert steane_prep.prepares(steane, "zero")
    assert steane_prep.census().row() == (9, 7, 0, 2, 18)
    assert steane_prep.dual().prepares(steane, "plus")


def test_overlap_synthesis_prepares_golay_zero(golay):
    c = prep.overlap_synthesize(golay)
    assert c.prepares(golay, "zero")
    assert c.census().prep == 23
    assert not c.census().meas


def test_stored_overlap_circuit_census(golay, overlap_prep):
    assert overlap_prep.prepares(golay, "zero")
    assert overlap_prep.depth == 7
    assert overlap_prep.census().row() == (57, 23, 0, 38, 118)


def test_verification_network_cnot_totals():
    assert nw.four_ancilla_network(prep.overlap4_preps()).cnot_count == 297
    assert nw.four_ancilla_network(prep.steane4_preps()).cnot_count == 4 * 77 + 69
    assert nw.twelve_ancilla_network(prep.steane4_preps()[0]).cnot_count == 1177


def test_latin_schedule_from_random_presentation_prepares_the_code(golay):
    rng = np.random.default_rng(5)
    rows, pivots = golay.presentation(rng.permutation(golay.n))
    c = prep.latin_prep_from_presentation(golay, rows, pivots, rng)
    assert c.prepares(golay, "zero")
    assert c.cnot_count == sum(bin(r).count("1") - 1 for r in rows)


def test_schedule_validation_catches_latin_violations(steane):
    bad = prep.Schedule({3: (4, 5, 6), 1: (4, 6, 2), 0: (6, 2, 4)})
    with pytest.raises(ValueError, match="Latin"):
        prep.latin_rectangle_prep(steane, bad)
    wrong = prep.Schedule({3: (4, 5, 6), 1: (5, 6, 2), 0: (6, 2, 5)})
    with pytest.raises(ValueError, match="does not prepare"):
        prep.latin_rectangle_prep(steane, wrong)


def test_circuit_rejects_reused_qubits_in_a_round():
    with pytest.raises(ValueError, match="twice"):
        Circuit(3, (0,), (1, 2), (((0, 1), (0, 2)),))


def test_circuit_file_save_and_load(tmpdir, steane, steane_prep):
    path = str(tmpdir.join("steane.txt"))
    prep.save_circuit(path, steane_prep, "test circuit")
    loaded = prep.load_circuit(path, steane)
    assert loaded.rounds == steane_prep.rounds
    assert loaded.plus == steane_prep.plus


def test_permuted_circuit_keeps_census_and_code(golay):
    base = prep.steane4_preps()[0]
    perm = symmetry.m23_generators()[1]
    moved = base.permuted(perm)
    assert moved.census() == base.census()
    assert moved.prepares(golay, "zero")


def test_four_ancilla_network_location_count():
    net = nw.four_ancilla_network(prep.steane4_preps(), name="steane4")
    assert net.census().total == 4 * 106 + 184
    assert net.outputs == (0,)
    assert [t.sector for t in net.tests] == ["X", "X", "Z"]
    assert [c.accept for c in net.checks] == ["key", "key", "syndrome"]


def test_exrec_location_totals():
    v0 = nw.four_ancilla_network(prep.steane4_preps(), name="steane4")
    ex = nw.exrec_network(23, v0, v0.dual())
    assert ex.census().total == 5439
    assert ex.cnot_count == 4 * (2 * v0.cnot_count + 46) + 23


def test_two_ancilla_steane_exrec_total(steane_prep):
    v0 = nw.two_ancilla_network(steane_prep, steane_prep)
    assert v0.census().total == 50
    ex = nw.exrec_network(7, v0, v0.dual())
    assert ex.census().total == 4 * (2 * 50 + 42) + 7


def test_assemble_rejects_invalid_trees(steane_prep):
    with pytest.raises(ValueError, match="survive"):
        nw.assemble([steane_prep] * 2, [])
    with pytest.raises(ValueError, match="measured block"):
        nw.assemble([steane_prep] * 3, [("X", 0, 1), ("X", 2, 1)])
    with pytest.raises(ValueError, match="sector"):
        nw.assemble([steane_prep] * 2, [("Y", 0, 1)])


def test_dual_network_swaps_preparations_and_measurements(steane_prep):
    net = nw.two_ancilla_network(steane_prep, steane_prep)
    dual = net.dual()
    kinds = [loc.kind for loc in net.locations]
    dkinds = [loc.kind for loc in dual.locations]
    assert kinds.count(Kind.PREP_ZERO) == dkinds.count(Kind.PREP_PLUS)
    assert dkinds.count(Kind.MEAS_X) == kinds.count(Kind.MEAS_Z)
    assert dual.tests[0].sector == "Z"


def test_fault_free_run_is_accepted_with_trivial_output(steane, steane_prep):
    net = nw.two_ancilla_network(steane_prep, steane_prep)
    res = propagate(net)
    assert accepted(net, steane, res)
    assert res.outputs[0].is_identity


def test_x_error_on_checked_block_is_rejected(steane, steane_prep):
    net = nw.two_ancilla_network(steane_prep, steane_prep)
    i = next(i for i, loc in enumerate(net.locations) if loc.kind == Kind.MEAS_Z)
    res = propagate(net, {i: PauliVec.from_label("X")})
    assert not accepted(net, steane, res)


def test_fault_effects_agree_with_direct_propagation(steane, steane_prep):
    net = nw.two_ancilla_network(steane_prep, steane_prep)
    ct = class_tables(steane)
    eff = fault_effects(net, steane, "X")
    for (i, slot), row in eff.rows.items():
        kind = net.locations[i].kind
        label = ("XI", "IX")[slot] if kind == Kind.CNOT else "X"
        res = propagate(net, {i: PauliVec.from_label(label)})
        expect = []
        for f in eff.layout:
            mask = res.measured[f.block] if f.role == "check" else res.outputs[f.block].x_mask
            expect.append(ct.key(mask) & f.keep)
        assert list(eff.fields[row]) == expect


def test_fault_items_carry_level_one_weights(steane, steane_prep):
    net = nw.single_block_network(steane_prep)
    items = fault_items(net, steane, "X")
    # 9 CNOTs x 12, 2 rests x 8, 4 |0> preparations x 4
    assert items.total_weight == 9 * 12 + 2 * 8 + 4 * 4
    items_xz = fault_items(net, steane, "XZ")
    assert items_xz.total_weight == 9 * 15 + 2 * 12 + 7 * 4


def test_gate_rectangles_and_stages_build(steane_prep):
    v0 = nw.two_ancilla_network(steane_prep, steane_prep)
    for kind in nw.GATE_RECTANGLES:
        net = nw.gate_exrec_network(7, kind, v0, v0.dual())
        assert net.census().total > 0
    with pytest.raises(ValueError):
        nw.gate_exrec_network(7, "swap")
    assert nw.stage_network(7, "cnot").cnot_count == 7
