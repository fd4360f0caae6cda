"""
Tests for the golayft code module
"""
import numpy as np
import pytest

from golayft.code import css, pauli, symmetry
from golayft.code.tables import class_tables


def test_golay_code_has_eleven_weight_eight_generators_and_distance_seven(golay):
    assert golay.n == 23
    assert golay.r == 11
    assert all(pauli.popcount(row) == 8 for row in golay.stab_rows)
    assert golay.distance == 7
    assert golay.t == 3


def test_golay_reduced_weight_histograms_match_perfect_code_counts(golay):
    ct = class_tables(golay)
    x_hist = ct.histogram(keep_logical=True)
    z_hist = ct.histogram(keep_logical=False)
    assert tuple(x_hist[:8]) == (1, 23, 253, 1771, 1771, 253, 23, 1)
    assert x_hist[8:].sum() == 0
    assert tuple(z_hist[:4]) == (1, 23, 253, 1771)
    assert z_hist[4:].sum() == 0


def test_steane_reduced_weight_histograms(steane):
    ct = class_tables(steane)
    assert tuple(np.trim_zeros(ct.histogram(True), "b")) == (1, 7, 7, 1)
    assert tuple(np.trim_zeros(ct.histogram(False), "b")) == (1, 7)


def test_every_class_has_the_same_number_of_errors(steane):
    ct = class_tables(steane)
    assert np.all(ct.sizes == 1 << (steane.n - steane.r - 1))


def test_keys_of_error_arrays_match_single_keys(steane):
    ct = class_tables(steane)
    masks = np.arange(1 << steane.n)
    keys = ct.keys(masks)
    assert all(keys[m] == ct.key(int(m)) for m in range(0, 1 << steane.n, 7))


def test_decoder_corrects_every_error_up_to_t(golay):
    for q in range(golay.n):
        for q2 in range(q + 1, golay.n, 5):
            e = (1 << q) | (1 << q2)
            assert css.is_uncorrectable(golay, "X", e) == 0
    assert css.is_uncorrectable(golay, "X", golay.logical_row) == 1


def test_decode_flag_agrees_with_is_uncorrectable(steane):
    ct = class_tables(steane)
    for e in range(1 << steane.n):
        assert ct.decode_flag(ct.key(e)) == css.is_uncorrectable(steane, "X", e)


def test_logical_bit_is_dropped_for_z_errors_on_zero_state(steane):
    k = css.classify(steane, "Z", steane.logical_row, "zero")
    assert k.syndrome == 0 and k.logical == 0
    assert css.reduced_weight(steane, "Z", steane.logical_row, "zero") == 0
    assert css.reduced_weight(steane, "X", steane.logical_row, "zero") == steane.distance


def test_keeps_logical_depends_on_sector_and_state():
    assert css.keeps_logical("X", "zero")
    assert not css.keeps_logical("Z", "zero")
    assert css.keeps_logical("Z", "plus")
    assert css.keeps_logical("X", "data") and css.keeps_logical("Z", "data")
    with pytest.raises(ValueError):
        css.keeps_logical("Y", "zero")


def test_code_from_rows_rejects_transcription_errors():
    good = ["...1111", ".11..11", "1.1.1.1"]
    css.code_from_rows("steane", good, row_weight=4)
    with pytest.raises(ValueError, match="weight"):
        css.code_from_rows("bad", ["..11111", ".11..11", "1.1.1.1"], row_weight=4)
    with pytest.raises(ValueError, match="linearly dependent"):
        css.code_from_rows("bad", ["...1111", "...1111", "1.1.1.1"])
    with pytest.raises(ValueError, match="odd number"):
        css.code_from_rows("bad", ["...111.", ".11..11", "1.1.1.1"])


def test_load_code_accepts_names_and_files(tmpdir):
    assert css.load_code("steane").n == 7
    path = tmpdir.join("mine.txt")
    path.write("# Steane rows\n...1111\n.11..11\n1.1.1.1\n")
    code = css.load_code(str(path))
    assert code.name == "mine"
    assert pauli.same_rowspace(code.stab_rows, css.steane_code().stab_rows, 7)
    with pytest.raises(ValueError, match="unknown code"):
        css.load_code("hamming")


def test_rref_gives_one_pivot_per_row(golay):
    rows, pivots = golay.presentation()
    assert len(rows) == golay.r
    for i, p in enumerate(pivots):
        assert [(r >> p) & 1 for r in rows] == [int(i == j) for j in range(len(rows))]
    assert pauli.same_rowspace(rows, golay.stab_rows, golay.n)


def test_pauli_labels_and_commutation():
    x = pauli.PauliVec.from_label("XXI")
    z = pauli.PauliVec.from_label("ZIZ")
    assert x.label() == "XXI"
    assert (x * z).label() == "YXZ"
    assert not x.commutes(z)
    assert x.commutes(pauli.PauliVec.from_label("ZZI"))
    with pytest.raises(ValueError):
        pauli.PauliVec.from_label("XQ")


def test_m23_generators_preserve_the_golay_rowspace(golay):
    for g in symmetry.m23_generators():
        assert symmetry.preserves_rowspace(golay, g)
    perm = symmetry.random_m23(np.random.default_rng(3))
    assert symmetry.preserves_rowspace(golay, perm)


def test_permutation_algebra():
    p = symmetry.QubitPermutation.from_cycles(5, [(0, 1, 2)])
    assert p.then(p.inverse()).is_identity
    assert (p ** 3).is_identity
    assert p.apply(0b001) == 0b010
    with pytest.raises(ValueError):
        symmetry.QubitPermutation((0, 0, 1))
