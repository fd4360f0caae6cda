"""
Tests for the golayft io module
"""
import importlib
import json
from fractions import Fraction
from functools import partial

import pytest

from golayft.io import formats, save
from golayft.polynomials import CountPoly


def test_circuit_files_round_trip(tmpdir):
    path = str(tmpdir.join("c.txt"))
    rounds = [[(0, 3), (1, 4)], [(3, 2)]]
    formats.write_circuit(path, 5, [0, 1], [2, 3, 4], rounds, comment="two rounds")
    d = formats.read_circuit(path)
    assert d == {"n": 5, "plus": [0, 1], "zero": [2, 3, 4], "rounds": rounds}


def test_circuit_errors_name_the_line(tmpdir):
    path = tmpdir.join("bad.txt")
    path.write("n 3\nplus 0\nzero 1 2\n2: 0>1\n")
    with pytest.raises(ValueError, match=r"bad.txt:4: round 2 out of order"):
        formats.read_circuit(str(path))
    path.write("plus 0\n1: 0>1\n")
    with pytest.raises(ValueError, match="missing 'n'"):
        formats.read_circuit(str(path))


def test_schedules_and_code_rows(tmpdir):
    path = str(tmpdir.join("s.txt"))
    formats.write_schedule(path, {1: [4, 5], 0: [5, 6]})
    assert formats.read_schedule(path) == {0: [5, 6], 1: [4, 5]}
    tmpdir.join("ragged.txt").write("0: 1 2\n1: 3\n")
    with pytest.raises(ValueError, match="different lengths"):
        formats.read_schedule(str(tmpdir.join("ragged.txt")))
    assert formats.row_to_mask("1.1") == 5
    assert formats.mask_to_row(5, 4) == "1.1."
    tmpdir.join("code.txt").write("# comment\n11.\n1.1\n.1\n")
    with pytest.raises(ValueError, match=r"code.txt:4: row length"):
        formats.read_code_matrix(str(tmpdir.join("code.txt")))


def test_countpoly_text_format():
    text = formats.format_countpoly("level1", (3, 1, 0), {2: 7, 0: 1})
    assert text.splitlines()[0] == "countpoly level1 3 1 0"
    assert formats.parse_countpoly(text) == ("level1", (3, 1, 0), {0: 1, 2: 7})
    with pytest.raises(ValueError, match="header"):
        formats.parse_countpoly("poly 1 2\n")


def test_json_and_csv_outputs(tmpdir):
    path = str(tmpdir.join("out.json"))
    save.save_json(path, {"g": Fraction(1, 3), "poly": CountPoly.from_dict({1: 12}, (1, 0, 0)), "t": (1, 2)})
    d = save.load_json(path)
    assert d["g"] == "1/3" and d["t"] == [1, 2]
    assert isinstance(d["poly"], dict)
    csv_path = str(tmpdir.join("out.csv"))
    save.save_csv(csv_path, ["gamma", "name"], [[Fraction(1, 4), "a"], [0.5, "b"]])
    rows = save.load_csv(csv_path)
    assert rows == [{"gamma": "0.25", "name": "a"}, {"gamma": "0.5", "name": "b"}]


def test_manifest_hashes_ops(tmpdir, steane):
    ops = {"seed": 3, "code": "steane"}
    m = save.manifest(ops, steane)
    assert m["seed"] == 3
    assert m["code"] == steane.name
    assert m["ops_sha256"] == save.sha256_text(json.dumps(ops, sort_keys=True))
    path = save.save_manifest(str(tmpdir), ops, steane)
    assert save.load_json(path)["code_sha256"] == steane.presentation_hash()


def test_checkpoints_resume_and_guard_settings(tmpdir):
    root = str(tmpdir.join("ckpt"))
    ck = save.Checkpoints(root, "abc")
    calls = []

    def compute(x):
        calls.append(x)
        return {"value": x}

    assert ck.cached("prep_X", compute, 1) == {"value": 1}
    assert ck.cached("prep_X", compute, 2) == {"value": 1}
    ck.save("xver", [1, 2])
    assert calls == [1]
    assert ck.has("prep_X") and ck.completed() == ["prep_X", "xver"]
    assert save.Checkpoints(root, "abc").load("xver") == [1, 2]
    with pytest.raises(ValueError, match="different ops"):
        save.Checkpoints(root, "def")
    off = save.Checkpoints("")
    assert not off.enabled and not off.has("prep_X")
    assert off.cached("prep_X", compute, 5) == {"value": 5}


@pytest.mark.parametrize("module", ["golayft.run_golay", "golayft.io.save", "golayft.counting.ec",
                                    "golayft.counting.exrec", "golayft.counting.verify",
                                    "golayft.montecarlo.overhead", "golayft.montecarlo.malignant"])
def test_console_output_is_flushed(module):
    p = importlib.import_module(module).print
    assert isinstance(p, partial) and p.keywords == {"flush": True}
