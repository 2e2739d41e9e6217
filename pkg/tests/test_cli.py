import json
import subprocess
import sys

import pytest

from polaritykit.cli import main
from polaritykit.formats import frame_doc_files, lattice_doc_files

DATA = {**lattice_doc_files(), **frame_doc_files()}


@pytest.fixture
def data(tmp_path):
    for name, text in DATA.items():
        (tmp_path / name).write_text(text, encoding="utf-8")
    return tmp_path


def test_canonical_then_lemmas_passes(data, capsys):
    out = data / "out.frame"
    assert main(["canonical", str(data / "c3-godel.lat"), "-o", str(out)]) == 0
    assert out.read_text().startswith("# polaritykit frame")
    assert main(["check", str(out), "--suite", "lemmas"]) == 0


def test_additivity_on_bad_frame_fails_with_witness(data, capsys):
    assert main(["check", str(data / "bad.frame"), "--suite", "additivity"]) == 1
    text = capsys.readouterr().out
    assert "FAIL sections_stable" in text and "family=" in text


def test_complete_p2(data, capsys):
    assert main(["complete", str(data / "p2.frame")]) == 0
    text = capsys.readouterr().out
    assert "stable sets over X (4)" in text
    assert "PASS isomorphic_to_cut_lattice" in text


@pytest.mark.parametrize("suite", ["lemmas", "additivity", "conjugates", "all"])
@pytest.mark.parametrize("name", ["c3-godel.lat", "m3-ops.lat", "c3-grishin.lat", "p2.frame", "p1.frame"])
def test_suites_pass_on_corpus(data, name, suite):
    assert main(["check", str(data / name), "--suite", suite]) == 0


def test_represent(data, capsys):
    assert main(["represent", str(data / "c4-lukasiewicz.lat"), "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema"] == 1 and doc["verdict"] == "isomorphic" and doc["passed"]


def test_input_errors_exit_2(data, capsys):
    bad = data / "broken.lat"
    bad.write_text("elements 0 1\norder\n  0 < 7\n")
    assert main(["check", str(bad)]) == 2
    assert "line 3" in capsys.readouterr().err
    assert main(["complete", str(data / "missing.frame")]) == 2
    mixed = data / "mixed.frame"
    mixed.write_text("x 1\ny 1\nincidence\nrelation R sort 1;1\n  x0 y0\n")
    assert main(["check", str(mixed)]) == 2


def test_json_reports_are_byte_identical(data, capsys):
    main(["check", str(data / "c3-lukasiewicz.lat"), "--format", "json"])
    first = capsys.readouterr().out
    main(["check", str(data / "c3-lukasiewicz.lat"), "--format", "json"])
    assert capsys.readouterr().out == first
    assert json.loads(first)["report"]["name"] == "suite:all"


def test_random_commands(capsys):
    assert main(["random", "--kind", "polarity", "--seed", "0"]) == 0
    first = capsys.readouterr().out
    main(["random", "--kind", "polarity", "--seed", "0"])
    assert capsys.readouterr().out == first
    assert "x0 y2" in first
    assert main(["random", "--kind", "lattice", "--seed", "4", "--size", "6", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["kind"] == "lattice"


def test_module_entry_point(data):
    ok = subprocess.run([sys.executable, "-m", "polaritykit", "complete", str(data / "p2.frame")],
                        capture_output=True, text=True)
    bad = subprocess.run([sys.executable, "-m", "polaritykit", "check", str(data / "bad.frame")],
                         capture_output=True, text=True)
    assert (ok.returncode, bad.returncode) == (0, 1)
