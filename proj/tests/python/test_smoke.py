import json
import os
import pathlib

import pytest

import relproj

INPUTS = pathlib.Path(os.environ.get("RELPROJ_INPUTS", pathlib.Path(__file__).resolve().parents[2] / "inputs"))


def load(name):
    return json.loads((INPUTS / name).read_text())


def test_transition_inverts_coordinate():
    assert relproj.transition(1, 0, 1, ["2"]) == ["1/2"]


def test_transition_zero_pivot_is_input_error():
    with pytest.raises(ValueError):
        relproj.transition(1, 0, 1, ["0"])


def test_canonical_rational():
    assert relproj.canonical_rational("-6/4") == "-3/2"


def test_octonion_pentagon_has_no_violations():
    checked, violations = relproj.pentagon("octonion")
    assert checked == 4096
    assert violations == 0


def test_octonions_form_a_field_object():
    assert relproj.is_field_object("O")
    assert not relproj.is_field_object("Q[eps]")


def test_run_matches_cli():
    code, out, err = relproj.run(["--format", "json", "proj", "transition",
                              "--n", "1", "--from", "0", "--to", "1", "--coords", "2"])
    assert code == 0, err
    assert json.loads(out)["data"]["coords"] == ["1/2"]


def test_odd_line_signature():
    report = relproj.evaluate("line", load("odd_line.json"))
    assert report["data"]["invertible"] is True
    assert report["data"]["line_object"] is False
    assert report["data"]["signature"] == ["-1"]


def test_bad_definition_raises_value_error():
    with pytest.raises(relproj.InputError):
        relproj.evaluate("line", {"algebra": "no_such_algebra"})
    assert issubclass(relproj.InputError, ValueError)
