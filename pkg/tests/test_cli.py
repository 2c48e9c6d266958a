import json
import subprocess
import sys

import pytest

from curvecount.cli import run, seeded_weights

from conftest import SURFACES


def call(*argv):
    code, text = run([*argv, "--format", "json"])
    return code, json.loads(text)


def test_validate_fixtures():
    for name in SURFACES + ["annulus"]:
        code, body = call("validate", name)
        assert code == 0 and body["ok"] and body["counting"], name


def test_validate_reports():
    code, body = call("validate", "fixtures/s11.json")
    assert (code, body["genus"], body["punctures"], body["counting"]) == (0, 1, 1, True)
    code, body = call("validate", "s12")
    assert (body["genus"], body["punctures"]) == (1, 2)
    code, body = call("validate", "bad_edge")
    assert code == 2 and "edge used once" in body["error"]
    code, body = call("validate", "no/such/file.json")
    assert code == 2


def test_matrix():
    code, body = call("matrix", "s12")
    assert code == 0 and body["shape"] == [6, 12] and body["rank"] == 6 and body["delta_sum_all_ones"]
    code, body = call("matrix", "s11")
    assert body["shape"] == [3, 6] and body["rank"] == 3
    code, body = call("matrix", "sphere3")
    assert body["rank"] == 3 and len(body["deltas"]) == 3


def test_series():
    code, body = call("series", "s11", "--degree", "6", "--essential")
    assert code == 0 and body["dual_method_check"]
    for term in body["terms"]:
        a, b = term["alpha"]
        assert int(term["coeff"]) == (1 if min(a, b) == 0 else 2)
    code, body = call("series", "s11", "--degree", "0")
    assert body["terms"] == [{"alpha": [0, 0], "coeff": "1"}]
    code, body = call("series", "s12", "--degree", "2")
    assert code == 0 and body["series"] == "g"


def test_reciprocity():
    code, body = call("reciprocity", "s11", "--degree", "12", "--weights", "1,1")
    assert code == 0
    (v,) = body["verdicts"]
    assert v["reciprocal"] and v["rational"] == {"num": [1, 0, 1], "den": [1, -2, 1]}
    code, body = call("reciprocity", "s11", "--use-g")
    assert code == 1 and not body["all_hold"]
    code, body = call("reciprocity", "annulus")
    assert code == 0 and body["all_hold"]


def test_reciprocity_reconstruction_failure_exit_code():
    code, body = call("reciprocity", "genus2", "--degree", "8", "--weights", "1,1,1,1")
    assert code == 4 and body["verdicts"][0]["rational"] is None


def test_stanley():
    code, body = call("stanley", "diag")
    assert code == 0 and body["holds"] and body["expected_sign"] == -1
    code, body = call("stanley", "unpointed")
    assert code == 5
    code, body = call("stanley", "diag", "--degree", "1")
    assert body["status"] == "not applicable"


def test_trace():
    code, body = call("trace", "s11", "--weights", "2,2,2")
    assert code == 0 and len(body["components"]) == 1 and body["components"][0]["peripheral"]
    code, body = call("trace", "s11", "--weights", "1,0,1")
    assert body["essential"] and len(body["components"]) == 1
    # (1,1,0) satisfies parity and the triangle inequalities in both triangles
    code, body = call("trace", "s11", "--weights", "1,1,0")
    assert code == 0 and body["essential"]
    code, body = call("trace", "s11", "--weights", "1,0,0")
    assert code == 2 and "T0" in body["error"]


def test_deterministic_output(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    run(["reciprocity", "s11", "--seed", "3", "--format", "json", "--out", str(out1)])
    run(["reciprocity", "s11", "--seed", "3", "--format", "json", "--out", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()


def test_seeded_weights():
    ws = seeded_weights(3, 0)
    assert len(ws) == 2 and len(set(ws)) == 2
    assert all(set(w) <= {1, 2} and len(set(w)) > 1 for w in ws)
    assert seeded_weights(3, 0) == ws
    assert len(set(seeded_weights(1, 0))) == 2


def test_human_format_and_entry_point():
    code, text = run(["matrix", "s11"])
    assert "rank 3" in text
    proc = subprocess.run([sys.executable, "-m", "curvecount.cli", "validate", "s11"], capture_output=True, text=True)
    assert proc.returncode == 0 and "genus: 1" in proc.stdout


@pytest.mark.parametrize("bad", [["series", "s11", "--degree", "-1"], ["trace", "s11"]])
def test_input_errors(bad):
    code, _ = call(*bad)
    assert code == 2
