import json
import subprocess
import sys

import pytest

from hdxspec import cli
from hdxspec.io import dump_document, parse_complex
from hdxspec.theorems import VerificationReport

from conftest import FIXTURES

OCTA = str(FIXTURES / "octahedron.json")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_octahedron_passes(capsys):
    code, out, _ = run(capsys, "verify", OCTA, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "pass"
    assert all(r["status"] == "pass" for r in data["reports"])
    assert {r["theorem"].split("[")[0] for r in data["reports"]} >= {
        "structural_identities", "trickledown", "partite_contraction"}


def test_spectrum_text(capsys):
    code, out, _ = run(capsys, "spectrum", OCTA, "--degree", "0")
    assert code == 0
    assert "eigenvalues: {0, 1, 1, 1, 1.5, 1.5}" in out


def test_spectrum_link_json(capsys):
    code, out, _ = run(capsys, "spectrum", OCTA, "--degree", "0", "--link", "0", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["eigenvalues"] == [0.0, 1.0, 1.0, 2.0] and data["link"] == [0]


def test_spectrum_other_laplacians(capsys):
    code, out, _ = run(capsys, "spectrum", OCTA, "--degree", "2", "--laplacian", "down", "--format", "json")
    assert code == 0 and len(json.loads(out)["eigenvalues"]) == 8
    code, out, _ = run(capsys, "spectrum", OCTA, "--degree", "1", "--laplacian", "full", "--format", "json")
    assert code == 0 and json.loads(out)["zero_multiplicity"] == 0


def test_generate_then_analyze(capsys, tmp_path):
    path = str(tmp_path / "o.json")
    code, _, _ = run(capsys, "generate", "--family", "cross_polytope", "--n", "2", "--out", path)
    assert code == 0
    code, out, _ = run(capsys, "analyze", path, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["vertices"] == 6 and data["f_vector"] == [6, 12, 8]
    assert data["links_connected"] and data["gallery_connected"]
    assert data["partition"] == [[0, 1], [2, 3], [4, 5]]
    assert data["betti_numbers"] == [1, 0, 1]


def test_analyze_text_detects_partition(capsys):
    code, out, _ = run(capsys, "analyze", str(FIXTURES / "triangle.json"))
    assert code == 0
    assert "partition_source: detected" in out and "f_vector: {3, 3, 1}" in out
    code, out, _ = run(capsys, "analyze", str(FIXTURES / "k4_complete.json"))
    assert code == 0 and "partition: None" in out


def test_generate_round_trip_is_lossless(capsys):
    code, out, _ = run(capsys, "generate", "--family", "random_pure", "--N", "7", "--n", "2", "--p", "0.8",
                       "--seed", "4", "--weights", "random")
    assert code == 0
    doc = parse_complex(out)
    code, out2, _ = run(capsys, "generate", "--family", "random_pure", "--N", "7", "--n", "2", "--p", "0.8",
                        "--seed", "4", "--weights", "random", "--out", "-")
    assert out2 == out
    assert doc.metadata["generator"]["seed"] == 4
    assert dump_document(doc) == out


def test_json_reports_byte_stable(capsys):
    a = run(capsys, "verify", OCTA, "--format", "json", "--seed", "7", "--tolerance", "1e-9")[1]
    b = run(capsys, "verify", OCTA, "--format", "json", "--seed", "7", "--tolerance", "1e-9")[1]
    assert a == b
    data = json.loads(a)
    assert data["seed"] == 7 and data["tolerance"] == 1e-9


# -- exit codes ---------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["bogus"],
    [],
    ["spectrum", OCTA],
    ["spectrum", OCTA, "--degree", "5"],
    ["spectrum", OCTA, "--degree", "0", "--link", "0,1"],
    ["spectrum", OCTA, "--degree", "0", "--link", "x"],
    ["verify", OCTA, "--theorem", "nope"],
    ["verify", OCTA, "--samples", "0"],
    ["verify", OCTA, "--tolerance", "-1"],
    ["generate", "--family", "complete", "--n", "2"],
    ["generate", "--family", "complete_multipartite", "--sizes", "2,a"],
    ["generate", "--family", "random_pure", "--N", "6", "--n", "2", "--p", "2"],
])
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as info:
        sys.exit(cli.main(argv))
    assert info.value.code == 1


@pytest.mark.parametrize("name", ["bad_weight.json", "malformed.json", "missing.json"])
def test_invalid_input_exit_2(capsys, name):
    for cmd in (["analyze"], ["verify"], ["spectrum", "--degree", "0"]):
        code, _, err = run(capsys, cmd[0], str(FIXTURES / name), *cmd[1:])
        assert code == 2 and "invalid input" in err


def test_hypothesis_not_met_exit_3(capsys):
    code, out, _ = run(capsys, "verify", str(FIXTURES / "bowtie.json"), "--format", "json")
    assert code == 3
    data = json.loads(out)
    assert data["status"] == "hypothesis_not_met"
    assert not any(r["status"] == "fail" for r in data["reports"])
    code, _, _ = run(capsys, "verify", str(FIXTURES / "k4_complete.json"), "--theorem", "partite_top")
    assert code == 3


def test_rejected_generation_exit_3(capsys):
    code, _, err = run(capsys, "generate", "--family", "random_pure", "--N", "6", "--n", "2", "--p", "1e-9")
    assert code == 3 and "rejected" in err


def test_bound_violation_exit_4(capsys, monkeypatch):
    def broken_battery(*args, **kwargs):
        rep = VerificationReport("injected")
        rep.add("value below bound", 0.5, lower=1.0)
        unmet = VerificationReport("other").unmet("not applicable")
        return [unmet, rep]

    monkeypatch.setattr(cli, "run_battery", broken_battery)
    code, out, _ = run(capsys, "verify", OCTA)
    assert code == 4
    assert "overall: fail" in out and "FAIL injected" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hdxspec", "spectrum", OCTA, "--degree", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "{0, 1, 1, 1, 1.5, 1.5}" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "hdxspec", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "hdxspec" in proc.stdout


def test_text_and_json_encode_identical_numbers(capsys):
    _, text, _ = run(capsys, "spectrum", OCTA, "--degree", "1", "--laplacian", "full")
    _, js, _ = run(capsys, "spectrum", OCTA, "--degree", "1", "--laplacian", "full", "--format", "json")
    line = next(l for l in text.splitlines() if l.startswith("eigenvalues:"))
    text_vals = [float(x) for x in line.split(":", 1)[1].strip(" {}").split(",")]
    assert text_vals == json.loads(js)["eigenvalues"]
