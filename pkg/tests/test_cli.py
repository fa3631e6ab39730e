"""Command-line interface: golden outputs, round trips, exit codes."""

from __future__ import annotations

import json

import pytest

from supervariety.budget import ENV_VAR
from supervariety.cli import main


@pytest.fixture()
def run(capsys):
    def invoke(*argv):
        try:
            code = main(list(argv))
        except SystemExit as exc:  # argparse errors
            code = exc.code
        out = capsys.readouterr().out
        return code, out

    return invoke


@pytest.fixture()
def gl11_file(tmp_path, run):
    path = tmp_path / "gl11.json"
    nat = tmp_path / "nat11.json"
    code, _ = run(
        "make-gl", "--m", "1", "--n", "1", "--p", "3",
        "--out", str(path), "--natural-out", str(nat),
    )
    assert code == 0
    return path, nat


@pytest.fixture()
def clifford_file(tmp_path):
    path = tmp_path / "clifford.json"
    path.write_text(
        json.dumps(
            {
                "p": 3,
                "basis": [{"name": "z", "parity": 0}, {"name": "y", "parity": 1}],
                "brackets": {"1,1": {"z": 1}},
            }
        )
    )
    return path


class TestGolden:
    def test_nullcone_points_payload(self, run, gl11_file):
        code, out = run("nullcone", str(gl11_file[0]), "--points")
        assert code == 0
        doc = json.loads(out)
        assert doc["points"] == [[0, 0], [0, 1], [0, 2], [1, 0], [2, 0]]
        assert doc["schema_version"] == "1"

    def test_clifford_cohomology_dims(self, run, clifford_file):
        code, out = run("cohomology", str(clifford_file), "--max-degree", "6")
        assert code == 0
        assert json.loads(out)["dims"] == [1, 1, 0, 0, 0, 0]

    def test_free_test_figure_point(self, run, tmp_path):
        alg = tmp_path / "gl22.json"
        nat = tmp_path / "nat22.json"
        code, _ = run(
            "make-gl", "--m", "2", "--n", "2", "--p", "3",
            "--out", str(alg), "--natural-out", str(nat),
        )
        assert code == 0
        code, out = run(
            "free-test", str(alg), str(nat), "--point", "1,0,0,0,0,0,0,0"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["is_free"] is False
        code, out = run(
            "free-test", str(alg), str(nat), "--point", "1,0,0,0,0,0,0,1"
        )
        assert json.loads(out)["is_free"] is True

    def test_byte_identical_reruns(self, run, gl11_file):
        _, first = run("nullcone", str(gl11_file[0]), "--points", "--ideal")
        _, second = run("nullcone", str(gl11_file[0]), "--points", "--ideal")
        assert first == second
        _, third = run("rank-variety", str(gl11_file[0]), str(gl11_file[1]))
        _, fourth = run("rank-variety", str(gl11_file[0]), str(gl11_file[1]))
        assert third == fourth

    def test_output_is_sorted_single_document(self, run, gl11_file):
        _, out = run("nullcone", str(gl11_file[0]), "--points")
        doc = json.loads(out)
        assert out == json.dumps(doc, indent=2, sort_keys=True) + "\n"


class TestRoundTrip:
    def test_make_gl_validates(self, run, gl11_file):
        code, out = run("validate", str(gl11_file[0]))
        assert code == 0
        assert json.loads(out)["valid"] is True

    def test_validate_with_module(self, run, gl11_file):
        code, out = run("validate", str(gl11_file[0]), "--module", str(gl11_file[1]))
        assert code == 0 and json.loads(out)["valid"] is True

    def test_make_gl_stdout_equals_file(self, run, tmp_path):
        path = tmp_path / "g.json"
        _, out = run("make-gl", "--m", "1", "--n", "2", "--out", str(path))
        assert json.loads(out) == json.loads(path.read_text())


class TestCommands:
    def test_rank_variety(self, run, gl11_file):
        code, out = run("rank-variety", str(gl11_file[0]), str(gl11_file[1]))
        assert code == 0
        assert json.loads(out)["points"] == [[0, 0]]

    def test_rank_variety_from_point_file(self, run, gl11_file, tmp_path):
        pf = tmp_path / "pts.txt"
        pf.write_text("0,0\n1,0\n")
        code, out = run(
            "rank-variety", str(gl11_file[0]), str(gl11_file[1]), "--points-file", str(pf)
        )
        assert code == 0
        assert json.loads(out)["points"] == [[0, 0]]

    def test_phi_probe_trivial_module(self, run, gl11_file):
        code, out = run(
            "phi-probe", str(gl11_file[0]), "--poly", '{"1,0": 1}', "--lmax", "2"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["found"] is False and doc["checked_degrees"] == [3, 6]

    def test_phi_probe_natural_module(self, run, gl11_file):
        code, out = run(
            "phi-probe", str(gl11_file[0]), "--module", str(gl11_file[1]),
            "--poly", '{"1,0": 1}', "--lmax", "4",
        )
        assert code == 0
        assert json.loads(out)["found"] is True

    def test_support_probe_verdicts(self, run, gl11_file):
        code, out = run(
            "support-probe", str(gl11_file[0]), str(gl11_file[1]),
            "--window-start", "8", "--window-len", "4",
        )
        assert code == 0
        assert "finite projective dimension" in json.loads(out)["verdict"]

    def test_tensor_check(self, run, gl11_file):
        code, out = run("tensor-check", str(gl11_file[0]), str(gl11_file[1]), str(gl11_file[1]))
        assert code == 0
        assert json.loads(out)["verdict"] == "pass"

    def test_global_dim_probe(self, run, clifford_file):
        code, out = run("global-dim-probe", str(clifford_file))
        assert code == 0
        assert json.loads(out)["verdict"] == "finite global dimension expected"

    def test_orbit_rep(self, run):
        code, out = run("orbit-rep", "--m", "2", "--n", "2", "--r", "1", "--s", "1")
        assert code == 0
        assert json.loads(out)["point"] == [1, 0, 0, 0, 0, 0, 0, 1]

    def test_e1_check(self, run, gl11_file, tmp_path):
        gens = tmp_path / "gens.json"
        gens.write_text("[[0, 1]]")
        code, out = run(
            "e1-check", str(gl11_file[0]), str(gl11_file[1]), str(gl11_file[1]),
            "--gens", str(gens), "--gens2", str(gens), "--max-degree", "4",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["ok"] is True and len(doc["rows"]) == 4

    def test_assoc_graded(self, run, gl11_file, tmp_path):
        gens = tmp_path / "gens.json"
        gens.write_text("[[0, 1]]")
        code, out = run(
            "assoc-graded", str(gl11_file[0]), str(gl11_file[1]), "--gens", str(gens)
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["layer_dims"] == [1, 2]
        assert sorted(doc["module"]["zdegrees"]) == [0, 1]
        assert doc["algebra"]["zdegrees"] == [2, 2, 1, 1]

    def test_cohomology_with_modules(self, run, gl11_file):
        code, out = run(
            "cohomology", str(gl11_file[0]), "--max-degree", "4",
            "--module", str(gl11_file[1]),
        )
        assert code == 0
        assert json.loads(out)["dims"] == [1, 2, 1, 0]


class TestExitCodes:
    def test_missing_file_is_input_error(self, run):
        code, out = run("validate", "no-such-file.json")
        assert code == 2
        assert json.loads(out)["error"] == "input"

    def test_invalid_algebra_is_verdict_failure(self, run, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(
            json.dumps(
                {
                    "p": 3,
                    "basis": [{"name": "y1", "parity": 1}, {"name": "y2", "parity": 1}],
                    "brackets": {"0,1": {"y1": 1}},
                }
            )
        )
        code, out = run("validate", str(path))
        assert code == 1
        assert json.loads(out)["valid"] is False

    def test_budget_exceeded(self, run, tmp_path, monkeypatch):
        monkeypatch.setenv(ENV_VAR, "10")
        alg = tmp_path / "gl22.json"
        code, _ = run("make-gl", "--m", "2", "--n", "2", "--out", str(alg))
        assert code == 0
        code, out = run("nullcone", str(alg), "--points")
        assert code == 3
        assert json.loads(out)["error"] == "budget"

    def test_unknown_flag_rejected(self, run, gl11_file):
        code, _ = run("nullcone", str(gl11_file[0]), "--points", "--bogus")
        assert code == 2

    def test_nonpositive_flag_rejected(self, run, gl11_file):
        code, _ = run("cohomology", str(gl11_file[0]), "--max-degree", "0")
        assert code == 2

    def test_bad_point_is_input_error(self, run, gl11_file):
        code, out = run("free-test", str(gl11_file[0]), str(gl11_file[1]), "--point", "1,x")
        assert code == 2

    def test_non_nullcone_point_is_input_error(self, run, gl11_file):
        code, out = run("free-test", str(gl11_file[0]), str(gl11_file[1]), "--point", "1,1")
        assert code == 2
        assert "nullcone" in json.loads(out)["message"]
