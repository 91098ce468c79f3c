import json
from pathlib import Path

import jsonschema
import numpy as np
import pytest

from seqeffect import verify
from seqeffect.cli import main
from seqeffect.serialization import REPORT_SCHEMA, load_problem

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"
EX23 = str(PROBLEMS / "example_2_3.json")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def report(path):
    data = json.loads(Path(path).read_text())
    jsonschema.validate(data, REPORT_SCHEMA)
    return data


class TestEntropy:
    def test_example_pair(self, capsys, tmp_path):
        code, out, _ = run(capsys, "entropy", EX23, "A", "B", "--json", tmp_path / "r.json")
        assert code == 0
        r = report(tmp_path / "r.json")["results"]
        assert r["H(A)"] == pytest.approx(1.0, abs=1e-12)
        assert r["H(AoB)"] == pytest.approx(2.0, abs=1e-12)
        assert r["H(B|A)"] == pytest.approx(1.0, abs=1e-12)
        assert abs(r["r1"]) <= 1e-12
        assert "H(AoB)" in out

    def test_trivial_partition(self, capsys, tmp_path):
        code, _, _ = run(capsys, "entropy", EX23, "I", "--json", tmp_path / "r.json")
        assert code == 0
        assert report(tmp_path / "r.json")["results"]["H(I)"] == pytest.approx(0.0, abs=1e-12)

    def test_base_flag(self, capsys, tmp_path):
        run(capsys, "entropy", PROBLEMS / "boolean_blocks.json", "atoms", "--base", 4, "--json", tmp_path / "r.json")
        assert report(tmp_path / "r.json")["results"]["H(atoms)"] == pytest.approx(1.0, abs=1e-12)

    def test_non_psd_density(self, capsys, tmp_path):
        doc = json.loads(Path(EX23).read_text())
        doc["state"] = {"density": [[[1.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]]}
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(doc))
        code, _, err = run(capsys, "entropy", bad, "A")
        assert code == 2
        assert "state.density" in err

    def test_non_hermitian_element(self, capsys, tmp_path):
        doc = json.loads(Path(EX23).read_text())
        doc["partitions"]["A"][1][0][1] = [0.3, 0]
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(doc))
        code, _, err = run(capsys, "entropy", bad, "A")
        assert code == 2
        assert "partitions.A[1]: not Hermitian" in err

    def test_unknown_partition(self, capsys):
        code, _, err = run(capsys, "entropy", EX23, "nope")
        assert code == 2 and "partitions.nope" in err

    def test_too_many_names(self, capsys):
        assert run(capsys, "entropy", EX23, "A", "B", "I")[0] == 2

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "entropy", tmp_path / "missing.json", "A")[0] == 2


class TestRefine:
    def test_example(self, capsys, tmp_path):
        out = tmp_path / "out.json"
        code, text, _ = run(capsys, "refine", EX23, "A", "B", "--out", out)
        assert code == 0 and "AoB" in text
        p = load_problem(out)
        q1 = np.array([[0.5, 0.5], [0.5, 0.5]])
        q2 = np.array([[0.5, -0.5], [-0.5, 0.5]])
        for x, h in zip(p.partition("AoB"), [q1, q1, q2, q2]):
            np.testing.assert_allclose(x.matrix, 0.5 * h, atol=1e-12)

    def test_unit_on_left_copies_right(self, capsys, tmp_path):
        out = tmp_path / "out.json"
        assert run(capsys, "refine", EX23, "I", "B", "--out", out, "--name", "C")[0] == 0
        p = load_problem(out)
        for x, y in zip(p.partition("C"), p.partition("B")):
            np.testing.assert_allclose(x.matrix, y.matrix, atol=1e-12)

    def test_boolean_blocks(self, capsys, tmp_path):
        out = tmp_path / "out.json"
        rep = tmp_path / "r.json"
        assert run(capsys, "refine", PROBLEMS / "boolean_blocks.json", "A", "B", "--out", out, "--json", rep)[0] == 0
        assert report(rep)["results"]["elements"] == [[0], [1], [2], [3]]


class TestCheckTheorem:
    def test_small_quantum(self, capsys, tmp_path):
        code, out, _ = run(capsys, "check-theorem", "--dim", 2, "--trials", 20, "--seed", 1, "--json", tmp_path / "r.json")
        assert code == 0
        r = report(tmp_path / "r.json")
        assert all(r["verdicts"].values())
        assert r["command"]["seed"] == 1 and "workers" not in r["command"]
        assert "timing" not in r

    def test_boolean_exact(self, capsys, tmp_path):
        run(capsys, "check-theorem", "--instance", "boolean", "--dim", 6, "--trials", 50, "--json", tmp_path / "r.json")
        assert abs(report(tmp_path / "r.json")["results"]["laws"]["r1"]["worst"]) <= 1e-12

    @pytest.mark.parametrize(
        "flags",
        [
            ["--trials", "0"],
            ["--sizes", "2,x"],
            ["--sizes", "2,2"],
            ["--tol", "0"],
            ["--workers", "0"],
            ["--seed", "-3"],
            ["--instance", "boolean", "--dim", "2", "--sizes", "3,2,2"],
        ],
    )
    def test_bad_flags(self, capsys, flags):
        try:
            code = main(["check-theorem", *flags])
        except SystemExit as exc:  # argparse rejects some flags itself
            code = exc.code
        assert code == 2

    def test_seed_from_environment(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("SEA_SEED", "123")
        run(capsys, "check-theorem", "--dim", 2, "--trials", 3, "--json", tmp_path / "a.json")
        assert report(tmp_path / "a.json")["command"]["seed"] == 123
        run(capsys, "check-theorem", "--dim", 2, "--trials", 3, "--seed", 123, "--json", tmp_path / "b.json")
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()

    def test_bad_environment_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("SEA_SEED", "abc")
        assert run(capsys, "check-theorem", "--dim", 2, "--trials", 3)[0] == 2

    def test_timing_flag(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(capsys, "check-theorem", "--dim", 2, "--trials", 3, "--json", a)
        run(capsys, "check-theorem", "--dim", 2, "--trials", 3, "--timing", "--json", b)
        ra, rb = report(a), report(b)
        assert "runtime_s" in rb["timing"]
        assert ra["config_hash"] == rb["config_hash"]
        assert ra["results"] == rb["results"]

    def test_violation_exits_one(self, capsys, monkeypatch):
        # force a failing law to check the exit-code contract
        real = verify.theorem_residuals

        def broken(*args):
            r = real(*args)
            return type(r)(1.0, *r.as_tuple()[1:])

        monkeypatch.setattr(verify, "theorem_residuals", broken)
        code, _, err = run(capsys, "check-theorem", "--dim", 2, "--trials", 2, "--seed", 4)
        assert code == 1
        assert "seed=4 trial=0" in err


class TestOtherCommands:
    def test_example_2_3(self, capsys, tmp_path):
        code, out, _ = run(capsys, "example-2-3", "--json", tmp_path / "r.json")
        assert code == 0
        r = report(tmp_path / "r.json")
        assert len(r["verdicts"]) == 7 and all(r["verdicts"].values())
        assert "FAIL" not in out

    def test_axioms(self, capsys, tmp_path):
        for kind in ("boolean", "fuzzy", "quantum"):
            code, _, _ = run(capsys, "axioms", "--instance", kind, "--trials", 30, "--json", tmp_path / "r.json")
            assert code == 0
            assert report(tmp_path / "r.json")["results"]["all_passed"]

    def test_axioms_bad_dim(self, capsys):
        assert run(capsys, "axioms", "--dim", 0)[0] == 2

    def test_logsum(self, capsys, tmp_path):
        code, _, _ = run(capsys, "logsum", "--trials", 1000, "--seed", 1, "--json", tmp_path / "r.json")
        assert code == 0
        assert report(tmp_path / "r.json")["results"]["min_residual"] >= -1e-12

    def test_logsum_zero_trials(self, capsys):
        assert run(capsys, "logsum", "--trials", 0)[0] == 2

    def test_no_subcommand(self, capsys):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2
