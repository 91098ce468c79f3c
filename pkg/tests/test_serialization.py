import json
from pathlib import Path

import jsonschema
import numpy as np
import pytest
from hypothesis import given

from seqeffect.entropy import DensityMatrix
from seqeffect.instances import quantum_instance
from seqeffect.serialization import (
    REPORT_SCHEMA,
    Problem,
    ProblemError,
    build_report,
    config_hash,
    decode_matrix,
    dump_problem,
    encode_matrix,
    load_problem,
    parse_problem,
    to_jsonable,
    write_json,
)
from seqeffect.verify import gen_random_density, gen_random_partition

from conftest import seeds

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def quantum_doc(**overrides):
    doc = {
        "instance": "quantum",
        "size": 2,
        "partitions": {"A": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]},
    }
    doc.update(overrides)
    return doc


class TestMatrices:
    def test_complex_pairs(self):
        m = np.array([[1, 2 - 1j], [2 + 1j, 3]])
        assert encode_matrix(m)[0][1] == [2.0, -1.0]
        np.testing.assert_array_equal(decode_matrix(encode_matrix(m)), m)

    def test_plain_reals_accepted(self):
        np.testing.assert_array_equal(decode_matrix([[1, 0], [0, 1]]), np.eye(2))

    def test_not_square(self):
        with pytest.raises(ProblemError):
            decode_matrix([[1, 0]])

    @given(seeds)
    def test_roundtrip_through_text_is_exact(self, seed):
        rho = gen_random_density(4, np.random.default_rng(seed)).rho
        back = decode_matrix(json.loads(json.dumps(encode_matrix(rho))))
        assert back.tobytes() == rho.tobytes()


class TestProblems:
    @pytest.mark.parametrize("name", ["example_2_3", "boolean_blocks", "fuzzy_grades"])
    def test_shipped_files_load(self, name):
        p = load_problem(PROBLEMS / f"{name}.json")
        assert p.partitions

    @pytest.mark.parametrize("name", ["example_2_3", "boolean_blocks", "fuzzy_grades"])
    def test_shipped_files_roundtrip(self, name):
        p = load_problem(PROBLEMS / f"{name}.json")
        doc = dump_problem(p)
        q = parse_problem(json.loads(json.dumps(doc)))
        assert dump_problem(q) == doc

    def test_default_state_is_maximally_mixed(self):
        p = parse_problem(quantum_doc())
        np.testing.assert_array_equal(p.state.rho, np.eye(2) / 2)

    @given(seeds)
    def test_random_quantum_roundtrip(self, seed):
        rng = np.random.default_rng(seed)
        Q = quantum_instance(3)
        s = gen_random_density(3, rng)
        A = gen_random_partition(Q, 3, rng)
        doc = dump_problem(Problem(Q, s, {"A": A}))
        back = parse_problem(json.loads(json.dumps(doc)))
        assert back.state.rho.tobytes() == s.rho.tobytes()
        for x, y in zip(back.partition("A"), A):
            assert x.matrix.tobytes() == y.matrix.tobytes()

    @pytest.mark.parametrize(
        "doc,path",
        [
            (quantum_doc(partitions={"A": [[[1, 0], [0, 0]], [[0, 1], [0, 1]]]}), "partitions.A[1]"),
            (quantum_doc(state={"density": [[1.5, 0], [0, -0.5]]}), "state.density"),
            (quantum_doc(state={"weights": [1]}), "state"),
            (quantum_doc(partitions={"A": [[[1, 0], [0, 0]]]}), "partitions.A"),
            (quantum_doc(partitions={"A": [[[1, 0, 0], [0, 0, 0], [0, 0, 1]]]}), "partitions.A[0]"),
            (quantum_doc(size=0), "size"),
            (quantum_doc(options={"log_base": 1}), "options.log_base"),
            (quantum_doc(extra=1), ""),
            ({"instance": "boolean", "size": 3, "partitions": {"B": [[0, 1], [1, 2]]}}, "partitions.B[1]"),
            ({"instance": "boolean", "size": 3, "partitions": {"B": [[0, 0, 1, 2]]}}, "partitions.B[0]"),
            ({"instance": "boolean", "size": 3, "partitions": {"B": [[0, 5]]}}, "partitions.B[0]"),
            ({"instance": "fuzzy", "size": 1, "partitions": {"F": [[0.6], [0.6]]}}, "partitions.F[1]"),
            ({"instance": "fuzzy", "size": 2, "state": {"weights": [0.5, 0.6]}, "partitions": {}}, "state.weights"),
        ],
    )
    def test_path_addressed_errors(self, doc, path):
        with pytest.raises(ProblemError) as info:
            parse_problem(doc)
        assert info.value.path == path
        if path:
            assert str(info.value).startswith(path + ":")

    def test_not_hermitian_message(self):
        doc = quantum_doc(partitions={"A": [[[1, 0], [0, 0]], [[0, 1], [0, 1]]]})
        with pytest.raises(ProblemError, match=r"^partitions\.A\[1\]: not Hermitian$"):
            parse_problem(doc)

    def test_unknown_partition(self):
        p = parse_problem(quantum_doc())
        with pytest.raises(ProblemError, match="partitions.Z"):
            p.partition("Z")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ProblemError):
            load_problem(tmp_path / "nope.json")

    def test_bad_json(self, tmp_path):
        f = tmp_path / "bad.json"
        f.write_text("{")
        with pytest.raises(ProblemError, match="invalid JSON"):
            load_problem(f)


class TestReports:
    def test_schema_and_field_order(self):
        r = build_report({"name": "x", "a": 1}, {"v": np.float64(0.5)}, {"ok": np.bool_(True)})
        jsonschema.validate(r, REPORT_SCHEMA)
        assert list(r) == ["tool", "version", "command", "results", "verdicts", "config_hash"]

    def test_timing_does_not_touch_hash(self):
        a = build_report({"name": "x"}, {}, {})
        b = build_report({"name": "x"}, {}, {}, timing={"runtime_s": 1.25})
        assert a["config_hash"] == b["config_hash"] == config_hash({"name": "x"})
        assert list(b)[-1] == "timing"

    def test_hash_ignores_key_order(self):
        assert config_hash({"a": 1, "b": 2}) == config_hash({"b": 2, "a": 1})

    def test_jsonable(self):
        out = to_jsonable({"m": np.eye(2, dtype=complex), "x": np.int64(3), "inf": float("inf"), "z": 1j})
        assert out["m"][0][0] == [1.0, 0.0]
        assert out["x"] == 3 and out["inf"] == "inf" and out["z"] == [0.0, 1.0]
        json.dumps(out)

    def test_write_read_roundtrip(self, tmp_path):
        r = build_report({"name": "x"}, {"rho": DensityMatrix(np.eye(2) / 2).rho, "v": 0.1 + 0.2}, {"ok": True})
        write_json(tmp_path / "r.json", r)
        text = (tmp_path / "r.json").read_text()
        assert text.endswith("}\n")
        back = json.loads(text)
        assert back == r
        jsonschema.validate(back, REPORT_SCHEMA)
