"""JSON problem and report files.

Complex numbers are written as ``[re, im]`` pairs and matrices as row-major
nested lists.  Floats go through ``repr``, which round-trips exactly.

Problem file::

    {
      "instance": "quantum",            # or "boolean", "fuzzy"
      "size": 2,                        # ground size or Hilbert dimension
      "state": {"density": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]},
      "partitions": {"A": [<element>, ...], ...},
      "options": {"log_base": 2, "tol": 1e-9}
    }

Boolean elements are lists of member indices, fuzzy elements lists of
memberships, quantum elements matrices.  Boolean and fuzzy states are
``{"weights": [...]}``; an omitted state means the uniform one (``I/d`` for
quantum).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import jsonschema
import numpy as np

from . import __version__, spectral
from .core import Partition, SeaContract, SeaError, UndefinedSum
from .entropy import AtomWeights, DensityMatrix, EntropyOptions, PointWeights, State
from .instances import BooleanElement, BooleanSEA, FuzzyElement, FuzzySEA, QuantumEffect, instance_for

__all__ = [
    "ProblemError",
    "Problem",
    "PROBLEM_SCHEMA",
    "REPORT_SCHEMA",
    "encode_matrix",
    "decode_matrix",
    "encode_element",
    "decode_element",
    "encode_state",
    "decode_state",
    "parse_problem",
    "load_problem",
    "dump_problem",
    "write_json",
    "to_jsonable",
    "build_report",
    "config_hash",
    "file_digest",
]

_NUMBER = {"type": "number"}
_COMPLEX = {"oneOf": [_NUMBER, {"type": "array", "items": _NUMBER, "minItems": 2, "maxItems": 2}]}
_MATRIX = {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": _COMPLEX}}
_ELEMENT = {"type": "array"}

PROBLEM_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["instance", "size", "partitions"],
    "additionalProperties": False,
    "properties": {
        "instance": {"enum": ["boolean", "fuzzy", "quantum"]},
        "size": {"type": "integer", "minimum": 1},
        "state": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "weights": {"type": "array", "items": _NUMBER, "minItems": 1},
                "density": _MATRIX,
            },
        },
        "partitions": {
            "type": "object",
            "additionalProperties": {"type": "array", "minItems": 1, "items": _ELEMENT},
        },
        "options": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "log_base": {"type": "number", "exclusiveMinimum": 1},
                "tol": {"type": "number", "exclusiveMinimum": 0},
            },
        },
    },
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["tool", "version", "command", "results", "verdicts", "config_hash"],
    "properties": {
        "tool": {"const": "seqeffect"},
        "version": {"type": "string"},
        "command": {"type": "object", "required": ["name"]},
        "results": {"type": "object"},
        "verdicts": {"type": "object", "additionalProperties": {"type": "boolean"}},
        "config_hash": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
        "timing": {"type": "object"},
    },
}


class ProblemError(ValueError):
    """Invalid problem file; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


# --------------------------------------------------------------------------
# values


def encode_matrix(m) -> list:
    arr = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in arr]


def decode_matrix(data, path: str = "") -> np.ndarray:
    try:
        rows = [[complex(*z) if isinstance(z, list) else complex(z) for z in row] for row in data]
        arr = np.array(rows, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise ProblemError(path, f"not a matrix ({exc})") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ProblemError(path, "matrix must be square")
    if not np.all(np.isfinite(arr)):
        raise ProblemError(path, "matrix has non-finite entries")
    return arr


def encode_element(el) -> list:
    if isinstance(el, BooleanElement):
        return sorted(el.members)
    if isinstance(el, FuzzyElement):
        return [float(x) for x in el.values]
    if isinstance(el, QuantumEffect):
        return encode_matrix(el.matrix)
    raise TypeError(f"cannot encode {el!r}")


def decode_element(sea: SeaContract, data, path: str = ""):
    if isinstance(sea, BooleanSEA):
        if not all(isinstance(i, int) and not isinstance(i, bool) for i in data):
            raise ProblemError(path, "Boolean elements are lists of atom indices")
        if len(set(data)) != len(data):
            raise ProblemError(path, "repeated atom index")
        try:
            return sea.element(data)
        except ValueError as exc:
            raise ProblemError(path, str(exc)) from None
    if isinstance(sea, FuzzySEA):
        try:
            return sea.element(data)
        except (TypeError, ValueError) as exc:
            raise ProblemError(path, str(exc)) from None
    arr = decode_matrix(data, path)
    if arr.shape[0] != sea.d:
        raise ProblemError(path, f"expected a {sea.d}x{sea.d} matrix")
    if not spectral.is_hermitian(arr):
        raise ProblemError(path, "not Hermitian")
    try:
        return sea.element(arr)
    except ValueError as exc:
        raise ProblemError(path, str(exc)) from None


def encode_state(s: State) -> dict:
    if isinstance(s, DensityMatrix):
        return {"density": encode_matrix(s.rho)}
    return {"weights": [float(x) for x in s.weights]}


def decode_state(sea: SeaContract, data: Optional[dict], path: str = "state") -> State:
    n = sea.n
    if data is None:
        if isinstance(sea, BooleanSEA):
            return AtomWeights(np.full(n, 1 / n))
        if isinstance(sea, FuzzySEA):
            return PointWeights(np.full(n, 1 / n))
        return DensityMatrix(np.eye(n) / n)
    if sea.kind == "quantum":
        if "density" not in data:
            raise ProblemError(path, "quantum states need a 'density' matrix")
        arr = decode_matrix(data["density"], f"{path}.density")
        if arr.shape[0] != n:
            raise ProblemError(f"{path}.density", f"expected a {n}x{n} matrix")
        try:
            return DensityMatrix(arr)
        except ValueError as exc:
            raise ProblemError(f"{path}.density", str(exc)) from None
    if "weights" not in data:
        raise ProblemError(path, f"{sea.kind} states need 'weights'")
    cls = AtomWeights if isinstance(sea, BooleanSEA) else PointWeights
    try:
        return cls(data["weights"], n)
    except ValueError as exc:
        raise ProblemError(f"{path}.weights", str(exc)) from None


# --------------------------------------------------------------------------
# problem files


@dataclass
class Problem:
    sea: SeaContract
    state: State
    partitions: dict = field(default_factory=dict)
    options: EntropyOptions = field(default_factory=EntropyOptions)
    tol: float = 1e-9

    def partition(self, name: str) -> Partition:
        try:
            return self.partitions[name]
        except KeyError:
            raise ProblemError(f"partitions.{name}", "no such partition") from None


def parse_problem(data: Any) -> Problem:
    """Validate a decoded JSON document and build the in-memory problem."""
    try:
        jsonschema.validate(data, PROBLEM_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = ".".join(str(p) for p in exc.absolute_path)
        raise ProblemError(where, exc.message) from None
    try:
        sea = instance_for(data["instance"], data["size"])
    except ValueError as exc:
        raise ProblemError("size", str(exc)) from None
    state = decode_state(sea, data.get("state"))
    opts = data.get("options", {})
    partitions = {}
    for name, elems in data["partitions"].items():
        path = f"partitions.{name}"
        xs = [decode_element(sea, e, f"{path}[{i}]") for i, e in enumerate(elems)]
        try:
            partitions[name] = sea.validate_partition(xs)
        except UndefinedSum as exc:
            raise ProblemError(f"{path}[{exc.index}]", str(exc)) from None
        except SeaError as exc:
            raise ProblemError(path, str(exc)) from None
    return Problem(
        sea,
        state,
        partitions,
        EntropyOptions(float(opts.get("log_base", 2.0))),
        float(opts.get("tol", 1e-9)),
    )


def load_problem(path) -> Problem:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ProblemError("", f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError("", f"invalid JSON: {exc}") from None
    return parse_problem(data)


def dump_problem(problem: Problem) -> dict:
    sea = problem.sea
    return {
        "instance": sea.kind,
        "size": sea.n,
        "state": encode_state(problem.state),
        "partitions": {
            name: [encode_element(e) for e in part] for name, part in problem.partitions.items()
        },
        "options": {"log_base": problem.options.log_base, "tol": problem.tol},
    }


# --------------------------------------------------------------------------
# reports


def to_jsonable(obj):
    """Recursively convert numpy values and matrices to plain JSON types."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj) and obj.ndim == 2:
            return encode_matrix(obj)
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if x != x:
            return "nan"
        if x in (float("inf"), float("-inf")):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def config_hash(command: dict) -> str:
    return hashlib.sha256(_canonical(command).encode()).hexdigest()


def build_report(command: dict, results: dict, verdicts: dict, timing: Optional[dict] = None) -> dict:
    """Assemble a report with a fixed field order.

    ``timing`` is kept in its own field and does not enter the hash.
    """
    command = to_jsonable(command)
    report = {
        "tool": "seqeffect",
        "version": __version__,
        "command": command,
        "results": to_jsonable(results),
        "verdicts": {k: bool(v) for k, v in verdicts.items()},
        "config_hash": config_hash(command),
    }
    if timing is not None:
        report["timing"] = to_jsonable(timing)
    return report


def write_json(path, data) -> None:
    Path(path).write_text(json.dumps(data, indent=2) + "\n")


def file_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
