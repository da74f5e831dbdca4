"""Instance files and report documents.

One human-readable JSON format serves both directions: instances going
in (Gram matrix, one or two operators, intervals, optional expected
counts) and reports coming out.  Complex numbers are two-element
``[re, im]`` arrays, matrices are row-major nested arrays, and infinite
interval endpoints are the strings ``"-inf"`` / ``"+inf"``.

Documents are emitted with sorted keys and 17-significant-digit floats
so that equal data produces byte-identical text on every platform;
``parse_instance`` inverts ``dumps_instance`` exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import IllPosedIntervalError, InstanceFormatError
from .indefinite import Inertia
from .linalg import Tolerance, as_complex_matrix
from .spectral import Interval, Spectrum
from .theorem import GapReport, WitnessReport

__all__ = [
    "SCHEMA_VERSION",
    "EXPECTED_KEYS",
    "InstanceRecord",
    "parse_instance",
    "dumps_instance",
    "stable_dumps",
    "format_float",
    "complex_node",
    "matrix_node",
    "interval_node",
    "tolerance_node",
    "inertia_node",
    "spectrum_node",
    "gap_report_node",
    "witness_report_node",
]

SCHEMA_VERSION = "1"

#: integer fields an instance may pin for verification
EXPECTED_KEYS = ("n", "kappa", "eig1", "eig2", "sig1", "sig2", "slack")

_TOP_LEVEL_KEYS = frozenset(
    {"schema_version", "name", "gram", "a1", "a2", "intervals", "expected"}
)


@dataclass(frozen=True)
class InstanceRecord:
    """Parsed contents of an instance file.

    ``a2`` is absent for single-operator (analyze-only) files;
    ``expected`` optionally pins integer report fields for verify.
    """

    gram: np.ndarray
    a1: np.ndarray
    a2: np.ndarray | None
    intervals: tuple[Interval, ...]
    name: str | None = None
    expected: dict | None = None


# ---------------------------------------------------------------------------
# stable writer


def format_float(x: float) -> str:
    """17-significant-digit decimal form; round-trips doubles exactly.

    Negative zero prints as ``0``: JSON readers drop the sign bit
    anyway, and equal values must yield equal text.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite float {x!r} cannot appear in a document")
    if x == 0.0:
        return "0"
    return "%.17g" % x


def _scalar(node) -> str:
    if isinstance(node, bool):
        return "true" if node else "false"
    if node is None:
        return "null"
    if isinstance(node, str):
        return json.dumps(node)
    if isinstance(node, int):
        return str(node)
    if isinstance(node, float):
        return format_float(node)
    raise TypeError(f"cannot serialize {type(node).__name__}")


def _inline_list(node) -> bool:
    """Lists of scalars, or of lists of scalars, stay on one line."""
    for item in node:
        if isinstance(item, dict):
            return False
        if isinstance(item, (list, tuple)):
            if any(isinstance(x, (dict, list, tuple)) for x in item):
                return False
    return True


def _write(node, indent: int, out: list) -> None:
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(node, dict):
        if not node:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(node)
        for i, key in enumerate(keys):
            if not isinstance(key, str):
                raise TypeError(f"document keys must be strings, got {key!r}")
            out.append(f"{inner}{json.dumps(key)}: ")
            _write(node[key], indent + 2, out)
            out.append(",\n" if i + 1 < len(keys) else "\n")
        out.append(pad + "}")
    elif isinstance(node, (list, tuple)):
        if not node:
            out.append("[]")
            return
        if _inline_list(node):
            parts = []
            for item in node:
                if isinstance(item, (list, tuple)):
                    parts.append("[" + ", ".join(_scalar(x) for x in item) + "]")
                else:
                    parts.append(_scalar(item))
            out.append("[" + ", ".join(parts) + "]")
            return
        out.append("[\n")
        for i, item in enumerate(node):
            out.append(inner)
            _write(item, indent + 2, out)
            out.append(",\n" if i + 1 < len(node) else "\n")
        out.append(pad + "]")
    else:
        out.append(_scalar(node))


def stable_dumps(node) -> str:
    """Deterministic JSON text: sorted keys, fixed float formatting."""
    out: list = []
    _write(node, 0, out)
    out.append("\n")
    return "".join(out)


# ---------------------------------------------------------------------------
# node builders (python objects -> JSON-ready trees)


def complex_node(z: complex) -> list:
    z = complex(z)
    return [z.real, z.imag]


def matrix_node(m: np.ndarray) -> list:
    return [[complex_node(z) for z in row] for row in np.asarray(m, dtype=complex)]


def interval_node(interval: Interval) -> dict:
    lower = interval.lower if math.isfinite(interval.lower) else "-inf"
    upper = interval.upper if math.isfinite(interval.upper) else "+inf"
    return {"lower": lower, "upper": upper}


def tolerance_node(tol: Tolerance) -> dict:
    return {"rel": tol.rel, "abs": tol.abs}


def inertia_node(inertia: Inertia) -> dict:
    return {"plus": inertia.plus, "minus": inertia.minus, "zero": inertia.zero}


def spectrum_node(sp: Spectrum) -> list:
    return [
        {"value": complex_node(e.value), "multiplicity": e.multiplicity}
        for e in sp.entries
    ]


def gap_report_node(report: GapReport) -> dict:
    return {
        "interval": interval_node(report.interval),
        "n": report.n,
        "kappa": report.kappa,
        "eig": {"a1": report.eig1, "a2": report.eig2},
        "sig": {"a1": report.sig1, "a2": report.sig2},
        "inertia": {
            "a1": inertia_node(report.inertia1),
            "a2": inertia_node(report.inertia2),
        },
        "eig_bound": report.n + 2 * report.kappa,
        "eig_bound_holds": report.eig_bound_holds,
        "sig_bound": report.n,
        "sig_bound_holds": report.sig_bound_holds,
        "equal_kappa_applicable": report.equal_kappa_applicable,
        "equal_kappa_bound_holds": report.equal_kappa_bound_holds,
        "positive_type": report.positive_type,
        "min_kappa_bound": report.min_kappa_bound,
        "min_kappa_bound_holds": report.min_kappa_bound_holds,
        "slack": report.slack,
    }


def witness_report_node(witness: WitnessReport) -> dict:
    return {
        "delta_prime": interval_node(witness.delta_prime),
        "dim_minus_out": {"a1": witness.dim_minus_out1, "a2": witness.dim_minus_out2},
        "dim_plus_in": {"a1": witness.dim_plus_in1, "a2": witness.dim_plus_in2},
        "dim_k": witness.dim_k,
        "q1_injective_on_k": witness.q1_injective_on_k,
        "lower_bound_ok": witness.lower_bound_ok,
        "upper_bound_ok": witness.upper_bound_ok,
        "eig_delta_prime": {
            "a1": witness.eig1_delta_prime,
            "a2": witness.eig2_delta_prime,
        },
        "eig_delta": {"a1": witness.eig1_delta, "a2": witness.eig2_delta},
        "chain_holds": witness.chain_holds,
        "sig_chain_holds": witness.sig_chain_holds,
    }


def instance_node(record: InstanceRecord) -> dict:
    node = {
        "schema_version": SCHEMA_VERSION,
        "gram": matrix_node(record.gram),
        "a1": matrix_node(record.a1),
        "intervals": [interval_node(iv) for iv in record.intervals],
    }
    if record.a2 is not None:
        node["a2"] = matrix_node(record.a2)
    if record.name is not None:
        node["name"] = record.name
    if record.expected is not None:
        node["expected"] = dict(record.expected)
    return node


def dumps_instance(record: InstanceRecord) -> str:
    return stable_dumps(instance_node(record))


# ---------------------------------------------------------------------------
# parsing


def _fail(path: str, message: str):
    raise InstanceFormatError(f"{path}: {message}")


def _reject_constant(token: str):
    raise InstanceFormatError(
        f"{token} is not valid here; encode infinite endpoints as the "
        'strings "-inf" / "+inf"'
    )


def _number(node, path: str) -> float:
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        _fail(path, f"expected a number, got {node!r}")
    return float(node)


def _complex(node, path: str) -> complex:
    if not isinstance(node, list) or len(node) != 2:
        _fail(path, f"expected a two-element [re, im] array, got {node!r}")
    return complex(_number(node[0], path + "[0]"), _number(node[1], path + "[1]"))


def _matrix(node, path: str, *, square: bool) -> np.ndarray:
    if not isinstance(node, list) or not node:
        _fail(path, "expected a non-empty array of rows")
    width = None
    rows = []
    for i, row in enumerate(node):
        if not isinstance(row, list) or not row:
            _fail(f"{path}[{i}]", "expected a non-empty array of [re, im] entries")
        if width is None:
            width = len(row)
        elif len(row) != width:
            _fail(f"{path}[{i}]", f"row has {len(row)} entries, expected {width}")
        rows.append([_complex(z, f"{path}[{i}][{j}]") for j, z in enumerate(row)])
    try:
        return as_complex_matrix(np.array(rows, dtype=complex), square=square)
    except Exception as exc:
        _fail(path, str(exc))


def _endpoint(node, path: str, infinite: str) -> float:
    if isinstance(node, str):
        if node != infinite:
            _fail(path, f'expected a number or "{infinite}", got {node!r}')
        return float(node.replace("+", ""))
    return _number(node, path)


def _interval(node, path: str) -> Interval:
    if not isinstance(node, dict):
        _fail(path, f"expected an object with lower/upper, got {node!r}")
    extra = set(node) - {"lower", "upper"}
    if extra:
        _fail(path, f"unknown interval keys {sorted(extra)}")
    if "lower" not in node or "upper" not in node:
        _fail(path, "interval needs both lower and upper")
    lower = _endpoint(node["lower"], path + ".lower", "-inf")
    upper = _endpoint(node["upper"], path + ".upper", "+inf")
    try:
        return Interval(lower, upper)
    except IllPosedIntervalError as exc:
        raise IllPosedIntervalError(f"{path}: {exc}") from exc


def _expected(node, path: str) -> dict:
    if not isinstance(node, dict):
        _fail(path, f"expected an object of integer fields, got {node!r}")
    out = {}
    for key in sorted(node):
        if key not in EXPECTED_KEYS:
            _fail(path, f"unknown expected field {key!r}; valid: {EXPECTED_KEYS}")
        value = node[key]
        if isinstance(value, bool) or not isinstance(value, int):
            _fail(f"{path}.{key}", f"expected an integer, got {value!r}")
        out[key] = value
    return out


def parse_instance(text: str) -> InstanceRecord:
    """Parse and structurally validate an instance document.

    Format violations raise :class:`InstanceFormatError` with the JSON
    path (or line/column for syntax errors); an interval with
    ``lower >= upper`` raises :class:`IllPosedIntervalError` so callers
    can report it as ill-posed rather than malformed.
    """
    try:
        top = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(
            f"line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(top, dict):
        _fail("$", f"expected a top-level object, got {type(top).__name__}")
    extra = set(top) - _TOP_LEVEL_KEYS
    if extra:
        _fail("$", f"unknown keys {sorted(extra)}")
    version = top.get("schema_version")
    if version != SCHEMA_VERSION:
        _fail(
            "$.schema_version",
            f"expected {SCHEMA_VERSION!r}, got {version!r}",
        )
    for required in ("gram", "a1", "intervals"):
        if required not in top:
            _fail("$", f"missing required key {required!r}")
    gram = _matrix(top["gram"], "$.gram", square=True)
    a1 = _matrix(top["a1"], "$.a1", square=True)
    if a1.shape != gram.shape:
        _fail("$.a1", f"shape {a1.shape} does not match gram shape {gram.shape}")
    a2 = None
    if "a2" in top:
        a2 = _matrix(top["a2"], "$.a2", square=True)
        if a2.shape != gram.shape:
            _fail("$.a2", f"shape {a2.shape} does not match gram shape {gram.shape}")
    if not isinstance(top["intervals"], list):
        _fail("$.intervals", "expected an array of intervals")
    intervals = tuple(
        _interval(node, f"$.intervals[{i}]") for i, node in enumerate(top["intervals"])
    )
    name = top.get("name")
    if name is not None and not isinstance(name, str):
        _fail("$.name", f"expected a string, got {name!r}")
    expected = _expected(top["expected"], "$.expected") if "expected" in top else None
    return InstanceRecord(
        gram=gram, a1=a1, a2=a2, intervals=intervals, name=name, expected=expected
    )
