"""JSON ingestion and canonical serialization.

Rationals cross the boundary as strings (``"p/q"`` or ``"p"``, lowest terms),
never as floats. Documents are emitted with a fixed key order, so identical
inputs produce identical bytes.
"""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .algebra import Algebra, make_algebra
from .errors import NotAssociative, ParseError, ValidationError

TOOL = "ncdiff"
REPORT_SCHEMA_ID = "ncdiff-report/1"

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


def parse_rational(value: Any, location: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"expected a rational, got {value!r}", location)
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str) or not _RATIONAL.fullmatch(value):
        raise ParseError(f"expected a rational string 'p/q' or 'p', got {value!r}", location)
    num, _, den = value.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in {value!r}", location)
    return Fraction(int(num), int(den) if den else 1)


def _vector(value: Any, n: int, location: str) -> list[Fraction]:
    if not isinstance(value, list):
        raise ParseError("expected a list", location)
    if len(value) != n:
        raise ParseError(f"expected {n} entries, got {len(value)}", location)
    return [parse_rational(x, f"{location}[{k}]") for k, x in enumerate(value)]


def _matrix(value: Any, n: int, location: str) -> list[list[Fraction]]:
    if not isinstance(value, list) or len(value) != n:
        raise ParseError(f"expected a list of {n} rows", location)
    return [_vector(row, n, f"{location}[{i}]") for i, row in enumerate(value)]


def algebra_from_document(doc: Any) -> Algebra:
    """Build an algebra from a parsed algebra document.

    Raises:
        ParseError: the document does not match the schema.
        ValidationError: the table is not associative or the unit law fails;
            ``location`` points into the document.
    """
    if not isinstance(doc, dict):
        raise ParseError("expected an object")
    for key in ("dim", "basis", "table", "unit"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    n = doc["dim"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParseError("dim must be a positive integer", "$.dim")
    labels = doc["basis"]
    if not isinstance(labels, list) or len(labels) != n or not all(isinstance(s, str) for s in labels):
        raise ParseError(f"basis must be a list of {n} strings", "$.basis")
    if len(set(labels)) != n:
        raise ParseError("basis labels must be distinct", "$.basis")
    table = doc["table"]
    if not isinstance(table, list) or len(table) != n:
        raise ParseError(f"table must have {n} rows", "$.table")
    parsed = []
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"expected {n} entries", f"$.table[{i}]")
        parsed.append([_vector(vec, n, f"$.table[{i}][{j}]") for j, vec in enumerate(row)])
    unit = _vector(doc["unit"], n, "$.unit")
    try:
        return make_algebra(parsed, unit, labels, name=doc.get("name") if isinstance(doc.get("name"), str) else None)
    except NotAssociative as exc:
        exc.location = "$.table[{}][{}][{}]".format(*exc.triple)
        raise
    except ValidationError as exc:
        if exc.location is None or not exc.location.startswith("$"):
            exc.location = "$.unit"
        raise


def _load_json(path: str | Path, what: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {what} file {str(path)!r}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def parse_algebra_file(path: str | Path) -> Algebra:
    return algebra_from_document(_load_json(path, "algebra"))


def parse_submodule_file(path: str | Path, n: int) -> list[list[list[Fraction]]]:
    """A JSON list of ``n x n`` rational matrices (column convention)."""
    doc = _load_json(path, "submodule")
    if not isinstance(doc, list):
        raise ParseError("expected a list of matrices")
    return [_matrix(m, n, f"$[{k}]") for k, m in enumerate(doc)]


def algebra_document(alg: Algebra) -> dict:
    """The canonical algebra document for ``alg`` (round-trips through :func:`algebra_from_document`)."""
    return {
        "dim": alg.dim,
        "basis": list(alg.labels),
        "table": [[vector(vec) for vec in row] for row in alg.table],
        "unit": vector(alg.unit_coeffs),
    }


def input_digest(alg: Algebra, generators=None) -> str:
    payload = {
        "algebra": algebra_document(alg),
        "submodule": None if generators is None else [matrix(m) for m in generators],
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def rational(x: Fraction) -> str:
    return str(Fraction(x))


def vector(v) -> list[str]:
    return [rational(x) for x in v]


def matrix(m) -> list[list[str]]:
    return [vector(r) for r in m]


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def schema(name: str) -> dict:
    """Load a bundled JSON schema (``"algebra"`` or ``"report"``)."""
    text = resources.files("ncdiff").joinpath("schemas", f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)

