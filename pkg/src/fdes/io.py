"""JSON model documents and machine-readable reports.

Model document::

    {
      "name": "G",
      "states": 2,
      "initial": ["0.9", "0.1"],
      "marked": ["0.1", "0.8"],
      "events": {"s": [["0.9", "0.8"], ["0", "0.1"]], ...},
      "uncontrollability": {"s": "0.8", ...}        # optional
    }

Grades are decimal strings with at most four fractional digits.  JSON numbers
are accepted too but are read as exact decimals, never as binary floats.
"""

from __future__ import annotations

import hashlib
import json
from decimal import Decimal
from pathlib import Path
from typing import Any

from .algebra import FuzzyMatrix, Grade
from .automaton import FuzzyAutomaton
from .errors import GradeError, ModelFormatError
from .synthesis import UncontrollabilityMap

REPORT_SCHEMA_VERSION = 1

_MODEL_KEYS = {"name", "states", "initial", "marked", "events", "uncontrollability"}


def _no_duplicates(pairs: list[tuple[str, Any]]) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for key, value in pairs:
        if key in out:
            raise ModelFormatError(f"duplicate key {key!r}")
        out[key] = value
    return out


def _load_json(data: bytes | str) -> Any:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        return json.loads(data, object_pairs_hook=_no_duplicates, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(
            f"line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None


def _grade(value: Any, where: str) -> Grade:
    if isinstance(value, bool) or not isinstance(value, (str, int, Decimal)):
        raise ModelFormatError(f"{where}: expected a decimal string, got {value!r}")
    try:
        return Grade.parse(value)
    except GradeError as exc:
        raise ModelFormatError(f"{where}: {exc}") from None


def _vector(value: Any, n: int, where: str) -> tuple[Grade, ...]:
    if not isinstance(value, list):
        raise ModelFormatError(f"{where}: expected a list of {n} grades")
    if len(value) != n:
        raise ModelFormatError(f"{where}: has {len(value)} entries, expected {n}")
    return tuple(_grade(v, f"{where}[{k}]") for k, v in enumerate(value))


def model_from_dict(doc: Any) -> tuple[FuzzyAutomaton, UncontrollabilityMap | None]:
    if not isinstance(doc, dict):
        raise ModelFormatError("model document must be a JSON object")
    unknown = set(doc) - _MODEL_KEYS
    if unknown:
        raise ModelFormatError(f"unknown fields {sorted(unknown)}")
    for key in ("states", "initial", "marked", "events"):
        if key not in doc:
            raise ModelFormatError(f"missing field {key!r}")
    name = doc.get("name", "G")
    if not isinstance(name, str):
        raise ModelFormatError(f"name: expected a string, got {name!r}")
    n = doc["states"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ModelFormatError(f"states: expected a positive integer, got {n!r}")
    x0 = _vector(doc["initial"], n, "initial")
    xm = _vector(doc["marked"], n, "marked")
    events_doc = doc["events"]
    if not isinstance(events_doc, dict):
        raise ModelFormatError("events: expected an object mapping labels to matrices")
    events = {}
    for label, rows in events_doc.items():
        where = f"events.{label}"
        if not label:
            raise ModelFormatError(f"{where}: event labels must be non-empty")
        if not isinstance(rows, list) or len(rows) != n:
            raise ModelFormatError(f"{where}: expected {n} rows")
        events[label] = FuzzyMatrix._trusted(
            tuple(_vector(row, n, f"{where}[{i}]") for i, row in enumerate(rows))
        )
    g = FuzzyAutomaton(n, events, x0, xm, name=name)

    uc = None
    if "uncontrollability" in doc:
        uc_doc = doc["uncontrollability"]
        if not isinstance(uc_doc, dict):
            raise ModelFormatError("uncontrollability: expected an object")
        extra = set(uc_doc) - set(events)
        missing = set(events) - set(uc_doc)
        if extra:
            raise ModelFormatError(f"uncontrollability: unknown events {sorted(extra)}")
        if missing:
            raise ModelFormatError(f"uncontrollability: missing events {sorted(missing)}")
        uc = UncontrollabilityMap(
            {a: _grade(uc_doc[a], f"uncontrollability.{a}") for a in events}
        )
    return g, uc


def parse_model(data: bytes | str) -> tuple[FuzzyAutomaton, UncontrollabilityMap | None]:
    """Parse a model document into an automaton and optional uc map."""
    return model_from_dict(_load_json(data))


def load_model(path: str | Path) -> tuple[FuzzyAutomaton, UncontrollabilityMap | None]:
    path = Path(path)
    try:
        return parse_model(path.read_bytes())
    except ModelFormatError as exc:
        raise ModelFormatError(f"{path}: {exc}") from None


def model_to_dict(
    g: FuzzyAutomaton, uc: UncontrollabilityMap | None = None
) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "name": g.name,
        "states": g.states,
        "initial": [str(v) for v in g.initial.rows[0]],
        "marked": [str(v) for v in g.marked.rows[0]],
        "events": {a: m.to_strings() for a, m in g.events.items()},
    }
    if uc is not None:
        doc["uncontrollability"] = {a: str(uc[a]) for a in g.alphabet}
    return doc


def serialize_model(g: FuzzyAutomaton, uc: UncontrollabilityMap | None = None) -> str:
    """Canonical text form: one matrix row per line."""
    doc = model_to_dict(g, uc)

    def enc(value: Any) -> str:
        return json.dumps(value, ensure_ascii=False)

    lines = [
        "{",
        f'  "name": {enc(doc["name"])},',
        f'  "states": {doc["states"]},',
        f'  "initial": {enc(doc["initial"])},',
        f'  "marked": {enc(doc["marked"])},',
    ]
    events = list(doc["events"].items())
    if events:
        lines.append('  "events": {')
        for k, (label, rows) in enumerate(events):
            body = ",\n".join(f"      {enc(row)}" for row in rows)
            tail = "," if k < len(events) - 1 else ""
            lines.append(f"    {enc(label)}: [\n{body}\n    ]{tail}")
        lines.append("  }" + ("," if "uncontrollability" in doc else ""))
    else:
        lines.append('  "events": {}' + ("," if "uncontrollability" in doc else ""))
    if "uncontrollability" in doc:
        lines.append(f'  "uncontrollability": {enc(doc["uncontrollability"])}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def content_hash(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def matrix_to_strings(m: FuzzyMatrix | None) -> list[list[str]] | None:
    return None if m is None else m.to_strings()


def matrix_from_strings(rows: list[list[str]]) -> FuzzyMatrix:
    return FuzzyMatrix([[Grade.parse(v) for v in row] for row in rows])


def dump_report(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False, sort_keys=False)


def load_report(text: str) -> dict[str, Any]:
    return json.loads(text)
