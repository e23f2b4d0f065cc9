"""JSON file formats: cyclic-flats-v1 matroids and exact-matrix-v1 matrices."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .kernel import CyclicFlatPresentation, GroundSet, Matroid, UsageError
from .linear import ExactMatrix, field_tag, parse_field

MATROID_FORMAT = "cyclic-flats-v1"
MATRIX_FORMAT = "exact-matrix-v1"


class FormatError(ValueError):
    """Input file is not valid JSON or does not follow the expected schema."""


def _load(source) -> dict:
    if isinstance(source, dict):
        return source
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {source}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise FormatError("top-level JSON value must be an object")
    return data


def _require(data: dict, key: str, kind, where: str = ""):
    if key not in data:
        raise FormatError(f"missing field {key!r}{where}")
    value = data[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise FormatError(f"field {key!r}{where} has the wrong type")
    return value


def presentation_from_json(source) -> CyclicFlatPresentation:
    data = _load(source)
    if data.get("format") != MATROID_FORMAT:
        raise FormatError(f"expected format {MATROID_FORMAT!r}, got {data.get('format')!r}")
    labels = _require(data, "ground_set", list)
    if not all(isinstance(x, str) for x in labels):
        raise FormatError("ground_set entries must be strings")
    try:
        ground = GroundSet(labels)
    except UsageError as exc:
        raise FormatError(str(exc)) from None
    entries = []
    for i, item in enumerate(_require(data, "cyclic_flats", list)):
        where = f" in cyclic_flats[{i}]"
        if not isinstance(item, dict):
            raise FormatError(f"cyclic_flats[{i}] must be an object")
        members = _require(item, "set", list, where)
        rank = _require(item, "rank", int, where)
        bad = [x for x in members if x not in ground]
        if bad:
            raise FormatError(f"unknown labels {bad}{where}")
        if rank < 0:
            raise FormatError(f"negative rank{where}")
        entries.append((ground.subset(members), rank))
    if not entries:
        raise FormatError("cyclic_flats is empty; the least cyclic flat must be listed")
    return CyclicFlatPresentation(ground, tuple(entries))


def matroid_from_json(source) -> Matroid:
    return Matroid(presentation_from_json(source))


def presentation_to_json(p: CyclicFlatPresentation) -> dict:
    return {
        "format": MATROID_FORMAT,
        "ground_set": list(p.ground.labels),
        "cyclic_flats": [{"set": s.labels(), "rank": r} for s, r in p.flats],
    }


def matroid_to_json(m: Matroid) -> dict:
    return presentation_to_json(m.presentation)


def _entry_text(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def matrix_from_json(source) -> ExactMatrix:
    data = _load(source)
    if data.get("format") != MATRIX_FORMAT:
        raise FormatError(f"expected format {MATRIX_FORMAT!r}, got {data.get('format')!r}")
    try:
        p = parse_field(_require(data, "field", str))
    except UsageError as exc:
        raise FormatError(str(exc)) from None
    labels, cols = [], []
    for i, col in enumerate(_require(data, "columns", list)):
        where = f" in columns[{i}]"
        if not isinstance(col, dict):
            raise FormatError(f"columns[{i}] must be an object")
        labels.append(_require(col, "label", str, where))
        entries = _require(col, "entries", list, where)
        try:
            cols.append(tuple(Fraction(e) if isinstance(e, str) else _reject(e) for e in entries))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad entry{where}: {exc}") from None
    groups = data.get("groups", {})
    if not isinstance(groups, dict):
        raise FormatError("groups must be an object")
    try:
        return ExactMatrix(tuple(cols), tuple(labels), p, {k: tuple(v) for k, v in groups.items()})
    except UsageError as exc:
        raise FormatError(str(exc)) from None


def _reject(e):
    raise ValueError(f"entries must be strings like '2' or '1/3', got {e!r}")


def matrix_to_json(a: ExactMatrix) -> dict:
    out = {
        "format": MATRIX_FORMAT,
        "field": field_tag(a.p),
        "columns": [{"label": x, "entries": [_entry_text(e) for e in col]}
                    for x, col in zip(a.labels, a.columns)],
    }
    if a.groups:
        out["groups"] = {k: list(v) for k, v in a.groups.items()}
    return out


def dump(data: dict, path=None) -> str:
    text = json.dumps(data, indent=2, ensure_ascii=False)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
