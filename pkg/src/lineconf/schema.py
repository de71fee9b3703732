"""JSON schema and DOT export for configurations.

Schema: ``{"dim": n | null, "points": [...], "lines": [[i, j, k], ...]}``.
Algebraic configurations store points as coordinate bit lists in enumeration
order; abstract ones store their labels (tuples become lists).
"""

from __future__ import annotations

import json
from pathlib import Path

from .config import LineConfiguration
from .gf2geom import ProjectivePoint


class SchemaError(ValueError):
    pass


def _label_to_json(label):
    if isinstance(label, ProjectivePoint):
        return list(label.coords)
    if isinstance(label, tuple):
        return [_label_to_json(x) for x in label]
    return label


def _label_from_json(obj):
    if isinstance(obj, list):
        return tuple(_label_from_json(x) for x in obj)
    return obj


def to_schema(c: LineConfiguration) -> dict:
    return {
        "dim": c.dim,
        "points": [_label_to_json(lab) for lab in c.labels],
        "lines": [list(line) for line in c.lines],
    }


def from_schema(data: dict) -> LineConfiguration:
    try:
        dim = data.get("dim")
        raw_points = data["points"]
        raw_lines = data["lines"]
    except (AttributeError, KeyError, TypeError) as exc:
        raise SchemaError(f"missing schema field: {exc}") from None
    if dim is not None:
        try:
            labels = tuple(ProjectivePoint(tuple(p)) for p in raw_points)
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"bad point: {exc}") from None
        if any(p.dim != dim for p in labels):
            raise SchemaError(f"points do not all lie in P^{dim}")
    else:
        labels = tuple(_label_from_json(p) for p in raw_points)
    if len(set(labels)) != len(labels):
        raise SchemaError("duplicate point labels")
    try:
        lines = tuple(tuple(int(x) for x in line) for line in raw_lines)
        return LineConfiguration(labels, lines, dim)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad line: {exc}") from None


def dumps(c: LineConfiguration) -> str:
    return json.dumps(to_schema(c))


def loads(text: str) -> LineConfiguration:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {exc}") from None
    return from_schema(data)


def load(path: str | Path) -> LineConfiguration:
    return loads(Path(path).read_text(encoding="utf-8"))


def to_dot(c: LineConfiguration, name: str = "incidence") -> str:
    """Incidence graph, vertices named by point index, edges sorted."""
    out = [f"graph {name} {{"]
    out += [f"  {p};" for p in range(c.n)]
    out += [f"  {p} -- {q};" for p in range(c.n) for q in sorted(c.neighbors[p]) if p < q]
    out.append("}")
    return "\n".join(out) + "\n"
