"""JSON diagram documents (schema version 1).

A document looks like::

    {
      "v": 1,
      "kind": "opposition",
      "atoms": ["p", "q"],
      "constraint": "!(p & q)",
      "vertices": [{"id": "top", "label": "p | q", "formula": "p | q"}, ...],
      "edges": [{"src": "d1", "dst": "top", "relation": "subalternation"}, ...]
    }

Nelson documents use ``"kind": "nelson"``, give every vertex a ``role``
and list ``arrows`` (``src``/``dst`` only) instead of ``edges``. Files are
written as UTF-8 with LF line endings and sorted keys.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import jsonschema

from .diagram import Edge, OppositionDiagram, Relation, Vertex
from .errors import FormulaSyntaxError, GeometryError, SchemaError
from .nelson import NelsonDiagram, NelsonVertex, Role
from .parser import parse

VERSION = 1

_IDENT = "^[A-Za-z_][A-Za-z0-9_]*$"

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["v", "kind", "atoms", "constraint", "vertices"],
    "additionalProperties": False,
    "properties": {
        "v": {"const": VERSION},
        "kind": {"enum": ["opposition", "nelson"]},
        "atoms": {"type": "array", "items": {"type": "string", "pattern": _IDENT},
                  "uniqueItems": True},
        "constraint": {"type": "string"},
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "label", "formula"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "label": {"type": "string"},
                    "formula": {"type": "string"},
                    "role": {"enum": [r.value for r in Role]},
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["src", "dst", "relation"],
                "additionalProperties": False,
                "properties": {
                    "src": {"type": "string"},
                    "dst": {"type": "string"},
                    "relation": {"enum": [r.value for r in Relation]},
                },
            },
        },
        "arrows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["src", "dst"],
                "additionalProperties": False,
                "properties": {"src": {"type": "string"}, "dst": {"type": "string"}},
            },
        },
    },
    "allOf": [
        {
            "if": {"properties": {"kind": {"const": "nelson"}}},
            "then": {
                "not": {"required": ["edges"]},
                "properties": {"vertices": {"items": {"required": ["role"]}}},
            },
            "else": {"not": {"required": ["arrows"]}},
        }
    ],
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)

Diagram = Union[OppositionDiagram, NelsonDiagram]


def _pointer(path) -> str:
    return "/" + "/".join(str(p) for p in path) if path else "/"


def _parse_at(text: str, pointer: str, context: str):
    try:
        return parse(text)
    except FormulaSyntaxError as e:
        raise FormulaSyntaxError(e.message, e.text, e.position, e.expected,
                                 context=f"{pointer} ({context}): ") from None


def from_document(doc: dict) -> Diagram:
    """Build a diagram from a parsed JSON document, validating it first."""
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(err.message, _pointer(err.absolute_path))
    seen: dict[str, int] = {}
    for i, v in enumerate(doc["vertices"]):
        if v["id"] in seen:
            raise SchemaError(f"duplicate vertex id {v['id']!r}", f"/vertices/{i}/id")
        seen[v["id"]] = i
    constraint = _parse_at(doc["constraint"], "/constraint", "constraint")
    formulas = [_parse_at(v["formula"], f"/vertices/{i}/formula", f"vertex {v['id']!r}")
                for i, v in enumerate(doc["vertices"])]
    atoms = set(doc["atoms"])
    for i, f in enumerate([constraint, *formulas]):
        extra = f.atoms() - atoms
        if extra:
            where = "/constraint" if i == 0 else f"/vertices/{i - 1}/formula"
            raise SchemaError(f"atoms {sorted(extra)} not declared in /atoms", where)
    links = "arrows" if doc["kind"] == "nelson" else "edges"
    for i, e in enumerate(doc.get(links, [])):
        for end in ("src", "dst"):
            if e[end] not in seen:
                raise SchemaError(f"unknown vertex id {e[end]!r}", f"/{links}/{i}/{end}")
    try:
        if doc["kind"] == "nelson":
            vertices = tuple(NelsonVertex(v["id"], v["label"], f, Role(v["role"]))
                             for v, f in zip(doc["vertices"], formulas))
            arrows = tuple((a["src"], a["dst"]) for a in doc.get("arrows", []))
            return NelsonDiagram(tuple(doc["atoms"]), constraint, vertices, arrows)
        vertices = tuple(Vertex(v["id"], v["label"], f) for v, f in zip(doc["vertices"], formulas))
        edges = tuple(Edge(e["src"], e["dst"], Relation(e["relation"])) for e in doc.get("edges", []))
        return OppositionDiagram(tuple(doc["atoms"]), constraint, vertices, edges)
    except GeometryError as e:
        raise SchemaError(str(e), f"/{links}" if "arrow" in str(e) or "edge" in str(e)
                          else "/vertices") from None


def to_document(d: Diagram) -> dict:
    doc = {
        "v": VERSION,
        "atoms": list(d.universe),
        "constraint": str(d.constraint),
    }
    if isinstance(d, NelsonDiagram):
        doc["kind"] = "nelson"
        doc["vertices"] = [{"id": v.id, "label": v.label, "formula": str(v.formula),
                            "role": v.role.value} for v in d.vertices]
        doc["arrows"] = [{"src": s, "dst": t} for s, t in d.arrows]
    else:
        doc["kind"] = "opposition"
        doc["vertices"] = [{"id": v.id, "label": v.label, "formula": str(v.formula)}
                           for v in d.vertices]
        doc["edges"] = [{"src": e.source, "dst": e.target, "relation": e.kind.value}
                        for e in d.edges]
    return doc


def dumps(d: Diagram) -> str:
    return json.dumps(to_document(d), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str) -> Diagram:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})") from None
    return from_document(doc)


def load_document(path: Union[str, Path]) -> Diagram:
    return loads(Path(path).read_text(encoding="utf-8"))


def save_document(d: Diagram, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(d))
