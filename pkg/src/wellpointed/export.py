"""JSON and DOT output.

Every command prints one JSON envelope::

    {"schema": "wellpointed/1", "command": ..., "ok": ..., "result": {...},
     "categories": {key: category}, "diagnostics": [...]}

A category is serialised with string objects and labels; vect values are
lists of rationals written as strings. :func:`import_category` reads one back.
DOT output is for viewing only.
"""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Any, Optional

from .core import FiniteCategory, Vec

SCHEMA = "wellpointed/1"


def _coords(v) -> list[str]:
    return [str(Fraction(x)) for x in v]


def category_to_json(cat: FiniteCategory) -> dict:
    vect = cat.enrichment == "vect"
    morphisms = [{"label": str(m), "src": str(a), "dst": str(b)}
                 for (a, b), labels in cat.homs.items() for m in labels]
    ids = {str(x): (_coords(v) if vect else str(v)) for x, v in cat.identities.items()}
    comp = [{"g": str(g), "f": str(f), "result": _coords(h) if vect else str(h)}
            for (g, f), h in cat.table.items()]
    return {"name": cat.name, "enrichment": cat.enrichment, "objects": [str(x) for x in cat.objects],
            "morphisms": morphisms, "identities": ids, "composition": comp}


def import_category(data: dict) -> FiniteCategory:
    vect = data["enrichment"] == "vect"
    homs = {}
    for m in data["morphisms"]:
        homs.setdefault((m["src"], m["dst"]), []).append(m["label"])
    conv = (lambda v: tuple(Fraction(x) for x in v)) if vect else (lambda v: v)
    ids = {x: conv(v) for x, v in data["identities"].items()}
    table = {(e["g"], e["f"]): conv(e["result"]) for e in data["composition"]}
    return FiniteCategory(data["objects"], homs, table, ids, data["enrichment"], data.get("name"))


def jsonable(v: Any) -> Any:
    """Plain JSON data for reports: tuples become lists, other values their str."""
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        return [jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, Vec):
        return {"src": str(v.src), "dst": str(v.dst), "coords": _coords(v.coords)}
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    return str(v)


def envelope(command: str, ok: bool, result: Optional[dict] = None, categories: Optional[dict] = None,
             diagnostics: Optional[list] = None) -> dict:
    return {"schema": SCHEMA, "command": command, "ok": bool(ok), "result": jsonable(result or {}),
            "categories": {k: category_to_json(c) for k, c in (categories or {}).items()},
            "diagnostics": list(diagnostics or [])}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


def schema() -> dict:
    return json.loads(resources.files("wellpointed").joinpath("schema/wellpointed-1.json").read_text())


def _quote(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(cat: FiniteCategory, name: Optional[str] = None) -> str:
    """One node per object, one edge per morphism (basis morphism in vect mode), identities included."""
    lines = [f"digraph {_quote(name or cat.name or 'C')} {{"]
    for x in cat.objects:
        lines.append(f"  {_quote(x)};")
    for (a, b), labels in cat.homs.items():
        for m in labels:
            lines.append(f"  {_quote(a)} -> {_quote(b)} [label={_quote(m)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
