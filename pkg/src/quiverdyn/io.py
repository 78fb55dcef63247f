"""JSON and DOT serialization.  Weights are decimal strings so big integers survive."""

from __future__ import annotations

import json
from typing import Mapping

from . import errors
from .numeric import Enclosure, ExactnessLost
from .quiver import Quiver, build_quiver


def to_dict(q: Quiver) -> dict:
    arrows = []
    for t, h, w in q.arrows():
        if isinstance(w, Enclosure):
            raise ExactnessLost("cannot serialize an enclosed weight exactly")
        arrows.append([t, h, str(w)])
    return {"mutable": list(q.mutable), "frozen": list(q.frozen), "arrows": arrows}


def from_dict(d: Mapping) -> Quiver:
    try:
        mutable = d["mutable"]
        frozen = d.get("frozen", [])
        arrows = d.get("arrows", [])
    except (KeyError, AttributeError, TypeError) as exc:
        raise errors.BadFormat(f"quiver JSON is missing field {exc}") from None
    for rec in arrows:
        if not isinstance(rec, (list, tuple)) or len(rec) != 3:
            raise errors.BadFormat(f"arrow record {rec!r} is not [tail, head, weight]")
    return build_quiver(mutable, frozen, arrows)


def dumps(q: Quiver, indent: int | None = None) -> str:
    return json.dumps(to_dict(q), indent=indent)


def loads(text: str) -> Quiver:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise errors.BadFormat(f"invalid JSON: {exc}") from None
    return from_dict(data)


def load(path: str) -> Quiver:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(q: Quiver, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(q, indent=2) + "\n")


_DOT_COLORS = {"red": "red", "green": "green", "blue": "blue", "orange": "orange",
               "zero": "gray", "mixed": "black"}


def to_dot(q: Quiver, colors: Mapping[str, str] | None = None, name: str = "Q") -> str:
    """Graphviz source.  ``colors`` maps mutable vertices to colour names."""
    lines = [f"digraph {name} {{"]
    for v in q.mutable:
        attrs = ["shape=circle"]
        if colors and v in colors:
            attrs.append(f'color={_DOT_COLORS.get(colors[v], colors[v])}')
        lines.append(f'  "{v}" [{", ".join(attrs)}];')
    for v in q.frozen:
        lines.append(f'  "{v}" [shape=box];')
    for t, h, w in q.arrows():
        lines.append(f'  "{t}" -> "{h}" [label="{w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_word(text: str) -> list:
    """Comma separated letters; blank input is the empty word."""
    text = text.strip()
    if not text:
        return []
    return [tok.strip() for tok in text.split(",") if tok.strip()]


def parse_periodic(text: str):
    """``"pre | period"`` -> (preamble, period).  Without a bar the whole word is the period."""
    if "|" in text:
        pre, per = text.split("|", 1)
        return parse_word(pre), parse_word(per)
    return [], parse_word(text)
