"""DOT, TikZ and SVG output with fixed per-family layouts.

Layouts use hardcoded coordinates so that output is byte-identical for
equal diagrams:

* ``hexagon``: disjunction at top, joint negation at bottom, each disjunct
  diagonally opposite its negation.
* ``cube2d``: oblique projection of the cube with the disjunction and the
  joint negation at antipodal corners.
* ``nelson``: premisses above, consequences below, correct conclusion at
  the bottom.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Mapping, Union
from xml.sax.saxutils import escape as xml_escape

from .diagram import OppositionDiagram, Relation
from .errors import (LayoutMismatchError, MalformedDiagramError,
                     NotAnOppositionStructureError, UnknownFormatError)
from .formula import to_latex
from .nelson import NelsonDiagram, match_structure, negation_pairing

FORMATS = ("dot", "tikz", "svg")
LAYOUTS = ("hexagon", "cube2d", "nelson", "auto")

DEFAULT_COLORS = {
    "contradictory": "red",
    "contrary": "blue",
    "subcontrary": "green",
    "subalternation": "black",
}

Diagram = Union[OppositionDiagram, NelsonDiagram]


@dataclass(frozen=True)
class RenderOptions:
    format: str = "dot"
    color_scheme: Mapping[str, str] = field(default_factory=lambda: dict(DEFAULT_COLORS))
    layout: str = "auto"


@dataclass(frozen=True)
class _Node:
    id: str
    label: str
    math: str | None
    x: float
    y: float


@dataclass(frozen=True)
class _Line:
    source: int
    target: int
    kind: str
    directed: bool
    color: str


# Hexagon slots: top, first disjunct (upper right), second disjunct (upper
# left), first negation (lower left), second negation (lower right), bottom.
_HEXAGON = ((0.0, 2.0), (1.73, 1.0), (-1.73, 1.0), (-1.73, -1.0), (1.73, -1.0), (0.0, -2.0))

# Cube corners for top, d1..d3, n1..n3, bottom.
_CUBE = ((0, 1, 0), (1, 1, 0), (0, 1, 1), (0, 0, 0), (0, 0, 1), (1, 0, 0), (1, 1, 1), (1, 0, 1))

# Nelson slots: top, consequences, negations (same order), conclusion.
_NELSON6 = ((0.0, 0.0), (2.0, -3.0), (-2.0, -3.0), (-2.0, -1.0), (2.0, -1.0), (0.0, -4.0))
_NELSON8 = ((2.5, -0.2), (4.8, -4.2), (0.2, -4.2), (2.5, -2.0),
            (0.2, -1.6), (4.8, -1.6), (2.5, -3.8), (2.5, -5.6))


def _project(corner) -> tuple[float, float]:
    x, y, z = corner
    return 3 * (x - 0.385 * z), 3 * (y - 0.385 * z)


def _slots_order(d: Diagram) -> list[str]:
    """Vertex ids in slot order: top, disjuncts, negations, bottom."""
    if isinstance(d, NelsonDiagram):
        try:
            pairing = negation_pairing(d)
        except MalformedDiagramError:
            return [v.id for v in d.vertices]
        cons = [c.id for c in d.consequences]
        negations = [pairing[c] for c in cons if pairing[c] is not None]
        return [d.top.id, *cons, *negations, d.conclusion.id]
    try:
        roles = match_structure(d)
    except NotAnOppositionStructureError:
        return [v.id for v in d.vertices]
    return [roles.top, *roles.disjuncts, *roles.negations, roles.bottom]


def _circle(count: int) -> list[tuple[float, float]]:
    if count == 1:
        return [(0.0, 0.0)]
    return [(2 * math.cos(math.pi / 2 - 2 * math.pi * i / count),
             2 * math.sin(math.pi / 2 - 2 * math.pi * i / count)) for i in range(count)]


def _resolve_layout(d: Diagram, layout: str) -> str:
    if layout not in LAYOUTS:
        raise LayoutMismatchError(f"unknown layout {layout!r}")
    count = len(d.vertices)
    if layout == "auto":
        if isinstance(d, NelsonDiagram):
            return "nelson"
        return {6: "hexagon", 8: "cube2d"}.get(count, "circle")
    if layout == "nelson" and not isinstance(d, NelsonDiagram):
        raise LayoutMismatchError("the nelson layout needs a Nelson diagram")
    if layout in ("hexagon", "cube2d") and isinstance(d, NelsonDiagram):
        raise LayoutMismatchError(f"the {layout} layout needs an opposition diagram")
    if layout == "hexagon" and count != 6:
        raise LayoutMismatchError(f"the hexagon layout needs 6 vertices, got {count}")
    if layout == "cube2d" and count != 8:
        raise LayoutMismatchError(f"the cube2d layout needs 8 vertices, got {count}")
    return layout


def _positions(d: Diagram, layout: str) -> dict[str, tuple[float, float]]:
    if layout == "circle":
        return dict(zip((v.id for v in d.vertices), _circle(len(d.vertices))))
    order = _slots_order(d)
    if layout == "hexagon":
        return dict(zip(order, _HEXAGON))
    if layout == "cube2d":
        return dict(zip(order, map(_project, _CUBE)))
    count = len(d.vertices)
    if count == 6:
        return dict(zip(order, _NELSON6))
    if count in (7, 8):
        slots = list(_NELSON8)
        if count == 7:
            del slots[6]  # no negation of the third disjunct
        return dict(zip(order, slots))
    return dict(zip((v.id for v in d.vertices), _circle(count)))


def _scene(d: Diagram, opts: RenderOptions) -> tuple[list[_Node], list[_Line]]:
    layout = _resolve_layout(d, opts.layout)
    pos = _positions(d, layout)
    nodes = []
    index = {}
    for i, v in enumerate(d.vertices):
        x, y = pos[v.id]
        math_label = to_latex(v.formula) if v.label == str(v.formula) else None
        nodes.append(_Node(v.id, v.label, math_label, round(x, 2), round(y, 2)))
        index[v.id] = i
    colors = {**DEFAULT_COLORS, **opts.color_scheme}
    lines = []
    if isinstance(d, NelsonDiagram):
        for s, t in d.arrows:
            lines.append(_Line(index[s], index[t], "arrow", True, colors["subalternation"]))
    else:
        for e in d.edges:
            lines.append(_Line(index[e.source], index[e.target], e.kind.value,
                               e.kind is Relation.SUBALTERNATION, colors[e.kind.value]))
    return nodes, lines


# -- DOT --------------------------------------------------------------------

def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def _to_dot(nodes, lines, name) -> str:
    out = [f"digraph {_dot_quote(name)} {{",
           "  graph [layout=neato, splines=line];",
           "  node [shape=box];"]
    for n in nodes:
        out.append(f"  {_dot_quote(n.id)} [label={_dot_quote(n.label)}, "
                   f"pos=\"{n.x:.2f},{n.y:.2f}!\"];")
    for ln in lines:
        attrs = [f"class={_dot_quote(ln.kind)}", f"color={_dot_quote(ln.color)}"]
        if not ln.directed:
            attrs.append("dir=none")
        out.append(f"  {_dot_quote(nodes[ln.source].id)} -> {_dot_quote(nodes[ln.target].id)} "
                   f"[{', '.join(attrs)}];")
    out.append("}")
    return "\n".join(out) + "\n"


_DOT_STRING = r'"(?:[^"\\]|\\.)*"'
_DOT_NODE = re.compile(rf"^\s*({_DOT_STRING})\s*\[.*\];\s*$")
_DOT_EDGE = re.compile(rf"^\s*({_DOT_STRING})\s*(->|--)\s*({_DOT_STRING})\s*(\[.*\])?;\s*$")
_DOT_HEAD = re.compile(rf"^\s*(strict\s+)?(di)?graph(\s+({_DOT_STRING}|\w+))?\s*\{{\s*$")


def dot_problems(text: str) -> list[str]:
    """Minimal well-formedness check for DOT emitted by this module:
    header, balanced braces outside strings, and edges only between
    declared nodes. Returns a list of problems (empty when fine)."""
    problems = []
    depth = 0
    for m in re.finditer(rf"{_DOT_STRING}|[{{}}]", text):
        tok = m.group()
        if tok == "{":
            depth += 1
        elif tok == "}":
            depth -= 1
            if depth < 0:
                problems.append(f"unbalanced '}}' at offset {m.start()}")
                depth = 0
    if depth:
        problems.append(f"{depth} unclosed '{{'")
    lines = text.splitlines()
    if not lines or not _DOT_HEAD.match(lines[0]):
        problems.append("missing graph header")
        return problems
    declared = set()
    for no, line in enumerate(lines[1:], start=2):
        stripped = line.strip()
        if not stripped or stripped == "}" or re.match(r"^(graph|node|edge)\s*\[", stripped):
            continue
        edge = _DOT_EDGE.match(line)
        if edge:
            for end in (edge.group(1), edge.group(3)):
                if end not in declared:
                    problems.append(f"line {no}: undeclared node {end}")
            continue
        node = _DOT_NODE.match(line)
        if node:
            declared.add(node.group(1))
            continue
        problems.append(f"line {no}: unrecognised statement")
    return problems


# -- TikZ -------------------------------------------------------------------

_TEX_SPECIAL = {"\\": r"\textbackslash{}", "&": r"\&", "%": r"\%", "$": r"\$", "#": r"\#",
                "_": r"\_", "{": r"\{", "}": r"\}", "~": r"\textasciitilde{}",
                "^": r"\textasciicircum{}"}


def _tex_escape(s: str) -> str:
    return "".join(_TEX_SPECIAL.get(ch, ch) for ch in s)


def _to_tikz(nodes, lines) -> str:
    out = [r"\begin{tikzpicture}[>=stealth,line width=1pt,"
           r"every node/.style={draw,fill=white,align=center}]"]
    for i, n in enumerate(nodes):
        text = f"${n.math}$" if n.math is not None else _tex_escape(n.label)
        out.append(f"\\node (v{i}) at ({n.x:.2f},{n.y:.2f}) {{{text}}};")
    for ln in lines:
        tip = "->" if ln.directed else "-"
        out.append(f"\\draw[{tip},{ln.color}] (v{ln.source}) -- (v{ln.target}); % {ln.kind}")
    out.append(r"\end{tikzpicture}")
    return "\n".join(out) + "\n"


# -- SVG --------------------------------------------------------------------

_UNIT = 80
_MARGIN = 90


def _to_svg(nodes, lines) -> str:
    xs = [n.x for n in nodes] or [0.0]
    ys = [n.y for n in nodes] or [0.0]
    min_x, max_y = min(xs), max(ys)
    width = (max(xs) - min_x) * _UNIT + 2 * _MARGIN
    height = (max_y - min(ys)) * _UNIT + 2 * _MARGIN

    def px(n):
        return (n.x - min_x) * _UNIT + _MARGIN, (max_y - n.y) * _UNIT + _MARGIN

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0f}" '
           f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">']
    if any(ln.directed for ln in lines):
        colors = sorted({ln.color for ln in lines if ln.directed})
        out.append("  <defs>")
        for c in colors:
            out.append(f'    <marker id="tip-{xml_escape(c)}" viewBox="0 0 10 10" refX="10" '
                       f'refY="5" markerWidth="8" markerHeight="8" orient="auto">'
                       f'<path d="M0,0 L10,5 L0,10 z" fill="{xml_escape(c)}"/></marker>')
        out.append("  </defs>")
    if lines:
        out.append('  <g class="edges">')
        for ln in lines:
            (x1, y1), (x2, y2) = px(nodes[ln.source]), px(nodes[ln.target])
            length = math.hypot(x2 - x1, y2 - y1) or 1.0
            trim = 22 / length if ln.directed else 0.0
            x2, y2 = x2 - (x2 - x1) * trim, y2 - (y2 - y1) * trim
            marker = f' marker-end="url(#tip-{xml_escape(ln.color)})"' if ln.directed else ""
            out.append(f'    <line class="edge {ln.kind}" x1="{x1:.1f}" y1="{y1:.1f}" '
                       f'x2="{x2:.1f}" y2="{y2:.1f}" stroke="{xml_escape(ln.color)}" '
                       f'stroke-width="2"{marker}/>')
        out.append("  </g>")
    out.append('  <g class="nodes">')
    for n in nodes:
        x, y = px(n)
        out.append(f'    <g class="node" id="{xml_escape(n.id, {chr(34): "&quot;"})}">'
                   f'<text x="{x:.1f}" y="{y:.1f}" text-anchor="middle" '
                   f'dominant-baseline="middle" font-family="sans-serif" font-size="13" '
                   f'stroke="white" stroke-width="4" paint-order="stroke">'
                   f'{xml_escape(n.label)}</text></g>')
    out.append("  </g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_diagram(d: Diagram, opts: RenderOptions | None = None, name: str = "diagram") -> str:
    """Render ``d`` as text in ``opts.format``; output is byte-deterministic."""
    opts = opts or RenderOptions()
    if opts.format not in FORMATS:
        raise UnknownFormatError(f"unknown format {opts.format!r}; choose from {', '.join(FORMATS)}")
    nodes, lines = _scene(d, opts)
    if opts.format == "dot":
        return _to_dot(nodes, lines, name)
    if opts.format == "tikz":
        return _to_tikz(nodes, lines)
    return _to_svg(nodes, lines)
