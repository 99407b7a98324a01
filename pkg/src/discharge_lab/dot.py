"""Deterministic Graphviz DOT drawings of plane graphs.

Color classes become node fill colors, external vertices get a double
outline, and each highlight (a configuration match or a bad-cycle
partition) becomes a ``cluster`` subgraph.  A vertex belongs to at most one
cluster in DOT, so a vertex shared by several highlights is placed in the
first one and listed in the label of the others.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Tuple

from .plane_graph import PlaneGraph

FILL = {1: "#f4a582", 2: "#92c5de", 3: "#b8e186"}
UNCOLORED = "#ffffff"


@dataclass(frozen=True)
class Highlight:
    label: str
    vertices: Tuple[int, ...]


def match_highlight(m, ident: Optional[int] = None) -> Highlight:
    label = m.kind if m.case_tag == "main" else f"{m.kind} {m.case_tag}"
    if ident is not None:
        label = f"#{ident} {label}"
    return Highlight(label, tuple(m.vertices))


def partition_highlight(bp) -> Highlight:
    verts = set(bp.core) | {c for _, c in bp.attachments}
    return Highlight(bp.kind, tuple(sorted(verts)))


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(g: PlaneGraph, coloring: Optional[Mapping[int, int]] = None,
             highlights: Sequence[Highlight] = (), name: str = "G") -> str:
    col = dict(coloring or {})
    outer = set(g.outer_walk)
    lines = [f"graph {_q(name)} {{",
             "  graph [layout=neato, overlap=false, splines=true];",
             "  node [shape=circle, style=filled, fontname=\"Helvetica\", fillcolor=\"#ffffff\"];"]
    placed = set()
    for i, h in enumerate(highlights):
        members = [v for v in sorted(set(h.vertices)) if v not in placed]
        shared = [v for v in sorted(set(h.vertices)) if v in placed]
        label = h.label + (f" (also {','.join(map(str, shared))})" if shared else "")
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f"    label={_q(label)}; style=dashed; color=\"#d6604d\";")
        for v in members:
            lines.append(f"    {v};")
        lines.append("  }")
        placed.update(members)
    for v in g.vertices:
        attrs = [f"label={_q(str(v))}"]
        if v in col:
            attrs.append(f"fillcolor={_q(FILL[col[v]])}")
            attrs.append(f"xlabel={_q('c' + str(col[v]))}")
        if v in outer:
            attrs.append("peripheries=2")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for a, b in g.edges:
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
