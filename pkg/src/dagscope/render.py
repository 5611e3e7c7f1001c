"""Graph export: DOT, SVG, and a JSON document form."""

from __future__ import annotations

import html

from .graph import Dag, VariableStatus
from .transforms import UndirectedGraph

_FILL = {
    VariableStatus.EXPOSURE: "#c8f0c8",
    VariableStatus.OUTCOME: "#c8dcf5",
    VariableStatus.ADJUSTED: "#f5f5f5",
    VariableStatus.UNOBSERVED: "#e6e6e6",
    VariableStatus.OTHER: "#ffffff",
}


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Dag) -> str:
    lines = ["digraph {"]
    for var in g.variables:
        attrs = [f'fillcolor="{_FILL[var.status]}"', "style=filled"]
        if var.layout is not None:
            attrs.append(f'pos="{var.layout[0]},{var.layout[1]}!"')
        attrs.append(f'comment="{var.status.value}"')
        lines.append(f"  {_dot_id(var.name)} [{', '.join(attrs)}];")
    for u, v in g.edges:
        lines.append(f"  {_dot_id(u)} -> {_dot_id(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def undirected_to_dot(u: UndirectedGraph) -> str:
    lines = ["graph {"]
    for name in u.vertices:
        lines.append(f"  {_dot_id(name)};")
    for a, b in u.sorted_lines():
        lines.append(f"  {_dot_id(a)} -- {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def layered_layout(g: Dag) -> dict[str, tuple[float, float]]:
    """Fallback positions: longest-path rank for y, slot order for x."""
    rank: dict[str, int] = {}

    def depth(name: str) -> int:
        if name not in rank:
            parents = g.parents(name)
            rank[name] = 1 + max((depth(p) for p in parents), default=-1)
        return rank[name]

    for name in g.names:
        depth(name)
    rows: dict[int, list[str]] = {}
    for name in g.names:
        rows.setdefault(rank[name], []).append(name)
    out = {}
    for level in sorted(rows):
        row = rows[level]
        offset = -(len(row) - 1) / 2
        for slot, name in enumerate(row):
            out[name] = (offset + slot, float(level))
    return out


def _positions(g: Dag) -> dict[str, tuple[float, float]]:
    stored = {v.name: v.layout for v in g.variables if v.layout is not None}
    if len(stored) == len(g.variables) and g.variables:
        return stored
    return layered_layout(g)


def to_svg(g: Dag, style: str = "classic") -> str:
    """Render the diagram; ``style`` is ``classic`` (dot plus label beside
    it) or ``sem`` (label inside an ellipse)."""
    if style not in ("classic", "sem"):
        raise ValueError(f"unknown style {style!r}")
    pos = _positions(g)
    if not pos:
        return (
            '<svg xmlns="http://www.w3.org/2000/svg" width="40" height="40"></svg>'
        )
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    scale, margin = 90.0, 60.0
    width = (max(xs) - min(xs)) * scale + 2 * margin
    height = (max(ys) - min(ys)) * scale + 2 * margin

    def place(name: str) -> tuple[float, float]:
        x, y = pos[name]
        return (x - min(xs)) * scale + margin, (y - min(ys)) * scale + margin

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        "<defs><marker id='arrow' markerWidth='10' markerHeight='8' refX='9' refY='4' "
        "orient='auto'><path d='M0,0 L10,4 L0,8 z'/></marker></defs>",
    ]
    radius = 24.0 if style == "sem" else 6.0
    for u, v in g.edges:
        (x1, y1), (x2, y2) = place(u), place(v)
        dx, dy = x2 - x1, y2 - y1
        length = max((dx * dx + dy * dy) ** 0.5, 1e-9)
        trim_source = radius
        trim_target = radius + 4.0
        sx = x1 + dx / length * trim_source
        sy = y1 + dy / length * trim_source
        tx = x2 - dx / length * trim_target
        ty = y2 - dy / length * trim_target
        parts.append(
            f'<line x1="{sx:.1f}" y1="{sy:.1f}" x2="{tx:.1f}" y2="{ty:.1f}" '
            'stroke="black" marker-end="url(#arrow)"/>'
        )
    for var in g.variables:
        x, y = place(var.name)
        label = html.escape(var.name)
        fill = _FILL[var.status]
        if style == "sem":
            parts.append(
                f'<ellipse cx="{x:.1f}" cy="{y:.1f}" rx="{radius:.0f}" ry="18" '
                f'fill="{fill}" stroke="black"/>'
            )
            parts.append(
                f'<text x="{x:.1f}" y="{y + 4:.1f}" text-anchor="middle" '
                f'font-size="12">{label}</text>'
            )
        else:
            parts.append(
                f'<circle cx="{x:.1f}" cy="{y:.1f}" r="{radius:.0f}" '
                f'fill="{fill}" stroke="black"/>'
            )
            parts.append(
                f'<text x="{x:.1f}" y="{y - 10:.1f}" text-anchor="middle" '
                f'font-size="12">{label}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def dag_to_json(g: Dag) -> dict:
    return {
        "variables": [
            {
                "name": v.name,
                "status": v.status.value,
                "layout": list(v.layout) if v.layout is not None else None,
            }
            for v in g.variables
        ],
        "edges": [[u, v] for u, v in g.edges],
    }
