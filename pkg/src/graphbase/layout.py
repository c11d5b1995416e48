"""Automatic 2-D layout and SVG rendering.

Layouts use a seeded Fruchterman-Reingold force simulation: repulsion
between all node pairs, spring attraction along edges, and a cooling
schedule, followed by normalization into the unit square.  The same graph
and seed always produce the same layout, so re-rendering is reproducible
and "change the drawing" simply means re-running with a new seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from datetime import datetime
from xml.sax.saxutils import escape

from .errors import LayoutMismatch
from .model import Graph, utc_now

VIEWBOX = 1000  # SVG canvas is viewBox="0 0 1000 1000"


@dataclass(frozen=True)
class Layout:
    coordinates: dict[str, tuple[float, float]]
    algorithm: str = "fruchterman-reingold"
    graph_id: str = ""
    computed_at: datetime = field(default_factory=utc_now)

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "graph_id": self.graph_id,
            "computed_at": self.computed_at.isoformat(),
            "coordinates": {k: [x, y] for k, (x, y) in
                            self.coordinates.items()},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Layout":
        return cls(
            coordinates={k: (float(x), float(y))
                         for k, (x, y) in d["coordinates"].items()},
            algorithm=d.get("algorithm", "fruchterman-reingold"),
            graph_id=d.get("graph_id", ""),
            computed_at=datetime.fromisoformat(d["computed_at"]))


@dataclass(frozen=True)
class RenderStyle:
    node_radius: float = 8.0
    edge_width: float = 1.5
    show_labels: bool = False


def layout_force_directed(g: Graph, iterations: int = 500,
                          rng_seed: int = 0) -> Layout:
    """Deterministic force-directed layout, normalized into [0,1]^2."""
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    ids = [n.id for n in g.nodes]
    n = len(ids)
    if n == 0:
        return Layout(coordinates={})
    if n == 1:
        return Layout(coordinates={ids[0]: (0.5, 0.5)})

    rng = random.Random(rng_seed)
    pos = {v: [rng.random(), rng.random()] for v in ids}
    springs = [(e.source, e.target) for e in g.edges if e.source != e.target]
    k = math.sqrt(1.0 / n)  # ideal edge length in unit-square units
    temperature = 0.1
    cooling = temperature / iterations

    for _ in range(iterations):
        disp = {v: [0.0, 0.0] for v in ids}
        for i, u in enumerate(ids):
            pu = pos[u]
            for v in ids[i + 1:]:
                pv = pos[v]
                dx, dy = pu[0] - pv[0], pu[1] - pv[1]
                dist2 = dx * dx + dy * dy
                if dist2 < 1e-12:
                    dx, dy = rng.random() * 1e-3, rng.random() * 1e-3
                    dist2 = dx * dx + dy * dy
                dist = math.sqrt(dist2)
                force = k * k / dist  # repulsion
                fx, fy = force * dx / dist, force * dy / dist
                disp[u][0] += fx
                disp[u][1] += fy
                disp[v][0] -= fx
                disp[v][1] -= fy
        for u, v in springs:
            pu, pv = pos[u], pos[v]
            dx, dy = pu[0] - pv[0], pu[1] - pv[1]
            dist = math.sqrt(dx * dx + dy * dy)
            if dist < 1e-9:
                continue
            force = dist * dist / k  # attraction
            fx, fy = force * dx / dist, force * dy / dist
            disp[u][0] -= fx
            disp[u][1] -= fy
            disp[v][0] += fx
            disp[v][1] += fy
        for v in ids:
            dx, dy = disp[v]
            length = math.sqrt(dx * dx + dy * dy)
            if length > 1e-12:
                step = min(length, temperature)
                pos[v][0] += dx / length * step
                pos[v][1] += dy / length * step
        temperature = max(temperature - cooling, 1e-4)

    return Layout(coordinates=_normalize(pos))


def _normalize(pos: dict[str, list[float]]) -> dict[str, tuple[float, float]]:
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    span_x = max(xs) - min(xs)
    span_y = max(ys) - min(ys)
    out = {}
    for v, (x, y) in pos.items():
        nx = (x - min(xs)) / span_x if span_x > 1e-12 else 0.5
        ny = (y - min(ys)) / span_y if span_y > 1e-12 else 0.5
        out[v] = (nx, ny)
    return out


def render_svg(g: Graph, layout: Layout,
               style: RenderStyle | None = None) -> bytes:
    """Render to SVG 1.1: one circle per node, one line (or loop path) per
    edge, arrowhead markers on directed edges."""
    style = style or RenderStyle()
    if set(layout.coordinates) != {n.id for n in g.nodes}:
        raise LayoutMismatch("layout coordinates do not cover the node set")

    pad = 40
    scale = VIEWBOX - 2 * pad

    def xy(node_id: str) -> tuple[float, float]:
        x, y = layout.coordinates[node_id]
        return pad + x * scale, pad + y * scale

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'viewBox="0 0 {VIEWBOX} {VIEWBOX}">']
    if g.directed:
        out.append(
            '  <defs><marker id="arrow" viewBox="0 0 10 10" refX="10" '
            'refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse">'
            '<path d="M 0 0 L 10 5 L 0 10 z" fill="#555"/></marker></defs>')
    out.append('  <rect width="100%" height="100%" fill="white"/>')

    marker = ' marker-end="url(#arrow)"' if g.directed else ""
    for e in g.edges:
        if e.source == e.target:
            x, y = xy(e.source)
            r = style.node_radius * 1.8
            out.append(
                f'  <path class="edge" d="M {x:.1f} {y:.1f} '
                f'C {x + 3 * r:.1f} {y - 3 * r:.1f} {x - 3 * r:.1f} '
                f'{y - 3 * r:.1f} {x:.1f} {y:.1f}" fill="none" '
                f'stroke="#888" stroke-width="{style.edge_width}"/>')
        else:
            x1, y1 = xy(e.source)
            x2, y2 = xy(e.target)
            if g.directed:
                # stop the line at the target's rim so the arrowhead shows
                dx, dy = x2 - x1, y2 - y1
                dist = math.hypot(dx, dy) or 1.0
                x2 -= dx / dist * style.node_radius
                y2 -= dy / dist * style.node_radius
            out.append(
                f'  <line class="edge" x1="{x1:.1f}" y1="{y1:.1f}" '
                f'x2="{x2:.1f}" y2="{y2:.1f}" stroke="#888" '
                f'stroke-width="{style.edge_width}"{marker}/>')
    for node in g.nodes:
        x, y = xy(node.id)
        out.append(f'  <circle cx="{x:.1f}" cy="{y:.1f}" '
                   f'r="{style.node_radius}" fill="#4a7fb5" '
                   f'stroke="#1d3c5c"/>')
        if style.show_labels:
            out.append(f'  <text x="{x + style.node_radius + 2:.1f}" '
                       f'y="{y:.1f}" font-size="14">'
                       f'{escape(node.effective_label)}</text>')
    out.append('</svg>')
    return ("\n".join(out) + "\n").encode("utf-8")
