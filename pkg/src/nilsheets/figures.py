"""Draw representative diagrams with matplotlib (Agg backend, files only)."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .diagrams import DiagramSpec, diagram_of  # noqa: E402
from .rootsystem import RootSystem  # noqa: E402

__all__ = ["draw_diagram", "render_representatives"]


def _layout(spec: DiagramSpec) -> list[tuple[float, float]]:
    n = spec.node_count
    if n <= 1:
        return [(0.0, 0.0)] * n
    # a path is drawn on a line, anything else on a circle
    deg = [spec.degree(v) for v in range(n)]
    if len(spec.edges) == n - 1 and max(deg) <= 2:
        adj = {v: [] for v in range(n)}
        for i, j, _ in spec.edges:
            adj[i].append(j)
            adj[j].append(i)
        start = next(v for v in range(n) if deg[v] <= 1)
        order, prev, cur = [start], None, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            order.append(cur)
        pos = [(0.0, 0.0)] * n
        for x, v in enumerate(order):
            pos[v] = (float(x), 0.0)
        return pos
    return [(math.cos(2 * math.pi * v / n), math.sin(2 * math.pi * v / n)) for v in range(n)]


def draw_diagram(spec: DiagramSpec, labels: list[str] | None = None, title: str = "", ax=None):
    own = ax is None
    if own:
        fig, ax = plt.subplots(figsize=(3.2, 2.2))
    pos = _layout(spec)
    for i, j, k in sorted(spec.edges):
        (x0, y0), (x1, y1) = pos[i], pos[j]
        dx, dy = x1 - x0, y1 - y0
        norm = math.hypot(dx, dy) or 1.0
        ox, oy = -dy / norm * 0.06, dx / norm * 0.06
        style = ":" if (i, j) in spec.dotted else "-"
        for m in range(k):
            off = m - (k - 1) / 2
            ax.plot([x0 + off * ox, x1 + off * ox], [y0 + off * oy, y1 + off * oy],
                    style, color="black", lw=1.2, zorder=1)
    for v, (x, y) in enumerate(pos):
        face = "black" if v in spec.long_nodes else "white"
        ax.scatter([x], [y], s=160, facecolors=face, edgecolors="black", zorder=2)
        text = labels[v] if labels else str(v + 1)
        ax.annotate(text, (x, y), textcoords="offset points", xytext=(0, 9), ha="center", fontsize=8)
    ax.set_title(title, fontsize=9)
    ax.set_aspect("equal")
    ax.margins(0.3)
    ax.axis("off")
    if own:
        return fig
    return ax


def render_representatives(rs: RootSystem, records, outdir) -> list[Path]:
    """One PNG per sheet that has a representative; returns the paths written."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for n, rec in enumerate(records, 1):
        rep = rec.representative
        if rep is None or not rep.roots:
            continue
        coords = [rs.positive_roots[r - 1] for r in rep.roots]
        spec = diagram_of(rs, coords)
        title = f"{rec.induced.name()}  [{rs.format_labels(rec.sheet_diagram.labels)}]"
        fig = draw_diagram(spec, [str(r) for r in rep.roots], title)
        path = outdir / f"{rs}_sheet{n:02d}.png"
        fig.savefig(path, dpi=120, bbox_inches="tight")
        plt.close(fig)
        written.append(path)
    return written
