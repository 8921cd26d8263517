"""Figure-file rendering for presenting graphs and path-circular instances.

Layouts are purely positional (vertices on a circle in declaration order),
so rendering the same object twice produces identical files.
"""

from __future__ import annotations

import math
from pathlib import Path

from matplotlib.figure import Figure

from .contraction import PresentingGraph
from .pathcircular import PathCircularInstance

__all__ = ["save_presenting_graph", "save_instance"]

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _ring(count: int) -> list[tuple[float, float]]:
    if count == 1:
        return [(0.0, 0.0)]
    return [
        (math.cos(math.pi / 2 - 2 * math.pi * i / count),
         math.sin(math.pi / 2 - 2 * math.pi * i / count))
        for i in range(count)
    ]


def save_presenting_graph(graph: PresentingGraph, target: str | Path) -> None:
    """Render the presenting graph to an image file."""
    fig = Figure(figsize=(4.5, 4.5))
    ax = fig.add_subplot(111)
    spots = dict(zip(graph.vertices, _ring(len(graph.vertices))))
    for u, v in graph.sorted_edges():
        (x1, y1), (x2, y2) = spots[u], spots[v]
        ax.plot([x1, x2], [y1, y2], color="0.35", linewidth=1.4, zorder=1)
    for pos, v in enumerate(graph.vertices):
        x, y = spots[v]
        ax.scatter([x], [y], s=260, color="white", edgecolor="black", zorder=2)
        ax.annotate(str(v), (x, y), ha="center", va="center", fontsize=9, zorder=3)
        contents = "{%s}" % ",".join(graph.set_labels[pos])
        ax.annotate(
            contents, (1.22 * x, 1.22 * y), ha="center", va="center", fontsize=8
        )
    ax.set_title(f"pivot {graph.pivot}", fontsize=10)
    ax.set_xlim(-1.6, 1.6)
    ax.set_ylim(-1.6, 1.6)
    ax.set_aspect("equal")
    ax.set_axis_off()
    fig.savefig(target, dpi=150)


def save_instance(instance: PathCircularInstance, target: str | Path) -> None:
    """Render the host graph to an image file, with the paths as a legend."""
    fig = Figure(figsize=(5.5, 4.5))
    ax = fig.add_subplot(111)
    spots = dict(zip(instance.graph.vertices, _ring(len(instance.graph.vertices))))
    for u, v in instance.graph.sorted_edges():
        (x1, y1), (x2, y2) = spots[u], spots[v]
        ax.plot([x1, x2], [y1, y2], color="0.6", linewidth=1.2, zorder=1)
    for i, (name, path) in enumerate(zip(instance.names, instance.paths)):
        color = _PALETTE[i % len(_PALETTE)]
        xs = [spots[v][0] for v in path.vertices]
        ys = [spots[v][1] for v in path.vertices]
        chain = "-".join(path.vertices) if path.vertices else "(null)"
        if len(xs) >= 2:
            ax.plot(xs, ys, color=color, linewidth=2.2, alpha=0.7, zorder=2,
                    label=f"{name}: {chain}")
        elif xs:
            ax.scatter(xs, ys, s=90, color=color, zorder=2, label=f"{name}: {chain}")
        else:
            ax.plot([], [], color=color, label=f"{name}: {chain}")
    for v in instance.graph.vertices:
        x, y = spots[v]
        ax.scatter([x], [y], s=220, color="white", edgecolor="black", zorder=3)
        ax.annotate(v, (x, y), ha="center", va="center", fontsize=9, zorder=4)
    if instance.names:
        ax.legend(loc="center left", bbox_to_anchor=(1.02, 0.5), fontsize=8)
    ax.set_xlim(-1.5, 1.5)
    ax.set_ylim(-1.5, 1.5)
    ax.set_aspect("equal")
    ax.set_axis_off()
    fig.savefig(target, dpi=150, bbox_inches="tight")
