"""Figure rendering for suite reports and counterexamples.

Everything here writes PNG files next to the text reports; the layout is a
plain circle, which is all these desk-scale graphs need.
"""

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .graph import Graph
from .lab import SuiteReport, Violation

_PNG_META = {"Software": "gmwis"}


def _positions(n: int) -> list[tuple[float, float]]:
    if n == 1:
        return [(0.0, 0.0)]
    return [
        (math.cos(2 * math.pi * i / n - math.pi / 2), math.sin(2 * math.pi * i / n - math.pi / 2))
        for i in range(n)
    ]


def draw_graph(g: Graph, ax=None, highlight=(), accent=()):
    """Draw on a circular layout; highlighted vertices get a filled accent."""
    if ax is None:
        _, ax = plt.subplots(figsize=(4, 4))
    pos = _positions(g.n)
    highlight = set(highlight)
    accent = set(accent)
    for u, v in g.edges():
        inner = u in highlight and v in highlight
        ax.plot(
            [pos[u][0], pos[v][0]],
            [pos[u][1], pos[v][1]],
            color="#c0392b" if inner else "0.6",
            linewidth=2.0 if inner else 1.0,
            zorder=1,
        )
    for v in range(g.n):
        if v in accent:
            face, edge = "#2980b9", "#1b4f72"
        elif v in highlight:
            face, edge = "#e74c3c", "#922b21"
        else:
            face, edge = "white", "0.3"
        ax.scatter([pos[v][0]], [pos[v][1]], s=340, c=face, edgecolors=edge, zorder=2)
        ax.annotate(
            str(v + 1), pos[v], ha="center", va="center", fontsize=9, zorder=3
        )
    ax.set_aspect("equal")
    ax.set_axis_off()
    ax.set_xlim(-1.35, 1.35)
    ax.set_ylim(-1.35, 1.35)
    return ax


def save_violation_figure(v: Violation, path) -> None:
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    highlight = set(v.embedding or ()) | set(v.hole or ())
    accent = set()
    if v.vertex is not None:
        accent.add(v.vertex)
    if v.outsider is not None:
        accent.add(v.outsider)
    draw_graph(v.graph, ax=ax, highlight=highlight, accent=accent)
    title = f"{v.suite} sample {v.sample_index}: {v.kind}"
    if v.pattern:
        title += f" ({v.pattern})"
    ax.set_title(title, fontsize=10)
    fig.savefig(path, dpi=120, bbox_inches="tight", metadata=_PNG_META)
    plt.close(fig)


def save_samples_figure(report: SuiteReport, path) -> None:
    """Bar chart of verified sample sizes, written alongside the report."""
    fig, ax = plt.subplots(figsize=(5, 3))
    sizes = sorted(set(report.sample_sizes))
    counts = [report.sample_sizes.count(s) for s in sizes]
    ax.bar([str(s) for s in sizes], counts, color="#5dade2", edgecolor="#1b4f72")
    ax.set_xlabel("vertices")
    ax.set_ylabel("samples verified")
    ax.set_title(f"suite {report.suite}: {report.verified} samples ({report.status})", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)
