"""Matplotlib figures written straight to files (Agg backend)."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyBboxPatch  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

from .graph import STYLES, ladder_drawing  # noqa: E402
from .partition import Partition  # noqa: E402

_MPL_STYLE = {"solid": "-", "dotted": ":", "dashed": "--"}


def plot_ladder(lemma: str, k: int, path: str | Path) -> Path:
    d = ladder_drawing(lemma, k)
    fig, ax = plt.subplots(figsize=(3.2, 1.0 + 0.55 * (k + 3)))
    for name in ("aux", "delta", "gamma", "beta"):
        st = STYLES[name]
        color = st["color"].replace("grey60", "0.6")
        for u, v in d.edges[name]:
            (x0, y0), (x1, y1) = d.pos[u], d.pos[v]
            ax.plot([x0, x1], [y0, y1], _MPL_STYLE[st["style"]], color=color,
                    lw=float(st["penwidth"]), label=name if (u, v) == d.edges[name][0] else None)
    for block in d.clusters:
        xs = [d.pos[x][0] for x in block]
        ys = [d.pos[x][1] for x in block]
        ax.add_patch(FancyBboxPatch((min(xs) - 0.25, min(ys) - 0.25), max(xs) - min(xs) + 0.5,
                                    max(ys) - min(ys) + 0.5, boxstyle="round,pad=0.05,rounding_size=0.3",
                                    fill=False, lw=1.0))
    for x, (px, py) in d.pos.items():
        ax.plot(px, py, "o", color="white", mec="black", ms=14, zorder=3)
        ax.text(px, py, d.labels[x], ha="center", va="center", fontsize=7, zorder=4)
    ax.set_title(f"{lemma}, k={k}", fontsize=9)
    ax.set_aspect("equal")
    ax.axis("off")
    handles, names = ax.get_legend_handles_labels()
    ax.legend(handles[::-1], names[::-1], loc="upper left", bbox_to_anchor=(1.0, 1.0), fontsize=7,
              frameon=False)
    path = Path(path)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_growth(store: Sequence[Partition], born: Sequence[int], path: str | Path,
                title: str = "") -> Path:
    """Stored elements and atoms against pair operations."""
    ops = list(born)
    atoms, count = [], 0
    for p in store:
        count += p.n - p.num_blocks() == 1
        atoms.append(count)
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.step(ops, range(1, len(ops) + 1), where="post", label="elements")
    ax.step(ops, atoms, where="post", label="atoms")
    ax.set_xlabel("pair operations")
    ax.set_ylabel("count")
    if ops and max(ops) > 0:
        ax.set_xscale("symlog")
    ax.set_yscale("log")
    ax.legend(fontsize=8)
    if title:
        ax.set_title(title, fontsize=9)
    path = Path(path)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_sweep(rows: Sequence[dict], path: str | Path) -> Path:
    """Pair operations per (n, shape) from a construction sweep."""
    fig, ax = plt.subplots(figsize=(5, 3.2))
    shapes = sorted({r["shape"] for r in rows})
    for shape in shapes:
        pts = sorted((r["n"], r["pair_ops"]) for r in rows if r["shape"] == shape)
        ax.plot([p[0] for p in pts], [max(p[1], 1) for p in pts], "o-", label=shape)
    ax.set_xlabel("n")
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.set_ylabel("pair operations to verdict")
    ax.set_yscale("log")
    ax.legend(fontsize=8)
    path = Path(path)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path
