"""Figures for the CLI report path (non-interactive backend)."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .exactmat import Mat  # noqa: E402

_COLORS = {"pass": "#3a7d44", "fail": "#b8342b", "inconclusive": "#c9a227"}


def plot_reports(reports: Sequence, path: str | Path) -> Path:
    """Horizontal bar chart of instances checked per law, coloured by status."""
    path = Path(path)
    laws = [r.law for r in reports]
    counts = [max(r.instances_checked, 1) for r in reports]
    colors = [_COLORS.get(r.status, "grey") for r in reports]
    fig, ax = plt.subplots(figsize=(7, 0.35 * len(reports) + 1.2))
    ax.barh(range(len(laws)), counts, color=colors)
    ax.set_yticks(range(len(laws)), laws)
    ax.invert_yaxis()
    if max(counts, default=1) > 20 * min(counts, default=1):
        ax.set_xscale("log")
    ax.set_xlabel("instances checked")
    for y, r in enumerate(reports):
        ax.text(counts[y], y, f" {r.status}", va="center", fontsize=8)
    handles = [plt.Rectangle((0, 0), 1, 1, color=c) for c in _COLORS.values()]
    ax.legend(handles, list(_COLORS), loc="upper left", bbox_to_anchor=(1.0, 1.0), fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_matrix(m: Mat, path: str | Path, title: str = "") -> Path:
    """Image of the real part of ``m`` (black = 1)."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(4, 4))
    data = [[float(s.re) for s in row] for row in m.entries()] if not m.is_empty else [[0.0]]
    ax.imshow(data, cmap="Greys", vmin=0, vmax=1, interpolation="nearest")
    ax.set_xticks(range(m.cols))
    ax.set_yticks(range(m.rows))
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
