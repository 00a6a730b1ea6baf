"""Figures written next to the JSON reports (headless matplotlib)."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

from .conradian import SoulApproximation  # noqa: E402
from .order_space import BallFingerprint  # noqa: E402
from .orderings import Sign, less  # noqa: E402

_SIGN_CMAP = ListedColormap(["#c0392b", "#f4f4f4", "#2471a3"])


def fingerprint_heatmap(rows: Sequence[tuple[str, BallFingerprint]], path: str | Path, title: str = "") -> Path:
    """One row per ordering, one column per ball element; blue is positive."""
    if not rows:
        raise ValueError("nothing to plot")
    columns = [w for w, _ in rows[0][1].signs]
    data = [[int(fp.as_dict().get(w, Sign.ZERO)) for w in columns] for _, fp in rows]
    width = max(4.0, 0.22 * len(columns) + 2)
    height = max(2.0, 0.28 * len(rows) + 1.5)
    fig, ax = plt.subplots(figsize=(width, height))
    ax.imshow(data, cmap=_SIGN_CMAP, vmin=-1, vmax=1, aspect="auto", interpolation="nearest")
    ax.set_yticks(range(len(rows)), [label for label, _ in rows], fontsize=7)
    if len(columns) <= 80:
        ax.set_xticks(range(len(columns)), [str(w) for w in columns], rotation=90, fontsize=6)
    else:
        ax.set_xticks([])
        ax.set_xlabel(f"{len(columns)} ball elements in canonical order")
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def soul_figure(soul: SoulApproximation, path: str | Path) -> Path:
    """Ball elements placed in increasing order; retained ones highlighted."""
    ord = soul.ordering
    elems = list(soul.retained) + list(soul.excluded)
    # insertion sort by the ordering; balls here are small
    ranked: list = []
    for x in elems:
        i = len(ranked)
        while i > 0 and less(ord, x, ranked[i - 1]):
            i -= 1
        ranked.insert(i, x)
    kept = set(soul.retained)
    fig, ax = plt.subplots(figsize=(max(4.0, 0.3 * len(ranked) + 1), 2.4))
    for i, x in enumerate(ranked):
        ax.scatter(i, 0, s=60, color="#2471a3" if x in kept else "#bbbbbb", zorder=2)
    ax.axhline(0, color="#888888", lw=0.5, zorder=1)
    ax.set_xticks(range(len(ranked)), [str(x) for x in ranked], rotation=90, fontsize=7)
    ax.set_yticks([])
    ax.set_title(f"{ord}: retained (blue) vs excluded, radius {soul.radius}", fontsize=9)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
