"""Figure rendering for the table report path."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def render_bounds_figure(
    cells: dict[tuple[int, int, str], float],
    variants: list[str],
    path: str | Path,
    best_known: dict[tuple[int, int], int] | None = None,
) -> Path:
    """One panel per distance: log2 of each variant's bound against n.

    `cells` maps (n, d, variant label) to the bound value (already the r-th
    root for the product objective).  Matches the CSV the table command wrote.
    """
    ds = sorted({d for (_, d, _) in cells})
    if not ds:
        raise ValueError("nothing to plot")
    ncols = min(3, len(ds))
    nrows = (len(ds) + ncols - 1) // ncols
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(4.2 * ncols, 3.4 * nrows), squeeze=False
    )
    for k, d in enumerate(ds):
        ax = axes[k // ncols][k % ncols]
        ns = sorted({n for (n, dd, _) in cells if dd == d})
        for label in variants:
            xs = [n for n in ns if (n, d, label) in cells]
            ys = [math.log2(cells[(n, d, label)]) for n in xs]
            if xs:
                ax.plot(xs, ys, marker="o", markersize=3, label=label)
        if best_known:
            xs = [n for n in ns if (n, d) in best_known]
            ys = [best_known[(n, d)] for n in xs]
            if xs:
                ax.plot(xs, ys, linestyle="--", color="gray", label="best known")
        ax.set_title(f"d = {d}")
        ax.set_xlabel("n")
        ax.set_ylabel("log2 bound")
        ax.grid(True, alpha=0.3)
        if k == 0:
            ax.legend(fontsize=8)
    for k in range(len(ds), nrows * ncols):
        axes[k // ncols][k % ncols].axis("off")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
