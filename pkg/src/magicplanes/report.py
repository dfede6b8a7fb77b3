"""Figures written next to the CSV/text outputs of the CLI."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

from .incidence import IncidenceMatrix  # noqa: E402
from .oracle import CyclicVerdict  # noqa: E402


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # fixed metadata keeps repeated renders byte-identical
    fig.savefig(path, dpi=120, bbox_inches="tight", metadata={"Software": None} if path.suffix == ".png" else None)
    plt.close(fig)
    return path


def cyclic_figure(verdicts: list[CyclicVerdict], path) -> Path:
    """Largest image of a line-invariant labeling against gcd(n, m), one bar per modulus."""
    ms = [v.m for v in verdicts]
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6, 5), sharex=True)
    ax1.bar(ms, [v.max_image_size for v in verdicts], color="0.6", label="largest image")
    ax1.plot(ms, [v.gcd for v in verdicts], "k_", markersize=14, mew=2, label="gcd(n, m)")
    ax1.set_ylabel("distinct values")
    ax1.yaxis.set_major_locator(MaxNLocator(integer=True))
    ax1.legend(frameon=False, fontsize=8)
    ax2.semilogy(ms, [v.count_line_invariant for v in verdicts], "ko-", ms=4)
    ax2.set_ylabel("line-invariant labelings")
    ax2.set_xlabel("modulus m")
    ax2.set_xticks(ms)
    order = verdicts[0].order if verdicts else "?"
    ax1.set_title(f"labelings into Z/m, plane of order {order}")
    return _save(fig, path)


def incidence_figure(a: IncidenceMatrix, path, gram: list[list[int]] | None = None) -> Path:
    panels = 2 if gram is not None else 1
    fig, axes = plt.subplots(1, panels, figsize=(3.2 * panels, 3.2))
    axes = [axes] if panels == 1 else list(axes)
    axes[0].imshow(a.rows, cmap="Greys", interpolation="nearest")
    axes[0].set_title("A (lines x points)", fontsize=9)
    if gram is not None:
        im = axes[1].imshow(gram, cmap="viridis", interpolation="nearest")
        axes[1].set_title("A A^T", fontsize=9)
        fig.colorbar(im, ax=axes[1], fraction=0.046)
    for ax in axes:
        ax.set_xticks([])
        ax.set_yticks([])
    return _save(fig, path)
