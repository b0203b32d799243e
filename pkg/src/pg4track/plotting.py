"""Figures written next to the CSV report."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import ScalarFormatter  # noqa: E402

SERIES = (
    ("upper_bound", "counting upper bound", "s-"),
    ("size", "N u V (2q+1)", "o-"),
    ("elliptic_size", "elliptic NMDS length", "^--"),
)


def size_figure(rows: Sequence[dict], path: str | Path, width: float = 6.0) -> Path:
    """Track sizes against q on log-log axes."""
    path = Path(path)
    qs = [r["q"] for r in rows]
    fig, ax = plt.subplots(figsize=(width, width * 0.62))
    for key, label, style in SERIES:
        ax.plot(qs, [r[key] for r in rows], style, label=label, lw=1.2, ms=4)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.xaxis.set_major_formatter(ScalarFormatter())
    ax.xaxis.set_minor_formatter(ScalarFormatter())
    ax.set_xlabel("q")
    ax.set_ylabel("points")
    ax.set_title("Tracks in PG(4,q)")
    ax.legend(frameon=False, fontsize=9)
    ax.grid(True, which="both", alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def curve_count_figure(q: int, counts: Sequence[int], path: str | Path, slack: int) -> Path:
    """Histogram of affine point counts on v^2 = 3F(u) with the Hasse-Weil window."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.0, 3.7))
    ax.hist(counts, bins=min(30, max(5, len(set(counts)))), color="0.4")
    for x in (q + 1 - slack, q + 1 + slack):
        ax.axvline(x, color="C3", lw=1, ls="--")
    ax.set_xlabel("affine points")
    ax.set_ylabel("targets")
    ax.set_title(f"v^2 = 3F(u) over F_{q}")
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path
