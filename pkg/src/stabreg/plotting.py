"""Optional rendering of sampled root locus curves to image files.

The CLI's primary plotting interface is the CSV stream; this module adds a
convenience renderer so a sampling run can drop a figure next to the data.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .rlc.curve import SampleReport


def plot_samples(report: SampleReport, path: str, title: str = "") -> None:
    """Scatter the curve samples by branch and write the figure to path."""
    fig, ax = plt.subplots(figsize=(7, 7))
    branches: dict[int, tuple[list, list]] = {}
    for s in report.samples:
        xs, ys = branches.setdefault(s.branch, ([], []))
        xs.append(float(s.re))
        ys.append(float(s.im))
    for branch, (xs, ys) in sorted(branches.items()):
        if branch < 0:
            ax.plot(xs, ys, "x", ms=6, label=f"M-1 point {-branch}")
        else:
            ax.plot(xs, ys, ".", ms=1.5, label=f"branch {branch}")
    ax.axhline(0, color="gray", lw=0.5)
    ax.axvline(0, color="gray", lw=0.5)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_aspect("equal", adjustable="datalim")
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
