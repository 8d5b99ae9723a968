"""Matplotlib rendering of the eigenvalue and |W| tables.

Figures are written as SVG with fixed metadata and hash salt so repeated
runs give identical files.  Every drawn series carries a ``gid`` so tests
and downstream tooling can find it in the SVG.
"""

from __future__ import annotations

import math
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

MARKERS = ("o", "s", "D", "^", "v", "p")
_RC = {
    "svg.hashsalt": "phasebell",
    "svg.fonttype": "none",
    "font.size": 11,
    "axes.linewidth": 0.8,
    "lines.markersize": 5,
}


def _radius_label(R: float) -> str:
    if abs(R - 1 / math.sqrt(2)) < 1e-12:
        return r"$R=1/\sqrt{2}$"
    return f"$R={R:g}$"


def _figure(width=5.0, height=None):
    golden = (math.sqrt(5) - 1.0) / 2.0
    fig, ax = plt.subplots(figsize=(width, height or width * golden))
    return fig, ax


def _bound_line(ax):
    ax.axhline(1.0, color="0.3", lw=0.9, ls="--", gid="lhv-bound", label="LHV bound")


def _save(fig, path):
    path = Path(path)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    return path


def plot_figure1(rows, path):
    """|1 - 2 lambda_m| against m, one marker series per disk radius."""
    by_radius = defaultdict(list)
    for row in rows:
        by_radius[float(row.R)].append((int(row.m), float(row.abs_bell_value)))
    with plt.rc_context(_RC):
        fig, ax = _figure()
        for i, R in enumerate(sorted(by_radius)):
            pts = sorted(by_radius[R])
            ax.plot([m for m, _ in pts], [v for _, v in pts], ls="none",
                    marker=MARKERS[i % len(MARKERS)], mfc="none",
                    gid=f"series-R{i}", label=_radius_label(R))
        _bound_line(ax)
        ax.set_xlabel("$m$")
        ax.set_ylabel(r"$|1-2\lambda_m(R)|$")
        ax.legend(frameon=False, fontsize=9)
        return _save(fig, path)


def plot_figure2(rows, path):
    """Integral of |W_m| against m."""
    rows = sorted((int(m), float(v)) for m, v in rows)
    with plt.rc_context(_RC):
        fig, ax = _figure()
        ax.plot([m for m, _ in rows], [v for _, v in rows], marker="o", lw=0.8,
                gid="series-abs-wigner", label=r"$\int d^2x\,|W_m(x)|$")
        _bound_line(ax)
        ax.set_xlabel("$m$")
        ax.set_ylabel(r"$\int d^2x\,|W_m|$")
        ax.legend(frameon=False, fontsize=9)
        return _save(fig, path)
