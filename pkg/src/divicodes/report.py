"""Rendering of classification tables and length partitions.

Text tables mirror the paper-style layout (one row per length, one column
per dimension, leading sum column) so visual diffing is easy; the figure
variants render the same data to PNG files next to the delimited output.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bounds import LengthSet


def counts_text(counts: dict[int, dict[int, int]]) -> str:
    """Paper-layout table: n | sigma | k = kmin..kmax."""
    if not counts:
        return "(empty)\n"
    ks = sorted({k for row in counts.values() for k in row})
    head = ["   n", "  sum"] + [f"k={k}" for k in ks]
    lines = ["  ".join(h.rjust(5) for h in head)]
    for n in sorted(counts):
        row = counts[n]
        cells = [str(row.get(k, "")) for k in ks]
        total = sum(row.values())
        lines.append("  ".join(s.rjust(5) for s in [str(n), str(total)] + cells))
    return "\n".join(lines) + "\n"


def counts_tsv(counts: dict[int, dict[int, int]]) -> str:
    ks = sorted({k for row in counts.values() for k in row})
    lines = ["\t".join(["n", "total"] + [str(k) for k in ks])]
    for n in sorted(counts):
        row = counts[n]
        lines.append("\t".join(
            [str(n), str(sum(row.values()))] + [str(row.get(k, 0)) for k in ks]))
    return "\n".join(lines) + "\n"


def counts_figure(counts: dict[int, dict[int, int]], path, title: str):
    ns = sorted(counts)
    ks = sorted({k for row in counts.values() for k in row})
    grid = np.zeros((len(ns), len(ks)))
    for i, n in enumerate(ns):
        for j, k in enumerate(ks):
            grid[i, j] = counts[n].get(k, 0)
    fig, ax = plt.subplots(figsize=(1.0 + 0.6 * len(ks), 0.8 + 0.4 * len(ns)))
    shown = np.where(grid > 0, np.log10(grid + 1), np.nan)
    ax.imshow(shown, cmap="viridis", aspect="auto")
    for i in range(len(ns)):
        for j in range(len(ks)):
            if grid[i, j]:
                ax.text(j, i, str(int(grid[i, j])), ha="center", va="center",
                        fontsize=8, color="white")
    ax.set_xticks(range(len(ks)), [str(k) for k in ks])
    ax.set_yticks(range(len(ns)), [str(n) for n in ns])
    ax.set_xlabel("dimension k")
    ax.set_ylabel("length n")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def lengths_text(ls: LengthSet) -> str:
    lines = [
        f"realizable lengths of projective {1 << ls.r}-divisible binary codes",
        f"(partition of 1..{ls.limit}; every n >= {ls.threshold} is realizable)",
        "realizable: " + _ranges(sorted(ls.realizable)),
        "excluded:   " + _ranges(sorted(ls.excluded)),
        "unknown:    " + (_ranges(sorted(ls.unknown)) if ls.unknown else "(none)"),
    ]
    return "\n".join(lines) + "\n"


def lengths_figure(ls: LengthSet, path):
    colors = {"realizable": "#2a9d47", "excluded": "#c23b22", "unknown": "#e8c547"}
    fig, ax = plt.subplots(figsize=(max(6.0, ls.limit * 0.12), 1.6))
    for n in range(1, ls.limit + 1):
        if n in ls.realizable:
            c = colors["realizable"]
        elif n in ls.excluded:
            c = colors["excluded"]
        else:
            c = colors["unknown"]
        ax.bar(n, 1.0, width=0.92, color=c)
    ax.set_yticks([])
    ax.set_xlim(0.4, ls.limit + 0.6)
    ax.set_xlabel("length n")
    ax.set_title(f"LPD(2,{ls.r}) partition up to {ls.limit}")
    handles = [plt.Rectangle((0, 0), 1, 1, color=c) for c in colors.values()]
    ax.legend(handles, colors.keys(), loc="upper left", ncol=3, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _ranges(values) -> str:
    if not values:
        return "(none)"
    parts = []
    start = prev = values[0]
    for v in values[1:]:
        if v == prev + 1:
            prev = v
            continue
        parts.append(f"{start}" if start == prev else f"{start}-{prev}")
        start = prev = v
    parts.append(f"{start}" if start == prev else f"{start}-{prev}")
    return ", ".join(parts)
