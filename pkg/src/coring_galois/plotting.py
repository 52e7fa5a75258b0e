"""Figures for CLI reports (matplotlib, non-interactive backend)."""
from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.colors import TwoSlopeNorm

STATUS_COLORS = {"pass": "#2e7d32", "fail": "#c62828", "error": "#6d6d6d"}


def _safe(name: str) -> str:
    return "".join(c if c.isalnum() or c in "-_." else "_" for c in name)


def matrix_figure(values: list[list[float]], title: str, path: str) -> str:
    """Entry pattern of an exact matrix: colour by value, blank where zero."""
    fig, ax = plt.subplots(figsize=(4.5, 4.5), dpi=100)
    rows = len(values)
    cols = len(values[0]) if rows else 0
    flat = [abs(v) for r in values for v in r]
    bound = max(flat) if flat and max(flat) > 0 else 1.0
    masked = [[v if v != 0 else float("nan") for v in r] for r in values] if rows and cols else [[float("nan")]]
    im = ax.imshow(masked, cmap="coolwarm", norm=TwoSlopeNorm(0.0, -bound, bound), interpolation="nearest")
    ax.set_title(title, fontsize=9)
    ax.set_xlabel(f"source basis ({cols})")
    ax.set_ylabel(f"target basis ({rows})")
    fig.colorbar(im, ax=ax, shrink=0.7)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def summary_figure(records: list[dict], path: str) -> str:
    """One bar per task: source and target dimensions, with rank where a map was measured."""
    fig, ax = plt.subplots(figsize=(max(4.0, 0.9 * len(records) + 2), 3.6), dpi=100)
    labels = []
    for i, rec in enumerate(records):
        dims = rec.get("plot", {})
        src, dst, rank = dims.get("source"), dims.get("target"), dims.get("rank")
        color = STATUS_COLORS.get(rec["status"], "#000000")
        if src is not None:
            ax.bar(i - 0.2, src, width=0.2, color="#90a4ae")
        if dst is not None:
            ax.bar(i, dst, width=0.2, color="#546e7a")
        if rank is not None:
            ax.bar(i + 0.2, rank, width=0.2, color=color)
        ax.plot([i], [0], marker="o", color=color)
        labels.append(f"{rec['index']}:{rec['command']}\n{rec['target']}")
    ax.set_xticks(range(len(records)))
    ax.set_xticklabels(labels, fontsize=7)
    ax.set_ylabel("dimension / rank")
    ax.set_title("task dimensions (grey) and ranks (status colour)", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def render(records: list[dict], matrices: dict[int, tuple[str, list[list[float]]]], outdir: str) -> list[str]:
    os.makedirs(outdir, exist_ok=True)
    paths = []
    for index in sorted(matrices):
        title, values = matrices[index]
        rec = records[index]
        name = _safe(f"{index:02d}_{rec['command']}_{rec['target']}.png")
        paths.append(matrix_figure(values, title, os.path.join(outdir, name)))
    if records:
        paths.append(summary_figure(records, os.path.join(outdir, "summary.png")))
    return paths
