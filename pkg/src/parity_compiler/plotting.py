"""Benchmark figures (depth and cancellation versus chip size)."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .analysis import BenchRow, asymptotic_cancellation, depth_bound  # noqa: E402

__all__ = ["plot_depth", "plot_cancellation", "write_figures"]


def _series(rows: Sequence[BenchRow]):
    by_key: dict[tuple[float, int], list[BenchRow]] = {}
    for row in rows:
        by_key.setdefault((row.r3, row.d), []).append(row)
    for key in sorted(by_key):
        yield key, sorted(by_key[key], key=lambda r: r.n)


def plot_depth(rows: Sequence[BenchRow], path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    ds = sorted({r.d for r in rows})
    for (r3, d), series in _series(rows):
        label = f"r3={r3:g}" + (f", d={d}" if len(ds) > 1 else "")
        ax.errorbar([r.n for r in series], [r.mean_depth for r in series],
                    yerr=[r.std_depth for r in series], marker="o", capsize=3, label=label)
    for d in ds:
        ax.axhline(depth_bound(d), ls="--", color="gray", lw=1)
        ax.annotate(f"bound d={d}", (0.01, depth_bound(d)), xycoords=("axes fraction", "data"),
                    va="bottom", fontsize=8, color="gray")
    ax.set_xlabel("n (qubits per side)")
    ax.set_ylabel("two-qubit depth")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_cancellation(rows: Sequence[BenchRow], path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    ds = sorted({r.d for r in rows})
    for (r3, d), series in _series(rows):
        label = f"r3={r3:g}" + (f", d={d}" if len(ds) > 1 else "")
        line = ax.errorbar([r.n for r in series], [r.mean_cancel_rate for r in series],
                           yerr=[r.std_cancel_rate for r in series], marker="o", capsize=3, label=label)
        ax.axhline(asymptotic_cancellation(r3), ls="--", lw=1, color=line[0].get_color())
    ax.set_xlabel("n (qubits per side)")
    ax.set_ylabel("cancellation rate")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_figures(rows: Sequence[BenchRow], csv_path: str | Path) -> list[Path]:
    """Write both figures next to ``csv_path`` as ``<stem>_depth.png`` and ``<stem>_cancel.png``."""
    csv_path = Path(csv_path)
    base = csv_path.with_suffix("")
    return [
        plot_depth(rows, f"{base}_depth.png"),
        plot_cancellation(rows, f"{base}_cancel.png"),
    ]
