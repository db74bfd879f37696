"""Figure and delimited-file rendering for reports and training histories.

Everything draws through the Agg backend so the report path works headless;
figures land next to the delimited outputs they illustrate.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .evaluation import GainReport  # noqa: E402


def reports_to_csv(reports: Sequence[GainReport]) -> str:
    """Comparison table as CSV: one row per boss plus the harmonic Mean row."""
    header = ["boss"] + [r.agent_name for r in reports]
    lines = [",".join(header)]
    n_bosses = max((len(r.per_boss_gains) for r in reports), default=0)
    for i in range(n_bosses):
        lines.append(",".join([str(i + 1)] + [f"{r.per_boss_gains[i]:.2f}" for r in reports]))
    if reports:
        lines.append(",".join(["mean"] + [f"{r.harmonic:.2f}" for r in reports]))
    return "\n".join(lines) + "\n"


def save_gain_chart(reports: Sequence[GainReport], path: Path | str) -> None:
    """Grouped per-boss gain bars, one group per boss, one color per agent;
    dashed lines mark each agent's harmonic mean."""
    n_bosses = max((len(r.per_boss_gains) for r in reports), default=8)
    fig, ax = plt.subplots(figsize=(9, 4.5))
    width = 0.8 / max(len(reports), 1)
    for j, r in enumerate(reports):
        xs = [i + j * width for i in range(n_bosses)]
        bars = ax.bar(xs, r.per_boss_gains, width=width, label=r.agent_name)
        ax.axhline(r.harmonic, color=bars[0].get_facecolor(), linestyle="--",
                   linewidth=1, alpha=0.7)
    ax.set_xticks([i + 0.4 - width / 2 for i in range(n_bosses)])
    ax.set_xticklabels([str(i + 1) for i in range(n_bosses)])
    ax.set_xlabel("Boss")
    ax.set_ylabel("Mean gain")
    ax.set_ylim(0, 205)
    ax.legend()
    ax.set_title("Per-boss gain (dashed: harmonic mean)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_history_chart(records: Sequence[dict], path: Path | str) -> None:
    """Fitness curves over generations from parsed history records."""
    gens = [r["generation"] for r in records]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for key in ("best", "mean", "worst"):
        ax.plot(gens, [r[key] for r in records], label=key)
    ax.set_xlabel("Generation")
    ax.set_ylabel("Fitness (gain)")
    ax.legend()
    ax.set_title("Training progress")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
