"""Competition scoring: per-match gain, the 8-boss gauntlet, and ranking.

A match is scored by energy gain,

    gain = 100.01 + ep - ee

with ep/ee the final player/enemy energies in [0, 100]; the 100.01 offset
keeps every gain strictly positive so the cross-boss harmonic mean is
always defined.  Contestants are ranked by the harmonic mean of their mean
gain over all eight bosses, which punishes doing badly against any single
one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .bosses import ROSTER_VERSION
from .engine import Controller, MatchResult, run_match
from .rng import derive_seed
from .state import DEFAULT_CONFIG, MatchConfig

GAIN_MIN = 0.01
GAIN_MAX = 200.01
REPORT_FORMAT_VERSION = 1


def gain(ep: float, ee: float) -> float:
    """Energy gain of a finished match. Strictly positive on the valid domain."""
    if not 0 <= ep <= 100:
        raise ValueError(f"ep must be in [0, 100], got {ep}")
    if not 0 <= ee <= 100:
        raise ValueError(f"ee must be in [0, 100], got {ee}")
    return 100.01 + ep - ee


def match_gain(result: MatchResult) -> float:
    return gain(result.player_energy, result.enemy_energy)


def harmonic_mean(values: Sequence[float]) -> float:
    """n / sum(1/v). Defined only for strictly positive values."""
    if not values:
        raise ValueError("harmonic_mean of an empty sequence")
    acc = 0.0
    for v in values:
        if v <= 0:
            raise ValueError(f"harmonic_mean requires positive values, got {v}")
        acc += 1.0 / v
    return len(values) / acc


@dataclass(frozen=True)
class GainReport:
    """Table-shaped result of one agent against the full roster."""

    agent_name: str
    per_boss_gains: tuple[float, ...]   # mean gain per boss, ids 1..8 in order
    per_boss_wins: tuple[int, ...]      # repetitions won (enemy at 0) per boss
    repetitions: int
    harmonic: float
    roster_version: str = ROSTER_VERSION

    @property
    def wins(self) -> int:
        """Bosses defeated in every repetition (mean enemy energy zero)."""
        return sum(1 for w in self.per_boss_wins if w == self.repetitions)


def evaluate_all(controller: Controller, config: MatchConfig = DEFAULT_CONFIG,
                 repetitions: int = 1, seed: int = 0,
                 agent_name: str = "agent") -> GainReport:
    """Run the full gauntlet: every boss, `repetitions` matches each.

    Match seeds derive from (seed, boss, repetition), so reports are
    reproducible and independent of evaluation order.  Per-boss gains are
    the arithmetic mean of the repetition gains (equivalent to gain of the
    mean energies, the gain formula being affine); the headline number is
    the harmonic mean across bosses, computed in fixed boss order.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    n_bosses = len(config.roster) if config.roster is not None else 8
    gains = []
    wins = []
    for boss_id in range(1, n_bosses + 1):
        total = 0.0
        won = 0
        for rep in range(repetitions):
            r = run_match(controller, boss_id, config,
                          seed=derive_seed(seed, boss_id, rep))
            total += match_gain(r)
            won += int(r.enemy_energy == 0)
        gains.append(total / repetitions)
        wins.append(won)
    return GainReport(
        agent_name=agent_name,
        per_boss_gains=tuple(gains),
        per_boss_wins=tuple(wins),
        repetitions=repetitions,
        harmonic=harmonic_mean(gains),
    )


def render_report(reports: Sequence[GainReport]) -> str:
    """Plain-text table: one row per boss plus a harmonic 'Mean' row, one
    column per report, values to 2 decimals."""
    names = [r.agent_name for r in reports]
    header = ["Boss"] + names
    n_bosses = max((len(r.per_boss_gains) for r in reports), default=0)
    rows: list[list[str]] = []
    for i in range(n_bosses):
        rows.append([str(i + 1)] + [f"{r.per_boss_gains[i]:.2f}" for r in reports])
    if reports:
        rows.append(["Mean"] + [f"{r.harmonic:.2f}" for r in reports])
    widths = [max(len(header[c]), *(len(row[c]) for row in rows)) if rows else len(header[c])
              for c in range(len(header))]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(v.rjust(w) for v, w in zip(row, widths)))
    return "\n".join(lines) + "\n"


def report_to_json(report: GainReport) -> str:
    doc = {
        "format_version": REPORT_FORMAT_VERSION,
        "agent_name": report.agent_name,
        "roster_version": report.roster_version,
        "repetitions": report.repetitions,
        "per_boss": [
            {"boss": i + 1, "mean_gain": g, "wins": w}
            for i, (g, w) in enumerate(zip(report.per_boss_gains, report.per_boss_wins))
        ],
        "harmonic_mean": report.harmonic,
    }
    return json.dumps(doc, indent=2) + "\n"


def report_from_json(text: str) -> GainReport:
    doc = json.loads(text)
    if doc.get("format_version") != REPORT_FORMAT_VERSION:
        raise ValueError(f"unsupported report format_version: {doc.get('format_version')!r}")
    per_boss = doc["per_boss"]
    return GainReport(
        agent_name=doc["agent_name"],
        per_boss_gains=tuple(float(e["mean_gain"]) for e in per_boss),
        per_boss_wins=tuple(int(e["wins"]) for e in per_boss),
        repetitions=int(doc["repetitions"]),
        harmonic=float(doc["harmonic_mean"]),
        roster_version=doc.get("roster_version", ROSTER_VERSION),
    )
