"""Scoring protocol: gain formula, harmonic mean, gauntlet, report table."""

from __future__ import annotations

import dataclasses

import pytest
from hypothesis import given, strategies as st

from evoman.bosses import default_roster
from evoman.controllers import IdleController
from evoman.engine import run_match
from evoman.evaluation import (
    GainReport,
    evaluate_all,
    gain,
    harmonic_mean,
    match_gain,
    render_report,
    report_from_json,
    report_to_json,
)
from evoman.rng import derive_seed
from evoman.state import MatchConfig

# Published baseline gains for seven algorithms against the eight bosses;
# the Mean row of that table is the harmonic mean of each column.
BASELINE_COLUMNS = {
    "NEAT": [190.01, 194.01, 180.01, 194.01, 194.01, 173.01, 177.01, 186.01],
    "GAP": [190.01, 190.01, 158.01, 93.51, 180.01, 79.01, 170.01, 177.01],
    "GA10": [190.01, 182.01, 158.01, 118.01, 188.01, 77.51, 156.01, 183.01],
    "GA50": [190.01, 178.01, 136.01, 169.01, 179.01, 103.01, 118.01, 178.01],
    "LOP": [0.01, 190.01, 124.01, 73.01, 178.01, 139.01, 186.01, 0.01],
    "LO10": [196.01, 182.01, 70.51, 36.51, 181.01, 128.01, 169.01, 182.01],
    "LO50": [80.01, 188.01, 116.01, 119.01, 188.01, 20.01, 190.01, 183.01],
}
BASELINE_MEANS = {
    "NEAT": 185.67, "GAP": 139.64, "GA10": 143.74, "GA50": 149.43,
    "LOP": 0.04, "LO10": 104.01, "LO50": 79.32,
}


# ---------------------------------------------------------------------------
# gain
# ---------------------------------------------------------------------------

def test_gain_known_values():
    assert abs(gain(0, 100) - 0.01) <= 1e-9
    assert abs(gain(90, 0) - 190.01) <= 1e-9
    for x in (0, 13, 50, 99.5, 100):
        assert abs(gain(x, x) - 100.01) <= 1e-9


def test_gain_domain_checked():
    for ep, ee in ((-1, 0), (101, 0), (0, -0.5), (0, 100.1)):
        with pytest.raises(ValueError):
            gain(ep, ee)


@given(st.integers(0, 100), st.integers(0, 100))
def test_gain_bounds_and_monotonicity(ep, ee):
    g = gain(ep, ee)
    assert 0.01 <= g <= 200.01
    if ep < 100:
        assert gain(ep + 1, ee) > g
    if ee < 100:
        assert gain(ep, ee + 1) < g


# ---------------------------------------------------------------------------
# harmonic mean
# ---------------------------------------------------------------------------

def test_harmonic_mean_reproduces_baseline_table():
    for name, column in BASELINE_COLUMNS.items():
        assert harmonic_mean(column) == pytest.approx(BASELINE_MEANS[name], abs=0.02)


def test_harmonic_mean_lop_tolerance():
    assert harmonic_mean(BASELINE_COLUMNS["LOP"]) == pytest.approx(0.04, abs=0.01)


def test_harmonic_mean_trivial_cases():
    assert harmonic_mean([7.5]) == pytest.approx(7.5)
    assert harmonic_mean([3.0] * 6) == pytest.approx(3.0)


def test_harmonic_mean_rejects_nonpositive_and_empty():
    with pytest.raises(ValueError):
        harmonic_mean([1.0, 0.0])
    with pytest.raises(ValueError):
        harmonic_mean([1.0, -2.0])
    with pytest.raises(ValueError):
        harmonic_mean([])


@given(st.lists(st.floats(0.01, 200.01), min_size=1, max_size=8))
def test_harmonic_le_arithmetic(values):
    hm = harmonic_mean(values)
    am = sum(values) / len(values)
    assert hm <= am + 1e-9
    if len(set(values)) > 1:
        assert hm < am + 1e-9


def test_harmonic_mean_permutation_and_scale():
    vals = [1.5, 80.0, 200.01, 3.25]
    assert harmonic_mean(vals) == pytest.approx(harmonic_mean(vals[::-1]))
    assert harmonic_mean([3 * v for v in vals]) == pytest.approx(3 * harmonic_mean(vals))


# ---------------------------------------------------------------------------
# evaluate_all
# ---------------------------------------------------------------------------

def _brawler_roster():
    """Eight clones of the contact-rusher: an idle player always loses with
    the enemy untouched, so every gain is exactly 0.01."""
    rusher = default_roster()[0]
    return tuple(
        dataclasses.replace(rusher, boss_id=i, name=f"Brawler{i}")
        for i in range(1, 9)
    )


def test_instant_loss_gives_minimum_gains():
    cfg = MatchConfig(roster=_brawler_roster())
    report = evaluate_all(IdleController(), cfg, repetitions=1, seed=4)
    assert report.per_boss_gains == pytest.approx((0.01,) * 8, abs=1e-9)
    assert report.harmonic == pytest.approx(0.01, abs=1e-9)
    assert report.wins == 0


def test_evaluate_all_deterministic(quick_config):
    r1 = evaluate_all(IdleController(), quick_config, repetitions=1, seed=9)
    r2 = evaluate_all(IdleController(), quick_config, repetitions=1, seed=9)
    assert r1 == r2


def test_evaluate_all_repetitions_average(quick_config):
    reps = 2
    report = evaluate_all(IdleController(), quick_config, repetitions=reps, seed=3)
    for boss in range(1, 9):
        singles = [match_gain(run_match(IdleController(), boss, quick_config,
                                        seed=derive_seed(3, boss, rep)))
                   for rep in range(reps)]
        assert report.per_boss_gains[boss - 1] == pytest.approx(sum(singles) / reps)
    assert report.harmonic == pytest.approx(harmonic_mean(report.per_boss_gains))


def test_evaluate_all_rejects_zero_reps(quick_config):
    with pytest.raises(ValueError):
        evaluate_all(IdleController(), quick_config, repetitions=0)


# ---------------------------------------------------------------------------
# report rendering + serialization
# ---------------------------------------------------------------------------

def _report(name, gains, reps=1):
    return GainReport(
        agent_name=name,
        per_boss_gains=tuple(gains),
        per_boss_wins=tuple(int(g > 100.01) for g in gains),
        repetitions=reps,
        harmonic=harmonic_mean(gains),
    )


def test_render_constant_report():
    text = render_report([_report("flat", [100.01] * 8)])
    lines = text.strip().splitlines()
    assert len(lines) == 2 + 8 + 1  # header, rule, 8 bosses, Mean
    assert lines[-1].split() == ["Mean", "100.01"]
    assert all(lines[i + 2].split()[1] == "100.01" for i in range(8))


def test_render_reproduces_baseline_mean_row():
    reports = [_report(name, col) for name, col in BASELINE_COLUMNS.items()]
    text = render_report(reports)
    mean_cells = text.strip().splitlines()[-1].split()[1:]
    assert len(mean_cells) == 7
    for cell, name in zip(mean_cells, BASELINE_COLUMNS):
        assert abs(float(cell) - BASELINE_MEANS[name]) <= 0.02


def test_render_empty_is_header_only():
    text = render_report([])
    lines = text.strip().splitlines()
    assert lines[0].split() == ["Boss"]
    assert len(lines) == 2


def test_report_json_round_trip():
    r = _report("agent-x", BASELINE_COLUMNS["NEAT"], reps=5)
    assert report_from_json(report_to_json(r)) == r


def test_report_wins_counts_full_clears():
    r = GainReport("a", (200.01,) * 8, per_boss_wins=(2, 2, 2, 1, 2, 0, 2, 2),
                   repetitions=2, harmonic=200.01)
    assert r.wins == 6
