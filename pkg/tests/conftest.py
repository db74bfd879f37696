"""Shared test helpers: deterministic action scripts and fast configs."""

from __future__ import annotations

import pytest

from evoman.rng import SplitMix64
from evoman.state import ActionSet, MatchConfig, Outcome
from evoman.engine import _step_inplace, new_match


def random_action(rng: SplitMix64) -> ActionSet:
    v = rng.next_u64()
    return ActionSet(bool(v & 1), bool(v & 2), bool(v & 4), bool(v & 8), bool(v & 16))


def random_script(rng: SplitMix64, n: int) -> list[ActionSet]:
    return [random_action(rng) for _ in range(n)]


def drive(state, rng: SplitMix64, ticks: int):
    """Step a match with random actions; yields the state after each tick."""
    for _ in range(ticks):
        if state.outcome != Outcome.ONGOING:
            break
        _step_inplace(state, random_action(rng))
        yield state


def sample_states(n_per_boss: int, seed: int = 0, config: MatchConfig | None = None):
    """A stream of varied mid-match states across every boss."""
    cfg = config or MatchConfig(max_ticks=600)
    for boss in range(1, 9):
        rng = SplitMix64(seed * 1000 + boss)
        s = new_match(boss, cfg, seed=seed + boss)
        for st in drive(s, rng, n_per_boss):
            yield st


@pytest.fixture
def quick_config() -> MatchConfig:
    return MatchConfig(max_ticks=400)
