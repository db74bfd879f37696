"""Match lifecycle: creation, stepping semantics, full-run determinism."""

from __future__ import annotations

import pytest

from evoman.controllers import IdleController, ScriptedController
from evoman.engine import (
    MatchAbortError,
    MatchOverError,
    new_match,
    run_match,
    run_scripted,
    step,
    _step_inplace,
)
from evoman.evaluation import match_gain
from evoman.rng import SplitMix64
from evoman.state import (
    ENEMY_BULLET_SLOTS,
    ActionSet,
    MatchConfig,
    Outcome,
    mirror_state,
    state_hash,
    states_equal,
)

from conftest import random_action, random_script


def test_new_match_initial_state():
    s = new_match(1, seed=42)
    assert s.tick == 0
    assert s.player_energy == 100 and s.enemy_energy == 100
    assert s.outcome is Outcome.ONGOING
    assert s.player.grounded and s.enemy.grounded
    assert s.player.pos_x < s.enemy.pos_x  # player spawns on the left


def test_new_match_deterministic():
    assert states_equal(new_match(1, seed=42), new_match(1, seed=42))
    assert state_hash(new_match(5, seed=1)) != state_hash(new_match(5, seed=2))


@pytest.mark.parametrize("bad", [0, 9, -3])
def test_new_match_rejects_bad_boss(bad):
    with pytest.raises(ValueError):
        new_match(bad, seed=0)


def test_step_is_pure():
    rng = SplitMix64(3)
    s = new_match(4, seed=8)
    for _ in range(50):
        a = random_action(rng)
        before = state_hash(s)
        s1 = step(s, a)
        s2 = step(s, a)
        assert state_hash(s) == before          # input untouched
        assert states_equal(s1, s2)             # equal successors
        s = s1
        if s.outcome is not Outcome.ONGOING:
            break


def test_step_finished_match_raises():
    s = new_match(1, MatchConfig(max_ticks=1), seed=0)
    s = step(s, ActionSet())
    assert s.outcome is Outcome.TIMEOUT
    with pytest.raises(MatchOverError):
        step(s, ActionSet())


def test_lethal_hit_ends_match():
    # a bullet overlapping the player with 1 energy left ends it on this tick
    s = new_match(3, seed=0)
    s.player_energy = 1
    b = s.bullets[0]
    b.alive = True
    b.pos_x, b.pos_y = s.player.pos_x, s.player.pos_y
    b.vel_x = b.vel_y = 0
    nxt = step(s, ActionSet())
    assert nxt.player_energy == 0
    assert nxt.outcome is Outcome.ENEMY_WON


def test_simultaneous_zero_is_player_loss():
    s = new_match(3, seed=0)
    s.player_energy = 1
    s.enemy_energy = 1
    # player bullet into the enemy, enemy bullet into the player, same tick
    eb = s.bullets[0]
    eb.alive, eb.pos_x, eb.pos_y, eb.vel_x, eb.vel_y = True, s.player.pos_x, s.player.pos_y, 0, 0
    pb = s.bullets[ENEMY_BULLET_SLOTS]
    pb.alive, pb.pos_x, pb.pos_y, pb.vel_x, pb.vel_y = True, s.enemy.pos_x, s.enemy.pos_y, 0, 0
    nxt = step(s, ActionSet())
    assert nxt.player_energy == 0 and nxt.enemy_energy == 0
    assert nxt.outcome is Outcome.ENEMY_WON


def test_timeout_at_max_ticks():
    cfg = MatchConfig(max_ticks=50)
    s = new_match(8, cfg, seed=1)  # teleporter stays away long enough
    while s.outcome is Outcome.ONGOING:
        s = step(s, ActionSet())
    assert s.tick == 50
    assert s.outcome is Outcome.TIMEOUT
    # independent re-simulation confirms the terminal tick
    r = run_scripted([], 8, cfg, seed=1)
    assert r.ticks == 50 and r.outcome is Outcome.TIMEOUT
    assert r.state_hash == state_hash(s)


def test_energies_bounded_and_monotone():
    for boss in (1, 3, 7):
        rng = SplitMix64(boss)
        s = new_match(boss, MatchConfig(max_ticks=2000), seed=boss)
        pe, ee = 100, 100
        while s.outcome is Outcome.ONGOING:
            _step_inplace(s, random_action(rng))
            assert 0 <= s.player_energy <= pe
            assert 0 <= s.enemy_energy <= ee
            pe, ee = s.player_energy, s.enemy_energy


def test_enemy_bullet_cap_always_respected():
    for boss in range(1, 9):
        rng = SplitMix64(boss * 17)
        s = new_match(boss, MatchConfig(max_ticks=700), seed=boss)
        while s.outcome is Outcome.ONGOING:
            _step_inplace(s, random_action(rng))
            alive = sum(b.alive for b in s.bullets[:ENEMY_BULLET_SLOTS])
            assert alive <= ENEMY_BULLET_SLOTS


def test_run_match_idle_cannot_win():
    r = run_match(IdleController(), 3, seed=7)
    assert r.outcome in (Outcome.ENEMY_WON, Outcome.TIMEOUT)
    assert r.enemy_energy == 100


def test_run_match_deterministic():
    c = ScriptedController(random_script(SplitMix64(5), 300))
    r1 = run_match(c, 2, seed=11)
    r2 = run_match(c, 2, seed=11)  # reset() rewinds the script
    assert r1 == r2


def test_run_match_gain_in_bounds():
    rng = SplitMix64(123)
    for boss in range(1, 9):
        c = ScriptedController(random_script(rng, 200))
        r = run_match(c, boss, MatchConfig(max_ticks=500), seed=boss)
        assert 0.01 <= match_gain(r) <= 200.01


def test_mirrored_run_same_energies():
    # a mirrored start + swapped actions walks the mirrored trajectory
    script = random_script(SplitMix64(77), 400)
    for boss in (2, 6):
        a = new_match(boss, MatchConfig(max_ticks=400), seed=3)
        b = mirror_state(a)
        for act in script:
            if a.outcome is not Outcome.ONGOING:
                break
            _step_inplace(a, act)
            _step_inplace(b, act.mirrored())
        assert a.player_energy == b.player_energy
        assert a.enemy_energy == b.enemy_energy
        assert a.outcome == b.outcome


class _ExplodingController:
    def act(self, sensors):
        raise RuntimeError("boom")


def test_controller_failure_is_match_abort():
    with pytest.raises(MatchAbortError):
        run_match(_ExplodingController(), 1, seed=0)


def test_determinism_per_tick_hashes():
    # two independent simulations of the same (seed, boss, script) agree
    # on every single tick hash
    for trial in range(12):
        rng = SplitMix64(trial)
        boss = 1 + trial % 8
        script = random_script(SplitMix64(trial + 999), 300)
        cfg = MatchConfig(max_ticks=300)
        s1 = new_match(boss, cfg, seed=trial)
        s2 = new_match(boss, cfg, seed=trial)
        for a in script:
            if s1.outcome is not Outcome.ONGOING:
                break
            _step_inplace(s1, a)
            _step_inplace(s2, a)
            assert state_hash(s1) == state_hash(s2)
