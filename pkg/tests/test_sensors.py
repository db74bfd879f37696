"""Sensor extraction and normalization: layout, padding, symmetry."""

from __future__ import annotations

import pytest

from evoman.engine import new_match
from evoman.sensors import (
    IDX_ENEMY_DX,
    IDX_ENEMY_DY,
    IDX_ENEMY_FACING,
    IDX_PLAYER_FACING,
    SENSOR_COUNT,
    extract_sensors,
    normalize,
)
from evoman.state import DEFAULT_CONFIG, mirror_state

from conftest import sample_states


def test_golden_layout():
    """Pins the normative index assignment: 8 bullet (dx, dy) pairs in slot
    order, enemy dx/dy, player facing, enemy facing."""
    s = new_match(1, seed=0)
    s.player.pos_x = 100 * 256
    s.player.pos_y = 400 * 256
    s.player.facing = 1
    s.enemy.pos_x = 300 * 256
    s.enemy.pos_y = 380 * 256
    s.enemy.facing = -1
    b0 = s.bullets[0]
    b0.alive, b0.pos_x, b0.pos_y = True, 150 * 256, 390 * 256
    b3 = s.bullets[3]
    b3.alive, b3.pos_x, b3.pos_y = True, 80 * 256, 410 * 256

    v = extract_sensors(s)
    expected = [0.0] * SENSOR_COUNT
    expected[0], expected[1] = 50.0, -10.0       # slot 0
    expected[6], expected[7] = -20.0, 10.0       # slot 3
    expected[IDX_ENEMY_DX], expected[IDX_ENEMY_DY] = 200.0, -20.0
    expected[IDX_PLAYER_FACING], expected[IDX_ENEMY_FACING] = 1.0, -1.0
    assert v == expected


def test_coincident_enemy_reads_zero():
    s = new_match(1, seed=0)
    s.enemy.pos_x = s.player.pos_x
    s.enemy.pos_y = s.player.pos_y
    v = extract_sensors(s)
    assert (v[IDX_ENEMY_DX], v[IDX_ENEMY_DY]) == (0.0, 0.0)


def test_dead_slots_use_padding():
    s = new_match(1, seed=0)
    assert all(not b.alive for b in s.bullets)
    v = extract_sensors(s)
    assert v[:16] == [0.0] * 16


def test_extraction_matches_recomputation():
    # oracle: straight coordinate differences off the entity fields
    for s in sample_states(50, seed=13):
        v = extract_sensors(s)
        px, py = s.player.pos_x / 256, s.player.pos_y / 256
        for i in range(8):
            b = s.bullets[i]
            if b.alive:
                assert v[2 * i] == b.pos_x / 256 - px
                assert v[2 * i + 1] == b.pos_y / 256 - py
            else:
                assert v[2 * i] == 0.0 and v[2 * i + 1] == 0.0
        assert v[IDX_ENEMY_DX] == s.enemy.pos_x / 256 - px
        assert v[IDX_ENEMY_DY] == s.enemy.pos_y / 256 - py
        assert v[IDX_PLAYER_FACING] == float(s.player.facing)
        assert v[IDX_ENEMY_FACING] == float(s.enemy.facing)


def test_length_always_twenty():
    for s in sample_states(120, seed=21):
        assert len(extract_sensors(s)) == SENSOR_COUNT


def test_normalize_endpoints():
    cfg = DEFAULT_CONFIG
    raw = [0.0] * SENSOR_COUNT
    raw[IDX_ENEMY_DX] = float(cfg.arena_w)
    raw[IDX_PLAYER_FACING] = 1.0
    raw[IDX_ENEMY_FACING] = -1.0
    n = normalize(raw, cfg)
    assert n[IDX_ENEMY_DX] == 1.0
    assert n[0] == 0.0
    assert n[IDX_PLAYER_FACING] == 1.0
    assert n[IDX_ENEMY_FACING] == 0.0


def test_normalize_rejects_bad_length():
    with pytest.raises(ValueError):
        normalize([0.0] * 19, DEFAULT_CONFIG)


def test_normalized_distances_in_unit_range():
    for s in sample_states(60, seed=34):
        n = normalize(extract_sensors(s), s.config)
        for i in range(18):
            assert -1.0 <= n[i] <= 1.0
        assert n[18] in (0.0, 1.0) and n[19] in (0.0, 1.0)


def test_mirror_antisymmetry():
    # mirrored state: every dx negates exactly, dy unchanged, facings flip
    for s in sample_states(40, seed=55):
        v = extract_sensors(s)
        m = extract_sensors(mirror_state(s))
        for i in range(0, 16, 2):
            assert m[i] == -v[i]
            assert m[i + 1] == v[i + 1]
        assert m[IDX_ENEMY_DX] == -v[IDX_ENEMY_DX]
        assert m[IDX_ENEMY_DY] == v[IDX_ENEMY_DY]
        assert m[IDX_PLAYER_FACING] == -v[IDX_PLAYER_FACING]
        assert m[IDX_ENEMY_FACING] == -v[IDX_ENEMY_FACING]
        # and after normalization dx components stay exact negations
        nv = normalize(v, s.config)
        nm = normalize(m, s.config)
        for i in range(0, 16, 2):
            assert nm[i] == -nv[i]
            assert nm[i + 1] == nv[i + 1]
