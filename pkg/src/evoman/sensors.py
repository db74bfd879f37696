"""The 20-value observation vector and its normalization.

Layout (normative; pinned by a golden test and shared with the wire
protocol and the web overlay):

    index 0..15   (dx, dy) pairs for enemy bullet slots 1..8, in slot order
                  (even index = dx, odd = dy); dead slots read as (0, 0)
    index 16, 17  horizontal / vertical distance to the enemy
    index 18      player facing  (-1 or +1 raw; 0 or 1 normalized)
    index 19      enemy facing

Distances are signed, target minus player, in float pixels (exact, the
fixed-point denominator is a power of two).  `normalize` maps distances
affinely into [-1, 1] by the arena dimensions and facings into {0, 1};
it is a single-application transform, not idempotent on facings.
"""

from __future__ import annotations

from typing import Sequence

from .state import ENEMY_BULLET_SLOTS, MatchConfig, SimState

SENSOR_COUNT = 20
IDX_ENEMY_DX = 16
IDX_ENEMY_DY = 17
IDX_PLAYER_FACING = 18
IDX_ENEMY_FACING = 19

_INV = 1.0 / 256.0


def extract_sensors(state: SimState) -> list[float]:
    """Read the 20 raw sensors off a state. Pure; pixel units."""
    p = state.player
    px, py = p.pos_x, p.pos_y
    out = []
    for b in state.bullets[:ENEMY_BULLET_SLOTS]:
        if b.alive:
            out.append((b.pos_x - px) * _INV)
            out.append((b.pos_y - py) * _INV)
        else:
            out.append(0.0)
            out.append(0.0)
    e = state.enemy
    out.append((e.pos_x - px) * _INV)
    out.append((e.pos_y - py) * _INV)
    out.append(float(p.facing))
    out.append(float(e.facing))
    return out


def normalize(values: Sequence[float], config: MatchConfig) -> list[float]:
    """Map raw sensors into network range: distances to [-1, 1], facings to {0, 1}."""
    if len(values) != SENSOR_COUNT:
        raise ValueError(f"expected {SENSOR_COUNT} sensor values, got {len(values)}")
    inv_w = 1.0 / config.arena_w
    inv_h = 1.0 / config.arena_h
    out = [0.0] * SENSOR_COUNT
    for i in range(0, IDX_ENEMY_DX, 2):
        out[i] = values[i] * inv_w
        out[i + 1] = values[i + 1] * inv_h
    out[IDX_ENEMY_DX] = values[IDX_ENEMY_DX] * inv_w
    out[IDX_ENEMY_DY] = values[IDX_ENEMY_DY] * inv_h
    out[IDX_PLAYER_FACING] = (values[IDX_PLAYER_FACING] + 1.0) * 0.5
    out[IDX_ENEMY_FACING] = (values[IDX_ENEMY_FACING] + 1.0) * 0.5
    return out
