"""Core simulation state: entities, bullets, match configuration, hashing.

A match is a value: `SimState` plus an action is enough to compute the next
state, and two field-identical states always step to field-identical
successors.  Everything random is drawn from the 64-bit `rng` field.

Canonical byte layout (normative, used by `state_hash` and pinned by
tests).  All integers little-endian, booleans one byte, list slots in
index order including dead slots:

    tick            u32
    player          EntityState
    enemy           EntityState
    bullets[12]     Bullet          (slots 0..7 enemy-owned, 8..11 player-owned)
    player_energy   u8
    enemy_energy    u8
    player_iframes  u32
    enemy_iframes   u32
    shoot_cooldown  u32
    boss_fsm        phase i32, phase_timer i32, burst_counter i32,
                    target_x i32, target_y i32
    rng             u64
    boss_id         u8
    outcome         u8

    EntityState:    pos_x i32, pos_y i32, vel_x i32, vel_y i32,
                    facing i8, width i32, height i32, grounded u8
    Bullet:         owner u8 (0 player / 1 enemy), pos_x i32, pos_y i32,
                    vel_x i32, vel_y i32, alive u8

The `config` attribute is match-constant plumbing and deliberately not part
of the layout; replays pin it separately via a config digest.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from enum import IntEnum
from typing import TYPE_CHECKING

from .fixed import FX_ONE

if TYPE_CHECKING:
    from .bosses import BossSpec


class Outcome(IntEnum):
    ONGOING = 0
    PLAYER_WON = 1
    ENEMY_WON = 2
    TIMEOUT = 3

    @property
    def wire_name(self) -> str:
        """Canonical spelling used in files and wire messages."""
        return _OUTCOME_WIRE_NAMES[self]


_OUTCOME_WIRE_NAMES = {0: "Ongoing", 1: "PlayerWon", 2: "EnemyWon", 3: "Timeout"}


OWNER_PLAYER = 0
OWNER_ENEMY = 1

ENEMY_BULLET_SLOTS = 8   # hard cap on live enemy bullets
PLAYER_BULLET_SLOTS = 4
TOTAL_BULLET_SLOTS = ENEMY_BULLET_SLOTS + PLAYER_BULLET_SLOTS


@dataclass(frozen=True)
class ActionSet:
    """The player's five binary controls. left+right together cancel."""

    left: bool = False
    right: bool = False
    jump: bool = False
    shoot: bool = False
    release: bool = False

    def mirrored(self) -> "ActionSet":
        """Swap left/right (the action counterpart of mirroring the arena)."""
        return ActionSet(self.right, self.left, self.jump, self.shoot, self.release)

    def bits(self) -> tuple[bool, bool, bool, bool, bool]:
        return (self.left, self.right, self.jump, self.shoot, self.release)


IDLE_ACTION = ActionSet()


@dataclass(slots=True)
class EntityState:
    pos_x: int
    pos_y: int
    vel_x: int = 0
    vel_y: int = 0
    facing: int = 1  # -1 left, +1 right
    width: int = 0   # AABB half-extent, raw units
    height: int = 0
    grounded: bool = False

    def clone(self) -> "EntityState":
        return EntityState(self.pos_x, self.pos_y, self.vel_x, self.vel_y,
                           self.facing, self.width, self.height, self.grounded)


@dataclass(slots=True)
class Bullet:
    owner: int = OWNER_PLAYER
    pos_x: int = 0
    pos_y: int = 0
    vel_x: int = 0
    vel_y: int = 0
    alive: bool = False

    def clone(self) -> "Bullet":
        return Bullet(self.owner, self.pos_x, self.pos_y, self.vel_x, self.vel_y, self.alive)


@dataclass(slots=True)
class BossFsmState:
    """Generic behaviour-machine state; each archetype assigns its own phase
    meanings.  Cached targets are absolute positions so that mirroring the
    arena mirrors them too."""

    phase: int = 0
    phase_timer: int = 0
    burst_counter: int = 0
    target_x: int = 0
    target_y: int = 0

    def clone(self) -> "BossFsmState":
        return BossFsmState(self.phase, self.phase_timer, self.burst_counter,
                            self.target_x, self.target_y)


@dataclass(frozen=True)
class MatchConfig:
    """Match constants.  Distances/speeds are raw fixed-point units
    (256 = 1 px) unless the comment says pixels."""

    damage_per_hit: int = 1
    max_ticks: int = 3000
    ticks_per_second: int = 30      # documentation only; the sim is tick-based
    arena_w: int = 736              # pixels
    arena_h: int = 512              # pixels
    floor_y: int = 440              # pixels, ground surface
    gravity: int = 90               # ~0.35 px/tick^2
    move_speed: int = 768           # 3 px/tick
    jump_impulse: int = 1920        # 7.5 px/tick, applied upward
    player_bullet_speed: int = 2048  # 8 px/tick
    shoot_cooldown_ticks: int = 6
    player_iframe_ticks: int = 15       # after body contact
    player_bullet_iframe_ticks: int = 2  # after a bullet hit; short, so bullet
                                         # streams cannot be face-tanked
    enemy_iframe_ticks: int = 10    # bounds how fast the boss can be whittled down
    player_half_w: int = 3072       # 12 px
    player_half_h: int = 4096       # 16 px
    bullet_half: int = 768          # 3 px
    player_spawn_x: int = 60        # pixels
    roster: tuple["BossSpec", ...] | None = None  # None = built-in roster

    @property
    def arena_w_raw(self) -> int:
        return self.arena_w * FX_ONE

    @property
    def arena_h_raw(self) -> int:
        return self.arena_h * FX_ONE

    @property
    def floor_y_raw(self) -> int:
        return self.floor_y * FX_ONE


DEFAULT_CONFIG = MatchConfig()


@dataclass(slots=True)
class SimState:
    tick: int
    player: EntityState
    enemy: EntityState
    bullets: list[Bullet]
    player_energy: int
    enemy_energy: int
    player_iframes: int
    enemy_iframes: int
    shoot_cooldown: int
    boss_fsm: BossFsmState
    rng: int                 # SplitMix64 state
    boss_id: int
    outcome: Outcome
    config: MatchConfig      # match-constant, excluded from the hash layout

    def clone(self) -> "SimState":
        return SimState(
            self.tick,
            self.player.clone(),
            self.enemy.clone(),
            [b.clone() for b in self.bullets],
            self.player_energy,
            self.enemy_energy,
            self.player_iframes,
            self.enemy_iframes,
            self.shoot_cooldown,
            self.boss_fsm.clone(),
            self.rng,
            self.boss_id,
            self.outcome,
            self.config,
        )


def aabb_overlap(ax: int, ay: int, ahw: int, ahh: int,
                 bx: int, by: int, bhw: int, bhh: int) -> bool:
    """Closed-interval AABB test on box centers and half-extents.

    Touching edges count as overlap.
    """
    return abs(ax - bx) <= ahw + bhw and abs(ay - by) <= ahh + bhh


# ---------------------------------------------------------------------------
# Canonical serialization + FNV-1a hashing
# ---------------------------------------------------------------------------

_ENTITY_FMT = "iiiibiiB"
_BULLET_FMT = "BiiiiB"
_STATE_STRUCT = struct.Struct(
    "<I" + _ENTITY_FMT * 2 + _BULLET_FMT * TOTAL_BULLET_SLOTS + "BBIII" + "iiiii" + "QBB"
)

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
_M64 = (1 << 64) - 1


def fnv1a_64(data: bytes, h: int = FNV_OFFSET) -> int:
    """FNV-1a over bytes, 64-bit."""
    for b in data:
        h = ((h ^ b) * FNV_PRIME) & _M64
    return h


def canonical_bytes(s: SimState) -> bytes:
    """Pack the dynamic state fields per the normative layout above."""
    vals: list[int] = [s.tick]
    for e in (s.player, s.enemy):
        vals.extend((e.pos_x, e.pos_y, e.vel_x, e.vel_y, e.facing,
                     e.width, e.height, 1 if e.grounded else 0))
    for b in s.bullets:
        vals.extend((b.owner, b.pos_x, b.pos_y, b.vel_x, b.vel_y,
                     1 if b.alive else 0))
    f = s.boss_fsm
    vals.extend((s.player_energy, s.enemy_energy,
                 s.player_iframes, s.enemy_iframes, s.shoot_cooldown,
                 f.phase, f.phase_timer, f.burst_counter, f.target_x, f.target_y,
                 s.rng, s.boss_id, int(s.outcome)))
    return _STATE_STRUCT.pack(*vals)


def state_hash(s: SimState) -> int:
    """FNV-1a 64 over the canonical little-endian serialization."""
    return fnv1a_64(canonical_bytes(s))


# ---------------------------------------------------------------------------
# Mirroring
# ---------------------------------------------------------------------------

def _mirror_entity(e: EntityState, w_raw: int) -> EntityState:
    return EntityState(w_raw - e.pos_x, e.pos_y, -e.vel_x, e.vel_y,
                       -e.facing, e.width, e.height, e.grounded)


def mirror_state(s: SimState) -> SimState:
    """Reflect every x-coordinate about the arena's vertical centerline.

    x-velocities and facings are negated; cached boss targets mirror with
    the rest (they are positions).  Dead bullet slots mirror too so the
    operation is an exact involution on the full field set.
    """
    w = s.config.arena_w_raw
    fsm = s.boss_fsm
    return SimState(
        s.tick,
        _mirror_entity(s.player, w),
        _mirror_entity(s.enemy, w),
        [Bullet(b.owner, w - b.pos_x, b.pos_y, -b.vel_x, b.vel_y, b.alive)
         for b in s.bullets],
        s.player_energy,
        s.enemy_energy,
        s.player_iframes,
        s.enemy_iframes,
        s.shoot_cooldown,
        BossFsmState(fsm.phase, fsm.phase_timer, fsm.burst_counter,
                     w - fsm.target_x, fsm.target_y),
        s.rng,
        s.boss_id,
        s.outcome,
        s.config,
    )


def states_equal(a: SimState, b: SimState) -> bool:
    """Field-by-field equality over the canonical layout (config excluded)."""
    return canonical_bytes(a) == canonical_bytes(b)
