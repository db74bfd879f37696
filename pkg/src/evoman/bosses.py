"""The eight boss behaviour machines.

Each boss is a small deterministic FSM over `BossFsmState` driven once per
tick by `advance_boss`.  Two rules keep the whole roster honest:

* Mirror equivariance: every signed horizontal quantity is built as
  (equivariant sign) x (non-negative magnitude), where the sign comes from
  the direction to the player or the boss's own facing, and cached targets
  are absolute positions (mirrored with the state).  Reflecting the arena
  therefore commutes with stepping, which the property tests check exactly.
* Randomness only through `state.rng`: `advance_boss` may advance that one
  field and reads everything else, so replays stay bit-exact.

Archetypes:

    1 Rusher      walks at the player, periodic fast lunge, no bullets
    2 Hopper      arc-jumps toward the player, fires one aimed shot at apex
    3 Gunner      stationary, 3-bullet horizontal bursts at staggered speeds
    4 Rainer      relocates to random spots, drops falling bullets over the player
    5 Tracker     keeps a standoff distance, fires bullets aimed at the player
    6 Zigzag      oscillating approach, lobs diagonal bullets on each advance
    7 Shielder    invulnerable shield phase, radial spread when it opens up
    8 Teleporter  blinks to a random spot near the player, fires a short burst
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fixed import FX_ONE, clamp, sdiv
from .rng import rng_below
from .state import ENEMY_BULLET_SLOTS, BossFsmState, Outcome, SimState

ROSTER_VERSION = "1.0.0"


@dataclass(frozen=True)
class BossSpec:
    """Numeric parameters for one archetype.  Distances/speeds are raw
    fixed-point units (256 = 1 px) unless noted; times are ticks."""

    boss_id: int
    name: str
    archetype: str
    half_w: int
    half_h: int
    spawn_x: int            # pixels
    move_speed: int = 0
    bullet_speed: int = 0
    fire_cooldown: int = 0
    burst_count: int = 0
    burst_gap: int = 0      # ticks between burst shots
    burst_spacing: int = 0  # Gunner: spatial gap of the bullet train, raw units
    jump_impulse: int = 0   # Hopper
    lunge_period: int = 0   # Rusher
    lunge_ticks: int = 0
    lunge_speed: int = 0
    relocate_min: int = 0   # Rainer/Teleporter: offset magnitude range, pixels
    relocate_max: int = 0
    drop_count: int = 0     # Rainer
    drop_gap: int = 0
    drop_speed: int = 0
    drop_jitter: int = 0    # pixels
    standoff: int = 0       # Tracker: preferred |dx|
    advance_ticks: int = 0  # Zigzag
    retreat_ticks: int = 0
    lob_height: int = 0     # Zigzag: spawn height above own center
    shield_ticks: int = 0   # Shielder
    open_ticks: int = 0
    teleport_period: int = 0
    hit_iframes: int = 0    # 0 = use MatchConfig.enemy_iframe_ticks


@dataclass(slots=True)
class EnemyCommand:
    """What the boss wants this tick.  The 5-bool player action set cannot
    express variable lunge speeds or instant relocation, so the enemy side
    gets this slightly richer command instead."""

    move_vx: int = 0                      # signed horizontal velocity, raw
    jump_vy: int = 0                      # upward impulse magnitude if grounded
    teleport: tuple[int, int] | None = None  # absolute raw position
    suppress_damage: bool = False         # Shielder shield phase


@dataclass(slots=True)
class SpawnRequest:
    """One requested enemy bullet: absolute raw position + velocity."""

    pos_x: int
    pos_y: int
    vel_x: int
    vel_y: int


# Phase ids, per archetype
RUSHER_WALK, RUSHER_LUNGE = 0, 1
HOPPER_WAIT, HOPPER_RISE, HOPPER_FALL = 0, 1, 2
GUNNER_COOLDOWN = 0
RAINER_CHOOSE, RAINER_MOVE, RAINER_DROP = 0, 1, 2
TRACKER_HOLD = 0
ZIG_ADVANCE, ZIG_RETREAT = 0, 1
SHIELDER_SHIELD, SHIELDER_OPEN = 0, 1
TELE_IDLE, TELE_POST = 0, 1


def default_roster() -> tuple[BossSpec, ...]:
    """The built-in eight-boss roster, ids 1..8, stable order and values."""
    return _DEFAULT_ROSTER


_DEFAULT_ROSTER = (
    BossSpec(1, "Rusher", "rusher", half_w=3584, half_h=5120, spawn_x=620,
             move_speed=640, lunge_period=90, lunge_ticks=25, lunge_speed=1792,
             hit_iframes=8),
    BossSpec(2, "Hopper", "hopper", half_w=3328, half_h=4608, spawn_x=600,
             move_speed=896, jump_impulse=2048, fire_cooldown=55,
             bullet_speed=1024, hit_iframes=8),
    BossSpec(3, "Gunner", "gunner", half_w=4096, half_h=6144, spawn_x=620,
             bullet_speed=1408, fire_cooldown=22, burst_count=3,
             burst_spacing=8448, hit_iframes=4),
    BossSpec(4, "Rainer", "rainer", half_w=3328, half_h=4608, spawn_x=560,
             move_speed=704, relocate_min=90, relocate_max=260,
             drop_count=4, drop_gap=9, drop_speed=1280, drop_jitter=40,
             hit_iframes=8),
    BossSpec(5, "Tracker", "tracker", half_w=3840, half_h=5632, spawn_x=640,
             move_speed=512, standoff=56320, fire_cooldown=26,
             bullet_speed=1088, hit_iframes=8),
    BossSpec(6, "Zigzag", "zigzag", half_w=3328, half_h=4608, spawn_x=580,
             move_speed=832, advance_ticks=34, retreat_ticks=22,
             bullet_speed=1024, lob_height=20480, hit_iframes=8),
    BossSpec(7, "Shielder", "shielder", half_w=4096, half_h=5632, spawn_x=610,
             move_speed=448, shield_ticks=70, open_ticks=40,
             bullet_speed=1024, burst_count=5, hit_iframes=6),
    BossSpec(8, "Teleporter", "teleporter", half_w=3328, half_h=4608, spawn_x=520,
             teleport_period=65, relocate_min=120, relocate_max=300,
             burst_count=2, burst_gap=7, bullet_speed=1152, hit_iframes=8),
)


def boss_roster() -> list[BossSpec]:
    return list(_DEFAULT_ROSTER)


def fsm_init(spec: BossSpec, spawn_x: int, spawn_y: int) -> BossFsmState:
    """Initial FSM state for a fresh match; targets start at the spawn point."""
    arch = spec.archetype
    if arch == "rusher":
        phase, timer = RUSHER_WALK, spec.lunge_period
    elif arch == "hopper":
        phase, timer = HOPPER_WAIT, spec.fire_cooldown
    elif arch == "gunner":
        phase, timer = GUNNER_COOLDOWN, spec.fire_cooldown
    elif arch == "rainer":
        phase, timer = RAINER_CHOOSE, 0
    elif arch == "tracker":
        phase, timer = TRACKER_HOLD, spec.fire_cooldown
    elif arch == "zigzag":
        phase, timer = ZIG_ADVANCE, spec.advance_ticks
    elif arch == "shielder":
        phase, timer = SHIELDER_SHIELD, spec.shield_ticks
    elif arch == "teleporter":
        phase, timer = TELE_IDLE, spec.teleport_period
    else:
        raise ValueError(f"unknown boss archetype: {arch!r}")
    return BossFsmState(phase=phase, phase_timer=timer, burst_counter=0,
                        target_x=spawn_x, target_y=spawn_y)


def _dir_to_player(state: SimState) -> int:
    """-1/+1 toward the player; falls back to current facing when aligned.

    Both choices flip under mirroring, which is exactly what keeps boss
    logic equivariant."""
    dx = state.player.pos_x - state.enemy.pos_x
    if dx > 0:
        return 1
    if dx < 0:
        return -1
    return state.enemy.facing


def _aim(from_x: int, from_y: int, state: SimState, speed: int) -> tuple[int, int]:
    """Velocity of magnitude ~speed pointing from (from_x, from_y) at the
    player's center.  Computed on the pixel grid with round-toward-zero
    division so the x component is exactly odd under mirroring."""
    dxp = sdiv(state.player.pos_x - from_x, FX_ONE)
    dyp = sdiv(state.player.pos_y - from_y, FX_ONE)
    dist = math.isqrt(dxp * dxp + dyp * dyp)
    if dist == 0:
        return state.enemy.facing * speed, 0
    return sdiv(dxp * speed, dist), sdiv(dyp * speed, dist)


def _signed_offset(state: SimState, mag: int) -> int:
    """Random sign relative to the player direction times mag; consumes one
    rng draw.  (toward-or-away is what stays mirror-equivariant; a bare
    left-or-right draw would not.)"""
    bit, state.rng = rng_below(state.rng, 2)
    d = _dir_to_player(state)
    return (d if bit == 0 else -d) * mag


def _relocate_target(state: SimState, spec: BossSpec) -> int:
    """Random x near the player, clamped to the walls."""
    span = spec.relocate_max - spec.relocate_min + 1
    mag_px, state.rng = rng_below(state.rng, span)
    off = _signed_offset(state, (spec.relocate_min + mag_px) * FX_ONE)
    lo = spec.half_w
    hi = state.config.arena_w_raw - spec.half_w
    return clamp(state.player.pos_x + off, lo, hi)


def _alive_enemy_bullets(state: SimState) -> int:
    return sum(1 for b in state.bullets[:ENEMY_BULLET_SLOTS] if b.alive)


def _muzzle(state: SimState, spec: BossSpec, d: int) -> tuple[int, int]:
    cfg = state.config
    x = clamp(state.enemy.pos_x + d * (spec.half_w + cfg.bullet_half),
              0, cfg.arena_w_raw)
    return x, state.enemy.pos_y


def advance_boss(spec: BossSpec, fsm: BossFsmState, state: SimState,
                 ) -> tuple[EnemyCommand, list[SpawnRequest], BossFsmState]:
    """Run one tick of the boss behaviour machine.

    Reads `state` (advancing only `state.rng` when the archetype draws
    randomness) and returns the movement command, accepted bullet spawn
    requests, and the successor FSM state.  Requests that would push the
    number of live enemy bullets past the hard cap of 8 are dropped
    oldest-request-first.
    """
    if state.outcome != Outcome.ONGOING:
        raise ValueError("advance_boss on a finished match")
    handler = _HANDLERS.get(spec.archetype)
    if handler is None:
        raise ValueError(f"unknown boss archetype: {spec.archetype!r}")
    nxt = fsm.clone()
    cmd = EnemyCommand()
    spawns: list[SpawnRequest] = []
    handler(spec, nxt, state, cmd, spawns)

    free = ENEMY_BULLET_SLOTS - _alive_enemy_bullets(state)
    if len(spawns) > free:
        spawns = spawns[len(spawns) - free:]  # oldest requests dropped first
    return cmd, spawns, nxt


# ---------------------------------------------------------------------------
# Archetype handlers.  Each mutates its fsm clone and fills cmd/spawns.
# ---------------------------------------------------------------------------

def _rusher(spec: BossSpec, fsm: BossFsmState, state: SimState,
            cmd: EnemyCommand, spawns: list[SpawnRequest]) -> None:
    d = _dir_to_player(state)
    if fsm.phase == RUSHER_WALK:
        cmd.move_vx = d * spec.move_speed
        fsm.phase_timer -= 1
        if fsm.phase_timer <= 0:
            fsm.phase = RUSHER_LUNGE
            fsm.phase_timer = spec.lunge_ticks
    else:  # LUNGE
        cmd.move_vx = d * spec.lunge_speed
        fsm.phase_timer -= 1
        if fsm.phase_timer <= 0:
            fsm.phase = RUSHER_WALK
            fsm.phase_timer = spec.lunge_period


def _hopper(spec: BossSpec, fsm: BossFsmState, state: SimState,
            cmd: EnemyCommand, spawns: list[SpawnRequest]) -> None:
    d = _dir_to_player(state)
    e = state.enemy
    if fsm.phase == HOPPER_WAIT:
        fsm.phase_timer -= 1
        if fsm.phase_timer <= 0 and e.grounded:
            cmd.jump_vy = spec.jump_impulse
            cmd.move_vx = d * spec.move_speed
            fsm.phase = HOPPER_RISE
    elif fsm.phase == HOPPER_RISE:
        cmd.move_vx = d * spec.move_speed
        if not e.grounded and e.vel_y >= 0:  # apex: fire once
            mx, my = _muzzle(state, spec, d)
            vx, vy = _aim(mx, my, state, spec.bullet_speed)
            spawns.append(SpawnRequest(mx, my, vx, vy))
            fsm.phase = HOPPER_FALL
    else:  # FALL
        if e.grounded:
            fsm.phase = HOPPER_WAIT
            fsm.phase_timer = spec.fire_cooldown
        else:
            cmd.move_vx = d * spec.move_speed


def _gunner(spec: BossSpec, fsm: BossFsmState, state: SimState,
            cmd: EnemyCommand, spawns: list[SpawnRequest]) -> None:
    d = _dir_to_player(state)
    fsm.phase_timer -= 1
    if fsm.phase_timer <= 0:
        mx, my = _muzzle(state, spec, d)
        # grounded players get the low lane; airborne players get an
        # anti-air train at their current height (jump-spam is punished,
        # a timed jump has landed before the train arrives)
        if not state.player.grounded:
            my = state.player.pos_y
        # uniform speed, spawned as a trailing line: the spatial gap keeps
        # the arrival spacing constant at every range, so the train cannot
        # be face-tanked inside one invulnerability window
        w_raw = state.config.arena_w_raw
        for i in range(spec.burst_count):
            x = clamp(mx - d * i * spec.burst_spacing, 0, w_raw)
            spawns.append(SpawnRequest(x, my, d * spec.bullet_speed, 0))
        fsm.phase_timer = spec.fire_cooldown


def _rainer(spec: BossSpec, fsm: BossFsmState, state: SimState,
            cmd: EnemyCommand, spawns: list[SpawnRequest]) -> None:
    cfg = state.config
    if fsm.phase == RAINER_CHOOSE:
        fsm.target_x = _relocate_target(state, spec)
        fsm.target_y = state.enemy.pos_y
        fsm.phase = RAINER_MOVE
    elif fsm.phase == RAINER_MOVE:
        dx = fsm.target_x - state.enemy.pos_x
        if dx == 0:
            fsm.phase = RAINER_DROP
            fsm.phase_timer = spec.drop_gap
            fsm.burst_counter = spec.drop_count
        elif abs(dx) <= spec.move_speed:
            cmd.move_vx = dx  # final partial step, lands exactly on target
        else:
            cmd.move_vx = (1 if dx > 0 else -1) * spec.move_speed
    else:  # DROP
        fsm.phase_timer -= 1
        if fsm.phase_timer <= 0:
            jitter_px, state.rng = rng_below(state.rng, spec.drop_jitter + 1)
            x = clamp(state.player.pos_x + _signed_offset(state, jitter_px * FX_ONE),
                      0, cfg.arena_w_raw)
            spawns.append(SpawnRequest(x, cfg.bullet_half, 0, spec.drop_speed))
            fsm.burst_counter -= 1
            fsm.phase_timer = spec.drop_gap
            if fsm.burst_counter <= 0:
                fsm.phase = RAINER_CHOOSE


def _tracker(spec: BossSpec, fsm: BossFsmState, state: SimState,
             cmd: EnemyCommand, spawns: list[SpawnRequest]) -> None:
    d = _dir_to_player(state)
    adx = abs(state.player.pos_x - state.enemy.pos_x)
    if adx > spec.standoff + spec.move_speed:
        cmd.move_vx = d * spec.move_speed
    elif adx < spec.standoff - spec.move_speed:
        cmd.move_vx = -d * spec.move_speed
    fsm.phase_timer -= 1
    if fsm.phase_timer <= 0:
        mx, my = _muzzle(state, spec, d)
        vx, vy = _aim(mx, my, state, spec.bullet_speed)
        spawns.append(SpawnRequest(mx, my, vx, vy))
        fsm.phase_timer = spec.fire_cooldown


def _zigzag(spec: BossSpec, fsm: BossFsmState, state: SimState,
            cmd: EnemyCommand, spawns: list[SpawnRequest]) -> None:
    d = _dir_to_player(state)
    fsm.phase_timer -= 1
    if fsm.phase == ZIG_ADVANCE:
        cmd.move_vx = d * spec.move_speed
        if fsm.phase_timer <= 0:
            fsm.phase = ZIG_RETREAT
            fsm.phase_timer = spec.retreat_ticks
    else:  # RETREAT
        cmd.move_vx = -d * spec.move_speed
        if fsm.phase_timer <= 0:
            fsm.phase = ZIG_ADVANCE
            fsm.phase_timer = spec.advance_ticks
            # lob a steep + a shallow diagonal from above on each new advance
            x = clamp(state.enemy.pos_x + d * spec.half_w, 0, state.config.arena_w_raw)
            y = max(state.enemy.pos_y - spec.lob_height, state.config.bullet_half)
            spawns.append(SpawnRequest(x, y, d * spec.bullet_speed, 384))
            spawns.append(SpawnRequest(x, y, d * sdiv(spec.bullet_speed * 3, 4), 640))


_SPREAD_DIRS = ((256, 0), (217, -136), (217, 136), (136, -217), (136, 217),
                (0, -256), (64, -248), (64, 248))  # player-relative x, absolute y


def _shielder(spec: BossSpec, fsm: BossFsmState, state: SimState,
              cmd: EnemyCommand, spawns: list[SpawnRequest]) -> None:
    d = _dir_to_player(state)
    fsm.phase_timer -= 1
    if fsm.phase == SHIELDER_SHIELD:
        cmd.suppress_damage = True
        cmd.move_vx = d * spec.move_speed
        if fsm.phase_timer <= 0:
            fsm.phase = SHIELDER_OPEN
            fsm.phase_timer = spec.open_ticks
            mx, my = _muzzle(state, spec, d)
            for ux, uy in _SPREAD_DIRS[:spec.burst_count]:
                vx = sdiv(d * ux * spec.bullet_speed, 256)
                vy = sdiv(uy * spec.bullet_speed, 256)
                spawns.append(SpawnRequest(mx, my, vx, vy))
    else:  # OPEN (vulnerable, stands still)
        if fsm.phase_timer <= 0:
            fsm.phase = SHIELDER_SHIELD
            fsm.phase_timer = spec.shield_ticks


def _teleporter(spec: BossSpec, fsm: BossFsmState, state: SimState,
                cmd: EnemyCommand, spawns: list[SpawnRequest]) -> None:
    cfg = state.config
    fsm.phase_timer -= 1
    if fsm.phase == TELE_IDLE:
        if fsm.phase_timer <= 0:
            tx = _relocate_target(state, spec)
            ty = cfg.floor_y_raw - spec.half_h
            fsm.target_x, fsm.target_y = tx, ty
            cmd.teleport = (tx, ty)
            fsm.phase = TELE_POST
            fsm.phase_timer = spec.burst_gap
            fsm.burst_counter = spec.burst_count
    else:  # POST: short aimed burst after arriving
        if fsm.phase_timer <= 0:
            d = _dir_to_player(state)
            mx, my = _muzzle(state, spec, d)
            vx, vy = _aim(mx, my, state, spec.bullet_speed)
            spawns.append(SpawnRequest(mx, my, vx, vy))
            fsm.burst_counter -= 1
            fsm.phase_timer = spec.burst_gap
            if fsm.burst_counter <= 0:
                fsm.phase = TELE_IDLE
                fsm.phase_timer = spec.teleport_period


_HANDLERS = {
    "rusher": _rusher,
    "hopper": _hopper,
    "gunner": _gunner,
    "rainer": _rainer,
    "tracker": _tracker,
    "zigzag": _zigzag,
    "shielder": _shielder,
    "teleporter": _teleporter,
}
