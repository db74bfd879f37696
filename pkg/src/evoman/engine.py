"""Match lifecycle: creating, stepping, and running one player-vs-boss fight.

`step` advances exactly one tick in a fixed, documented phase order; any
order would work, but this one is canonical because collision and spawn
ordering change outcomes:

    0. decrement invulnerability and shoot-cooldown timers
    1. query the boss FSM for its command + bullet spawn requests
    2. integrate player kinematics from the action
    3. integrate enemy kinematics (teleports apply here)
    4. integrate bullets, cull out-of-bounds ones
    5. spawn new bullets (player cooldown, 8-enemy-bullet cap)
    6. resolve collisions: enemy bullets -> player, player bullets -> enemy,
       then body contact -> player; each hit applies damage_per_hit and arms
       the target's invulnerability window
    7. update tick and outcome (simultaneous zero energy counts as a loss
       for the player; hitting max_ticks is a Timeout with energies kept)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Protocol, Sequence

from . import bosses
from .fixed import clamp
from .rng import derive_seed
from .state import (
    DEFAULT_CONFIG,
    ENEMY_BULLET_SLOTS,
    IDLE_ACTION,
    OWNER_ENEMY,
    OWNER_PLAYER,
    TOTAL_BULLET_SLOTS,
    ActionSet,
    Bullet,
    EntityState,
    MatchConfig,
    Outcome,
    SimState,
    aabb_overlap,
    state_hash,
)


class MatchOverError(RuntimeError):
    """Raised when stepping a match whose outcome is already decided."""


class MatchAbortError(RuntimeError):
    """A controller failed mid-match; distinct from losing."""


class Controller(Protocol):
    def act(self, sensors: Sequence[float]) -> ActionSet: ...


@dataclass(frozen=True)
class MatchResult:
    boss_id: int
    player_energy: int
    enemy_energy: int
    outcome: Outcome
    ticks: int
    state_hash: int
    seed: int


def _roster_for(config: MatchConfig) -> tuple[bosses.BossSpec, ...]:
    return config.roster if config.roster is not None else bosses.default_roster()


def new_match(boss_id: int, config: MatchConfig = DEFAULT_CONFIG,
              seed: int = 0) -> SimState:
    """Fresh match state: both energies at 100, tick 0, player at the left
    spawn, boss at its archetype spawn, RNG derived from (seed, boss_id)."""
    roster = _roster_for(config)
    if not 1 <= boss_id <= len(roster):
        raise ValueError(f"boss_id must be in 1..{len(roster)}, got {boss_id}")
    spec = roster[boss_id - 1]

    player = EntityState(
        pos_x=config.player_spawn_x * 256,
        pos_y=config.floor_y_raw - config.player_half_h,
        facing=1, width=config.player_half_w, height=config.player_half_h,
        grounded=True,
    )
    enemy = EntityState(
        pos_x=spec.spawn_x * 256,
        pos_y=config.floor_y_raw - spec.half_h,
        facing=-1, width=spec.half_w, height=spec.half_h,
        grounded=True,
    )
    bullets = [Bullet(owner=OWNER_ENEMY if i < ENEMY_BULLET_SLOTS else OWNER_PLAYER)
               for i in range(TOTAL_BULLET_SLOTS)]
    return SimState(
        tick=0, player=player, enemy=enemy, bullets=bullets,
        player_energy=100, enemy_energy=100,
        player_iframes=0, enemy_iframes=0, shoot_cooldown=0,
        boss_fsm=bosses.fsm_init(spec, enemy.pos_x, enemy.pos_y),
        rng=derive_seed(seed, boss_id),
        boss_id=boss_id, outcome=Outcome.ONGOING, config=config,
    )


def _integrate_entity(e: EntityState, vel_x: int, jump_vy: int,
                      release: bool, config: MatchConfig) -> None:
    """Shared kinematics for player and enemy: horizontal set-velocity,
    optional jump impulse, jump cut, gravity, wall/floor/ceiling clamps."""
    e.vel_x = vel_x
    if jump_vy > 0 and e.grounded:
        e.vel_y = -jump_vy
        e.grounded = False
    if release and e.vel_y < 0:
        e.vel_y = 0
    if not e.grounded:
        e.vel_y += config.gravity
    e.pos_x = clamp(e.pos_x + e.vel_x, e.width, config.arena_w_raw - e.width)
    e.pos_y += e.vel_y
    floor = config.floor_y_raw
    if e.pos_y + e.height >= floor:
        e.pos_y = floor - e.height
        e.vel_y = 0
        e.grounded = True
    else:
        e.grounded = False
        if e.pos_y - e.height < 0:
            e.pos_y = e.height
            if e.vel_y < 0:
                e.vel_y = 0


def _step_inplace(s: SimState, action: ActionSet) -> None:
    cfg = s.config
    spec = _roster_for(cfg)[s.boss_id - 1]

    # 0. timers
    if s.player_iframes:
        s.player_iframes -= 1
    if s.enemy_iframes:
        s.enemy_iframes -= 1
    if s.shoot_cooldown:
        s.shoot_cooldown -= 1

    # 1. boss decision (may advance s.rng)
    cmd, spawns, s.boss_fsm = bosses.advance_boss(spec, s.boss_fsm, s)

    # 2. player kinematics
    p = s.player
    if action.left and not action.right:
        p.facing = -1
    elif action.right and not action.left:
        p.facing = 1
    vel_x = (int(action.right) - int(action.left)) * cfg.move_speed
    _integrate_entity(p, vel_x,
                      cfg.jump_impulse if action.jump else 0,
                      action.release, cfg)

    # 3. enemy kinematics
    e = s.enemy
    if cmd.teleport is not None:
        tx, ty = cmd.teleport
        e.pos_x = clamp(tx, e.width, cfg.arena_w_raw - e.width)
        e.pos_y = min(ty, cfg.floor_y_raw - e.height)
        e.vel_x = 0
        e.vel_y = 0
        e.grounded = e.pos_y == cfg.floor_y_raw - e.height
    else:
        _integrate_entity(e, cmd.move_vx, cmd.jump_vy, False, cfg)
    dx = p.pos_x - e.pos_x
    if dx != 0:
        e.facing = 1 if dx > 0 else -1

    # 4. bullets: integrate + cull
    w_raw, h_raw = cfg.arena_w_raw, cfg.arena_h_raw
    for b in s.bullets:
        if not b.alive:
            continue
        b.pos_x += b.vel_x
        b.pos_y += b.vel_y
        if not (0 <= b.pos_x <= w_raw and 0 <= b.pos_y <= h_raw):
            b.alive = False

    # 5. spawns: enemy requests into slots 0..7, then the player's shot
    if spawns:
        slot = 0
        for req in spawns:
            while slot < ENEMY_BULLET_SLOTS and s.bullets[slot].alive:
                slot += 1
            if slot >= ENEMY_BULLET_SLOTS:
                break
            b = s.bullets[slot]
            b.pos_x, b.pos_y = req.pos_x, req.pos_y
            b.vel_x, b.vel_y = req.vel_x, req.vel_y
            b.alive = True
    if action.shoot and s.shoot_cooldown == 0:
        for i in range(ENEMY_BULLET_SLOTS, TOTAL_BULLET_SLOTS):
            b = s.bullets[i]
            if not b.alive:
                b.pos_x = clamp(p.pos_x + p.facing * (p.width + cfg.bullet_half),
                                0, w_raw)
                b.pos_y = p.pos_y
                b.vel_x = p.facing * cfg.player_bullet_speed
                b.vel_y = 0
                b.alive = True
                s.shoot_cooldown = cfg.shoot_cooldown_ticks
                break

    # 6. collisions
    dmg = cfg.damage_per_hit
    bh = cfg.bullet_half
    for b in s.bullets[:ENEMY_BULLET_SLOTS]:
        if b.alive and aabb_overlap(b.pos_x, b.pos_y, bh, bh,
                                    p.pos_x, p.pos_y, p.width, p.height):
            b.alive = False
            if s.player_iframes == 0:
                s.player_energy = max(0, s.player_energy - dmg)
                s.player_iframes = cfg.player_bullet_iframe_ticks
    enemy_hit_iframes = spec.hit_iframes or cfg.enemy_iframe_ticks
    for b in s.bullets[ENEMY_BULLET_SLOTS:]:
        if b.alive and aabb_overlap(b.pos_x, b.pos_y, bh, bh,
                                    e.pos_x, e.pos_y, e.width, e.height):
            b.alive = False
            if s.enemy_iframes == 0 and not cmd.suppress_damage:
                s.enemy_energy = max(0, s.enemy_energy - dmg)
                s.enemy_iframes = enemy_hit_iframes
    if (s.player_iframes == 0
            and aabb_overlap(p.pos_x, p.pos_y, p.width, p.height,
                             e.pos_x, e.pos_y, e.width, e.height)):
        s.player_energy = max(0, s.player_energy - dmg)
        s.player_iframes = cfg.player_iframe_ticks

    # 7. tick + outcome (player checked first: simultaneous zero is a loss)
    s.tick += 1
    if s.player_energy == 0:
        s.outcome = Outcome.ENEMY_WON
    elif s.enemy_energy == 0:
        s.outcome = Outcome.PLAYER_WON
    elif s.tick >= cfg.max_ticks:
        s.outcome = Outcome.TIMEOUT


def step(state: SimState, action: ActionSet) -> SimState:
    """Advance one tick and return the successor; the input is untouched."""
    if state.outcome != Outcome.ONGOING:
        raise MatchOverError(f"match already ended: {state.outcome.name}")
    nxt = state.clone()
    _step_inplace(nxt, action)
    return nxt


def run_match(controller: Controller, boss_id: int,
              config: MatchConfig = DEFAULT_CONFIG, seed: int = 0,
              action_log: list[ActionSet] | None = None,
              on_tick: Callable[[SimState], None] | None = None,
              on_step: Callable[[ActionSet, SimState], None] | None = None,
              ) -> MatchResult:
    """Run a full match under `controller` and return the result.

    The controller sees raw (pixel-unit) sensor values each tick and returns
    an ActionSet.  Controller exceptions become MatchAbortError: a crashed
    agent is not the same thing as a lost match.  `action_log` collects the
    per-tick actions for replay recording; `on_tick` observes each pre-step
    state, `on_step` each (action, post-step state) pair.
    """
    from .sensors import extract_sensors

    reset = getattr(controller, "reset", None)
    if reset is not None:
        reset()
    s = new_match(boss_id, config, seed)
    while s.outcome == Outcome.ONGOING:
        if on_tick is not None:
            on_tick(s)
        try:
            action = controller.act(extract_sensors(s))
        except Exception as exc:  # noqa: BLE001 - deliberate firewall
            raise MatchAbortError(f"controller failed at tick {s.tick}: {exc}") from exc
        if action_log is not None:
            action_log.append(action)
        _step_inplace(s, action)
        if on_step is not None:
            on_step(action, s)
    if on_tick is not None:
        on_tick(s)
    return MatchResult(
        boss_id=boss_id,
        player_energy=s.player_energy,
        enemy_energy=s.enemy_energy,
        outcome=s.outcome,
        ticks=s.tick,
        state_hash=state_hash(s),
        seed=seed,
    )


def run_scripted(actions: Sequence[ActionSet], boss_id: int,
                 config: MatchConfig = DEFAULT_CONFIG, seed: int = 0) -> MatchResult:
    """Run a match from a fixed action list (idle after it runs out)."""
    s = new_match(boss_id, config, seed)
    i = 0
    while s.outcome == Outcome.ONGOING:
        a = actions[i] if i < len(actions) else IDLE_ACTION
        _step_inplace(s, a)
        i += 1
    return MatchResult(boss_id, s.player_energy, s.enemy_energy, s.outcome,
                       s.tick, state_hash(s), seed)
