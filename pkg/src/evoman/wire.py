"""Wire message grammar for the step server.

One JSON object per message, canonically serialized: fixed key order, no
whitespace, coordinates and sensors as fixed 8-decimal pixel values (exact
for the 1/256-pixel grid), gain with 2 decimals.  The same bytes frame a
message whether it travels over a socket or sits in a transcript file,
and golden tests pin them.

Client -> server:   reset {boss_id, seed} | action {tick, 5 bits} | close
Server -> client:   state {tick, player, enemy, bullets, sensors[20],
                    player_energy, enemy_energy} | result {outcome, ep, ee,
                    gain, ticks} | error {code, message}

Sensors travel raw (signed pixel distances, not normalized): pixels keep
the wire human-readable, and clients that want network inputs normalize
on their side.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .evaluation import gain as gain_of
from .sensors import extract_sensors
from .state import OWNER_ENEMY, ActionSet, SimState

class ProtocolError(ValueError):
    def __init__(self, code: str, message: str) -> None:
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


@dataclass(frozen=True)
class Reset:
    boss_id: int
    seed: int


@dataclass(frozen=True)
class Action:
    tick: int
    action: ActionSet


@dataclass(frozen=True)
class Close:
    pass


def _px(raw: int) -> str:
    """Fixed-point raw -> canonical pixel literal (exact, 8 decimals)."""
    return f"{raw / 256:.8f}"


def _f(v: float) -> str:
    return f"{v:.8f}"


# ---------------------------------------------------------------------------
# Encoding (canonical bytes)
# ---------------------------------------------------------------------------

def encode_state(s: SimState) -> str:
    p, e = s.player, s.enemy
    bullets = ",".join(
        '{"x":%s,"y":%s,"owner":"%s"}'
        % (_px(b.pos_x), _px(b.pos_y), "enemy" if b.owner == OWNER_ENEMY else "player")
        for b in s.bullets if b.alive
    )
    sensors = ",".join(_f(v) for v in extract_sensors(s))
    return (
        '{"type":"state","tick":%d,'
        '"player":{"x":%s,"y":%s,"facing":%d},'
        '"enemy":{"x":%s,"y":%s,"facing":%d},'
        '"bullets":[%s],"sensors":[%s],'
        '"player_energy":%d,"enemy_energy":%d}'
        % (s.tick, _px(p.pos_x), _px(p.pos_y), p.facing,
           _px(e.pos_x), _px(e.pos_y), e.facing,
           bullets, sensors, s.player_energy, s.enemy_energy)
    )


def encode_result(s: SimState) -> str:
    g = gain_of(s.player_energy, s.enemy_energy)
    return (
        '{"type":"result","outcome":"%s","ep":%d,"ee":%d,"gain":%.2f,"ticks":%d}'
        % (s.outcome.wire_name, s.player_energy, s.enemy_energy, g, s.tick)
    )


def encode_error(code: str, message: str) -> str:
    return '{"type":"error","code":%s,"message":%s}' % (
        json.dumps(code), json.dumps(message))


def encode_reset(boss_id: int, seed: int) -> str:
    return '{"type":"reset","boss_id":%d,"seed":%d}' % (boss_id, seed)


def encode_action(tick: int, a: ActionSet) -> str:
    bits = ",".join(f'"{n}":{"true" if v else "false"}'
                    for n, v in zip(("left", "right", "jump", "shoot", "release"),
                                    a.bits()))
    return '{"type":"action","tick":%d,%s}' % (tick, bits)


def encode_close() -> str:
    return '{"type":"close"}'


# ---------------------------------------------------------------------------
# Decoding (tolerant JSON in, strict field validation)
# ---------------------------------------------------------------------------

def decode_client_message(raw: str) -> Reset | Action | Close:
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ProtocolError("malformed", f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ProtocolError("malformed", "message must be a JSON object")
    kind = doc.get("type")
    if kind == "reset":
        try:
            return Reset(boss_id=int(doc["boss_id"]), seed=int(doc["seed"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ProtocolError("malformed", f"bad reset: {exc}") from exc
    if kind == "action":
        try:
            bits = [doc[n] for n in ("left", "right", "jump", "shoot", "release")]
            if not all(isinstance(b, bool) for b in bits):
                raise ProtocolError("malformed", "action bits must be booleans")
            return Action(tick=int(doc["tick"]), action=ActionSet(*bits))
        except (KeyError, TypeError, ValueError) as exc:
            raise ProtocolError("malformed", f"bad action: {exc}") from exc
    if kind == "close":
        return Close()
    raise ProtocolError("malformed", f"unknown message type: {kind!r}")
