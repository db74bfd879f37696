"""Replay files: seed + config digest + per-tick actions + final-state hash.

That tuple is sufficient to re-simulate a match bit-exactly, so a replay
is also a proof: `verify_replay` re-runs the recorded actions and checks
the trailer.  Files are line-delimited text with extension ".evr":

    evr1 roster=<version> boss=<id> seed=<u64> config=<hex16> genome=<hex16|human>
    <tick> <LRJSE bits, e.g. 10010>
    ...
    end ep=<int> ee=<int> outcome=<name> hash=<hex16> trace=<hex16>

Ticks run from 0 with no gaps; parse errors name the offending line.

The trailer carries two digests: `hash` is the final state's canonical
hash, and `trace` is an FNV-1a chain over every tick's (action byte,
post-step state bytes).  The chain is what makes tampering detectable
even when a flipped action bit happens to be a no-op for the physics
(say, a jump-cut while grounded): the action byte itself feeds the
digest, so any edit to the body diverges the trace.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from enum import Enum

from .bosses import ROSTER_VERSION
from .engine import Controller, _step_inplace, new_match, run_match
from .state import (
    ActionSet,
    MatchConfig,
    Outcome,
    SimState,
    canonical_bytes,
    fnv1a_64,
    state_hash,
)

REPLAY_VERSION = 1
_HEADER_TAG = f"evr{REPLAY_VERSION}"


def config_digest(config: MatchConfig) -> str:
    """16-hex-digit FNV-1a over the canonical JSON of the full config
    (roster parameters included, so a tournament pins its exact rules)."""
    doc = dataclasses.asdict(config)
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return format(fnv1a_64(canon.encode()), "016x")


def genome_digest(genome_text: str) -> str:
    return format(fnv1a_64(genome_text.encode()), "016x")


@dataclass(frozen=True)
class ReplayTrailer:
    player_energy: int
    enemy_energy: int
    outcome: Outcome
    final_hash: int   # canonical hash of the final state
    trace: int        # FNV-1a chain over all (action, post-step state) pairs


@dataclass(frozen=True)
class Replay:
    roster_version: str
    boss_id: int
    seed: int
    config_digest: str
    genome_digest: str        # or "human"
    actions: tuple[ActionSet, ...]   # index == tick
    trailer: ReplayTrailer


class ReplayParseError(ValueError):
    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class VerifyStatus(Enum):
    VERIFIED = "Verified"
    HASH_MISMATCH = "HashMismatch"
    CONFIG_MISMATCH = "ConfigMismatch"


@dataclass(frozen=True)
class VerifyResult:
    status: VerifyStatus
    tick: int | None = None   # earliest tick known bad, when detectable
    detail: str = ""

    def __bool__(self) -> bool:
        return self.status is VerifyStatus.VERIFIED


# ---------------------------------------------------------------------------
# Recording
# ---------------------------------------------------------------------------

def _action_byte(a: ActionSet) -> int:
    b = 0
    for i, bit in enumerate(a.bits()):
        if bit:
            b |= 1 << i
    return b


def trace_update(h: int, action: ActionSet, state: SimState) -> int:
    """Advance the trajectory digest by one (action, post-step state) pair."""
    return fnv1a_64(canonical_bytes(state), fnv1a_64(bytes([_action_byte(action)]), h))


def record_match(controller: Controller, boss_id: int, config: MatchConfig,
                 seed: int, genome: str = "human") -> tuple["MatchResult", Replay]:
    """Run a match and capture it as a verifiable replay."""
    log: list[ActionSet] = []
    trace = 0

    def on_step(action: ActionSet, state: SimState) -> None:
        nonlocal trace
        trace = trace_update(trace, action, state)

    result = run_match(controller, boss_id, config, seed,
                       action_log=log, on_step=on_step)
    trailer = ReplayTrailer(result.player_energy, result.enemy_energy,
                            result.outcome, result.state_hash, trace)
    replay = Replay(ROSTER_VERSION, boss_id, seed, config_digest(config),
                    genome, tuple(log), trailer)
    return result, replay


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _bits_str(a: ActionSet) -> str:
    return "".join("1" if b else "0" for b in a.bits())


def write_replay(replay: Replay) -> str:
    lines = [
        f"{_HEADER_TAG} roster={replay.roster_version} boss={replay.boss_id} "
        f"seed={replay.seed} config={replay.config_digest} genome={replay.genome_digest}"
    ]
    for tick, a in enumerate(replay.actions):
        lines.append(f"{tick} {_bits_str(a)}")
    t = replay.trailer
    lines.append(f"end ep={t.player_energy} ee={t.enemy_energy} "
                 f"outcome={t.outcome.wire_name} hash={t.final_hash:016x} "
                 f"trace={t.trace:016x}")
    return "\n".join(lines) + "\n"


def save_replay(replay: Replay, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_replay(replay))


_OUTCOME_BY_NAME = {o.wire_name: o for o in Outcome}


def _parse_kv(parts: list[str], lineno: int) -> dict[str, str]:
    out = {}
    for p in parts:
        if "=" not in p:
            raise ReplayParseError(lineno, f"expected key=value, got {p!r}")
        k, v = p.split("=", 1)
        out[k] = v
    return out


def read_replay(text: str) -> Replay:
    lines = text.splitlines()
    if not lines:
        raise ReplayParseError(1, "empty replay")
    head = lines[0].split()
    if not head or head[0] != _HEADER_TAG:
        raise ReplayParseError(1, f"expected {_HEADER_TAG} header, got {lines[0][:40]!r}")
    kv = _parse_kv(head[1:], 1)
    try:
        roster = kv["roster"]
        boss_id = int(kv["boss"])
        seed = int(kv["seed"])
        cfg_digest = kv["config"]
        gen_digest = kv["genome"]
    except KeyError as exc:
        raise ReplayParseError(1, f"header missing field {exc}") from exc

    actions: list[ActionSet] = []
    trailer: ReplayTrailer | None = None
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            raise ReplayParseError(lineno, "blank line inside replay")
        if trailer is not None:
            raise ReplayParseError(lineno, "content after trailer")
        parts = line.split()
        if parts[0] == "end":
            kv = _parse_kv(parts[1:], lineno)
            try:
                outcome = _OUTCOME_BY_NAME[kv["outcome"]]
                trailer = ReplayTrailer(int(kv["ep"]), int(kv["ee"]), outcome,
                                        int(kv["hash"], 16), int(kv["trace"], 16))
            except KeyError as exc:
                raise ReplayParseError(lineno, f"bad trailer field {exc}") from exc
            continue
        if len(parts) != 2:
            raise ReplayParseError(lineno, f"expected '<tick> <bits>', got {line!r}")
        try:
            tick = int(parts[0])
        except ValueError as exc:
            raise ReplayParseError(lineno, f"bad tick {parts[0]!r}") from exc
        if tick != len(actions):
            raise ReplayParseError(lineno, f"tick gap: expected {len(actions)}, got {tick}")
        bits = parts[1]
        if len(bits) != 5 or any(c not in "01" for c in bits):
            raise ReplayParseError(lineno, f"bad action bits {bits!r}")
        actions.append(ActionSet(*(c == "1" for c in bits)))
    if trailer is None:
        raise ReplayParseError(len(lines) + 1, "missing trailer line")
    return Replay(roster, boss_id, seed, cfg_digest, gen_digest,
                  tuple(actions), trailer)


def load_replay(path) -> Replay:
    with open(path, encoding="utf-8") as fh:
        return read_replay(fh.read())


def replay_to_json(replay: Replay) -> str:
    """Structured export for the browser replay viewer: header, per-tick
    action bits, and trailer in one JSON document."""
    doc = {
        "format_version": REPLAY_VERSION,
        "roster_version": replay.roster_version,
        "boss_id": replay.boss_id,
        "seed": replay.seed,
        "config_digest": replay.config_digest,
        "genome_digest": replay.genome_digest,
        "actions": [list(map(int, a.bits())) for a in replay.actions],
        "trailer": {
            "ep": replay.trailer.player_energy,
            "ee": replay.trailer.enemy_energy,
            "outcome": replay.trailer.outcome.wire_name,
            "hash": format(replay.trailer.final_hash, "016x"),
            "trace": format(replay.trailer.trace, "016x"),
        },
    }
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

def verify_replay(replay: Replay, config: MatchConfig) -> VerifyResult:
    """Re-simulate from the header and compare against the trailer.

    The local roster/config must match what the replay was recorded with;
    otherwise the re-simulation would be meaningless and the result is
    ConfigMismatch rather than a hash verdict.
    """
    if replay.roster_version != ROSTER_VERSION:
        return VerifyResult(VerifyStatus.CONFIG_MISMATCH, detail=(
            f"replay roster {replay.roster_version!r}, local {ROSTER_VERSION!r}"))
    local_digest = config_digest(config)
    if replay.config_digest != local_digest:
        return VerifyResult(VerifyStatus.CONFIG_MISMATCH, detail=(
            f"replay config {replay.config_digest}, local {local_digest}"))

    s = new_match(replay.boss_id, config, replay.seed)
    trace = 0
    for tick, action in enumerate(replay.actions):
        if s.outcome != Outcome.ONGOING:
            return VerifyResult(VerifyStatus.HASH_MISMATCH, tick=tick,
                                detail="match ended before recorded actions ran out")
        _step_inplace(s, action)
        trace = trace_update(trace, action, s)
    if s.outcome == Outcome.ONGOING:
        return VerifyResult(VerifyStatus.HASH_MISMATCH, tick=len(replay.actions),
                            detail="match still running after recorded actions")
    t = replay.trailer
    if (state_hash(s) != t.final_hash or trace != t.trace
            or s.player_energy != t.player_energy
            or s.enemy_energy != t.enemy_energy or s.outcome != t.outcome):
        return VerifyResult(VerifyStatus.HASH_MISMATCH,
                            detail="trailer does not match re-simulation")
    return VerifyResult(VerifyStatus.VERIFIED)
