"""EvoMan: deterministic boss-fight arena, neuroevolution toolkit, and
competition evaluation harness."""

__version__ = "0.1.0"

from .bosses import BossSpec, advance_boss, boss_roster, default_roster
from .controllers import (
    Genome,
    MlpPolicy,
    MlpTopology,
    ScriptedController,
    decode_genome,
    encode_genome,
    mlp_forward,
    parameter_count,
)
from .engine import (
    MatchAbortError,
    MatchOverError,
    MatchResult,
    new_match,
    run_match,
    step,
)
from .evaluation import GainReport, evaluate_all, gain, harmonic_mean, render_report
from .evolution import (
    Aggregation,
    EvoConfig,
    EvoHistory,
    Generalist,
    Individual,
    MultiObjective,
    evolve,
    non_dominated_sort,
)
from .replay import Replay, read_replay, record_match, verify_replay, write_replay
from .sensors import SENSOR_COUNT, extract_sensors, normalize
from .state import (
    ActionSet,
    Bullet,
    EntityState,
    MatchConfig,
    Outcome,
    SimState,
    aabb_overlap,
    mirror_state,
    state_hash,
)

__all__ = [
    "ActionSet", "Aggregation", "BossSpec", "Bullet", "EntityState",
    "EvoConfig", "EvoHistory", "GainReport", "Generalist", "Genome",
    "Individual", "MatchAbortError", "MatchConfig", "MatchOverError",
    "MatchResult", "MlpPolicy", "MlpTopology", "MultiObjective", "Outcome",
    "Replay", "SENSOR_COUNT", "ScriptedController", "SimState",
    "aabb_overlap", "advance_boss", "boss_roster", "decode_genome",
    "default_roster", "encode_genome", "evaluate_all", "evolve",
    "extract_sensors", "gain", "harmonic_mean", "mirror_state", "mlp_forward",
    "new_match", "non_dominated_sort", "normalize", "parameter_count",
    "read_replay", "record_match", "render_report", "run_match", "state_hash",
    "step", "verify_replay", "write_replay",
]
