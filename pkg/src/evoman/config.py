"""Run configuration: JSON config file + command-line override merging.

Precedence is built-in defaults < config file < command-line flags.  The
file is strict: unknown keys anywhere are errors, because a typoed
"mutation_rat" silently running at the default has burned enough people.

Layout:

    {
      "match":     { ... MatchConfig fields ... ,
                     "roster": [ { ... BossSpec fields ... }, x8 ] },
      "evolution": { ... EvoConfig scalar fields ... }
    }
"""

from __future__ import annotations

import dataclasses
import json
import os
from pathlib import Path

from .bosses import BossSpec
from .state import MatchConfig

ENV_CONFIG = "EVOMAN_CONFIG"


class ConfigError(ValueError):
    pass


_MATCH_FIELDS = {f.name for f in dataclasses.fields(MatchConfig)} - {"roster"}
_BOSS_FIELDS = {f.name for f in dataclasses.fields(BossSpec)}

# EvoConfig fields settable from a file (mode and match_config are wired
# by the CLI, not the file)
EVO_FILE_FIELDS = {
    "population_size", "generations", "tournament_k", "crossover_rate",
    "mutation_rate", "mutation_sigma", "elitism_count", "seed",
    "repetitions_per_boss", "weight_clamp", "n_jobs",
}


def _check_keys(doc: dict, allowed: set[str], where: str) -> None:
    unknown = set(doc) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(sorted(unknown))}")


def load_config_file(path: Path | str) -> dict:
    """Parse and validate a config file; returns {'match': ..., 'evolution': ...}."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config file must contain a JSON object")
    _check_keys(doc, {"match", "evolution"}, "config file")
    match = doc.get("match", {})
    evolution = doc.get("evolution", {})
    if not isinstance(match, dict) or not isinstance(evolution, dict):
        raise ConfigError("'match' and 'evolution' sections must be objects")
    _check_keys(match, _MATCH_FIELDS | {"roster"}, "'match'")
    _check_keys(evolution, EVO_FILE_FIELDS, "'evolution'")
    roster = match.get("roster")
    if roster is not None:
        if not isinstance(roster, list) or not roster:
            raise ConfigError("'match.roster' must be a non-empty list of boss specs")
        for i, spec in enumerate(roster):
            if not isinstance(spec, dict):
                raise ConfigError(f"'match.roster[{i}]' must be an object")
            _check_keys(spec, _BOSS_FIELDS, f"'match.roster[{i}]'")
            missing = {"boss_id", "name", "archetype", "half_w", "half_h", "spawn_x"} - set(spec)
            if missing:
                raise ConfigError(
                    f"'match.roster[{i}]' missing: {', '.join(sorted(missing))}")
    return {"match": match, "evolution": evolution}


def find_config(explicit: str | None) -> dict:
    """Resolve the effective config file: --config flag, else $EVOMAN_CONFIG,
    else empty."""
    path = explicit or os.environ.get(ENV_CONFIG)
    if not path:
        return {"match": {}, "evolution": {}}
    return load_config_file(path)


def build_match_config(file_match: dict) -> MatchConfig:
    kwargs = dict(file_match)
    roster = kwargs.pop("roster", None)
    if roster is not None:
        kwargs["roster"] = tuple(BossSpec(**spec) for spec in roster)
    try:
        return MatchConfig(**kwargs)
    except TypeError as exc:
        raise ConfigError(f"bad match config: {exc}") from exc
