"""Controllers: mapping sensor vectors to actions.

The trainable controller is a fixed-topology perceptron over the 20
normalized sensors with 5 outputs, one per action bit.  Genomes are the
flat weight vector in a canonical layout:

    layer by layer, each neuron's input weights in input order, then its
    bias.  Hidden layer first (when present), output layer second.

Hidden activation is tanh, output activation is the logistic sigmoid, and
an action bit is set when its output exceeds 0.5 — equivalently, when its
pre-sigmoid activation is strictly positive, which is how both the fast
path and the test oracle threshold it.

Weights are float32: the genome file serializes them as decimals with 9
significant digits, which round-trips binary32 exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .rng import SplitMix64
from .sensors import SENSOR_COUNT
from .state import DEFAULT_CONFIG, ActionSet, MatchConfig

GENOME_FORMAT_VERSION = 1

N_INPUTS = 20
N_OUTPUTS = 5
HIDDEN_SIZES = (0, 10, 50)


class GenomeFormatError(ValueError):
    """Malformed genome document; the message names the offending field."""


@dataclass(frozen=True)
class MlpTopology:
    """Network shape. inputs and outputs are fixed by the sensor/action
    contracts; hidden is 0 (single-layer) or 10/50."""

    hidden: int
    inputs: int = N_INPUTS
    outputs: int = N_OUTPUTS

    def __post_init__(self) -> None:
        if self.inputs != N_INPUTS or self.outputs != N_OUTPUTS:
            raise ValueError("topology must be 20 inputs / 5 outputs")
        if self.hidden not in HIDDEN_SIZES:
            raise ValueError(f"hidden must be one of {HIDDEN_SIZES}, got {self.hidden}")


def parameter_count(t: MlpTopology) -> int:
    if t.hidden == 0:
        return (t.inputs + 1) * t.outputs
    return (t.inputs + 1) * t.hidden + (t.hidden + 1) * t.outputs


@dataclass(frozen=True)
class Genome:
    weights: np.ndarray  # float32, length parameter_count(topology)
    topology: MlpTopology

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=np.float32)
        object.__setattr__(self, "weights", w)
        expected = parameter_count(self.topology)
        if w.ndim != 1 or len(w) != expected:
            raise ValueError(
                f"genome needs {expected} weights for hidden={self.topology.hidden}, "
                f"got {len(w)}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Genome):
            return NotImplemented
        return self.topology == other.topology and np.array_equal(self.weights, other.weights)


def random_genome(topology: MlpTopology, rng: SplitMix64,
                  lo: float = -1.0, hi: float = 1.0) -> Genome:
    n = parameter_count(topology)
    w = np.array([rng.uniform(lo, hi) for _ in range(n)], dtype=np.float32)
    return Genome(w, topology)


def _unpack(g: Genome) -> tuple[np.ndarray, np.ndarray, np.ndarray | None, np.ndarray | None]:
    """Split the flat vector into (W_out, b_out, W_hidden, b_hidden) float64."""
    t = g.topology
    w = g.weights.astype(np.float64)
    if t.hidden == 0:
        layer = w.reshape(t.outputs, t.inputs + 1)
        return layer[:, :-1], layer[:, -1], None, None
    n_hidden = (t.inputs + 1) * t.hidden
    hid = w[:n_hidden].reshape(t.hidden, t.inputs + 1)
    out = w[n_hidden:].reshape(t.outputs, t.hidden + 1)
    return out[:, :-1], out[:, -1], hid[:, :-1], hid[:, -1]


def _logits(g: Genome, x: np.ndarray) -> np.ndarray:
    w_out, b_out, w_hid, b_hid = _unpack(g)
    if w_hid is not None:
        x = np.tanh(w_hid @ x + b_hid)
    return w_out @ x + b_out


def mlp_forward(g: Genome, normalized: Sequence[float]) -> ActionSet:
    """Forward pass over an already-normalized sensor vector."""
    if len(normalized) != SENSOR_COUNT:
        raise ValueError(f"expected {SENSOR_COUNT} inputs, got {len(normalized)}")
    logits = _logits(g, np.asarray(normalized, dtype=np.float64))
    bits = logits > 0.0
    return ActionSet(bool(bits[0]), bool(bits[1]), bool(bits[2]),
                     bool(bits[3]), bool(bits[4]))


class MlpPolicy:
    """Reusable match controller around one genome.

    Immutable after construction (safe to share across parallel matches);
    normalizes the raw sensors itself.
    """

    def __init__(self, genome: Genome, config: MatchConfig = DEFAULT_CONFIG) -> None:
        self.genome = genome
        self._w_out, self._b_out, self._w_hid, self._b_hid = _unpack(genome)
        scale = np.empty(SENSOR_COUNT)
        offset = np.zeros(SENSOR_COUNT)
        scale[0:16:2] = 1.0 / config.arena_w
        scale[1:16:2] = 1.0 / config.arena_h
        scale[16] = 1.0 / config.arena_w
        scale[17] = 1.0 / config.arena_h
        scale[18:] = 0.5
        offset[18:] = 0.5
        self._scale = scale
        self._offset = offset

    def act(self, sensors: Sequence[float]) -> ActionSet:
        x = np.asarray(sensors) * self._scale + self._offset
        if self._w_hid is not None:
            x = np.tanh(self._w_hid @ x + self._b_hid)
        logits = self._w_out @ x + self._b_out
        return ActionSet(bool(logits[0] > 0.0), bool(logits[1] > 0.0),
                         bool(logits[2] > 0.0), bool(logits[3] > 0.0),
                         bool(logits[4] > 0.0))


class ScriptedController:
    """Plays a fixed action sequence, idling once it runs out."""

    def __init__(self, actions: Sequence[ActionSet]) -> None:
        self._actions = list(actions)
        self._i = 0

    def reset(self) -> None:
        self._i = 0

    def act(self, sensors: Sequence[float]) -> ActionSet:
        if self._i < len(self._actions):
            a = self._actions[self._i]
            self._i += 1
            return a
        return ActionSet()


class IdleController:
    """Never presses anything; handy as a baseline and in tests."""

    def act(self, sensors: Sequence[float]) -> ActionSet:
        return ActionSet()


# ---------------------------------------------------------------------------
# Genome file format
# ---------------------------------------------------------------------------

def encode_genome(g: Genome) -> str:
    """Canonical genome document: JSON, weights as 9-significant-digit
    decimals (lossless for float32)."""
    t = g.topology
    ws = ",".join(format(float(w), ".9g") for w in g.weights)
    return (
        '{"format_version":%d,'
        '"topology":{"inputs":%d,"hidden":%d,"outputs":%d},'
        '"weights":[%s]}\n' % (GENOME_FORMAT_VERSION, t.inputs, t.hidden, t.outputs, ws)
    )


def decode_genome(text: str) -> Genome:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GenomeFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GenomeFormatError("top level must be an object")
    version = doc.get("format_version")
    if version != GENOME_FORMAT_VERSION:
        raise GenomeFormatError(f"format_version: expected {GENOME_FORMAT_VERSION}, got {version!r}")
    topo = doc.get("topology")
    if not isinstance(topo, dict):
        raise GenomeFormatError("topology: missing or not an object")
    try:
        topology = MlpTopology(inputs=int(topo["inputs"]), hidden=int(topo["hidden"]),
                               outputs=int(topo["outputs"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise GenomeFormatError(f"topology: {exc}") from exc
    weights = doc.get("weights")
    if not isinstance(weights, list):
        raise GenomeFormatError("weights: missing or not a list")
    expected = parameter_count(topology)
    if len(weights) != expected:
        raise GenomeFormatError(
            f"weights: expected {expected} values for hidden={topology.hidden}, "
            f"got {len(weights)}")
    for i, w in enumerate(weights):
        if not isinstance(w, (int, float)) or not math.isfinite(w):
            raise GenomeFormatError(f"weights[{i}]: not a finite number: {w!r}")
    return Genome(np.array(weights, dtype=np.float32), topology)


def write_genome(g: Genome, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(encode_genome(g))


def read_genome(path) -> Genome:
    with open(path, encoding="utf-8") as fh:
        return decode_genome(fh.read())
