"""Genetic algorithm over flat perceptron genomes.

Three training modes mirror the competition:

* Individual: fitness is the gain against one boss.
* Generalist: fitness aggregates the gains over a training subset
  (harmonic mean by default, matching the ranking metric; arithmetic
  mean available).
* MultiObjective: each training boss's gain is its own objective;
  survivor selection is non-dominated sorting with crowding-distance
  truncation, and the reported "best" is the front member with the best
  harmonic mean.

Determinism contract: everything derives from EvoConfig.seed.  Match seeds
are position-derived — mixed from (run seed, generation, individual index,
boss, repetition) — so fitness evaluation can run in any order, on any
number of workers, and still produce byte-identical histories.  Elites
carry their recorded fitness into the next generation instead of being
re-rolled on fresh seeds, which is what makes the best-fitness curve
non-decreasing.
"""

from __future__ import annotations

import json
import multiprocessing
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .controllers import Genome, MlpPolicy, MlpTopology, random_genome
from .evaluation import harmonic_mean, match_gain
from .engine import run_match
from .rng import SplitMix64, derive_seed
from .state import DEFAULT_CONFIG, MatchConfig

HISTORY_FORMAT_VERSION = 1
_GA_STREAM = 0x6741  # domain tag separating the GA's rng from match seeds


class Aggregation(Enum):
    MEAN = "mean"
    HARMONIC = "harmonic"


@dataclass(frozen=True)
class Individual:
    boss_id: int


@dataclass(frozen=True)
class Generalist:
    training_set: tuple[int, ...]
    aggregation: Aggregation = Aggregation.HARMONIC


@dataclass(frozen=True)
class MultiObjective:
    training_set: tuple[int, ...]


Mode = Individual | Generalist | MultiObjective


@dataclass(frozen=True)
class EvoConfig:
    mode: Mode
    population_size: int = 50
    generations: int = 100
    tournament_k: int = 3
    crossover_rate: float = 0.9
    mutation_rate: float = 0.04   # per gene
    mutation_sigma: float = 0.3
    elitism_count: int = 1
    seed: int = 0
    repetitions_per_boss: int = 1
    weight_clamp: float = 5.0
    match_config: MatchConfig = DEFAULT_CONFIG
    n_jobs: int = 1               # workers for fitness evaluation


@dataclass(frozen=True)
class FitnessRecord:
    index: int
    per_boss_gains: tuple[float, ...]
    fitness: float
    objectives: tuple[float, ...] = ()


@dataclass(frozen=True)
class GenerationRecord:
    generation: int
    best: float
    mean: float
    worst: float
    best_weights: np.ndarray


@dataclass
class EvoHistory:
    records: list[GenerationRecord] = field(default_factory=list)
    # Multi-objective mode: final non-dominated front as (weights, objectives)
    front: list[tuple[np.ndarray, tuple[float, ...]]] = field(default_factory=list)

    @property
    def best_curve(self) -> list[float]:
        return [r.best for r in self.records]


# ---------------------------------------------------------------------------
# Fitness evaluation
# ---------------------------------------------------------------------------

def evaluate_genome(genome: Genome, boss_ids: Sequence[int], cfg: EvoConfig,
                    generation: int = 0, index: int = 0) -> list[float]:
    """Mean gain per boss for one genome.

    Each match seed mixes (cfg.seed, generation, index, boss, repetition),
    so the value depends only on those coordinates, never on scheduling.
    """
    policy = MlpPolicy(genome, cfg.match_config)
    gains = []
    for boss in boss_ids:
        total = 0.0
        for rep in range(cfg.repetitions_per_boss):
            seed = derive_seed(cfg.seed, generation, index, boss, rep)
            total += match_gain(run_match(policy, boss, cfg.match_config, seed=seed))
        gains.append(total / cfg.repetitions_per_boss)
    return gains


def _eval_task(args) -> list[float]:
    weights, hidden, boss_ids, cfg, generation, index = args
    genome = Genome(weights, MlpTopology(hidden=hidden))
    return evaluate_genome(genome, boss_ids, cfg, generation, index)


def _evaluate_many(population: Sequence[Genome], indices: Sequence[int],
                   boss_ids: Sequence[int], cfg: EvoConfig, generation: int,
                   pool) -> dict[int, list[float]]:
    tasks = [(population[i].weights, population[i].topology.hidden,
              tuple(boss_ids), cfg, generation, i) for i in indices]
    if pool is not None:
        results = pool.map(_eval_task, tasks)
    else:
        results = [_eval_task(t) for t in tasks]
    return dict(zip(indices, results))


def aggregate(gains: Sequence[float], aggregation: Aggregation) -> float:
    if aggregation is Aggregation.MEAN:
        if not gains:
            raise ValueError("aggregate of an empty sequence")
        return sum(gains) / len(gains)
    return harmonic_mean(gains)


# ---------------------------------------------------------------------------
# Variation operators
# ---------------------------------------------------------------------------

def tournament_select(fitness: Sequence[float], k: int, rng: SplitMix64) -> int:
    """k distinct uniform entrants; the fittest wins, ties to the lowest index."""
    n = len(fitness)
    if not 1 <= k <= n:
        raise ValueError(f"tournament size {k} not in 1..{n}")
    idx = list(range(n))
    best = -1
    for i in range(k):
        j = i + rng.randrange(n - i)
        idx[i], idx[j] = idx[j], idx[i]
        c = idx[i]
        if best < 0 or fitness[c] > fitness[best] or (fitness[c] == fitness[best] and c < best):
            best = c
    return best


def crossover(a: Genome, b: Genome, rng: SplitMix64,
              rate: float = 0.9) -> Genome:
    """Uniform crossover with probability `rate`, else a copy of `a`."""
    if a.topology != b.topology:
        raise ValueError("crossover requires identical topologies")
    if rng.uniform(0.0, 1.0) >= rate:
        return Genome(a.weights.copy(), a.topology)
    wa, wb = a.weights, b.weights
    out = np.empty_like(wa)
    for i in range(len(wa)):
        out[i] = wa[i] if rng.randrange(2) == 0 else wb[i]
    return Genome(out, a.topology)


def mutate(g: Genome, cfg: EvoConfig, rng: SplitMix64) -> Genome:
    """Per-gene Gaussian perturbation, clamped to +/- cfg.weight_clamp."""
    w = g.weights.astype(np.float64)
    lo, hi = -cfg.weight_clamp, cfg.weight_clamp
    for i in range(len(w)):
        if rng.uniform(0.0, 1.0) < cfg.mutation_rate:
            v = w[i] + rng.gauss(cfg.mutation_sigma)
            w[i] = lo if v < lo else hi if v > hi else v
    return Genome(w.astype(np.float32), g.topology)


# ---------------------------------------------------------------------------
# Non-dominated sorting (maximization)
# ---------------------------------------------------------------------------

def _dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    better = False
    for x, y in zip(a, b):
        if x < y:
            return False
        if x > y:
            better = True
    return better


def non_dominated_sort(objectives: Sequence[Sequence[float]]) -> list[list[int]]:
    """Fronts of indices: front 0 undominated, front i dominated only by
    earlier fronts.  All vectors must have equal length; maximization."""
    n = len(objectives)
    if n == 0:
        return []
    m = len(objectives[0])
    for v in objectives:
        if len(v) != m:
            raise ValueError("objective vectors must all have the same length")
    dominated_by: list[list[int]] = [[] for _ in range(n)]
    dom_count = [0] * n
    for p in range(n):
        for q in range(p + 1, n):
            if _dominates(objectives[p], objectives[q]):
                dominated_by[p].append(q)
                dom_count[q] += 1
            elif _dominates(objectives[q], objectives[p]):
                dominated_by[q].append(p)
                dom_count[p] += 1
    fronts = [[i for i in range(n) if dom_count[i] == 0]]
    while True:
        nxt = []
        for p in fronts[-1]:
            for q in dominated_by[p]:
                dom_count[q] -= 1
                if dom_count[q] == 0:
                    nxt.append(q)
        if not nxt:
            break
        fronts.append(sorted(nxt))
    return fronts


def crowding_distance(objectives: Sequence[Sequence[float]]) -> list[float]:
    """NSGA-II crowding distance within one front (maximization)."""
    n = len(objectives)
    if n == 0:
        return []
    dist = [0.0] * n
    m = len(objectives[0])
    for k in range(m):
        order = sorted(range(n), key=lambda i: objectives[i][k])
        dist[order[0]] = dist[order[-1]] = float("inf")
        span = objectives[order[-1]][k] - objectives[order[0]][k]
        if span <= 0:
            continue
        for pos in range(1, n - 1):
            i = order[pos]
            dist[i] += (objectives[order[pos + 1]][k] - objectives[order[pos - 1]][k]) / span
    return dist


# ---------------------------------------------------------------------------
# The evolutionary loop
# ---------------------------------------------------------------------------

def _validate(cfg: EvoConfig, n_bosses: int) -> list[int]:
    if cfg.population_size < 1:
        raise ValueError("population_size must be >= 1")
    if cfg.generations < 0:
        raise ValueError("generations must be >= 0")
    if not 0 <= cfg.elitism_count < cfg.population_size:
        raise ValueError("elitism_count must be in [0, population_size)")
    if not 2 <= cfg.tournament_k <= cfg.population_size:
        raise ValueError("tournament_k must be in [2, population_size]")
    for name in ("crossover_rate", "mutation_rate"):
        v = getattr(cfg, name)
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must be in [0, 1]")
    if cfg.mutation_sigma <= 0:
        raise ValueError("mutation_sigma must be positive")
    if cfg.repetitions_per_boss < 1:
        raise ValueError("repetitions_per_boss must be >= 1")
    mode = cfg.mode
    if isinstance(mode, Individual):
        training = [mode.boss_id]
    elif isinstance(mode, (Generalist, MultiObjective)):
        training = list(mode.training_set)
    else:
        raise ValueError(f"unknown mode: {mode!r}")
    if not training or not all(1 <= b <= n_bosses for b in training):
        raise ValueError(f"training set must be a non-empty subset of 1..{n_bosses}")
    return training


def _scalar_fitness(gains: Sequence[float], mode: Mode) -> float:
    if isinstance(mode, Individual):
        return gains[0]
    if isinstance(mode, Generalist):
        return aggregate(gains, mode.aggregation)
    return harmonic_mean(gains)  # multi-objective history scalar


def _gen_record(generation: int, records: Sequence[FitnessRecord],
                population: Sequence[Genome]) -> GenerationRecord:
    fits = [r.fitness for r in records]
    best_i = max(range(len(fits)), key=lambda i: (fits[i], -i))
    return GenerationRecord(
        generation=generation,
        best=fits[best_i],
        mean=sum(fits) / len(fits),
        worst=min(fits),
        best_weights=population[best_i].weights.copy(),
    )


def evolve(cfg: EvoConfig, topology: MlpTopology) -> tuple[Genome, EvoHistory]:
    """Run the configured GA and return (best genome, per-generation history).

    Population initialization is uniform in [-1, 1].  Scalar modes use
    tournament selection + uniform crossover + Gaussian mutation with
    elitism; multi-objective mode uses (mu + lambda) survivor selection by
    front rank and crowding distance, protecting the best-harmonic-mean
    member so the history stays monotone.
    """
    n_bosses = len(cfg.match_config.roster) if cfg.match_config.roster is not None else 8
    training = _validate(cfg, n_bosses)
    rng = SplitMix64(derive_seed(cfg.seed, _GA_STREAM))
    population = [random_genome(topology, rng) for _ in range(cfg.population_size)]

    pool = None
    ctx = multiprocessing.get_context("fork")
    if cfg.n_jobs > 1:
        pool = ctx.Pool(cfg.n_jobs)
    try:
        records = _evaluate_all_records(population, training, cfg, 0, pool)
        history = EvoHistory()
        history.records.append(_gen_record(0, records, population))

        for gen in range(1, cfg.generations + 1):
            if isinstance(cfg.mode, MultiObjective):
                population, records = _next_gen_pareto(population, records, training,
                                                       cfg, rng, gen, pool)
            else:
                population, records = _next_gen_scalar(population, records, training,
                                                       cfg, rng, gen, pool)
            history.records.append(_gen_record(gen, records, population))

        if isinstance(cfg.mode, MultiObjective):
            objs = [r.objectives for r in records]
            front0 = non_dominated_sort(objs)[0]
            history.front = [(population[i].weights.copy(), records[i].objectives)
                             for i in front0]
        fits = [r.fitness for r in records]
        best_i = max(range(len(fits)), key=lambda i: (fits[i], -i))
        return population[best_i], history
    finally:
        if pool is not None:
            pool.close()
            pool.join()


def _evaluate_all_records(population: Sequence[Genome], training: Sequence[int],
                          cfg: EvoConfig, generation: int, pool,
                          carried: dict[int, FitnessRecord] | None = None,
                          ) -> list[FitnessRecord]:
    need = [i for i in range(len(population)) if carried is None or i not in carried]
    gains_by_index = _evaluate_many(population, need, training, cfg, generation, pool)
    records: list[FitnessRecord] = []
    for i in range(len(population)):
        if carried is not None and i in carried:
            prev = carried[i]
            records.append(FitnessRecord(i, prev.per_boss_gains, prev.fitness,
                                         prev.objectives))
        else:
            gains = tuple(gains_by_index[i])
            records.append(FitnessRecord(i, gains, _scalar_fitness(gains, cfg.mode),
                                         gains if isinstance(cfg.mode, MultiObjective)
                                         else ()))
    return records


def _next_gen_scalar(population, records, training, cfg, rng, generation, pool):
    fits = [r.fitness for r in records]
    elite_order = sorted(range(len(fits)), key=lambda i: (-fits[i], i))
    elites = elite_order[:cfg.elitism_count]

    next_pop: list[Genome] = [population[i] for i in elites]
    carried = {new_i: records[old_i] for new_i, old_i in enumerate(elites)}
    while len(next_pop) < cfg.population_size:
        p1 = tournament_select(fits, cfg.tournament_k, rng)
        p2 = tournament_select(fits, cfg.tournament_k, rng)
        child = mutate(crossover(population[p1], population[p2], rng,
                                 cfg.crossover_rate), cfg, rng)
        next_pop.append(child)
    next_records = _evaluate_all_records(next_pop, training, cfg, generation,
                                         pool, carried)
    return next_pop, next_records


def _crowded_order(objs: Sequence[Sequence[float]]) -> list[tuple[int, float]]:
    """(rank, -crowding) sort keys per index, for crowded-comparison."""
    fronts = non_dominated_sort(objs)
    keys: list[tuple[int, float]] = [(0, 0.0)] * len(objs)
    for rank, front in enumerate(fronts):
        dists = crowding_distance([objs[i] for i in front])
        for i, d in zip(front, dists):
            keys[i] = (rank, -d)
    return keys


def _next_gen_pareto(population, records, training, cfg, rng, generation, pool):
    objs = [r.objectives for r in records]
    keys = _crowded_order(objs)

    # crowded binary tournaments produce the offspring
    n = len(population)
    offspring: list[Genome] = []
    while len(offspring) < cfg.population_size:
        c1, c2 = rng.randrange(n), rng.randrange(n)
        p1 = c1 if (keys[c1], c1) <= (keys[c2], c2) else c2
        c3, c4 = rng.randrange(n), rng.randrange(n)
        p2 = c3 if (keys[c3], c3) <= (keys[c4], c4) else c4
        offspring.append(mutate(crossover(population[p1], population[p2], rng,
                                          cfg.crossover_rate), cfg, rng))
    off_gains = _evaluate_many(offspring, range(len(offspring)), training, cfg,
                               generation, pool)
    off_records = [FitnessRecord(i, tuple(g), _scalar_fitness(tuple(g), cfg.mode),
                                 tuple(g)) for i, g in sorted(off_gains.items())]

    # (mu + lambda) truncation by front rank then crowding, protecting the
    # best-harmonic-mean member (keeps the history monotone)
    combined_pop = list(population) + offspring
    combined_rec = list(records) + off_records
    combined_objs = [r.objectives for r in combined_rec]
    ckeys = _crowded_order(combined_objs)
    order = sorted(range(len(combined_pop)), key=lambda i: (ckeys[i], i))
    best_hm = max(range(len(combined_rec)),
                  key=lambda i: (combined_rec[i].fitness, -i))
    chosen = order[:cfg.population_size]
    if best_hm not in chosen:
        chosen[-1] = best_hm

    next_pop = [combined_pop[i] for i in chosen]
    next_records = [FitnessRecord(new_i, combined_rec[i].per_boss_gains,
                                  combined_rec[i].fitness, combined_rec[i].objectives)
                    for new_i, i in enumerate(chosen)]
    return next_pop, next_records


# ---------------------------------------------------------------------------
# History serialization (line-delimited records, one per generation)
# ---------------------------------------------------------------------------

def history_to_jsonl(history: EvoHistory) -> str:
    lines = []
    for r in history.records:
        lines.append(json.dumps({
            "format_version": HISTORY_FORMAT_VERSION,
            "generation": r.generation,
            "best": r.best,
            "mean": r.mean,
            "worst": r.worst,
            "best_weights": [float(format(float(w), ".9g")) for w in r.best_weights],
        }, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def history_from_jsonl(text: str) -> list[dict]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            out.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise ValueError(f"history line {lineno}: {exc}") from exc
    return out
