"""Generational GA: Expose / Select / (MGE) / Reproduce.

Each generation scores every ant on the trail, marks ants for reproduction,
optionally runs the mobile-element operators, then overwrites every unmarked
genome with a copy of a marked one and applies crossover and point mutation
to those copies only; marked parents pass through untouched.

Determinism: one numpy Generator per run, seeded from the config, consumed in
a fixed order — population init, then per generation: selection draws (only
for roulette), MGE draws, parent-copy draws, crossover draws (one block per
consecutive offspring pair), mutation draws (one block over all offspring).
Scoring draws no randomness, so two runs with the same config are identical
bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator

import numpy as np

from . import _kernel
from .automaton import GENOME_BITS, decode_genome, run_ant
from .mge import MgeConfig, apply_mge_phase
from .trail import TrailGrid
from .validation import ConfigError, check_int, check_probability, check_quota

SELECTION_KINDS = ("truncation-mean", "truncation-quota", "roulette")
CROSSOVER_KINDS = ("per-bit-tails", "one-point")


@dataclass
class GaConfig:
    """All run parameters. Rates are per bit per generation."""

    population_size: int = 100
    generations: int = 5000
    max_steps: int = 330
    crossover_rate: float = 0.0001
    mutation_rate: float = 0.04
    selection: str = "truncation-mean"
    reproduce_quota: float = 0.15
    crossover_kind: str = "per-bit-tails"
    seed: int = 0
    mge: MgeConfig | None = field(default_factory=MgeConfig)

    def validate(self) -> None:
        check_int("population_size", self.population_size, minimum=1)
        check_int("generations", self.generations, minimum=0)
        check_int("max_steps", self.max_steps, minimum=0)
        check_probability("crossover_rate", self.crossover_rate)
        check_probability("mutation_rate", self.mutation_rate)
        check_quota("reproduce_quota", self.reproduce_quota)
        check_int("seed", self.seed, minimum=0)
        if self.selection not in SELECTION_KINDS:
            raise ConfigError(f"selection must be one of {SELECTION_KINDS}, got {self.selection!r}")
        if self.crossover_kind not in CROSSOVER_KINDS:
            raise ConfigError(
                f"crossover_kind must be one of {CROSSOVER_KINDS}, got {self.crossover_kind!r}")
        if self.mge is not None:
            self.mge.validate()

    def with_overrides(self, **kwargs) -> "GaConfig":
        """Copy with top-level or MgeConfig field overrides applied."""
        mge_fields = {"min_len", "max_len", "period_n", "mge1_rate", "mge2_rate"}
        ga_kwargs = {k: v for k, v in kwargs.items() if k not in mge_fields}
        mge_kwargs = {k: v for k, v in kwargs.items() if k in mge_fields}
        cfg = replace(self, **ga_kwargs)
        if mge_kwargs:
            if cfg.mge is None:
                raise ConfigError("cannot set MGE parameters while MGE is disabled")
            cfg.mge = replace(cfg.mge, **mge_kwargs)
        return cfg


@dataclass
class Population:
    genomes: np.ndarray           # (P, 448) uint8 bits
    scores: np.ndarray            # (P,) int64, filled by expose
    generation_index: int = 0

    @property
    def size(self) -> int:
        return self.genomes.shape[0]

    def snapshot(self) -> "Population":
        return Population(self.genomes.copy(), self.scores.copy(), self.generation_index)


@dataclass(frozen=True)
class GenerationStats:
    generation: int
    best_score: int
    mean_score: float
    marked_count: int
    mge1_affected_fraction: float
    mge2_affected_fraction: float


def initial_population(config: GaConfig, rng: np.random.Generator) -> Population:
    genomes = rng.integers(0, 2, size=(config.population_size, GENOME_BITS), dtype=np.uint8)
    scores = np.zeros(config.population_size, dtype=np.int64)
    return Population(genomes, scores)


def decode_population(genomes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized decode of all genomes into (P, 32, 2) action/next arrays."""
    entries = genomes.reshape(genomes.shape[0], 32, 2, 7).astype(np.uint8)
    actions = entries[..., 0] * 2 + entries[..., 1]
    weights = np.array([16, 8, 4, 2, 1], dtype=np.uint8)
    next_states = np.tensordot(entries[..., 2:], weights, axes=([3], [0])).astype(np.uint8)
    return actions, next_states


def expose(population: Population, grid: TrailGrid, max_steps: int) -> np.ndarray:
    """Score every ant on the trail. Pure; no randomness consumed."""
    actions, next_states = decode_population(population.genomes)
    if _kernel.HAVE_NUMBA:
        scores, _, _ = _kernel.run_batch(
            actions, next_states, grid.cells,
            grid.start.x, grid.start.y, int(grid.start.heading),
            max_steps, grid.total_cells,
        )
        return scores
    return np.array(
        [run_ant(decode_genome(g), grid, max_steps).score for g in population.genomes],
        dtype=np.int64,
    )


def select_truncation_mean(scores: np.ndarray) -> np.ndarray:
    """Mark every ant scoring strictly above the population mean.

    When no ant exceeds the mean (all scores equal) everyone is marked, so a
    degenerate generation reproduces as a no-op instead of dying out.
    """
    scores = np.asarray(scores)
    marks = scores > scores.mean()
    if not marks.any():
        return np.ones(len(scores), dtype=bool)
    return marks


def select_truncation_quota(scores: np.ndarray, quota: float) -> np.ndarray:
    """Mark exactly ceil(quota * N) top scorers, ties broken by lowest index."""
    scores = np.asarray(scores)
    n = len(scores)
    k = int(np.ceil(quota * n))
    order = np.lexsort((np.arange(n), -scores))  # score desc, index asc
    marks = np.zeros(n, dtype=bool)
    marks[order[:k]] = True
    return marks


def select_roulette(scores: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Mark each ant independently with probability score / max score.

    All-zero scores fall back to p = 0.5 for everyone; if nothing gets
    marked, the single best ant (lowest index on ties) is marked.
    """
    scores = np.asarray(scores, dtype=np.float64)
    top = scores.max()
    probs = scores / top if top > 0 else np.full(len(scores), 0.5)
    marks = rng.random(len(scores)) < probs
    if not marks.any():
        marks[int(np.argmax(scores))] = True
    return marks


def crossover_pair(
    a: np.ndarray, b: np.ndarray, rate: float, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Per-bit tail-swap crossover.

    Walking positions left to right, each position triggers with probability
    ``rate`` a swap of both tails from that position on (inclusive), i.e. a
    multi-point crossover whose points are per-bit Bernoulli draws.
    """
    if a.shape != b.shape:
        raise ValueError("genome length mismatch")
    points = rng.random(a.shape[0]) < rate
    swap = np.cumsum(points) % 2 == 1
    a2, b2 = a.copy(), b.copy()
    a2[swap], b2[swap] = b[swap], a[swap]
    return a2, b2


def crossover_one_point(
    a: np.ndarray, b: np.ndarray, rate: float, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Classic single-point variant, kept for sensitivity checks.

    With probability ``rate * len`` (capped at 1) one cut point is drawn and
    the tails are exchanged once.
    """
    if a.shape != b.shape:
        raise ValueError("genome length mismatch")
    n = a.shape[0]
    if rng.random() >= min(1.0, rate * n):
        return a.copy(), b.copy()
    cut = int(rng.integers(0, n))
    a2 = np.concatenate([a[:cut], b[cut:]])
    b2 = np.concatenate([b[:cut], a[cut:]])
    return a2, b2


def point_mutate(genome: np.ndarray, rate: float, rng: np.random.Generator) -> np.ndarray:
    """Flip each bit independently with probability ``rate``."""
    mask = rng.random(genome.shape[0]) < rate
    return genome ^ mask.astype(np.uint8)


def reproduce(
    population: Population, marks: np.ndarray, config: GaConfig, rng: np.random.Generator
) -> Population:
    """Overwrite unmarked genomes with copies of marked ones, then vary the copies.

    Each unmarked slot receives a uniformly chosen marked parent (one draw
    per slot, in index order). Crossover runs over consecutive pairs of the
    fresh copies, then point mutation over all of them. Mutates the
    population in place and returns it.
    """
    marks = np.asarray(marks, dtype=bool)
    if not marks.any():
        raise ValueError("reproduce requires at least one marked ant")
    parents = np.flatnonzero(marks)
    children = np.flatnonzero(~marks)
    if len(children) == 0:
        return population
    genomes = population.genomes
    picks = rng.integers(0, len(parents), size=len(children))
    genomes[children] = genomes[parents[picks]]

    cross = crossover_pair if config.crossover_kind == "per-bit-tails" else crossover_one_point
    for i in range(0, len(children) - 1, 2):
        ia, ib = children[i], children[i + 1]
        genomes[ia], genomes[ib] = cross(genomes[ia], genomes[ib], config.crossover_rate, rng)

    # One draw block over all offspring; consumes the generator stream exactly
    # as per-offspring point_mutate calls in index order would.
    flips = rng.random((len(children), GENOME_BITS)) < config.mutation_rate
    genomes[children] ^= flips.astype(np.uint8)
    return population


def _select(scores: np.ndarray, config: GaConfig, rng: np.random.Generator) -> np.ndarray:
    if config.selection == "truncation-mean":
        return select_truncation_mean(scores)
    if config.selection == "truncation-quota":
        return select_truncation_quota(scores, config.reproduce_quota)
    return select_roulette(scores, rng)


def evolve(
    config: GaConfig, grid: TrailGrid
) -> Iterator[tuple[GenerationStats, Population]]:
    """Generator over generations; yields (stats, population snapshot).

    The snapshot is taken after the generation's MGE phase and before
    reproduction, i.e. it is the gene pool the generation transmits: scores
    are the generation's exposure results and genomes carry the MGE edits
    (identical to the exposed genomes when MGE is off or left everything
    unchanged). Censuses computed on it therefore see the sequence forms the
    operators maintain, not the transient damage reproduction is about to
    overwrite. The final reproduced population is the generator's return
    value (see :func:`run_evolution`).
    """
    config.validate()
    rng = np.random.default_rng(config.seed)
    pop = initial_population(config, rng)
    for gen in range(config.generations):
        pop.generation_index = gen
        pop.scores = expose(pop, grid, config.max_steps)
        best = int(pop.scores.max())
        mean = float(pop.scores.mean())
        marks = _select(pop.scores, config, rng)
        if config.mge is not None:
            _, f1, f2 = apply_mge_phase(pop.genomes, config.mge, rng)
        else:
            f1 = f2 = 0.0
        transmitted = pop.snapshot()
        reproduce(pop, marks, config, rng)
        stats = GenerationStats(
            generation=gen,
            best_score=best,
            mean_score=mean,
            marked_count=int(marks.sum()),
            mge1_affected_fraction=f1,
            mge2_affected_fraction=f2,
        )
        yield stats, transmitted
    pop.generation_index = config.generations
    return pop


def run_evolution(config: GaConfig, grid: TrailGrid) -> tuple[list[GenerationStats], Population]:
    """Run the full loop; returns (per-generation stats, final population)."""
    steps = evolve(config, grid)
    history: list[GenerationStats] = []
    while True:
        try:
            stats, _ = next(steps)
        except StopIteration as stop:
            return history, stop.value
        history.append(stats)
