"""Estimator-style entry point so the evolver composes with sklearn tooling."""

from __future__ import annotations

from pathlib import Path

import numpy as np
from sklearn.base import BaseEstimator

from .automaton import decode_genome, genome_to_hex, run_ant
from .ga import GaConfig, expose, run_evolution
from .mge import MgeConfig
from .trail import TrailGrid, load_bundled_trail, load_trail


class TrailAntEvolver(BaseEstimator):
    """Evolve a finite-state trail-following ant against a trail grid.

    Follows the scikit-learn estimator protocol where it applies: flat
    constructor parameters, ``get_params``/``set_params`` (so cloning and
    parameter search work), ``fit`` returning self, fitted attributes with
    trailing underscores, and ``score`` returning a higher-is-better float.
    There is no ``predict``/``transform``: a run has no per-sample axis.

    Parameters mirror GaConfig/MgeConfig; ``mge=False`` disables the
    mobile-element operators entirely.

    Attributes (after fit)
    ----------------------
    history_ : list of per-generation stats (best/mean score, marked count,
        operator-affected fractions).
    population_ : final population.
    best_genome_ : 448-bit genome of the best final ant.
    best_score_ : that ant's score on the training trail.
    trail_ : the trail grid trained against.

    Example
    -------
    >>> ev = TrailAntEvolver(generations=200, seed=7).fit()
    >>> 0.0 <= ev.score() <= 1.0
    True
    """

    def __init__(self, population_size=100, generations=5000, max_steps=330,
                 crossover_rate=0.0001, mutation_rate=0.04,
                 selection="truncation-mean", reproduce_quota=0.15,
                 crossover_kind="per-bit-tails", seed=0, mge=True,
                 min_len=5, max_len=11, period_n=5, mge1_rate=0.5, mge2_rate=0.5):
        self.population_size = population_size
        self.generations = generations
        self.max_steps = max_steps
        self.crossover_rate = crossover_rate
        self.mutation_rate = mutation_rate
        self.selection = selection
        self.reproduce_quota = reproduce_quota
        self.crossover_kind = crossover_kind
        self.seed = seed
        self.mge = mge
        self.min_len = min_len
        self.max_len = max_len
        self.period_n = period_n
        self.mge1_rate = mge1_rate
        self.mge2_rate = mge2_rate

    def _config(self) -> GaConfig:
        mge_cfg = None
        if self.mge:
            mge_cfg = MgeConfig(self.min_len, self.max_len, self.period_n,
                                self.mge1_rate, self.mge2_rate)
        cfg = GaConfig(
            population_size=self.population_size,
            generations=self.generations,
            max_steps=self.max_steps,
            crossover_rate=self.crossover_rate,
            mutation_rate=self.mutation_rate,
            selection=self.selection,
            reproduce_quota=self.reproduce_quota,
            crossover_kind=self.crossover_kind,
            seed=self.seed,
            mge=mge_cfg,
        )
        cfg.validate()
        return cfg

    @staticmethod
    def _as_grid(trail) -> TrailGrid:
        if trail is None:
            return load_bundled_trail()
        if isinstance(trail, TrailGrid):
            return trail
        if isinstance(trail, (str, Path)):
            return load_trail(Path(trail).read_text())
        raise TypeError(f"trail must be a TrailGrid, a path or None, got {type(trail)!r}")

    def fit(self, trail=None, y=None):
        """Evolve against a trail (the bundled one by default); returns self."""
        cfg = self._config()
        grid = self._as_grid(trail)
        history, population = run_evolution(cfg, grid)
        population.scores = expose(population, grid, cfg.max_steps)
        best = int(np.argmax(population.scores))
        self.history_ = history
        self.population_ = population
        self.trail_ = grid
        self.best_genome_ = population.genomes[best].copy()
        self.best_score_ = int(population.scores[best])
        return self

    def simulate(self, trail=None):
        """Trial of the fitted best ant on a trail (training trail by default)."""
        self._check_fitted()
        grid = self.trail_ if trail is None else self._as_grid(trail)
        return run_ant(decode_genome(self.best_genome_), grid, self.max_steps)

    def score(self, trail=None, y=None) -> float:
        """Fraction of trail cells the fitted best ant consumes."""
        result = self.simulate(trail)
        grid = self.trail_ if trail is None else self._as_grid(trail)
        return result.score / grid.total_cells if grid.total_cells else 0.0

    def best_genome_hex(self) -> str:
        self._check_fitted()
        return genome_to_hex(self.best_genome_)

    def _check_fitted(self):
        if not hasattr(self, "best_genome_"):
            raise RuntimeError("estimator is not fitted; call fit() first")
