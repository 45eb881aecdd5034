"""Seeded multi-run experiment harness with CSV output.

An experiment is a base configuration, a list of named variants (config
overrides) and a run count. Every (variant, run) pair gets its own seed
derived from the experiment seed with a splitmix64 avalanche hash, so output
trees are a pure function of the experiment spec: running the same spec
twice produces byte-identical files. Runs execute sequentially in (variant, run) order;
every run is independent, so the loop is trivially parallelizable, but the
files are always written by this single orchestrator in a fixed order.

Per run: curves.csv (one row per generation), census.csv (one row per
recorded sequence form per generation) and timeline.csv (dominance shifts).
Per variant: aggregate_curves.csv (generation,mean_best,mean_mean). At the
top level: plot_scores.csv (generation plus best/mean column pair per
variant, in variant order) and plot_fractions.csv (per-generation mean
operator-affected fractions; unprefixed columns when there is one variant).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .analytics import (
    DEFAULT_ABUNDANCE_THRESHOLD,
    Aggregate,
    DominanceTimeline,
    RunSummary,
    aggregate_runs,
    census,
    summarize_run,
    update_timeline,
)
from .automaton import genome_to_hex
from .ga import GaConfig, GenerationStats, evolve, expose
from .mge import MgeConfig
from .trail import TrailGrid, load_bundled_trail, load_trail
from .validation import ConfigError, check_int

#: Score milestones recorded for the bundled trail: first one past the
#: 64-cell corridor (the hard diagonal gap), second at 90% of the trail.
DEFAULT_MILESTONES = (65, 81)


@dataclass
class ExperimentSpec:
    config: GaConfig = field(default_factory=GaConfig)
    runs: int = 1
    base_seed: int = 0
    variants: list[tuple[str, dict]] = field(default_factory=lambda: [("default", {})])
    out_dir: Path = Path("out")
    trail_path: Path | None = None  # None = bundled trail
    dump_best: bool = False
    milestones: tuple[int, ...] = DEFAULT_MILESTONES
    abundance_threshold: int = DEFAULT_ABUNDANCE_THRESHOLD

    def validate(self) -> None:
        check_int("runs", self.runs, minimum=1)
        check_int("base_seed", self.base_seed, minimum=0)
        names = [name for name, _ in self.variants]
        if len(set(names)) != len(names):
            raise ConfigError(f"variant names must be unique, got {names}")
        if not self.variants:
            raise ConfigError("experiment needs at least one variant")
        self.config.validate()

    def load_grid(self) -> TrailGrid:
        if self.trail_path is None:
            return load_bundled_trail()
        return load_trail(Path(self.trail_path).read_text())


def splitmix64(x: int) -> int:
    """One round of the splitmix64 avalanche hash (64-bit, pure integer)."""
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


def run_seed(base_seed: int, variant_index: int, run_index: int) -> int:
    """Per-run seed; distinct for distinct (variant, run) pairs."""
    s = splitmix64(base_seed & 0xFFFFFFFFFFFFFFFF)
    s = splitmix64(s ^ variant_index)
    return splitmix64(s ^ run_index)


# Desk-scale presets; pass --runs/--generations to restore full scale.
PRESETS: dict[str, dict] = {
    "fig5": dict(
        runs=30,
        overrides=dict(generations=1500, population_size=100),
        variants=[("test", {}), ("control", {"mge": None})],
    ),
    "fig7": dict(
        runs=20,
        overrides=dict(generations=1500, population_size=100),
        variants=[("len32", {"max_len": 32}), ("len11", {"max_len": 11})],
    ),
    "fig8": dict(
        runs=20,
        overrides=dict(generations=1500, population_size=100),
        variants=[("rate50", {"mge2_rate": 0.50}), ("rate05", {"mge2_rate": 0.05}),
                  ("control", {"mge": None})],
    ),
    "fig9": dict(
        runs=1,
        overrides=dict(generations=60, population_size=1000),
        variants=[("test", {})],
    ),
}


@dataclass
class RunResult:
    stats: list[GenerationStats]
    summary: RunSummary
    timeline: DominanceTimeline


@dataclass
class VariantResult:
    name: str
    runs: list[RunResult]
    aggregate: Aggregate
    mean_mge1: list[float]
    mean_mge2: list[float]


def run_single(
    config: GaConfig, grid: TrailGrid, milestones: tuple[int, ...],
    threshold: int = DEFAULT_ABUNDANCE_THRESHOLD,
) -> RunResult:
    """One evolution run with per-generation census and dominance tracking."""
    census_cfg = config.mge if config.mge is not None else MgeConfig()
    timeline = DominanceTimeline(abundance_threshold=threshold)
    stats_list: list[GenerationStats] = []
    steps = evolve(config, grid)
    while True:
        try:
            stats, exposed = next(steps)
        except StopIteration as stop:
            final_pop = stop.value
            break
        stats_list.append(stats)
        update_timeline(timeline, census(exposed, census_cfg, stats.generation, threshold))
    summary = summarize_run(stats_list, list(milestones))
    final_pop.scores = expose(final_pop, grid, config.max_steps)
    summary.best_genome_hex = genome_to_hex(final_pop.genomes[int(np.argmax(final_pop.scores))])
    return RunResult(stats_list, summary, timeline)


def _write(path: Path, header: str, rows: list[str]) -> None:
    text = "\n".join([header, *rows]) + "\n"
    path.write_text(text, newline="\n")


def _write_run_files(run_dir: Path, result: RunResult) -> None:
    run_dir.mkdir(parents=True, exist_ok=True)
    _write(
        run_dir / "curves.csv",
        "generation,best_score,mean_score,marked_count,mge1_affected_fraction,mge2_affected_fraction",
        [
            f"{s.generation},{s.best_score},{s.mean_score!r},{s.marked_count},"
            f"{s.mge1_affected_fraction!r},{s.mge2_affected_fraction!r}"
            for s in result.stats
        ],
    )
    census_rows = []
    for rec in result.timeline.records:
        for code in sorted(rec.counts):
            census_rows.append(
                f"{rec.generation},{code},{rec.counts[code]},{rec.kinds[code].value},"
                f"{int(code == rec.dominant)}"
            )
    _write(run_dir / "census.csv", "generation,code,count,kind,is_dominant", census_rows)
    _write(
        run_dir / "timeline.csv",
        "generation,old_dominant,new_dominant",
        [f"{g},{old or ''},{new or ''}" for g, old, new in result.timeline.shifts],
    )


def run_experiment(spec: ExperimentSpec) -> dict[str, VariantResult]:
    """Execute every (variant, run) pair and write the output tree."""
    spec.validate()
    grid = spec.load_grid()
    out = Path(spec.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    results: dict[str, VariantResult] = {}
    for vi, (name, overrides) in enumerate(spec.variants):
        variant_dir = out / name
        run_results: list[RunResult] = []
        for r in range(spec.runs):
            cfg = spec.config.with_overrides(**overrides)
            cfg.seed = run_seed(spec.base_seed, vi, r)
            cfg.validate()
            result = run_single(cfg, grid, spec.milestones, spec.abundance_threshold)
            _write_run_files(variant_dir / f"run_{r:03d}", result)
            run_results.append(result)
        aggregate = aggregate_runs([rr.summary for rr in run_results])
        gens = spec.config.with_overrides(**overrides).generations
        if gens:
            mean_mge1 = np.mean(
                [[s.mge1_affected_fraction for s in rr.stats] for rr in run_results], axis=0
            ).tolist()
            mean_mge2 = np.mean(
                [[s.mge2_affected_fraction for s in rr.stats] for rr in run_results], axis=0
            ).tolist()
        else:
            mean_mge1, mean_mge2 = [], []
        results[name] = VariantResult(name, run_results, aggregate, mean_mge1, mean_mge2)
        _write(
            variant_dir / "aggregate_curves.csv",
            "generation,mean_best,mean_mean",
            [
                f"{g},{aggregate.mean_best[g]!r},{aggregate.mean_mean[g]!r}"
                for g in range(len(aggregate.mean_best))
            ],
        )
        if spec.dump_best:
            (variant_dir / "best_genomes.hex").write_text(
                "".join(rr.summary.best_genome_hex + "\n" for rr in run_results)
            )
    emit_plot_data(results, out, [name for name, _ in spec.variants])
    return results


def emit_plot_data(results: dict[str, VariantResult], out: Path, order: list[str]) -> None:
    """Figure-shaped plain-text data files over all variants."""
    variants = [results[name] for name in order]
    gens = len(variants[0].aggregate.mean_best) if variants else 0

    cols = ",".join(f"{v.name}_best,{v.name}_mean" for v in variants)
    rows = []
    for g in range(gens):
        cells = []
        for v in variants:
            cells.append(repr(v.aggregate.mean_best[g]))
            cells.append(repr(v.aggregate.mean_mean[g]))
        rows.append(f"{g}," + ",".join(cells))
    _write(out / "plot_scores.csv", f"generation,{cols}", rows)

    if len(variants) == 1:
        frac_cols = "mge1_fraction,mge2_fraction"
    else:
        frac_cols = ",".join(f"{v.name}_mge1,{v.name}_mge2" for v in variants)
    frac_rows = []
    for g in range(gens):
        cells = []
        for v in variants:
            cells.append(repr(v.mean_mge1[g]))
            cells.append(repr(v.mean_mge2[g]))
        frac_rows.append(f"{g}," + ",".join(cells))
    _write(out / "plot_fractions.csv", f"generation,{frac_cols}", frac_rows)
