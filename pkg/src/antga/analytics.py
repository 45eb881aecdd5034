"""Transposon census, dominance timeline and cross-run score aggregation.

A census scans every ant's state-0 chain once and counts detected sequence
forms by their action code (an immature form's trailing N keeps it distinct
from the mature form with the same body). Forms below the abundance
threshold stay in the counts but can never be the dominant form, so rare
"explosions" remain visible without flapping the dominance record.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ga import GenerationStats, Population
from .mge import MgeConfig, TransposonKind, scan_genome

DEFAULT_ABUNDANCE_THRESHOLD = 10


@dataclass
class CensusRecord:
    generation: int
    counts: dict[str, int]
    kinds: dict[str, TransposonKind]
    dominant: str | None
    dominant_count: int


@dataclass
class DominanceTimeline:
    """Census history plus the generations where the dominant form changed."""

    abundance_threshold: int = DEFAULT_ABUNDANCE_THRESHOLD
    records: list[CensusRecord] = field(default_factory=list)
    shifts: list[tuple[int, str | None, str | None]] = field(default_factory=list)


def census(
    population: Population,
    cfg: MgeConfig,
    generation: int,
    threshold: int = DEFAULT_ABUNDANCE_THRESHOLD,
) -> CensusRecord:
    """Count sequence forms in a population, one per carrying ant.

    The dominant form is the count argmax among forms at or above the
    threshold, ties broken lexicographically on the code.
    """
    counts: dict[str, int] = {}
    kinds: dict[str, TransposonKind] = {}
    for genome in population.genomes:
        t = scan_genome(genome, cfg)
        if t is None:
            continue
        counts[t.code] = counts.get(t.code, 0) + 1
        kinds.setdefault(t.code, t.kind)
    dominant = None
    dominant_count = 0
    for code in sorted(counts):
        n = counts[code]
        if n >= threshold and n > dominant_count:
            dominant, dominant_count = code, n
    return CensusRecord(generation, counts, kinds, dominant, dominant_count)


def update_timeline(timeline: DominanceTimeline, record: CensusRecord) -> DominanceTimeline:
    """Append a census record, logging a shift when dominance changed."""
    if timeline.records and record.generation <= timeline.records[-1].generation:
        raise ValueError(
            f"census for generation {record.generation} arrived after "
            f"generation {timeline.records[-1].generation}"
        )
    previous = timeline.records[-1].dominant if timeline.records else None
    timeline.records.append(record)
    if record.dominant != previous:
        timeline.shifts.append((record.generation, previous, record.dominant))
    return timeline


@dataclass
class RunSummary:
    best: list[int]
    mean: list[float]
    milestones: dict[int, int | None]  # milestone score -> first generation reaching it
    best_genome_hex: str | None = None

    @property
    def generations(self) -> int:
        return len(self.best)


def summarize_run(
    stats: list[GenerationStats], milestones: list[int] | None = None
) -> RunSummary:
    """Best/mean curves plus first-generation-at-milestone marks."""
    best = [s.best_score for s in stats]
    mean = [s.mean_score for s in stats]
    reached: dict[int, int | None] = {}
    for m in milestones or []:
        reached[m] = next((i for i, b in enumerate(best) if b >= m), None)
    return RunSummary(best, mean, reached)


@dataclass
class Aggregate:
    mean_best: list[float]
    mean_mean: list[float]
    milestone_median: dict[int, float | None]
    milestone_success: dict[int, float]


def aggregate_runs(summaries: list[RunSummary]) -> Aggregate:
    """Pointwise mean curves and per-milestone median / success rate."""
    if not summaries:
        return Aggregate([], [], {}, {})
    n = summaries[0].generations
    if any(s.generations != n for s in summaries):
        raise ValueError("runs cover different generation counts")
    if n == 0:
        mean_best, mean_mean = [], []
    else:
        mean_best = np.mean([s.best for s in summaries], axis=0).tolist()
        mean_mean = np.mean([s.mean for s in summaries], axis=0).tolist()
    milestone_median: dict[int, float | None] = {}
    milestone_success: dict[int, float] = {}
    for m in summaries[0].milestones:
        hits = [s.milestones[m] for s in summaries if s.milestones.get(m) is not None]
        milestone_success[m] = len(hits) / len(summaries)
        milestone_median[m] = float(np.median(hits)) if hits else None
    return Aggregate(mean_best, mean_mean, milestone_median, milestone_success)
