"""Genetic algorithm with artificial-transposon operators on the ant trail problem."""

from .analytics import (
    Aggregate,
    CensusRecord,
    DominanceTimeline,
    RunSummary,
    aggregate_runs,
    census,
    summarize_run,
    update_timeline,
)
from .automaton import (
    Action,
    GENOME_BITS,
    StateTable,
    TrialResult,
    decode_genome,
    encode_table,
    genome_from_hex,
    genome_to_hex,
    random_genome,
    run_ant,
    scanning_table,
)
from .estimator import TrailAntEvolver
from .experiment import ExperimentSpec, PRESETS, run_experiment, run_seed, splitmix64
from .ga import (
    GaConfig,
    GenerationStats,
    Population,
    crossover_pair,
    evolve,
    expose,
    point_mutate,
    reproduce,
    run_evolution,
    select_roulette,
    select_truncation_mean,
    select_truncation_quota,
)
from .mge import (
    ActionChain,
    ChainElement,
    Mge1Event,
    Mge2Event,
    MgeConfig,
    Transposon,
    TransposonKind,
    apply_mge_phase,
    extract_chain,
    match_transposon,
    mge1_mutate,
    mge2_transpose,
    scan_genome,
)
from .trail import (
    Heading,
    Pose,
    TrailGrid,
    TrailParseError,
    consume,
    load_bundled_trail,
    load_trail,
    sense_ahead,
    step_forward,
)

__version__ = "0.1.0"
