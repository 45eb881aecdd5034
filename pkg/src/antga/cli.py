"""Command-line entry point.

Settings merge lowest to highest precedence: built-in defaults, preset,
config file (flat ``key = value`` lines using GaConfig/MgeConfig field
names), then explicit CLI flags. Exit status: 0 success, 1 usage error,
2 runtime failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .experiment import PRESETS, ExperimentSpec
from .ga import CROSSOVER_KINDS, SELECTION_KINDS, GaConfig
from .validation import ConfigError


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit(2); we reserve 2 for runtime
        raise UsageError(message)


_INT_KEYS = {"population_size", "generations", "max_steps", "seed",
             "min_len", "max_len", "period_n", "runs"}
_FLOAT_KEYS = {"crossover_rate", "mutation_rate", "reproduce_quota",
               "mge1_rate", "mge2_rate"}
_STR_KEYS = {"selection", "crossover_kind", "trail", "out", "mge"}


def parse_config_file(text: str, source: str = "config") -> dict:
    """Parse flat ``key = value`` lines into typed override entries."""
    overrides: dict = {}
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{source} line {no}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        try:
            if key in _INT_KEYS:
                overrides[key] = int(value)
            elif key in _FLOAT_KEYS:
                overrides[key] = float(value)
            elif key in _STR_KEYS:
                overrides[key] = value
            else:
                raise UsageError(f"{source} line {no}: unknown key {key!r}")
        except ValueError:
            raise UsageError(f"{source} line {no}: bad value for {key}: {value!r}") from None
    return overrides


def _build_parser() -> _Parser:
    p = _Parser(prog="antga", description="Evolve trail-following ants, with or without "
                                          "mobile-genetic-element operators.")
    p.add_argument("--config", type=Path, help="flat key = value settings file")
    p.add_argument("--trail", type=Path, help="trail document (default: bundled trail)")
    p.add_argument("--runs", type=int, help="independent runs per variant")
    p.add_argument("--seed", type=int, help="experiment base seed")
    p.add_argument("--generations", type=int)
    p.add_argument("--population", type=int, dest="population_size")
    p.add_argument("--max-steps", type=int, dest="max_steps")
    p.add_argument("--crossover-rate", type=float, dest="crossover_rate")
    p.add_argument("--mutation-rate", type=float, dest="mutation_rate")
    p.add_argument("--selection", choices=SELECTION_KINDS)
    p.add_argument("--reproduce-quota", type=float, dest="reproduce_quota")
    p.add_argument("--crossover-kind", choices=CROSSOVER_KINDS, dest="crossover_kind")
    p.add_argument("--mge", choices=("on", "off"))
    p.add_argument("--min-len", type=int, dest="min_len")
    p.add_argument("--max-len", type=int, dest="max_len")
    p.add_argument("--period-n", type=int, dest="period_n")
    p.add_argument("--mge1-rate", type=float, dest="mge1_rate")
    p.add_argument("--mge2-rate", type=float, dest="mge2_rate")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--out", type=Path, help="output directory (default: out)")
    p.add_argument("--dump-best", action="store_true")
    p.add_argument("--verbose", action="store_true")
    return p


_GA_KEYS = ("population_size", "generations", "max_steps", "crossover_rate",
            "mutation_rate", "selection", "reproduce_quota", "crossover_kind",
            "min_len", "max_len", "period_n", "mge1_rate", "mge2_rate")


def parse_cli(argv: list[str] | None = None) -> ExperimentSpec:
    """Merge defaults <- preset <- config file <- flags into an ExperimentSpec."""
    parser = _build_parser()
    args = parser.parse_args(argv)

    merged: dict = {}
    preset = PRESETS.get(args.preset) if args.preset else None
    if preset:
        merged.update(preset["overrides"])
        merged["runs"] = preset["runs"]
    if args.config is not None:
        if not args.config.is_file():
            raise UsageError(f"config file not found: {args.config}")
        merged.update(parse_config_file(args.config.read_text(), source=str(args.config)))
    for key in (*_GA_KEYS, "runs", "seed", "trail", "out", "mge"):
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value

    config = GaConfig()
    try:
        ga_overrides = {k: merged[k] for k in _GA_KEYS if k in merged}
        if merged.get("mge") == "off":
            config = config.with_overrides(mge=None)
            mge_keys = {"min_len", "max_len", "period_n", "mge1_rate", "mge2_rate"}
            illegal = mge_keys & set(ga_overrides)
            if illegal:
                raise UsageError(f"--mge off conflicts with {sorted(illegal)}")
        config = config.with_overrides(**ga_overrides)
        if "seed" in merged:
            config.seed = merged["seed"]

        trail = merged.get("trail")
        trail_path = Path(trail) if trail is not None else None
        if trail_path is not None and not trail_path.is_file():
            raise UsageError(f"trail file not found: {trail_path}")

        variants = [(name, dict(ov)) for name, ov in preset["variants"]] if preset \
            else [("default", {})]
        spec = ExperimentSpec(
            config=config,
            runs=merged.get("runs", 1),
            base_seed=merged.get("seed", 0),
            variants=variants,
            out_dir=Path(merged.get("out", "out")),
            trail_path=trail_path,
            dump_best=bool(args.dump_best),
        )
        spec.validate()
    except ConfigError as exc:
        raise UsageError(str(exc)) from exc

    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, format="%(message)s")
    return spec


def main(argv: list[str] | None = None) -> int:
    try:
        spec = parse_cli(argv)
    except UsageError as exc:
        print(f"antga: error: {exc}", file=sys.stderr)
        return 1
    try:
        from .experiment import run_experiment

        run_experiment(spec)
    except Exception as exc:  # any run failure aborts with context
        print(f"antga: runtime failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
