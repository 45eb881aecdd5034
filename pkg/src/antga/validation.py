"""Input validation helpers shared by configs, the estimator and the CLI."""

from __future__ import annotations


class ConfigError(ValueError):
    """A configuration value violates its invariant."""


def check_int(name: str, value, minimum: int | None = None, maximum: int | None = None) -> int:
    if not isinstance(value, (int,)) or isinstance(value, bool):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    if maximum is not None and value > maximum:
        raise ConfigError(f"{name} must be <= {maximum}, got {value}")
    return value


def check_probability(name: str, value) -> float:
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a number, got {value!r}") from None
    if not 0.0 <= v <= 1.0:
        raise ConfigError(f"{name} must be in [0, 1], got {value}")
    return v


#: Rates expressed as a fraction of the population share the [0, 1] rule.
check_fraction = check_probability


def check_quota(name: str, value) -> float:
    v = check_probability(name, value)
    if v == 0.0:
        raise ConfigError(f"{name} must be in (0, 1], got {value}")
    return v
