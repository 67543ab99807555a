"""Configuration management for leibniz-nf.

Uses pydantic-settings for environment variable loading with validation.
"""

from functools import lru_cache
from typing import Annotated

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class LeibnizSettings(BaseSettings):
    """Tunable defaults loaded from environment variables.

    Every setting is optional:
        LEIBNIZ_LOG_LEVEL: Logging level (default: INFO)
        LEIBNIZ_NILRADICAL_SEED: Seed for random nilradical candidates (default: 0)
        LEIBNIZ_NILRADICAL_TRIALS: Random candidates per nilradical pass (default: 64)
        LEIBNIZ_NIL_INDEPENDENCE_SAMPLES: Samples for the sampled nil-independence
            lower bound (default: 128)
        LEIBNIZ_SAMPLE_ENTRY_BOUND: Random candidate entries lie in -bound..bound (default: 3)
        LEIBNIZ_FUZZ_SEED: Default fuzz seed (default: 42)
        LEIBNIZ_FUZZ_TRIALS: Default fuzz trial count (default: 100)
        LEIBNIZ_SCRAMBLE_ENTRY_BOUND: Entry bound for unimodular scrambles (default: 3)
        LEIBNIZ_SCRAMBLE_MAX_OPS: Elementary operations per scramble (default: 20)
        LEIBNIZ_FUZZ_WORKERS: Worker processes for fuzz trials (default: 1)
        LEIBNIZ_CACHE_SIZE: Entries kept by the fingerprint cache (default: 256)
    """

    model_config = SettingsConfigDict(
        env_prefix="LEIBNIZ_",
        case_sensitive=False,
    )

    log_level: str = "INFO"

    # Nilradical search
    nilradical_seed: Annotated[int, "Seed for random candidate vectors"] = 0
    nilradical_trials: Annotated[int, "Random candidates per pass"] = 64
    sample_entry_bound: Annotated[int, "Random entries drawn from -bound..bound"] = 3

    # Derivations
    nil_independence_samples: Annotated[int, "Random combinations for the lower bound"] = 128

    # Fuzz harness
    fuzz_seed: Annotated[int, "Default fuzz seed"] = 42
    fuzz_trials: Annotated[int, "Default number of fuzz trials"] = 100
    scramble_entry_bound: Annotated[int, "Max absolute entry of a scramble matrix"] = 3
    scramble_max_ops: Annotated[int, "Max elementary operations per scramble"] = 20
    fuzz_workers: Annotated[int, "Process pool size, 1 runs in-process"] = 1

    cache_size: Annotated[int, "Fingerprint cache capacity"] = 256

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level is a valid Python logging level."""
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        upper = v.upper()
        if upper not in valid_levels:
            raise ValueError(f"Invalid log level: {v}. Must be one of {valid_levels}")
        return upper

    @field_validator(
        "nilradical_trials",
        "sample_entry_bound",
        "nil_independence_samples",
        "fuzz_trials",
        "scramble_entry_bound",
        "scramble_max_ops",
        "fuzz_workers",
        "cache_size",
    )
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Counts and bounds must be at least 1."""
        if v < 1:
            raise ValueError(f"Must be a positive integer, got {v}")
        return v

    @field_validator("nilradical_seed", "fuzz_seed")
    @classmethod
    def validate_seed(cls, v: int) -> int:
        """Seeds are non-negative so per-trial seeds stay distinct."""
        if v < 0:
            raise ValueError(f"Seed must be non-negative, got {v}")
        return v


@lru_cache
def get_settings() -> LeibnizSettings:
    """Get singleton settings instance.

    Returns:
        LeibnizSettings instance loaded from environment variables.

    Raises:
        ValidationError: If an environment variable holds an invalid value.
    """
    return LeibnizSettings()
