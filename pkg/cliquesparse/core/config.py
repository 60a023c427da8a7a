"""
Configuration management for cliquesparse.

Loads capacity caps and runtime settings from environment variables
(optionally seeded from a .env file) with validation and type checking.
"""

import os
from typing import Dict, Optional

from dotenv import load_dotenv

from .exceptions import CapacityError, ConfigurationError

ENV_PREFIX = 'CLIQUESPARSE_'

# cap name -> default
DEFAULT_CAPS: Dict[str, int] = {
    'clique_cap': 1_000_000,
    'isomorphism_cap': 16,
    'qk_isomorphism_cap': 40,
    'quotient_check_cap': 14,
    'exact_measure_cap': 20,
    'tw_card_cap': 16,
    'tw_measure_cap': 10,
    'tw_oracle_cap': 6,
    'rankwidth_cap': 10,
    'rankwidth_oracle_cap': 7,
    'linkage_cap': 14,
    'pattern_cap': 10,
    'pattern_graph_cap': 12,
    'coupled_cap': 12,
    'minor_pattern_cap': 9,
    'minor_graph_cap': 12,
    'memo_max_size': 200_000,
    'search_node_budget': 5_000_000,
}


class Config:
    """
    Configuration manager for cliquesparse.

    Every cap in DEFAULT_CAPS can be overridden with an environment variable
    named CLIQUESPARSE_<CAP_NAME> (upper case).
    """

    def __init__(self, env_file: Optional[str] = None):
        """
        Initialize configuration from environment variables.

        Args:
            env_file: Optional path of a .env file to load first
        """
        load_dotenv(env_file)
        self._load_config()

    def _load_config(self) -> None:
        """Load all configuration values from environment variables."""
        # Capacity caps
        self.caps: Dict[str, int] = {
            name: self._get_int_env(name.upper(), default)
            for name, default in DEFAULT_CAPS.items()
        }

        # Logging Configuration
        self.log_level = self._get_env('LOG_LEVEL', 'WARNING')
        self.log_file = self._get_env('LOG_FILE', '') or None

        # Verification defaults
        self.default_seed = self._get_int_env('SEED', 0)
        self.default_trials = self._get_int_env('TRIALS', 50)

    def _get_env(self, key: str, default: str) -> str:
        """Get an environment variable with a default value."""
        return os.getenv(ENV_PREFIX + key, default)

    def _get_int_env(self, key: str, default: int) -> int:
        """Get an integer environment variable with a default value."""
        raw = self._get_env(key, str(default))
        try:
            return int(raw)
        except ValueError:
            raise ConfigurationError(f"{ENV_PREFIX}{key} must be an integer, got {raw!r}")

    def validate(self) -> None:
        """Validate the configuration."""
        for name, value in self.caps.items():
            if value <= 0:
                raise ConfigurationError(f"Cap {name} must be positive")

        valid_log_levels = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']
        if self.log_level.upper() not in valid_log_levels:
            raise ConfigurationError(f"Invalid log level. Must be one of: {valid_log_levels}")

        if self.caps['tw_oracle_cap'] > self.caps['tw_measure_cap']:
            raise ConfigurationError("tw_oracle_cap cannot exceed tw_measure_cap")
        if self.caps['rankwidth_oracle_cap'] > self.caps['rankwidth_cap']:
            raise ConfigurationError("rankwidth_oracle_cap cannot exceed rankwidth_cap")

        if self.default_trials < 1:
            raise ConfigurationError("Default trial count must be at least 1")

    def get_cap(self, name: str) -> int:
        """Get a capacity cap by name."""
        if name not in self.caps:
            raise ConfigurationError(f"Unknown cap {name}")
        return self.caps[name]


_config: Optional[Config] = None


def get_config() -> Config:
    """Return the process-wide configuration, loading it on first use."""
    global _config
    if _config is None:
        _config = Config()
    return _config


def reset_config() -> None:
    """Drop the cached configuration so the next get_config() reloads it."""
    global _config
    _config = None


def resolve_cap(name: str, override: Optional[int] = None) -> int:
    """Return an explicit override or the configured value of a cap."""
    if override is not None:
        return override
    return get_config().get_cap(name)


def check_cap(
    name: str,
    actual: int,
    override: Optional[int] = None,
    entry: Optional[str] = None,
) -> None:
    """
    Raise CapacityError when a size exceeds a cap.

    Args:
        name: Cap name as in DEFAULT_CAPS
        actual: The size being checked
        override: Optional explicit limit replacing the configured one
        entry: Optional name of the quantity being computed, for the message
    """
    limit = resolve_cap(name, override)
    if actual > limit:
        raise CapacityError(name, limit, actual, entry)
