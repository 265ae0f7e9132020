"""Configuration management for the solver."""

import os
import json
import logging
from pathlib import Path

logger = logging.getLogger(__name__)

# Default configuration
DEFAULT_CONFIG = {
    "mode": "mabb",  # mabb, lkh or fixed-w=X
    "max_trials": None,  # None means one trial per city
    "bs": 100,  # Trials that only collect backbone information
    "arms": 5,  # Number of bandit arms
    "step_size": 0.06,  # Step size for the arm value update
    "ucb_c": 20.0,  # Exploration bias of the UCB rule
    "gamma": 0.998,  # Weight discount factor
    "candidate_size": 5,  # Cities per candidate set
    "k_max": 5,  # Deepest sequential move tried by the k-opt search
    "seed": 1,
    "runs": 1,
    "jobs": 1,  # Parallel runs in a batch
    "log_level": "INFO",
}


def default_config_file() -> Path:
    """Location of the user config file, ``LKBANDIT_CONFIG`` wins over the home directory."""
    override = os.environ.get("LKBANDIT_CONFIG")
    if override:
        return Path(override)
    return Path.home() / ".lkbandit" / "config.json"


class Config:
    """Configuration manager."""

    def __init__(self, config_file: Path = None):
        """Initialize configuration with defaults.

        Args:
            config_file: JSON file holding user overrides. Defaults to
                ``~/.lkbandit/config.json``.
        """
        self.config_file = Path(config_file) if config_file else default_config_file()
        self.config_dir = self.config_file.parent
        self.config = DEFAULT_CONFIG.copy()
        self.has_unsaved_changes = False

        self.load()

    def load(self):
        """Load configuration from file."""
        if self.config_file.exists():
            try:
                with open(self.config_file, "r") as f:
                    loaded_config = json.load(f)
                unknown = set(loaded_config) - set(DEFAULT_CONFIG)
                if unknown:
                    logger.warning(f"Ignoring unknown config keys: {sorted(unknown)}")
                self.config.update({k: v for k, v in loaded_config.items() if k in DEFAULT_CONFIG})
                logger.info(f"Configuration loaded from {self.config_file}")
            except (OSError, json.JSONDecodeError) as e:
                logger.error(f"Error loading config: {e}")

    def save(self):
        """Save configuration to file."""
        if not self.has_unsaved_changes:
            return

        self.config_dir.mkdir(parents=True, exist_ok=True)
        with open(self.config_file, "w") as f:
            json.dump(self.config, f, indent=4)
        self.has_unsaved_changes = False
        logger.info("Configuration saved successfully")

    def get(self, key: str, default=None):
        """Get a configuration value."""
        return self.config.get(key, default)

    def set(self, key: str, value):
        """Set a configuration value."""
        if key not in DEFAULT_CONFIG:
            raise KeyError(f"Unknown configuration key: {key}")
        if self.config.get(key) != value:
            self.config[key] = value
            self.has_unsaved_changes = True

    def as_dict(self) -> dict:
        return dict(self.config)


# Global configuration instance
config = Config()

__all__ = ['Config', 'config', 'DEFAULT_CONFIG']
