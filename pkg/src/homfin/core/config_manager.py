# src/homfin/core/config_manager.py

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import platformdirs
import tomli
import tomli_w

from homfin.core.exceptions import ConfigError

logger = logging.getLogger(__name__)

APP_NAME = "homfin"

# Engine settings that can be overridden from the environment, with their types.
ENV_OVERRIDES = {
    "degree_bound": ("HOMFIN_DEGREE_BOUND", int),
    "hom_bound": ("HOMFIN_HOM_BOUND", int),
    "field": ("HOMFIN_FIELD", str),
    "workers": ("HOMFIN_WORKERS", int),
}


def default_config_dir() -> Path:
    """$HOMFIN_CONFIG_DIR if set, else the per-user config directory."""
    override = os.getenv("HOMFIN_CONFIG_DIR")
    return Path(override) if override else Path(platformdirs.user_config_dir(APP_NAME))


class ConfigManager:
    """
    Manages the engine's configuration via a TOML file.

    Handles loading, creating, updating, and saving settings. Engine values
    can be overridden per process through HOMFIN_* environment variables;
    command-line flags override both.
    """

    def __init__(self, config_path: Optional[Path] = None):
        """
        Args:
            config_path: The path to config.toml. Defaults to config.toml in
                         `default_config_dir()`.
        """
        # An explicit path wins over HOMFIN_CONFIG_DIR and the platform default.
        self.config_path = Path(config_path) if config_path else default_config_dir() / "config.toml"
        self.config: Dict[str, Dict[str, Any]] = {}
        self.load_config()

    @staticmethod
    def defaults() -> Dict[str, Dict[str, Any]]:
        return {
            # Engine defaults; HOMFIN_* variables and CLI flags override them.
            "engine": {
                "degree_bound": 8,
                "hom_bound": 4,
                "field": "Q",
                "workers": 1,
            },
            "output": {
                "format": "table",
            },
            # Seed used by `homfin verify` when --seed is not given.
            "verify": {
                "level": "fast",
                "seed": 20240601,
            },
            "logging": {
                "log_level_console": "INFO",
                "log_level_file": "DEBUG",
            },
        }

    def _create_default_config(self):
        """Writes the default configuration on first run."""
        logger.warning(f"Configuration file not found. Creating a default one at: {self.config_path}")
        self.config_path.parent.mkdir(parents=True, exist_ok=True)
        self.config = self.defaults()
        self.save_config()

    def load_config(self):
        """
        Loads the configuration, creating a default file if none exists.

        Raises:
            ConfigError: the file is not valid TOML.
        """
        try:
            with open(self.config_path, "rb") as f:
                self.config = tomli.load(f)
            logger.debug(f"Loaded configuration from {self.config_path}")
        except FileNotFoundError:
            # First run: write the defaults so `settings view` has a file to show.
            self._create_default_config()
        except tomli.TOMLDecodeError as e:
            raise ConfigError(
                f"Invalid TOML format in {self.config_path}. Please fix or delete the file to regenerate. Error: {e}"
            ) from e

    def save_config(self):
        """
        Raises:
            ConfigError: the file could not be written.
        """
        try:
            with open(self.config_path, "wb") as f:
                tomli_w.dump(self.config, f)
            logger.debug(f"Configuration saved to {self.config_path}")
        except OSError as e:
            raise ConfigError(f"Could not write to configuration file at {self.config_path}: {e}") from e

    def get_config_as_dict(self) -> dict:
        """Returns the stored configuration merged over the defaults."""
        merged = self.defaults()
        # Keys missing from an older file keep their default values.
        for section, values in self.config.items():
            merged.setdefault(section, {}).update(values)
        return merged

    def _get_setting(self, section: str, key: str, default=None):
        fallback = self.defaults().get(section, {}).get(key, default)
        return self.config.get(section, {}).get(key, fallback)

    # --- Per-section getters ---

    def get_engine_setting(self, key: str):
        """
        Raises:
            ConfigError: an environment override cannot be converted.
        """
        if key in ENV_OVERRIDES:
            env_key, cast = ENV_OVERRIDES[key]
            env_var = os.getenv(env_key)
            # Empty variables count as unset.
            if env_var:
                try:
                    return cast(env_var)
                except ValueError as e:
                    raise ConfigError(f"{env_key}={env_var!r} is not a valid {cast.__name__}.") from e
        return self._get_setting("engine", key)

    def get_output_setting(self, key: str):
        return self._get_setting("output", key)

    def get_verify_setting(self, key: str):
        return self._get_setting("verify", key)

    def get_logging_setting(self, key: str) -> str:
        return self._get_setting("logging", key, "INFO")

    def effective(self) -> Dict[str, Dict[str, Any]]:
        """The configuration as the engine will see it, environment overrides applied."""
        merged = self.get_config_as_dict()
        for key in ENV_OVERRIDES:
            merged["engine"][key] = self.get_engine_setting(key)
        return merged

    def update_setting(self, section: str, key: str, value):
        """
        Sets a value in memory only; save_config() persists it.
        """
        if section not in self.config:
            self.config[section] = {}
        self.config[section][key] = value
        logger.debug(f"Updated config setting: [{section}].{key} = {value}")
