"""
Configuration management for opk
Stores defaults such as working precision and worker count
"""
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

from .errors import ConfigError

logger = logging.getLogger(__name__)

MIN_BITS = 64


class Config:
    """
    Manages opk configuration settings.
    Stores configuration in a JSON file in the user's home directory.
    """

    DEFAULT_CONFIG = {
        "bits": 256,
        "jobs": 1,
        "format": "csv",
        "n_max": 10,
        "digits": None,
        "richardson_levels": 4,
    }

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize configuration manager.

        Args:
            config_path: Optional custom path for config file; falls back to
                $OPK_CONFIG, then ~/.opk/config.json
        """
        if config_path is None:
            config_path = os.environ.get("OPK_CONFIG")

        if config_path is None:
            self.config_dir = Path.home() / ".opk"
            self.config_path = self.config_dir / "config.json"
        else:
            self.config_path = Path(config_path)
            self.config_dir = self.config_path.parent

        self._config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from file, merged over the defaults"""
        if not self.config_path.exists():
            return self.DEFAULT_CONFIG.copy()
        try:
            with open(self.config_path, "r") as f:
                stored = json.load(f)
        except (json.JSONDecodeError, IOError) as e:
            logger.warning("could not load config %s: %s", self.config_path, e)
            return self.DEFAULT_CONFIG.copy()
        # Keys dropped from DEFAULT_CONFIG are ignored
        merged = self.DEFAULT_CONFIG.copy()
        merged.update({k: v for k, v in stored.items() if k in self.DEFAULT_CONFIG})
        return merged

    def _save_config(self, config: Dict[str, Any]):
        """Save configuration to file"""
        try:
            self.config_dir.mkdir(parents=True, exist_ok=True)
            with open(self.config_path, "w") as f:
                json.dump(config, f, indent=2, sort_keys=True)
        except IOError as e:
            raise ConfigError(f"could not save config: {e}") from e

    def _coerce(self, key: str, value: Any) -> Any:
        """Convert ``value`` to the type of the key's default"""
        default = self.DEFAULT_CONFIG[key]
        if value is None or (isinstance(value, str) and value.lower() in ("none", "null", "auto")):
            if default is None:
                return None
            raise ConfigError(f"'{key}' cannot be empty")
        if default is None or isinstance(default, int):
            try:
                value = int(value)
            except (TypeError, ValueError):
                raise ConfigError(f"'{key}' must be an integer, got {value!r}")
            if key == "bits" and value < MIN_BITS:
                raise ConfigError(f"bits must be at least {MIN_BITS}")
            if key in ("jobs", "n_max", "digits") and value < 1:
                raise ConfigError(f"'{key}' must be positive")
            return value
        if key == "format" and value not in ("csv", "json"):
            raise ConfigError("format must be 'csv' or 'json'")
        return str(value)

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a configuration value.

        Args:
            key: Configuration key
            default: Default value if key not found

        Returns:
            Configuration value
        """
        return self._config.get(key, default)

    def set(self, key: str, value: Any):
        """
        Set a configuration value and persist to disk.

        Args:
            key: Configuration key
            value: Value to set (coerced to the key's type)

        Raises:
            ConfigError: unknown key or unusable value
        """
        if key not in self.DEFAULT_CONFIG:
            raise ConfigError(f"unknown config key '{key}'")
        self._config[key] = self._coerce(key, value)
        self._save_config(self._config)

    def get_all(self) -> Dict[str, Any]:
        """Get all configuration values"""
        return self._config.copy()

    def reset(self):
        """Reset configuration to defaults"""
        self._config = self.DEFAULT_CONFIG.copy()
        self._save_config(self._config)

    @property
    def bits(self) -> int:
        """Default working precision; $OPK_BITS wins over the file"""
        env = os.environ.get("OPK_BITS")
        if env is not None:
            try:
                bits = int(env)
            except ValueError:
                raise ConfigError(f"OPK_BITS must be an integer, got {env!r}")
            if bits < MIN_BITS:
                raise ConfigError(f"OPK_BITS must be at least {MIN_BITS}")
            return bits
        return self._config["bits"]

    @property
    def bits_from_env(self) -> bool:
        return "OPK_BITS" in os.environ

    @property
    def jobs(self) -> int:
        return self._config["jobs"]

    @property
    def format(self) -> str:
        return self._config["format"]

    @property
    def n_max(self) -> int:
        return self._config["n_max"]

    @property
    def digits(self) -> Optional[int]:
        return self._config["digits"]

    @property
    def richardson_levels(self) -> int:
        return self._config["richardson_levels"]


# Global config instance
_config_instance = None


def get_config() -> Config:
    """Get the global configuration instance"""
    global _config_instance
    if _config_instance is None:
        _config_instance = Config()
    return _config_instance


def reset_config_instance():
    """Drop the cached global instance (tests and CLI --config use this)"""
    global _config_instance
    _config_instance = None
