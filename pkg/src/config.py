# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Configuration management for the cascade toolkit.

Settings are layered, later layers winning:
1. Built-in defaults
2. config.json (data/config.json, or the path given with --config)
3. KC_* environment variables, also read from a .env file
4. CLI flags, applied by the CLI through Config.set
"""

import copy
import json
import logging
import os
from functools import reduce
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple

from dotenv import load_dotenv

from .errors import ValidationError

logger = logging.getLogger(__name__)

load_dotenv()

DEFAULTS: Dict[str, Dict[str, Any]] = {
    "algebra": {"degree_cap": 512},
    "cascade": {"max_steps": 16},
    "quadrature": {"epsabs": 1e-10, "epsrel": 1e-10, "limit": 200},
    "mc": {"paths": 10000, "batch_size": 4096, "seed": 0, "threads": 1},
    "pde": {"cells": 2000, "cfl": 0.5, "margin": 1.5},
    "output": {"format": "csv", "digits": 12},
    "logging": {
        "level": "INFO",
        "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    },
}

ENV_OVERRIDES: Dict[str, Tuple[str, Callable[[str], Any]]] = {
    "KC_DEGREE_CAP": ("algebra.degree_cap", int),
    "KC_MAX_STEPS": ("cascade.max_steps", int),
    "KC_QUAD_EPSABS": ("quadrature.epsabs", float),
    "KC_MC_PATHS": ("mc.paths", int),
    "KC_BATCH_SIZE": ("mc.batch_size", int),
    "KC_SEED": ("mc.seed", int),
    "KC_THREADS": ("mc.threads", int),
    "KC_PDE_CELLS": ("pde.cells", int),
    "KC_PDE_CFL": ("pde.cfl", float),
    "KC_OUTPUT_FORMAT": ("output.format", str),
    "KC_LOG_LEVEL": ("logging.level", str),
}

# dotted key -> (predicate, message)
CHECKS: Dict[str, Tuple[Callable[[Any], bool], str]] = {
    "algebra.degree_cap": (lambda v: v >= 1, "must be at least 1"),
    "cascade.max_steps": (lambda v: v >= 0, "must not be negative"),
    "mc.paths": (lambda v: v >= 1, "must be at least 1"),
    "mc.batch_size": (lambda v: v >= 1, "must be at least 1"),
    "mc.threads": (lambda v: v >= 1, "must be at least 1"),
    "pde.cells": (lambda v: v >= 2, "must be at least 2"),
    "pde.cfl": (lambda v: 0 < v <= 1, "must lie in (0, 1]"),
    "output.format": (lambda v: v in ("csv", "json"), "must be csv or json"),
}


def _merge(base: Dict[str, Any], overlay: Dict[str, Any]) -> None:
    for key, value in overlay.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            _merge(base[key], value)
        else:
            base[key] = value


class Config:
    """Resolved settings with dotted-key access."""

    def __init__(self, config_path: Optional[str] = None):
        """Initialize configuration.

        Args:
            config_path: Path to a config.json file. If None, data/config.json
                is used when it exists.

        Raises:
            FileNotFoundError: If an explicit config_path does not exist
            ValidationError: If the file or an environment value is invalid
        """
        self.base_dir = Path(__file__).parent.parent
        self.config_path = Path(config_path) if config_path else self.base_dir / "data" / "config.json"
        if config_path and not self.config_path.exists():
            raise FileNotFoundError(f"Config file not found: {self.config_path}")

        self._config = copy.deepcopy(DEFAULTS)
        if self.config_path.exists():
            _merge(self._config, self._read_file())
        self._apply_env()
        self.validate()

    def _read_file(self) -> Dict[str, Any]:
        try:
            data = json.loads(self.config_path.read_text())
        except json.JSONDecodeError as e:
            raise ValidationError(f"Invalid JSON in {self.config_path}: {e}",
                                  operation="config", original_error=e)
        if not isinstance(data, dict):
            raise ValidationError(f"{self.config_path} must hold a JSON object", operation="config")
        logger.debug(f"Loaded config file {self.config_path}")
        return data

    def _apply_env(self) -> None:
        for env_name, (key, cast) in ENV_OVERRIDES.items():
            raw = os.getenv(env_name)
            if not raw:
                continue
            try:
                self.set(key, cast(raw))
            except ValueError as e:
                raise ValidationError(f"{env_name}={raw!r} is not a valid {cast.__name__}",
                                      operation="config", original_error=e)

    def validate(self) -> None:
        """Check the settings that have a restricted range.

        Raises:
            ValidationError: On the first out-of-range setting
        """
        for key, (ok, message) in CHECKS.items():
            value = self.get(key)
            try:
                valid = ok(value)
            except TypeError:
                valid = False
            if not valid:
                raise ValidationError(f"Config {key} = {value!r} {message}", operation="config")

    def get(self, key: str, default: Any = None) -> Any:
        """Get a setting by dotted key, e.g. 'mc.paths'."""
        try:
            return reduce(lambda node, part: node[part], key.split('.'), self._config)
        except (KeyError, TypeError):
            return default

    def set(self, key: str, value: Any) -> None:
        """Set a setting by dotted key, creating sections as needed."""
        *sections, name = key.split('.')
        node = self._config
        for section in sections:
            node = node.setdefault(section, {})
        node[name] = value

    def section(self, name: str) -> Dict[str, Any]:
        """Get one section of the live configuration."""
        return self._config[name]

    @property
    def mc(self) -> Dict[str, Any]:
        return self.section("mc")

    @property
    def pde(self) -> Dict[str, Any]:
        return self.section("pde")

    @property
    def cascade(self) -> Dict[str, Any]:
        return self.section("cascade")

    @property
    def output(self) -> Dict[str, Any]:
        return self.section("output")

    def as_dict(self) -> Dict[str, Any]:
        """Get a deep copy of the resolved configuration."""
        return copy.deepcopy(self._config)

    def save(self) -> None:
        """Write the current configuration to config_path."""
        self.config_path.parent.mkdir(parents=True, exist_ok=True)
        self.config_path.write_text(json.dumps(self._config, indent=2, sort_keys=True))
        logger.info(f"Saved config to {self.config_path}")


def load_config(config_path: Optional[str] = None) -> Config:
    """Load the configuration for one invocation."""
    config = Config(config_path)
    logger.debug(f"Config resolved (file {config.config_path}, exists={config.config_path.exists()})")
    return config
