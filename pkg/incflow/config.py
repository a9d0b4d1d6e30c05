"""
Settings for incflow

Defaults live on the Settings class; a JSON file and INCFLOW_* environment
variables may override them.
"""

import json
import logging
import os
from dataclasses import dataclass, asdict, fields
from pathlib import Path
from typing import Any, Dict, Optional

from .errors import ConfigError

logger = logging.getLogger(__name__)

ENV_PREFIX = "INCFLOW_"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass
class Settings:
    """Tunable limits shared by the solvers, the bench harness and the CLI"""
    exact_cap: int = 22
    brute_cap: int = 8
    bench_exact_cap: int = 12
    workers: int = 4
    log_level: str = "INFO"

    def __post_init__(self):
        for name in ('exact_cap', 'brute_cap', 'bench_exact_cap', 'workers'):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        level = str(self.log_level).upper()
        if level not in LOG_LEVELS:
            raise ConfigError(f"log_level must be one of {', '.join(LOG_LEVELS)}")
        self.log_level = level

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


DEFAULT_OPTIONS: Dict[str, Any] = {f.name: f.default for f in fields(Settings)}


def _coerce(name: str, raw: str) -> Any:
    if name == 'log_level':
        return raw
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{ENV_PREFIX}{name.upper()} is not an integer: {raw!r}")


def load_settings(path: Optional[Path] = None, environ: Optional[Dict[str, str]] = None) -> Settings:
    """Build settings from defaults, an optional JSON file and the environment"""
    values = dict(DEFAULT_OPTIONS)
    known = set(DEFAULT_OPTIONS)

    if path is not None:
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read settings from {path}: {e}")
        if not isinstance(data, dict):
            raise ConfigError(f"settings file {path} must hold a JSON object")
        for key, value in data.items():
            if key not in known:
                logger.warning(f"Ignoring unknown setting '{key}' in {path}")
                continue
            values[key] = value

    env = os.environ if environ is None else environ
    for name in DEFAULT_OPTIONS:
        raw = env.get(ENV_PREFIX + name.upper())
        if raw is not None:
            values[name] = _coerce(name, raw)

    return Settings(**values)
