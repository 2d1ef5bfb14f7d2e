# src/settings.py
from pathlib import Path
import re
import yaml
import os
from typing import Dict, Any

_ENV_PATTERN = re.compile(r"^\$\{(?P<name>[A-Za-z_][A-Za-z0-9_]*)(?::-(?P<default>.*))?\}$")

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / "config" / "config.yaml"


class Settings:
    def __init__(self, config_path: Path = DEFAULT_CONFIG_PATH):
        self.config = self._load_config(config_path)

    def _load_config(self, path: Path) -> Dict[str, Any]:
        with open(path) as f:
            config = yaml.safe_load(f) or {}

        # Replace environment variables in config
        self._replace_env_vars(config)
        return config

    def _replace_env_vars(self, config: Dict[str, Any]) -> None:
        """Recursively replace ${VAR} and ${VAR:-default} placeholders in config"""
        for key, value in config.items():
            if isinstance(value, dict):
                self._replace_env_vars(value)
            elif isinstance(value, str):
                match = _ENV_PATTERN.match(value)
                if match is None:
                    continue
                env_var = match.group("name")
                config[key] = os.getenv(env_var, match.group("default"))
                if config[key] is None:
                    raise ValueError(f"Required environment variable {env_var} is not set")

    def _section(self, name: str) -> Dict[str, Any]:
        return self.config.get(name) or {}

    @property
    def ode_tol(self) -> float:
        return float(self._section('numerics').get('ode_tol', 1e-10))

    @property
    def trace_tol(self) -> float:
        return float(self._section('numerics').get('trace_tol', 1e-8))

    @property
    def pt_tol(self) -> float:
        return float(self._section('numerics').get('pt_tol', 1e-10))

    @property
    def sampling_points(self) -> int:
        return int(self._section('numerics').get('sampling_points', 4096))

    @property
    def symmetry_samples(self) -> int:
        return int(self._section('numerics').get('symmetry_samples', 2048))

    @property
    def bound_margin(self) -> float:
        return float(self._section('numerics').get('bound_margin', 1e-6))

    @property
    def trace_step(self) -> float:
        return float(self._section('trace').get('step', 0.05))

    @property
    def trace_max_points(self) -> int:
        return int(self._section('trace').get('max_points', 2000))

    @property
    def seed_offset(self) -> float:
        return float(self._section('trace').get('seed_offset', 0.02))

    @property
    def scan_points(self) -> int:
        return int(self._section('scan').get('points', 601))

    @property
    def grid(self) -> int:
        return int(self._section('scan').get('grid', 16))

    @property
    def probe_nodes(self) -> int:
        return int(self._section('verify').get('probe_nodes', 1024))

    @property
    def output_path(self) -> Path:
        return Path(self._section('storage').get('output_path') or 'output')
