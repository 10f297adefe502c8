"""Run configuration: JSON file merged with command-line overrides.

A config file is a JSON object whose sections mirror the library layers::

    {
      "game":     {"w": 0.98, "ca": 0.51, "cd": 0.20, "ba": 0.90,
                   "bd": 0.79, "v": 0.26, "fu": 0.0, "fs": 0.0},
      "ensemble": {"count": 100000, "master_seed": 1,
                   "b_a_upper": 1.0, "workers": 1},
      "fines":    {"levels": [0.1, 0.5]},
      "dynamics": {"step": 0.01, "horizon": 1000.0, "convergence_tol": 1e-9},
      "abm":      {"population_size": 1000, "selection_strength": 10.0,
                   "mutation_rate": 0.001, "steps": 2000000,
                   "burn_in": 500000, "seed": 1,
                   "initial_beta": 0.5, "initial_alpha": 0.5},
      "phase":    {"resolution": 15, "starts": [[0.05, 0.95]],
                   "trajectory_horizon": 200.0},
      "output":   {"directory": "out", "format": "csv"}
    }

Every section and key is optional; command-line flags override file values;
unknown sections or keys are rejected rather than ignored.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Mapping, Optional, Sequence, Tuple

from .abm import AbmConfig
from .dynamics import PopulationState
from .ensemble import SamplerConfig
from .errors import ConfigError
from .game import FineScenario, GameParams

__all__ = ["RunConfig", "load_run_config", "DEFAULTS"]

_GAME_KEYS = ("w", "ca", "cd", "ba", "bd", "v", "fu", "fs")

DEFAULTS: Mapping[str, Mapping[str, Any]] = {
    "game": {key: None for key in ("w", "ca", "cd", "ba", "bd", "v")}
    | {"fu": 0.0, "fs": 0.0},
    "ensemble": {"count": 100000, "master_seed": 1, "b_a_upper": 1.0, "workers": 1},
    "fines": {"levels": (0.1, 0.5)},
    "dynamics": {"step": 0.01, "horizon": 1000.0, "convergence_tol": 1e-9},
    "abm": {
        "population_size": 1000,
        "selection_strength": 10.0,
        "mutation_rate": 0.001,
        "steps": 2000000,
        "burn_in": 500000,
        "seed": 1,
        "initial_beta": 0.5,
        "initial_alpha": 0.5,
    },
    "phase": {"resolution": 15, "starts": (), "trajectory_horizon": 200.0},
    "output": {"directory": None, "format": None},
}

_INT_KEYS = {
    ("ensemble", "count"),
    ("ensemble", "master_seed"),
    ("ensemble", "workers"),
    ("abm", "population_size"),
    ("abm", "steps"),
    ("abm", "burn_in"),
    ("abm", "seed"),
    ("phase", "resolution"),
}
_STR_KEYS = {("output", "directory"), ("output", "format")}
_LIST_KEYS = {("fines", "levels"), ("phase", "starts")}


def _coerce(section: str, key: str, raw: Any) -> Any:
    """Validate one config value and normalize its type."""
    where = f"{section}.{key}"
    if raw is None and (section, key) in {("output", "directory"), ("output", "format")}:
        return None
    if (section, key) in _STR_KEYS:
        if not isinstance(raw, str):
            raise ConfigError(f"config value {where} must be a string")
        return raw
    if (section, key) == ("fines", "levels"):
        if not isinstance(raw, (list, tuple)) or not raw:
            raise ConfigError(f"config value {where} must be a non-empty list")
        levels = []
        for item in raw:
            if isinstance(item, bool) or not isinstance(item, (int, float)):
                raise ConfigError(f"config value {where} must contain numbers")
            levels.append(float(item))
        return tuple(levels)
    if (section, key) == ("phase", "starts"):
        if not isinstance(raw, (list, tuple)):
            raise ConfigError(f"config value {where} must be a list of [beta, alpha]")
        starts = []
        for item in raw:
            if not isinstance(item, (list, tuple)) or len(item) != 2:
                raise ConfigError(f"config value {where} must be a list of [beta, alpha]")
            starts.append((float(item[0]), float(item[1])))
        return tuple(starts)
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ConfigError(f"config value {where} must be a number")
    if (section, key) in _INT_KEYS:
        if float(raw) != int(raw):
            raise ConfigError(f"config value {where} must be an integer")
        return int(raw)
    value = float(raw)
    if not math.isfinite(value):
        raise ConfigError(f"config value {where} must be finite")
    return value


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved settings for one command invocation."""

    sections: Mapping[str, Mapping[str, Any]]

    def get(self, section: str, key: str) -> Any:
        return self.sections[section][key]

    def game_params(self) -> GameParams:
        """Build the configured game, applying any fine levels.

        Raises
        ------
        ConfigError
            If one of the six required game parameters is missing.
        """
        game = self.sections["game"]
        missing = [k for k in ("w", "ca", "cd", "ba", "bd", "v") if game[k] is None]
        if missing:
            raise ConfigError(
                "missing required game parameter(s): "
                + ", ".join(f"game.{k} (--{k})" for k in missing)
            )
        params = GameParams(
            w=game["w"],
            c_a=game["ca"],
            c_d=game["cd"],
            b_a=game["ba"],
            b_d=game["bd"],
            v=game["v"],
        )
        return self.fine_scenario().apply(params)

    def fine_scenario(self) -> FineScenario:
        game = self.sections["game"]
        return FineScenario(f_u=game["fu"], f_s=game["fs"])

    def sampler_config(self) -> SamplerConfig:
        ensemble = self.sections["ensemble"]
        return SamplerConfig(
            count=ensemble["count"],
            master_seed=ensemble["master_seed"],
            scenario=self.fine_scenario(),
            b_a_upper=ensemble["b_a_upper"],
        )

    def abm_config(self) -> AbmConfig:
        abm = self.sections["abm"]
        return AbmConfig(
            population_size=abm["population_size"],
            selection_strength=abm["selection_strength"],
            mutation_rate=abm["mutation_rate"],
            steps=abm["steps"],
            burn_in=abm["burn_in"],
            seed=abm["seed"],
            initial_state=PopulationState(abm["initial_beta"], abm["initial_alpha"]),
        )

    def phase_starts(self) -> Tuple[PopulationState, ...]:
        return tuple(
            PopulationState(beta, alpha)
            for beta, alpha in self.sections["phase"]["starts"]
        )

    def resolved(self) -> dict[str, dict[str, Any]]:
        """Plain nested dict of every effective setting, for provenance."""
        return {
            section: {
                key: (list(value) if isinstance(value, tuple) else value)
                for key, value in keys.items()
            }
            for section, keys in self.sections.items()
        }


def _read_file(path: str) -> Mapping[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path} must contain a JSON object")
    return raw


def load_run_config(
    config_path: Optional[str] = None,
    overrides: Sequence[Tuple[str, str, Any]] = (),
) -> RunConfig:
    """Resolve defaults, then the config file, then flag overrides.

    Parameters
    ----------
    config_path : str, optional
        Path to a JSON config file.
    overrides : sequence of (section, key, value)
        Command-line values; applied last.  ``None`` values are skipped so
        unset flags never mask file settings.

    Raises
    ------
    ConfigError
        On unreadable/invalid JSON, unknown sections or keys, or bad types.
    """
    sections: dict[str, dict[str, Any]] = {
        name: dict(keys) for name, keys in DEFAULTS.items()
    }
    if config_path is not None:
        for section, keys in _read_file(config_path).items():
            if section not in sections:
                raise ConfigError(f"unknown config section: {section}")
            if not isinstance(keys, dict):
                raise ConfigError(f"config section {section} must be an object")
            for key, raw in keys.items():
                if key not in sections[section]:
                    raise ConfigError(f"unknown config key: {section}.{key}")
                sections[section][key] = _coerce(section, key, raw)
    for section, key, value in overrides:
        if value is None:
            continue
        sections[section][key] = _coerce(section, key, value)
    return RunConfig(sections=sections)
