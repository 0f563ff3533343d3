"""Run configuration: command defaults, JSON config files and flag overrides."""
from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from syk_nmr_sim.utils import ConfigError, RUNS_DIR, content_hash, err_not_found, err_with_hint

ENGINES = ("exact", "trotter")

_TAU_GRID = {"ln_min": -3.0, "ln_max": 3.0, "points": 30}
_MODEL = {"N": 8, "j4": 1.0, "j2": 1.0, "convention": "main_text"}

COMMAND_DEFAULTS: dict[str, dict[str, Any]] = {
    "couplings": {**_MODEL, "mu": 5.0, "samples": 8},
    "fidelity-surface": {
        **_MODEL,
        "mu": 5.0,
        "sample_index": 0,
        "ln_tau": {"min": -3.0, "max": 3.0, "points": 25},
        "log10_n": {"min": 0.0, "max": 2.5, "points": 25},
        "include_anchor": True,
    },
    "correlation": {
        **_MODEL,
        "betas": [0.0, 1.0, 20.0],
        "mus": [-5.0, 0.0, 5.0],
        "samples": 8,
        "tau": dict(_TAU_GRID),
        "pairing": "mirrored",
        "window": 0.25,
        "trotter_max_step": 0.2,
    },
    "scaling": {
        **_MODEL,
        "N_list": [6, 8, 10, 12],
        "mus": [0.0, 5.0],
        "beta": 20.0,
        "samples": 8,
        "tau": dict(_TAU_GRID),
        "pairing": "mirrored",
        "window": 0.25,
        "trotter_max_step": 0.2,
    },
    "compile": {
        **_MODEL,
        "mu": 5.0,
        "sample_index": 0,
        "tau": 1.0,
        "steps": 35,
        "epsilon": 0.01,
        "c": 1.0,
        "estimate_N": [8, 12, 16],
        "verify": True,
    },
    "grape": {
        "system": "two_spin",
        "target": {"kind": "zz", "angle": math.pi / 4, "spins": [0, 1]},
        "slices": 100,
        "duration_s": 0.02,
        "amplitude_bound_hz": 1000.0,
        "init_max_hz": 100.0,
        "robustness": [0.95, 1.0, 1.05],
        "max_iter": 2000,
        "goal": 0.99,
        "initial_step_hz": 10.0,
        "profile_scales": [0.95, 0.975, 1.0, 1.025, 1.05],
    },
}

_TOP_LEVEL = ("command", "master_seed", "out_dir", "threads", "engine", "trotter_steps", "emit", "params")


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: dict[str, Any]
    master_seed: int = 0
    out_dir: str = str(RUNS_DIR)
    threads: int = 1
    engine: str = "exact"
    trotter_steps: int | None = None
    emit: dict[str, bool] = field(default_factory=lambda: {"csv": True, "json": True})

    def __post_init__(self):
        if self.command not in COMMAND_DEFAULTS:
            raise ConfigError(err_not_found("Command", self.command, f"Use one of {sorted(COMMAND_DEFAULTS)}."))
        if self.engine not in ENGINES:
            raise ConfigError(err_with_hint(f"Unknown engine '{self.engine}'.", "Use 'exact' or 'trotter'."))
        if self.threads < 1:
            raise ConfigError("threads must be >= 1.")
        if self.trotter_steps is not None and self.trotter_steps < 1:
            raise ConfigError("trotter_steps must be >= 1.")

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "master_seed": self.master_seed,
            "out_dir": self.out_dir,
            "threads": self.threads,
            "engine": self.engine,
            "trotter_steps": self.trotter_steps,
            "emit": self.emit,
        }

    def content_hash(self) -> str:
        """Hash of everything that shapes the output data (not where or how fast it is written)."""
        data = self.to_json()
        data.pop("out_dir")
        data.pop("threads")
        return content_hash(data)

    @property
    def run_name(self) -> str:
        return f"{self.command}-{self.content_hash()[:12]}"


def _merge_params(command: str, base: dict, update: dict, source: str) -> dict:
    merged = copy.deepcopy(base)
    for key, value in update.items():
        if key not in COMMAND_DEFAULTS[command]:
            raise ConfigError(f"Unknown parameter '{key}' for {command} in {source}.")
        if isinstance(merged.get(key), dict) and isinstance(value, dict):
            for sub in value:
                if sub not in merged[key]:
                    raise ConfigError(f"Unknown parameter '{key}.{sub}' for {command} in {source}.")
            merged[key] = {**merged[key], **value}
        else:
            merged[key] = value
    return merged


def _merge(command: str, data: dict, layer: dict, source: str) -> dict:
    for key, value in layer.items():
        if key not in _TOP_LEVEL:
            raise ConfigError(f"Unknown config key '{key}' in {source}.")
        if key == "command":
            if value != command:
                raise ConfigError(f"{source} is for command '{value}', not '{command}'.")
        elif key == "params":
            data["params"] = _merge_params(command, data["params"], value, source)
        elif value is not None:
            data[key] = value
    return data


def read_config_file(path: str | Path) -> dict:
    """Config JSON, or the config block of a run manifest."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError:
        raise ConfigError(err_not_found("Config file", str(path)))
    except json.JSONDecodeError as e:
        raise ConfigError(f"Config file {path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must hold a JSON object.")
    if "config" in data and "config_hash" in data:
        data = dict(data["config"])
        data.pop("out_dir", None)
    return data


def load_run_config(command: str, path: str | Path | None = None, overrides: dict | None = None) -> RunConfig:
    """Command defaults <- config file <- overrides; later layers win."""
    if command not in COMMAND_DEFAULTS:
        raise ConfigError(err_not_found("Command", command, f"Use one of {sorted(COMMAND_DEFAULTS)}."))
    data: dict[str, Any] = {"params": copy.deepcopy(COMMAND_DEFAULTS[command])}
    if path is not None:
        data = _merge(command, data, read_config_file(path), str(path))
    if overrides:
        data = _merge(command, data, overrides, "overrides")
    data.pop("command", None)
    try:
        return RunConfig(command=command, **data)
    except TypeError as e:
        raise ConfigError(f"Bad config value: {e}")


def config_from_arguments(command: str, arguments: dict) -> RunConfig:
    """RunConfig from MCP tool arguments."""
    overrides = {
        "master_seed": arguments.get("seed"),
        "out_dir": arguments.get("out_dir"),
        "threads": arguments.get("threads"),
        "engine": arguments.get("engine"),
        "trotter_steps": arguments.get("trotter_steps"),
        "params": arguments.get("params") or {},
    }
    return load_run_config(command, arguments.get("config_path"), overrides)
