"""Shared plumbing for the pipeline tools: run lifecycle, manifests, replies."""
import asyncio
import logging
import platform
from dataclasses import dataclass, field
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any, Callable

import numpy as np
import scipy
from mcp.types import TextContent

from syk_nmr_sim.config import RunConfig, config_from_arguments
from syk_nmr_sim.repos import repo_for
from syk_nmr_sim.repository_json import JsonRunRepository
from syk_nmr_sim.syk_model import CVarianceConvention, ModelParams

logger = logging.getLogger(__name__)

PACKAGE = "syk-nmr-sim"

# Input schema shared by every pipeline tool
RUN_PROPERTIES = {
    "config_path": {"type": "string", "description": "Optional: JSON config file or a run manifest to re-run"},
    "seed": {"type": "integer", "description": "Optional: master seed"},
    "out_dir": {"type": "string", "description": "Optional: root directory for run outputs"},
    "threads": {"type": "integer", "description": "Optional: worker threads"},
    "engine": {"type": "string", "enum": ["exact", "trotter"], "description": "Optional: evolution engine"},
    "trotter_steps": {"type": "integer", "description": "Optional: fixed Trotter step count"},
    "params": {"type": "object", "description": "Optional: command parameter overrides"},
}


def model_params(params: dict, mu: float | None = None, n_majorana: int | None = None) -> ModelParams:
    """ModelParams from a command parameter block."""
    return ModelParams(
        n_majorana=int(params["N"] if n_majorana is None else n_majorana),
        mu=float(params.get("mu", 0.0) if mu is None else mu),
        j4=float(params["j4"]),
        j2=float(params["j2"]),
        c_variance_convention=CVarianceConvention(params["convention"]),
    )


def package_versions() -> dict[str, str]:
    try:
        own = version(PACKAGE)
    except PackageNotFoundError:
        own = "0+unknown"
    return {"python": platform.python_version(), "numpy": np.__version__, "scipy": scipy.__version__, PACKAGE: own}


@dataclass
class RunContext:
    """An open run: where files go and what the manifest will say."""

    config: RunConfig
    repo: JsonRunRepository
    run_id: str
    notes: dict[str, Any] = field(default_factory=dict)
    files: list[str] = field(default_factory=list)

    @property
    def run_dir(self) -> Path:
        return self.repo.get_run_dir(self.run_id)

    def write_csv(self, name: str, header, rows) -> None:
        if self.config.emit.get("csv", True):
            self.repo.write_csv(self.run_id, name, header, rows)
            self.files.append(name)

    def write_json(self, name: str, data) -> None:
        if self.config.emit.get("json", True):
            self.repo.write_json(self.run_id, name, data)
            self.files.append(name)

    def finish(self) -> "RunOutcome":
        manifest = {
            "command": self.config.command,
            "config": self.config.to_json(),
            "config_hash": self.config.content_hash(),
            "master_seed": self.config.master_seed,
            "versions": package_versions(),
            "files": self.repo.file_hashes(self.run_id),
            "notes": self.notes,
        }
        self.repo.save_manifest(self.run_id, manifest)
        logger.info("Run %s written to %s (%d files)", self.run_id, self.run_dir, len(self.files))
        return RunOutcome(self.run_id, self.run_dir, tuple(self.files), self.notes)


@dataclass(frozen=True)
class RunOutcome:
    run_id: str
    run_dir: Path
    files: tuple[str, ...]
    notes: dict[str, Any]

    def summary(self) -> str:
        lines = [f"Run {self.run_id} complete.", f"Directory: {self.run_dir}", "Files: " + ", ".join(self.files)]
        for key, value in self.notes.items():
            if not isinstance(value, (dict, list)):
                lines.append(f"{key}: {value}")
        return "\n".join(lines)


def start_run(config: RunConfig) -> RunContext:
    repo = repo_for(config.out_dir)
    run_id = repo.create_run(config.run_name)
    logger.info("Starting %s run %s", config.command, run_id)
    return RunContext(config, repo, run_id)


async def handle_run(command: str, arguments: dict, runner: Callable[[RunConfig], RunOutcome]) -> list[TextContent]:
    """Build the config, run the pipeline off the event loop and report."""
    try:
        config = config_from_arguments(command, arguments)
        outcome = await asyncio.to_thread(runner, config)
        return [TextContent(type="text", text=outcome.summary())]
    except Exception as e:
        return [TextContent(type="text", text=f"Error running {command}: {str(e)}")]
