"""Centralized repository instances for run persistence.

Tools import repositories from this module so every pipeline writes
through the same root unless a run asks for another one.
"""
from pathlib import Path

from syk_nmr_sim.repository_json import JsonRunRepository
from syk_nmr_sim.utils import RUNS_DIR

# Global repository used by the readers and the MCP resources
run_repo = JsonRunRepository()


def repo_for(out_dir: str | Path | None) -> JsonRunRepository:
    """Repository rooted at out_dir, reusing the global one for the default root."""
    if out_dir is None or Path(out_dir) == RUNS_DIR:
        return run_repo
    return JsonRunRepository(out_dir)
