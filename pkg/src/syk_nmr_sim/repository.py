"""Repository pattern for run output persistence."""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Iterable, Optional


class RunRepository(ABC):
    """Abstract interface for run directories and the files inside them."""

    @abstractmethod
    def create_run(self, run_name: str) -> str:
        """Create (or reuse) the directory for a run. Returns the run ID."""
        pass

    @abstractmethod
    def get_run_dir(self, run_id: str) -> Path:
        """Get the directory path for a run."""
        pass

    @abstractmethod
    def write_csv(self, run_id: str, name: str, header: Iterable[str], rows: Iterable[Iterable[Any]]) -> Path:
        """Write a CSV file with a header line. Returns its path."""
        pass

    @abstractmethod
    def write_json(self, run_id: str, name: str, data: Any) -> Path:
        """Write a JSON file. Returns its path."""
        pass

    @abstractmethod
    def save_manifest(self, run_id: str, manifest: dict[str, Any]) -> Path:
        """Save the run manifest."""
        pass

    @abstractmethod
    def get_manifest(self, run_id: str) -> Optional[dict[str, Any]]:
        """Get the run manifest, or None if the run has none."""
        pass

    @abstractmethod
    def list_runs(self) -> dict[str, str]:
        """List all runs. Returns {run_id: command}."""
        pass
