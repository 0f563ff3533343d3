"""Plain-file repository implementation."""
import csv
import json
from pathlib import Path
from typing import Any, Iterable, Optional

from syk_nmr_sim.repository import RunRepository
from syk_nmr_sim.utils import RUNS_DIR, RunStorageError, err_not_found, err_storage, file_hash

MANIFEST_FILE = "manifest.json"


class JsonRunRepository(RunRepository):
    """Runs as directories of CSV and JSON files under a root directory."""

    def __init__(self, root: Path | str = RUNS_DIR):
        self.root = Path(root)

    def create_run(self, run_name: str) -> str:
        run_dir = self.root / run_name
        try:
            run_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise RunStorageError(err_storage("create run directory", run_dir, e)) from e
        return run_name

    def get_run_dir(self, run_id: str) -> Path:
        run_dir = self.root / run_id
        if not run_dir.is_dir():
            raise RunStorageError(err_not_found("Run", run_id))
        return run_dir

    def _write(self, run_id: str, name: str, writer) -> Path:
        path = self.get_run_dir(run_id) / name
        try:
            with path.open("w", newline="") as f:
                writer(f)
        except OSError as e:
            raise RunStorageError(err_storage("write", path, e)) from e
        return path

    def write_csv(self, run_id: str, name: str, header: Iterable[str], rows: Iterable[Iterable[Any]]) -> Path:
        def write(f):
            out = csv.writer(f, lineterminator="\n")
            out.writerow(header)
            out.writerows(rows)

        return self._write(run_id, name, write)

    def write_json(self, run_id: str, name: str, data: Any) -> Path:
        return self._write(run_id, name, lambda f: f.write(json.dumps(data, indent=2, sort_keys=True) + "\n"))

    def save_manifest(self, run_id: str, manifest: dict[str, Any]) -> Path:
        return self.write_json(run_id, MANIFEST_FILE, manifest)

    def get_manifest(self, run_id: str) -> Optional[dict[str, Any]]:
        manifest_file = self.root / run_id / MANIFEST_FILE
        if not manifest_file.exists():
            return None
        return json.loads(manifest_file.read_text())

    def list_runs(self) -> dict[str, str]:
        if not self.root.is_dir():
            return {}
        runs = {}
        for run_dir in sorted(self.root.iterdir()):
            manifest = self.get_manifest(run_dir.name) if run_dir.is_dir() else None
            if manifest:
                runs[run_dir.name] = manifest.get("command", "unknown")
        return runs

    def file_hashes(self, run_id: str) -> dict[str, str]:
        """sha256 of every data file in the run, manifest excluded."""
        run_dir = self.get_run_dir(run_id)
        return {
            path.name: file_hash(path)
            for path in sorted(run_dir.iterdir())
            if path.is_file() and path.name != MANIFEST_FILE
        }
