import hashlib
import json
import os
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Iterable, TypeVar


# Project root (where runs/ will live)
PROJECT_ROOT = Path(__file__).parent.parent.parent
RUNS_DIR = PROJECT_ROOT / "runs"

# Largest qubit count realized as a dense matrix (4096 x 4096)
DENSE_QUBIT_CAP = int(os.environ.get("SYK_SIM_DENSE_QUBIT_CAP", "12"))

# Above this many qubits evolution goes through state vectors
MATRIX_FREE_QUBIT_THRESHOLD = 10

T = TypeVar("T")
R = TypeVar("R")


def canonical_json(data) -> str:
    """Serialize with sorted keys and no whitespace variation."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def content_hash(data) -> str:
    """SHA-256 of the canonical JSON form of data."""
    return hashlib.sha256(canonical_json(data).encode()).hexdigest()


def file_hash(path: Path) -> str:
    """SHA-256 of a file's bytes."""
    return hashlib.sha256(path.read_bytes()).hexdigest()


def resolve_qubit_cap(cap: int | None) -> int:
    return DENSE_QUBIT_CAP if cap is None else cap


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> list[R]:
    """Map fn over items, optionally on a thread pool.

    Results keep input order whatever the scheduling.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# --- Error types ---

class SykSimError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class DimensionError(SykSimError, ValueError):
    """Operands act on different numbers of qubits or have mismatched shapes."""


class ResourceLimitError(SykSimError):
    """A dense realization would exceed the configured qubit cap."""


class NotHermitianError(SykSimError, ValueError):
    pass


class NotUnitaryError(SykSimError, ValueError):
    pass


class ParameterError(SykSimError, ValueError):
    """Model or run parameters outside their valid range."""

    exit_code = 2


class DomainError(SykSimError, ValueError):
    pass


class PlanError(SykSimError, ValueError):
    pass


class DegenerateOperatorError(SykSimError):
    exit_code = 3


class DegenerateSampleError(DegenerateOperatorError):
    """A sample whose D(0) vanishes, so its normalization is undefined."""

    def __init__(self, message: str, seed: int):
        super().__init__(message)
        self.seed = seed


class RecipeError(SykSimError, ValueError):
    pass


class AmplitudeBoundError(SykSimError, ValueError):
    pass


class ConvergenceError(SykSimError):
    """GRAPE stopped without reaching its fidelity goal."""

    exit_code = 4

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class ConfigError(SykSimError):
    exit_code = 2


class RunStorageError(SykSimError):
    exit_code = 5


# --- Error messages ---

def err_not_found(entity: str, name: str, hint: str | None = None) -> str:
    """Missing entity, as in: Run 'grape-1a2b' not found. An optional hint follows."""
    msg = f"{entity} '{name}' not found."
    return f"{msg} {hint}" if hint else msg


def err_mismatch(what: str, left, right) -> str:
    """Operand disagreement, e.g. qubit_count mismatch: 2 vs 3."""
    return f"{what} mismatch: {left} vs {right}."


def err_required(param: str) -> str:
    return f"{param} is required."


def err_with_hint(description: str, hint: str) -> str:
    """A rejection followed by the accepted values: Unknown engine 'x'. Use 'exact' or 'trotter'."""
    return f"{description} {hint}"


def err_storage(action: str, path, cause: OSError) -> str:
    """Filesystem failure under the run store: Cannot write runs/x/a.csv: Permission denied."""
    return f"Cannot {action} {path}: {cause.strerror or cause}"
