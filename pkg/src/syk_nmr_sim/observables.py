"""Thermal boson pair correlations, sample averages and finite-size scaling.

D(tau) = Tr(e^{-beta H} b(tau) b) / Tr(e^{-beta H}) with b(tau) = e^{-iH tau} b e^{iH tau}.
In the eigenbasis of H this is sum_mn p_m e^{-i(E_m - E_n) tau} |b_mn|^2, so a
whole tau sweep needs one diagonalization.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.linalg import expm

from syk_nmr_sim.evolution import TrotterPlan, exact_unitary, trotter_evolve_state, trotter_unitary
from syk_nmr_sim.pauli_algebra import DenseOperator, PauliSum
from syk_nmr_sim.syk_model import (
    CouplingSet,
    ModelParams,
    build_boson_operator,
    build_hamiltonian,
    draw_samples,
    table_order,
)
from syk_nmr_sim.utils import (
    MATRIX_FREE_QUBIT_THRESHOLD,
    DegenerateOperatorError,
    DegenerateSampleError,
    DimensionError,
    DomainError,
    NotHermitianError,
    ParameterError,
    err_mismatch,
    err_with_hint,
    parallel_map,
)

logger = logging.getLogger(__name__)

DEGENERATE_ATOL = 1e-12
DEFAULT_WINDOW = 0.25
MIN_WINDOW_POINTS = 2


def log_tau_grid(ln_min: float = -3.0, ln_max: float = 3.0, points: int = 30) -> tuple[float, ...]:
    """Log-spaced times with ln tau evenly spaced in [ln_min, ln_max]."""
    if points < 1:
        raise ParameterError("points must be >= 1.")
    return tuple(np.exp(np.linspace(ln_min, ln_max, points)).tolist())


def _check_beta(beta: float) -> None:
    if beta < 0:
        raise ParameterError(f"beta must be >= 0, got {beta}.")


def _dense(op: PauliSum | DenseOperator, cap: int | None) -> DenseOperator:
    return op.to_dense(cap) if isinstance(op, PauliSum) else np.asarray(op, dtype=complex)


@dataclass(frozen=True)
class Spectrum:
    energies: np.ndarray
    vectors: np.ndarray

    @classmethod
    def from_hamiltonian(cls, h: PauliSum | DenseOperator, cap: int | None = None) -> Spectrum:
        if isinstance(h, PauliSum) and not h.is_hermitian():
            raise NotHermitianError("Hamiltonian has complex Pauli coefficients.")
        energies, vectors = np.linalg.eigh(_dense(h, cap))
        return cls(energies, vectors)

    @property
    def dimension(self) -> int:
        return len(self.energies)

    def populations(self, beta: float) -> np.ndarray:
        """Gibbs weights with the ground energy shifted to zero."""
        _check_beta(beta)
        if beta == 0:
            return np.full(self.dimension, 1.0 / self.dimension)
        weights = np.exp(-beta * (self.energies - self.energies.min()))
        return weights / weights.sum()

    def to_eigenbasis(self, op: DenseOperator) -> DenseOperator:
        return self.vectors.conj().T @ op @ self.vectors


@dataclass(frozen=True)
class ThermalState:
    beta: float
    rho: DenseOperator


def thermal_state(h: PauliSum | Spectrum, beta: float, cap: int | None = None) -> ThermalState:
    """e^{-beta H} / Tr e^{-beta H}; exactly I/d at beta = 0."""
    _check_beta(beta)
    spectrum = h if isinstance(h, Spectrum) else Spectrum.from_hamiltonian(h, cap)
    if beta == 0:
        return ThermalState(0.0, np.eye(spectrum.dimension, dtype=complex) / spectrum.dimension)
    p = spectrum.populations(beta)
    rho = (spectrum.vectors * p) @ spectrum.vectors.conj().T
    return ThermalState(float(beta), (rho + rho.conj().T) / 2)


def _boson_dense(b: PauliSum | DenseOperator, dimension: int, cap: int | None) -> DenseOperator:
    if isinstance(b, PauliSum) and len(b) == 0:
        raise DegenerateOperatorError("Boson operator is zero; D(0) normalization is undefined.")
    dense = _dense(b, cap)
    if dense.shape != (dimension, dimension):
        raise DimensionError(err_mismatch("operator shape", dense.shape, (dimension, dimension)))
    if not np.any(np.abs(dense) > DEGENERATE_ATOL):
        raise DegenerateOperatorError("Boson operator is zero; D(0) normalization is undefined.")
    return dense


def correlation_curve(
    spectrum: Spectrum,
    b: PauliSum | DenseOperator,
    beta: float,
    taus,
    cap: int | None = None,
) -> np.ndarray:
    """D(tau) for every tau from one diagonalization."""
    b_eig = spectrum.to_eigenbasis(_boson_dense(b, spectrum.dimension, cap))
    p = spectrum.populations(beta)
    weights = (p[:, None] * np.abs(b_eig) ** 2).ravel()
    gaps = (spectrum.energies[:, None] - spectrum.energies[None, :]).ravel()
    keep = weights > 0
    weights, gaps = weights[keep], gaps[keep]
    return np.array([weights @ np.exp(-1j * gaps * tau) for tau in np.atleast_1d(taus)], dtype=complex)


def boson_correlation(h: PauliSum, b: PauliSum, beta: float, tau: float, cap: int | None = None) -> complex:
    """<b(tau) b(0)>_beta for a single tau."""
    return complex(correlation_curve(Spectrum.from_hamiltonian(h, cap), b, beta, [tau], cap)[0])


def boson_correlation_dense(h: PauliSum, b: PauliSum, beta: float, tau: float, cap: int | None = None) -> complex:
    """Direct matrix chain Tr(e^{-beta H} U b U^dagger b) / Tr(e^{-beta H})."""
    _check_beta(beta)
    h_dense = h.to_dense(cap)
    b_dense = b.to_dense(cap)
    gibbs = expm(-beta * h_dense)
    u = expm(-1j * tau * h_dense)
    chain = gibbs @ u @ b_dense @ u.conj().T @ b_dense
    return complex(np.trace(chain) / np.trace(gibbs))


@dataclass(frozen=True)
class InitialStatePair:
    rho_real: DenseOperator
    rho_imag: DenseOperator


def initial_state_pair(h: PauliSum, b: PauliSum, beta: float, cap: int | None = None) -> InitialStatePair:
    """(rho b + b rho)/2 and -i(rho b - b rho)/2 for the thermal rho."""
    rho = thermal_state(h, beta, cap).rho
    b_dense = b.to_dense(cap)
    return InitialStatePair(
        rho_real=(rho @ b_dense + b_dense @ rho) / 2,
        rho_imag=-1j * (rho @ b_dense - b_dense @ rho) / 2,
    )


def correlation_from_initial_states(
    h: PauliSum, b: PauliSum, beta: float, taus, cap: int | None = None
) -> np.ndarray:
    """Re D and Im D measured as Tr(U rho_{real,imag} U^dagger b)."""
    pair = initial_state_pair(h, b, beta, cap)
    b_dense = b.to_dense(cap)
    out = []
    for tau in np.atleast_1d(taus):
        u = exact_unitary(h, float(tau), cap)
        real = np.trace(u @ pair.rho_real @ u.conj().T @ b_dense).real
        imag = np.trace(u @ pair.rho_imag @ u.conj().T @ b_dense).real
        out.append(complex(real, imag))
    return np.array(out, dtype=complex)


@dataclass(frozen=True)
class EvolutionMode:
    """How b(tau) is propagated: exactly, or by a Trotter product.

    A Trotter mode uses either a fixed step count or the smallest count whose
    step length tau/n stays below ``max_step``.
    """

    kind: str = "exact"
    steps: int | None = None
    max_step: float | None = None
    ordering: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("exact", "trotter"):
            raise ParameterError(err_with_hint(f"Unknown evolution mode '{self.kind}'.", "Use 'exact' or 'trotter'."))
        if self.kind == "trotter" and (self.steps is None) == (self.max_step is None):
            raise ParameterError("Trotter mode needs exactly one of steps or max_step.")

    @classmethod
    def exact(cls) -> EvolutionMode:
        return cls()

    @classmethod
    def trotter(cls, steps: int | None = None, max_step: float | None = None, ordering=None) -> EvolutionMode:
        return cls("trotter", steps, max_step, None if ordering is None else tuple(ordering))

    def steps_for(self, tau: float) -> int:
        if self.steps is not None:
            return self.steps
        return max(1, math.ceil(abs(tau) / self.max_step))

    def describe(self) -> dict:
        return {"kind": self.kind, "steps": self.steps, "max_step": self.max_step}


def _trotter_curve(h: PauliSum, b: PauliSum, beta: float, taus, mode: EvolutionMode, cap: int | None) -> np.ndarray:
    rho = thermal_state(h, beta, cap).rho
    b_dense = _boson_dense(b, 1 << h.qubit_count, cap)
    ordering = table_order(h) if mode.ordering is None else mode.ordering
    out = []
    for tau in np.atleast_1d(taus):
        plan = TrotterPlan(float(tau), mode.steps_for(float(tau)), ordering)
        if h.qubit_count > MATRIX_FREE_QUBIT_THRESHOLD:
            # U b U^dagger = U (U b)^dagger for Hermitian b
            ub = trotter_evolve_state(h, plan, b_dense)
            moved = trotter_evolve_state(h, plan, ub.conj().T)
        else:
            u = trotter_unitary(h, plan, cap)
            moved = u @ b_dense @ u.conj().T
        out.append(np.trace(rho @ moved @ b_dense))
    return np.array(out, dtype=complex)


def sample_curve(
    c: CouplingSet,
    beta: float,
    taus,
    mode: EvolutionMode = EvolutionMode(),
    cap: int | None = None,
) -> np.ndarray:
    """Unnormalized D(tau) of one coupling sample."""
    h = build_hamiltonian(c)
    b = build_boson_operator(c)
    if len(b) == 0:
        raise DegenerateSampleError(f"Sample with seed {c.params.seed} has b = 0.", c.params.seed)
    if mode.kind == "exact" or len(h) == 0:
        return correlation_curve(Spectrum.from_hamiltonian(h, cap), b, beta, taus, cap)
    return _trotter_curve(h, b, beta, taus, mode, cap)


@dataclass(frozen=True)
class CorrelationSeries:
    beta: float
    mu: float
    tau_grid: tuple[float, ...]
    seeds: tuple[int, ...]
    values: np.ndarray          # complex D(tau), one row per sample
    normalized_abs: np.ndarray  # |D(tau)/D(0)|, one row per sample
    mode: EvolutionMode = field(default_factory=EvolutionMode)

    @property
    def sample_count(self) -> int:
        return len(self.seeds)

    @property
    def mean_abs(self) -> np.ndarray:
        return self.normalized_abs.mean(axis=0)

    @property
    def stderr(self) -> np.ndarray:
        if self.sample_count < 2:
            return np.zeros(len(self.tau_grid))
        return self.normalized_abs.std(axis=0, ddof=1) / math.sqrt(self.sample_count)

    def sample_rows(self):
        """(sample_seed, beta, mu, tau, re_D, im_D, abs_D_normalized) rows."""
        for s, seed in enumerate(self.seeds):
            for t, tau in enumerate(self.tau_grid):
                d = self.values[s, t]
                yield seed, self.beta, self.mu, tau, float(d.real), float(d.imag), float(self.normalized_abs[s, t])

    def aggregate_rows(self):
        """(beta, mu, tau, avg_abs_D, stderr) rows."""
        mean, err = self.mean_abs, self.stderr
        for t, tau in enumerate(self.tau_grid):
            yield self.beta, self.mu, tau, float(mean[t]), float(err[t])


def averaged_correlation(
    samples: list[CouplingSet],
    beta: float,
    tau_grid,
    evolution_mode: EvolutionMode = EvolutionMode(),
    threads: int = 1,
    cap: int | None = None,
) -> CorrelationSeries:
    """avg_r |D_r(tau) / D_r(0)|: normalize each sample, take the modulus, then average."""
    if not samples:
        raise ParameterError("averaged_correlation needs at least one sample.")
    _check_beta(beta)
    grid = tuple(float(t) for t in tau_grid)
    taus = (0.0,) + grid

    def run(c: CouplingSet) -> np.ndarray:
        curve = sample_curve(c, beta, taus, evolution_mode, cap)
        if abs(curve[0]) < DEGENERATE_ATOL:
            raise DegenerateSampleError(
                f"Sample with seed {c.params.seed} has |D(0)| < {DEGENERATE_ATOL}.", c.params.seed
            )
        return curve

    curves = np.array(parallel_map(run, samples, threads))
    d0 = np.abs(curves[:, :1])
    values = curves[:, 1:]
    normalized = np.abs(values) / d0
    logger.debug("Averaged %d samples at beta=%g over %d times", len(samples), beta, len(grid))
    return CorrelationSeries(
        beta=float(beta),
        mu=float(samples[0].params.mu),
        tau_grid=grid,
        seeds=tuple(c.params.seed for c in samples),
        values=values,
        normalized_abs=normalized,
        mode=evolution_mode,
    )


def _window_slice(length: int, window: float) -> slice:
    if not 0 < window <= 1:
        raise DomainError(f"window must be in (0, 1], got {window}.")
    count = math.ceil(window * length - 1e-9)
    if count < MIN_WINDOW_POINTS:
        raise DomainError(
            f"Late-time window holds {count} points; at least {MIN_WINDOW_POINTS} are needed."
        )
    return slice(length - count, length)


def saturation_value(series: CorrelationSeries | np.ndarray, window: float = DEFAULT_WINDOW) -> float:
    """Mean of the averaged |D| over the last ``window`` fraction of the grid."""
    curve = series.mean_abs if isinstance(series, CorrelationSeries) else np.asarray(series, dtype=float)
    return float(curve[_window_slice(len(curve), window)].mean())


def saturation_stderr(series: CorrelationSeries, window: float = DEFAULT_WINDOW) -> float:
    """Sample standard error of the per-sample late-window means."""
    if series.sample_count < 2:
        return 0.0
    per_sample = series.normalized_abs[:, _window_slice(len(series.tau_grid), window)].mean(axis=1)
    return float(per_sample.std(ddof=1) / math.sqrt(series.sample_count))


@dataclass(frozen=True)
class ScalingPoint:
    n_majorana: int
    mu: float
    avg_abs_d_inf: float
    stderr: float
    samples: int

    def to_row(self) -> tuple:
        return self.n_majorana, self.mu, self.avg_abs_d_inf, self.stderr, self.samples


def scaling_sweep(
    n_list,
    mu_list,
    beta: float,
    samples_per_point: int,
    master_seed: int = 0,
    base: ModelParams | None = None,
    tau_grid=None,
    window: float = DEFAULT_WINDOW,
    evolution_mode: EvolutionMode = EvolutionMode(),
    pairing: str = "mirrored",
    threads: int = 1,
    cap: int | None = None,
) -> list[ScalingPoint]:
    """Saturation value avg|D(inf)| for every (N, mu) pair, N outer."""
    grid = log_tau_grid() if tau_grid is None else tuple(tau_grid)
    template = base or ModelParams(n_majorana=4)
    out = []
    for n in n_list:
        for mu in mu_list:
            params = replace(template, n_majorana=int(n), mu=float(mu))
            samples = draw_samples(params, master_seed, samples_per_point, pairing)
            series = averaged_correlation(samples, beta, grid, evolution_mode, threads, cap)
            point = ScalingPoint(int(n), float(mu), saturation_value(series, window),
                                 saturation_stderr(series, window), samples_per_point)
            logger.info("N=%d mu=%g avg|D(inf)|=%.4f +- %.4f", n, mu, point.avg_abs_d_inf, point.stderr)
            out.append(point)
    return out
