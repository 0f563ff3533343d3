"""Four-spin NMR simulator: internal Hamiltonian, pulse recipes and GRAPE.

Frequencies are in Hz and times in seconds; Hamiltonians are in rad/s.
Spins are indexed from 0. A hard rotation [theta]_a^j is e^{-i theta sigma_a^j / 2},
a coupling block [t]_jk is e^{-i pi J_jk t sigma_z^j sigma_z^k / 2} and a free
evolution {t} is e^{-i H t} under the selected internal Hamiltonian.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Union

import numpy as np

from syk_nmr_sim.evolution import unitary_fidelity
from syk_nmr_sim.pauli_algebra import DenseOperator, PauliString, PauliSum, exp_pauli_term
from syk_nmr_sim.utils import (
    AmplitudeBoundError,
    ConvergenceError,
    DimensionError,
    NotUnitaryError,
    ParameterError,
    RecipeError,
    err_mismatch,
    err_with_hint,
    parallel_map,
)

logger = logging.getLogger(__name__)

MOLECULE_SHIFTS_HZ = (2989.0, 25459.0, 21592.0, 29341.0)
MOLECULE_COUPLINGS_HZ = {(0, 1): 41.6, (0, 2): 1.4, (1, 2): 69.7, (0, 3): 7.0, (1, 3): 1.2, (2, 3): 72.2}
MOLECULE_T1_S = (5.7, 5.3, 5.6, 10.2)
MOLECULE_T2_S = (1.02, 0.92, 0.89, 0.94)
REFERENCE_NOTE = "rotating frame at a common reference of 176.053 MHz; amplitude is the nutation frequency"


@dataclass(frozen=True)
class SpinSystemParams:
    chemical_shifts: tuple[float, ...] = MOLECULE_SHIFTS_HZ
    j_couplings: np.ndarray = field(default=None)
    t1: tuple[float, ...] | None = MOLECULE_T1_S
    t2: tuple[float, ...] | None = MOLECULE_T2_S

    def __post_init__(self):
        n = len(self.chemical_shifts)
        object.__setattr__(self, "chemical_shifts", tuple(float(s) for s in self.chemical_shifts))
        if self.j_couplings is None:
            if n != 4:
                raise ParameterError("Default couplings need four spins.")
            couplings = np.zeros((4, 4))
            for (i, j), value in MOLECULE_COUPLINGS_HZ.items():
                couplings[i, j] = couplings[j, i] = value
        else:
            couplings = np.array(self.j_couplings, dtype=float)
        if couplings.shape != (n, n):
            raise DimensionError(err_mismatch("j_couplings shape", couplings.shape, (n, n)))
        if not np.allclose(couplings, couplings.T) or np.any(np.diag(couplings) != 0):
            raise ParameterError("j_couplings must be symmetric with a zero diagonal.")
        couplings.setflags(write=False)
        object.__setattr__(self, "j_couplings", couplings)

    @property
    def spin_count(self) -> int:
        return len(self.chemical_shifts)

    def coupling(self, j: int, k: int) -> float:
        return float(self.j_couplings[j, k])

    def subsystem(self, spins, chemical_shifts=None) -> SpinSystemParams:
        """Restriction to the listed spins; shifts may be re-centred."""
        spins = list(spins)
        shifts = [self.chemical_shifts[s] for s in spins] if chemical_shifts is None else chemical_shifts
        pick = lambda values: None if values is None else tuple(values[s] for s in spins)
        return SpinSystemParams(tuple(shifts), self.j_couplings[np.ix_(spins, spins)], pick(self.t1), pick(self.t2))

    def without_shifts(self) -> SpinSystemParams:
        return replace(self, chemical_shifts=(0.0,) * self.spin_count)

    def only_couplings(self, pairs) -> SpinSystemParams:
        kept = np.zeros_like(self.j_couplings)
        for j, k in pairs:
            kept[j, k] = kept[k, j] = self.j_couplings[j, k]
        return SpinSystemParams((0.0,) * self.spin_count, kept, self.t1, self.t2)

    def to_json(self) -> dict:
        return {
            "chemical_shifts_hz": list(self.chemical_shifts),
            "j_couplings_hz": self.j_couplings.tolist(),
            "t1_s": None if self.t1 is None else list(self.t1),
            "t2_s": None if self.t2 is None else list(self.t2),
        }


def desk_two_spin_system() -> SpinSystemParams:
    """Spins 1-2 of the four-spin molecule with offsets centred at +-250 Hz."""
    return SpinSystemParams().subsystem((0, 1), chemical_shifts=(250.0, -250.0))


def internal_hamiltonian(params: SpinSystemParams) -> PauliSum:
    """sum_i (omega_i / 2) Z_i + sum_{i<j} (pi J_ij / 2) Z_i Z_j with omega_i = 2 pi shift_i."""
    n = params.spin_count
    terms = [PauliString.single(n, i, "Z", math.pi * shift) for i, shift in enumerate(params.chemical_shifts)]
    for i in range(n):
        for j in range(i + 1, n):
            terms.append(
                PauliString.single(n, i, "Z") * PauliString.single(n, j, "Z").scaled(math.pi * params.coupling(i, j) / 2)
            )
    return PauliSum(n, terms, atol=0.0)


# --- Pulse recipes ---

@dataclass(frozen=True)
class Rotation:
    theta: float
    axis: str
    spin: int

    def __str__(self):
        return f"[{self.theta:.6g}]_{self.axis}^{self.spin}"


@dataclass(frozen=True)
class FreeEvolution:
    duration: float

    def __str__(self):
        return f"{{{self.duration:.6g}}}"


@dataclass(frozen=True)
class CouplingBlock:
    duration: float
    spins: tuple[int, int]

    def __str__(self):
        return f"[{self.duration:.6g}]_{self.spins[0]}{self.spins[1]}"


RecipeElement = Union[Rotation, FreeEvolution, CouplingBlock]


@dataclass(frozen=True)
class PulseRecipe:
    """Ideal pulse sequence with the interaction it is meant to produce.

    ``targets`` lists the couplings the sequence relies on; reduced
    simulation keeps only those.
    """

    name: str
    spin_count: int
    elements: tuple[RecipeElement, ...]
    target: PauliString          # e^{-i target t} with t = 1
    targets: tuple[tuple[int, int], ...] = ()

    def target_unitary(self) -> DenseOperator:
        return exp_pauli_term(self.target, 1.0)

    def describe(self) -> str:
        return " -> ".join(str(e) for e in self.elements)


def _z_string(n: int, spins, coefficient: float) -> PauliString:
    out = PauliString.identity(n, coefficient)
    for s in spins:
        out = out * PauliString.single(n, s, "Z")
    return out


def recipe_one_body(j1_hz: float, tau: float, spin_count: int = 4) -> PulseRecipe:
    """e^{-i pi J_1 tau X_1 / 2} as the single rotation [pi J_1 tau]_x^1."""
    theta = math.pi * j1_hz * tau
    target = PauliString.single(spin_count, 0, "X", theta / 2)
    return PulseRecipe("one_body", spin_count, (Rotation(theta, "x", 0),), target)


def recipe_two_body(params: SpinSystemParams, tau: float, corrected: bool = True) -> PulseRecipe:
    """e^{-i pi J_12 tau Z_1 Z_2 / 2} by refocusing spins 3 and 4.

    The four refocused intervals alone leave a pi flip on spin 3; ``corrected``
    appends the closing [pi]_y^3 that removes it.
    """
    quarter = FreeEvolution(tau / 4)
    elements = [quarter, Rotation(math.pi, "y", 3), quarter, Rotation(math.pi, "y", 2),
                quarter, Rotation(math.pi, "y", 3), quarter]
    if corrected:
        elements.append(Rotation(math.pi, "y", 2))
    target = _z_string(4, (0, 1), math.pi * params.coupling(0, 1) * tau / 2)
    return PulseRecipe("two_body" if corrected else "two_body_uncorrected", 4, tuple(elements), target, ((0, 1),))


def _chain_open(params: SpinSystemParams, a: int, b: int) -> list[RecipeElement]:
    return [Rotation(math.pi / 2, "x", b), Rotation(math.pi, "y", b),
            CouplingBlock(1 / (2 * params.coupling(a, b)), (a, b)), Rotation(-math.pi / 2, "y", b)]


def _chain_close(params: SpinSystemParams, a: int, b: int) -> list[RecipeElement]:
    return [Rotation(-math.pi / 2, "y", b), CouplingBlock(1 / (2 * params.coupling(a, b)), (a, b)),
            Rotation(-math.pi / 2, "x", b)]


def recipe_three_body(params: SpinSystemParams, j123_hz: float, tau: float) -> PulseRecipe:
    """e^{-i pi J_123 tau Z_1 Z_2 Z_3 / 2} from couplings J_12 and J_23."""
    core = CouplingBlock(j123_hz * tau / params.coupling(1, 2), (1, 2))
    elements = _chain_open(params, 0, 1) + [core] + _chain_close(params, 0, 1)
    target = _z_string(4, (0, 1, 2), math.pi * j123_hz * tau / 2)
    return PulseRecipe("three_body", 4, tuple(elements), target, ((0, 1), (1, 2)))


def recipe_four_body(params: SpinSystemParams, j1234_hz: float, tau: float) -> PulseRecipe:
    """e^{-i pi J_1234 tau Z_1 Z_2 Z_3 Z_4 / 2} from couplings J_12, J_23 and J_34."""
    core = CouplingBlock(j1234_hz * tau / params.coupling(2, 3), (2, 3))
    elements = (_chain_open(params, 0, 1) + _chain_open(params, 1, 2) + [core]
                + _chain_close(params, 1, 2) + _chain_close(params, 0, 1))
    target = _z_string(4, (0, 1, 2, 3), math.pi * j1234_hz * tau / 2)
    return PulseRecipe("four_body", 4, tuple(elements), target, ((0, 1), (1, 2), (2, 3)))


IDEALIZATIONS = ("full", "couplings", "reduced")


def _free_hamiltonian(recipe: PulseRecipe, params: SpinSystemParams, idealization: str) -> PauliSum:
    if idealization == "full":
        return internal_hamiltonian(params)
    if idealization == "couplings":
        return internal_hamiltonian(params.without_shifts())
    return internal_hamiltonian(params.only_couplings(recipe.targets))


def _diagonal_exponential(h: PauliSum, t: float) -> np.ndarray:
    # every internal term is diagonal
    return np.exp(-1j * np.real(np.diag(h.to_dense())) * t)


def simulate_recipe(recipe: PulseRecipe, params: SpinSystemParams, idealization: str = "full") -> DenseOperator:
    """Total unitary of a recipe with instantaneous hard pulses.

    ``full`` evolves under the complete internal Hamiltonian, ``couplings``
    drops the chemical shifts and ``reduced`` keeps only the recipe's target
    couplings. Coupling blocks are ideal except in ``full`` mode, where they
    are free evolutions of the same duration.
    """
    if idealization not in IDEALIZATIONS:
        raise RecipeError(err_with_hint(f"Unknown idealization '{idealization}'.", f"Use one of {IDEALIZATIONS}."))
    if recipe.spin_count != params.spin_count:
        raise DimensionError(err_mismatch("spin count", recipe.spin_count, params.spin_count))
    n = recipe.spin_count
    free = _free_hamiltonian(recipe, params, idealization)
    out = np.eye(1 << n, dtype=complex)
    for element in recipe.elements:
        if isinstance(element, Rotation):
            if element.axis not in ("x", "y", "z"):
                raise RecipeError(f"Unknown rotation axis '{element.axis}'.")
            step = exp_pauli_term(PauliString.single(n, element.spin, element.axis, element.theta / 2), 1.0)
            out = step @ out
        elif isinstance(element, FreeEvolution):
            out = _diagonal_exponential(free, element.duration)[:, None] * out
        elif isinstance(element, CouplingBlock):
            if idealization == "full":
                out = _diagonal_exponential(free, element.duration)[:, None] * out
            else:
                j, k = element.spins
                block = _z_string(n, (j, k), math.pi * params.coupling(j, k) / 2)
                out = exp_pauli_term(block, element.duration) @ out
        else:
            raise RecipeError(f"Unknown recipe element {element!r}.")
    return out


def recipe_check(recipe: PulseRecipe, params: SpinSystemParams, idealization: str = "reduced") -> float:
    """Fidelity of the simulated recipe against its target interaction."""
    return unitary_fidelity(recipe.target_unitary(), simulate_recipe(recipe, params, idealization))


# --- Control fields and propagators ---

@dataclass(frozen=True)
class ControlField:
    """Piecewise-constant transmitter field shared by all spins."""

    slice_duration: float
    amplitudes: np.ndarray   # Hz
    phases: np.ndarray       # rad
    amplitude_bound: float = math.inf

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=float)
        phases = np.array(self.phases, dtype=float)
        if amplitudes.shape != phases.shape or amplitudes.ndim != 1:
            raise DimensionError(err_mismatch("field slices", amplitudes.shape, phases.shape))
        if self.slice_duration <= 0:
            raise ParameterError("slice_duration must be positive.")
        object.__setattr__(self, "amplitudes", amplitudes)
        object.__setattr__(self, "phases", phases)

    @property
    def slice_count(self) -> int:
        return len(self.amplitudes)

    @property
    def duration(self) -> float:
        return self.slice_count * self.slice_duration

    @classmethod
    def zeros(cls, slice_count: int, slice_duration: float, amplitude_bound: float = math.inf) -> ControlField:
        return cls(slice_duration, np.zeros(slice_count), np.zeros(slice_count), amplitude_bound)

    @classmethod
    def constant(cls, slice_count: int, slice_duration: float, amplitude: float, phase: float = 0.0,
                 amplitude_bound: float = math.inf) -> ControlField:
        return cls(slice_duration, np.full(slice_count, amplitude), np.full(slice_count, phase), amplitude_bound)

    @classmethod
    def from_cartesian(cls, slice_duration: float, ux: np.ndarray, uy: np.ndarray,
                       amplitude_bound: float = math.inf) -> ControlField:
        return cls(slice_duration, np.hypot(ux, uy), np.arctan2(uy, ux), amplitude_bound)

    @classmethod
    def random(cls, slice_count: int, slice_duration: float, max_amplitude: float, seed: int,
               amplitude_bound: float = math.inf) -> ControlField:
        rng = np.random.default_rng(seed)
        return cls(slice_duration, rng.uniform(0, max_amplitude, slice_count),
                   rng.uniform(-math.pi, math.pi, slice_count), amplitude_bound)

    def cartesian(self) -> tuple[np.ndarray, np.ndarray]:
        return self.amplitudes * np.cos(self.phases), self.amplitudes * np.sin(self.phases)

    def check_bound(self) -> None:
        peak = float(self.amplitudes.max(initial=0.0))
        if peak > self.amplitude_bound * (1 + 1e-12):
            raise AmplitudeBoundError(
                f"Peak amplitude {peak:.6g} Hz exceeds the bound of {self.amplitude_bound:.6g} Hz."
            )

    def rows(self):
        """(slice, amplitude_hz, phase_rad) rows."""
        for j in range(self.slice_count):
            yield j, float(self.amplitudes[j]), float(self.phases[j])

    def header(self) -> dict:
        return {"M": self.slice_count, "slice_duration_s": self.slice_duration, "reference_note": REFERENCE_NOTE}


@dataclass(frozen=True)
class _ControlModel:
    h_int: np.ndarray   # diagonal entries of the internal Hamiltonian
    sx: np.ndarray      # sum_i X_i
    sy: np.ndarray      # sum_i Y_i

    @classmethod
    def build(cls, params: SpinSystemParams) -> _ControlModel:
        n = params.spin_count
        h = internal_hamiltonian(params)
        sx = PauliSum(n, [PauliString.single(n, i, "X") for i in range(n)]).to_dense()
        sy = PauliSum(n, [PauliString.single(n, i, "Y") for i in range(n)]).to_dense()
        return cls(np.real(np.diag(h.to_dense())) if len(h) else np.zeros(1 << n), sx, sy)

    @property
    def dimension(self) -> int:
        return len(self.h_int)

    def slice_hamiltonians(self, ux: np.ndarray, uy: np.ndarray, scale: float) -> np.ndarray:
        """H_j = H_int + pi s (ux_j SX + uy_j SY), stacked over slices."""
        drive = math.pi * scale * (ux[:, None, None] * self.sx + uy[:, None, None] * self.sy)
        return drive + np.diag(self.h_int)[None, :, :]


def _slice_propagators(hamiltonians: np.ndarray, dt: float):
    energies, vectors = np.linalg.eigh(hamiltonians)
    phases = np.exp(-1j * energies * dt)
    props = (vectors * phases[:, None, :]) @ np.conj(np.swapaxes(vectors, 1, 2))
    return props, energies, vectors, phases


def _chain(props: np.ndarray) -> np.ndarray:
    out = np.eye(props.shape[1], dtype=complex)
    for u in props:
        out = u @ out
    return out


def control_propagator(field: ControlField, params: SpinSystemParams, scale: float = 1.0) -> DenseOperator:
    """prod_j e^{-i (H_int + H_C(B_j, phi_j)) dt}, first slice applied first."""
    field.check_bound()
    model = _ControlModel.build(params)
    ux, uy = field.cartesian()
    props, *_ = _slice_propagators(model.slice_hamiltonians(ux, uy, scale), field.slice_duration)
    return _chain(props)


def _check_target(target: DenseOperator, dimension: int) -> None:
    if target.shape != (dimension, dimension):
        raise DimensionError(err_mismatch("target shape", target.shape, (dimension, dimension)))
    if not np.allclose(target.conj().T @ target, np.eye(dimension), atol=1e-8):
        raise NotUnitaryError("GRAPE target is not unitary.")


def gate_fidelity(target: DenseOperator, u: DenseOperator) -> float:
    """|Tr(T^dagger U)|^2 / d^2."""
    return float(abs(np.vdot(target, u)) ** 2 / target.shape[0] ** 2)


def _objective_and_gradient(model: _ControlModel, target: np.ndarray, ux: np.ndarray, uy: np.ndarray,
                            dt: float, scale: float, with_gradient: bool = True):
    d = model.dimension
    props, energies, vectors, phases = _slice_propagators(model.slice_hamiltonians(ux, uy, scale), dt)
    m = len(props)
    forward = np.empty_like(props)   # forward[j] = U_j ... U_1
    acc = np.eye(d, dtype=complex)
    for j in range(m):
        acc = props[j] @ acc
        forward[j] = acc
    g = np.vdot(target, acc)
    phi = float(abs(g) ** 2 / d ** 2)
    if not with_gradient:
        return phi, None, None

    backward = np.empty_like(props)  # backward[j] = U_M ... U_{j+1}
    acc = np.eye(d, dtype=complex)
    for j in range(m - 1, -1, -1):
        backward[j] = acc
        acc = acc @ props[j]
    before = np.concatenate([np.eye(d, dtype=complex)[None], forward[:-1]])
    q = before @ target.conj().T[None] @ backward            # Q_j = R_j T^dagger L_j

    # Divided differences of e^{-i lambda dt}
    gap = energies[:, :, None] - energies[:, None, :]
    diff = phases[:, :, None] - phases[:, None, :]
    degenerate = np.abs(gap) < 1e-9
    gamma = np.where(degenerate, -1j * dt * phases[:, :, None], diff / np.where(degenerate, 1.0, gap))

    vh = np.conj(np.swapaxes(vectors, 1, 2))
    q_eig = vh @ q @ vectors
    grads = []
    for drive in (model.sx, model.sy):
        d_eig = vh @ (math.pi * scale * drive)[None] @ vectors
        dg = np.sum(np.swapaxes(q_eig, 1, 2) * gamma * d_eig, axis=(1, 2))
        grads.append(2 * np.real(np.conj(g) * dg) / d ** 2)
    return phi, grads[0], grads[1]


def grape_gradient(field: ControlField, target: DenseOperator, params: SpinSystemParams,
                   robustness=(1.0,)) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean objective over RF scales and its gradient in (ux, uy), per Hz."""
    model = _ControlModel.build(params)
    _check_target(target, model.dimension)
    ux, uy = field.cartesian()
    return _ensemble(model, target, ux, uy, field.slice_duration, tuple(robustness), True)


def _ensemble(model, target, ux, uy, dt, scales, with_gradient, threads: int = 1):
    results = parallel_map(lambda s: _objective_and_gradient(model, target, ux, uy, dt, s, with_gradient),
                           scales, threads)
    phi = float(np.mean([r[0] for r in results]))
    if not with_gradient:
        return phi, None, None
    gx = np.mean([r[1] for r in results], axis=0)
    gy = np.mean([r[2] for r in results], axis=0)
    return phi, gx, gy


@dataclass(frozen=True)
class GrapeStop:
    max_iter: int = 2000
    fidelity_goal: float = 0.99
    min_step: float = 1e-9

    def __post_init__(self):
        if not 0 < self.fidelity_goal < 1:
            raise ParameterError(f"fidelity_goal must lie in (0, 1), got {self.fidelity_goal}.")
        if self.max_iter < 0:
            raise ParameterError("max_iter must be >= 0.")


@dataclass(frozen=True)
class GrapeResult:
    field: ControlField
    objective: float
    converged: bool
    trace: tuple[tuple[int, float, float], ...]  # (iter, objective, step_size)
    scales: tuple[float, ...] = (1.0,)


def _clip(ux: np.ndarray, uy: np.ndarray, bound: float) -> tuple[np.ndarray, np.ndarray]:
    if not math.isfinite(bound):
        return ux, uy
    amplitude = np.hypot(ux, uy)
    factor = np.where(amplitude > bound, bound / np.maximum(amplitude, 1e-300), 1.0)
    return ux * factor, uy * factor


def grape_optimize(
    target: DenseOperator,
    init: ControlField,
    params: SpinSystemParams,
    robustness=(1.0,),
    stop: GrapeStop = GrapeStop(),
    initial_step: float = 10.0,
    threads: int = 1,
    raise_on_failure: bool = False,
) -> GrapeResult:
    """Gradient ascent on the mean of |Tr(T^dagger U_s)|^2 / d^2 over RF scales s.

    Each iteration moves along the gradient scaled to a max-norm of
    ``step`` Hz. A trial is accepted only if the objective does not drop;
    accepted steps double the step size, rejected ones halve it. Amplitudes
    are clipped radially to the field's bound.
    """
    model = _ControlModel.build(params)
    _check_target(target, model.dimension)
    init.check_bound()
    scales = tuple(float(s) for s in robustness)
    dt = init.slice_duration
    bound = init.amplitude_bound
    ux, uy = init.cartesian()
    phi, gx, gy = _ensemble(model, target, ux, uy, dt, scales, True, threads)
    step = initial_step
    trace = [(0, phi, 0.0)]
    iteration = 0
    while phi < stop.fidelity_goal and iteration < stop.max_iter and step >= stop.min_step:
        iteration += 1
        norm = max(float(np.abs(gx).max()), float(np.abs(gy).max()))
        if norm == 0.0:
            break
        tx, ty = _clip(ux + step * gx / norm, uy + step * gy / norm, bound)
        trial, _, _ = _ensemble(model, target, tx, ty, dt, scales, False, threads)
        used = step
        if trial >= phi:
            ux, uy = tx, ty
            phi, gx, gy = _ensemble(model, target, ux, uy, dt, scales, True, threads)
            step *= 2.0
        else:
            step *= 0.5
        trace.append((iteration, phi, used))
        logger.debug("GRAPE iter %d objective %.8f step %.4g", iteration, phi, used)

    converged = phi >= stop.fidelity_goal
    result = GrapeResult(ControlField.from_cartesian(dt, ux, uy, bound), phi, converged, tuple(trace), scales)
    if converged:
        logger.info("GRAPE reached %.6f after %d iterations", phi, iteration)
    else:
        logger.warning("GRAPE stopped at %.6f after %d iterations (goal %.4f)", phi, iteration, stop.fidelity_goal)
        if raise_on_failure:
            raise ConvergenceError(
                f"GRAPE did not reach {stop.fidelity_goal} within {stop.max_iter} iterations.", result
            )
    return result


@dataclass(frozen=True)
class RobustnessProfile:
    scales: tuple[float, ...]
    fidelities: tuple[float, ...]

    @property
    def mean(self) -> float:
        return float(np.mean(self.fidelities))

    def rows(self):
        return zip(self.scales, self.fidelities)


def robustness_profile(field: ControlField, target: DenseOperator, params: SpinSystemParams,
                       scales=(0.95, 0.975, 1.0, 1.025, 1.05)) -> RobustnessProfile:
    """Gate fidelity of the field at each RF scale factor."""
    scales = tuple(float(s) for s in scales)
    return RobustnessProfile(
        scales, tuple(gate_fidelity(target, control_propagator(field, params, s)) for s in scales)
    )


def zz_target(spin_count: int, angle: float, spins=(0, 1)) -> DenseOperator:
    """e^{-i angle Z_a Z_b}."""
    return exp_pauli_term(_z_string(spin_count, spins, angle), 1.0)
