"""Exact and first-order Trotterized evolution under a PauliSum Hamiltonian."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from syk_nmr_sim.pauli_algebra import (
    DenseOperator,
    PauliSum,
    check_dense_cap,
    apply_pauli_exponential,
    commutator_is_zero,
)
from syk_nmr_sim.syk_model import table_order
from syk_nmr_sim.utils import (
    DimensionError,
    NotHermitianError,
    NotUnitaryError,
    PlanError,
    err_mismatch,
    parallel_map,
)

logger = logging.getLogger(__name__)

DEFAULT_LN_TAU_AXIS = tuple(np.linspace(-3.0, 3.0, 25).tolist())
DEFAULT_LOG10_N_AXIS = tuple(np.linspace(0.0, 2.5, 25).tolist())

# Reference cell of the fidelity surface: ln tau = 2, log10 n = 1.55
ANCHOR_LN_TAU = 2.0
ANCHOR_LOG10_N = 1.55

UNITARITY_ATOL = 1e-8


def _require_hermitian(h: PauliSum) -> None:
    if not h.is_hermitian():
        raise NotHermitianError("Hamiltonian has complex Pauli coefficients.")


def anchor_steps(log10_n: float) -> int:
    """Step count for a log10 n axis value, rounded to the nearest integer >= 1."""
    return max(1, int(round(10.0 ** log10_n)))


def exact_unitary(h: PauliSum, tau: float, cap: int | None = None) -> DenseOperator:
    """e^{-i H tau} through the Hermitian eigendecomposition of H."""
    _require_hermitian(h)
    energies, vectors = np.linalg.eigh(h.to_dense(cap))
    return (vectors * np.exp(-1j * energies * tau)) @ vectors.conj().T


@dataclass(frozen=True)
class TrotterPlan:
    tau: float
    steps: int
    ordering: tuple[int, ...]

    def __post_init__(self):
        if self.steps < 1:
            raise PlanError(f"steps must be >= 1, got {self.steps}.")
        object.__setattr__(self, "ordering", tuple(int(i) for i in self.ordering))

    @classmethod
    def for_hamiltonian(cls, h: PauliSum, tau: float, steps: int, ordering=None) -> TrotterPlan:
        """Plan over every term of h; the default ordering is the term-table order."""
        return cls(tau, steps, table_order(h) if ordering is None else tuple(ordering))

    def validate(self, h: PauliSum) -> None:
        if not self.ordering:
            raise PlanError("Trotter plan has no terms.")
        if sorted(self.ordering) != list(range(len(h))):
            raise PlanError("Plan ordering is not a permutation of the Hamiltonian terms.")


def _ordered_terms(h: PauliSum, plan: TrotterPlan):
    plan.validate(h)
    return [h.terms[i] for i in plan.ordering]


def trotter_step(h: PauliSum, plan: TrotterPlan, cap: int | None = None) -> DenseOperator:
    """One factor prod_s e^{-i H_s tau/n}; the first term in the plan acts first."""
    terms = _ordered_terms(h, plan)
    _require_hermitian(h)
    dt = plan.tau / plan.steps
    check_dense_cap(h.qubit_count, cap)
    step = np.eye(1 << h.qubit_count, dtype=complex)
    for term in terms:
        step = apply_pauli_exponential(step, term, dt)
    return step


def trotter_unitary(h: PauliSum, plan: TrotterPlan, cap: int | None = None) -> DenseOperator:
    """(prod_s e^{-i H_s tau/n})^n."""
    return np.linalg.matrix_power(trotter_step(h, plan, cap), plan.steps)


def trotter_evolve_state(h: PauliSum, plan: TrotterPlan, state: np.ndarray) -> np.ndarray:
    """Apply the Trotter product to a state without realizing any matrix."""
    terms = _ordered_terms(h, plan)
    _require_hermitian(h)
    dt = plan.tau / plan.steps
    out = np.asarray(state, dtype=complex)
    for _ in range(plan.steps):
        for term in terms:
            out = apply_pauli_exponential(out, term, dt)
    return out


def unitary_fidelity(u: DenseOperator, v: DenseOperator) -> float:
    """|Tr(u^dagger v)| / d, insensitive to a global phase."""
    if u.shape != v.shape or u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionError(err_mismatch("operator shape", u.shape, v.shape))
    dim = u.shape[0]
    identity = np.eye(dim)
    for name, op in (("u", u), ("v", v)):
        if not np.allclose(op.conj().T @ op, identity, atol=UNITARITY_ATOL):
            raise NotUnitaryError(f"{name} is not unitary.")
    return float(abs(np.vdot(u, v)) / dim)


def trotter_error(h: PauliSum, plan: TrotterPlan, cap: int | None = None) -> float:
    """Spectral norm of e^{-iH tau} minus its Trotter product."""
    diff = exact_unitary(h, plan.tau, cap) - trotter_unitary(h, plan, cap)
    return float(np.linalg.norm(diff, ord=2))


def first_order_error_bound(h: PauliSum, tau: float, steps: int) -> float:
    """sum_{s<s'} ||[H_s, H_s']|| tau^2 / (2n).

    Two Pauli terms either commute or anticommute; in the latter case the
    commutator norm is 2|a_s a_s'|.
    """
    if steps < 1:
        raise PlanError(f"steps must be >= 1, got {steps}.")
    total = sum(
        2.0 * abs(a.coefficient) * abs(b.coefficient)
        for a, b in combinations(h.terms, 2)
        if not commutator_is_zero(a, b)
    )
    return total * tau ** 2 / (2.0 * steps)


@dataclass(frozen=True)
class UnitaryFidelityGrid:
    ln_tau_axis: tuple[float, ...]
    log10_n_axis: tuple[float, ...]
    fidelity: np.ndarray  # shape (len(ln_tau_axis), len(log10_n_axis))

    def value_at(self, ln_tau: float, log10_n: float) -> float:
        i = int(np.argmin(np.abs(np.asarray(self.ln_tau_axis) - ln_tau)))
        j = int(np.argmin(np.abs(np.asarray(self.log10_n_axis) - log10_n)))
        return float(self.fidelity[i, j])

    def rows(self):
        """(ln_tau, log10_n, fidelity) in row-major order."""
        for i, ln_tau in enumerate(self.ln_tau_axis):
            for j, log10_n in enumerate(self.log10_n_axis):
                yield ln_tau, log10_n, float(self.fidelity[i, j])


def fidelity_surface(
    h: PauliSum,
    ln_tau_range=DEFAULT_LN_TAU_AXIS,
    log_n_range=DEFAULT_LOG10_N_AXIS,
    ordering=None,
    threads: int = 1,
    cap: int | None = None,
) -> UnitaryFidelityGrid:
    """Fidelity between exact and Trotter evolution over (ln tau, log10 n)."""
    ln_tau_axis = tuple(float(x) for x in ln_tau_range)
    log10_n_axis = tuple(float(x) for x in log_n_range)
    if not ln_tau_axis or not log10_n_axis:
        raise PlanError("fidelity_surface needs nonempty axes.")
    _require_hermitian(h)
    order = table_order(h) if ordering is None else tuple(ordering)
    energies, vectors = np.linalg.eigh(h.to_dense(cap))

    def row(ln_tau: float) -> list[float]:
        tau = float(np.exp(ln_tau))
        exact = (vectors * np.exp(-1j * energies * tau)) @ vectors.conj().T
        return [
            unitary_fidelity(exact, trotter_unitary(h, TrotterPlan(tau, anchor_steps(x), order), cap))
            for x in log10_n_axis
        ]

    values = np.array(parallel_map(row, ln_tau_axis, threads))
    logger.debug("Fidelity surface %dx%d, min %.6f", len(ln_tau_axis), len(log10_n_axis), values.min())
    return UnitaryFidelityGrid(ln_tau_axis, log10_n_axis, values)
