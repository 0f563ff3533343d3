"""Multi-qubit Pauli words in symplectic form.

A PauliString stores one bit pair per qubit: bit i of ``x_mask`` and
``z_mask`` gives the factor on qubit i, (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y.
Qubit 0 is the leftmost letter of a label and the most significant tensor
factor of a dense matrix. Products track their phase as a power of i, so
multiplication never touches a matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from syk_nmr_sim.utils import (
    DimensionError,
    NotHermitianError,
    ResourceLimitError,
    err_mismatch,
    err_with_hint,
    resolve_qubit_cap,
)


# DenseOperator: a 2^q x 2^q complex ndarray
DenseOperator = np.ndarray

_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {letter: bits for bits, letter in _LETTERS.items()}
_I_POWERS = (1, 1j, -1, -1j)


@dataclass(frozen=True)
class PauliString:
    qubit_count: int
    x_mask: int
    z_mask: int
    coefficient: complex = 1.0

    def __post_init__(self):
        if self.qubit_count < 1:
            raise DimensionError("qubit_count must be >= 1.")
        limit = 1 << self.qubit_count
        if not (0 <= self.x_mask < limit and 0 <= self.z_mask < limit):
            raise DimensionError(f"masks do not fit in {self.qubit_count} qubits.")
        object.__setattr__(self, "coefficient", complex(self.coefficient))

    @classmethod
    def from_label(cls, label: str, coefficient: complex = 1.0) -> PauliString:
        """Build from a letter string such as "XYZI" (qubit 0 first)."""
        x_mask = z_mask = 0
        for qubit, letter in enumerate(label.upper()):
            if letter not in _BITS:
                raise ValueError(f"Unknown Pauli letter '{letter}' in '{label}'.")
            x_bit, z_bit = _BITS[letter]
            x_mask |= x_bit << qubit
            z_mask |= z_bit << qubit
        return cls(len(label), x_mask, z_mask, coefficient)

    @classmethod
    def identity(cls, qubit_count: int, coefficient: complex = 1.0) -> PauliString:
        return cls(qubit_count, 0, 0, coefficient)

    @classmethod
    def single(cls, qubit_count: int, qubit: int, letter: str, coefficient: complex = 1.0) -> PauliString:
        x_bit, z_bit = _BITS[letter.upper()]
        return cls(qubit_count, x_bit << qubit, z_bit << qubit, coefficient)

    @property
    def pattern(self) -> tuple[int, int]:
        return self.x_mask, self.z_mask

    @property
    def support(self) -> tuple[int, ...]:
        mask = self.x_mask | self.z_mask
        return tuple(q for q in range(self.qubit_count) if mask >> q & 1)

    @property
    def weight(self) -> int:
        return (self.x_mask | self.z_mask).bit_count()

    def letter(self, qubit: int) -> str:
        return _LETTERS[(self.x_mask >> qubit & 1, self.z_mask >> qubit & 1)]

    def label(self) -> str:
        return "".join(self.letter(q) for q in range(self.qubit_count))

    def support_label(self) -> str:
        """Lowercase label with '0' for identity, e.g. "xx00"."""
        return self.label().lower().replace("i", "0")

    def with_coefficient(self, coefficient: complex) -> PauliString:
        return PauliString(self.qubit_count, self.x_mask, self.z_mask, coefficient)

    def scaled(self, factor: complex) -> PauliString:
        return self.with_coefficient(self.coefficient * factor)

    def adjoint(self) -> PauliString:
        return self.with_coefficient(self.coefficient.conjugate())

    def __mul__(self, other):
        if isinstance(other, PauliString):
            return pauli_mul(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def __str__(self):
        return f"{self.coefficient} {self.label()}"

    def to_dense(self, cap: int | None = None) -> DenseOperator:
        return to_dense(self, cap)


def _check_same_size(a: PauliString, b: PauliString) -> None:
    if a.qubit_count != b.qubit_count:
        raise DimensionError(err_mismatch("qubit_count", a.qubit_count, b.qubit_count))


def _phase_exponent(a: PauliString, b: PauliString) -> int:
    """Power of i picked up when the patterns of a and b are multiplied."""
    ax = a.x_mask & ~a.z_mask
    ay = a.x_mask & a.z_mask
    az = ~a.x_mask & a.z_mask
    bx = b.x_mask & ~b.z_mask
    by = b.x_mask & b.z_mask
    bz = ~b.x_mask & b.z_mask
    # XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i
    forward = (ax & by).bit_count() + (ay & bz).bit_count() + (az & bx).bit_count()
    backward = (ay & bx).bit_count() + (az & by).bit_count() + (ax & bz).bit_count()
    return (forward - backward) % 4


def pauli_mul(a: PauliString, b: PauliString) -> PauliString:
    """Product a*b with exact phase; masks combine by XOR."""
    _check_same_size(a, b)
    phase = _I_POWERS[_phase_exponent(a, b)]
    return PauliString(
        a.qubit_count,
        a.x_mask ^ b.x_mask,
        a.z_mask ^ b.z_mask,
        a.coefficient * b.coefficient * phase,
    )


def commutator_is_zero(a: PauliString, b: PauliString) -> bool:
    """True iff the symplectic inner product of the two patterns is even."""
    _check_same_size(a, b)
    overlap = (a.x_mask & b.z_mask) ^ (a.z_mask & b.x_mask)
    return overlap.bit_count() % 2 == 0


def _index_mask(mask: int, qubit_count: int) -> int:
    """Reverse bit order so qubit 0 becomes the most significant index bit."""
    out = 0
    for q in range(qubit_count):
        if mask >> q & 1:
            out |= 1 << (qubit_count - 1 - q)
    return out


def _parity(values: np.ndarray, mask: int, qubit_count: int) -> np.ndarray:
    masked = values & mask
    parity = np.zeros_like(values)
    for bit in range(qubit_count):
        parity ^= (masked >> bit) & 1
    return parity


def _pauli_action(p: PauliString) -> tuple[np.ndarray, np.ndarray]:
    """Row index and value for each column: P|b> = value[b] |row[b]>."""
    q = p.qubit_count
    columns = np.arange(1 << q, dtype=np.int64)
    x_idx = _index_mask(p.x_mask, q)
    z_idx = _index_mask(p.z_mask, q)
    # Y = i X Z, so each Y contributes a factor i on top of the Z sign
    y_phase = _I_POWERS[(p.x_mask & p.z_mask).bit_count() % 4]
    signs = 1 - 2 * _parity(columns, z_idx, q)
    return columns ^ x_idx, p.coefficient * y_phase * signs


def check_dense_cap(qubit_count: int, cap: int | None) -> None:
    limit = resolve_qubit_cap(cap)
    if qubit_count > limit:
        raise ResourceLimitError(
            err_with_hint(f"Dense realization of {qubit_count} qubits exceeds the cap of {limit}.",
                          "Raise the cap explicitly or use the matrix-free path.")
        )


def to_dense(p: PauliString | PauliSum, cap: int | None = None) -> DenseOperator:
    """Exact 2^q x 2^q matrix of a PauliString or PauliSum."""
    check_dense_cap(p.qubit_count, cap)
    dim = 1 << p.qubit_count
    out = np.zeros((dim, dim), dtype=complex)
    terms = p.terms if isinstance(p, PauliSum) else (p,)
    columns = np.arange(dim)
    for term in terms:
        rows, values = _pauli_action(term)
        out[rows, columns] += values
    return out


def _real_coefficient(h: PauliString) -> float:
    if abs(h.coefficient.imag) > 1e-12 * max(1.0, abs(h.coefficient)):
        raise NotHermitianError(
            err_with_hint(f"Term {h} has a complex coefficient.", "exp_pauli_term needs a Hermitian term.")
        )
    return h.coefficient.real


def exp_pauli_term(h: PauliString, t: float, cap: int | None = None) -> DenseOperator:
    """exp(-i a P t) = cos(a t) I - i sin(a t) P, using P^2 = I."""
    angle = _real_coefficient(h) * t
    pauli = to_dense(h.with_coefficient(1.0), cap)
    return np.cos(angle) * np.eye(pauli.shape[0]) - 1j * np.sin(angle) * pauli


def apply_pauli_exponential(state: np.ndarray, h: PauliString, t: float) -> np.ndarray:
    """Matrix-free exp(-i a P t) applied to a state vector of length 2^q.

    A 2-D array is treated column by column, so the same call left-multiplies
    a matrix.
    """
    if state.shape[0] != 1 << h.qubit_count:
        raise DimensionError(err_mismatch("state length", state.shape[0], 1 << h.qubit_count))
    angle = _real_coefficient(h) * t
    rows, values = _pauli_action(h.with_coefficient(1.0))
    values = values.reshape(-1, *([1] * (state.ndim - 1)))
    applied = np.empty_like(state, dtype=complex)
    applied[rows] = values * state
    return np.cos(angle) * state - 1j * np.sin(angle) * applied


class PauliSum:
    """Weighted sum of PauliStrings with merged, canonically ordered terms.

    Terms sharing a pattern are merged on construction; terms whose
    coefficient magnitude is <= ``atol`` are dropped. Order is lexicographic
    on (z_mask, x_mask).
    """

    __slots__ = ("qubit_count", "terms")

    def __init__(self, qubit_count: int, terms: Iterable[PauliString] = (), atol: float = 0.0):
        merged: dict[tuple[int, int], complex] = {}
        for term in terms:
            if term.qubit_count != qubit_count:
                raise DimensionError(err_mismatch("qubit_count", qubit_count, term.qubit_count))
            merged[term.pattern] = merged.get(term.pattern, 0j) + term.coefficient
        ordered = sorted(merged.items(), key=lambda item: (item[0][1], item[0][0]))
        self.qubit_count = qubit_count
        self.terms: tuple[PauliString, ...] = tuple(
            PauliString(qubit_count, x, z, c) for (x, z), c in ordered if abs(c) > atol
        )

    @classmethod
    def from_labels(cls, pairs: Iterable[tuple[str, complex]]) -> PauliSum:
        terms = [PauliString.from_label(label, c) for label, c in pairs]
        if not terms:
            raise ValueError("from_labels needs at least one term.")
        return cls(terms[0].qubit_count, terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __eq__(self, other):
        return isinstance(other, PauliSum) and self.qubit_count == other.qubit_count and self.terms == other.terms

    def __add__(self, other: PauliSum) -> PauliSum:
        return PauliSum(self.qubit_count, self.terms + other.terms)

    def __sub__(self, other: PauliSum) -> PauliSum:
        return self + other * -1.0

    def __mul__(self, other):
        if isinstance(other, PauliSum):
            return PauliSum(self.qubit_count, (pauli_mul(a, b) for a in self.terms for b in other.terms))
        return PauliSum(self.qubit_count, (t.scaled(other) for t in self.terms))

    def __rmul__(self, other):
        return self * other

    def __repr__(self):
        return f"PauliSum({self.qubit_count} qubits, {len(self.terms)} terms)"

    def __str__(self):
        return "\n".join(str(t) for t in self.terms)

    def pruned(self, atol: float) -> PauliSum:
        return PauliSum(self.qubit_count, self.terms, atol=atol)

    def adjoint(self) -> PauliSum:
        return PauliSum(self.qubit_count, (t.adjoint() for t in self.terms))

    def is_hermitian(self, atol: float = 1e-13) -> bool:
        return all(abs(t.coefficient.imag) <= atol for t in self.terms)

    def identity_coefficient(self) -> complex:
        for term in self.terms:
            if term.pattern == (0, 0):
                return term.coefficient
        return 0j

    def without_identity(self) -> PauliSum:
        return PauliSum(self.qubit_count, (t for t in self.terms if t.pattern != (0, 0)))

    def coefficients(self) -> np.ndarray:
        return np.array([t.coefficient for t in self.terms], dtype=complex)

    def to_dense(self, cap: int | None = None) -> DenseOperator:
        return to_dense(self, cap)
