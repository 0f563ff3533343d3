"""Generalized SYK model: random couplings, Majorana encoding, spin Hamiltonian.

H = (1/4!) J_ijkl chi_i chi_j chi_k chi_l + (mu/4) C_ij C_kl chi_i chi_j chi_k chi_l

with antisymmetric Gaussian tensors, var(J_ijkl) = 3! J4^2 / N^3 and
var(C_ij) = J^2 / N^2 (main text) or 2 J^2 / N^2 (supplement). Majorana
indices are zero-based throughout.
"""
from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, sqrt
from types import MappingProxyType
from typing import Mapping

import numpy as np

from syk_nmr_sim.pauli_algebra import PauliString, PauliSum, pauli_mul
from syk_nmr_sim.utils import DomainError, ParameterError, err_with_hint

logger = logging.getLogger(__name__)

# Coefficients below this are cancellation residue of the pair double sum
COEFF_ATOL = 1e-14

# Support signatures of the 70 spin interactions for N = 8, in reference table order
REFERENCE_TERM_LABELS = (
    "xx00", "xyxy", "xyxz", "xyy0", "xyz0", "xzxy", "xzxz", "xzy0", "xzz0", "x0x0", "x0yy", "x0yz", "x0zy", "x0zz",
    "x00x", "yxyx", "yxzx", "yx0y", "yx0z", "yyx0", "yyyy", "yyyz", "yyzy", "yyzz", "yy0x", "yzx0", "yzyy", "yzyz",
    "yzzy", "yzzz", "yz0x", "y0xy", "y0xz", "y0y0", "y0z0", "zxyx", "zxzx", "zx0y", "zx0z", "zyx0", "zyyy", "zyyz",
    "zyzy", "zyzz", "zy0x", "zzx0", "zzyy", "zzyz", "zzzy", "zzzz", "zz0x", "z0xy", "z0xz", "z0y0", "z0z0", "0xx0",
    "0xyy", "0xyz", "0xzy", "0xzz", "0x0x", "0yyx", "0yzx", "0y0y", "0y0z", "0zyx", "0zzx", "0z0y", "0z0z", "00xx",
)

_TABLE_LETTER_RANK = {"x": 0, "y": 1, "z": 2, "0": 3}


class CVarianceConvention(enum.Enum):
    MAIN_TEXT = "main_text"      # var(C_ij) = J^2 / N^2
    SUPPLEMENT = "supplement"    # var(C_ij) = 2 J^2 / N^2


@dataclass(frozen=True)
class ModelParams:
    n_majorana: int
    mu: float = 0.0
    j4: float = 1.0
    j2: float = 1.0
    seed: int = 0
    c_variance_convention: CVarianceConvention = CVarianceConvention.MAIN_TEXT

    def __post_init__(self):
        if self.n_majorana < 4 or self.n_majorana % 2:
            raise ParameterError(f"n_majorana must be an even integer >= 4, got {self.n_majorana}.")
        if self.j4 <= 0 or self.j2 <= 0:
            raise ParameterError("j4 and j2 must be positive.")
        if not isinstance(self.c_variance_convention, CVarianceConvention):
            object.__setattr__(self, "c_variance_convention", CVarianceConvention(self.c_variance_convention))

    @property
    def qubit_count(self) -> int:
        return self.n_majorana // 2

    @property
    def j_variance(self) -> float:
        return 6.0 * self.j4 ** 2 / self.n_majorana ** 3

    @property
    def c_variance(self) -> float:
        factor = 2.0 if self.c_variance_convention is CVarianceConvention.SUPPLEMENT else 1.0
        return factor * self.j2 ** 2 / self.n_majorana ** 2


def derive_sample_seed(master_seed: int, sample_index: int) -> int:
    """Seed of sample r: SeedSequence(master_seed, spawn_key=(r,)), first 64-bit word.

    Depends only on (master_seed, r), never on which worker draws the sample.
    """
    sequence = np.random.SeedSequence(master_seed, spawn_key=(sample_index,))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def sample_params(base: ModelParams, master_seed: int, sample_index: int) -> ModelParams:
    return replace(base, seed=derive_sample_seed(master_seed, sample_index))


def _permutation_sign(indices: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted tuple (sign 0 on repeats)."""
    items = list(indices)
    sign = 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
            elif items[j] == items[j + 1]:
                return 0, tuple(items)
    if len(set(items)) != len(items):
        return 0, tuple(items)
    return sign, tuple(items)


@dataclass(frozen=True)
class CouplingSet:
    """Couplings of one sample, stored on canonical index sets only."""

    params: ModelParams
    quadruples: Mapping[tuple[int, int, int, int], float]
    pairs: Mapping[tuple[int, int], float]

    def __post_init__(self):
        object.__setattr__(self, "quadruples", MappingProxyType(dict(self.quadruples)))
        object.__setattr__(self, "pairs", MappingProxyType(dict(self.pairs)))

    def j(self, i: int, j: int, k: int, l: int) -> float:
        sign, key = _permutation_sign((i, j, k, l))
        return sign * self.quadruples[key] if sign else 0.0

    def c(self, i: int, j: int) -> float:
        sign, key = _permutation_sign((i, j))
        return sign * self.pairs[key] if sign else 0.0

    def c_matrix(self) -> np.ndarray:
        n = self.params.n_majorana
        out = np.zeros((n, n))
        for (i, j), value in self.pairs.items():
            out[i, j] = value
            out[j, i] = -value
        return out

    def j_tensor(self) -> np.ndarray:
        n = self.params.n_majorana
        out = np.zeros((n, n, n, n))
        for key, value in self.quadruples.items():
            for perm in permutations(range(4)):
                idx = tuple(key[p] for p in perm)
                out[idx] = _permutation_sign(tuple(perm))[0] * value
        return out

    def with_mu(self, mu: float) -> CouplingSet:
        return CouplingSet(replace(self.params, mu=mu), self.quadruples, self.pairs)

    def mirrored(self) -> CouplingSet:
        """Same draw with J -> -J and mu -> -mu, which maps H to -H exactly."""
        return CouplingSet(
            replace(self.params, mu=-self.params.mu),
            {key: -value for key, value in self.quadruples.items()},
            self.pairs,
        )

    def to_json(self) -> dict:
        p = self.params
        return {
            "seed": p.seed,
            "N": p.n_majorana,
            "mu": p.mu,
            "j4": p.j4,
            "j2": p.j2,
            "convention": p.c_variance_convention.value,
            "quadruples": [[*key, value] for key, value in sorted(self.quadruples.items())],
            "pairs": [[*key, value] for key, value in sorted(self.pairs.items())],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> CouplingSet:
        if isinstance(data, str):
            data = json.loads(data)
        params = ModelParams(
            n_majorana=data["N"],
            mu=data["mu"],
            j4=data.get("j4", 1.0),
            j2=data.get("j2", 1.0),
            seed=data["seed"],
            c_variance_convention=CVarianceConvention(data["convention"]),
        )
        quadruples = {tuple(int(i) for i in row[:4]): float(row[4]) for row in data["quadruples"]}
        pairs = {tuple(int(i) for i in row[:2]): float(row[2]) for row in data["pairs"]}
        return cls(params, quadruples, pairs)


def generate_couplings(params: ModelParams) -> CouplingSet:
    """Independent Gaussians on the canonical index sets, J first then C.

    The draw order does not depend on mu, so samples with the same seed share
    their J and C values across mu.
    """
    rng = np.random.default_rng(params.seed)
    n = params.n_majorana
    quad_keys = list(combinations(range(n), 4))
    pair_keys = list(combinations(range(n), 2))
    j_values = rng.normal(0.0, sqrt(params.j_variance), size=len(quad_keys))
    c_values = rng.normal(0.0, sqrt(params.c_variance), size=len(pair_keys))
    return CouplingSet(
        params,
        dict(zip(quad_keys, j_values.tolist())),
        dict(zip(pair_keys, c_values.tolist())),
    )


@dataclass(frozen=True)
class MajoranaSet:
    operators: tuple[PauliString, ...] = field(default_factory=tuple)

    def __len__(self):
        return len(self.operators)

    def __getitem__(self, index: int) -> PauliString:
        return self.operators[index]


@lru_cache(maxsize=None)
def _majoranas(n_majorana: int) -> MajoranaSet:
    qubits = n_majorana // 2
    norm = 1.0 / sqrt(2.0)
    operators = []
    for a in range(n_majorana):
        q = a // 2
        tail = (1 << q) - 1          # X on every qubit before q
        x_mask = tail | ((1 << q) if a % 2 else 0)
        z_mask = 1 << q              # Z for even a, Y (x and z set) for odd a
        operators.append(PauliString(qubits, x_mask, z_mask, norm))
    return MajoranaSet(tuple(operators))


def jordan_wigner(params: ModelParams | int) -> MajoranaSet:
    """chi_{2i-1} = X..X Z_i / sqrt(2), chi_{2i} = X..X Y_i / sqrt(2) (one-based i)."""
    n = params.n_majorana if isinstance(params, ModelParams) else int(params)
    if n < 2 or n % 2:
        raise ParameterError(f"n_majorana must be even, got {n}.")
    return _majoranas(n)


def _product(*operators: PauliString) -> PauliString:
    out = operators[0]
    for op in operators[1:]:
        out = pauli_mul(out, op)
    return out


def syk_interaction(c: CouplingSet) -> PauliSum:
    """Sum over i<j<k<l of J_ijkl chi_i chi_j chi_k chi_l."""
    chi = jordan_wigner(c.params)
    terms = [
        _product(chi[i], chi[j], chi[k], chi[l]).scaled(value)
        for (i, j, k, l), value in c.quadruples.items()
        if value != 0.0
    ]
    return PauliSum(c.params.qubit_count, terms, atol=COEFF_ATOL)


def _bilinears(c: CouplingSet) -> list[PauliString]:
    """C_ij chi_i chi_j over all ordered pairs i != j."""
    chi = jordan_wigner(c.params)
    n = c.params.n_majorana
    return [
        pauli_mul(chi[i], chi[j]).scaled(c.c(i, j))
        for i in range(n) for j in range(n)
        if i != j and c.c(i, j) != 0.0
    ]


def pair_interaction(c: CouplingSet, keep_identity: bool = True) -> PauliSum:
    """(mu/4) sum over all index tuples of C_ij C_kl chi_i chi_j chi_k chi_l."""
    qubits = c.params.qubit_count
    mu = c.params.mu
    if mu == 0.0:
        return PauliSum(qubits)
    bilinears = _bilinears(c)
    terms = [pauli_mul(left, right).scaled(mu / 4.0) for left in bilinears for right in bilinears]
    total = PauliSum(qubits, terms, atol=COEFF_ATOL)
    return total if keep_identity else total.without_identity()


def build_hamiltonian(c: CouplingSet) -> PauliSum:
    """Spin Hamiltonian H = sum_s H_s without its identity component.

    The identity part of the mu term is a constant energy shift; it changes
    no unitary beyond a global phase and cancels in thermal averages.
    """
    full = syk_interaction(c) + pair_interaction(c, keep_identity=True)
    offset = full.identity_coefficient()
    if offset:
        logger.debug("Dropping identity offset %.6g from sample %d", offset.real, c.params.seed)
    return full.without_identity().pruned(COEFF_ATOL)


def build_boson_operator(c: CouplingSet) -> PauliSum:
    """b = i sum_{ij} C_ij chi_i chi_j over the full antisymmetric tensor."""
    return PauliSum(c.params.qubit_count, (t.scaled(1j) for t in _bilinears(c)), atol=COEFF_ATOL)


@dataclass(frozen=True)
class PairTermRelation:
    scale: float        # H_mu = scale * b^2 + offset * I
    offset: float
    residual: float     # Hilbert-Schmidt norm of what the fit leaves over


def pair_term_relation(c: CouplingSet) -> PairTermRelation:
    """Fit the mu part as a multiple of b^2 plus a constant, on Pauli coefficients."""
    h_mu = pair_interaction(c, keep_identity=True)
    b = build_boson_operator(c)
    b_squared = (b * b).pruned(COEFF_ATOL)
    target = {t.pattern: t.coefficient for t in h_mu.without_identity()}
    basis = {t.pattern: t.coefficient for t in b_squared.without_identity()}
    norm = sum(abs(v) ** 2 for v in basis.values())
    if norm == 0.0:
        raise DomainError("b^2 has no traceless part; the relation is undefined.")
    overlap = sum(basis[k].conjugate() * target.get(k, 0j) for k in basis)
    scale = (overlap / norm).real
    offset = (h_mu.identity_coefficient() - scale * b_squared.identity_coefficient()).real
    keys = set(target) | set(basis)
    residual = sqrt(sum(abs(target.get(k, 0j) - scale * basis.get(k, 0j)) ** 2 for k in keys))
    return PairTermRelation(scale, offset, residual)


def coefficient_statistic(h: PauliSum) -> float:
    """(mean |a_s|^2)^(-1/2) over the terms of h."""
    if len(h) == 0:
        raise DomainError("coefficient_statistic needs a nonempty sum.")
    mean_square = float(np.mean(np.abs(h.coefficients()) ** 2))
    return mean_square ** -0.5


def coefficient_rms(h: PauliSum) -> float:
    """(mean |a_s|^2)^(1/2), the typical term strength.

    This is the reciprocal of coefficient_statistic. It grows with mu
    (about 0.064 at mu = 5 against 0.027 at mu = 0 for N = 8), and it is
    the |a| that sets Trotter step counts.
    """
    return 1.0 / coefficient_statistic(h)


def table_order(h: PauliSum) -> tuple[int, ...]:
    """Term indices of h sorted in reference table order (x < y < z < 0)."""
    def key(index: int):
        return tuple(_TABLE_LETTER_RANK[ch] for ch in h.terms[index].support_label())
    return tuple(sorted(range(len(h)), key=key))


def expected_term_count(n_majorana: int) -> int:
    return comb(n_majorana, 4)


def draw_samples(base: ModelParams, master_seed: int, count: int, pairing: str = "mirrored") -> list[CouplingSet]:
    """Coupling sets for samples 0..count-1 of one (N, mu) point.

    With ``pairing="mirrored"`` a negative mu reuses the draws of +|mu| with
    every coupling sign flipped, so each sample is exactly -H of its partner.
    ``"independent"`` draws directly at base.mu.
    """
    if count < 1:
        raise ParameterError(f"sample count must be >= 1, got {count}.")
    if pairing not in ("mirrored", "independent"):
        raise ParameterError(err_with_hint(f"Unknown pairing '{pairing}'.", "Use 'mirrored' or 'independent'."))
    mirror = pairing == "mirrored" and base.mu < 0
    source = replace(base, mu=-base.mu) if mirror else base
    out = []
    for index in range(count):
        couplings = generate_couplings(sample_params(source, master_seed, index))
        out.append(couplings.mirrored() if mirror else couplings)
    return out
