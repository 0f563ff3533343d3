import numpy as np
import pytest
from scipy.linalg import expm

from syk_nmr_sim.pauli_algebra import (
    PauliString,
    PauliSum,
    apply_pauli_exponential,
    commutator_is_zero,
    exp_pauli_term,
    pauli_mul,
    to_dense,
)
from syk_nmr_sim.utils import DimensionError, NotHermitianError, ResourceLimitError

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1.0, -1.0]).astype(complex)

LABELS = ["XYZI", "YYXZ", "ZIIX", "IXYY", "XXXX", "IIII", "ZYXI"]


def test_single_qubit_products():
    x, y, z = (PauliString.from_label(s) for s in "XYZ")
    assert pauli_mul(x, y) == PauliString.from_label("Z", 1j)
    assert pauli_mul(y, x) == PauliString.from_label("Z", -1j)
    assert pauli_mul(y, z) == PauliString.from_label("X", 1j)
    assert pauli_mul(z, x) == PauliString.from_label("Y", 1j)
    assert pauli_mul(x, x) == PauliString.from_label("I")


def test_qubit_zero_is_most_significant():
    np.testing.assert_allclose(PauliString.from_label("XI").to_dense(), np.kron(X, I2))
    np.testing.assert_allclose(PauliString.from_label("ZY").to_dense(), np.kron(Z, Y))


@pytest.mark.parametrize("left", LABELS)
@pytest.mark.parametrize("right", LABELS[:4])
def test_product_matches_dense_product(left, right):
    a = PauliString.from_label(left, 0.5)
    b = PauliString.from_label(right, -2.0)
    np.testing.assert_allclose(pauli_mul(a, b).to_dense(), a.to_dense() @ b.to_dense(), atol=1e-14)


@pytest.mark.parametrize("left", LABELS)
@pytest.mark.parametrize("right", LABELS)
def test_commutation_matches_dense(left, right):
    a, b = PauliString.from_label(left), PauliString.from_label(right)
    da, db = a.to_dense(), b.to_dense()
    assert commutator_is_zero(a, b) == np.allclose(da @ db, db @ da)


def test_size_mismatch_raises():
    with pytest.raises(DimensionError):
        pauli_mul(PauliString.from_label("XX"), PauliString.from_label("X"))


def test_pauli_sum_merges_and_prunes():
    s = PauliSum.from_labels([("XZ", 1.0), ("XZ", 0.5), ("ZZ", 1e-16), ("II", 2.0)])
    assert len(s) == 3
    assert s.pruned(1e-14).identity_coefficient() == 2.0
    assert len(s.pruned(1e-14)) == 2
    assert len(s.without_identity()) == 2
    dense = s.to_dense()
    expected = 1.5 * np.kron(X, Z) + 1e-16 * np.kron(Z, Z) + 2.0 * np.eye(4)
    np.testing.assert_allclose(dense, expected)


def test_pauli_sum_product_and_hermiticity():
    a = PauliSum.from_labels([("XI", 1.0), ("IZ", 2.0)])
    squared = a * a
    np.testing.assert_allclose(squared.to_dense(), a.to_dense() @ a.to_dense(), atol=1e-14)
    assert a.is_hermitian()
    assert not (a * 1j).is_hermitian()


@pytest.mark.parametrize("label", ["XYZ", "ZZI", "IYI", "XXY"])
def test_exp_pauli_term_matches_expm(label):
    term = PauliString.from_label(label, 0.37)
    np.testing.assert_allclose(exp_pauli_term(term, 1.3), expm(-1j * 1.3 * term.to_dense()), atol=1e-12)


def test_exp_pauli_term_rejects_complex_coefficient():
    with pytest.raises(NotHermitianError):
        exp_pauli_term(PauliString.from_label("XZ", 1j), 1.0)


def test_apply_pauli_exponential_on_states_and_matrices(rng):
    term = PauliString.from_label("YXZ", -0.8)
    u = exp_pauli_term(term, 0.45)
    state = rng.normal(size=8) + 1j * rng.normal(size=8)
    np.testing.assert_allclose(apply_pauli_exponential(state, term, 0.45), u @ state, atol=1e-12)
    block = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    np.testing.assert_allclose(apply_pauli_exponential(block, term, 0.45), u @ block, atol=1e-12)


def test_apply_pauli_exponential_length_mismatch():
    with pytest.raises(DimensionError):
        apply_pauli_exponential(np.ones(4), PauliString.from_label("XYZ"), 1.0)


def test_dense_cap_is_enforced():
    with pytest.raises(ResourceLimitError):
        to_dense(PauliString.from_label("XYZ"), cap=2)
    assert to_dense(PauliString.from_label("XYZ"), cap=3).shape == (8, 8)
