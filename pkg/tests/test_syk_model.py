import logging
from itertools import combinations

import numpy as np
import pytest

from syk_nmr_sim.pauli_algebra import PauliSum
from syk_nmr_sim.syk_model import (
    REFERENCE_TERM_LABELS,
    CouplingSet,
    CVarianceConvention,
    ModelParams,
    build_boson_operator,
    build_hamiltonian,
    coefficient_rms,
    coefficient_statistic,
    derive_sample_seed,
    draw_samples,
    expected_term_count,
    generate_couplings,
    jordan_wigner,
    pair_term_relation,
    sample_params,
    table_order,
)
from syk_nmr_sim.utils import DomainError, ParameterError


def test_majoranas_anticommute():
    chi = [op.to_dense() for op in jordan_wigner(8)]
    for a in range(8):
        for b in range(8):
            anti = chi[a] @ chi[b] + chi[b] @ chi[a]
            np.testing.assert_allclose(anti, np.eye(16) if a == b else 0, atol=1e-14)
            np.testing.assert_allclose(chi[a], chi[a].conj().T)


@pytest.mark.parametrize("n", [3, 5, 2])
def test_model_params_rejects_bad_n(n):
    with pytest.raises(ParameterError):
        ModelParams(n_majorana=n)


def test_variance_conventions():
    main = ModelParams(n_majorana=8)
    supplement = ModelParams(n_majorana=8, c_variance_convention=CVarianceConvention.SUPPLEMENT)
    assert main.j_variance == pytest.approx(6 / 512)
    assert main.c_variance == pytest.approx(1 / 64)
    assert supplement.c_variance == pytest.approx(2 / 64)


def test_sample_seeds_are_stable_and_distinct():
    assert derive_sample_seed(3, 0) == derive_sample_seed(3, 0)
    seeds = {derive_sample_seed(3, r) for r in range(16)}
    assert len(seeds) == 16
    assert derive_sample_seed(3, 0) != derive_sample_seed(4, 0)


def test_couplings_are_antisymmetric(couplings_n8):
    c = couplings_n8
    assert c.j(1, 0, 2, 3) == -c.j(0, 1, 2, 3)
    assert c.j(3, 2, 1, 0) == c.j(0, 1, 2, 3)
    assert c.j(0, 0, 2, 3) == 0.0
    assert c.c(4, 2) == -c.c(2, 4)
    np.testing.assert_allclose(c.c_matrix(), -c.c_matrix().T)
    tensor = c.j_tensor()
    assert tensor[2, 0, 1, 3] == pytest.approx(c.j(0, 1, 2, 3))


def test_draws_share_couplings_across_mu():
    base = ModelParams(n_majorana=8, mu=0.0)
    a = generate_couplings(sample_params(base, 5, 2))
    b = generate_couplings(sample_params(ModelParams(n_majorana=8, mu=5.0), 5, 2))
    assert dict(a.quadruples) == dict(b.quadruples)
    assert dict(a.pairs) == dict(b.pairs)


def test_coupling_json_round_trip(couplings_n6):
    restored = CouplingSet.from_json(couplings_n6.to_json())
    assert restored.params == couplings_n6.params
    assert dict(restored.quadruples) == dict(couplings_n6.quadruples)
    assert dict(restored.pairs) == dict(couplings_n6.pairs)


@pytest.mark.parametrize("mu", [0.0, 5.0, -2.0])
@pytest.mark.parametrize("seed", [0, 1])
def test_n8_term_census_matches_reference_table(mu, seed):
    h = build_hamiltonian(generate_couplings(ModelParams(n_majorana=8, mu=mu, seed=seed)))
    assert len(h) == expected_term_count(8) == 70
    assert {t.support_label() for t in h} == set(REFERENCE_TERM_LABELS)
    assert all(t.weight >= 2 for t in h)


def test_table_order_reproduces_reference_sequence(couplings_n8):
    h = build_hamiltonian(couplings_n8)
    assert tuple(h.terms[i].support_label() for i in table_order(h)) == REFERENCE_TERM_LABELS


def _dense_model(c: CouplingSet) -> tuple[np.ndarray, np.ndarray]:
    chi = [op.to_dense() for op in jordan_wigner(c.params)]
    n = c.params.n_majorana
    h = np.zeros_like(chi[0])
    for i, j, k, l in combinations(range(n), 4):
        h += c.j(i, j, k, l) * chi[i] @ chi[j] @ chi[k] @ chi[l]
    pair = sum(c.c(i, j) * chi[i] @ chi[j] for i in range(n) for j in range(n) if i != j)
    h += c.params.mu / 4 * pair @ pair
    h -= np.trace(h) / h.shape[0] * np.eye(h.shape[0])
    return h, 1j * pair


def test_hamiltonian_and_boson_match_dense_construction(couplings_n6):
    h_dense, b_dense = _dense_model(couplings_n6)
    h = build_hamiltonian(couplings_n6)
    assert h.is_hermitian()
    np.testing.assert_allclose(h.to_dense(), h_dense, atol=1e-12)
    b = build_boson_operator(couplings_n6)
    np.testing.assert_allclose(b.to_dense(), b_dense, atol=1e-12)
    np.testing.assert_allclose(b_dense, b_dense.conj().T, atol=1e-12)


def test_pair_term_is_a_multiple_of_b_squared(couplings_n8):
    relation = pair_term_relation(couplings_n8)
    assert relation.scale == pytest.approx(-couplings_n8.params.mu / 4)
    assert relation.residual < 1e-10


def test_mirrored_sample_negates_hamiltonian(couplings_n6):
    h = build_hamiltonian(couplings_n6)
    mirrored = build_hamiltonian(couplings_n6.mirrored())
    assert couplings_n6.mirrored().params.mu == -couplings_n6.params.mu
    np.testing.assert_allclose(mirrored.to_dense(), -h.to_dense(), atol=1e-12)


def test_draw_samples_mirrored_pairing():
    plus = draw_samples(ModelParams(n_majorana=6, mu=5.0), 9, 3)
    minus = draw_samples(ModelParams(n_majorana=6, mu=-5.0), 9, 3)
    independent = draw_samples(ModelParams(n_majorana=6, mu=-5.0), 9, 3, pairing="independent")
    for p, m, ind in zip(plus, minus, independent):
        assert p.params.seed == m.params.seed == ind.params.seed
        assert m.params.mu == -5.0
        np.testing.assert_allclose(build_hamiltonian(m).to_dense(), -build_hamiltonian(p).to_dense(), atol=1e-12)
        assert dict(ind.quadruples) == dict(p.quadruples)


def test_draw_samples_rejects_bad_arguments():
    with pytest.raises(ParameterError):
        draw_samples(ModelParams(n_majorana=6), 0, 0)
    with pytest.raises(ParameterError):
        draw_samples(ModelParams(n_majorana=6), 0, 2, pairing="shuffled")


def test_pair_term_shrinks_coefficient_statistic():
    for r in range(4):
        plain = build_hamiltonian(generate_couplings(sample_params(ModelParams(n_majorana=8, mu=0.0), 0, r)))
        paired = build_hamiltonian(generate_couplings(sample_params(ModelParams(n_majorana=8, mu=5.0), 0, r)))
        assert coefficient_statistic(paired) < coefficient_statistic(plain)


def test_coefficient_statistic_of_empty_sum():
    with pytest.raises(DomainError):
        coefficient_statistic(PauliSum(2))


def test_coefficient_rms_grows_with_the_pair_term():
    rms = {}
    for mu in (0.0, 5.0):
        hs = [build_hamiltonian(generate_couplings(sample_params(ModelParams(n_majorana=8, mu=mu), 0, r)))
              for r in range(8)]
        for h in hs:
            assert coefficient_rms(h) == pytest.approx(1.0 / coefficient_statistic(h))
        rms[mu] = np.mean([coefficient_rms(h) for h in hs])
    assert rms[5.0] > 1.5 * rms[0.0]
    assert 0.02 < rms[0.0] < 0.04
    assert 0.045 < rms[5.0] < 0.085


def test_sampled_variances_match_their_scale():
    base = ModelParams(n_majorana=8, mu=5.0, c_variance_convention=CVarianceConvention.SUPPLEMENT)
    draws = [generate_couplings(sample_params(base, 3, r)) for r in range(200)]
    quadruples = np.concatenate([list(c.quadruples.values()) for c in draws])
    pairs = np.concatenate([list(c.pairs.values()) for c in draws])
    assert quadruples.size == 200 * 70
    assert np.var(quadruples) == pytest.approx(6.0 / 8 ** 3, rel=0.05)
    assert np.var(pairs) == pytest.approx(2.0 / 8 ** 2, rel=0.08)
    assert abs(quadruples.mean()) < 0.005


def test_identity_offset_is_logged(couplings_n6, caplog):
    with caplog.at_level(logging.DEBUG, logger="syk_nmr_sim.syk_model"):
        build_hamiltonian(couplings_n6)
        build_hamiltonian(couplings_n6.with_mu(0.0))
    dropped = [r for r in caplog.records if r.name == "syk_nmr_sim.syk_model" and "identity offset" in r.getMessage()]
    assert len(dropped) == 1
    assert f"sample {couplings_n6.params.seed}" in dropped[0].getMessage()
