import numpy as np
import pytest

from syk_nmr_sim import observables
from syk_nmr_sim.observables import (
    CorrelationSeries,
    EvolutionMode,
    Spectrum,
    averaged_correlation,
    boson_correlation,
    boson_correlation_dense,
    correlation_curve,
    correlation_from_initial_states,
    log_tau_grid,
    sample_curve,
    saturation_stderr,
    saturation_value,
    scaling_sweep,
    thermal_state,
)
from syk_nmr_sim.pauli_algebra import PauliSum
from syk_nmr_sim.syk_model import ModelParams, draw_samples
from syk_nmr_sim.utils import DegenerateOperatorError, DomainError, ParameterError

TAUS = (0.0, 0.3, 1.7, 6.0)


def test_log_tau_grid():
    grid = log_tau_grid(-1.0, 1.0, 3)
    np.testing.assert_allclose(np.log(grid), [-1.0, 0.0, 1.0])
    with pytest.raises(ParameterError):
        log_tau_grid(points=0)


def test_infinite_temperature_state_is_exact(hamiltonian_n6):
    state = thermal_state(hamiltonian_n6, 0.0)
    np.testing.assert_array_equal(state.rho, np.eye(8) / 8)
    populations = Spectrum.from_hamiltonian(hamiltonian_n6).populations(0.0)
    np.testing.assert_array_equal(populations, np.full(8, 1 / 8))


def test_thermal_state_is_normalized(hamiltonian_n6):
    rho = thermal_state(hamiltonian_n6, 2.0).rho
    assert np.trace(rho).real == pytest.approx(1.0)
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-14)
    with pytest.raises(ParameterError):
        thermal_state(hamiltonian_n6, -1.0)


@pytest.mark.parametrize("beta", [0.0, 1.0, 5.0])
def test_spectral_curve_matches_matrix_chain(hamiltonian_n6, boson_n6, beta):
    curve = correlation_curve(Spectrum.from_hamiltonian(hamiltonian_n6), boson_n6, beta, TAUS)
    direct = [boson_correlation_dense(hamiltonian_n6, boson_n6, beta, tau) for tau in TAUS]
    np.testing.assert_allclose(curve, direct, atol=1e-10)
    assert boson_correlation(hamiltonian_n6, boson_n6, beta, 1.7) == pytest.approx(direct[2], abs=1e-10)


def test_correlation_at_zero_is_real_and_positive(hamiltonian_n6, boson_n6):
    d0 = correlation_curve(Spectrum.from_hamiltonian(hamiltonian_n6), boson_n6, 1.0, [0.0])[0]
    assert d0.real > 0
    assert abs(d0.imag) < 1e-12


@pytest.mark.parametrize("beta", [0.0, 3.0])
def test_two_initial_states_give_real_and_imaginary_parts(hamiltonian_n6, boson_n6, beta):
    curve = correlation_curve(Spectrum.from_hamiltonian(hamiltonian_n6), boson_n6, beta, TAUS)
    measured = correlation_from_initial_states(hamiltonian_n6, boson_n6, beta, TAUS)
    np.testing.assert_allclose(measured, curve, atol=1e-10)


def test_zero_boson_operator_is_degenerate(hamiltonian_n6):
    with pytest.raises(DegenerateOperatorError):
        correlation_curve(Spectrum.from_hamiltonian(hamiltonian_n6), PauliSum(3), 0.0, TAUS)


def test_evolution_mode_validation():
    with pytest.raises(ParameterError):
        EvolutionMode("euler")
    with pytest.raises(ParameterError):
        EvolutionMode.trotter()
    with pytest.raises(ParameterError):
        EvolutionMode.trotter(steps=3, max_step=0.1)
    assert EvolutionMode.trotter(max_step=0.2).steps_for(1.0) == 5
    assert EvolutionMode.trotter(max_step=0.2).steps_for(0.0) == 1
    assert EvolutionMode.trotter(steps=7).steps_for(100.0) == 7


def test_fine_trotter_curve_tracks_exact(couplings_n6):
    taus = (0.0, 0.2, 0.8)
    exact = sample_curve(couplings_n6, 1.0, taus)
    trotter = sample_curve(couplings_n6, 1.0, taus, EvolutionMode.trotter(max_step=0.01))
    np.testing.assert_allclose(trotter, exact, atol=1e-2 * abs(exact[0]))
    assert trotter[0] == pytest.approx(exact[0], abs=1e-12)


def test_matrix_free_trotter_path_matches_dense(couplings_n6, monkeypatch):
    taus = (0.5, 2.0)
    mode = EvolutionMode.trotter(steps=3)
    dense = sample_curve(couplings_n6, 0.5, taus, mode)
    monkeypatch.setattr(observables, "MATRIX_FREE_QUBIT_THRESHOLD", 0)
    matrix_free = sample_curve(couplings_n6, 0.5, taus, mode)
    np.testing.assert_allclose(matrix_free, dense, atol=1e-10)


def test_averaged_correlation_normalizes_each_sample():
    samples = draw_samples(ModelParams(n_majorana=6, mu=5.0), 3, 4)
    series = averaged_correlation(samples, 1.0, (0.0, 0.5, 2.0, 8.0))
    assert series.normalized_abs.shape == (4, 4)
    np.testing.assert_allclose(series.normalized_abs[:, 0], 1.0)
    np.testing.assert_allclose(series.mean_abs[0], 1.0)
    assert series.stderr[0] == pytest.approx(0.0, abs=1e-15)
    assert series.seeds == tuple(c.params.seed for c in samples)
    assert len(list(series.sample_rows())) == 16
    assert len(list(series.aggregate_rows())) == 4


def test_averaged_correlation_is_thread_independent():
    samples = draw_samples(ModelParams(n_majorana=6, mu=5.0), 3, 4)
    serial = averaged_correlation(samples, 1.0, (0.5, 2.0))
    threaded = averaged_correlation(samples, 1.0, (0.5, 2.0), threads=4)
    np.testing.assert_allclose(serial.normalized_abs, threaded.normalized_abs, atol=1e-14)


def test_opposite_mu_agree_at_infinite_temperature():
    grid = (0.0, 0.4, 1.5, 6.0)
    plus = averaged_correlation(draw_samples(ModelParams(n_majorana=6, mu=5.0), 2, 3), 0.0, grid)
    minus = averaged_correlation(draw_samples(ModelParams(n_majorana=6, mu=-5.0), 2, 3), 0.0, grid)
    np.testing.assert_allclose(plus.mean_abs, minus.mean_abs, atol=1e-12)


def test_averaged_correlation_needs_samples():
    with pytest.raises(ParameterError):
        averaged_correlation([], 0.0, (1.0,))


def _series(rows) -> CorrelationSeries:
    values = np.array(rows, dtype=float)
    return CorrelationSeries(0.0, 0.0, tuple(range(values.shape[1])), tuple(range(values.shape[0])),
                             values.astype(complex), values)


def test_saturation_uses_the_late_window():
    series = _series([[1, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.2], [1, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.4]])
    assert saturation_value(series, 0.25) == pytest.approx(np.mean([0.4, 0.2, 0.4, 0.4]))
    per_sample = np.array([0.3, 0.4])
    assert saturation_stderr(series, 0.25) == pytest.approx(per_sample.std(ddof=1) / np.sqrt(2))
    assert saturation_value(np.array([5.0, 4.0, 1.0, 3.0]), 0.5) == pytest.approx(2.0)


def test_saturation_window_too_small():
    with pytest.raises(DomainError):
        saturation_value(np.arange(4.0), 0.25)
    with pytest.raises(DomainError):
        saturation_value(np.arange(8.0), 0.0)


def test_scaling_sweep_orders_points_by_n_then_mu():
    points = scaling_sweep([4, 6], [0.0, 5.0], 1.0, 2, master_seed=1, tau_grid=(0.0, 1.0, 5.0, 20.0), window=0.5)
    assert [(p.n_majorana, p.mu) for p in points] == [(4, 0.0), (4, 5.0), (6, 0.0), (6, 5.0)]
    for p in points:
        assert 0.0 <= p.avg_abs_d_inf <= 1.0 + 1e-12
        assert p.to_row()[-1] == 2


def test_infinite_temperature_curve_never_exceeds_its_start():
    series = averaged_correlation(draw_samples(ModelParams(n_majorana=8, mu=5.0), 4, 3), 0.0, log_tau_grid())
    assert np.all(series.normalized_abs <= 1.0 + 1e-12)


def test_trotter_saturation_tracks_exact():
    samples = draw_samples(ModelParams(n_majorana=6, mu=5.0), 0, 1)
    grid = log_tau_grid()
    exact = averaged_correlation(samples, 1.0, grid)
    trotter = averaged_correlation(samples, 1.0, grid, EvolutionMode.trotter(max_step=0.02))
    assert saturation_value(trotter) == pytest.approx(saturation_value(exact), abs=0.02)


def test_symmetry_breaking_side_saturates_highest_at_low_temperature():
    grid = log_tau_grid()
    series = {mu: averaged_correlation(draw_samples(ModelParams(n_majorana=8, mu=mu), 0, 8), 20.0, grid)
              for mu in (5.0, 0.0, -5.0)}
    value = {mu: saturation_value(s) for mu, s in series.items()}
    err = {mu: saturation_stderr(s) for mu, s in series.items()}
    for other in (0.0, -5.0):
        assert value[5.0] - value[other] >= 2 * max(err[5.0], err[other])
    assert value[0.0] <= value[-5.0] + 2 * max(err[0.0], err[-5.0])


def test_saturation_shrinks_with_size_unless_symmetry_breaks():
    points = scaling_sweep([6, 8, 10, 12], [0.0, 5.0], 20.0, 8)
    by_mu = {mu: [p for p in points if p.mu == mu] for mu in (0.0, 5.0)}
    flat = by_mu[0.0]
    violations = sum(
        later.avg_abs_d_inf > earlier.avg_abs_d_inf + max(earlier.stderr, later.stderr)
        for earlier, later in zip(flat, flat[1:])
    )
    assert violations <= 1
    assert flat[-1].avg_abs_d_inf < flat[0].avg_abs_d_inf
    for broken, symmetric in zip(by_mu[5.0], flat):
        assert broken.n_majorana == symmetric.n_majorana
        assert broken.avg_abs_d_inf > symmetric.avg_abs_d_inf
