import numpy as np
import pytest

from syk_nmr_sim.repository_json import JsonRunRepository
from syk_nmr_sim.syk_model import ModelParams, build_boson_operator, build_hamiltonian, generate_couplings


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def couplings_n6():
    return generate_couplings(ModelParams(n_majorana=6, mu=5.0, seed=11))


@pytest.fixture
def couplings_n8():
    return generate_couplings(ModelParams(n_majorana=8, mu=5.0, seed=7))


@pytest.fixture
def hamiltonian_n6(couplings_n6):
    return build_hamiltonian(couplings_n6)


@pytest.fixture
def boson_n6(couplings_n6):
    return build_boson_operator(couplings_n6)


@pytest.fixture
def run_repo(tmp_path):
    return JsonRunRepository(tmp_path / "runs")
