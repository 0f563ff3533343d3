"""SYK model simulation toolkit: Majorana Hamiltonians, Trotter evolution,
boson correlations, gate compilation and NMR pulse design."""
from syk_nmr_sim.pauli_algebra import PauliString, PauliSum
from syk_nmr_sim.syk_model import CouplingSet, ModelParams, build_hamiltonian, generate_couplings
from syk_nmr_sim.utils import SykSimError

__all__ = ["CouplingSet", "ModelParams", "PauliString", "PauliSum", "SykSimError", "build_hamiltonian",
           "generate_couplings"]
