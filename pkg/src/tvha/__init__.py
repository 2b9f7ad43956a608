"""Truncated variational Hamiltonian ansatz toolkit.

Pipeline: FCIDUMP integrals -> three-way Hamiltonian decomposition and
magnitude truncation -> Jordan-Wigner circuit compilation -> exact
statevector VQE -> experiment harness (energy sweeps, CNOT budgets,
term histograms).
"""

from . import circuit, fcidump, hamiltonian, pauli, sim, vqe  # noqa: F401

__version__ = "0.1.0"
