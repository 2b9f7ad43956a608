import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from tvha.circuit import hf_prep
from tvha.fcidump import load_fixture
from tvha.hamiltonian import classify
from tvha.pauli import assemble_measurement_hamiltonian
from tvha.sim import StateVector, run

FIXTURE_ROOT = os.path.join(os.path.dirname(__file__), "..", "fixtures")
FIXTURE_NAMES = ("h2", "h4", "lih", "ch2_as22")


class Molecule:
    """Fixture bundle: integrals, metadata, decomposition, Hamiltonian."""

    def __init__(self, name):
        self.name = name
        self.ints, self.meta = load_fixture(os.path.join(FIXTURE_ROOT, name))
        self.dh = classify(self.ints)
        self.n_orb = self.ints.n_so // 2
        self.e_hf_elec = self.meta.e_hf - self.meta.e_core
        self.e_fci_elec = self.meta.e_fci - self.meta.e_core
        self._hamiltonian = None
        self._hf_state = None

    @property
    def hamiltonian(self):
        if self._hamiltonian is None:
            self._hamiltonian = assemble_measurement_hamiltonian(self.dh)
        return self._hamiltonian

    @property
    def hf_state(self):
        if self._hf_state is None:
            prep = hf_prep(self.ints.n_so, self.meta.n_alpha, self.meta.n_beta, self.n_orb)
            self._hf_state = run(prep, np.zeros(0), StateVector.zero_state(self.ints.n_so))
        return self._hf_state.copy()


_cache = {}


def get_molecule(name):
    if name not in _cache:
        _cache[name] = Molecule(name)
    return _cache[name]


@pytest.fixture(scope="session", params=FIXTURE_NAMES)
def molecule(request):
    return get_molecule(request.param)


@pytest.fixture(scope="session")
def h2():
    return get_molecule("h2")


@pytest.fixture(scope="session")
def h4():
    return get_molecule("h4")


@pytest.fixture(scope="session")
def lih():
    return get_molecule("lih")


@pytest.fixture(scope="session")
def ch2():
    return get_molecule("ch2_as22")
