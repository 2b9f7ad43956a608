import math

import numpy as np
import pytest

from fixturegen import basis as basis_mod
from fixturegen import integrals


def h2_setup(r_bohr=1.4):
    symbols = ["H", "H"]
    coords = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, r_bohr]])
    charges = np.array([1.0, 1.0])
    funcs = integrals.normalize_basis(
        basis_mod.build_basis(symbols, coords, "sto-3g")
    )
    return funcs, charges, coords


def test_normalized_self_overlap():
    funcs, _, _ = h2_setup()
    S = integrals.overlap(funcs)
    np.testing.assert_allclose(np.diag(S), np.ones(len(funcs)), atol=1e-12)


def test_h2_szabo_ostlund_values():
    # STO-3G H2 at R = 1.4 bohr; reference values from the standard
    # worked example (two-decimal-level agreement expected)
    funcs, charges, coords = h2_setup(1.4)
    S = integrals.overlap(funcs)
    T = integrals.kinetic(funcs)
    V = integrals.nuclear_attraction(funcs, charges, coords)
    assert S[0, 1] == pytest.approx(0.6593, abs=2e-4)
    assert T[0, 0] == pytest.approx(0.7600, abs=2e-4)
    assert T[0, 1] == pytest.approx(0.2365, abs=2e-4)
    assert (T + V)[0, 0] == pytest.approx(-1.1204, abs=3e-4)
    eri = integrals.electron_repulsion(funcs)
    assert eri[0, 0, 0, 0] == pytest.approx(0.7746, abs=2e-4)
    assert eri[0, 0, 1, 1] == pytest.approx(0.5697, abs=2e-4)
    assert eri[1, 0, 0, 0] == pytest.approx(0.4441, abs=2e-4)
    assert eri[1, 0, 1, 0] == pytest.approx(0.2970, abs=2e-4)


def test_eri_eightfold_symmetry_with_p_functions():
    symbols = ["Li", "H"]
    coords = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 3.0]])
    funcs = integrals.normalize_basis(
        basis_mod.build_basis(symbols, coords, "sto-3g")
    )
    eri = integrals.electron_repulsion(funcs)
    for perm in ((1, 0, 2, 3), (0, 1, 3, 2), (2, 3, 0, 1)):
        np.testing.assert_allclose(eri, eri.transpose(perm), atol=1e-12)


def test_nuclear_repulsion():
    e = integrals.nuclear_repulsion(np.array([1.0, 1.0]), np.array([[0.0, 0, 0], [0, 0, 1.4]]))
    assert e == pytest.approx(1.0 / 1.4)


def test_kinetic_positive_definite():
    funcs, _, _ = h2_setup()
    T = integrals.kinetic(funcs)
    assert np.all(np.linalg.eigvalsh(T) > 0)


def test_boys_function_limits():
    assert integrals._boys(0, 0.0)[0] == pytest.approx(1.0)
    assert integrals._boys(2, 0.0)[2] == pytest.approx(1.0 / 5.0)
    # large-x asymptotic F_0(x) ~ 0.5 sqrt(pi/x)
    x = 40.0
    assert integrals._boys(0, x)[0] == pytest.approx(0.5 * math.sqrt(math.pi / x), rel=1e-6)
