import numpy as np
import pytest

from tvha.fcidump import SpinOrbitalIntegrals
from tvha.hamiltonian import (
    DecomposedHamiltonian,
    FermionTerm,
    admissible_thresholds,
    classify,
    hf_energy,
    histogram_rows,
    truncate,
)

from oracles import (
    decomposition_matrix,
    fermion_term_matrix,
    raw_hamiltonian_matrix,
    random_spin_integrals,
)


def _pure_coulomb_integrals():
    g = np.zeros((2, 2, 2, 2))
    # pattern i=l, j=k at (0,1): both orderings, respecting g[i,j,k,l]=g[j,i,l,k]
    g[0, 1, 1, 0] = g[1, 0, 0, 1] = 0.5
    return SpinOrbitalIntegrals(n_so=2, h=np.zeros((2, 2)), g=g, e_core=0.0).validate()


def test_classify_pure_coulomb_pattern():
    dh = classify(_pure_coulomb_integrals())
    assert dh.coulomb == ((0, 1, 0.5),)
    assert dh.non_coulomb_sorted == ()
    assert dh.one_body_diag == () and dh.one_body_offdiag == ()


def test_classify_reconstructs_operator():
    rng = np.random.default_rng(42)
    for _ in range(4):
        ints = random_spin_integrals(rng, 4)
        dh = classify(ints)
        assert np.abs(raw_hamiltonian_matrix(ints) - decomposition_matrix(dh)).max() < 1e-10


def test_classify_conjugate_adjacency(molecule):
    terms = molecule.dh.non_coulomb_sorted
    assert len(terms) % 2 == 0
    for p in range(0, len(terms), 2):
        t, tc = terms[p], terms[p + 1]
        assert tc.create == t.annihilate and tc.annihilate == t.create
        assert t.coeff == tc.coeff


def test_classify_sorted_descending(molecule):
    mags = [abs(t.coeff) for t in molecule.dh.non_coulomb_sorted[::2]]
    assert all(a >= b - 1e-15 for a, b in zip(mags, mags[1:]))


def test_classify_antisymmetrization_is_representation_only():
    # same operator with and without the i<j,k<l restriction (n_so <= 6)
    rng = np.random.default_rng(7)
    ints = random_spin_integrals(rng, 6, scale=0.5)
    dh = classify(ints)
    assert np.abs(raw_hamiltonian_matrix(ints) - decomposition_matrix(dh)).max() < 1e-10


def test_lih_gamma_dominates(lih):
    dh = lih.dh
    n_other = len(dh.one_body_diag) + len(dh.one_body_offdiag) + len(dh.coulomb)
    assert len(dh.non_coulomb_sorted) > n_other
    # non-Coulomb coefficients are predominantly the smallest terms
    gamma = sorted(abs(t.coeff) for t in dh.non_coulomb_sorted)
    others = sorted(
        [abs(v) for _, v in dh.one_body_diag]
        + [abs(w) for _, _, w in dh.coulomb]
    )
    assert np.median(gamma) < np.median(others)


def _hand_example():
    # |g~| sequence (0.4, 0.4, 0.1, 0.1) as two conjugate pairs; admissible
    # fractions enumerate to {0, 0.8, 1.0}
    t1 = FermionTerm(0.4, (0, 1), (2, 3))
    t2 = FermionTerm(0.1, (0, 2), (1, 3))
    return DecomposedHamiltonian(
        n_so=4,
        one_body_diag=(),
        one_body_offdiag=(),
        coulomb=(),
        non_coulomb_sorted=(t1, t1.conjugate(), t2, t2.conjugate()),
        e_core=0.0,
    )


def test_truncate_hand_enumeration():
    dh = _hand_example()
    res = truncate(dh, 0.75)
    assert res.s_cut == 2
    assert res.p_actual == pytest.approx(0.8)
    assert res.kept == dh.non_coulomb_sorted[:2]


def test_truncate_limits():
    dh = _hand_example()
    zero = truncate(dh, 0.0)
    assert zero.s_cut == 0 and zero.p_actual == 0.0 and zero.kept == ()
    full = truncate(dh, 1.0)
    assert full.s_cut == 4 and full.p_actual == 1.0
    assert full.kept == dh.non_coulomb_sorted


def test_truncate_never_splits_pairs(molecule):
    for target in np.linspace(0.0, 1.0, 17):
        res = truncate(molecule.dh, float(target))
        assert res.s_cut % 2 == 0


def test_truncate_rejects_bad_target():
    with pytest.raises(ValueError):
        truncate(_hand_example(), 1.5)


def test_admissible_thresholds_hand_example():
    assert admissible_thresholds(_hand_example()) == pytest.approx([0.0, 0.8, 1.0])


def test_admissible_thresholds_empty():
    dh = DecomposedHamiltonian(2, (), (), (), (), 0.0)
    assert admissible_thresholds(dh) == [0.0]


def test_admissible_thresholds_h2(h2):
    thresholds = admissible_thresholds(h2.dh)
    assert len(thresholds) == 3
    assert thresholds == pytest.approx([0.0, 0.5, 1.0])


def test_thresholds_monotone_with_endpoints(molecule):
    ts = admissible_thresholds(molecule.dh)
    assert ts[0] == 0.0 and ts[-1] == pytest.approx(1.0)
    assert all(a < b for a, b in zip(ts, ts[1:]))


def test_hf_energy_zero_integrals():
    dh = DecomposedHamiltonian(4, (), (), (), (), 0.0)
    assert hf_energy(dh, 1, 1) == 0.0


def test_hf_energy_diagonal_blocked():
    ints = SpinOrbitalIntegrals(
        n_so=4, h=np.diag([-1.0, -2.0, -1.0, -2.0]), g=np.zeros((4,) * 4), e_core=0.0
    ).validate()
    # blocked ordering occupies spin orbitals 0 and 2
    assert hf_energy(classify(ints), 1, 1) == pytest.approx(-2.0)


def test_hf_energy_matches_statevector(h2):
    from tvha.sim import expectation

    e = hf_energy(h2.dh, 1, 1)
    assert abs(e - h2.e_hf_elec) < 1e-8
    assert abs(e - expectation(h2.hf_state, h2.hamiltonian)) < 1e-10


def test_kept_prefix_hermitian_all_cuts(molecule):
    # conjugate-pair adjacency makes every admissible prefix Hermitian;
    # verify by matrix on the small fixtures, by pairing on the large ones
    dh = molecule.dh
    terms = dh.non_coulomb_sorted
    if dh.n_so <= 6:
        for s in range(0, len(terms) + 1, 2):
            mat = np.zeros((1 << dh.n_so, 1 << dh.n_so))
            for t in terms[:s]:
                mat = mat + fermion_term_matrix(t.coeff, t.create, t.annihilate, dh.n_so)
            assert np.abs(mat - mat.conj().T).max() < 1e-12
    else:
        for s in range(0, len(terms) + 1, 2):
            kept = terms[:s]
            assert {(t.create, t.annihilate) for t in kept} == {
                (t.annihilate, t.create) for t in kept
            }


def test_term_count_scaling(lih, h4):
    for mol in (lih, h4):
        n = mol.ints.n_so
        assert len(mol.dh.coulomb) <= n * (n - 1) / 2
        assert len(mol.dh.non_coulomb_sorted) > len(mol.dh.coulomb)


def test_histogram_rows(molecule):
    rows = histogram_rows(molecule.dh)
    classes = {cls for cls, _ in rows}
    assert classes <= {"one_body", "coulomb", "non_coulomb"}
    assert all(mag > 0 for _, mag in rows)
    counts = {
        "one_body": len(molecule.dh.one_body_diag) + len(molecule.dh.one_body_offdiag),
        "coulomb": len(molecule.dh.coulomb),
        "non_coulomb": len(molecule.dh.non_coulomb_sorted),
    }
    for cls, expected in counts.items():
        assert sum(1 for c, _ in rows if c == cls) == expected


def test_h2_gamma_magnitudes_smallest(h2):
    rows = histogram_rows(h2.dh)
    nc = [m for c, m in rows if c == "non_coulomb"]
    rest = [m for c, m in rows if c != "non_coulomb"]
    assert max(nc) < min(rest)
