import numpy as np
import pytest

from tvha import pauli
from tvha.errors import ContractError
from tvha.hamiltonian import FermionTerm, classify
from tvha.pauli import (
    IDENTITY,
    PauliString,
    PauliSum,
    assemble_measurement_hamiltonian,
    jw_ladder,
    map_term,
    simplify,
    to_matrix,
    total_spin_squared,
)

from oracles import fermion_term_matrix, random_spin_integrals


def test_jw_ladder_lowest_orbital():
    s = jw_ladder(0, False, 1)
    assert s.terms == {
        PauliString([(0, "X")]): 0.5,
        PauliString([(0, "Y")]): 0.5j,
    }


def test_jw_ladder_parity_chain():
    s = jw_ladder(2, True, 3)
    for string in s.terms:
        assert string.axes[:2] == ((0, "Z"), (1, "Z"))


def test_jw_ladder_out_of_range():
    with pytest.raises(IndexError):
        jw_ladder(3, False, 3)


def test_jw_anticommutator_is_identity():
    a = jw_ladder(0, False, 2)
    ad = jw_ladder(0, True, 2)
    anti = simplify(a @ ad + ad @ a)
    assert anti.terms == {IDENTITY: 1.0 + 0j}
    np.testing.assert_allclose(to_matrix(anti), np.eye(4), atol=1e-12)


def test_map_number_operator():
    s = map_term(FermionTerm(1.0, (0,), (0,)), 1)
    assert s.terms[IDENTITY] == pytest.approx(0.5)
    assert s.terms[PauliString([(0, "Z")])] == pytest.approx(-0.5)


def test_map_hopping_pair():
    t = map_term(FermionTerm(1.0, (0,), (1,)), 2) + map_term(
        FermionTerm(1.0, (1,), (0,)), 2
    )
    t = simplify(t)
    assert t.terms == {
        PauliString([(0, "X"), (1, "X")]): pytest.approx(0.5),
        PauliString([(0, "Y"), (1, "Y")]): pytest.approx(0.5),
    }


def test_map_density_density():
    prod = map_term(FermionTerm(-1.0, (0, 1), (0, 1)), 2)  # equals n_0 n_1
    expected = {
        IDENTITY: 0.25,
        PauliString([(0, "Z")]): -0.25,
        PauliString([(1, "Z")]): -0.25,
        PauliString([(0, "Z"), (1, "Z")]): 0.25,
    }
    assert set(prod.terms) == set(expected)
    for s, c in expected.items():
        assert prod.terms[s] == pytest.approx(c)


def test_two_body_term_has_eight_weight4_strings():
    t = FermionTerm(0.37, (0, 1), (2, 3))
    total = simplify(map_term(t, 4) + map_term(t.conjugate(), 4))
    assert len(total) == 8
    assert all(s.weight == 4 for s in total.terms)
    assert total.is_hermitian()


def test_simplify_combines_and_cancels():
    s = PauliSum(2)
    z0 = PauliString([(0, "Z")])
    s._accumulate(z0, 1.0)
    s._accumulate(z0, 1.0)
    assert simplify(s).terms[z0] == 2.0
    s2 = PauliSum.from_terms(2, [(z0, 0.7), (z0, -0.7)])
    assert len(simplify(s2)) == 0


def test_simplify_idempotent_and_ordered():
    rng = np.random.default_rng(3)
    terms = {}
    for _ in range(12):
        qubits = sorted(rng.choice(3, size=rng.integers(1, 4), replace=False))
        s = PauliString([(int(q), "XYZ"[rng.integers(3)]) for q in qubits])
        terms[s] = complex(rng.normal(), rng.normal())
    s = PauliSum(3, terms)
    once = simplify(s)
    twice = simplify(once)
    assert list(once.terms) == list(twice.terms) == sorted(once.terms, key=lambda p: p.axes)
    for k in once.terms:
        assert once.terms[k] == twice.terms[k]


def test_simplify_rejects_nonpositive_tol():
    with pytest.raises(ValueError):
        simplify(PauliSum(1), tol=0.0)


def test_h2_gamma_cancellation(h2):
    # full non-Coulomb part collapses below 8 strings per conjugate pair
    n = h2.ints.n_so
    total = PauliSum(n)
    for t in h2.dh.non_coulomb_sorted:
        total += map_term(t, n)
    total = simplify(total)
    assert len(total) < 8 * h2.dh.pair_count()


def test_product_matches_matrix_oracle():
    rng = np.random.default_rng(11)
    for _ in range(8):
        def rand_sum():
            out = PauliSum(3)
            for _ in range(4):
                qs = sorted(rng.choice(3, size=rng.integers(1, 4), replace=False))
                s = PauliString([(int(q), "XYZ"[rng.integers(3)]) for q in qs])
                out._accumulate(s, complex(rng.normal(), rng.normal()))
            return out

        a, b = rand_sum(), rand_sum()
        np.testing.assert_allclose(
            to_matrix(a @ b), to_matrix(a) @ to_matrix(b), atol=1e-10
        )


def test_to_matrix_basics():
    z = PauliSum(1, {PauliString([(0, "Z")]): 1.0})
    np.testing.assert_allclose(to_matrix(z), np.diag([1.0, -1.0]), atol=0)
    xx = PauliSum(2, {PauliString([(0, "X"), (1, "X")]): 1.0})
    np.testing.assert_allclose(to_matrix(xx), np.fliplr(np.eye(4)), atol=0)


def test_to_matrix_dimension_guard():
    with pytest.raises(ValueError):
        to_matrix(PauliSum(13))


def test_jw_faithfulness_random_terms():
    # random one- and two-body terms on up to 6 spin orbitals against the
    # occupation-basis oracle with the same parity-string sign convention
    rng = np.random.default_rng(5)
    for _ in range(30):
        n = int(rng.integers(2, 7))
        if rng.random() < 0.5:
            create = tuple(int(q) for q in rng.choice(n, size=1))
            annihilate = tuple(int(q) for q in rng.choice(n, size=1))
        else:
            create = tuple(sorted(int(q) for q in rng.choice(n, size=2, replace=False)))
            annihilate = tuple(
                sorted(int(q) for q in rng.choice(n, size=2, replace=False))
            )
        t = FermionTerm(float(rng.normal()), create, annihilate)
        mapped = to_matrix(map_term(t, n))
        reference = fermion_term_matrix(t.coeff, t.create, t.annihilate, n)
        np.testing.assert_allclose(mapped, reference, atol=1e-10)


def test_map_of_hermitian_pairs_is_real():
    rng = np.random.default_rng(9)
    for _ in range(10):
        n = 4
        t = FermionTerm(
            float(rng.normal()),
            tuple(sorted(int(q) for q in rng.choice(n, 2, replace=False))),
            tuple(sorted(int(q) for q in rng.choice(n, 2, replace=False))),
        )
        total = simplify(map_term(t, n) + map_term(t.conjugate(), n))
        assert total.is_hermitian(tol=1e-12)


def test_assemble_measurement_hamiltonian(molecule):
    h = molecule.hamiltonian
    assert h.is_hermitian()
    if molecule.ints.n_so <= 6:
        from oracles import raw_hamiltonian_matrix

        np.testing.assert_allclose(
            to_matrix(h).real, raw_hamiltonian_matrix(molecule.ints), atol=1e-10
        )


def test_assemble_zero_integrals():
    dh = classify(random_spin_integrals(np.random.default_rng(0), 2, scale=0.0))
    assert len(assemble_measurement_hamiltonian(dh)) == 0


def test_total_spin_squared_eigenvalues():
    # two electrons in two orbitals: singlets give 0, triplet gives 2
    s2 = to_matrix(total_spin_squared(2))
    w = np.linalg.eigvalsh(s2)
    assert set(np.round(w, 8)) <= {0.0, 0.75, 2.0, 3.75}


def test_debug_text_format():
    s = PauliSum(6, {PauliString([(0, "X"), (2, "Z"), (5, "Y")]): -0.25})
    assert s.to_text() == "-0.25 · X0 Z2 Y5"
