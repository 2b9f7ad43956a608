import numpy as np
import pytest
from scipy.linalg import expm

from tvha import circuit as circ_mod
from tvha.circuit import (
    AngleExpr,
    Circuit,
    Gate,
    build_hea,
    build_tvha,
    build_uccsd,
    concat,
    exp_pauli,
    hf_prep,
    metrics,
    peephole,
    uccsd_excitations,
)
from tvha.errors import InvalidTerm
from tvha.hamiltonian import admissible_thresholds, truncate
from tvha.pauli import PauliString, to_matrix
from tvha.sim import StateVector, expectation, run
from tvha.vqe import init_params_tvha

from oracles import circuit_unitary, pauli_exponential, random_pauli_string


def test_hf_prep_small():
    c = hf_prep(4, 1, 1, 2)
    assert [g.qubits[0] for g in c.gates] == [0, 2]
    assert c.n_params == 0
    c12 = hf_prep(12, 2, 2, 6)
    assert [g.qubits[0] for g in c12.gates] == [0, 1, 6, 7]


def test_hf_prep_hamming_weight():
    c = hf_prep(8, 2, 1, 4)
    out = run(c, np.zeros(0), StateVector.zero_state(8))
    index = int(np.argmax(np.abs(out.amplitudes)))
    assert bin(index).count("1") == 3


def test_exp_pauli_rejects_identity():
    with pytest.raises(InvalidTerm):
        exp_pauli(PauliString(), 1.0, AngleExpr.const(1.0))


def test_exp_pauli_cnot_counts():
    z = PauliString([(3, "Z")])
    gates = exp_pauli(z, 0.5, AngleExpr.const(1.0))
    assert sum(1 for g in gates if g.kind == "cnot") == 0
    assert len([g for g in gates if g.kind == "rz"]) == 1
    w4 = PauliString([(0, "X"), (1, "X"), (2, "Y"), (3, "Y")])
    gates = exp_pauli(w4, 0.5, AngleExpr.const(1.0))
    assert sum(1 for g in gates if g.kind == "cnot") == 6


def test_exp_pauli_unitary_oracle():
    rng = np.random.default_rng(13)
    for _ in range(30):
        n = int(rng.integers(1, 5))
        p = random_pauli_string(rng, n)
        coeff = float(rng.normal())
        theta = float(rng.normal())
        gates = exp_pauli(p, coeff, AngleExpr.linear(0, 1.0))
        u = circuit_unitary(Circuit(n, 1, tuple(gates)), np.array([theta]))
        np.testing.assert_allclose(u, pauli_exponential(p, n, theta * coeff), atol=1e-10)


def test_build_tvha_parameter_counts(h2):
    tr = truncate(h2.dh, 1.0)
    assert build_tvha(h2.dh, tr, 1).n_params == 3
    assert build_tvha(h2.dh, tr, 5).n_params == 15


def test_build_tvha_block_param_assignment(h2):
    tr = truncate(h2.dh, 1.0)
    c = build_tvha(h2.dh, tr, 2)
    seen = [g.angle.param for g in c.gates if g.angle is not None and g.angle.param is not None]
    # parameters appear in slot order 0,1,2 then 3,4,5
    assert sorted(set(seen)) == [0, 1, 2, 3, 4, 5]
    first_occurrence = {p: seen.index(p) for p in set(seen)}
    assert sorted(first_occurrence, key=first_occurrence.get) == [0, 1, 2, 3, 4, 5]


def test_build_tvha_coulomb_block_angles(h2):
    # each Coulomb pair contributes one ZZ sandwich (2 CNOTs around an Rz)
    # whose angle coefficient per unit parameter is -2 * (w/4) = -w/2
    tr = truncate(h2.dh, 0.0)
    c = build_tvha(h2.dh, tr, 1)
    gates = list(c.gates)
    sandwiches = {}
    for k in range(1, len(gates) - 1):
        g = gates[k]
        if (
            g.kind == "rz"
            and gates[k - 1].kind == "cnot"
            and gates[k + 1].kind == "cnot"
            and gates[k - 1].qubits == gates[k + 1].qubits
        ):
            sandwiches[gates[k - 1].qubits] = g.angle.coeff
    expected = {(i, j): -w / 2.0 for i, j, w in h2.dh.coulomb}
    assert sandwiches.keys() == expected.keys()
    for pair, coeff in expected.items():
        assert sandwiches[pair] == pytest.approx(coeff, abs=1e-12)


def test_build_tvha_p0_reproduces_hf(h2):
    tr = truncate(h2.dh, 0.0)
    c = build_tvha(h2.dh, tr, 1)
    state = run(c, init_params_tvha(1), h2.hf_state)
    e = expectation(state, h2.hamiltonian)
    assert abs(e - h2.e_hf_elec) < 1e-10


def test_build_tvha_unitary_matches_step_exponentials(ch2):
    # full circuit unitary == product of per-string exponentials in the
    # compiled order (first-order intra-step splitting), <= 4 qubits
    dh = ch2.dh
    tr = truncate(dh, 1.0)
    n_steps = 2
    c = build_tvha(dh, tr, n_steps)
    rng = np.random.default_rng(2)
    params = rng.normal(size=c.n_params)
    u = circuit_unitary(c, params)
    blocks = (
        circ_mod._non_coulomb_sum(dh, tr.kept),
        circ_mod._coulomb_sum(dh),
        circ_mod._one_body_sum(dh, "diagonal"),
    )
    dim = 1 << dh.n_so
    ref = np.eye(dim, dtype=complex)
    for step in range(n_steps):
        for slot, psum in enumerate(blocks):
            theta = params[3 * step + slot]
            for string, coeff in psum.sorted_terms():
                if string.is_identity():
                    continue
                ref = pauli_exponential(string, dh.n_so, theta * coeff.real) @ ref
    np.testing.assert_allclose(u, ref, atol=1e-9)


def test_tvha_cnot_count_affine_in_steps(h4):
    tr = truncate(h4.dh, 0.5)
    c1 = metrics(build_tvha(h4.dh, tr, 1))["cnot_count"]
    for n in (2, 3, 5):
        cn = metrics(build_tvha(h4.dh, tr, n))["cnot_count"]
        assert cn == n * c1


def test_tvha_cnot_monotone_in_p_where_strings_grow(molecule):
    # adding kept terms can only add or cancel strings; the count is
    # monotone except where symmetry cancellation shrinks the string set
    # (the H2/CH2 artifact: p=1 compiles smaller than p=0.5)
    thresholds = admissible_thresholds(molecule.dh)
    if len(thresholds) > 15:
        idx = np.linspace(0, len(thresholds) - 1, 15).astype(int)
        thresholds = [thresholds[i] for i in idx]
    prev_cnot, prev_strings = None, None
    for p in thresholds:
        tr = truncate(molecule.dh, p)
        gsum = circ_mod._non_coulomb_sum(molecule.dh, tr.kept)
        cnot = metrics(build_tvha(molecule.dh, tr, 1))["cnot_count"]
        if prev_cnot is not None and cnot < prev_cnot:
            assert len(gsum) < prev_strings  # only cancellation may shrink
        prev_cnot, prev_strings = cnot, len(gsum)


def test_uccsd_h2_excitations(h2):
    singles, doubles = uccsd_excitations(4, 1, 1)
    assert singles == [(0, 1), (2, 3)]
    assert doubles == [(0, 2, 1, 3)]
    c = build_uccsd(4, 1, 1)
    assert c.n_params == 3  # frozen golden value from the enumeration


def test_uccsd_zero_params_is_identity(h2):
    c = build_uccsd(4, 1, 1)
    out = run(c, np.zeros(c.n_params), h2.hf_state)
    np.testing.assert_allclose(out.amplitudes, h2.hf_state.amplitudes, atol=1e-12)
    assert expectation(out, h2.hamiltonian) == pytest.approx(h2.e_hf_elec, abs=1e-10)


def test_uccsd_conserves_particle_number(h4):
    c = build_uccsd(8, 2, 2)
    rng = np.random.default_rng(5)
    out = run(c, rng.normal(scale=0.1, size=c.n_params), h4.hf_state)
    idx = np.abs(out.amplitudes) > 1e-12
    weights = {bin(i).count("1") for i in np.nonzero(idx)[0]}
    assert weights == {4}


def test_uccsd_requires_excitations():
    with pytest.raises(ValueError):
        build_uccsd(4, 2, 2)  # no virtuals


def test_hea_structure():
    c = build_hea(4, 1, 1, 2, layers=3)
    assert metrics(c)["cnot_count"] == 9  # (n-1) per entanglement layer
    assert c.n_params == 32  # (3+1) rotation layers x 2 x 4 qubits
    # reverse-linear: CNOT(q, q+1) emitted from q = n-2 down to 0
    first_chain = [g.qubits for g in c.gates if g.kind == "cnot"][:3]
    assert first_chain == [(2, 3), (1, 2), (0, 1)]


def test_hea_zero_params_reproduce_hf(molecule):
    c = build_hea(
        molecule.ints.n_so, molecule.meta.n_alpha, molecule.meta.n_beta, molecule.n_orb
    )
    out = run(c, np.zeros(c.n_params), StateVector.zero_state(molecule.ints.n_so))
    np.testing.assert_allclose(
        out.amplitudes, molecule.hf_state.amplitudes, atol=1e-12
    )


def test_peephole_cancels_cnot_pair():
    c = Circuit(2, 0, (Gate("cnot", (0, 1)), Gate("cnot", (0, 1))))
    assert peephole(c).gates == ()


def test_peephole_merges_constant_rz():
    c = Circuit(1, 0, (Gate("rz", (0,), AngleExpr.const(0.1)), Gate("rz", (0,), AngleExpr.const(0.2))))
    out = peephole(c)
    assert len(out.gates) == 1
    assert out.gates[0].angle.coeff == pytest.approx(0.3)


def test_peephole_removes_zero_and_inverse_pairs():
    c = Circuit(
        2,
        1,
        (
            Gate("h", (0,)),
            Gate("h", (0,)),
            Gate("rz", (1,), AngleExpr.linear(0, 0.0)),
            Gate("rx", (0,), AngleExpr.const(0.5)),
            Gate("rx", (0,), AngleExpr.const(-0.5)),
        ),
    )
    assert peephole(c).gates == ()


def test_peephole_does_not_merge_across_params():
    c = Circuit(
        1, 2,
        (Gate("rz", (0,), AngleExpr.linear(0, 0.1)), Gate("rz", (0,), AngleExpr.linear(1, 0.2))),
    )
    assert len(peephole(c).gates) == 2


def test_peephole_preserves_unitary_random():
    rng = np.random.default_rng(37)
    for _ in range(20):
        gates = []
        for _ in range(60):
            kind = rng.choice(["x", "h", "rx", "ry", "rz", "cnot"])
            if kind == "cnot":
                q = rng.choice(4, size=2, replace=False)
                gates.append(Gate("cnot", (int(q[0]), int(q[1]))))
            else:
                angle = None
                if kind in ("rx", "ry", "rz"):
                    if rng.random() < 0.5:
                        angle = AngleExpr.const(float(rng.normal()))
                    else:
                        angle = AngleExpr.linear(int(rng.integers(2)), float(rng.normal()))
                gates.append(Gate(kind, (int(rng.integers(4)),), angle))
        c = Circuit(4, 2, tuple(gates))
        params = rng.normal(size=2)
        np.testing.assert_allclose(
            circuit_unitary(c, params),
            circuit_unitary(peephole(c), params),
            atol=1e-10,
        )


def test_metrics_prep_circuit():
    m = metrics(hf_prep(4, 1, 1, 2))
    assert m == {"cnot_count": 0, "param_count": 0, "depth": 1}


def test_metrics_depth_chain():
    c = Circuit(3, 0, (Gate("cnot", (0, 1)), Gate("cnot", (1, 2)), Gate("x", (0,))))
    assert metrics(c)["depth"] == 2


def test_circuit_validation():
    with pytest.raises(ValueError):
        Circuit(2, 0, (Gate("cnot", (1, 1)),))
    with pytest.raises(ValueError):
        Circuit(1, 0, (Gate("x", (3,)),))
    with pytest.raises(ValueError):
        Circuit(1, 1, (Gate("rz", (0,), AngleExpr.linear(4, 1.0)),))


def test_circuit_text_dump():
    c = Circuit(
        4, 6,
        (
            Gate("cnot", (0, 1)),
            Gate("rz", (3,), AngleExpr.linear(5, -0.125)),
            Gate("rz", (3,), AngleExpr.const(0.5)),
        ),
    )
    assert c.to_text().splitlines() == [
        "CNOT 0 1",
        "RZ 3 p5*-0.125",
        "RZ 3 c0.5",
    ]
    # 17 significant digits round-trip arbitrary coefficients exactly
    expr = AngleExpr.const(0.456)
    assert float(expr.text()[1:]) == 0.456


def test_concat_shifts_params(h2):
    prep = hf_prep(4, 1, 1, 2)
    tr = truncate(h2.dh, 1.0)
    body = build_tvha(h2.dh, tr, 1)
    joined = concat(prep, body)
    assert joined.n_params == 3
    out1 = run(joined, init_params_tvha(1), StateVector.zero_state(4))
    out2 = run(body, init_params_tvha(1), h2.hf_state)
    np.testing.assert_allclose(out1.amplitudes, out2.amplitudes, atol=1e-12)
