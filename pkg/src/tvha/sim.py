"""Exact statevector simulation and sector-restricted diagonalization.

Amplitudes are little-endian: the basis index of a computational state is
sum_q bit_q * 2^q. Gate kernels act in place through bit-mask strided
views; no gate matrix is ever materialized.
"""

import math
import weakref
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import ContractError, SectorError

_SQRT_HALF = 1.0 / math.sqrt(2.0)
_OPS = {"x": 0, "h": 1, "rz": 2, "ry": 3, "rx": 4, "cnot": 5}


@dataclass
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    @classmethod
    def zero_state(cls, n_qubits):
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[0] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def basis_state(cls, n_qubits, index):
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n_qubits, amps)

    def copy(self):
        return StateVector(self.n_qubits, self.amplitudes.copy())

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))


def _bit_view(amps, q):
    """View with axis 1 indexing bit q: shape (high, 2, 2^q)."""
    return amps.reshape(-1, 2, 1 << q)


def _apply_mix(amps, q, m00, m01, m10, m11):
    v = _bit_view(amps, q)
    a0 = v[:, 0, :].copy()
    a1 = v[:, 1, :]
    v[:, 0, :] = m00 * a0 + m01 * a1
    v[:, 1, :] = m10 * a0 + m11 * a1


_cnot_cache = {}


def _cnot_indices(n, ctrl, tgt):
    key = (n, ctrl, tgt)
    got = _cnot_cache.get(key)
    if got is None:
        idx = np.arange(1 << n)
        src = idx[((idx >> ctrl) & 1 == 1) & ((idx >> tgt) & 1 == 0)]
        got = (src, src | (1 << tgt))
        _cnot_cache[key] = got
    return got


def apply_gate(state, gate, params):
    """Apply one gate in place."""
    amps = state.amplitudes
    kind = gate.kind
    if kind == "cnot":
        ctrl, tgt = gate.qubits
        src, dst = _cnot_indices(state.n_qubits, ctrl, tgt)
        tmp = amps[src].copy()
        amps[src] = amps[dst]
        amps[dst] = tmp
        return
    q = gate.qubits[0]
    if kind == "x":
        v = _bit_view(amps, q)
        tmp = v[:, 0, :].copy()
        v[:, 0, :] = v[:, 1, :]
        v[:, 1, :] = tmp
        return
    if kind == "h":
        _apply_mix(amps, q, _SQRT_HALF, _SQRT_HALF, _SQRT_HALF, -_SQRT_HALF)
        return
    theta = gate.angle.value(params)
    if kind == "rz":
        v = _bit_view(amps, q)
        phase = np.exp(-0.5j * theta)
        v[:, 0, :] *= phase
        v[:, 1, :] *= phase.conjugate()
        return
    half = 0.5 * theta
    c, s = math.cos(half), math.sin(half)
    if kind == "ry":
        _apply_mix(amps, q, c, -s, s, c)
        return
    if kind == "rx":
        _apply_mix(amps, q, c, -1j * s, -1j * s, c)
        return
    raise ValueError(f"unknown gate kind {kind!r}")


_circuit_cache = weakref.WeakKeyDictionary()


def _compile_circuit(circuit):
    """Flatten the gate list into (op, qubit, other, coeff, param) tuples."""
    compiled = _circuit_cache.get(circuit)
    if compiled is None:
        compiled = []
        for g in circuit.gates:
            op = _OPS[g.kind]
            if op == 5:
                compiled.append((op, g.qubits[0], g.qubits[1], 0.0, -1))
            elif g.angle is None:
                compiled.append((op, g.qubits[0], 0, 0.0, -1))
            else:
                param = -1 if g.angle.param is None else g.angle.param
                compiled.append((op, g.qubits[0], 0, g.angle.coeff, param))
        _circuit_cache[circuit] = compiled
    return compiled


def run(circuit, params, init):
    """Apply a circuit's gates in list order to a copy of `init`."""
    params = np.asarray(params, dtype=float)
    if params.shape != (circuit.n_params,):
        raise ValueError(
            f"parameter vector of length {params.shape} does not match "
            f"circuit with {circuit.n_params} parameters"
        )
    if init.n_qubits != circuit.n_qubits:
        raise ValueError("initial state size does not match circuit")
    state = init.copy()
    amps = state.amplitudes
    n = state.n_qubits
    for op, q, other, coeff, param in _compile_circuit(circuit):
        if op == 5:
            src, dst = _cnot_indices(n, q, other)
            tmp = amps[src].copy()
            amps[src] = amps[dst]
            amps[dst] = tmp
            continue
        v = amps.reshape(-1, 2, 1 << q)
        if op == 0:
            tmp = v[:, 0, :].copy()
            v[:, 0, :] = v[:, 1, :]
            v[:, 1, :] = tmp
            continue
        if op == 1:
            a0 = v[:, 0, :].copy()
            a1 = v[:, 1, :]
            v[:, 0, :] = _SQRT_HALF * (a0 + a1)
            v[:, 1, :] = _SQRT_HALF * (a0 - a1)
            continue
        theta = coeff if param < 0 else coeff * params[param]
        if op == 2:
            phase = complex(math.cos(0.5 * theta), -math.sin(0.5 * theta))
            v[:, 0, :] *= phase
            v[:, 1, :] *= phase.conjugate()
            continue
        c = math.cos(0.5 * theta)
        s = math.sin(0.5 * theta)
        a0 = v[:, 0, :].copy()
        a1 = v[:, 1, :]
        if op == 3:
            v[:, 0, :] = c * a0 - s * a1
            v[:, 1, :] = s * a0 + c * a1
        else:
            v[:, 0, :] = c * a0 - 1j * s * a1
            v[:, 1, :] = -1j * s * a0 + c * a1
    return state


def _prepare(h):
    """Strings grouped by bit-flip mask for fast repeated evaluation.

    All strings sharing an x_mask are folded into one complex weight vector
    w[j] = sum_P coeff_P * phase_P(j), so the per-evaluation work is one
    gather and one dot product per distinct mask.
    """
    if h._prepared is None:
        groups = {}
        for string, coeff in h.sorted_terms():
            w = coeff * string.basis_phases(h.n_qubits)
            acc = groups.get(string.x_mask)
            groups[string.x_mask] = w if acc is None else acc + w
        idx = np.arange(1 << h.n_qubits)
        h._prepared = [
            (idx ^ x_mask, weights) for x_mask, weights in sorted(groups.items())
        ]
    return h._prepared


def expectation(state, h):
    """<state|h|state> for a Hermitian PauliSum, without matrices."""
    if not h.is_hermitian():
        raise ContractError("expectation requires a Hermitian PauliSum")
    psi = state.amplitudes
    conj = psi.conjugate()
    total = 0j
    for perm, weights in _prepare(h):
        total += np.dot(conj[perm] * weights, psi)
    if abs(total.imag) >= 1e-10:
        raise ContractError(f"imaginary expectation residue {total.imag:.3e}")
    return float(total.real)


def sector_basis(n_qubits, n_alpha, n_beta, n_orb):
    """Basis indices with n_alpha bits in the alpha block, n_beta in beta."""
    if n_orb * 2 != n_qubits:
        raise SectorError("sector restriction requires n_qubits == 2 * n_orb")
    if n_alpha > n_orb or n_beta > n_orb or n_alpha < 0 or n_beta < 0:
        raise SectorError(f"empty sector ({n_alpha}, {n_beta}) for {n_orb} orbitals")
    alphas = [sum(1 << q for q in c) for c in combinations(range(n_orb), n_alpha)]
    betas = [
        sum(1 << q for q in c) for c in combinations(range(n_orb, 2 * n_orb), n_beta)
    ]
    return sorted(a | b for a in alphas for b in betas)


def _restricted_matrix(h, basis):
    dim_full = 1 << h.n_qubits
    pos = np.full(dim_full, -1, dtype=np.int64)
    basis = np.asarray(basis, dtype=np.int64)
    pos[basis] = np.arange(len(basis))
    mat = np.zeros((len(basis), len(basis)), dtype=complex)
    for string, coeff in h.sorted_terms():
        phases = string.basis_phases(h.n_qubits)[basis]
        targets = basis ^ string.x_mask
        rows = pos[targets]
        ok = rows >= 0
        mat[rows[ok], np.arange(len(basis))[ok]] += coeff * phases[ok]
    return mat


def exact_ground(h, n_alpha=None, n_beta=None, n_orb=None, singlet=False):
    """Lowest eigenpair of a Hermitian PauliSum.

    With sector arguments, the Hamiltonian is restricted to basis states
    with the given per-block particle numbers (exact when the operator
    conserves them); without, the full space is diagonalized. With
    `singlet`, the lowest eigenstate with <S^2> ~ 0 is selected instead of
    the overall sector minimum (an M_s = 0 sector also contains triplet
    components).
    """
    if not h.is_hermitian():
        raise ContractError("exact_ground requires a Hermitian PauliSum")
    if h.n_qubits > 12:
        raise ValueError("diagonalization limited to 12 qubits")
    if n_alpha is None:
        basis = list(range(1 << h.n_qubits))
    else:
        basis = sector_basis(h.n_qubits, n_alpha, n_beta, n_orb)
    if not basis:
        raise SectorError("requested sector is empty")
    mat = _restricted_matrix(h, basis)
    vals, vecs = np.linalg.eigh(mat)
    col = 0
    if singlet:
        from .pauli import total_spin_squared

        s2 = _restricted_matrix(total_spin_squared(h.n_qubits // 2), basis)
        for k in range(len(vals)):
            if abs((vecs[:, k].conj() @ s2 @ vecs[:, k]).real) < 0.1:
                col = k
                break
        else:
            raise SectorError("no singlet eigenstate found in the sector")
    amps = np.zeros(1 << h.n_qubits, dtype=np.complex128)
    amps[np.asarray(basis)] = vecs[:, col]
    return float(vals[col]), StateVector(h.n_qubits, amps)
