"""Pauli-string algebra and the Jordan-Wigner map.

Qubit i represents spin orbital i; ladder operators carry a Z parity
string over all lower qubit indices. Statevectors elsewhere in the
package are little-endian (qubit 0 is the least significant bit), and
to_matrix follows the same convention.
"""

from functools import reduce

import numpy as np

from .errors import ContractError
from .hamiltonian import FermionTerm

SIMPLIFY_TOL = 1e-12

# single-qubit products: (left, right) -> (phase, result axis); None = identity
_MUL = {
    ("X", "X"): (1, None), ("Y", "Y"): (1, None), ("Z", "Z"): (1, None),
    ("X", "Y"): (1j, "Z"), ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"), ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"), ("X", "Z"): (-1j, "Y"),
}

_AXIS_MATRIX = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class PauliString:
    """Tensor product of X/Y/Z factors keyed by qubit index (identity elsewhere)."""

    __slots__ = ("axes", "x_mask", "z_mask", "n_y", "_hash")

    def __init__(self, axes=()):
        pairs = tuple(sorted((int(q), ax) for q, ax in dict(axes).items()))
        for _, ax in pairs:
            if ax not in ("X", "Y", "Z"):
                raise ValueError(f"invalid Pauli axis {ax!r}")
        object.__setattr__(self, "axes", pairs)
        x = z = ny = 0
        for q, ax in pairs:
            if ax in ("X", "Y"):
                x |= 1 << q
            if ax in ("Z", "Y"):
                z |= 1 << q
            if ax == "Y":
                ny += 1
        object.__setattr__(self, "x_mask", x)
        object.__setattr__(self, "z_mask", z)
        object.__setattr__(self, "n_y", ny)
        object.__setattr__(self, "_hash", hash(pairs))

    def __setattr__(self, *_):
        raise AttributeError("PauliString is immutable")

    @property
    def weight(self):
        return len(self.axes)

    def is_identity(self):
        return not self.axes

    def max_qubit(self):
        return self.axes[-1][0] if self.axes else -1

    def __eq__(self, other):
        return isinstance(other, PauliString) and self.axes == other.axes

    def __lt__(self, other):
        return self.axes < other.axes

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return " ".join(f"{ax}{q}" for q, ax in self.axes) or "I"

    def basis_phases(self, n_qubits):
        """phase(j) with P|j> = phase(j)|j ^ x_mask>, for all basis states j."""
        idx = np.arange(1 << n_qubits)
        par = np.zeros(1 << n_qubits, dtype=np.int64)
        z = self.z_mask
        q = 0
        while z:
            if z & 1:
                par += (idx >> q) & 1
            z >>= 1
            q += 1
        return (1j ** self.n_y) * np.where(par & 1, -1.0, 1.0)


IDENTITY = PauliString()


def _mul_strings(a, b):
    """Product a*b -> (phase, PauliString)."""
    phase = 1 + 0j
    axes = dict(a.axes)
    for q, ax in b.axes:
        if q not in axes:
            axes[q] = ax
            continue
        ph, res = _MUL[(axes[q], ax)]
        phase *= ph
        if res is None:
            del axes[q]
        else:
            axes[q] = res
    return phase, PauliString(axes.items())


class PauliSum:
    """Complex-weighted sum of Pauli strings on a fixed qubit register."""

    __slots__ = ("terms", "n_qubits", "_prepared")

    def __init__(self, n_qubits, terms=None):
        self.terms = dict(terms or {})
        self.n_qubits = n_qubits
        self._prepared = None
        for s in self.terms:
            if s.max_qubit() >= n_qubits:
                raise ValueError(f"string {s} exceeds register of {n_qubits} qubits")

    @classmethod
    def zero(cls, n_qubits):
        return cls(n_qubits)

    @classmethod
    def from_terms(cls, n_qubits, pairs):
        out = cls(n_qubits)
        for s, c in pairs:
            out._accumulate(s, c)
        return out

    def _accumulate(self, string, coeff):
        cur = self.terms.get(string, 0j) + coeff
        if cur == 0:
            self.terms.pop(string, None)
        else:
            self.terms[string] = cur
        self._prepared = None

    def __add__(self, other):
        out = PauliSum(self.n_qubits, self.terms)
        for s, c in other.terms.items():
            out._accumulate(s, c)
        return out

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, scalar):
        return PauliSum(
            self.n_qubits, {s: c * scalar for s, c in self.terms.items()}
        )

    __rmul__ = __mul__

    def __matmul__(self, other):
        out = PauliSum(self.n_qubits)
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                ph, s = _mul_strings(s1, s2)
                out._accumulate(s, c1 * c2 * ph)
        return out

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].axes)

    def identity_coefficient(self):
        return self.terms.get(IDENTITY, 0j)

    def is_hermitian(self, tol=1e-10):
        return all(abs(c.imag) <= tol for c in self.terms.values())

    def conjugate(self):
        return PauliSum(self.n_qubits, {s: c.conjugate() for s, c in self.terms.items()})

    def to_text(self):
        """One `coeff · string` line per term, 17 significant digits."""
        lines = []
        for s, c in self.sorted_terms():
            coeff = f"{c.real:+.17g}" if c.imag == 0 else f"({c.real:+.17g}{c.imag:+.17g}j)"
            lines.append(f"{coeff} · {s}")
        return "\n".join(lines)


def simplify(s, tol=SIMPLIFY_TOL):
    """Combine like strings, drop |coeff| < tol, fix lexicographic order."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    combined = {}
    for string, coeff in s.terms.items():
        combined[string] = combined.get(string, 0j) + coeff
    ordered = {}
    for string in sorted(combined, key=lambda p: p.axes):
        c = combined[string]
        if abs(c) >= tol:
            ordered[string] = c
    return PauliSum(s.n_qubits, ordered)


def jw_ladder(i, dagger, n):
    """Jordan-Wigner image of a_i (dagger=False) or a_i^+ (dagger=True)."""
    if not 0 <= i < n:
        raise IndexError(f"orbital index {i} outside register of {n} qubits")
    chain = [(q, "Z") for q in range(i)]
    sx = PauliString(chain + [(i, "X")])
    sy = PauliString(chain + [(i, "Y")])
    y_coeff = -0.5j if dagger else 0.5j
    return PauliSum(n, {sx: 0.5 + 0j, sy: y_coeff})


def map_term(term, n):
    """Jordan-Wigner image of a FermionTerm, simplified."""
    factors = [jw_ladder(i, True, n) for i in term.create]
    factors += [jw_ladder(i, False, n) for i in term.annihilate]
    prod = reduce(lambda a, b: a @ b, factors)
    return simplify(prod * term.coeff)


def _number_operator_sum(dh, n):
    """Pauli image of the one-body-diagonal plus Coulomb parts."""
    out = PauliSum(n)
    for i, hii in dh.one_body_diag:
        out += map_term(FermionTerm(hii, (i,), (i,)), n)
    for i, j, w in dh.coulomb:
        # n_i n_j = -a_i^+ a_j^+ a_i a_j for i < j
        out += map_term(FermionTerm(-w, (i, j), (i, j)), n)
    return out


def assemble_measurement_hamiltonian(dh):
    """Full (untruncated) Hamiltonian as a Hermitian PauliSum.

    Includes the identity component; e_core is reported separately by the
    decomposition and never folded in.
    """
    n = dh.n_so
    out = _number_operator_sum(dh, n)
    for i, j, hij in dh.one_body_offdiag:
        out += map_term(FermionTerm(hij, (i,), (j,)), n)
        out += map_term(FermionTerm(hij, (j,), (i,)), n)
    for t in dh.non_coulomb_sorted:
        out += map_term(t, n)
    out = simplify(out)
    if not out.is_hermitian():
        raise ContractError("assembled Hamiltonian has non-real coefficients")
    return out


def total_spin_squared(n_orb):
    """S^2 as a PauliSum over 2*n_orb blocked spin orbitals.

    Used to tell singlet and triplet eigenstates apart inside one
    particle-number sector (they share N_alpha and N_beta at M_s = 0).
    """
    n = 2 * n_orb
    s_plus = PauliSum(n)
    s_z = PauliSum(n)
    for p in range(n_orb):
        s_plus += jw_ladder(p, True, n) @ jw_ladder(p + n_orb, False, n)
        s_z += 0.5 * (jw_ladder(p, True, n) @ jw_ladder(p, False, n))
        s_z -= 0.5 * (jw_ladder(p + n_orb, True, n) @ jw_ladder(p + n_orb, False, n))
    s_minus = PauliSum(n)
    for p in range(n_orb):
        s_minus += jw_ladder(p + n_orb, True, n) @ jw_ladder(p, False, n)
    return simplify(s_minus @ s_plus + s_z @ s_z + s_z)


def to_matrix(s):
    """Dense matrix of a PauliSum (little-endian kron expansion)."""
    if s.n_qubits > 12:
        raise ValueError("matrix expansion limited to 12 qubits")
    dim = 1 << s.n_qubits
    mat = np.zeros((dim, dim), dtype=complex)
    cols = np.arange(dim)
    for string, coeff in s.terms.items():
        rows = cols ^ string.x_mask
        mat[rows, cols] += coeff * string.basis_phases(s.n_qubits)
    return mat
