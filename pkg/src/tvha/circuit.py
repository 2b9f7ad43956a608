"""Parameterized gate IR and ansatz compilation.

Every multi-qubit Pauli exponential compiles to the standard pattern:
basis changes onto the Z axis, a CNOT parity ladder onto the highest
active qubit, one central Rz, and the mirrored ladder/basis gates. Gate
angles are linear expressions over a shared parameter vector so one
compiled circuit serves every optimizer iterate.
"""

from dataclasses import dataclass

from .errors import InvalidTerm
from .hamiltonian import FermionTerm
from .pauli import PauliSum, jw_ladder, map_term, simplify

ROTATION_KINDS = ("rx", "ry", "rz")


@dataclass(frozen=True)
class AngleExpr:
    """Rotation angle: `coeff` radians, optionally scaled by params[param]."""

    coeff: float
    param: int | None = None

    @classmethod
    def const(cls, value):
        return cls(float(value), None)

    @classmethod
    def linear(cls, param, coeff):
        return cls(float(coeff), int(param))

    def value(self, params):
        if self.param is None:
            return self.coeff
        return self.coeff * params[self.param]

    def scaled(self, factor):
        return AngleExpr(self.coeff * factor, self.param)

    def text(self):
        if self.param is None:
            return f"c{self.coeff:.17g}"
        return f"p{self.param}*{self.coeff:.17g}"


@dataclass(frozen=True)
class Gate:
    kind: str  # x | h | rx | ry | rz | cnot
    qubits: tuple
    angle: AngleExpr | None = None

    def text(self):
        name = self.kind.upper()
        qubits = " ".join(str(q) for q in self.qubits)
        if self.angle is None:
            return f"{name} {qubits}"
        return f"{name} {qubits} {self.angle.text()}"


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    n_params: int
    gates: tuple

    def __post_init__(self):
        for g in self.gates:
            if any(not 0 <= q < self.n_qubits for q in g.qubits):
                raise ValueError(f"gate {g} outside register of {self.n_qubits} qubits")
            if g.kind == "cnot" and g.qubits[0] == g.qubits[1]:
                raise ValueError("CNOT control and target must differ")
            if g.angle is not None and g.angle.param is not None:
                if not 0 <= g.angle.param < self.n_params:
                    raise ValueError(f"gate {g} references parameter out of range")

    def to_text(self):
        return "\n".join(g.text() for g in self.gates)


def concat(*circuits):
    """Join circuits on one register; later parameter indices are shifted."""
    n_qubits = max(c.n_qubits for c in circuits)
    gates = []
    offset = 0
    for c in circuits:
        for g in c.gates:
            angle = g.angle
            if angle is not None and angle.param is not None:
                angle = AngleExpr(angle.coeff, angle.param + offset)
            gates.append(Gate(g.kind, g.qubits, angle))
        offset += c.n_params
    return Circuit(n_qubits, offset, tuple(gates))


def hf_occupation(n_qubits, n_alpha, n_beta, n_orb):
    """Occupied qubits of the blocked aufbau determinant."""
    if n_orb * 2 != n_qubits:
        raise ValueError("blocked ordering requires n_qubits == 2 * n_orb")
    if n_alpha > n_orb or n_beta > n_orb:
        raise ValueError("occupation exceeds block size")
    return tuple(range(n_alpha)) + tuple(range(n_orb, n_orb + n_beta))


def hf_prep(n_qubits, n_alpha, n_beta, n_orb):
    """X gates preparing the blocked Hartree-Fock bitstring from |0...0>."""
    occ = hf_occupation(n_qubits, n_alpha, n_beta, n_orb)
    return Circuit(n_qubits, 0, tuple(Gate("x", (q,)) for q in occ))


def exp_pauli(string, coeff, theta):
    """Gate list for exp(i * theta * coeff * P).

    `theta` is an AngleExpr slot (use AngleExpr.const(1.0) for a fixed
    evolution). The central Rz carries angle -2 * coeff * theta; the CNOT
    ladder accumulates parity on the highest active qubit.
    """
    if string.is_identity():
        raise InvalidTerm("cannot exponentiate the identity string")
    gates = []
    active = [q for q, _ in string.axes]
    for q, ax in string.axes:
        if ax == "X":
            gates.append(Gate("h", (q,)))
        elif ax == "Y":
            gates.append(Gate("rx", (q,), AngleExpr.const(_HALF_PI)))
    for a, b in zip(active, active[1:]):
        gates.append(Gate("cnot", (a, b)))
    gates.append(Gate("rz", (active[-1],), theta.scaled(-2.0 * coeff)))
    for a, b in reversed(list(zip(active, active[1:]))):
        gates.append(Gate("cnot", (a, b)))
    for q, ax in reversed(string.axes):
        if ax == "X":
            gates.append(Gate("h", (q,)))
        elif ax == "Y":
            gates.append(Gate("rx", (q,), AngleExpr.const(-_HALF_PI)))
    return gates


_HALF_PI = 1.5707963267948966


def _exp_block(psum, theta):
    """exp(i * theta * psum) for a Hermitian PauliSum, one string at a time.

    First-order splitting in the deterministic lexicographic string order;
    identity components contribute a global phase only and are skipped.
    """
    gates = []
    for string, coeff in psum.sorted_terms():
        if string.is_identity():
            continue
        gates.extend(exp_pauli(string, coeff.real, theta))
    return gates


def _coulomb_sum(dh):
    n = dh.n_so
    out = PauliSum(n)
    for i, j, w in dh.coulomb:
        out += map_term(FermionTerm(-w, (i, j), (i, j)), n)
    return simplify(out)


def _one_body_sum(dh, mode):
    n = dh.n_so
    out = PauliSum(n)
    for i, hii in dh.one_body_diag:
        out += map_term(FermionTerm(hii, (i,), (i,)), n)
    if mode == "full":
        for i, j, hij in dh.one_body_offdiag:
            out += map_term(FermionTerm(hij, (i,), (j,)), n)
            out += map_term(FermionTerm(hij, (j,), (i,)), n)
    elif mode != "diagonal":
        raise ValueError(f"unknown one_body_mode {mode!r}")
    return simplify(out)


def _non_coulomb_sum(dh, kept):
    """Pauli image of the truncated non-Coulomb part.

    Summing before compilation lets strings from different fermionic terms
    cancel (symmetric molecules lose entire strings here), exactly as the
    measurement Hamiltonian does.
    """
    n = dh.n_so
    out = PauliSum(n)
    for t in kept:
        out += map_term(t, n)
    return simplify(out)


def build_tvha(dh, trunc, n_steps, one_body_mode="diagonal"):
    """Truncated variational Hamiltonian ansatz circuit.

    Per step, the non-Coulomb block is applied first, then the Coulomb
    block, then the one-body block; the three blocks of step n share
    parameter indices 3(n-1), 3(n-1)+1, 3(n-1)+2. Each block compiles its
    summed Pauli image string by string in lexicographic order.
    """
    if n_steps < 1:
        raise ValueError("need at least one Trotter step")
    n = dh.n_so
    blocks = (
        _non_coulomb_sum(dh, trunc.kept),
        _coulomb_sum(dh),
        _one_body_sum(dh, one_body_mode),
    )
    gates = []
    for step in range(n_steps):
        base = 3 * step
        for slot, psum in enumerate(blocks):
            gates.extend(_exp_block(psum, AngleExpr.linear(base + slot, 1.0)))
    return Circuit(n, 3 * n_steps, tuple(gates))


def _spin(q, n_orb):
    return 0 if q < n_orb else 1


def uccsd_excitations(n_so, n_alpha, n_beta):
    """Spin-conserving singles and S_z-conserving doubles from the HF state."""
    n_orb = n_so // 2
    occ = set(hf_occupation(n_so, n_alpha, n_beta, n_orb))
    virt = [q for q in range(n_so) if q not in occ]
    occ = sorted(occ)
    singles = [
        (i, a) for i in occ for a in virt if _spin(i, n_orb) == _spin(a, n_orb)
    ]
    occ_pairs = [(i, j) for i in occ for j in occ if i < j]
    virt_pairs = [(a, b) for a in virt for b in virt if a < b]
    doubles = []
    for i, j in occ_pairs:
        si, sj = _spin(i, n_orb), _spin(j, n_orb)
        for a, b in virt_pairs:
            if sorted((si, sj)) == sorted((_spin(a, n_orb), _spin(b, n_orb))):
                doubles.append((i, j, a, b))
    return singles, doubles


def build_uccsd(n_so, n_alpha, n_beta):
    """Unitary singles-doubles ansatz, one parameter per excitation.

    Each generator t*(excitation - h.c.) is mapped to Pauli strings and
    Trotterized in a single pass; at zero parameters the circuit is the
    identity, so the energy of the prepared HF state is the HF energy.
    """
    singles, doubles = uccsd_excitations(n_so, n_alpha, n_beta)
    if not singles and not doubles:
        raise ValueError("no excitations: need at least one occupied and one virtual")
    gates = []
    param = 0
    for i, a in singles:
        gen = map_term(FermionTerm(1.0, (a,), (i,)), n_so) - map_term(
            FermionTerm(1.0, (i,), (a,)), n_so
        )
        hermitian = simplify(gen * -1j)
        gates.extend(_exp_block(hermitian, AngleExpr.linear(param, 1.0)))
        param += 1
    for i, j, a, b in doubles:
        gen = map_term(FermionTerm(1.0, (a, b), (i, j)), n_so) - map_term(
            FermionTerm(1.0, (i, j), (a, b)), n_so
        )
        hermitian = simplify(gen * -1j)
        gates.extend(_exp_block(hermitian, AngleExpr.linear(param, 1.0)))
        param += 1
    return Circuit(n_so, param, tuple(gates))


def _hea_prep_bits(n_qubits, layers, target_bits):
    """Input bits whose image under the CNOT entanglement network is the
    target bitstring (zero-angle rotations are transparent, the chains are
    not, so the NOT-gate placement depends on qubit and layer count)."""
    bits = list(target_bits)
    for _ in range(layers):
        # invert one reverse-linear chain: gates ran q = n-2 .. 0, so the
        # inverse applies CNOT(q, q+1) for q = 0 .. n-2
        for q in range(n_qubits - 1):
            bits[q + 1] ^= bits[q]
    return bits


def build_hea(n_qubits, n_alpha, n_beta, n_orb, layers=3):
    """Hardware-efficient ansatz with reverse-linear entanglement.

    NOT gates prepare the preimage of the HF bitstring under the
    entanglement chains, then each layer applies a parameterized RY and RZ
    rotation on every qubit followed by the CNOT chain emitted from qubit
    n-2 down to 0; a final rotation layer closes the circuit. At zero
    parameters the output is exactly the HF bitstring.
    """
    if layers < 1:
        raise ValueError("need at least one layer")
    occ = hf_occupation(n_qubits, n_alpha, n_beta, n_orb)
    target = [1 if q in occ else 0 for q in range(n_qubits)]
    prep = _hea_prep_bits(n_qubits, layers, target)
    gates = [Gate("x", (q,)) for q in range(n_qubits) if prep[q]]
    param = 0

    def rotation_layer():
        nonlocal param
        for kind in ("ry", "rz"):
            for q in range(n_qubits):
                gates.append(Gate(kind, (q,), AngleExpr.linear(param, 1.0)))
                param += 1

    for _ in range(layers):
        rotation_layer()
        for q in range(n_qubits - 2, -1, -1):
            gates.append(Gate("cnot", (q, q + 1)))
    rotation_layer()
    return Circuit(n_qubits, param, tuple(gates))


def metrics(c):
    """CNOT count, parameter count, and qubit-dependency depth."""
    cnots = sum(1 for g in c.gates if g.kind == "cnot")
    depth_per_qubit = [0] * c.n_qubits
    for g in c.gates:
        level = 1 + max(depth_per_qubit[q] for q in g.qubits)
        for q in g.qubits:
            depth_per_qubit[q] = level
    return {
        "cnot_count": cnots,
        "param_count": c.n_params,
        "depth": max(depth_per_qubit, default=0),
    }


def _angles_mergeable(a, b):
    return a.param == b.param


def _is_zero_rotation(g):
    return (
        g.kind in ROTATION_KINDS
        and g.angle.coeff == 0.0
    )


def peephole(c):
    """Cancel and merge adjacent gates to a fixed point, preserving the unitary.

    Rules, applied to gates adjacent in list order: identical CNOT pairs
    cancel; equal-kind rotations on one qubit merge when both are constants
    or share a parameter index; zero-angle rotations vanish; self-inverse
    single-qubit pairs (H H, X X) vanish. A single stack pass reaches the
    fixed point of these rules.
    """
    stack = []
    for gate in c.gates:
        g = gate
        while g is not None:
            if _is_zero_rotation(g):
                g = None
                break
            if not stack:
                break
            top = stack[-1]
            if g.kind == "cnot":
                if top.kind == "cnot" and top.qubits == g.qubits:
                    stack.pop()
                    g = None
                break
            if g.kind in ("h", "x"):
                if top.kind == g.kind and top.qubits == g.qubits:
                    stack.pop()
                    g = None
                break
            if g.kind in ROTATION_KINDS:
                if (
                    top.kind == g.kind
                    and top.qubits == g.qubits
                    and _angles_mergeable(top.angle, g.angle)
                ):
                    stack.pop()
                    g = Gate(
                        g.kind,
                        g.qubits,
                        AngleExpr(top.angle.coeff + g.angle.coeff, g.angle.param),
                    )
                    continue  # merged gate may collapse further
                break
            break
        if g is not None:
            stack.append(g)
    return Circuit(c.n_qubits, c.n_params, tuple(stack))
