"""FCIDUMP parsing and expansion of spatial integrals to spin orbitals.

Spin orbitals use blocked ordering: 0..n_orb-1 are alpha, n_orb..2n_orb-1
are beta. The electronic Hamiltonian is

    H = sum_ij h[i,j] a_i^+ a_j
      + 1/2 sum_ijkl g[i,j,k,l] a_i^+ a_j^+ a_k a_l  +  e_core

with g[i,j,k,l] == g[j,i,l,k].
"""

import json
import os
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, ParseError

SYMMETRY_TOL = 1e-12
DUPLICATE_TOL = 1e-10


@dataclass(frozen=True)
class SpatialIntegrals:
    """Spatial-orbital integrals: (pq|rs) in chemist convention, Hartree."""

    n_orb: int
    h1: np.ndarray
    eri: np.ndarray
    e_core: float

    def validate(self):
        if not np.allclose(self.h1, self.h1.T, atol=SYMMETRY_TOL, rtol=0.0):
            raise ConsistencyError("h1 is not symmetric")
        e = self.eri
        for perm in ((1, 0, 2, 3), (0, 1, 3, 2), (2, 3, 0, 1)):
            if not np.allclose(e, e.transpose(perm), atol=SYMMETRY_TOL, rtol=0.0):
                raise ConsistencyError(f"eri violates 8-fold symmetry (permutation {perm})")
        return self


@dataclass(frozen=True)
class SpinOrbitalIntegrals:
    """Spin-orbital integrals in the two-body operator convention above."""

    n_so: int
    h: np.ndarray
    g: np.ndarray
    e_core: float

    def validate(self):
        if not np.allclose(self.h, self.h.T, atol=SYMMETRY_TOL, rtol=0.0):
            raise ConsistencyError("h is not Hermitian")
        if not np.allclose(
            self.g, self.g.transpose(1, 0, 3, 2), atol=SYMMETRY_TOL, rtol=0.0
        ):
            raise ConsistencyError("g violates g[i,j,k,l] == g[j,i,l,k]")
        # required for a Hermitian two-body operator; automatic for tensors
        # built from real chemist-convention integrals
        if not np.allclose(
            self.g, self.g.transpose(3, 2, 1, 0), atol=SYMMETRY_TOL, rtol=0.0
        ):
            raise ConsistencyError("g violates Hermiticity g[i,j,k,l] == g[l,k,j,i]")
        return self


@dataclass(frozen=True)
class FixtureMetadata:
    """Reference data recorded alongside each fixture (totals, Hartree)."""

    name: str
    n_alpha: int
    n_beta: int
    e_core: float
    e_hf: float
    e_fci: float
    basis: str
    geometry: str

    def validate(self, n_so=None):
        if self.e_fci > self.e_hf + 1e-12:
            raise ConsistencyError(
                f"{self.name}: e_fci {self.e_fci} above e_hf {self.e_hf}"
            )
        if n_so is not None and self.n_alpha + self.n_beta > n_so:
            raise ConsistencyError(f"{self.name}: electron count exceeds spin orbitals")
        return self


def parse_fcidump(text):
    """Parse FCIDUMP text into SpatialIntegrals.

    Body records are `value i j k l` with 1-based indices: k=l=0 fills the
    one-body matrix, the all-zero record sets the core energy, everything
    else fills the two-electron tensor under 8-fold symmetry.
    """
    lines = text.splitlines()
    header_end = None
    header_parts = []
    for ln, line in enumerate(lines):
        header_parts.append(line)
        if "&END" in line or line.strip().endswith("/"):
            header_end = ln
            break
    if header_end is None:
        raise ParseError("line 1: FCIDUMP namelist has no &END terminator")
    header = " ".join(header_parts)
    if "&FCI" not in header:
        raise ParseError("line 1: missing &FCI namelist")
    fields = {}
    cleaned = header.replace("&FCI", " ").replace("&END", " ").rstrip(" /")
    for chunk in cleaned.replace(",", " ").split():
        if "=" in chunk:
            key, _, val = chunk.partition("=")
            try:
                fields[key.strip().upper()] = int(val)
            except ValueError as exc:
                raise ParseError(f"line 1: bad namelist value {chunk!r}") from exc
    if "NORB" not in fields or "NELEC" not in fields:
        raise ParseError("line 1: namelist must define NORB and NELEC")
    n = fields["NORB"]
    if n < 1:
        raise ParseError("line 1: NORB must be positive")

    h1 = np.zeros((n, n))
    eri = np.zeros((n, n, n, n))
    e_core = 0.0
    seen = {}

    def canonical(i, j, k, l):
        ij = (i, j) if i >= j else (j, i)
        kl = (k, l) if k >= l else (l, k)
        return max(ij, kl) + min(ij, kl)

    for ln in range(header_end + 1, len(lines)):
        raw = lines[ln].strip()
        if not raw:
            continue
        toks = raw.split()
        if len(toks) != 5:
            raise ParseError(f"line {ln + 1}: expected `value i j k l`, got {raw!r}")
        try:
            val = float(toks[0])
            i, j, k, l = (int(t) for t in toks[1:])
        except ValueError as exc:
            raise ParseError(f"line {ln + 1}: unparsable record {raw!r}") from exc
        if i == j == k == l == 0:
            key = (0, 0, 0, 0)
        elif k == 0 and l == 0:
            if not (1 <= i <= n and 1 <= j <= n):
                raise IndexError(f"line {ln + 1}: orbital index outside [1, {n}]")
            key = ("h",) + canonical(i, j, i, j)[:2]
        else:
            if not all(1 <= x <= n for x in (i, j, k, l)):
                raise IndexError(f"line {ln + 1}: orbital index outside [1, {n}]")
            key = canonical(i, j, k, l)
        if key in seen and abs(seen[key] - val) > DUPLICATE_TOL:
            raise ConsistencyError(
                f"line {ln + 1}: conflicting duplicate entry ({seen[key]} vs {val})"
            )
        seen[key] = val
        if key == (0, 0, 0, 0):
            e_core = val
        elif key[0] == "h":
            h1[i - 1, j - 1] = h1[j - 1, i - 1] = val
        else:
            p, q, r, s = i - 1, j - 1, k - 1, l - 1
            for a, b, c, d in (
                (p, q, r, s), (q, p, r, s), (p, q, s, r), (q, p, s, r),
                (r, s, p, q), (s, r, p, q), (r, s, q, p), (s, r, q, p),
            ):
                eri[a, b, c, d] = val
    return SpatialIntegrals(n_orb=n, h1=h1, eri=eri, e_core=e_core).validate()


def write_fcidump(si, n_elec=0, ms2=0):
    """Canonical FCIDUMP text for SpatialIntegrals (17 significant digits)."""
    n = si.n_orb
    lines = [f"&FCI NORB={n},NELEC={n_elec},MS2={ms2},&END"]
    for i in range(n):
        for j in range(i + 1):
            for k in range(i + 1):
                l_max = j if k == i else k
                for l in range(l_max + 1):
                    v = si.eri[i, j, k, l]
                    if v != 0.0:
                        lines.append(f"{v:.17g} {i + 1} {j + 1} {k + 1} {l + 1}")
    for i in range(n):
        for j in range(i + 1):
            if si.h1[i, j] != 0.0:
                lines.append(f"{si.h1[i, j]:.17g} {i + 1} {j + 1} 0 0")
    lines.append(f"{si.e_core:.17g} 0 0 0 0")
    return "\n".join(lines) + "\n"


def spatial_to_spin(si):
    """Expand spatial integrals to blocked spin orbitals.

    The two-body tensor is arranged so that the operator form in the module
    docstring (with its 1/2 prefactor and a_i^+ a_j^+ a_k a_l order)
    reproduces the physical Hamiltonian: g[i,j,k,l] = (P_i P_l | P_j P_k)
    with spin deltas between i,l and j,k.
    """
    n = si.n_orb
    n_so = 2 * n
    h = np.zeros((n_so, n_so))
    h[:n, :n] = si.h1
    h[n:, n:] = si.h1
    g = np.zeros((n_so, n_so, n_so, n_so))
    # g[i,j,k,l] = (P_i P_l | P_j P_k), nonzero when spin(i)==spin(l) and
    # spin(j)==spin(k); one assignment per spin-block combination
    block = np.einsum("pqrs->prsq", si.eri)
    for off_i in (0, n):
        for off_j in (0, n):
            g[
                off_i : off_i + n,
                off_j : off_j + n,
                off_j : off_j + n,
                off_i : off_i + n,
            ] = block
    return SpinOrbitalIntegrals(n_so=n_so, h=h, g=g, e_core=si.e_core).validate()


def load_fixture(fixture_dir):
    """Load `FCIDUMP` + `meta.json` from a fixture directory."""
    fcid = os.path.join(fixture_dir, "FCIDUMP")
    meta_path = os.path.join(fixture_dir, "meta.json")
    for p in (fcid, meta_path):
        if not os.path.exists(p):
            raise IOError(f"missing fixture file: {p}")
    with open(fcid, encoding="utf-8") as f:
        spatial = parse_fcidump(f.read())
    with open(meta_path, encoding="utf-8") as f:
        raw = json.load(f)
    try:
        meta = FixtureMetadata(**raw)
    except TypeError as exc:
        raise ConsistencyError(f"{meta_path}: bad metadata keys ({exc})") from exc
    ints = spatial_to_spin(spatial)
    meta.validate(n_so=ints.n_so)
    if abs(meta.e_core - spatial.e_core) > 1e-12:
        raise ConsistencyError(f"{meta.name}: e_core differs between FCIDUMP and meta")
    return ints, meta
