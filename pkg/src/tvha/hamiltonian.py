"""Three-way decomposition of the electronic Hamiltonian and its truncation.

The two-body part splits into Coulomb terms (index pattern i=l,j=k or
i=k,j=l, reducible to signed density-density pair weights) and the
remaining non-Coulomb terms. Non-Coulomb terms are stored antisymmetrized
(restricted to i<j, k<l, which quarters the term count without changing
the operator), sorted by descending magnitude with Hermitian-conjugate
partners adjacent, and truncated by cumulative-magnitude fraction.
"""

import bisect
from dataclasses import dataclass

import numpy as np

DROP_TOL = 1e-12


@dataclass(frozen=True)
class FermionTerm:
    """coeff * a+_{create[0]} a+_{create[1]} ... a_{annihilate[0]} ..."""

    coeff: float
    create: tuple
    annihilate: tuple

    def conjugate(self):
        # (a+_i a+_j a_k a_l)^+ = a+_k a+_l a_i a_j for ordered index pairs
        return FermionTerm(self.coeff, self.annihilate, self.create)


@dataclass(frozen=True)
class DecomposedHamiltonian:
    """One-body / Coulomb / non-Coulomb split of the electronic Hamiltonian.

    non_coulomb_sorted holds operator coefficients (half the antisymmetrized
    magnitude) in descending |coefficient| order; the term at each even index
    is followed by its Hermitian conjugate.
    """

    n_so: int
    one_body_diag: tuple  # (i, h_ii)
    one_body_offdiag: tuple  # (i, j, h_ij) with i < j
    coulomb: tuple  # (i, j, weight) with i < j, multiplying n_i n_j
    non_coulomb_sorted: tuple  # FermionTerm pairs, conjugates adjacent
    e_core: float

    def pair_count(self):
        return len(self.non_coulomb_sorted) // 2

    def pair(self, p):
        return self.non_coulomb_sorted[2 * p : 2 * p + 2]

    def magnitude_prefix(self):
        """Cumulative sum of |coeff| along the sorted non-Coulomb terms."""
        mags = np.abs([t.coeff for t in self.non_coulomb_sorted])
        return np.concatenate(([0.0], np.cumsum(mags)))


@dataclass(frozen=True)
class TruncationResult:
    kept: tuple  # prefix of non_coulomb_sorted
    s_cut: int
    p_actual: float
    p_target: float


def classify(ints):
    """Split SpinOrbitalIntegrals into the three-way decomposition."""
    n = ints.n_so
    h = ints.h
    g = ints.g

    one_diag = tuple(
        (i, float(h[i, i])) for i in range(n) if abs(h[i, i]) >= DROP_TOL
    )
    one_off = tuple(
        (i, j, float(h[i, j]))
        for i in range(n)
        for j in range(i + 1, n)
        if abs(h[i, j]) >= DROP_TOL
    )

    coulomb = []
    for i in range(n):
        for j in range(i + 1, n):
            # i=l,j=k pattern enters positively, i=k,j=l with the fermionic
            # reordering sign; both orderings of (i,j) contribute
            w = 0.5 * (g[i, j, j, i] + g[j, i, i, j] - g[i, j, i, j] - g[j, i, j, i])
            if abs(w) >= DROP_TOL:
                coulomb.append((i, j, float(w)))

    groups = []
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for a, (i, j) in enumerate(pairs):
        for (k, l) in pairs[a + 1 :]:
            anti = g[i, j, k, l] - g[j, i, k, l] - g[i, j, l, k] + g[j, i, l, k]
            coeff = 0.5 * float(anti)
            if abs(coeff) >= DROP_TOL:
                groups.append((abs(coeff), (i, j, k, l), coeff))
    # descending magnitude; equal magnitudes beyond conjugate pairing are
    # ordered by index tuple for reproducibility
    groups.sort(key=lambda t: (-t[0], t[1]))
    terms = []
    for _, (i, j, k, l), coeff in groups:
        t = FermionTerm(coeff, (i, j), (k, l))
        terms.extend((t, t.conjugate()))

    return DecomposedHamiltonian(
        n_so=n,
        one_body_diag=one_diag,
        one_body_offdiag=one_off,
        coulomb=tuple(coulomb),
        non_coulomb_sorted=tuple(terms),
        e_core=ints.e_core,
    )


def _admissible_cuts(dh):
    """s_cut values at conjugate-pair boundaries (0, 2, 4, ...)."""
    return range(0, len(dh.non_coulomb_sorted) + 1, 2)


def admissible_thresholds(dh):
    """All attainable magnitude fractions, ascending, deduplicated."""
    prefix = dh.magnitude_prefix()
    total = prefix[-1]
    if total == 0.0:
        return [0.0]
    out = []
    for s in _admissible_cuts(dh):
        p = prefix[s] / total
        if not out or p != out[-1]:
            out.append(float(p))
    return out


def truncate(dh, p_target):
    """Keep the shortest sorted prefix whose fraction best matches p_target.

    Cuts never split a conjugate pair; ties go to the smaller cut.
    """
    if not 0.0 <= p_target <= 1.0:
        raise ValueError(f"p_target must be in [0, 1], got {p_target}")
    prefix = dh.magnitude_prefix()
    total = prefix[-1]
    best_s, best_p, best_err = 0, 0.0, abs(p_target)
    if total > 0.0:
        for s in _admissible_cuts(dh):
            p = prefix[s] / total
            err = abs(p - p_target)
            if err < best_err - 1e-15:
                best_s, best_p, best_err = s, float(p), err
    return TruncationResult(
        kept=dh.non_coulomb_sorted[:best_s],
        s_cut=best_s,
        p_actual=best_p,
        p_target=float(p_target),
    )


def hf_energy(dh, n_alpha, n_beta):
    """<HF|H|HF> for the blocked aufbau determinant, excluding e_core.

    Single-determinant expectation: diagonal one-body terms plus Coulomb
    pair weights over occupied orbitals. Off-diagonal one-body and
    non-Coulomb terms connect different determinants and drop out; the
    Coulomb weights already carry the exchange signs.
    """
    n_orb = dh.n_so // 2
    if n_alpha > n_orb or n_beta > n_orb:
        raise ValueError("occupation exceeds available orbitals per spin block")
    occ = set(range(n_alpha)) | set(range(n_orb, n_orb + n_beta))
    e = sum(v for i, v in dh.one_body_diag if i in occ)
    e += sum(w for i, j, w in dh.coulomb if i in occ and j in occ)
    return float(e)


def histogram_rows(dh):
    """(class, magnitude) rows behind the term-distribution histograms."""
    rows = [("one_body", abs(v)) for _, v in dh.one_body_diag]
    rows += [("one_body", abs(v)) for _, _, v in dh.one_body_offdiag]
    rows += [("coulomb", abs(w)) for _, _, w in dh.coulomb]
    rows += [("non_coulomb", abs(t.coeff)) for t in dh.non_coulomb_sorted]
    return rows
