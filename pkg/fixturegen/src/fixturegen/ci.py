"""Determinant-basis configuration interaction (FCI / CASCI kernel).

Works directly on spatial-orbital MO integrals. Determinants are occupied
spin-orbital tuples in blocked ordering (all alpha then all beta); matrix
elements come from the Slater-Condon rules.
"""

from itertools import combinations

import numpy as np


def _antisymmetrized(eri_mo, n_orb):
    """<pq||rs> over spin orbitals from the chemist (pq|rs) spatial tensor."""
    n_so = 2 * n_orb

    def spat(i):
        return i % n_orb

    def spin(i):
        return i // n_orb

    g = np.zeros((n_so, n_so, n_so, n_so))
    for p in range(n_so):
        for q in range(n_so):
            for r in range(n_so):
                for s in range(n_so):
                    coul = 0.0
                    if spin(p) == spin(r) and spin(q) == spin(s):
                        coul = eri_mo[spat(p), spat(r), spat(q), spat(s)]
                    exch = 0.0
                    if spin(p) == spin(s) and spin(q) == spin(r):
                        exch = eri_mo[spat(p), spat(s), spat(q), spat(r)]
                    g[p, q, r, s] = coul - exch
    return g


def _h_spin(h_mo, n_orb):
    n_so = 2 * n_orb
    h = np.zeros((n_so, n_so))
    h[:n_orb, :n_orb] = h_mo
    h[n_orb:, n_orb:] = h_mo
    return h


def _excitation(det_a, det_b):
    """(degree, holes, particles) taking det_a to det_b."""
    sa, sb = set(det_a), set(det_b)
    holes = sorted(sa - sb)
    parts = sorted(sb - sa)
    return len(holes), holes, parts


def _sign(det, removed, added):
    """Fermionic phase for moving `removed` orbitals out and `added` in."""
    occ = list(det)
    sign = 1
    for r in removed:
        idx = occ.index(r)
        sign *= (-1) ** idx
        occ.pop(idx)
    for a in added:
        cnt = sum(1 for o in occ if o < a)
        sign *= (-1) ** cnt
        occ.insert(cnt, a)
    return sign


def _element(da, db, h, g):
    deg, holes, parts = _excitation(da, db)
    if deg == 0:
        e = sum(h[i, i] for i in da)
        e += 0.5 * sum(g[i, j, i, j] for i in da for j in da)
        return e
    if deg == 1:
        (i,), (a,) = holes, parts
        val = h[i, a] + sum(g[i, j, a, j] for j in da if j != i)
        return _sign(da, [i], [a]) * val
    if deg == 2:
        (i, j), (a, b) = holes, parts
        # particles enter in operator order a+_a a+_b: insert b first
        return _sign(da, [i, j], [b, a]) * g[i, j, a, b]
    return 0.0


def sector_determinants(n_orb, n_alpha, n_beta):
    """All determinants (occupied spin-orbital tuples, blocked ordering)."""
    alpha = list(combinations(range(n_orb), n_alpha))
    beta = list(combinations(range(n_orb, 2 * n_orb), n_beta))
    return [tuple(sorted(a + b)) for a in alpha for b in beta]


def s_squared_matrix(dets, n_orb):
    """S^2 in the determinant basis (M_s fixed by the sector).

    S^2 = S-S+ + Sz^2 + Sz, with the ladder parts applied determinant by
    determinant through the same phase bookkeeping as the Hamiltonian.
    """
    index = {d: k for k, d in enumerate(dets)}
    dim = len(dets)
    mat = np.zeros((dim, dim))

    def apply_flip(det, src_off, dst_off):
        """sum_p a+_{p+dst} a_{p+src} |det>, as {det: amplitude}."""
        out = {}
        occ = set(det)
        for p in range(n_orb):
            src, dst = p + src_off, p + dst_off
            if src in occ and dst not in occ:
                new = tuple(sorted(occ - {src} | {dst}))
                out[new] = out.get(new, 0.0) + _sign(det, [src], [dst])
        return out

    for k, det in enumerate(dets):
        n_a = sum(1 for o in det if o < n_orb)
        n_b = len(det) - n_a
        ms = 0.5 * (n_a - n_b)
        mat[k, k] += ms * ms + ms
        # S- S+ |det>
        for mid, amp1 in apply_flip(det, n_orb, 0).items():  # S+: beta -> alpha
            for fin, amp2 in apply_flip(mid, 0, n_orb).items():  # S-: alpha -> beta
                mat[index[fin], k] += amp1 * amp2
    return mat


def fci_ground_state(h_mo, eri_mo, n_alpha, n_beta, spin=None):
    """Lowest eigenstate of the electronic Hamiltonian in the given sector.

    With `spin` set (e.g. 0 for a singlet), the lowest eigenstate whose
    <S^2> matches spin*(spin+1) within 0.1 is selected; an M_s = 0 sector
    also contains higher-spin components that a spin-adapted reference
    must skip. Returns (energy, civec, determinants); the energy excludes
    any core constant.
    """
    n_orb = h_mo.shape[0]
    g = _antisymmetrized(eri_mo, n_orb)
    h = _h_spin(h_mo, n_orb)
    dets = sector_determinants(n_orb, n_alpha, n_beta)
    dim = len(dets)
    H = np.zeros((dim, dim))
    for a in range(dim):
        for b in range(a + 1):
            val = _element(dets[a], dets[b], h, g)
            H[a, b] = H[b, a] = val
    w, v = np.linalg.eigh(H)
    col = 0
    if spin is not None:
        target = spin * (spin + 1)
        s2 = s_squared_matrix(dets, n_orb)
        for k in range(dim):
            if abs(v[:, k] @ s2 @ v[:, k] - target) < 0.1:
                col = k
                break
        else:
            raise ValueError(f"no eigenstate with S^2 ~ {target} in the sector")
    return w[col], v[:, col], dets


def hf_determinant_energy(h_mo, eri_mo, n_alpha, n_beta):
    """<HF|H|HF> for the aufbau determinant, excluding the core constant."""
    n_orb = h_mo.shape[0]
    g = _antisymmetrized(eri_mo, n_orb)
    h = _h_spin(h_mo, n_orb)
    det = tuple(range(n_alpha)) + tuple(range(n_orb, n_orb + n_beta))
    return _element(det, det, h, g)


def active_space_reduction(h_mo, eri_mo, n_occ, active_indices):
    """Effective integrals for a CAS over `active_indices`.

    Inactive orbitals are the occupied MOs not in the active list; their
    mean-field interaction is folded into the effective one-body part and
    the inactive energy.

    Returns (h_eff, eri_act, e_inactive, n_active_electrons).
    """
    active = list(active_indices)
    inactive = [i for i in range(n_occ) if i not in active]
    n_act_elec = 2 * sum(1 for i in active if i < n_occ)

    e_inact = 2.0 * sum(h_mo[i, i] for i in inactive)
    for i in inactive:
        for j in inactive:
            e_inact += 2.0 * eri_mo[i, i, j, j] - eri_mo[i, j, j, i]

    na = len(active)
    h_eff = np.zeros((na, na))
    for t, pt in enumerate(active):
        for u, pu in enumerate(active):
            val = h_mo[pt, pu]
            for i in inactive:
                val += 2.0 * eri_mo[pt, pu, i, i] - eri_mo[pt, i, i, pu]
            h_eff[t, u] = val

    idx = np.ix_(active, active, active, active)
    eri_act = eri_mo[idx].copy()
    return h_eff, eri_act, e_inact, n_act_elec
