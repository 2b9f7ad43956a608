"""Restricted Hartree-Fock with DIIS acceleration."""

import numpy as np


class ScfError(RuntimeError):
    pass


def _orthogonalizer(S):
    w, U = np.linalg.eigh(S)
    if w.min() < 1e-8:
        raise ScfError(f"near-singular overlap matrix (min eigenvalue {w.min():.3e})")
    return U @ np.diag(w ** -0.5) @ U.T


def _canonicalize_degenerate(eps, C, tol=1e-7):
    """Fix the arbitrary rotation inside degenerate orbital groups.

    Within each group of equal orbital energies the SCF eigenvectors are
    only defined up to rotation (and LAPACK's choice follows floating
    noise). Re-diagonalizing a fixed index-weighted metric inside each
    group, then fixing signs, makes the exported orbitals deterministic.
    """
    n = len(eps)
    weight = np.diag(np.arange(n, dtype=float))
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and abs(eps[stop] - eps[start]) < tol:
            stop += 1
        if stop - start > 1:
            block = C[:, start:stop]
            _, rot = np.linalg.eigh(block.T @ weight @ block)
            C[:, start:stop] = block @ rot
        start = stop
    for k in range(n):
        pivot = np.argmax(np.abs(C[:, k]))
        if C[pivot, k] < 0:
            C[:, k] = -C[:, k]
    return C


def restricted_hartree_fock(S, hcore, eri, n_occ, e_nuc, max_iter=200, conv=1e-11):
    """Solve closed-shell RHF.

    Args:
        S: overlap matrix.
        hcore: core Hamiltonian.
        eri: (pq|rs) tensor, chemist convention.
        n_occ: number of doubly occupied orbitals.
        e_nuc: nuclear repulsion energy.
        max_iter: SCF iteration cap.
        conv: energy and DIIS-error convergence threshold.

    Returns:
        dict with keys e_total, e_elec, mo_energies, mo_coeff.
    """
    X = _orthogonalizer(S)
    F = hcore.copy()
    e_old = 0.0
    errs, focks = [], []
    P = None
    for it in range(max_iter):
        Fp = X.T @ F @ X
        eps, Cp = np.linalg.eigh(Fp)
        C = X @ Cp
        Cocc = C[:, :n_occ]
        P = 2.0 * Cocc @ Cocc.T
        J = np.einsum("rs,pqrs->pq", P, eri, optimize=True)
        K = np.einsum("rs,prqs->pq", P, eri, optimize=True)
        F = hcore + J - 0.5 * K
        e_elec = 0.5 * np.sum(P * (hcore + F))
        err = F @ P @ S - S @ P @ F
        err = X.T @ err @ X
        err_norm = np.max(np.abs(err))
        if abs(e_elec - e_old) < conv and err_norm < 1e-8 and it > 1:
            return {
                "e_total": e_elec + e_nuc,
                "e_elec": e_elec,
                "mo_energies": eps,
                "mo_coeff": _canonicalize_degenerate(eps, C),
            }
        e_old = e_elec
        # DIIS extrapolation over the last 8 Fock matrices
        errs.append(err)
        focks.append(F.copy())
        if len(errs) > 8:
            errs.pop(0)
            focks.pop(0)
        if len(errs) >= 2:
            m = len(errs)
            B = -np.ones((m + 1, m + 1))
            B[m, m] = 0.0
            for i in range(m):
                for j in range(m):
                    B[i, j] = np.sum(errs[i] * errs[j])
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                coef = np.linalg.solve(B, rhs)[:m]
                F = sum(c * f for c, f in zip(coef, focks))
            except np.linalg.LinAlgError:
                pass
    raise ScfError(f"SCF failed to converge in {max_iter} iterations (dE={abs(e_elec - e_old):.2e})")


def mo_transform(hcore, eri, C):
    """AO -> MO transform of the core Hamiltonian and (pq|rs) tensor."""
    h_mo = C.T @ hcore @ C
    tmp = np.einsum("pqrs,pi->iqrs", eri, C, optimize=True)
    tmp = np.einsum("iqrs,qj->ijrs", tmp, C, optimize=True)
    tmp = np.einsum("ijrs,rk->ijks", tmp, C, optimize=True)
    eri_mo = np.einsum("ijks,sl->ijkl", tmp, C, optimize=True)
    return h_mo, eri_mo
