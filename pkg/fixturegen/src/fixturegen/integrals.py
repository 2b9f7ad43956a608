"""One- and two-electron integrals over contracted Cartesian Gaussians.

McMurchie-Davidson scheme: Hermite expansion coefficients for overlap and
kinetic integrals, Hermite Coulomb repulsion tensor (Boys function) for
nuclear attraction and electron repulsion. Works for any angular momentum;
the shipped basis data only exercises s and p shells.
"""

import math

import numpy as np
from scipy.special import hyp1f1


def _hermite_expansion(la, lb, AB, a, b):
    """Table E[i, j, t] of 1D Hermite expansion coefficients."""
    p = a + b
    mu = a * b / p
    E = np.zeros((la + 1, lb + 1, la + lb + 2))
    E[0, 0, 0] = math.exp(-mu * AB * AB)
    for i in range(1, la + 1):
        for t in range(i + 1):
            E[i, 0, t] = (
                (E[i - 1, 0, t - 1] / (2.0 * p) if t > 0 else 0.0)
                - (mu * AB / a) * E[i - 1, 0, t]
                + (t + 1) * E[i - 1, 0, t + 1]
            )
    for j in range(1, lb + 1):
        for i in range(la + 1):
            for t in range(i + j + 1):
                E[i, j, t] = (
                    (E[i, j - 1, t - 1] / (2.0 * p) if t > 0 else 0.0)
                    + (mu * AB / b) * E[i, j - 1, t]
                    + (t + 1) * E[i, j - 1, t + 1]
                )
    return E


def _boys(n_max, x):
    """Boys function F_n(x) for n = 0..n_max."""
    ns = np.arange(n_max + 1)
    return hyp1f1(ns + 0.5, ns + 1.5, -x) / (2.0 * ns + 1.0)


def _hermite_coulomb(t_max, u_max, v_max, p, PC):
    """Tensor R[t, u, v] of Hermite Coulomb integrals (n = 0 slice)."""
    n_max = t_max + u_max + v_max
    F = _boys(n_max, p * float(np.dot(PC, PC)))
    # R[n, t, u, v] built by downward recursion in n
    R = np.zeros((n_max + 1, t_max + 1, u_max + 1, v_max + 1))
    for n in range(n_max + 1):
        R[n, 0, 0, 0] = (-2.0 * p) ** n * F[n]
    for n in range(n_max - 1, -1, -1):
        for t in range(t_max + 1):
            for u in range(u_max + 1):
                for v in range(v_max + 1):
                    if t == u == v == 0:
                        continue
                    if t > 0:
                        val = PC[0] * R[n + 1, t - 1, u, v]
                        if t > 1:
                            val += (t - 1) * R[n + 1, t - 2, u, v]
                    elif u > 0:
                        val = PC[1] * R[n + 1, t, u - 1, v]
                        if u > 1:
                            val += (u - 1) * R[n + 1, t, u - 2, v]
                    else:
                        val = PC[2] * R[n + 1, t, u, v - 1]
                        if v > 1:
                            val += (v - 1) * R[n + 1, t, u, v - 2]
                    R[n, t, u, v] = val
    return R[0]


def _pair_tables(ga, gb, ia, ib):
    a = ga.exps[ia]
    b = gb.exps[ib]
    E = [
        _hermite_expansion(ga.powers[d], gb.powers[d], ga.center[d] - gb.center[d], a, b)
        for d in range(3)
    ]
    return a, b, E


def _primitive_overlap(a, b, E, la, lb):
    p = a + b
    pref = (math.pi / p) ** 1.5
    return pref * E[0][la[0], lb[0], 0] * E[1][la[1], lb[1], 0] * E[2][la[2], lb[2], 0]


def overlap(basis):
    n = len(basis)
    S = np.zeros((n, n))
    for mu in range(n):
        for nu in range(mu + 1):
            ga, gb = basis[mu], basis[nu]
            acc = 0.0
            for ia, ca in enumerate(ga.coefs):
                for ib, cb in enumerate(gb.coefs):
                    a, b, E = _pair_tables(ga, gb, ia, ib)
                    acc += ca * cb * _primitive_overlap(a, b, E, ga.powers, gb.powers)
            S[mu, nu] = S[nu, mu] = acc
    return S


def kinetic(basis):
    n = len(basis)
    T = np.zeros((n, n))
    for mu in range(n):
        for nu in range(mu + 1):
            ga, gb = basis[mu], basis[nu]
            acc = 0.0
            for ia, ca in enumerate(ga.coefs):
                for ib, cb in enumerate(gb.coefs):
                    acc += ca * cb * _primitive_kinetic(ga, gb, ia, ib)
            T[mu, nu] = T[nu, mu] = acc
    return T


def _primitive_kinetic(ga, gb, ia, ib):
    a = ga.exps[ia]
    b = gb.exps[ib]
    # 1D overlaps with shifted angular momentum on the ket
    def s1d(d, shift):
        lb = gb.powers[d] + shift
        if lb < 0:
            return 0.0
        E = _hermite_expansion(ga.powers[d], lb, ga.center[d] - gb.center[d], a, b)
        return E[ga.powers[d], lb, 0] * math.sqrt(math.pi / (a + b))

    def t1d(d):
        j = gb.powers[d]
        val = -2.0 * b * b * s1d(d, +2) + b * (2 * j + 1) * s1d(d, 0)
        if j >= 2:
            val -= 0.5 * j * (j - 1) * s1d(d, -2)
        return val

    sx, sy, sz = s1d(0, 0), s1d(1, 0), s1d(2, 0)
    return t1d(0) * sy * sz + sx * t1d(1) * sz + sx * sy * t1d(2)


def nuclear_attraction(basis, charges, coords):
    """Matrix of -sum_C Z_C <mu| 1/|r-C| |nu>."""
    n = len(basis)
    V = np.zeros((n, n))
    for mu in range(n):
        for nu in range(mu + 1):
            ga, gb = basis[mu], basis[nu]
            acc = 0.0
            for ia, ca in enumerate(ga.coefs):
                for ib, cb in enumerate(gb.coefs):
                    a, b, E = _pair_tables(ga, gb, ia, ib)
                    p = a + b
                    P = (a * ga.center + b * gb.center) / p
                    lt = ga.powers[0] + gb.powers[0]
                    lu = ga.powers[1] + gb.powers[1]
                    lv = ga.powers[2] + gb.powers[2]
                    for Z, C in zip(charges, coords):
                        R = _hermite_coulomb(lt, lu, lv, p, P - C)
                        s = 0.0
                        for t in range(lt + 1):
                            for u in range(lu + 1):
                                for v in range(lv + 1):
                                    s += (
                                        E[0][ga.powers[0], gb.powers[0], t]
                                        * E[1][ga.powers[1], gb.powers[1], u]
                                        * E[2][ga.powers[2], gb.powers[2], v]
                                        * R[t, u, v]
                                    )
                        acc -= ca * cb * Z * (2.0 * math.pi / p) * s
            V[mu, nu] = V[nu, mu] = acc
    return V


def _primitive_eri(ga, gb, gc, gd, ia, ib, ic, id_):
    a, b, Eab = _pair_tables(ga, gb, ia, ib)
    c, d, Ecd = _pair_tables(gc, gd, ic, id_)
    p = a + b
    q = c + d
    P = (a * ga.center + b * gb.center) / p
    Q = (c * gc.center + d * gd.center) / q
    rho = p * q / (p + q)
    lt1 = ga.powers[0] + gb.powers[0]
    lu1 = ga.powers[1] + gb.powers[1]
    lv1 = ga.powers[2] + gb.powers[2]
    lt2 = gc.powers[0] + gd.powers[0]
    lu2 = gc.powers[1] + gd.powers[1]
    lv2 = gc.powers[2] + gd.powers[2]
    R = _hermite_coulomb(lt1 + lt2, lu1 + lu2, lv1 + lv2, rho, P - Q)
    s = 0.0
    for t1 in range(lt1 + 1):
        e1 = Eab[0][ga.powers[0], gb.powers[0], t1]
        for u1 in range(lu1 + 1):
            e2 = e1 * Eab[1][ga.powers[1], gb.powers[1], u1]
            for v1 in range(lv1 + 1):
                e3 = e2 * Eab[2][ga.powers[2], gb.powers[2], v1]
                if e3 == 0.0:
                    continue
                for t2 in range(lt2 + 1):
                    f1 = Ecd[0][gc.powers[0], gd.powers[0], t2]
                    for u2 in range(lu2 + 1):
                        f2 = f1 * Ecd[1][gc.powers[1], gd.powers[1], u2]
                        for v2 in range(lv2 + 1):
                            f3 = f2 * Ecd[2][gc.powers[2], gd.powers[2], v2]
                            if f3 == 0.0:
                                continue
                            sign = -1.0 if (t2 + u2 + v2) % 2 else 1.0
                            s += e3 * f3 * sign * R[t1 + t2, u1 + u2, v1 + v2]
    pref = 2.0 * math.pi ** 2.5 / (p * q * math.sqrt(p + q))
    return pref * s


def electron_repulsion(basis):
    """Full (mu nu | la si) tensor in chemist convention, 8-fold symmetric."""
    n = len(basis)
    eri = np.zeros((n, n, n, n))
    for mu in range(n):
        for nu in range(mu + 1):
            for la in range(mu + 1):
                si_max = nu if la == mu else la
                for si in range(si_max + 1):
                    ga, gb, gc, gd = basis[mu], basis[nu], basis[la], basis[si]
                    acc = 0.0
                    for ia, ca in enumerate(ga.coefs):
                        for ib, cb in enumerate(gb.coefs):
                            for ic, cc in enumerate(gc.coefs):
                                for id_, cd in enumerate(gd.coefs):
                                    acc += ca * cb * cc * cd * _primitive_eri(
                                        ga, gb, gc, gd, ia, ib, ic, id_
                                    )
                    for p_, q_, r_, s_ in (
                        (mu, nu, la, si),
                        (nu, mu, la, si),
                        (mu, nu, si, la),
                        (nu, mu, si, la),
                        (la, si, mu, nu),
                        (si, la, mu, nu),
                        (la, si, nu, mu),
                        (si, la, nu, mu),
                    ):
                        eri[p_, q_, r_, s_] = acc
    return eri


def nuclear_repulsion(charges, coords):
    e = 0.0
    for i in range(len(charges)):
        for j in range(i):
            e += charges[i] * charges[j] / float(np.linalg.norm(coords[i] - coords[j]))
    return e


def core_hamiltonian(basis, charges, coords):
    return kinetic(basis) + nuclear_attraction(basis, charges, coords)


def normalize_basis(basis):
    """Scale each contracted function so its self-overlap is exactly 1."""
    for g in basis:
        acc = 0.0
        for ia, ca in enumerate(g.coefs):
            for ib, cb in enumerate(g.coefs):
                a, b, E = _pair_tables(g, g, ia, ib)
                acc += ca * cb * _primitive_overlap(a, b, E, g.powers, g.powers)
        g.renormalize(acc)
    return basis
