"""Gaussian integrals over contracted Cartesian functions.

Hermite-expansion (McMurchie-Davidson) evaluation of overlap, kinetic,
nuclear-attraction, and electron-repulsion integrals.  Angular momentum is
limited by the parameter table (s and p shells), but the recursions are
general.  Two-electron integrals are returned in chemist notation (ij|kl).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.special import hyp1f1


def boys(n: int, x: float) -> float:
    return float(hyp1f1(n + 0.5, n + 1.5, -x)) / (2 * n + 1)


def _coulomb_table(tmax: int, umax: int, vmax: int, p: float, PC) -> np.ndarray:
    """Hermite Coulomb integrals R^0_{tuv} for all t<=tmax, u<=umax, v<=vmax.

    Built bottom-up from one Boys-function ladder per call:
    R^n_000 = (-2p)^n F_n(p|PC|^2) and
    R^n_{t+1,u,v} = t R^{n+1}_{t-1,u,v} + PC_x R^{n+1}_{t,u,v} (same for u,v).
    """
    nmax = tmax + umax + vmax
    x = p * float(PC @ PC)
    table = np.zeros((nmax + 1, tmax + 1, umax + 1, vmax + 1))
    scale = 1.0
    for n in range(nmax + 1):
        table[n, 0, 0, 0] = scale * boys(n, x)
        scale *= -2.0 * p
    for t in range(1, tmax + 1):
        for n in range(nmax - t + 1):
            table[n, t, 0, 0] = (t - 1) * (
                table[n + 1, t - 2, 0, 0] if t >= 2 else 0.0
            ) + PC[0] * table[n + 1, t - 1, 0, 0]
    for u in range(1, umax + 1):
        for t in range(tmax + 1):
            for n in range(nmax - t - u + 1):
                table[n, t, u, 0] = (u - 1) * (
                    table[n + 1, t, u - 2, 0] if u >= 2 else 0.0
                ) + PC[1] * table[n + 1, t, u - 1, 0]
    for v in range(1, vmax + 1):
        for u in range(umax + 1):
            for t in range(tmax + 1):
                for n in range(nmax - t - u - v + 1):
                    table[n, t, u, v] = (v - 1) * (
                        table[n + 1, t, u, v - 2] if v >= 2 else 0.0
                    ) + PC[2] * table[n + 1, t, u, v - 1]
    return table[0]


@lru_cache(maxsize=1_000_000)
def _hermite_e(i: int, j: int, t: int, qx: float, a: float, b: float) -> float:
    """Expansion coefficient E_t^{ij} for a 1D Gaussian product (qx = Ax - Bx)."""
    p = a + b
    mu = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return float(np.exp(-mu * qx * qx))
    if j == 0:
        return (
            _hermite_e(i - 1, j, t - 1, qx, a, b) / (2 * p)
            - (mu * qx / a) * _hermite_e(i - 1, j, t, qx, a, b)
            + (t + 1) * _hermite_e(i - 1, j, t + 1, qx, a, b)
        )
    return (
        _hermite_e(i, j - 1, t - 1, qx, a, b) / (2 * p)
        + (mu * qx / b) * _hermite_e(i, j - 1, t, qx, a, b)
        + (t + 1) * _hermite_e(i, j - 1, t + 1, qx, a, b)
    )


def primitive_overlap(a, A, la, b, B, lb) -> float:
    p = a + b
    out = (np.pi / p) ** 1.5
    for d in range(3):
        out *= _hermite_e(la[d], lb[d], 0, A[d] - B[d], a, b)
    return float(out)


def primitive_kinetic(a, A, la, b, B, lb) -> float:
    """Kinetic energy via angular-momentum shifts of the ket."""
    def s1d(d, j_shift):
        lbj = lb[d] + j_shift
        if lbj < 0:
            return 0.0
        return _hermite_e(la[d], lbj, 0, A[d] - B[d], a, b)

    p = a + b
    pref = (np.pi / p) ** 1.5
    total = 0.0
    for d in range(3):
        j = lb[d]
        term = -2 * b * b * s1d(d, 2) + b * (2 * j + 1) * s1d(d, 0) - 0.5 * j * (j - 1) * s1d(d, -2)
        other = 1.0
        for e in range(3):
            if e != d:
                other *= _hermite_e(la[e], lb[e], 0, A[e] - B[e], a, b)
        total += term * other
    return float(pref * total)


def primitive_nuclear(a, A, la, b, B, lb, C) -> float:
    """Attraction to a unit charge at C (caller applies -Z)."""
    p = a + b
    P = (a * np.asarray(A) + b * np.asarray(B)) / p
    PC = P - np.asarray(C)
    r = _coulomb_table(la[0] + lb[0], la[1] + lb[1], la[2] + lb[2], p, PC)
    total = 0.0
    for t in range(la[0] + lb[0] + 1):
        ex = _hermite_e(la[0], lb[0], t, A[0] - B[0], a, b)
        for u in range(la[1] + lb[1] + 1):
            ey = _hermite_e(la[1], lb[1], u, A[1] - B[1], a, b)
            for v in range(la[2] + lb[2] + 1):
                ez = _hermite_e(la[2], lb[2], v, A[2] - B[2], a, b)
                total += ex * ey * ez * r[t, u, v]
    return float(2 * np.pi / p * total)


def primitive_eri(a, A, la, b, B, lb, c, C, lc, d, D, ld) -> float:
    """(ab|cd) over primitives, chemist notation."""
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    P = (a * np.asarray(A) + b * np.asarray(B)) / p
    Q = (c * np.asarray(C) + d * np.asarray(D)) / q
    PQ = P - Q

    e_bra = [
        [
            _hermite_e(la[dim], lb[dim], t, A[dim] - B[dim], a, b)
            for t in range(la[dim] + lb[dim] + 1)
        ]
        for dim in range(3)
    ]
    e_ket = [
        [
            _hermite_e(lc[dim], ld[dim], t, C[dim] - D[dim], c, d)
            for t in range(lc[dim] + ld[dim] + 1)
        ]
        for dim in range(3)
    ]
    r = _coulomb_table(
        la[0] + lb[0] + lc[0] + ld[0],
        la[1] + lb[1] + lc[1] + ld[1],
        la[2] + lb[2] + lc[2] + ld[2],
        alpha,
        PQ,
    )
    total = 0.0
    for t, ext in enumerate(e_bra[0]):
        for u, eyu in enumerate(e_bra[1]):
            for v, ezv in enumerate(e_bra[2]):
                bra = ext * eyu * ezv
                if bra == 0.0:
                    continue
                for T, exT in enumerate(e_ket[0]):
                    for U, eyU in enumerate(e_ket[1]):
                        for V, ezV in enumerate(e_ket[2]):
                            ket = exT * eyU * ezV
                            if ket == 0.0:
                                continue
                            sign = -1.0 if (T + U + V) % 2 else 1.0
                            total += bra * ket * sign * r[t + T, u + U, v + V]
    pref = 2 * np.pi**2.5 / (p * q * np.sqrt(p + q))
    return float(pref * total)


def _contract_pair(fn, ga, gb, *extra):
    total = 0.0
    for a, ca in zip(ga.alphas, ga.coeffs):
        for b, cb in zip(gb.alphas, gb.coeffs):
            total += ca * cb * fn(a, ga.center, ga.powers, b, gb.center, gb.powers, *extra)
    return total


def overlap_matrix(basis) -> np.ndarray:
    n = len(basis)
    s = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            s[i, j] = s[j, i] = _contract_pair(primitive_overlap, basis[i], basis[j])
    return s


def kinetic_matrix(basis) -> np.ndarray:
    n = len(basis)
    t = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            t[i, j] = t[j, i] = _contract_pair(primitive_kinetic, basis[i], basis[j])
    return t


def nuclear_matrix(basis, atoms) -> np.ndarray:
    from .basis import ATOMIC_NUMBER

    n = len(basis)
    v = np.zeros((n, n))
    for element, pos in atoms:
        z = ATOMIC_NUMBER[element]
        for i in range(n):
            for j in range(i + 1):
                val = -z * _contract_pair(primitive_nuclear, basis[i], basis[j], pos)
                v[i, j] += val
                if i != j:
                    v[j, i] += val
    return v


def eri_tensor(basis) -> np.ndarray:
    """All (ij|kl) with 8-fold symmetry filled from the unique wedge."""
    n = len(basis)
    eri = np.zeros((n, n, n, n))
    pair_index = lambda i, j: i * (i + 1) // 2 + j
    for i in range(n):
        for j in range(i + 1):
            ij = pair_index(i, j)
            for k in range(i + 1):
                for l in range(k + 1):
                    if pair_index(k, l) > ij:
                        continue
                    val = 0.0
                    gi, gj, gk, gl = basis[i], basis[j], basis[k], basis[l]
                    for a, ca in zip(gi.alphas, gi.coeffs):
                        for b, cb in zip(gj.alphas, gj.coeffs):
                            for c, cc in zip(gk.alphas, gk.coeffs):
                                for d, cd in zip(gl.alphas, gl.coeffs):
                                    val += ca * cb * cc * cd * primitive_eri(
                                        a, gi.center, gi.powers,
                                        b, gj.center, gj.powers,
                                        c, gk.center, gk.powers,
                                        d, gl.center, gl.powers,
                                    )
                    for p, q in ((i, j), (j, i)):
                        for r, s in ((k, l), (l, k)):
                            eri[p, q, r, s] = val
                            eri[r, s, p, q] = val
    return eri


def nuclear_repulsion(atoms) -> float:
    from .basis import ATOMIC_NUMBER

    total = 0.0
    for i, (el_i, pos_i) in enumerate(atoms):
        for el_j, pos_j in atoms[i + 1 :]:
            total += (
                ATOMIC_NUMBER[el_i]
                * ATOMIC_NUMBER[el_j]
                / float(np.linalg.norm(np.asarray(pos_i) - np.asarray(pos_j)))
            )
    return total
