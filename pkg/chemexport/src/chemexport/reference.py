"""Exporter-side exact diagonalization for small integral sets.

Builds the spin-orbital Hamiltonian as a dense matrix from elementary
ladder-operator matrices (Kronecker products), so it shares no code with the
consumer package it cross-checks.  Feasible up to roughly 8 spin-orbitals.
"""

from __future__ import annotations

import numpy as np

_LOWER = np.array([[0.0, 1.0], [0.0, 0.0]])
_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


def _annihilator(q: int, n_modes: int) -> np.ndarray:
    op = np.eye(1)
    for mode in range(n_modes):
        if mode < q:
            factor = _Z
        elif mode == q:
            factor = _LOWER
        else:
            factor = np.eye(2)
        op = np.kron(factor, op)
    return op


def dense_hamiltonian(h1: np.ndarray, eri: np.ndarray, constant: float) -> np.ndarray:
    """Spin-orbital matrix from spatial integrals, blocked spin ordering."""
    norb = h1.shape[0]
    n_modes = 2 * norb
    a = [_annihilator(q, n_modes) for q in range(n_modes)]
    c = [op.T for op in a]
    mat = constant * np.eye(1 << n_modes)
    for p in range(norb):
        for q in range(norb):
            if h1[p, q] == 0.0:
                continue
            for sp in (0, 1):
                mat += h1[p, q] * c[p + sp * norb] @ a[q + sp * norb]
    for p in range(norb):
        for q in range(norb):
            for r in range(norb):
                for s in range(norb):
                    v = eri[p, q, r, s]
                    if v == 0.0:
                        continue
                    for sp in (0, 1):
                        for tp in (0, 1):
                            mat += 0.5 * v * (
                                c[p + sp * norb] @ c[r + tp * norb]
                                @ a[s + tp * norb] @ a[q + sp * norb]
                            )
    return mat


def ground_energy_in_sector(
    h1: np.ndarray, eri: np.ndarray, constant: float, n_alpha: int, n_beta: int
) -> float:
    """Lowest eigenvalue within a fixed (n_alpha, n_beta) sector."""
    norb = h1.shape[0]
    n_modes = 2 * norb
    mat = dense_hamiltonian(h1, eri, constant)
    alpha_mask = (1 << norb) - 1
    beta_mask = alpha_mask << norb
    keep = [
        i
        for i in range(1 << n_modes)
        if bin(i & alpha_mask).count("1") == n_alpha
        and bin(i & beta_mask).count("1") == n_beta
    ]
    block = mat[np.ix_(keep, keep)]
    return float(np.linalg.eigvalsh(block)[0])
