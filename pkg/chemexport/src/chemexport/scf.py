"""Closed-shell restricted Hartree-Fock with DIIS acceleration."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .basis import build_basis
from .integrals import (
    eri_tensor,
    kinetic_matrix,
    nuclear_matrix,
    nuclear_repulsion,
    overlap_matrix,
)


class ScfError(RuntimeError):
    """Self-consistent field iteration failed to converge."""


@dataclass
class ScfResult:
    energy: float                # total, nuclear repulsion included
    electronic_energy: float
    nuclear_repulsion: float
    mo_coefficients: np.ndarray  # columns, ascending orbital energy
    orbital_energies: np.ndarray
    h_core: np.ndarray
    eri: np.ndarray              # chemist notation (ij|kl), AO basis
    overlap: np.ndarray
    n_occupied: int
    iterations: int


def run_rhf(
    atoms,
    charge: int = 0,
    max_iterations: int = 200,
    convergence: float = 1e-10,
    diis_size: int = 8,
) -> ScfResult:
    """Restricted Hartree-Fock on an even-electron system."""
    from .basis import ATOMIC_NUMBER

    n_electrons = sum(ATOMIC_NUMBER[el] for el, _ in atoms) - charge
    if n_electrons % 2:
        raise ValueError("restricted HF needs an even electron count")
    n_occ = n_electrons // 2

    basis = build_basis(atoms)
    s = overlap_matrix(basis)
    h = kinetic_matrix(basis) + nuclear_matrix(basis, atoms)
    eri = eri_tensor(basis)
    e_nuc = nuclear_repulsion(atoms)

    s_evx, s_evc = np.linalg.eigh(s)
    x = s_evc @ np.diag(s_evx**-0.5) @ s_evc.T

    def fock_from_density(d):
        j = np.einsum("ijkl,kl->ij", eri, d)
        k = np.einsum("ikjl,kl->ij", eri, d)
        return h + j - 0.5 * k

    def density_from_fock(f):
        fp = x.T @ f @ x
        evals, evecs = np.linalg.eigh(fp)
        c = x @ evecs
        occ = c[:, :n_occ]
        return 2.0 * occ @ occ.T, c, evals

    d, c, eps = density_from_fock(h)
    energy = 0.0
    errors: list[np.ndarray] = []
    focks: list[np.ndarray] = []
    for iteration in range(1, max_iterations + 1):
        f = fock_from_density(d)
        err = x.T @ (f @ d @ s - s @ d @ f) @ x
        errors.append(err)
        focks.append(f)
        if len(errors) > diis_size:
            errors.pop(0)
            focks.pop(0)
        if len(errors) > 1:
            m = len(errors)
            b = -np.ones((m + 1, m + 1))
            b[m, m] = 0.0
            for i in range(m):
                for j in range(m):
                    b[i, j] = np.sum(errors[i] * errors[j])
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                weights = np.linalg.solve(b, rhs)[:m]
                f = sum(w * fk for w, fk in zip(weights, focks))
            except np.linalg.LinAlgError:
                pass
        d_new, c, eps = density_from_fock(f)
        e_new = 0.5 * np.sum(d_new * (h + fock_from_density(d_new)))
        converged = (
            abs(e_new - energy) < convergence and np.abs(errors[-1]).max() < 1e-8
        )
        d, energy = d_new, e_new
        if converged:
            return ScfResult(
                energy=float(energy + e_nuc),
                electronic_energy=float(energy),
                nuclear_repulsion=float(e_nuc),
                mo_coefficients=c,
                orbital_energies=eps,
                h_core=h,
                eri=eri,
                overlap=s,
                n_occupied=n_occ,
                iterations=iteration,
            )
    raise ScfError(f"SCF not converged after {max_iterations} iterations")
