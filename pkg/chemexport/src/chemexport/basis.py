"""STO-3G shell parameters and contracted Cartesian basis construction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# exponents and contraction coefficients per element: list of (shell_type, alphas, coeffs)
# SP shells share exponents between the 2s and 2p contractions
STO3G = {
    "H": [
        ("S", [3.425250914, 0.6239137298, 0.1688554040],
              [0.1543289673, 0.5353281423, 0.4446345422]),
    ],
    "He": [
        ("S", [6.362421394, 1.158922999, 0.3136497915],
              [0.1543289673, 0.5353281423, 0.4446345422]),
    ],
    "O": [
        ("S", [130.7093200, 23.80886100, 6.443608313],
              [0.1543289673, 0.5353281423, 0.4446345422]),
        ("SP", [5.033151319, 1.169596125, 0.3803889600],
               [-0.09996722919, 0.3995128261, 0.7001154689],
               [0.1559162750, 0.6076837186, 0.3919573931]),
    ],
}

ATOMIC_NUMBER = {"H": 1, "He": 2, "O": 8}

_DOUBLE_FACTORIAL = {-1: 1, 0: 1, 1: 1, 2: 2, 3: 3}


@dataclass
class ContractedGaussian:
    """One contracted Cartesian Gaussian centered on an atom."""

    center: np.ndarray          # bohr
    powers: tuple[int, int, int]
    alphas: np.ndarray
    coeffs: np.ndarray          # includes primitive norms; contraction renormalized


def _primitive_norm(alpha: float, powers) -> float:
    l, m, n = powers
    pref = (2 * alpha / np.pi) ** 0.75 * (4 * alpha) ** ((l + m + n) / 2)
    den = np.sqrt(
        _DOUBLE_FACTORIAL[2 * l - 1] * _DOUBLE_FACTORIAL[2 * m - 1] * _DOUBLE_FACTORIAL[2 * n - 1]
    )
    return pref / den


def _self_overlap(cg: ContractedGaussian) -> float:
    from .integrals import primitive_overlap

    total = 0.0
    for a, ca in zip(cg.alphas, cg.coeffs):
        for b, cb in zip(cg.alphas, cg.coeffs):
            total += ca * cb * primitive_overlap(a, cg.center, cg.powers, b, cg.center, cg.powers)
    return total


def make_contracted(center, powers, alphas, raw_coeffs) -> ContractedGaussian:
    alphas = np.asarray(alphas, dtype=float)
    coeffs = np.array(
        [c * _primitive_norm(a, powers) for a, c in zip(alphas, raw_coeffs)], dtype=float
    )
    cg = ContractedGaussian(np.asarray(center, dtype=float), tuple(powers), alphas, coeffs)
    cg.coeffs = cg.coeffs / np.sqrt(_self_overlap(cg))
    return cg


def build_basis(atoms: list[tuple[str, np.ndarray]]) -> list[ContractedGaussian]:
    """Contracted AO basis for a list of (element, position-in-bohr) atoms.

    Shell order per atom follows the parameter table; SP shells emit the s
    function then px, py, pz.
    """
    basis: list[ContractedGaussian] = []
    for element, pos in atoms:
        for shell in STO3G[element]:
            if shell[0] == "S":
                _, alphas, coeffs = shell
                basis.append(make_contracted(pos, (0, 0, 0), alphas, coeffs))
            elif shell[0] == "SP":
                _, alphas, s_coeffs, p_coeffs = shell
                basis.append(make_contracted(pos, (0, 0, 0), alphas, s_coeffs))
                for powers in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                    basis.append(make_contracted(pos, powers, alphas, p_coeffs))
            else:
                raise ValueError(f"unsupported shell type {shell[0]}")
    return basis
