"""Molecular geometry construction in bohr from angstrom parameters."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BOHR_PER_ANGSTROM = 1.0 / 0.529177210903

# perpendicular distance from the heavy atom to the hydrogen plane (angstrom)
PYRAMID_HEIGHT = 0.372


@dataclass(frozen=True)
class GeometrySpec:
    """Threefold-symmetric pyramidal cation X H3(+)."""

    bond_length: float           # X-H distance, angstrom
    plane_distance: float = PYRAMID_HEIGHT
    element: str = "O"
    charge: int = 1

    def __post_init__(self):
        if self.bond_length <= self.plane_distance:
            raise ValueError("bond length must exceed the plane distance")

    def atoms(self) -> list[tuple[str, np.ndarray]]:
        """Atom list in bohr, symmetry axis along z, heavy atom at origin."""
        rho = np.sqrt(self.bond_length**2 - self.plane_distance**2)
        out = [(self.element, np.zeros(3))]
        for k in range(3):
            angle = 2.0 * np.pi * k / 3.0
            pos = np.array(
                [rho * np.cos(angle), rho * np.sin(angle), -self.plane_distance]
            )
            out.append(("H", pos * BOHR_PER_ANGSTROM))
        return out

    def bond_lengths(self) -> list[float]:
        """The three X-H distances in angstrom, for symmetry checks."""
        atoms = self.atoms()
        x = atoms[0][1]
        return [
            float(np.linalg.norm(pos - x)) / BOHR_PER_ANGSTROM
            for _, pos in atoms[1:]
        ]


def diatomic(element_a: str, element_b: str, separation: float):
    """Two atoms on the z axis, ``separation`` in angstrom."""
    d = separation * BOHR_PER_ANGSTROM
    return [
        (element_a, np.zeros(3)),
        (element_b, np.array([0.0, 0.0, d])),
    ]
