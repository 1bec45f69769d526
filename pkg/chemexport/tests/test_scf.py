"""SCF validation against published minimal-basis energies."""

import numpy as np
import pytest

from chemexport.geometry import GeometrySpec, diatomic
from chemexport.scf import run_rhf


def test_helium_atom_anchor():
    result = run_rhf([("He", np.zeros(3))])
    assert result.energy == pytest.approx(-2.807784, abs=1e-5)


def test_h2_anchor_at_1_4_bohr():
    result = run_rhf(diatomic("H", "H", 1.4 * 0.529177210903))
    assert result.energy == pytest.approx(-1.1167, abs=5e-4)
    assert result.n_occupied == 1


def test_water_anchor():
    ang = np.deg2rad(104.52)
    r = 0.9572 / 0.529177210903
    atoms = [
        ("O", np.zeros(3)),
        ("H", np.array([r * np.sin(ang / 2), 0.0, r * np.cos(ang / 2)])),
        ("H", np.array([-r * np.sin(ang / 2), 0.0, r * np.cos(ang / 2)])),
    ]
    result = run_rhf(atoms)
    assert result.energy == pytest.approx(-74.9629, abs=2e-3)


def test_odd_electron_count_rejected():
    with pytest.raises(ValueError):
        run_rhf([("H", np.zeros(3))])


def test_pyramidal_cation_has_degenerate_e_orbitals():
    result = run_rhf(GeometrySpec(bond_length=1.0).atoms(), charge=1)
    eps = result.orbital_energies
    # threefold symmetry: one valence-occupied and one virtual degenerate pair
    assert abs(eps[2] - eps[3]) < 1e-9
    assert abs(eps[6] - eps[7]) < 1e-9
    assert result.n_occupied == 5


def test_orbital_energies_ascending():
    result = run_rhf(GeometrySpec(bond_length=1.2).atoms(), charge=1)
    eps = result.orbital_energies
    assert all(a <= b + 1e-12 for a, b in zip(eps, eps[1:]))
