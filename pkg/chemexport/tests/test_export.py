"""Fixture round-trip acceptance: exporter output consumed by the solver.

The solver package is touched only through the files the exporter writes
(FCIDUMP plus sidecar), which is the interface boundary between the two.
"""

import hashlib
import json
import re
from pathlib import Path

import numpy as np
import pytest

from chemexport.export import export_h2, export_molecule, freeze_core, mo_transform
from chemexport.geometry import GeometrySpec, diatomic
from chemexport.reference import ground_energy_in_sector
from chemexport.scf import run_rhf

REPO_FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"
BONDS = [f"{0.5 + 0.1 * i:.2f}" for i in range(16)]


@pytest.fixture(scope="session")
def committed_fixtures() -> Path:
    if not REPO_FIXTURES.exists():
        pytest.skip("fixture directory not generated")
    return REPO_FIXTURES


def test_geometry_threefold_bond_equality():
    for r in (0.5, 1.0, 1.7, 2.0):
        lengths = GeometrySpec(bond_length=r).bond_lengths()
        assert max(lengths) - min(lengths) < 1e-10
        assert lengths[0] == pytest.approx(r, abs=1e-10)


def test_geometry_rejects_too_short_bond():
    with pytest.raises(ValueError):
        GeometrySpec(bond_length=0.3)


def test_all_16_fixtures_exist(committed_fixtures):
    for bond in BONDS:
        assert (committed_fixtures / "h3o" / f"h3o_r{bond}.fcidump").exists()
        assert (committed_fixtures / "h3o" / f"h3o_r{bond}.json").exists()


def test_fcidump_headers_declare_valence_problem(committed_fixtures):
    for bond in BONDS:
        head = (committed_fixtures / "h3o" / f"h3o_r{bond}.fcidump").read_text().splitlines()[0]
        m = re.search(r"NORB=(\d+),NELEC=(\d+),MS2=(-?\d+)", head)
        assert m, head
        assert m.groups() == ("7", "8", "0")


def test_criterion_10_roundtrip(committed_fixtures):
    """Exporter HF energy equals the solver's reference diagonal element."""
    from cvqe.fermion import hartree_fock_state, load_fcidump, matrix_element

    worst = 0.0
    for bond in BONDS:
        ham, meta = load_fcidump(committed_fixtures / "h3o" / f"h3o_r{bond}.fcidump")
        assert ham.q == 14
        hf = hartree_fock_state(meta)
        diff = abs(matrix_element(ham, hf, hf) - meta.hf_energy)
        worst = max(worst, diff)
        assert diff < 1e-8, f"bond {bond}: {diff:.2e}"
        lengths = GeometrySpec(bond_length=float(bond)).bond_lengths()
        assert max(lengths) - min(lengths) < 1e-10
    print(
        f"\nACCEPTANCE 10: PASS - 16 fixtures round-trip within {worst:.1e} Ha, "
        "NORB=7, NELEC=8, threefold bonds equal to 1e-10 A"
    )


def test_h2_fci_cross_implementation(committed_fixtures, tmp_path):
    """Solver FCI on the written file vs the exporter's own diagonalization."""
    from cvqe.fermion import load_fcidump
    from cvqe.subspace import fci_ground_state

    record = export_h2(0.74, tmp_path)
    ham, meta = load_fcidump(tmp_path / record.fcidump)
    solver_energy = fci_ground_state(ham, meta).energy

    scf = run_rhf(diatomic("H", "H", 0.74))
    h_mo, eri_mo = mo_transform(scf)
    own_energy = ground_energy_in_sector(
        h_mo, eri_mo, scf.nuclear_repulsion, n_alpha=1, n_beta=1
    )
    assert solver_energy == pytest.approx(own_energy, abs=1e-8)


def test_sidecar_fields_and_occupation(committed_fixtures):
    raw = json.loads((committed_fixtures / "h3o" / "h3o_r1.00.json").read_text())
    assert raw["n_spatial_orbitals"] == 7
    assert raw["n_alpha"] == raw["n_beta"] == 4
    assert len(raw["orbital_energies_ha"]) == 7
    bits = raw["hf_occupation_bits"]
    assert len(bits) == 14 and bits.count("1") == 8
    assert bits == "11110001111000"


def test_manifest_checksums(committed_fixtures):
    manifest = json.loads((committed_fixtures / "h3o" / "manifest.json").read_text())
    assert len(manifest) == 16
    for entry in manifest:
        assert entry["converged"]
        for key in ("fcidump", "sidecar"):
            blob = (committed_fixtures / "h3o" / entry[key]).read_bytes()
            assert hashlib.sha256(blob).hexdigest() == entry[f"{key}_sha256"]


def test_frozen_core_shifts_are_consistent(tmp_path):
    # freezing zero orbitals must reproduce the untouched integrals
    scf = run_rhf(diatomic("H", "H", 0.9))
    h_mo, eri_mo = mo_transform(scf)
    h0, eri0, e0 = freeze_core(h_mo, eri_mo, 0)
    assert e0 == 0.0
    assert np.array_equal(h0, h_mo) and np.array_equal(eri0, eri_mo)


def test_export_molecule_writes_pair(tmp_path):
    rec = export_molecule(
        diatomic("H", "H", 0.8), charge=0, n_core=0, name="pair",
        out_dir=tmp_path, bond_length=0.8,
    )
    assert (tmp_path / rec.fcidump).exists()
    assert (tmp_path / rec.sidecar).exists()
    assert rec.converged
