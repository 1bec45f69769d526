"""Fixture generation: molecular-orbital integrals to FCIDUMP plus sidecar.

For each geometry: restricted Hartree-Fock in the minimal basis, transform
the integrals to the molecular-orbital basis, fold any frozen core orbitals
into an effective one-body part and a constant, and write

  <name>.fcidump   Molpro-style dump, chemist notation, 1-based indices
  <name>.json      sidecar with the reference-state data consumers need

together with a manifest listing every emitted pair with checksums.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .geometry import GeometrySpec, diatomic
from .scf import ScfError, ScfResult, run_rhf

WRITE_THRESHOLD = 1e-12


@dataclass
class FixtureRecord:
    name: str
    fcidump: str
    sidecar: str
    bond_length: float
    hf_energy: float
    converged: bool
    error: str | None = None


def mo_transform(scf: ScfResult) -> tuple[np.ndarray, np.ndarray]:
    c = scf.mo_coefficients
    h_mo = c.T @ scf.h_core @ c
    g = np.einsum("pi,pqrs->iqrs", c, scf.eri, optimize=True)
    g = np.einsum("qj,iqrs->ijrs", c, g, optimize=True)
    g = np.einsum("rk,ijrs->ijks", c, g, optimize=True)
    g = np.einsum("sl,ijks->ijkl", c, g, optimize=True)
    return h_mo, g


def freeze_core(h_mo: np.ndarray, eri_mo: np.ndarray, n_core: int):
    """Fold the lowest n_core doubly-occupied orbitals into the constant.

    Returns (valence h, valence eri, core energy).
    """
    if n_core == 0:
        return h_mo, eri_mo, 0.0
    core = range(n_core)
    val = slice(n_core, h_mo.shape[0])
    e_core = 0.0
    for c in core:
        e_core += 2.0 * h_mo[c, c]
        for c2 in core:
            e_core += 2.0 * eri_mo[c, c, c2, c2] - eri_mo[c, c2, c2, c]
    h_eff = h_mo[val, val].copy()
    for c in core:
        h_eff += 2.0 * eri_mo[val, val, c, c] - eri_mo[val, c, c, val]
    return h_eff, eri_mo[val, val, val, val].copy(), float(e_core)


def write_fcidump(
    path: Path, h1: np.ndarray, eri: np.ndarray, constant: float, n_elec: int, ms2: int = 0
) -> None:
    norb = h1.shape[0]
    lines = [
        f"&FCI NORB={norb},NELEC={n_elec},MS2={ms2},",
        " ORBSYM=" + ",".join(["1"] * norb) + ",",
        " ISYM=1,",
        "&END",
    ]
    pair = lambda i, j: i * (i + 1) // 2 + j
    for i in range(norb):
        for j in range(i + 1):
            for k in range(i + 1):
                for l in range(k + 1):
                    if pair(k, l) > pair(i, j):
                        continue
                    v = eri[i, j, k, l]
                    if abs(v) > WRITE_THRESHOLD:
                        lines.append(f"{v:.16e} {i+1} {j+1} {k+1} {l+1}")
    for i in range(norb):
        for j in range(i + 1):
            if abs(h1[i, j]) > WRITE_THRESHOLD:
                lines.append(f"{h1[i, j]:.16e} {i+1} {j+1} 0 0")
    lines.append(f"{constant:.16e} 0 0 0 0")
    path.write_text("\n".join(lines) + "\n")


def write_sidecar(
    path: Path,
    n_valence: int,
    n_alpha: int,
    n_beta: int,
    hf_energy: float,
    orbital_energies,
    bond_length: float,
) -> None:
    occupied = list(range(n_alpha)) + [n_valence + i for i in range(n_beta)]
    bits = "".join("1" if i in occupied else "0" for i in range(2 * n_valence))
    path.write_text(
        json.dumps(
            {
                "n_spatial_orbitals": n_valence,
                "n_alpha": n_alpha,
                "n_beta": n_beta,
                "hf_energy_ha": hf_energy,
                "orbital_energies_ha": [float(e) for e in orbital_energies],
                "hf_occupation_bits": bits,
                "bond_length_angstrom": bond_length,
            },
            indent=1,
        )
        + "\n"
    )


def export_molecule(
    atoms,
    charge: int,
    n_core: int,
    name: str,
    out_dir: Path,
    bond_length: float,
) -> FixtureRecord:
    """Run the SCF and write one fixture pair."""
    scf = run_rhf(atoms, charge=charge)
    h_mo, eri_mo = mo_transform(scf)
    h_val, eri_val, e_core = freeze_core(h_mo, eri_mo, n_core)
    constant = scf.nuclear_repulsion + e_core
    n_valence = h_val.shape[0]
    n_val_elec = 2 * (scf.n_occupied - n_core)

    out_dir.mkdir(parents=True, exist_ok=True)
    fcidump = out_dir / f"{name}.fcidump"
    sidecar = out_dir / f"{name}.json"
    write_fcidump(fcidump, h_val, eri_val, constant, n_val_elec)
    write_sidecar(
        sidecar,
        n_valence,
        n_val_elec // 2,
        n_val_elec // 2,
        scf.energy,
        scf.orbital_energies[n_core:],
        bond_length,
    )
    return FixtureRecord(
        name=name,
        fcidump=fcidump.name,
        sidecar=sidecar.name,
        bond_length=bond_length,
        hf_energy=scf.energy,
        converged=True,
    )


def export_structures(bond_lengths, out_dir: str | Path) -> list[FixtureRecord]:
    """Pyramidal-cation fixtures over a bond-length grid.

    An SCF failure is recorded for its geometry and the remaining fixtures
    are still written.
    """
    out_dir = Path(out_dir)
    records = []
    for r in bond_lengths:
        name = f"h3o_r{r:.2f}"
        spec = GeometrySpec(bond_length=float(r))
        try:
            rec = export_molecule(
                spec.atoms(), charge=spec.charge, n_core=1, name=name,
                out_dir=out_dir, bond_length=float(r),
            )
        except ScfError as exc:
            rec = FixtureRecord(
                name=name, fcidump="", sidecar="", bond_length=float(r),
                hf_energy=float("nan"), converged=False, error=str(exc),
            )
        records.append(rec)
    return records


def export_h2(separation: float, out_dir: str | Path) -> FixtureRecord:
    """Two-orbital test fixture, no frozen core."""
    return export_molecule(
        diatomic("H", "H", separation), charge=0, n_core=0,
        name=f"h2_{separation:.2f}", out_dir=Path(out_dir), bond_length=separation,
    )


def write_manifest(records: list[FixtureRecord], out_dir: str | Path) -> Path:
    out_dir = Path(out_dir)
    entries = []
    for rec in records:
        entry = {
            "name": rec.name,
            "bond_length_angstrom": rec.bond_length,
            "converged": rec.converged,
        }
        if rec.converged:
            for key, fname in (("fcidump", rec.fcidump), ("sidecar", rec.sidecar)):
                blob = (out_dir / fname).read_bytes()
                entry[key] = fname
                entry[f"{key}_sha256"] = hashlib.sha256(blob).hexdigest()
            entry["hf_energy_ha"] = rec.hf_energy
        else:
            entry["error"] = rec.error
        entries.append(entry)
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(entries, indent=1) + "\n")
    return path
