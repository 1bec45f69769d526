"""Minimal-basis RHF integral exporter producing the cvqe fixture files."""

from .export import (
    FixtureRecord,
    export_h2,
    export_molecule,
    export_structures,
    write_manifest,
)
from .geometry import GeometrySpec, diatomic
from .scf import ScfError, ScfResult, run_rhf

__all__ = [
    "FixtureRecord",
    "GeometrySpec",
    "ScfError",
    "ScfResult",
    "diatomic",
    "export_h2",
    "export_molecule",
    "export_structures",
    "run_rhf",
    "write_manifest",
]
