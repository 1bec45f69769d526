"""Command line fixture generation: python -m chemexport --out <dir>."""

import argparse
import sys
from pathlib import Path

import numpy as np

from .export import export_h2, export_structures, write_manifest


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="chemexport", description="Generate FCIDUMP fixture files."
    )
    parser.add_argument("--out", type=Path, required=True, help="output directory root")
    parser.add_argument("--bond-min", type=float, default=0.5)
    parser.add_argument("--bond-max", type=float, default=2.0)
    parser.add_argument("--bond-count", type=int, default=16)
    parser.add_argument("--h2-separation", type=float, default=0.74)
    parser.add_argument("--skip-h2", action="store_true")
    args = parser.parse_args(argv)

    grid = np.linspace(args.bond_min, args.bond_max, args.bond_count)
    records = export_structures(grid, args.out / "h3o")
    write_manifest(records, args.out / "h3o")
    for rec in records:
        status = f"E = {rec.hf_energy:.8f} Ha" if rec.converged else f"FAILED: {rec.error}"
        print(f"{rec.name}: {status}")

    if not args.skip_h2:
        rec = export_h2(args.h2_separation, args.out / "h2")
        write_manifest([rec], args.out / "h2")
        print(f"{rec.name}: E = {rec.hf_energy:.8f} Ha")

    return 0 if all(r.converged for r in records) else 1


if __name__ == "__main__":
    sys.exit(main())
