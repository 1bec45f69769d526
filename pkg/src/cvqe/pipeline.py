"""Experiment orchestration: parameter sweeps, cost reports, CSV emission.

A run is a grid over (fixture, evolution time, cutoff, seed).  Completed
cells are stored as JSON files under ``<out>/cells`` and skipped on re-run;
CSV emission is a deterministic merge over the collected records (wall
times stay in the cell files so CSV bytes are reproducible).
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .fermion import FermionHamiltonian, SystemMetadata, load_fcidump
from .qubit_map import cutoff_filter, jordan_wigner
from .sampler import Provenance, sample, sector_filter
from .simulator import EvolutionPlan, trotter_guiding_state
from .subspace import (
    GroundTruth,
    assemble_subspace_hamiltonian,
    diagonalize,
    expand_basis,
    expectation_energy,
    fci_ground_state,
    state_deviation,
)

SWEEPS = ("bond", "time", "cutoff")


class ConfigError(ValueError):
    """Invalid run configuration."""


@dataclass
class RunConfig:
    fixtures: list[str]
    times: list[float]
    steps: int
    cutoffs: list[float]
    shots: int
    seeds: list[int]
    out_dir: str
    sector_filter: bool = False
    ordering: str = "magnitude"
    sweep: str = "bond"

    def __post_init__(self):
        if not (self.fixtures and self.times and self.cutoffs and self.seeds):
            raise ConfigError("fixtures, times, cutoffs, and seeds must be nonempty")
        if self.shots < 1:
            raise ConfigError("shots must be >= 1")
        if self.steps < 1:
            raise ConfigError("steps must be >= 1")
        if self.sweep not in SWEEPS:
            raise ConfigError(f"sweep must be one of {SWEEPS}")
        if any(c < 0 for c in self.cutoffs):
            raise ConfigError("cutoffs must be nonnegative")

    @classmethod
    def from_json(cls, path: str | Path) -> "RunConfig":
        try:
            raw = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(**raw)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc


@dataclass
class RunRecord:
    label: str
    time: float
    steps: int
    cutoff: float
    shots: int
    seed: int
    dimension: int
    e_guiding: float
    e_opt: float
    e_fci: float
    delta_e: float
    delta_psi_sq: float
    wall_time: float

    def __post_init__(self):
        if self.delta_e < -1e-10:
            raise ValueError(f"optimized energy fell below the exact ground energy: {self.delta_e}")
        if self.dimension < 1:
            raise ValueError("empty basis")


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


def cell_seed(master: int, fixture_index: int, time_index: int, cutoff_index: int) -> int:
    """Replicate seed xor a hash of the cell coordinates."""
    h = _splitmix64(fixture_index)
    h = _splitmix64(h ^ time_index)
    h = _splitmix64(h ^ cutoff_index)
    return (master ^ h) & 0xFFFFFFFFFFFFFFFF


@dataclass(frozen=True)
class CostReport:
    """Circuit-execution counts per structure, sampling stage vs iterative."""

    cvqe: int
    vqe: int


def measurement_cost(
    q: int, iterations: int, bases: int | None, shots: int
) -> CostReport:
    """Execution counts: bases*shots for one sampling pass, times the
    iteration count for the iterative reference; unspecified bases default
    to the full (2Q)^4 operator pool."""
    if q < 1 or iterations < 1 or shots < 1 or (bases is not None and bases < 1):
        raise ValueError("all counts must be positive")
    b = bases if bases is not None else (2 * q) ** 4
    return CostReport(cvqe=b * shots, vqe=iterations * b * shots)


# ---------------------------------------------------------------------------
# Experiment runner
# ---------------------------------------------------------------------------

class _FixtureCache:
    """Per-fixture heavy artifacts, computed once per run."""

    def __init__(self):
        self.loaded: dict[str, tuple[FermionHamiltonian, SystemMetadata]] = {}
        self.ground: dict[str, GroundTruth] = {}
        self.pauli: dict[tuple[str, float], object] = {}
        self.guiding: dict[tuple[str, float, float, int, str], object] = {}
        self.guiding_energy: dict[tuple[str, float, float, int, str], float] = {}

    def fixture(self, path: str):
        if path not in self.loaded:
            self.loaded[path] = load_fcidump(path)
        return self.loaded[path]

    def fci(self, path: str) -> GroundTruth:
        if path not in self.ground:
            ham, meta = self.fixture(path)
            self.ground[path] = fci_ground_state(ham, meta)
        return self.ground[path]

    def pauli_sum(self, path: str, cutoff: float):
        key = (path, cutoff)
        if key not in self.pauli:
            ham, _ = self.fixture(path)
            self.pauli[key] = jordan_wigner(cutoff_filter(ham, cutoff))
        return self.pauli[key]

    def guiding_state(self, path: str, cutoff: float, t: float, steps: int, ordering: str):
        key = (path, cutoff, t, steps, ordering)
        if key not in self.guiding:
            ham, meta = self.fixture(path)
            plan = EvolutionPlan(time=t, steps=steps, ordering=ordering, cutoff=cutoff)
            psi = trotter_guiding_state(self.pauli_sum(path, cutoff), meta, plan)
            self.guiding[key] = psi
            self.guiding_energy[key] = expectation_energy(ham, psi)
        return self.guiding[key], self.guiding_energy[key]


def _cell_name(label: str, t: float, cutoff: float, seed: int) -> str:
    return f"r{label}_T{t:g}_e{cutoff:g}_s{seed}.json"


def run_experiment(cfg: RunConfig) -> list[RunRecord]:
    """Execute the sweep grid and emit CSVs; completed cells are reused."""
    out = Path(cfg.out_dir)
    cells_dir = out / "cells"
    cells_dir.mkdir(parents=True, exist_ok=True)
    (out / "config.json").write_text(json.dumps(asdict(cfg), indent=1) + "\n")

    cache = _FixtureCache()
    records: list[RunRecord] = []
    for fi, fixture in enumerate(cfg.fixtures):
        ham, meta = cache.fixture(fixture)
        for ti, t in enumerate(cfg.times):
            for ei, eps in enumerate(cfg.cutoffs):
                for seed in cfg.seeds:
                    label = meta.label
                    cell_path = cells_dir / _cell_name(label, t, eps, seed)
                    if cell_path.exists():
                        records.append(RunRecord(**json.loads(cell_path.read_text())))
                        continue
                    t0 = time.perf_counter()
                    gt = cache.fci(fixture)
                    psi, e_guiding = cache.guiding_state(
                        fixture, eps, t, cfg.steps, cfg.ordering
                    )
                    draw_seed = cell_seed(seed, fi, ti, ei)
                    shots = sample(
                        psi, cfg.shots, draw_seed,
                        provenance=Provenance(time=t, steps=cfg.steps, cutoff=eps, label=label),
                    )
                    if cfg.sector_filter:
                        shots = sector_filter(shots, meta.n_alpha, meta.n_beta)
                    basis = expand_basis(ham, shots)
                    result = diagonalize(assemble_subspace_hamiltonian(ham, basis))
                    dev = state_deviation(result.coefficients, gt, basis=basis)
                    record = RunRecord(
                        label=label,
                        time=t,
                        steps=cfg.steps,
                        cutoff=eps,
                        shots=cfg.shots,
                        seed=seed,
                        dimension=basis.dimension,
                        e_guiding=e_guiding,
                        e_opt=result.energy,
                        e_fci=gt.energy,
                        delta_e=result.energy - gt.energy,
                        delta_psi_sq=dev * dev,
                        wall_time=time.perf_counter() - t0,
                    )
                    cell_path.write_text(json.dumps(asdict(record), indent=1) + "\n")
                    records.append(record)
    write_csvs(records, cfg)
    return records


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def write_csvs(records: list[RunRecord], cfg: RunConfig) -> list[Path]:
    """Deterministic CSV emission; the set of files depends on the sweep kind."""
    out = Path(cfg.out_dir)
    ordered = sorted(records, key=lambda r: (r.label, r.time, r.cutoff, r.seed))
    written: list[Path] = []

    def emit(name: str, header: list[str], rows) -> None:
        path = out / name
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
        written.append(path)

    emit(
        "records.csv",
        ["bond_A", "T_au", "steps", "eps_Ha", "shots", "seed", "dim",
         "E_guiding_Ha", "E_opt_Ha", "E_fci_Ha", "dE_Ha", "dPsi_sq"],
        [
            [r.label, _fmt(r.time), r.steps, _fmt(r.cutoff), r.shots, r.seed, r.dimension,
             _fmt(r.e_guiding), _fmt(r.e_opt), _fmt(r.e_fci), _fmt(r.delta_e), _fmt(r.delta_psi_sq)]
            for r in ordered
        ],
    )
    if cfg.sweep == "bond":
        emit(
            "fig3.csv",
            ["bond_A", "E_guiding_Ha", "E_opt_Ha", "E_fci_Ha"],
            [[r.label, _fmt(r.e_guiding), _fmt(r.e_opt), _fmt(r.e_fci)] for r in ordered],
        )
    if cfg.sweep == "time":
        emit(
            "fig4.csv",
            ["T_au", "dE_Ha", "dPsi_sq"],
            [[_fmt(r.time), _fmt(r.delta_e), _fmt(r.delta_psi_sq)] for r in ordered],
        )
    if cfg.sweep in ("bond", "cutoff"):
        emit(
            "fig5.csv",
            ["bond_A", "eps_Ha", "dE_Ha"],
            [[r.label, _fmt(r.cutoff), _fmt(r.delta_e)] for r in ordered],
        )
        emit(
            "fig6.csv",
            ["bond_A", "eps_Ha", "dim"],
            [[r.label, _fmt(r.cutoff), r.dimension] for r in ordered],
        )
    return written
