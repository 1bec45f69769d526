"""Computational-basis shot sampling with reproducible randomness.

Draws are inverse-CDF over the full probability vector using a seeded
counter-based generator (Philox), so identical (state, shots, seed) inputs
reproduce the same SampleSet bit for bit.  Parallel sweeps must derive
distinct seeds from a master seed; see cvqe.pipeline.cell_seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .fermion import FockState
from .simulator import Statevector


@dataclass(frozen=True)
class Provenance:
    """Guiding-state parameters a sample set was drawn from."""

    time: float | None = None
    steps: int | None = None
    cutoff: float | None = None
    label: str | None = None


@dataclass
class SampleSet:
    """Aggregated measurement outcomes of one guiding state."""

    entries: dict[FockState, int]
    shots: int
    seed: int
    provenance: Provenance = field(default_factory=Provenance)

    def __post_init__(self):
        if any(c < 1 for c in self.entries.values()):
            raise ValueError("counts must be positive")
        if sum(self.entries.values()) != self.shots:
            raise ValueError("counts do not add up to the shot total")

    @property
    def support(self) -> list[FockState]:
        return sorted(self.entries, key=lambda s: s.index)


def sample(
    psi: Statevector, shots: int, seed: int, provenance: Provenance | None = None
) -> SampleSet:
    """Draw independent computational-basis shots from |amplitude|^2."""
    if shots < 1:
        raise ValueError("need at least one shot")
    probs = np.abs(psi.amplitudes) ** 2
    total = probs.sum()
    if abs(total - 1.0) > 1e-8:
        raise ValueError(f"state norm {total} too far from 1")
    cdf = np.cumsum(probs / total)
    cdf[-1] = 1.0
    rng = np.random.Generator(np.random.Philox(key=np.uint64(seed & (2**64 - 1))))
    draws = rng.random(shots)
    outcomes = np.searchsorted(cdf, draws, side="right")
    values, counts = np.unique(outcomes, return_counts=True)
    entries = {
        FockState(int(v), psi.q): int(c) for v, c in zip(values, counts)
    }
    return SampleSet(
        entries=entries, shots=shots, seed=seed,
        provenance=provenance or Provenance(),
    )


def sector_filter(samples: SampleSet, n_alpha: int, n_beta: int) -> SampleSet:
    """Keep only entries whose per-spin occupation matches the target sector.

    Off by default in the pipeline: stray-sector outcomes only add decoupled
    basis states, but the filter bounds the subspace dimension when wanted.
    """
    if n_alpha < 0 or n_beta < 0:
        raise ValueError("invalid sector")
    some_state = next(iter(samples.entries), None)
    if some_state is None:
        raise ValueError("empty sample set")
    q = some_state.q
    m = q // 2
    alpha_mask = (1 << m) - 1
    beta_mask = alpha_mask << m
    kept = {
        s: c
        for s, c in samples.entries.items()
        if s.popcount_in(alpha_mask) == n_alpha and s.popcount_in(beta_mask) == n_beta
    }
    if not kept:
        raise ValueError("sector filter removed every sample")
    return SampleSet(
        entries=kept, shots=sum(kept.values()), seed=samples.seed,
        provenance=samples.provenance,
    )


def format_sample_set(samples: SampleSet) -> str:
    """Text form: provenance header lines, then `bitstring count` rows.

    Rows are ordered by descending count with a bitstring tie-break; the
    bitstring character i is the occupation of spin-orbital i.
    """
    lines = [f"# shots {samples.shots}", f"# seed {samples.seed}"]
    p = samples.provenance
    for key in ("time", "steps", "cutoff", "label"):
        value = getattr(p, key)
        if value is not None:
            lines.append(f"# {key} {value}")
    rows = sorted(samples.entries.items(), key=lambda kv: (-kv[1], kv[0].bits()))
    lines.extend(f"{state.bits()} {count}" for state, count in rows)
    return "\n".join(lines) + "\n"


def write_sample_set(samples: SampleSet, path: str | Path) -> None:
    Path(path).write_text(format_sample_set(samples))


def read_sample_set(path: str | Path) -> SampleSet:
    meta: dict[str, str] = {}
    entries: dict[FockState, int] = {}
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            _, key, value = line.split(maxsplit=2)
            meta[key] = value
            continue
        bits, count = line.split()
        entries[FockState.from_bits(bits)] = int(count)
    prov = Provenance(
        time=float(meta["time"]) if "time" in meta else None,
        steps=int(meta["steps"]) if "steps" in meta else None,
        cutoff=float(meta["cutoff"]) if "cutoff" in meta else None,
        label=meta.get("label"),
    )
    return SampleSet(
        entries=entries, shots=int(meta["shots"]), seed=int(meta["seed"]), provenance=prov
    )
