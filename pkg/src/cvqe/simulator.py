"""Statevector register, gate set, Pauli exponentials, and guiding states.

Qubit q is bit q of the basis-state integer (qubit 0 = least significant).
All public operations preserve the 2-norm to 1e-10.

Two paths exist for a Pauli rotation: the direct amplitude-mixing
exponential used in simulation, and an emitted gate circuit (basis changes,
CNOT ladder, central RZ).  Rotation sign conventions are pinned by the
path-equivalence tests rather than by any external drawing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .fermion import FermionHamiltonian, FockState, SystemMetadata, dense_matrix_on_basis
from .qubit_map import PauliString, PauliSum

MAX_EXACT_SECTOR = 4096

GATE_KINDS = ("X", "H", "RX", "RY", "RZ", "CNOT")


@dataclass
class Statevector:
    """2^Q complex amplitudes over the computational basis."""

    amplitudes: np.ndarray
    q: int

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.q,):
            raise ValueError("amplitude count does not match register size")

    def copy(self) -> "Statevector":
        return Statevector(self.amplitudes.copy(), self.q)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def fidelity(self, other: "Statevector") -> float:
        return abs(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int
    control: int | None = None
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate {self.kind!r}")
        if self.kind == "CNOT":
            if self.control is None or self.control == self.target:
                raise ValueError("CNOT needs a distinct control qubit")
        elif self.control is not None:
            raise ValueError(f"{self.kind} takes no control")
        if self.kind in ("RX", "RY", "RZ") and self.angle is None:
            raise ValueError(f"{self.kind} needs an angle")


@dataclass
class Circuit:
    gates: list[Gate]
    q: int

    def __post_init__(self):
        for g in self.gates:
            qubits = [g.target] + ([g.control] if g.control is not None else [])
            if any(not 0 <= v < self.q for v in qubits):
                raise ValueError(f"gate {g} out of range for q={self.q}")


@dataclass(frozen=True)
class EvolutionPlan:
    """Evolution window, step count, and term-ordering policy."""

    time: float
    steps: int
    ordering: str = "magnitude"
    cutoff: float | None = None

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if not math.isfinite(self.time):
            raise ValueError("time must be finite")
        if self.ordering not in ORDERING_POLICIES:
            raise ValueError(f"unknown ordering policy {self.ordering!r}")


ORDERING_POLICIES = {
    "magnitude": lambda terms: sorted(terms, key=lambda t: (-abs(t.coefficient), t.word)),
    "lexicographic": lambda terms: sorted(terms, key=lambda t: t.word),
}


def prepare_reference(occupation: FockState) -> Statevector:
    """The computational basis state for a given occupation."""
    amps = np.zeros(1 << occupation.q, dtype=np.complex128)
    amps[occupation.index] = 1.0
    return Statevector(amps, occupation.q)


# ---------------------------------------------------------------------------
# Pauli exponentials, direct path
# ---------------------------------------------------------------------------

def _word_masks(word: str) -> tuple[int, int, int]:
    """(flip mask, phase mask, #Y) for a Pauli word."""
    flip = 0
    yz = 0
    ny = 0
    for qq, ch in enumerate(word):
        if ch in "XY":
            flip |= 1 << qq
        if ch in "YZ":
            yz |= 1 << qq
        if ch == "Y":
            ny += 1
    return flip, yz, ny


def _apply_word(amps: np.ndarray, flip: int, yz: int, ny: int) -> np.ndarray:
    """P @ amps for the word with the given masks."""
    idx = np.arange(amps.shape[0], dtype=np.int64)
    sign = 1.0 - 2.0 * (np.bitwise_count(idx & yz) & 1)
    pp = (1j ** (ny % 4)) * sign * amps
    return pp[idx ^ flip]


def pauli_exponential(psi: Statevector, pauli: PauliString, angle: float) -> Statevector:
    """exp(-i * angle * P) applied exactly via pairwise amplitude mixing."""
    if len(pauli.word) != psi.q:
        raise ValueError("word length does not match register")
    flip, yz, ny = _word_masks(pauli.word)
    out = math.cos(angle) * psi.amplitudes - 1j * math.sin(angle) * _apply_word(
        psi.amplitudes, flip, yz, ny
    )
    return Statevector(out, psi.q)


# ---------------------------------------------------------------------------
# Circuit path
# ---------------------------------------------------------------------------

def emit_pauli_circuit(pauli: PauliString, angle: float) -> Circuit:
    """Gate realization of exp(-i * angle * P).

    Per-qubit basis changes (H for X, RX(pi/2) for Y), a CNOT ladder onto the
    highest-index non-identity qubit, one RZ carrying 2*angle, then the
    inverse ladder and basis changes.
    """
    support = [qq for qq, ch in enumerate(pauli.word) if ch != "I"]
    if not support:
        raise ValueError("cannot emit a circuit for the identity word")
    q = len(pauli.word)
    pre: list[Gate] = []
    post: list[Gate] = []
    for qq in support:
        ch = pauli.word[qq]
        if ch == "X":
            pre.append(Gate("H", qq))
            post.append(Gate("H", qq))
        elif ch == "Y":
            pre.append(Gate("RX", qq, angle=math.pi / 2))
            post.append(Gate("RX", qq, angle=-math.pi / 2))
    ladder = [
        Gate("CNOT", target=b, control=a) for a, b in zip(support, support[1:])
    ]
    core = [Gate("RZ", support[-1], angle=2.0 * angle)]
    gates = pre + ladder + core + ladder[::-1] + post
    return Circuit(gates, q)


_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)


def _single_qubit_matrix(gate: Gate) -> np.ndarray:
    if gate.kind == "X":
        return _X
    if gate.kind == "H":
        return _H
    half = gate.angle / 2.0
    c, s = math.cos(half), math.sin(half)
    if gate.kind == "RX":
        return np.array([[c, -1j * s], [-1j * s, c]])
    if gate.kind == "RY":
        return np.array([[c, -s], [s, c]])
    if gate.kind == "RZ":
        return np.array([[np.exp(-1j * half), 0], [0, np.exp(1j * half)]])
    raise ValueError(gate.kind)


def simulate_circuit(circuit: Circuit, psi: Statevector) -> Statevector:
    """Apply the gate list left to right."""
    if circuit.q != psi.q:
        raise ValueError("register size mismatch")
    amps = psi.amplitudes.copy()
    for gate in circuit.gates:
        if gate.kind == "CNOT":
            idx = np.arange(amps.shape[0], dtype=np.int64)
            ctrl = (idx >> gate.control) & 1
            perm = np.where(ctrl == 1, idx ^ (1 << gate.target), idx)
            amps = amps[perm]
        else:
            u = _single_qubit_matrix(gate)
            t = gate.target
            view = amps.reshape(-1, 2, 1 << t)
            a0 = view[:, 0, :].copy()
            a1 = view[:, 1, :].copy()
            view[:, 0, :] = u[0, 0] * a0 + u[0, 1] * a1
            view[:, 1, :] = u[1, 0] * a0 + u[1, 1] * a1
    return Statevector(amps, psi.q)


# ---------------------------------------------------------------------------
# Guiding states
# ---------------------------------------------------------------------------

def trotter_guiding_state(
    ps: PauliSum, meta: SystemMetadata, plan: EvolutionPlan
) -> Statevector:
    """Trapezoidal-rule evolution from the reference state.

    Starting from the reference occupation, applies K-1 interior factors with
    weights dT/K, 2dT/K, ..., (K-1)dT/K followed by one half-weight factor
    dT/2, each first-order factorized over the ordered Pauli terms with
    per-term angle coefficient * weight.  Identity words only shift the
    global phase and are skipped.
    """
    if ps.q != meta.q:
        raise ValueError("Pauli sum register does not match metadata")
    ordered = [t for t in ORDERING_POLICIES[plan.ordering](ps.terms) if not t.is_identity]
    compiled = [(_word_masks(t.word), t.coefficient) for t in ordered]

    k = plan.steps
    dt = plan.time / k
    weights = [(1.0 - step / k) * dt for step in range(k - 1, 0, -1)]
    weights.append(dt / 2.0)

    amps = prepare_reference(meta.hf_occupation).amplitudes
    for w in weights:
        for (flip, yz, ny), coeff in compiled:
            angle = coeff * w
            amps = math.cos(angle) * amps - 1j * math.sin(angle) * _apply_word(
                amps, flip, yz, ny
            )
    return Statevector(amps, meta.q)


def exact_guiding_state(
    ham: FermionHamiltonian, meta: SystemMetadata, time: float
) -> Statevector:
    """Dense reference exp(-i H time/2)|reference>, via the sector eigenbasis.

    Exact evolution never leaves the particle-number sector, so the
    exponential is taken on the sector block and embedded back.
    """
    from .subspace import sector_indices

    sector = sector_indices(meta.q, meta.n_alpha, meta.n_beta)
    if sector.shape[0] > MAX_EXACT_SECTOR:
        raise ValueError(f"sector dimension {sector.shape[0]} too large for dense evolution")
    mat = dense_matrix_on_basis(ham, sector)
    evals, evecs = np.linalg.eigh(mat)
    pos = int(np.searchsorted(sector, meta.hf_occupation.index))
    if pos >= sector.shape[0] or sector[pos] != meta.hf_occupation.index:
        raise ValueError("reference state lies outside the metadata sector")
    start = evecs[pos, :].conj()  # <eigvec|reference>
    evolved = evecs @ (np.exp(-1j * evals * (time / 2.0)) * start)
    amps = np.zeros(1 << meta.q, dtype=np.complex128)
    amps[sector] = evolved
    return Statevector(amps, meta.q)


def adiabatic_time_bound(gap: float, perturbation_norm: float, tolerance: float) -> float:
    """Evolution time sufficient for a given state-deviation tolerance."""
    if gap <= 0 or tolerance <= 0:
        raise ValueError("gap and tolerance must be positive")
    if perturbation_norm < 0:
        raise ValueError("perturbation norm must be nonnegative")
    v = perturbation_norm
    return 40.0 / tolerance / gap**2 * max(v, v**2 / gap)


# ---------------------------------------------------------------------------
# Circuit export
# ---------------------------------------------------------------------------

def format_circuit(circuit: Circuit) -> str:
    """Portable text form: header `qubits Q`, then `GATE target [control] [angle]`.

    Qubit 0 is the least significant bit of the basis-state integer.
    """
    lines = [f"qubits {circuit.q}"]
    for g in circuit.gates:
        parts = [g.kind, str(g.target)]
        if g.control is not None:
            parts.append(str(g.control))
        if g.angle is not None:
            parts.append(f"{g.angle:.16g}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def write_circuit(circuit: Circuit, path: str | Path) -> None:
    Path(path).write_text(format_circuit(circuit))
