"""Sample-driven Fock subspaces, their diagonalization, and deviation metrics.

The working basis is the set of Fock states the Hamiltonian connects to the
measured samples.  Matrices over such bases are real symmetric (the loaded
integrals are real); statevectors stay complex.

Gauge rule used everywhere overlaps matter: a vector's largest-magnitude
component (lowest index on ties) is rotated to the positive real axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.linalg

from .fermion import (
    ZERO_THRESHOLD,
    FermionHamiltonian,
    FockState,
    SystemMetadata,
    apply_to_vector,
    dense_matrix_on_basis,
    term_images,
)
from .sampler import SampleSet
from .simulator import Statevector

MAX_FCI_SECTOR = 100_000
DENSE_EIG_LIMIT = 4096
DEGENERACY_GAP = 1e-8


@dataclass
class SubspaceBasis:
    """Ordered, duplicate-free list of Fock states spanning the ansatz."""

    states: list[FockState]

    def __post_init__(self):
        if not self.states:
            raise ValueError("empty basis")
        idx = [s.index for s in self.states]
        if len(set(idx)) != len(idx):
            raise ValueError("duplicate basis states")
        if idx != sorted(idx):
            self.states = sorted(self.states, key=lambda s: s.index)

    @property
    def dimension(self) -> int:
        return len(self.states)

    @cached_property
    def indices(self) -> np.ndarray:
        return np.array([s.index for s in self.states], dtype=np.int64)

    def position_of(self, state: FockState) -> int | None:
        pos = int(np.searchsorted(self.indices, state.index))
        if pos < self.dimension and self.indices[pos] == state.index:
            return pos
        return None


@dataclass
class SpectralResult:
    """Lowest eigenpair of a subspace Hamiltonian."""

    energy: float
    coefficients: np.ndarray
    dimension: int
    eigenvalues: np.ndarray | None = None


@dataclass
class GroundTruth:
    """Exact sector ground state used as the reference for all deviations."""

    energy: float
    amplitudes: np.ndarray       # over sector_states, gauge-fixed
    sector_states: np.ndarray    # sorted int64 Fock indices of the sector
    gap: float
    q: int

    @property
    def dimension(self) -> int:
        return int(self.sector_states.shape[0])


def sector_indices(q: int, n_alpha: int, n_beta: int) -> np.ndarray:
    """Sorted Fock indices of the (n_alpha, n_beta) particle-number sector."""
    m = q // 2
    if 2 * m != q:
        raise ValueError("spin-blocked register needs an even orbital count")
    idx = np.arange(1 << q, dtype=np.int64)
    alpha_mask = (1 << m) - 1
    beta_mask = alpha_mask << m
    keep = (np.bitwise_count(idx & alpha_mask) == n_alpha) & (
        np.bitwise_count(idx & beta_mask) == n_beta
    )
    return idx[keep]


def gauge_fix(vec: np.ndarray) -> np.ndarray:
    """Rotate the largest-magnitude component (first on ties) to +real."""
    mags = np.abs(vec)
    pivot = int(np.argmax(mags))
    if mags[pivot] == 0.0:
        raise ValueError("cannot gauge a zero vector")
    phase = vec[pivot] / mags[pivot]
    return vec / phase


# ---------------------------------------------------------------------------
# Basis construction
# ---------------------------------------------------------------------------

def expand_basis(ham: FermionHamiltonian, samples: SampleSet) -> SubspaceBasis:
    """All Fock states the Hamiltonian couples to any sampled state.

    Per-image amplitudes are accumulated over interaction terms before
    thresholding, so exact cancellations do not enter the basis; a sampled
    state itself enters through its diagonal element (constant included).
    """
    if not samples.entries:
        raise ValueError("empty sample set")
    src = np.array(sorted({s.index for s in samples.entries}), dtype=np.int64)
    ct = ham._compiled
    n_src = src.shape[0]
    keys = []
    vals = []
    for i in range(len(ct.coeff)):
        valid, images, signs = term_images(ct, i, src)
        j = np.nonzero(valid)[0]
        if j.size == 0:
            continue
        keys.append(j * (np.int64(1) << ham.q) + images[j])
        vals.append(ct.coeff[i] * signs[j])
    keys.append(np.arange(n_src, dtype=np.int64) * (np.int64(1) << ham.q) + src)
    vals.append(np.full(n_src, ct.constant))
    key_arr = np.concatenate(keys)
    val_arr = np.concatenate(vals)
    uniq, inverse = np.unique(key_arr, return_inverse=True)
    sums = np.zeros(uniq.shape[0])
    np.add.at(sums, inverse, val_arr)
    images = uniq[np.abs(sums) > ZERO_THRESHOLD] & ((np.int64(1) << ham.q) - 1)
    found = np.unique(images)
    return SubspaceBasis([FockState(int(i), ham.q) for i in found])


def assemble_subspace_hamiltonian(ham: FermionHamiltonian, basis: SubspaceBasis) -> np.ndarray:
    """Dense symmetric matrix of the Hamiltonian restricted to the basis."""
    return dense_matrix_on_basis(ham, basis.indices)


# ---------------------------------------------------------------------------
# Diagonalization
# ---------------------------------------------------------------------------

def diagonalize(matrix: np.ndarray) -> SpectralResult:
    """Lowest eigenpair of a real symmetric matrix, gauge-fixed.

    Dense solvers carry the full spectrum up to 1024 rows and switch to a
    targeted/iterative path above; subspaces here stay in the dense regime.
    """
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
        raise ValueError("need a nonempty square matrix")
    d = matrix.shape[0]
    if np.abs(matrix - matrix.T).max() > 1e-10:
        raise ValueError("matrix is not symmetric")
    if d <= 1024:
        evals, evecs = np.linalg.eigh(matrix)
        energy = float(evals[0])
        vec = evecs[:, 0]
        full = evals
    elif d <= DENSE_EIG_LIMIT:
        evals, evecs = scipy.linalg.eigh(matrix, subset_by_index=[0, 0])
        energy = float(evals[0])
        vec = evecs[:, 0]
        full = None
    else:
        evals, evecs = scipy.sparse.linalg.eigsh(matrix, k=1, which="SA")
        energy = float(evals[0])
        vec = evecs[:, 0]
        full = None
    vec = gauge_fix(vec / np.linalg.norm(vec))
    return SpectralResult(energy=energy, coefficients=vec, dimension=d, eigenvalues=full)


def fci_ground_state(ham: FermionHamiltonian, meta: SystemMetadata) -> GroundTruth:
    """Exact ground state of the full particle-number sector.

    Near-degenerate ground manifolds (gap below 1e-8) are resolved toward the
    eigenvector with the largest reference-state overlap.
    """
    sector = sector_indices(ham.q, meta.n_alpha, meta.n_beta)
    d = sector.shape[0]
    if d > MAX_FCI_SECTOR:
        raise ValueError(f"sector dimension {d} exceeds the exact-diagonalization limit")
    mat = dense_matrix_on_basis(ham, sector)
    k = min(d - 1, 3)
    if d == 1:
        evals = np.array([mat[0, 0]])
        evecs = np.ones((1, 1))
        gap = np.inf
    else:
        evals, evecs = scipy.linalg.eigh(mat, subset_by_index=[0, k])
        gap = float(evals[1] - evals[0])
    energy = float(evals[0])
    pick = 0
    if gap < DEGENERACY_GAP:
        hf_pos = int(np.searchsorted(sector, meta.hf_occupation.index))
        degenerate = [i for i in range(evals.shape[0]) if evals[i] - energy < DEGENERACY_GAP]
        pick = max(degenerate, key=lambda i: abs(evecs[hf_pos, i]))
    vec = gauge_fix(evecs[:, pick] / np.linalg.norm(evecs[:, pick]))
    return GroundTruth(energy=energy, amplitudes=vec, sector_states=sector, gap=gap, q=ham.q)


# ---------------------------------------------------------------------------
# Energies and deviations
# ---------------------------------------------------------------------------

def _as_sparse_state(state, basis: SubspaceBasis | None, q: int):
    """Normalize the accepted state forms to (sorted indices, coefficients)."""
    if isinstance(state, Statevector):
        if state.q != q:
            raise ValueError("register size mismatch")
        return np.arange(1 << q, dtype=np.int64), state.amplitudes
    coeffs = np.asarray(state)
    if basis is None:
        if coeffs.shape[0] != (1 << q):
            raise ValueError("bare arrays need a basis unless they span the register")
        return np.arange(1 << q, dtype=np.int64), coeffs
    if coeffs.shape[0] != basis.dimension:
        raise ValueError("coefficient count does not match basis")
    return basis.indices, coeffs


def expectation_energy(
    ham: FermionHamiltonian,
    state,
    basis: SubspaceBasis | None = None,
    matrix: np.ndarray | None = None,
) -> float:
    """Rayleigh quotient of the Hamiltonian on a state.

    Accepts a full-register Statevector, a full-register array, or an array
    of coefficients over ``basis``; pass a precomputed ``matrix`` to skip the
    restriction assembly.
    """
    if isinstance(state, Statevector) or basis is None:
        _, vec = _as_sparse_state(state, None, ham.q)
        nrm = float(np.real(np.vdot(vec, vec)))
        if nrm == 0.0:
            raise ValueError("zero state")
        return float(np.real(np.vdot(vec, apply_to_vector(ham, vec)))) / nrm
    _, coeffs = _as_sparse_state(state, basis, ham.q)
    if matrix is None:
        matrix = dense_matrix_on_basis(ham, basis.indices)
    nrm = float(np.real(np.vdot(coeffs, coeffs)))
    if nrm == 0.0:
        raise ValueError("zero state")
    return float(np.real(np.vdot(coeffs, matrix @ coeffs))) / nrm


def _sector_overlap(gt: GroundTruth, indices: np.ndarray, coeffs: np.ndarray) -> complex:
    """<ground|state> with the state's support embedded into the sector."""
    pos = np.searchsorted(gt.sector_states, indices)
    pos_ok = pos < gt.dimension
    hit = np.zeros_like(indices, dtype=bool)
    hit[pos_ok] = gt.sector_states[pos[pos_ok]] == indices[pos_ok]
    return complex(np.vdot(gt.amplitudes[pos[hit]], coeffs[hit]))


def state_deviation(state, gt: GroundTruth, basis: SubspaceBasis | None = None) -> float:
    """2-norm distance sqrt(2 (1 - Re<ground|state>)) after gauge fixing."""
    indices, coeffs = _as_sparse_state(state, basis, gt.q)
    nrm = np.linalg.norm(coeffs)
    if abs(nrm - 1.0) > 1e-8:
        raise ValueError(f"state norm {nrm} too far from 1")
    coeffs = gauge_fix(coeffs / nrm)
    overlap = _sector_overlap(gt, indices, coeffs)
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - overlap.real))))


@dataclass(frozen=True)
class EnergyDeviation:
    """Deviation-vector energetics relative to the exact ground state."""

    delta_e: float        # (E_delta - E_g) * deviation^2
    e_delta: float        # energy of the deviation vector (nan when degenerate)
    deviation_sq: float   # squared state deviation
    direct_gap: float     # E(state) - E_g
    undefined: bool = False


def energy_deviation(
    state,
    gt: GroundTruth,
    ham: FermionHamiltonian,
    basis: SubspaceBasis | None = None,
    matrix: np.ndarray | None = None,
) -> EnergyDeviation:
    """Energy deviation derived from the deviation vector state - ground.

    For normalized inputs this reproduces E(state) - E_g exactly; a vanishing
    deviation flags the degenerate case instead of dividing by zero.
    """
    indices, coeffs = _as_sparse_state(state, basis, gt.q)
    nrm = np.linalg.norm(coeffs)
    if abs(nrm - 1.0) > 1e-8:
        raise ValueError(f"state norm {nrm} too far from 1")
    coeffs = gauge_fix(coeffs / nrm)
    direct = expectation_energy(ham, coeffs, basis=basis, matrix=matrix) - gt.energy

    dev_sq = 2.0 * (1.0 - _sector_overlap(gt, indices, coeffs).real)
    dev_sq = max(0.0, dev_sq)
    if dev_sq < 1e-24:
        return EnergyDeviation(0.0, float("nan"), dev_sq, direct, undefined=True)

    # deviation vector on the union of supports
    if matrix is not None and np.array_equal(indices, gt.sector_states):
        dvec = coeffs - gt.amplitudes
        nrm2 = float(np.real(np.vdot(dvec, dvec)))
        e_delta = float(np.real(np.vdot(dvec, matrix @ dvec))) / nrm2
    else:
        union = np.union1d(indices, gt.sector_states)
        dvec = np.zeros(union.shape[0], dtype=np.complex128)
        dvec[np.searchsorted(union, indices)] += coeffs
        dvec[np.searchsorted(union, gt.sector_states)] -= gt.amplitudes
        if basis is None and indices.shape[0] == (1 << gt.q):
            e_delta = expectation_energy(ham, dvec)
        else:
            union_basis = SubspaceBasis([FockState(int(i), gt.q) for i in union])
            e_delta = expectation_energy(ham, dvec, basis=union_basis)
    delta_e = (e_delta - gt.energy) * dev_sq
    return EnergyDeviation(delta_e, e_delta, dev_sq, direct)
