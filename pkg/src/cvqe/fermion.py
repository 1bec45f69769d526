"""Second-quantized Hamiltonians on a register of spin-orbitals.

Spin-orbitals are indexed 0..Q-1 and blocked by spin: for M spatial
orbitals, indices 0..M-1 are the alpha spins and M..2M-1 the betas.
A Fock state is stored as the integer whose bit q is the occupation of
spin-orbital q (bit 0 = least significant).

Sign convention: mode 0 is the rightmost mode in operator products.
Annihilators act in descending index order, creators in ascending order,
and each elementary operator picks up the parity of the occupied modes
below its target index.  The convention is pinned by the brute-force
operator-matrix oracle in the test suite.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

# Matrix elements below this magnitude count as exact zeros when deciding
# Hamiltonian connectivity.
ZERO_THRESHOLD = 1e-12


class FcidumpError(ValueError):
    """Malformed FCIDUMP or sidecar metadata."""


@dataclass(frozen=True, order=True)
class FockState:
    """Occupation-number basis state of ``q`` spin-orbitals."""

    index: int
    q: int

    def __post_init__(self):
        if not 0 <= self.index < (1 << self.q):
            raise ValueError(f"index {self.index} out of range for q={self.q}")

    @classmethod
    def from_occupied(cls, occupied, q: int) -> "FockState":
        idx = 0
        for orb in occupied:
            idx |= 1 << orb
        return cls(idx, q)

    @classmethod
    def from_bits(cls, bits: str) -> "FockState":
        """Parse a bitstring whose character i is the occupation of orbital i."""
        idx = 0
        for i, ch in enumerate(bits):
            if ch == "1":
                idx |= 1 << i
            elif ch != "0":
                raise ValueError(f"invalid occupation bit {ch!r}")
        return cls(idx, len(bits))

    @property
    def popcount(self) -> int:
        return self.index.bit_count()

    @property
    def occupied(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.q) if self.index >> i & 1)

    def bits(self) -> str:
        """Occupation string, character i = orbital i."""
        return "".join("1" if self.index >> i & 1 else "0" for i in range(self.q))

    def popcount_in(self, mask: int) -> int:
        return (self.index & mask).bit_count()


@dataclass(frozen=True)
class Interaction:
    """One particle-conserving term ``h * c+_(create) c_(annihilate)``.

    Tuples are strictly ascending; the operator it denotes applies the
    annihilators in descending and the creators in ascending index order.
    """

    coefficient: float
    create: tuple[int, ...]
    annihilate: tuple[int, ...]

    def __post_init__(self):
        for name, tup in (("create", self.create), ("annihilate", self.annihilate)):
            if len(tup) > 2 or any(b <= a for a, b in zip(tup, tup[1:])):
                raise ValueError(f"{name} tuple {tup} not strictly ascending or too long")
        if len(self.create) != len(self.annihilate):
            raise ValueError("interaction does not conserve particle number")

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.create, self.annihilate)


@dataclass
class FermionHamiltonian:
    """Sum of Interactions plus a scalar constant, acting on Q spin-orbitals.

    Immutable after construction; every operation on it is pure.
    """

    terms: list[Interaction]
    constant: float
    q: int

    def __post_init__(self):
        seen = set()
        for t in self.terms:
            if t.key in seen:
                raise ValueError(f"duplicate term {t.key}")
            seen.add(t.key)
            if any(i >= self.q for i in t.create + t.annihilate):
                raise ValueError("orbital index out of range")
        for t in self.terms:
            if t.create != t.annihilate and (t.annihilate, t.create) not in seen:
                raise ValueError(f"missing hermitian partner of {t.key}")

    @cached_property
    def _compiled(self) -> "CompiledTerms":
        return compile_terms(self)


@dataclass(frozen=True)
class SystemMetadata:
    """Reference data carried alongside a loaded Hamiltonian."""

    q: int
    n_alpha: int
    n_beta: int
    hf_occupation: FockState
    hf_energy: float
    orbital_energies: tuple[float, ...]
    bond_length: float

    def __post_init__(self):
        if self.hf_occupation.popcount != self.n_alpha + self.n_beta:
            raise ValueError("HF occupation inconsistent with electron counts")
        if self.hf_occupation.q != self.q:
            raise ValueError("HF occupation register size mismatch")

    @property
    def label(self) -> str:
        return f"{self.bond_length:.2f}"


def apply_interaction(term: Interaction, state: FockState) -> tuple[FockState, int] | None:
    """Apply one interaction to a Fock state.

    Returns the image state and the fermionic parity sign, or None when an
    annihilated orbital is empty or a created orbital is already occupied.
    """
    n = state.index
    sign = 1
    for orb in reversed(term.annihilate):
        bit = 1 << orb
        if not n & bit:
            return None
        if (n & (bit - 1)).bit_count() & 1:
            sign = -sign
        n ^= bit
    for orb in term.create:
        bit = 1 << orb
        if n & bit:
            return None
        if (n & (bit - 1)).bit_count() & 1:
            sign = -sign
        n |= bit
    return FockState(n, state.q), sign


def matrix_element(h: FermionHamiltonian, bra: FockState, ket: FockState) -> float:
    """Exact ⟨bra|H|ket⟩ over the interaction list."""
    value = h.constant if bra.index == ket.index else 0.0
    for term in h.terms:
        image = apply_interaction(term, ket)
        if image is not None and image[0].index == bra.index:
            value += image[1] * term.coefficient
    return value


def connected_states(h: FermionHamiltonian, state: FockState) -> set[FockState]:
    """All states with a nonzero Hamiltonian matrix element against ``state``.

    Includes ``state`` itself when its diagonal element is nonzero.
    """
    out: dict[int, float] = {}
    for term in h.terms:
        image = apply_interaction(term, state)
        if image is not None:
            idx = image[0].index
            out[idx] = out.get(idx, 0.0) + image[1] * term.coefficient
    out[state.index] = out.get(state.index, 0.0) + h.constant
    return {FockState(i, h.q) for i, v in out.items() if abs(v) > ZERO_THRESHOLD}


def hartree_fock_state(meta: SystemMetadata) -> FockState:
    """The reference occupation recorded in the metadata."""
    return meta.hf_occupation


# ---------------------------------------------------------------------------
# Vectorized term application
# ---------------------------------------------------------------------------

@dataclass
class CompiledTerms:
    """Interaction list flattened to bit masks for array-wide application.

    For a term with annihilate mask ``a`` and create mask ``c``, a source
    state n is valid iff it contains all of ``a`` and none of ``c \\ a`` and
    maps to ``n ^ (a ^ c)``.  The total fermionic parity collapses to the
    popcount of ``n & parity_mask`` plus a fixed offset (see compile_terms).
    """

    coeff: np.ndarray        # float64 (L,)
    amask: np.ndarray        # int64 (L,)
    cmask: np.ndarray        # int64 (L,)
    flip: np.ndarray         # int64 (L,)  = amask ^ cmask
    parity_mask: np.ndarray  # int64 (L,)
    parity_offset: np.ndarray  # int64 (L,) in {0, 1}
    constant: float
    q: int


def _below(orb: int) -> int:
    return (1 << orb) - 1


def compile_terms(h: FermionHamiltonian) -> CompiledTerms:
    """Flatten a Hamiltonian for vectorized application.

    Parity bookkeeping: applying annihilators descending contributes
    popcount(n & below(a_i)) for each, on the original n (clearing a higher
    bit never affects a lower mask).  Creators ascending act on
    n1 = n & ~amask; with two creators c1 < c2 the freshly set c1 bit adds a
    fixed +1 inside below(c2).  Mod 2, the sum of masked popcounts equals the
    popcount of the XOR of the masks, giving one mask + one offset per term.
    """
    L = len(h.terms)
    coeff = np.empty(L)
    amask = np.zeros(L, dtype=np.int64)
    cmask = np.zeros(L, dtype=np.int64)
    pmask = np.zeros(L, dtype=np.int64)
    poff = np.zeros(L, dtype=np.int64)
    for i, t in enumerate(h.terms):
        coeff[i] = t.coefficient
        a = 0
        for orb in t.annihilate:
            a |= 1 << orb
        c = 0
        for orb in t.create:
            c |= 1 << orb
        p = 0
        for orb in t.annihilate:
            p ^= _below(orb)
        for orb in t.create:
            p ^= _below(orb) & ~a
        amask[i] = a
        cmask[i] = c
        pmask[i] = p
        poff[i] = 1 if len(t.create) == 2 and t.create[0] < t.create[1] else 0
    return CompiledTerms(
        coeff=coeff,
        amask=amask,
        cmask=cmask,
        flip=amask ^ cmask,
        parity_mask=pmask,
        parity_offset=poff,
        constant=h.constant,
        q=h.q,
    )


def term_images(ct: CompiledTerms, i: int, states: np.ndarray):
    """Apply term i to an int64 state array: (valid mask, images, signs)."""
    a = ct.amask[i]
    c = ct.cmask[i]
    valid = (states & a) == a
    valid &= (states & ~a & c) == 0
    parity = (np.bitwise_count(states & ct.parity_mask[i]) + ct.parity_offset[i]) & 1
    signs = 1.0 - 2.0 * parity
    return valid, states ^ ct.flip[i], signs


def apply_to_vector(h: FermionHamiltonian, vec: np.ndarray) -> np.ndarray:
    """H @ vec over the full 2^Q register (vec indexed by Fock integers)."""
    ct = h._compiled
    dim = 1 << h.q
    if vec.shape[0] != dim:
        raise ValueError("vector length does not match register size")
    idx = np.arange(dim, dtype=np.int64)
    out = ct.constant * vec.astype(np.complex128 if np.iscomplexobj(vec) else np.float64)
    for i in range(len(ct.coeff)):
        valid, _, signs = term_images(ct, i, idx)
        contrib = np.where(valid, ct.coeff[i] * signs * vec, 0.0)
        out += contrib[idx ^ ct.flip[i]]
    return out


def dense_matrix_on_basis(h: FermionHamiltonian, indices: np.ndarray) -> np.ndarray:
    """Dense Hamiltonian block over a sorted int64 array of Fock indices.

    Images that fall outside the given basis are dropped (restriction to the
    span).  Entries agree with matrix_element to float accumulation error.
    """
    indices = np.asarray(indices, dtype=np.int64)
    d = indices.shape[0]
    mat = np.zeros((d, d))
    ct = h._compiled
    cols = np.arange(d)
    for i in range(len(ct.coeff)):
        valid, images, signs = term_images(ct, i, indices)
        img = images[valid]
        pos = np.searchsorted(indices, img)
        pos_ok = pos < d
        hit = np.zeros_like(img, dtype=bool)
        hit[pos_ok] = indices[pos[pos_ok]] == img[pos_ok]
        rows = pos[hit]
        src = cols[valid][hit]
        # per term the source->image map is a bijection, so no index repeats
        mat[rows, src] += ct.coeff[i] * signs[valid][hit]
    mat[cols, cols] += ct.constant
    return mat


# ---------------------------------------------------------------------------
# FCIDUMP ingestion
# ---------------------------------------------------------------------------

_HEADER_RE = re.compile(r"NORB\s*=\s*(\d+).*?NELEC\s*=\s*(\d+).*?MS2\s*=\s*(-?\d+)", re.S)


def _read_fcidump_integrals(path: Path):
    """Raw (norb, nelec, ms2, constant, h1, eri) from a Molpro-style file."""
    text = path.read_text()
    m = _HEADER_RE.search(text)
    if not m:
        raise FcidumpError(f"{path}: header does not declare NORB/NELEC/MS2")
    norb, nelec, ms2 = (int(g) for g in m.groups())
    lines = text.splitlines()
    start = next(
        (k + 1 for k, line in enumerate(lines) if "&END" in line.upper() or line.strip() == "/"),
        None,
    )
    if start is None:
        raise FcidumpError(f"{path}: unterminated header")

    h1 = np.zeros((norb, norb))
    eri = np.zeros((norb, norb, norb, norb))
    h1_set = np.zeros((norb, norb), dtype=bool)
    eri_set = np.zeros((norb, norb, norb, norb), dtype=bool)
    constant = 0.0
    for line in lines[start:]:
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 5:
            raise FcidumpError(f"{path}: bad integral line {line!r}")
        value = float(parts[0])
        i, j, k, l = (int(p) for p in parts[1:])
        if max(i, j, k, l) > norb or min(i, j, k, l) < 0:
            raise FcidumpError(f"{path}: orbital index out of range in {line!r}")
        if i == j == k == l == 0:
            constant = value
        elif k == 0 and l == 0:
            if i == 0 or j == 0:
                raise FcidumpError(f"{path}: bad one-body indices in {line!r}")
            p, q = i - 1, j - 1
            for a, b in ((p, q), (q, p)):
                if h1_set[a, b] and abs(h1[a, b] - value) > 1e-10:
                    raise FcidumpError(f"{path}: conflicting h({a},{b}) entries")
                h1[a, b] = value
                h1_set[a, b] = True
        else:
            if min(i, j, k, l) == 0:
                raise FcidumpError(f"{path}: bad two-body indices in {line!r}")
            p, q, r, s = i - 1, j - 1, k - 1, l - 1
            perms = {
                (p, q, r, s), (q, p, r, s), (p, q, s, r), (q, p, s, r),
                (r, s, p, q), (s, r, p, q), (r, s, q, p), (s, r, q, p),
            }
            for t in perms:
                if eri_set[t] and abs(eri[t] - value) > 1e-10:
                    raise FcidumpError(f"{path}: conflicting integral entries at {t}")
                eri[t] = value
                eri_set[t] = True
    return norb, nelec, ms2, constant, h1, eri


def interactions_from_integrals(h1: np.ndarray, eri: np.ndarray, tol: float = 1e-14) -> list[Interaction]:
    """Expand spatial-orbital integrals (chemist notation) to canonical terms.

    One-body: sum_pq,s  h_pq a+_{ps} a_{qs}.
    Two-body: 1/2 sum  (pq|rs) a+_{ps} a+_{rt} a_{st} a_{qs'} over both spins;
    each quadruple is normal-ordered into ascending tuples with the matching
    permutation sign, and coincident keys are summed.
    """
    norb = h1.shape[0]
    acc: dict[tuple[tuple[int, ...], tuple[int, ...]], float] = {}

    def add(create2, annihilate2, value):
        if abs(value) == 0.0:
            return
        key = (create2, annihilate2)
        acc[key] = acc.get(key, 0.0) + value

    for p in range(norb):
        for q in range(norb):
            v = h1[p, q]
            if abs(v) < tol:
                continue
            for sp in (0, 1):
                add((p + sp * norb,), (q + sp * norb,), v)

    for p in range(norb):
        for q in range(norb):
            for r in range(norb):
                for s in range(norb):
                    v = eri[p, q, r, s]
                    if abs(v) < tol:
                        continue
                    for sp in (0, 1):
                        for tp in (0, 1):
                            P = p + sp * norb
                            Q = q + sp * norb
                            R = r + tp * norb
                            S = s + tp * norb
                            if P == R or S == Q:
                                continue
                            # operator a+_P a+_R a_S a_Q; canonical form has
                            # the larger creator leftmost and the larger
                            # annihilator rightmost
                            sign = 1.0
                            if P < R:
                                sign = -sign
                            if S > Q:
                                sign = -sign
                            create2 = (min(P, R), max(P, R))
                            annihilate2 = (min(S, Q), max(S, Q))
                            add(create2, annihilate2, sign * 0.5 * v)

    terms = [
        Interaction(v, c, a)
        for (c, a), v in acc.items()
        if abs(v) > tol
    ]
    # drop terms whose hermitian partner was cancelled to zero
    keys = {t.key for t in terms}
    terms = [t for t in terms if t.create == t.annihilate or (t.annihilate, t.create) in keys]
    terms.sort(key=lambda t: t.key)
    return terms


def load_fcidump(path: str | Path) -> tuple[FermionHamiltonian, SystemMetadata]:
    """Load an FCIDUMP plus its sidecar metadata into spin-orbital form.

    The sidecar is a JSON file next to the dump (same stem, .json suffix)
    carrying the reference-state data written by the exporter.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(path)
    sidecar = path.with_suffix(".json")
    if not sidecar.exists():
        raise FcidumpError(f"missing sidecar metadata {sidecar}")

    norb, nelec, ms2, constant, h1, eri = _read_fcidump_integrals(path)
    if np.abs(h1 - h1.T).max() > 1e-10:
        raise FcidumpError(f"{path}: one-body integrals not hermitian")
    q = 2 * norb
    terms = interactions_from_integrals(h1, eri)
    ham = FermionHamiltonian(terms=terms, constant=constant, q=q)

    meta_raw = json.loads(sidecar.read_text())
    try:
        n_spatial = int(meta_raw["n_spatial_orbitals"])
        n_alpha = int(meta_raw["n_alpha"])
        n_beta = int(meta_raw["n_beta"])
        hf_energy = float(meta_raw["hf_energy_ha"])
        orb_e = tuple(float(x) for x in meta_raw["orbital_energies_ha"])
        occ_bits = str(meta_raw["hf_occupation_bits"])
        bond = float(meta_raw["bond_length_angstrom"])
    except KeyError as exc:
        raise FcidumpError(f"{sidecar}: missing field {exc}") from exc
    if n_spatial != norb:
        raise FcidumpError(f"{sidecar}: sidecar norb {n_spatial} != FCIDUMP NORB {norb}")
    if n_alpha + n_beta != nelec:
        raise FcidumpError(f"{sidecar}: electron counts disagree with NELEC={nelec}")
    if n_alpha - n_beta != ms2:
        raise FcidumpError(f"{sidecar}: spin projection disagrees with MS2={ms2}")
    meta = SystemMetadata(
        q=q,
        n_alpha=n_alpha,
        n_beta=n_beta,
        hf_occupation=FockState.from_bits(occ_bits),
        hf_energy=hf_energy,
        orbital_energies=orb_e,
        bond_length=bond,
    )
    return ham, meta
