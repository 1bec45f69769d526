"""Energy-cutoff filtering and Jordan-Wigner expansion into Pauli strings.

The mapping follows the fermion module's parity convention: mode q maps to
qubit q, with a_q = (X_q + iY_q)/2 times a Z string on every qubit below q.
Words are stored as length-Q strings over IXYZ with character i acting on
qubit i.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .fermion import FermionHamiltonian, Interaction

IMAG_TOLERANCE = 1e-12

# single-qubit products: (left, right) -> (phase, result)
_MUL = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}


@dataclass(frozen=True)
class PauliString:
    """One weighted Pauli word; character i of ``word`` acts on qubit i."""

    word: str
    coefficient: float

    def __post_init__(self):
        if any(ch not in "IXYZ" for ch in self.word):
            raise ValueError(f"invalid Pauli word {self.word!r}")

    @property
    def is_identity(self) -> bool:
        return set(self.word) <= {"I"}


@dataclass
class PauliSum:
    """Hermitian sum of Pauli strings on Q qubits, duplicate-free words."""

    terms: list[PauliString]
    q: int

    def __post_init__(self):
        words = [t.word for t in self.terms]
        if len(set(words)) != len(words):
            raise ValueError("duplicate Pauli words")
        if any(len(w) != self.q for w in words):
            raise ValueError("word length does not match qubit count")


def cutoff_filter(ham: FermionHamiltonian, cutoff: float) -> FermionHamiltonian:
    """Drop interactions with |h| below the cutoff; keep the rest unchanged."""
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    kept = [t for t in ham.terms if abs(t.coefficient) >= cutoff]
    return FermionHamiltonian(terms=kept, constant=ham.constant, q=ham.q)


def _ladder_words(orb: int, q: int, dagger: bool) -> list[tuple[complex, str]]:
    """a_orb (or its dagger) as two weighted words including the Z string."""
    y_phase = -0.5j if dagger else 0.5j
    x_word = ["I"] * q
    y_word = ["I"] * q
    for lower in range(orb):
        x_word[lower] = "Z"
        y_word[lower] = "Z"
    x_word[orb] = "X"
    y_word[orb] = "Y"
    return [(0.5, "".join(x_word)), (y_phase, "".join(y_word))]


def _multiply_words(a: tuple[complex, str], b: tuple[complex, str]) -> tuple[complex, str]:
    phase = a[0] * b[0]
    out = []
    for la, lb in zip(a[1], b[1]):
        ph, lc = _MUL[(la, lb)]
        phase *= ph
        out.append(lc)
    return phase, "".join(out)


def _interaction_words(term: Interaction, q: int) -> list[tuple[complex, str]]:
    # canonical operator order: a+_{c2} a+_{c1} a_{a1} a_{a2}
    factors = []
    for orb in reversed(term.create):
        factors.append(_ladder_words(orb, q, dagger=True))
    for orb in term.annihilate:
        factors.append(_ladder_words(orb, q, dagger=False))
    products = [(complex(term.coefficient), "I" * q)]
    for factor in factors:
        products = [_multiply_words(p, w) for p in products for w in factor]
    return products


def jordan_wigner(ham: FermionHamiltonian) -> PauliSum:
    """Expand a hermitian fermionic Hamiltonian into real Pauli strings.

    Like words are combined and emitted sorted by descending magnitude with
    a lexicographic tie-break, which fixes the downstream product ordering.
    """
    acc: dict[str, complex] = {}
    if ham.constant != 0.0:
        acc["I" * ham.q] = complex(ham.constant)
    for term in ham.terms:
        for phase, word in _interaction_words(term, ham.q):
            acc[word] = acc.get(word, 0.0) + phase
    terms = []
    for word, coeff in acc.items():
        if abs(coeff.imag) > IMAG_TOLERANCE:
            raise ValueError(
                f"residual imaginary coefficient {coeff.imag:.3e} on {word}; "
                "sign convention violated"
            )
        if abs(coeff.real) > 1e-14:
            terms.append(PauliString(word, float(coeff.real)))
    terms.sort(key=lambda t: (-abs(t.coefficient), t.word))
    return PauliSum(terms=terms, q=ham.q)


def format_pauli_sum(ps: PauliSum) -> str:
    """Text export, one `coefficient word` line per term."""
    return "".join(f"{t.coefficient:.16g} {t.word}\n" for t in ps.terms)


def write_pauli_sum(ps: PauliSum, path: str | Path) -> None:
    Path(path).write_text(format_pauli_sum(ps))
