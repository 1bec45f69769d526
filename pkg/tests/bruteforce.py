"""Dense brute-force oracles built from elementary operator matrices.

Everything here works on full 2^Q matrices via Kronecker products, so it is
independent of the bit-twiddling production code it cross-checks.  Mode 0 is
the least significant bit of the basis index.
"""

import numpy as np

_LOWER = np.array([[0.0, 1.0], [0.0, 0.0]])  # maps |1> -> |0>
_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
_I2 = np.eye(2)

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def annihilator(q: int, n_modes: int) -> np.ndarray:
    """Dense matrix of a_q with a Z parity string on modes below q."""
    op = np.eye(1)
    for mode in range(n_modes):
        if mode < q:
            factor = _Z
        elif mode == q:
            factor = _LOWER
        else:
            factor = _I2
        op = np.kron(factor, op)  # higher modes are more significant bits
    return op


def creator(q: int, n_modes: int) -> np.ndarray:
    return annihilator(q, n_modes).T


def dense_from_interactions(terms, constant: float, n_modes: int) -> np.ndarray:
    """Assemble sum_l h_l c+(create) c(annihilate) + constant by brute force."""
    dim = 1 << n_modes
    mat = constant * np.eye(dim)
    for t in terms:
        op = np.eye(dim)
        # canonical operator: a+_{c2} a+_{c1} a_{a1} a_{a2}
        for orb in reversed(t.create):
            op = op @ creator(orb, n_modes)
        for orb in t.annihilate:
            op = op @ annihilator(orb, n_modes)
        mat = mat + t.coefficient * op
    return mat


def dense_from_integrals(h1: np.ndarray, eri: np.ndarray, constant: float) -> np.ndarray:
    """Spin-orbital Hamiltonian directly from spatial integrals.

    H = const + sum h_pq a+_{ps} a_{qs}
             + 1/2 sum (pq|rs) a+_{ps} a+_{rt} a_{st} a_{qs'}
    with chemist-notation two-body integrals and blocked spin ordering.
    """
    norb = h1.shape[0]
    n_modes = 2 * norb
    dim = 1 << n_modes
    a_ops = [annihilator(q, n_modes) for q in range(n_modes)]
    c_ops = [op.T for op in a_ops]
    mat = constant * np.eye(dim)
    for p in range(norb):
        for q in range(norb):
            if h1[p, q] == 0.0:
                continue
            for sp in (0, 1):
                mat += h1[p, q] * c_ops[p + sp * norb] @ a_ops[q + sp * norb]
    for p in range(norb):
        for q in range(norb):
            for r in range(norb):
                for s in range(norb):
                    v = eri[p, q, r, s]
                    if v == 0.0:
                        continue
                    for sp in (0, 1):
                        for tp in (0, 1):
                            P, Q = p + sp * norb, q + sp * norb
                            R, S = r + tp * norb, s + tp * norb
                            mat += 0.5 * v * c_ops[P] @ c_ops[R] @ a_ops[S] @ a_ops[Q]
    return mat


def dense_from_pauli_terms(terms, n_qubits: int) -> np.ndarray:
    """Sum of coefficient-weighted Pauli words as a dense matrix.

    Word character i acts on qubit i (bit i of the basis index).
    """
    dim = 1 << n_qubits
    mat = np.zeros((dim, dim), dtype=complex)
    for word, coeff in terms:
        op = np.eye(1, dtype=complex)
        for ch in word:  # qubit 0 first => least significant factor
            op = np.kron(PAULI[ch], op)
        mat += coeff * op
    return mat


def random_hermitian_integrals(norb: int, rng: np.random.Generator):
    """Random real h1 (symmetric) and eri with full 8-fold symmetry."""
    h1 = rng.normal(size=(norb, norb))
    h1 = 0.5 * (h1 + h1.T)
    raw = rng.normal(size=(norb,) * 4)
    eri = np.zeros_like(raw)
    for perm in (
        (0, 1, 2, 3), (1, 0, 2, 3), (0, 1, 3, 2), (1, 0, 3, 2),
        (2, 3, 0, 1), (3, 2, 0, 1), (2, 3, 1, 0), (3, 2, 1, 0),
    ):
        eri += np.transpose(raw, perm)
    eri /= 8.0
    return h1, eri


def read_fcidump_raw(path):
    """Minimal FCIDUMP reader used only to feed the dense integral oracle."""
    import re

    text = path.read_text() if hasattr(path, "read_text") else open(path).read()
    m = re.search(r"NORB\s*=\s*(\d+)", text)
    norb = int(m.group(1))
    h1 = np.zeros((norb, norb))
    eri = np.zeros((norb,) * 4)
    constant = 0.0
    body = False
    for line in text.splitlines():
        if not body:
            if "&END" in line.upper() or line.strip() == "/":
                body = True
            continue
        parts = line.split()
        if not parts:
            continue
        v = float(parts[0])
        i, j, k, l = (int(x) for x in parts[1:])
        if i == j == k == l == 0:
            constant = v
        elif k == l == 0:
            h1[i - 1, j - 1] = v
            h1[j - 1, i - 1] = v
        else:
            p, q, r, s = i - 1, j - 1, k - 1, l - 1
            for a, b in ((p, q), (q, p)):
                for c, d in ((r, s), (s, r)):
                    eri[a, b, c, d] = v
                    eri[c, d, a, b] = v
    return norb, constant, h1, eri
