"""Fermion-layer tests against the dense kron-product oracle."""

import numpy as np
import pytest

from cvqe.fermion import (
    FcidumpError,
    FermionHamiltonian,
    FockState,
    Interaction,
    SystemMetadata,
    apply_interaction,
    apply_to_vector,
    compile_terms,
    connected_states,
    dense_matrix_on_basis,
    hartree_fock_state,
    interactions_from_integrals,
    load_fcidump,
    matrix_element,
    term_images,
)

from bruteforce import (
    dense_from_integrals,
    dense_from_interactions,
    random_hermitian_integrals,
    read_fcidump_raw,
)


def dense_via_matrix_element(ham):
    dim = 1 << ham.q
    states = [FockState(i, ham.q) for i in range(dim)]
    return np.array([[matrix_element(ham, a, b) for b in states] for a in states])


def random_hamiltonian(norb, rng):
    h1, eri = random_hermitian_integrals(norb, rng)
    terms = interactions_from_integrals(h1, eri)
    ham = FermionHamiltonian(terms=terms, constant=rng.normal(), q=2 * norb)
    return ham, h1, eri


# ---------------------------------------------------------------------------
# apply_interaction
# ---------------------------------------------------------------------------

def test_number_operator_on_occupied_state():
    t = Interaction(1.0, (0,), (0,))
    out = apply_interaction(t, FockState.from_occupied([0], 4))
    assert out == (FockState.from_occupied([0], 4), 1)


def test_annihilating_empty_orbital_gives_nothing():
    t = Interaction(1.0, (1,), (1,))
    assert apply_interaction(t, FockState.from_occupied([0], 4)) is None


def test_hop_sign_matches_dense_oracle():
    # a+_3 a_0 on occupation {0,1}: oracle says image {1,3} with sign -1
    t = Interaction(1.0, (3,), (0,))
    out = apply_interaction(t, FockState.from_occupied([0, 1], 4))
    assert out == (FockState.from_occupied([1, 3], 4), -1)
    dense = dense_from_interactions([t], 0.0, 4)
    src = FockState.from_occupied([0, 1], 4).index
    dst = FockState.from_occupied([1, 3], 4).index
    assert dense[dst, src] == -1.0


def test_apply_interaction_agrees_with_dense_everywhere(rng):
    n_modes = 4
    tuples = [
        ((0,), (0,)), ((2,), (1,)), ((0, 3), (1, 2)), ((1, 2), (1, 2)), ((0, 1), (0, 3)),
    ]
    for create, annihilate in tuples:
        t = Interaction(1.0, create, annihilate)
        dense = dense_from_interactions([t], 0.0, n_modes)
        for idx in range(1 << n_modes):
            out = apply_interaction(t, FockState(idx, n_modes))
            col = dense[:, idx]
            if out is None:
                assert not col.any()
            else:
                assert col[out[0].index] == out[1]
                assert np.count_nonzero(col) == 1


# ---------------------------------------------------------------------------
# matrix_element / compiled terms
# ---------------------------------------------------------------------------

def test_single_number_term_diagonal():
    ham = FermionHamiltonian([Interaction(0.5, (0,), (0,))], constant=0.25, q=2)
    n = FockState.from_occupied([0], 2)
    assert matrix_element(ham, n, n) == pytest.approx(0.75)


def test_states_differing_in_many_orbitals_decouple(rng):
    ham, _, _ = random_hamiltonian(3, rng)
    a = FockState.from_occupied([0, 1, 2, 3, 4], 6)
    b = FockState.from_occupied([0], 6)
    assert matrix_element(ham, a, b) == 0.0


@pytest.mark.parametrize("norb", [1, 2, 3])
def test_dense_equivalence_with_integral_oracle(norb, rng):
    ham, h1, eri = random_hamiltonian(norb, rng)
    ours = dense_via_matrix_element(ham)
    oracle = dense_from_integrals(h1, eri, ham.constant)
    assert np.abs(ours - oracle).max() < 1e-12


def test_hermiticity_on_small_instance(rng):
    ham, _, _ = random_hamiltonian(3, rng)
    mat = dense_via_matrix_element(ham)
    assert np.abs(mat - mat.T).max() < 1e-12


def test_particle_number_block_structure(rng):
    ham, _, _ = random_hamiltonian(2, rng)
    dim = 1 << ham.q
    for a in range(dim):
        for b in range(dim):
            if bin(a).count("1") != bin(b).count("1"):
                assert matrix_element(ham, FockState(a, ham.q), FockState(b, ham.q)) == 0.0


def test_compiled_terms_match_scalar_path(rng):
    ham, _, _ = random_hamiltonian(3, rng)
    ct = compile_terms(ham)
    states = np.arange(1 << ham.q, dtype=np.int64)
    for i, term in enumerate(ham.terms):
        valid, images, signs = term_images(ct, i, states)
        for idx in range(states.size):
            out = apply_interaction(term, FockState(idx, ham.q))
            assert valid[idx] == (out is not None)
            if out is not None:
                assert images[idx] == out[0].index
                assert signs[idx] == out[1]


def test_dense_matrix_on_basis_matches_matrix_element(rng):
    ham, _, _ = random_hamiltonian(2, rng)
    indices = np.arange(1 << ham.q, dtype=np.int64)
    mat = dense_matrix_on_basis(ham, indices)
    assert np.abs(mat - dense_via_matrix_element(ham)).max() < 1e-12
    # restriction to a sub-basis is the plain submatrix
    sub = np.array([0, 3, 5, 9, 12], dtype=np.int64)
    mat_sub = dense_matrix_on_basis(ham, sub)
    assert np.abs(mat_sub - mat[np.ix_(sub, sub)]).max() < 1e-12


def test_apply_to_vector_matches_dense(rng):
    ham, _, _ = random_hamiltonian(2, rng)
    dense = dense_via_matrix_element(ham)
    vec = rng.normal(size=dense.shape[0]) + 1j * rng.normal(size=dense.shape[0])
    assert np.abs(apply_to_vector(ham, vec) - dense @ vec).max() < 1e-10


# ---------------------------------------------------------------------------
# connected_states
# ---------------------------------------------------------------------------

def test_diagonal_hamiltonian_connects_only_itself():
    ham = FermionHamiltonian([Interaction(1.0, (0,), (0,))], constant=0.0, q=2)
    n = FockState.from_occupied([0], 2)
    assert connected_states(ham, n) == {n}


def test_connected_states_by_exhaustive_scan(rng):
    ham, _, _ = random_hamiltonian(3, rng)
    for idx in [0, 5, 21, 63]:
        n = FockState(idx, ham.q)
        got = connected_states(ham, n)
        want = {
            FockState(m, ham.q)
            for m in range(1 << ham.q)
            if abs(matrix_element(ham, FockState(m, ham.q), n)) > 1e-12
        }
        assert got == want


# ---------------------------------------------------------------------------
# FCIDUMP loading
# ---------------------------------------------------------------------------

def write_sidecar(path, norb, n_alpha, n_beta, occupation_bits, hf=0.0, bond=0.0):
    import json

    path.write_text(json.dumps({
        "n_spatial_orbitals": norb,
        "n_alpha": n_alpha,
        "n_beta": n_beta,
        "hf_energy_ha": hf,
        "orbital_energies_ha": [0.0] * norb,
        "hf_occupation_bits": occupation_bits,
        "bond_length_angstrom": bond,
    }))


def test_constant_only_fcidump(tmp_path):
    f = tmp_path / "const.fcidump"
    f.write_text("&FCI NORB=1,NELEC=0,MS2=0,\n&END\n1.5 0 0 0 0\n")
    write_sidecar(tmp_path / "const.json", 1, 0, 0, "00")
    ham, meta = load_fcidump(f)
    assert ham.terms == []
    assert ham.constant == 1.5
    assert ham.q == 2


def test_missing_sidecar_raises(tmp_path):
    f = tmp_path / "x.fcidump"
    f.write_text("&FCI NORB=1,NELEC=0,MS2=0,\n&END\n1.5 0 0 0 0\n")
    with pytest.raises(FcidumpError, match="sidecar"):
        load_fcidump(f)


def test_malformed_header_raises(tmp_path):
    f = tmp_path / "x.fcidump"
    f.write_text("&FCI NORB=1,\n&END\n1.5 0 0 0 0\n")
    write_sidecar(tmp_path / "x.json", 1, 0, 0, "00")
    with pytest.raises(FcidumpError, match="header"):
        load_fcidump(f)


def test_index_out_of_range_raises(tmp_path):
    f = tmp_path / "x.fcidump"
    f.write_text("&FCI NORB=1,NELEC=0,MS2=0,\n&END\n0.5 2 1 0 0\n")
    write_sidecar(tmp_path / "x.json", 1, 0, 0, "00")
    with pytest.raises(FcidumpError, match="range"):
        load_fcidump(f)


def test_h2_fixture_matches_dense_diagonalization(h2_fixture, fixtures_dir):
    ham, meta = h2_fixture
    assert ham.q == 4
    ours = dense_via_matrix_element(ham)
    norb, constant, h1, eri = read_fcidump_raw(fixtures_dir / "h2" / "h2_0.74.fcidump")
    oracle = dense_from_integrals(h1, eri, constant)
    assert np.abs(ours - oracle).max() < 1e-12
    e_ours = np.linalg.eigvalsh(ours)[0]
    e_oracle = np.linalg.eigvalsh(oracle)[0]
    assert e_ours == pytest.approx(e_oracle, abs=1e-12)


def test_h2_hf_diagonal_matches_metadata(h2_fixture):
    ham, meta = h2_fixture
    hf = hartree_fock_state(meta)
    assert hf.occupied == (0, 2)  # lowest spatial orbital, both spins
    assert matrix_element(ham, hf, hf) == pytest.approx(meta.hf_energy, abs=1e-8)


def test_h3o_fixture_shape(h3o_fixture):
    ham, meta = h3o_fixture
    assert ham.q == 14
    assert meta.n_alpha == 4 and meta.n_beta == 4
    assert hartree_fock_state(meta).popcount == 8


def test_h3o_hf_energy_roundtrip(h3o_fixture):
    ham, meta = h3o_fixture
    hf = hartree_fock_state(meta)
    assert matrix_element(ham, hf, hf) == pytest.approx(meta.hf_energy, abs=1e-8)


def test_h3o_connected_from_hf_matches_column_scan(h3o_fixture):
    from cvqe.subspace import sector_indices

    ham, meta = h3o_fixture
    hf = hartree_fock_state(meta)
    got = {s.index for s in connected_states(ham, hf)}
    # H conserves (N_alpha, N_beta): scan the HF column of the sector matrix
    idx = sector_indices(ham.q, meta.n_alpha, meta.n_beta)
    mat = dense_matrix_on_basis(ham, idx)
    col = mat[:, np.searchsorted(idx, hf.index)]
    want = {int(idx[k]) for k in np.nonzero(np.abs(col) > 1e-12)[0]}
    assert got == want


def test_empty_molecule_hf_state():
    meta = SystemMetadata(
        q=4, n_alpha=0, n_beta=0,
        hf_occupation=FockState(0, 4),
        hf_energy=0.0, orbital_energies=(0.0, 0.0), bond_length=0.0,
    )
    assert hartree_fock_state(meta).index == 0
