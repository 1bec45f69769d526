"""Cascaded eigensolver: sampled guiding states plus Fock-subspace diagonalization."""

from .fermion import (
    FcidumpError,
    FermionHamiltonian,
    FockState,
    Interaction,
    SystemMetadata,
    apply_interaction,
    connected_states,
    hartree_fock_state,
    load_fcidump,
    matrix_element,
)
from .pipeline import (
    ConfigError,
    CostReport,
    RunConfig,
    RunRecord,
    measurement_cost,
    run_experiment,
)
from .qubit_map import PauliString, PauliSum, cutoff_filter, jordan_wigner
from .sampler import Provenance, SampleSet, sample, sector_filter
from .simulator import (
    Circuit,
    EvolutionPlan,
    Gate,
    Statevector,
    adiabatic_time_bound,
    emit_pauli_circuit,
    exact_guiding_state,
    pauli_exponential,
    prepare_reference,
    simulate_circuit,
    trotter_guiding_state,
)
from .subspace import (
    GroundTruth,
    SpectralResult,
    SubspaceBasis,
    assemble_subspace_hamiltonian,
    diagonalize,
    energy_deviation,
    expand_basis,
    expectation_energy,
    fci_ground_state,
    state_deviation,
)

__all__ = [
    "Circuit",
    "ConfigError",
    "CostReport",
    "EvolutionPlan",
    "FcidumpError",
    "FermionHamiltonian",
    "FockState",
    "Gate",
    "GroundTruth",
    "Interaction",
    "PauliString",
    "PauliSum",
    "Provenance",
    "RunConfig",
    "RunRecord",
    "SampleSet",
    "SpectralResult",
    "Statevector",
    "SubspaceBasis",
    "SystemMetadata",
    "adiabatic_time_bound",
    "apply_interaction",
    "assemble_subspace_hamiltonian",
    "connected_states",
    "cutoff_filter",
    "diagonalize",
    "emit_pauli_circuit",
    "energy_deviation",
    "exact_guiding_state",
    "expand_basis",
    "expectation_energy",
    "fci_ground_state",
    "hartree_fock_state",
    "jordan_wigner",
    "load_fcidump",
    "matrix_element",
    "measurement_cost",
    "pauli_exponential",
    "prepare_reference",
    "run_experiment",
    "sample",
    "sector_filter",
    "simulate_circuit",
    "state_deviation",
    "trotter_guiding_state",
]
