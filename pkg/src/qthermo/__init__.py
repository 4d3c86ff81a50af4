"""Ergotropy, energy cloning/splitting, work masking, and numerical no-go
searches for finite-dimensional quantum systems."""

from .backend import active_name as active_backend, use as use_backend
from .ergotropy import WorkReport, ergotropy, ergotropy_gap, extraction_unitary, is_passive, passive_state
from .matcore import (
    HermitianSpectrum,
    complete_to_unitary,
    eig_hermitian,
    expm_i_hermitian,
    is_hermitian,
    is_unitary,
    kron,
    partial_trace,
    sample_ginibre_density,
    sample_haar_ket,
    sample_haar_unitary,
    trace_distance,
)
from .nogo import (
    SearchResult,
    UnitaryParams,
    energy_preserving_unitary,
    minimize,
    objective_bloch_radius,
    objective_universal_mask,
    objective_work_clone,
    scan_energy_preserving_mask,
    unitary_distance,
    unitary_from_params,
)
from .protocols import (
    ProtocolResult,
    diagonal_work_masker,
    energy_cloner,
    energy_splitter,
    four_party_masker,
    run_protocol,
    signaling_pair,
)
from .states import (
    BlochVector,
    DensityMatrix,
    GellMannBasis,
    Hamiltonian,
    bloch_velocity,
    energy,
    equal_energy_partner,
    evolve,
    from_bloch,
    gell_mann_basis,
    to_bloch,
)

__version__ = "0.1.0"

__all__ = [
    "BlochVector",
    "DensityMatrix",
    "GellMannBasis",
    "Hamiltonian",
    "HermitianSpectrum",
    "ProtocolResult",
    "SearchResult",
    "UnitaryParams",
    "WorkReport",
    "active_backend",
    "bloch_velocity",
    "complete_to_unitary",
    "diagonal_work_masker",
    "eig_hermitian",
    "energy",
    "energy_cloner",
    "energy_preserving_unitary",
    "energy_splitter",
    "equal_energy_partner",
    "ergotropy",
    "ergotropy_gap",
    "evolve",
    "expm_i_hermitian",
    "extraction_unitary",
    "four_party_masker",
    "from_bloch",
    "gell_mann_basis",
    "is_hermitian",
    "is_passive",
    "is_unitary",
    "kron",
    "minimize",
    "objective_bloch_radius",
    "objective_universal_mask",
    "objective_work_clone",
    "partial_trace",
    "passive_state",
    "run_protocol",
    "sample_ginibre_density",
    "sample_haar_ket",
    "sample_haar_unitary",
    "scan_energy_preserving_mask",
    "signaling_pair",
    "to_bloch",
    "trace_distance",
    "unitary_distance",
    "unitary_from_params",
    "use_backend",
]
