"""Work content of quantum states.

Passive-state construction, optimal extraction unitary, ergotropy
W = Tr(rho H) - Tr(rho_p H), the passivity predicate, and the bipartite
ergotropy gap (global minus summed local extractable work).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .matcore import as_matrix, eig_hermitian, kron, partial_trace
from .states import DensityMatrix, Hamiltonian, energy
from .tolerances import PASSIVE_DEFAULT


@dataclass(frozen=True)
class WorkReport:
    """One work-extraction analysis: energies, ergotropy, and the optimal unitary."""

    input_energy: float
    passive_energy: float
    ergotropy: float
    passive_state: DensityMatrix
    extraction_unitary: np.ndarray


def _as_hamiltonian(h) -> Hamiltonian:
    return h if isinstance(h, Hamiltonian) else Hamiltonian(h)


def _check_dims(rho, h: Hamiltonian):
    rm = as_matrix(rho)
    if rm.shape[0] != h.dim:
        raise DimensionMismatchError(f"state dim {rm.shape[0]} != H dim {h.dim}")
    return rm


def _descending_populations(rho):
    """Eigenvalues of rho sorted non-increasing (stable in original order)
    with aligned eigenvectors."""
    spec = eig_hermitian(rho)
    idx = np.argsort(-spec.eigenvalues, kind="stable")
    return spec.eigenvalues[idx], spec.eigenvectors[:, idx]


def passive_state(rho, h) -> DensityMatrix:
    """State with rho's spectrum and the least energy: descending populations
    on ascending energy levels."""
    h = _as_hamiltonian(h)
    rm = _check_dims(rho, h)
    pops, _ = _descending_populations(rm)
    ev = h.spectrum.eigenvectors
    return DensityMatrix((ev * pops) @ ev.conj().T)


def extraction_unitary(rho, h) -> np.ndarray:
    """Unitary mapping rho's eigenvectors (by descending population) onto the
    energy eigenvectors (by ascending energy); sends rho to its passive state."""
    h = _as_hamiltonian(h)
    rm = _check_dims(rho, h)
    _, vecs = _descending_populations(rm)
    return h.spectrum.eigenvectors @ vecs.conj().T


def ergotropy(rho, h) -> WorkReport:
    """Maximal unitarily extractable work and the witnesses that realise it."""
    h = _as_hamiltonian(h)
    rm = _check_dims(rho, h)
    pops, vecs = _descending_populations(rm)
    ev = h.spectrum.eigenvectors
    rho_p = DensityMatrix((ev * pops) @ ev.conj().T)
    e_in = energy(rm, h)
    e_p = energy(rho_p, h)
    return WorkReport(
        input_energy=e_in,
        passive_energy=e_p,
        ergotropy=e_in - e_p,
        passive_state=rho_p,
        extraction_unitary=ev @ vecs.conj().T,
    )


def is_passive(rho, h, tol: float = PASSIVE_DEFAULT) -> bool:
    """True iff no unitary can extract more than ``tol`` of work.

    Defined through ergotropy rather than structural diagonality so that
    degenerate Hamiltonians need no basis choice.
    """
    return ergotropy(rho, h).ergotropy <= tol


def ergotropy_gap(rho_ab, h_a, h_b, dims) -> float:
    """Global ergotropy of a bipartite state minus the local ergotropies.

    Non-negative; zero on product states; witnesses work stored in
    correlations."""
    h_a = _as_hamiltonian(h_a)
    h_b = _as_hamiltonian(h_b)
    da, db = (int(x) for x in dims)
    m = as_matrix(rho_ab)
    if da * db != m.shape[0]:
        raise DimensionMismatchError(f"dims {da}x{db} != state dim {m.shape[0]}")
    if h_a.dim != da or h_b.dim != db:
        raise DimensionMismatchError("local Hamiltonian dims do not match subsystems")
    h_tot = Hamiltonian(
        kron(h_a.matrix, np.eye(db)) + kron(np.eye(da), h_b.matrix)
    )
    w_global = ergotropy(rho_ab, h_tot).ergotropy
    rho_a = DensityMatrix(partial_trace(m, (da, db), 0))
    rho_b = DensityMatrix(partial_trace(m, (da, db), 1))
    w_a = ergotropy(rho_a, h_a).ergotropy
    w_b = ergotropy(rho_b, h_b).ergotropy
    return w_global - w_a - w_b
