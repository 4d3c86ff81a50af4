"""Explicit constructions: energy cloner, energy splitter, diagonal work
masker, the four-party correlation masker, and the signaling witness pair.

The cloner is completed by modular addition (a generalized CNOT); the other
partial isometries are completed deterministically with
`matcore.complete_to_unitary`. Every guarantee below concerns only the
defined slice of each unitary, so the completion freedom is irrelevant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadDimensionError, BadFractionError
from .matcore import as_matrix, complete_to_unitary, kron, partial_trace
from .states import DensityMatrix, Hamiltonian, energy


@dataclass(frozen=True)
class ProtocolResult:
    """Uniform carrier for one protocol run on a concrete input."""

    global_output: DensityMatrix
    marginals: tuple
    unitary: np.ndarray
    energy_ledger: dict


def run_protocol(unitary, rho_in, subsystem_dims, h) -> ProtocolResult:
    """Apply ``unitary`` to rho_in ⊗ |0...0><0...0| and collect marginals.

    ``subsystem_dims`` lists every factor (the input occupies factor 0, all
    others start in their ground basis state); ``h`` is the per-subsystem
    Hamiltonian used for the energy ledger.
    """
    u = as_matrix(unitary)
    h = h if isinstance(h, Hamiltonian) else Hamiltonian(h)
    dims = [int(d) for d in subsystem_dims]
    rho = as_matrix(rho_in)
    anc_dim = int(np.prod(dims[1:])) if len(dims) > 1 else 1
    anc = np.zeros((anc_dim, anc_dim), dtype=np.complex128)
    anc[0, 0] = 1.0
    joint = kron(rho, anc) if anc_dim > 1 else rho
    out = u @ joint @ u.conj().T
    global_output = DensityMatrix(out)
    marginals = tuple(
        DensityMatrix(partial_trace(out, dims, i)) for i in range(len(dims))
    )
    h_tot = sum(
        kron(kron(np.eye(int(np.prod(dims[:i]))), h.matrix), np.eye(int(np.prod(dims[i + 1:]))))
        for i in range(len(dims))
    )
    ledger = {
        "input_energy": energy(rho, h),
        "output_energy": float(np.trace(out @ h_tot).real),
        "marginal_energies": [energy(m, h) for m in marginals],
    }
    return ProtocolResult(
        global_output=global_output,
        marginals=marginals,
        unitary=u,
        energy_ledger=ledger,
    )


def energy_cloner(d: int) -> np.ndarray:
    """Modular-addition unitary |k>|j> -> |k>|(j+k) mod d>.

    Restricted to |k>|0> it copies the basis label, so both marginals of
    U(rho ⊗ |0><0|)U† carry the input's energy for any Hamiltonian diagonal
    in the computational basis, for pure and mixed rho alike.
    """
    d = int(d)
    if d < 2:
        raise BadDimensionError(f"cloner needs d >= 2, got {d}")
    u = np.zeros((d * d, d * d), dtype=np.complex128)
    for k in range(d):
        for j in range(d):
            u[k * d + (j + k) % d, k * d + j] = 1.0
    return u


def energy_splitter(d: int, p: float) -> np.ndarray:
    """Unitary splitting a state's energy between system and ancilla as p : 1-p.

    Acts as |00> -> |00> and |k0> -> sqrt(p)|k0> + sqrt(1-p)|0k> for k >= 1;
    with the ground energy at zero the output marginal energies are p*E and
    (1-p)*E.
    """
    d = int(d)
    if d < 2:
        raise BadDimensionError(f"splitter needs d >= 2, got {d}")
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise BadFractionError(f"fraction {p} outside [0, 1]")
    cols = {}
    e0 = np.zeros(d * d, dtype=np.complex128)
    e0[0] = 1.0
    cols[0] = e0
    sp = np.sqrt(p)
    sq = np.sqrt(1.0 - p)
    for k in range(1, d):
        v = np.zeros(d * d, dtype=np.complex128)
        v[k * d] = sp  # |k0>
        v[k] = sq      # |0k>
        cols[k * d] = v
    return complete_to_unitary(cols, d * d)


def diagonal_work_masker(d: int) -> np.ndarray:
    """Energy-preserving unitary masking the work of energy-diagonal states.

    Acts as |k0> -> (|0k> + |1(k-1)> + ... + |k0>)/sqrt(k+1). For an input
    rho = sum_k C_k |k><k| under the equally spaced Hamiltonian both
    marginals equal sum_k p_k |k><k| with p_k = sum_{j>=k} C_j/(j+1), which
    is non-increasing, hence passive; the global energy is conserved.
    """
    d = int(d)
    if d < 2:
        raise BadDimensionError(f"masker needs d >= 2, got {d}")
    cols = {}
    for k in range(d):
        v = np.zeros(d * d, dtype=np.complex128)
        amp = 1.0 / np.sqrt(k + 1.0)
        for j in range(k + 1):
            v[j * d + (k - j)] = amp
        cols[k * d] = v
    return complete_to_unitary(cols, d * d)


def four_party_masker() -> np.ndarray:
    """16x16 unitary hiding a qubit's work in four-party correlations.

    Sends |0>|000> to |phi+>⊗|phi+> and |1>|000> to |phi->⊗|phi-> (Bell
    pairs on qubits (1,2) and (3,4)); every single-qubit marginal of the
    output is I/2 for any input a|0> + b|1>.
    """
    phi_p = np.zeros(4, dtype=np.complex128)
    phi_p[0] = phi_p[3] = 1.0 / np.sqrt(2.0)
    phi_m = np.zeros(4, dtype=np.complex128)
    phi_m[0] = 1.0 / np.sqrt(2.0)
    phi_m[3] = -1.0 / np.sqrt(2.0)
    cols = {
        0: np.kron(phi_p, phi_p),   # |0>|000>
        8: np.kron(phi_m, phi_m),   # |1>|000>
    }
    return complete_to_unitary(cols, 16)


def signaling_pair(phi1: float, phi2: float, rho_minus) -> tuple:
    """Bob's two post-cloning ensembles from the no-signaling argument.

    sigma1 = (|00><00| + |11><11|)/2 is the basis-measurement branch;
    sigma2 mixes the cloned equator state chi(phi1) ⊗ chi(phi2) with an
    arbitrary two-qubit state rho_minus (the unconstrained |-> image). The
    projector |01><01| gives <01|sigma2|01> >= 1/8 while <01|sigma1|01> = 0,
    so the trace distance is at least 1/8 for every rho_minus.
    """
    phi1 = float(phi1)
    phi2 = float(phi2)
    for ph in (phi1, phi2):
        if not 0.0 < ph <= 2.0 * np.pi:
            raise ValueError(f"phase {ph} outside (0, 2*pi]")
    rm = rho_minus if isinstance(rho_minus, DensityMatrix) else DensityMatrix(rho_minus)
    if rm.dim != 4:
        raise BadDimensionError(f"rho_minus must be a two-qubit state, got dim {rm.dim}")

    sigma1 = np.zeros((4, 4), dtype=np.complex128)
    sigma1[0, 0] = 0.5
    sigma1[3, 3] = 0.5

    chi1 = np.array([1.0, np.exp(-1j * phi1)], dtype=np.complex128) / np.sqrt(2.0)
    chi2 = np.array([1.0, np.exp(-1j * phi2)], dtype=np.complex128) / np.sqrt(2.0)
    cloned = kron(np.outer(chi1, chi1.conj()), np.outer(chi2, chi2.conj()))
    sigma2 = 0.5 * cloned + 0.5 * rm.matrix
    return DensityMatrix(sigma1), DensityMatrix(sigma2)
