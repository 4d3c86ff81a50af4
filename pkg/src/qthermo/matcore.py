"""Dense complex linear algebra for small Hilbert spaces.

Spectral decomposition, tensor products, partial traces, trace distance,
deterministic unitary completion, and random-state/unitary sampling. All
functions are pure and operate on square ``complex128`` arrays (anything
with a ``.matrix`` attribute is unwrapped first). Dimensions up to 64 are
supported; there is no sparse or GPU path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from . import backend
from .errors import (
    BadDimensionError,
    BadRankError,
    DimensionMismatchError,
    NotHermitianError,
    NotOrthonormalError,
)
from .tolerances import COMPLETION_SKIP, ORTHONORMAL, STRUCTURAL, UNITARY


def as_matrix(a) -> np.ndarray:
    """Unwrap ``.matrix`` if present and coerce to a square complex128 array."""
    m = getattr(a, "matrix", a)
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    return m


def is_hermitian(a, tol: float = STRUCTURAL) -> bool:
    m = as_matrix(a)
    return float(np.max(np.abs(m - m.conj().T))) <= tol


def is_unitary(u, tol: float = UNITARY) -> bool:
    m = as_matrix(u)
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))) <= tol


@dataclass(frozen=True)
class HermitianSpectrum:
    """Eigenvalues sorted ascending with aligned column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eig_hermitian(a, tol: float = STRUCTURAL) -> HermitianSpectrum:
    """Spectral decomposition of a Hermitian matrix.

    Deterministic for a fixed input (fixed sweep order, no RNG). Inside a
    degenerate eigenvalue cluster the eigenvector choice is backend-dependent;
    callers must rely only on spectral projectors there.
    """
    m = as_matrix(a)
    if not is_hermitian(m, tol):
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    w, v = backend.kernels().eigh(m)
    w = np.asarray(w, dtype=np.float64)
    w.setflags(write=False)
    v.setflags(write=False)
    return HermitianSpectrum(eigenvalues=w, eigenvectors=v)


def kron(a, b) -> np.ndarray:
    """Kronecker product; the first factor is the slow (most significant) index."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(m, dims: Iterable[int], keep) -> np.ndarray:
    """Reduce a multipartite matrix to the subsystems in ``keep``.

    ``dims`` lists the factor dimensions (factor 0 is the slowest index);
    ``keep`` is a subsystem index or a non-empty set of them. The kept
    subsystems retain their original order.
    """
    mat = as_matrix(m)
    dims = [int(d) for d in dims]
    n = len(dims)
    if int(np.prod(dims)) != mat.shape[0]:
        raise DimensionMismatchError(
            f"product of dims {dims} != matrix dimension {mat.shape[0]}"
        )
    if isinstance(keep, (int, np.integer)):
        keep_set = {int(keep)}
    else:
        keep_set = {int(k) for k in keep}
    if not keep_set or not keep_set.issubset(range(n)):
        raise DimensionMismatchError(f"keep={keep!r} is not a non-empty subset of 0..{n - 1}")
    traced = sorted(set(range(n)) - keep_set, reverse=True)
    t = mat.reshape(dims + dims)
    left = n
    for ax in traced:
        t = np.trace(t, axis1=ax, axis2=ax + left)
        left -= 1
    kept_dim = int(np.prod([dims[k] for k in sorted(keep_set)]))
    return np.ascontiguousarray(t.reshape(kept_dim, kept_dim))


def trace_distance(a, b) -> float:
    """Half the sum of absolute eigenvalues of a - b (both Hermitian)."""
    ma = as_matrix(a)
    mb = as_matrix(b)
    if ma.shape != mb.shape:
        raise DimensionMismatchError(f"shape mismatch {ma.shape} vs {mb.shape}")
    diff = ma - mb
    diff = (diff + diff.conj().T) / 2.0
    w = backend.kernels().eigvalsh(diff)
    return float(0.5 * np.sum(np.abs(w)))


def expm_i_hermitian(a, t: float) -> np.ndarray:
    """exp(-i*t*a) for Hermitian a, via spectral decomposition."""
    m = as_matrix(a)
    if not is_hermitian(m, STRUCTURAL):
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    return backend.kernels().expm_i(m, float(t))


def complete_to_unitary(columns: Mapping[int, np.ndarray], dim: int) -> np.ndarray:
    """Extend assigned orthonormal columns to a full unitary.

    ``columns`` maps target column indices to orthonormal vectors. The free
    columns are filled by Gram-Schmidt over the canonical basis vectors in
    index order, skipping candidates whose orthogonal residual is below
    1e-8. The output is deterministic for a fixed input.
    """
    dim = int(dim)
    assigned = {int(i): np.asarray(v, dtype=np.complex128).reshape(-1) for i, v in columns.items()}
    if not assigned:
        return np.eye(dim, dtype=np.complex128)
    for i, v in assigned.items():
        if not (0 <= i < dim) or v.shape[0] != dim:
            raise DimensionMismatchError(f"column {i} incompatible with dim {dim}")
    order = sorted(assigned)
    given = np.column_stack([assigned[i] for i in order])
    gram = given.conj().T @ given
    if float(np.max(np.abs(gram - np.eye(len(order))))) > ORTHONORMAL:
        raise NotOrthonormalError("assigned columns are not orthonormal within 1e-10")

    u = np.zeros((dim, dim), dtype=np.complex128)
    for i in order:
        u[:, i] = assigned[i]
    basis = [assigned[i] for i in order]
    free = [i for i in range(dim) if i not in assigned]
    cand = 0
    for target in free:
        while True:
            if cand >= dim:
                raise NotOrthonormalError("ran out of canonical candidates during completion")
            v = np.zeros(dim, dtype=np.complex128)
            v[cand] = 1.0
            cand += 1
            for _ in range(2):  # two passes stabilise classical Gram-Schmidt
                for b in basis:
                    v = v - (b.conj() @ v) * b
            nrm = float(np.linalg.norm(v))
            if nrm > COMPLETION_SKIP:
                v = v / nrm
                u[:, target] = v
                basis.append(v)
                break
    return u


def sample_ginibre_density(dim: int, rank: int, rng: np.random.Generator):
    """Random density matrix G G†/Tr(G G†) with G a dim x rank complex Ginibre."""
    from .states import DensityMatrix

    dim = int(dim)
    rank = int(rank)
    if not 1 <= rank <= dim:
        raise BadRankError(f"rank {rank} outside [1, {dim}]")
    g = (rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))) / np.sqrt(2.0)
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return DensityMatrix(rho)


def sample_haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary: QR of a complex Ginibre matrix with phase-fixed R diagonal."""
    dim = int(dim)
    if dim < 1:
        raise BadDimensionError(f"dim {dim} < 1")
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def sample_haar_ket(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random pure state vector (first column of a Haar unitary's measure)."""
    dim = int(dim)
    if dim < 1:
        raise BadDimensionError(f"dim {dim} < 1")
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)
