"""Quantum states, Hamiltonians, and the generalized Bloch representation.

A d-level operator A is expanded as A = (1/d)(a0*I + sum_k a_k sigma_k) over
a traceless Hermitian basis normalised to Tr(sigma_j sigma_k) = delta_jk.
Note this differs from the common 2*delta_jk convention: a pure qubit state
sits at Bloch radius sqrt(2), and purity obeys Tr(rho^2) = (d + |r|^2)/d^2.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from . import backend, matcore
from .errors import DimensionMismatchError, InvalidStateError, NotHermitianError
from .matcore import HermitianSpectrum, as_matrix, eig_hermitian, expm_i_hermitian, is_hermitian
from .tolerances import STRUCTURAL


class DensityMatrix:
    """A validated quantum state: Hermitian, unit trace, positive semidefinite."""

    __slots__ = ("matrix", "dim")

    def __init__(self, matrix):
        m = as_matrix(matrix)
        d = m.shape[0]
        if not is_hermitian(m, STRUCTURAL):
            raise InvalidStateError("state is not Hermitian within 1e-9")
        tr = np.trace(m).real
        if abs(tr - 1.0) > STRUCTURAL:
            raise InvalidStateError(f"state trace {tr} != 1 within 1e-9")
        w = backend.kernels().eigvalsh((m + m.conj().T) / 2.0)
        if float(w[0]) < -STRUCTURAL:
            raise InvalidStateError(f"state has negative eigenvalue {w[0]}")
        pur = float(np.sum(w * w))
        if not (1.0 / d - STRUCTURAL <= pur <= 1.0 + STRUCTURAL):
            raise InvalidStateError(f"purity {pur} outside [1/{d}, 1]")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dim", d)

    def __setattr__(self, name, value):
        raise AttributeError("DensityMatrix is immutable")

    @classmethod
    def pure(cls, ket) -> "DensityMatrix":
        v = np.asarray(ket, dtype=np.complex128).reshape(-1)
        n = np.linalg.norm(v)
        if n == 0:
            raise InvalidStateError("zero vector is not a state")
        v = v / n
        return cls(np.outer(v, v.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(int(dim), dtype=np.complex128) / int(dim))

    def purity(self) -> float:
        return float(np.sum(np.abs(self.matrix) ** 2))

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, purity={self.purity():.6f})"


class Hamiltonian:
    """Hermitian observable with a cached ascending spectral decomposition.

    Eigenvalues are kept exactly as given; no ground-energy shift is applied.
    """

    __slots__ = ("matrix", "dim", "spectrum")

    def __init__(self, matrix):
        m = as_matrix(matrix)
        spec = eig_hermitian(m)  # raises NotHermitianError on bad input
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dim", m.shape[0])
        object.__setattr__(self, "spectrum", spec)

    def __setattr__(self, name, value):
        raise AttributeError("Hamiltonian is immutable")

    @classmethod
    def from_eigenvalues(cls, values) -> "Hamiltonian":
        """Diagonal Hamiltonian in the computational basis."""
        return cls(np.diag(np.asarray(values, dtype=np.float64)).astype(np.complex128))

    @classmethod
    def equally_spaced(cls, dim: int, spacing: float = 1.0) -> "Hamiltonian":
        """H = sum_k k*spacing |k><k| (ground energy zero)."""
        return cls.from_eigenvalues(spacing * np.arange(int(dim)))

    @property
    def energies(self) -> np.ndarray:
        return self.spectrum.eigenvalues

    def __repr__(self):
        return f"Hamiltonian(dim={self.dim}, energies={np.round(self.energies, 6)})"


class GellMannBasis:
    """Generalized Gell-Mann basis with Tr(sigma_j sigma_k) = delta_jk.

    Enumeration order: symmetric pairs, antisymmetric pairs, then diagonal
    generators, pairs in j<k lexicographic order. Structure constants
    eps_jkl with [sigma_j, sigma_k] = i eps_jkl sigma_l are built lazily as
    a sparse real table.
    """

    def __init__(self, dim: int):
        dim = int(dim)
        if dim < 2:
            raise DimensionMismatchError("GellMannBasis needs dim >= 2")
        self.dim = dim
        elems = []
        inv_sqrt2 = 1.0 / np.sqrt(2.0)
        for j in range(dim):
            for k in range(j + 1, dim):
                m = np.zeros((dim, dim), dtype=np.complex128)
                m[j, k] = inv_sqrt2
                m[k, j] = inv_sqrt2
                elems.append(m)
        for j in range(dim):
            for k in range(j + 1, dim):
                m = np.zeros((dim, dim), dtype=np.complex128)
                m[j, k] = -1j * inv_sqrt2
                m[k, j] = 1j * inv_sqrt2
                elems.append(m)
        for l in range(1, dim):
            m = np.zeros((dim, dim), dtype=np.complex128)
            scale = np.sqrt(1.0 / (l * (l + 1)))
            for i in range(l):
                m[i, i] = scale
            m[l, l] = -l * scale
            elems.append(m)
        arr = np.stack(elems)
        arr.setflags(write=False)
        self.elements = arr
        self._structure = None

    def __len__(self):
        return self.elements.shape[0]

    @property
    def structure_constants(self) -> dict:
        """Sparse {(j, k, l): eps_jkl} with entries below 1e-12 dropped."""
        if self._structure is None:
            n = len(self)
            sig = self.elements
            table = {}
            for j in range(n):
                for k in range(n):
                    if j == k:
                        continue
                    comm = sig[j] @ sig[k] - sig[k] @ sig[j]
                    for l in range(n):
                        val = -1j * np.trace(comm @ sig[l])
                        if abs(val) > 1e-12:
                            table[(j, k, l)] = float(val.real)
            self._structure = table
        return self._structure


@functools.lru_cache(maxsize=None)
def gell_mann_basis(dim: int) -> GellMannBasis:
    """Shared per-dimension basis instance (construction is deterministic)."""
    return GellMannBasis(dim)


@dataclass(frozen=True)
class BlochVector:
    """Coefficients of a Hermitian operator over a GellMannBasis.

    ``scalar`` is the identity coefficient (the operator trace);
    ``components`` has length dim^2 - 1.
    """

    dim: int
    scalar: float
    components: np.ndarray = field(repr=False)

    def norm(self) -> float:
        return float(np.linalg.norm(self.components))


def to_bloch(a, basis: GellMannBasis) -> BlochVector:
    """Expand a Hermitian matrix as (1/d)(scalar*I + sum_k c_k sigma_k)."""
    m = as_matrix(a)
    if m.shape[0] != basis.dim:
        raise DimensionMismatchError(f"matrix dim {m.shape[0]} != basis dim {basis.dim}")
    if not is_hermitian(m, STRUCTURAL):
        raise NotHermitianError("Bloch expansion requires a Hermitian matrix")
    comps = basis.dim * np.einsum("kij,ji->k", basis.elements, m).real
    comps.setflags(write=False)
    return BlochVector(dim=basis.dim, scalar=float(np.trace(m).real), components=comps)


def from_bloch(b: BlochVector, basis: GellMannBasis) -> np.ndarray:
    """Inverse of `to_bloch`. Purely linear-algebraic: positivity is not checked."""
    if b.dim != basis.dim:
        raise DimensionMismatchError(f"vector dim {b.dim} != basis dim {basis.dim}")
    d = basis.dim
    m = b.scalar * np.eye(d, dtype=np.complex128)
    m += np.tensordot(np.asarray(b.components, dtype=np.float64), basis.elements, axes=1)
    return m / d


def energy(rho, h) -> float:
    """E = Tr(rho H), computed as a direct trace and linear in rho.

    The Bloch-coefficient contraction under this basis normalisation is
    E = n0/d + (n.r)/d^2; the shorthand (n0 + n.r)/d is inconsistent with
    Tr(sigma_j sigma_k) = delta_jk, so the trace form is authoritative and
    the Bloch form is used only as a cross-check in the test suite.
    """
    rm = as_matrix(rho)
    hm = as_matrix(h)
    if rm.shape != hm.shape:
        raise DimensionMismatchError(f"state dim {rm.shape[0]} != H dim {hm.shape[0]}")
    return float(np.trace(rm @ hm).real)


def evolve(rho, h, t: float) -> DensityMatrix:
    """Closed-system evolution U rho U† with U = exp(-i H t) (hbar = 1)."""
    rm = as_matrix(rho)
    hm = as_matrix(h)
    if rm.shape != hm.shape:
        raise DimensionMismatchError(f"state dim {rm.shape[0]} != H dim {hm.shape[0]}")
    u = expm_i_hermitian(hm, float(t))
    return DensityMatrix(u @ rm @ u.conj().T)


def equal_energy_partner(rho: DensityMatrix, h, basis: GellMannBasis,
                         rng: np.random.Generator) -> DensityMatrix:
    """A different state with exactly the same energy as ``rho``.

    Perturbs the Bloch vector orthogonally to the Hamiltonian direction (the
    equi-energetic hyperplane), scaled to stay inside the state body: the
    perturbation's operator norm is kept below rho's smallest eigenvalue.
    """
    b = to_bloch(rho, basis)
    nvec = to_bloch(h, basis).components
    delta = rng.standard_normal(b.components.shape[0])
    nn = float(nvec @ nvec)
    if nn > 0:
        delta = delta - (float(delta @ nvec) / nn) * nvec
    margin = float(backend.kernels().eigvalsh(rho.matrix)[0])
    norm = float(np.linalg.norm(delta))
    if norm == 0 or margin <= 0:
        return rho
    # ||(1/d) sum_k delta_k sigma_k||_2 <= |delta|/d for this orthonormal basis
    delta *= 0.9 * margin * basis.dim / norm
    return DensityMatrix(from_bloch(
        BlochVector(dim=b.dim, scalar=b.scalar, components=b.components + delta), basis
    ))


def bloch_velocity(rho, h, basis: GellMannBasis) -> np.ndarray:
    """Bloch-space velocity of rho under H: rdot_l = (1/d) eps_jkl n_j r_k.

    This is the component form of d(rho)/dt = -i[H, rho]; the state vector
    rotates about the Hamiltonian axis.
    """
    r = to_bloch(rho, basis).components
    nvec = to_bloch(h, basis).components
    out = np.zeros_like(r)
    for (j, k, l), eps in basis.structure_constants.items():
        out[l] += eps * nvec[j] * r[k]
    return out / basis.dim
