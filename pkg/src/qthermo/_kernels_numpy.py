"""Pure-numpy kernel implementations.

Fallback backend for the hot numerical paths. `_kernels_numba` provides the
same function set compiled with ``@njit``; `backend` selects between them.
Eigendecompositions here delegate to LAPACK via ``np.linalg``; the numba
backend uses a cyclic Jacobi sweep instead. Both satisfy the same contracts
(ascending eigenvalues, unitary eigenvector matrices) but eigenvector phases
and degenerate-subspace bases may differ between backends.
"""

from __future__ import annotations

import math

import numpy as np


def eigh(a):
    """Eigenvalues (ascending) and column eigenvectors of a Hermitian matrix."""
    w, v = np.linalg.eigh(a)
    return w, np.ascontiguousarray(v)


def eigvalsh(a):
    return np.linalg.eigvalsh(a)


def expm_i(a, t):
    """exp(-i*t*a) for Hermitian a, via spectral decomposition."""
    w, v = np.linalg.eigh(a)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def ptrace_keep_first(m, da, db):
    """Trace out the second factor of a (da*db) x (da*db) matrix."""
    return np.ascontiguousarray(np.trace(m.reshape(da, db, da, db), axis1=1, axis2=3))


def ptrace_keep_second(m, da, db):
    """Trace out the first factor of a (da*db) x (da*db) matrix."""
    return np.ascontiguousarray(np.trace(m.reshape(da, db, da, db), axis1=0, axis2=2))


def unitary_from_theta(theta, gens):
    """exp(+i * sum_j theta_j * gens_j) for a stack of Hermitian generators."""
    h = np.tensordot(theta, gens, axes=1)
    return expm_i(h, -1.0)


def work_value(rho, h, eps_asc):
    """Ergotropy of ``rho`` for a Hamiltonian with ascending spectrum ``eps_asc``.

    ``h`` is the Hamiltonian matrix in the same basis as ``rho``; the passive
    energy pairs the descending populations of ``rho`` with ``eps_asc``.
    """
    energy = np.trace(rho @ h).real
    pops = np.linalg.eigvalsh(rho)[::-1]
    return energy - float(pops @ eps_asc)


def _marginals(u, psi, d):
    """Both marginals of U (psi ⊗ |0>)(psi ⊗ |0>)^† U^† for a d-level system."""
    phi = u[:, ::d] @ psi  # psi ⊗ e0 hits every d-th column
    block = phi.reshape(d, d)
    rho_s = block @ block.conj().T
    rho_a = block.T @ block.conj()
    return rho_s, rho_a


def clone_objective(u, psis, h, eps_asc):
    """Work-cloning failure score: sum over inputs of work mismatch plus
    marginal impurity for both output marginals."""
    d = psis.shape[1]
    total = 0.0
    for psi in psis:
        w_in = (psi.conj() @ h @ psi).real - eps_asc[0]
        rho_s, rho_a = _marginals(u, psi, d)
        total += abs(work_value(rho_s, h, eps_asc) - w_in)
        total += abs(work_value(rho_a, h, eps_asc) - w_in)
        total += 1.0 - np.sum(np.abs(rho_s) ** 2)
        total += 1.0 - np.sum(np.abs(rho_a) ** 2)
    return max(0.0, float(total))


def mask_objective(u, psis, h, eps_asc):
    """Work-masking failure score: mean over inputs of the summed marginal
    ergotropies (zero iff every input is masked)."""
    d = psis.shape[1]
    total = 0.0
    for psi in psis:
        rho_s, rho_a = _marginals(u, psi, d)
        total += work_value(rho_s, h, eps_asc) + work_value(rho_a, h, eps_asc)
    return max(0.0, float(total / psis.shape[0]))


def bloch_objective(u, angles, psis):
    """Bloch half-axis failure score for a two-qubit unitary.

    System marginals must be diagonal in the computational basis with ground
    population >= 1/2; ancilla marginals must be diagonal in the basis set by
    ``angles`` = (polar, azimuth) with dominant weight on that axis vector.
    """
    ct = math.cos(angles[0] / 2.0)
    st = math.sin(angles[0] / 2.0)
    ph = complex(math.cos(angles[1]), math.sin(angles[1]))
    phi_vec = np.array([ct, ph * st], dtype=np.complex128)
    phi_perp = np.array([-np.conj(ph) * st, ct], dtype=np.complex128)
    total = 0.0
    for psi in psis:
        rho_s, rho_a = _marginals(u, psi, 2)
        total += abs(rho_s[0, 1])
        total += abs(phi_vec.conj() @ rho_a @ phi_perp)
        total += max(0.0, 0.5 - rho_s[0, 0].real)
        total += max(0.0, 0.5 - (phi_vec.conj() @ rho_a @ phi_vec).real)
    return max(0.0, float(total))


def _qubit_work(p00, p11, off2, gap):
    """Closed-form qubit ergotropy for H = diag(0, gap).

    ``off2`` is |rho_01|^2; populations enter through p00, p11.
    """
    lo = 0.5 * (p00 + p11 - math.sqrt((p00 - p11) ** 2 + 4.0 * off2))
    return gap * (p11 - lo)


def energy_preserving_min(grid, psis, gap):
    """Minimum masking score over a uniform grid of energy-preserving
    two-qubit unitaries (H = diag(0, gap) on each qubit).

    The family is block-diagonal over the total-energy eigenspaces: phases on
    |00> and |11> plus an SU(2) block (angle and two phases) on
    span{|01>, |10>}. Inputs are psi ⊗ |0>, which never reach the |11>
    column, so the |11> phase cannot change the score and is not swept; the
    remaining four axes are sampled with ``grid`` points each.
    """
    two_pi = 2.0 * math.pi
    k = psis.shape[0]
    best = math.inf
    for ia in range(grid):
        alpha = two_pi * ia / grid
        ca = math.cos(alpha)
        sa = math.sin(alpha)
        for it in range(grid):
            theta = two_pi * it / grid
            c = math.cos(theta)
            s = math.sin(theta)
            for im in range(grid):
                mu = two_pi * im / grid
                cm = math.cos(mu)
                sm = math.sin(mu)
                for iv in range(grid):
                    nu = two_pi * iv / grid
                    cn = math.cos(nu)
                    sn = math.sin(nu)
                    total = 0.0
                    for n in range(k):
                        p0 = psis[n, 0]
                        p1 = psis[n, 1]
                        # Phi = U (psi ⊗ |0>) has components
                        #   (e^{i a} p0, s e^{i v} p1, c e^{-i m} p1, 0)
                        f0 = complex(ca, sa) * p0
                        f1 = complex(cn, sn) * (s * p1)
                        f2 = complex(cm, -sm) * (c * p1)
                        a0 = abs(f0) ** 2
                        a1 = abs(f1) ** 2
                        a2 = abs(f2) ** 2
                        off_s = abs(f0 * np.conj(f2)) ** 2
                        off_a = abs(f0 * np.conj(f1)) ** 2
                        total += _qubit_work(a0 + a1, a2, off_s, gap)
                        total += _qubit_work(a0 + a2, a1, off_a, gap)
                    total /= k
                    if total < best:
                        best = total
    return max(0.0, best)
