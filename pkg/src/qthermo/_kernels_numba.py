"""Numba-compiled kernel implementations.

Jitted twins of `_kernels_numpy` with the same signatures and contracts.
The Hermitian eigensolver is a cyclic complex Jacobi sweep (fixed p<q sweep
order, no RNG, relative off-diagonal target 1e-12, at most 100 sweeps),
which keeps the hot search loops free of per-call LAPACK overhead at the
matrix sizes used here (dim <= 64).
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from .tolerances import JACOBI_MAX_SWEEPS, JACOBI_OFFDIAG


@njit(cache=True, nogil=True)
def eigh(a):
    """Eigenvalues (ascending, stable order) and eigenvectors via cyclic Jacobi."""
    n = a.shape[0]
    m = a.astype(np.complex128).copy()
    v = np.eye(n, dtype=np.complex128)
    w = np.empty(n)
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += m[i, j].real ** 2 + m[i, j].imag ** 2
    fro = math.sqrt(fro)
    if fro > 0.0:
        thresh = JACOBI_OFFDIAG * fro
        skip = thresh / (n * n)
        for _ in range(JACOBI_MAX_SWEEPS):
            off = 0.0
            for i in range(n):
                for j in range(i + 1, n):
                    off += 2.0 * (m[i, j].real ** 2 + m[i, j].imag ** 2)
            if math.sqrt(off) <= thresh:
                break
            for p in range(n):
                for q in range(p + 1, n):
                    apq = m[p, q]
                    r = abs(apq)
                    if r <= skip:
                        continue
                    phase = apq / r
                    tau = (m[p, p].real - m[q, q].real) / (2.0 * r)
                    if tau >= 0.0:
                        t = -1.0 / (tau + math.sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (tau - math.sqrt(1.0 + tau * tau))
                    c = 1.0 / math.sqrt(1.0 + t * t)
                    sp = (t * c) * phase
                    spc = sp.conjugate()
                    for i in range(n):
                        mip = m[i, p]
                        miq = m[i, q]
                        m[i, p] = c * mip - spc * miq
                        m[i, q] = sp * mip + c * miq
                    for i in range(n):
                        mpi = m[p, i]
                        mqi = m[q, i]
                        m[p, i] = c * mpi - sp * mqi
                        m[q, i] = spc * mpi + c * mqi
                    for i in range(n):
                        vip = v[i, p]
                        viq = v[i, q]
                        v[i, p] = c * vip - spc * viq
                        v[i, q] = sp * vip + c * viq
    for i in range(n):
        w[i] = m[i, i].real
    # stable ascending insertion sort, permuting eigenvector columns along
    idx = np.arange(n)
    for i in range(1, n):
        kw = w[i]
        ki = idx[i]
        j = i - 1
        while j >= 0 and w[j] > kw:
            w[j + 1] = w[j]
            idx[j + 1] = idx[j]
            j -= 1
        w[j + 1] = kw
        idx[j + 1] = ki
    vs = np.empty((n, n), dtype=np.complex128)
    for k in range(n):
        src = idx[k]
        for i in range(n):
            vs[i, k] = v[i, src]
    return w, vs


@njit(cache=True, nogil=True)
def eigvalsh(a):
    w, _ = eigh(a)
    return w


@njit(cache=True, nogil=True)
def expm_i(a, t):
    """exp(-i*t*a) for Hermitian a."""
    n = a.shape[0]
    w, v = eigh(a)
    ph = np.empty(n, dtype=np.complex128)
    for k in range(n):
        ph[k] = complex(math.cos(t * w[k]), -math.sin(t * w[k]))
    out = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            acc = 0.0 + 0.0j
            for k in range(n):
                acc += v[i, k] * ph[k] * v[j, k].conjugate()
            out[i, j] = acc
    return out


@njit(cache=True, nogil=True)
def ptrace_keep_first(m, da, db):
    out = np.zeros((da, da), dtype=np.complex128)
    for a in range(da):
        for b in range(da):
            acc = 0.0 + 0.0j
            for k in range(db):
                acc += m[a * db + k, b * db + k]
            out[a, b] = acc
    return out


@njit(cache=True, nogil=True)
def ptrace_keep_second(m, da, db):
    out = np.zeros((db, db), dtype=np.complex128)
    for a in range(db):
        for b in range(db):
            acc = 0.0 + 0.0j
            for k in range(da):
                acc += m[k * db + a, k * db + b]
            out[a, b] = acc
    return out


@njit(cache=True, nogil=True)
def unitary_from_theta(theta, gens):
    """exp(+i * sum_j theta_j * gens_j)."""
    n = gens.shape[1]
    h = np.zeros((n, n), dtype=np.complex128)
    for j in range(theta.shape[0]):
        tj = theta[j]
        for a in range(n):
            for b in range(n):
                h[a, b] += tj * gens[j, a, b]
    return expm_i(h, -1.0)


@njit(cache=True, nogil=True)
def work_value(rho, h, eps_asc):
    """Ergotropy of rho against a Hamiltonian with ascending spectrum eps_asc."""
    n = rho.shape[0]
    energy = 0.0
    for a in range(n):
        for b in range(n):
            energy += (rho[a, b] * h[b, a]).real
    pops = eigvalsh(rho)
    passive = 0.0
    for k in range(n):
        passive += pops[n - 1 - k] * eps_asc[k]
    return energy - passive


@njit(cache=True, nogil=True)
def _marginals(u, psi, d):
    dd = d * d
    phi = np.empty(dd, dtype=np.complex128)
    for i in range(dd):
        acc = 0.0 + 0.0j
        for j in range(d):
            acc += u[i, j * d] * psi[j]
        phi[i] = acc
    rho_s = np.empty((d, d), dtype=np.complex128)
    rho_a = np.empty((d, d), dtype=np.complex128)
    for a in range(d):
        for b in range(d):
            acc_s = 0.0 + 0.0j
            acc_a = 0.0 + 0.0j
            for k in range(d):
                acc_s += phi[a * d + k] * phi[b * d + k].conjugate()
                acc_a += phi[k * d + a] * phi[k * d + b].conjugate()
            rho_s[a, b] = acc_s
            rho_a[a, b] = acc_a
    return rho_s, rho_a


@njit(cache=True, nogil=True)
def _impurity(rho):
    n = rho.shape[0]
    p = 0.0
    for i in range(n):
        for j in range(n):
            p += rho[i, j].real ** 2 + rho[i, j].imag ** 2
    return 1.0 - p


@njit(cache=True, nogil=True)
def clone_objective(u, psis, h, eps_asc):
    d = psis.shape[1]
    total = 0.0
    for idx in range(psis.shape[0]):
        psi = psis[idx]
        e_in = 0.0
        for a in range(d):
            for b in range(d):
                e_in += (psi[a].conjugate() * h[a, b] * psi[b]).real
        w_in = e_in - eps_asc[0]
        rho_s, rho_a = _marginals(u, psi, d)
        total += abs(work_value(rho_s, h, eps_asc) - w_in)
        total += abs(work_value(rho_a, h, eps_asc) - w_in)
        total += _impurity(rho_s) + _impurity(rho_a)
    return max(0.0, total)


@njit(cache=True, nogil=True)
def mask_objective(u, psis, h, eps_asc):
    d = psis.shape[1]
    total = 0.0
    for idx in range(psis.shape[0]):
        rho_s, rho_a = _marginals(u, psis[idx], d)
        total += work_value(rho_s, h, eps_asc) + work_value(rho_a, h, eps_asc)
    return max(0.0, total / psis.shape[0])


@njit(cache=True, nogil=True)
def bloch_objective(u, angles, psis):
    ct = math.cos(angles[0] / 2.0)
    st = math.sin(angles[0] / 2.0)
    ph = complex(math.cos(angles[1]), math.sin(angles[1]))
    f0 = complex(ct, 0.0)
    f1 = ph * st
    g0 = -ph.conjugate() * st
    g1 = complex(ct, 0.0)
    total = 0.0
    for idx in range(psis.shape[0]):
        rho_s, rho_a = _marginals(u, psis[idx], 2)
        total += abs(rho_s[0, 1])
        # ancilla off-diagonal and population in the (phi, phi_perp) basis
        off = (
            f0.conjugate() * (rho_a[0, 0] * g0 + rho_a[0, 1] * g1)
            + f1.conjugate() * (rho_a[1, 0] * g0 + rho_a[1, 1] * g1)
        )
        pop = (
            f0.conjugate() * (rho_a[0, 0] * f0 + rho_a[0, 1] * f1)
            + f1.conjugate() * (rho_a[1, 0] * f0 + rho_a[1, 1] * f1)
        ).real
        total += abs(off)
        total += max(0.0, 0.5 - rho_s[0, 0].real)
        total += max(0.0, 0.5 - pop)
    return max(0.0, total)


@njit(cache=True, nogil=True)
def _qubit_work(p00, p11, off2, gap):
    lo = 0.5 * (p00 + p11 - math.sqrt((p00 - p11) ** 2 + 4.0 * off2))
    return gap * (p11 - lo)


@njit(cache=True, nogil=True)
def energy_preserving_min(grid, psis, gap):
    """Minimum masking score over the energy-preserving two-qubit family.

    Same grid and reduction as the numpy twin: the |11> phase never acts on
    psi ⊗ |0> inputs and is not swept; the other four axes get ``grid``
    points each.
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
                        f0 = complex(ca, sa) * p0
                        f1 = complex(cn, sn) * (s * p1)
                        f2 = complex(cm, -sm) * (c * p1)
                        a0 = abs(f0) ** 2
                        a1 = abs(f1) ** 2
                        a2 = abs(f2) ** 2
                        off_s = abs(f0 * f2.conjugate()) ** 2
                        off_a = abs(f0 * f1.conjugate()) ** 2
                        total += _qubit_work(a0 + a1, a2, off_s, gap)
                        total += _qubit_work(a0 + a2, a1, off_a, gap)
                    total /= k
                    if total < best:
                        best = total
    return max(0.0, best)
