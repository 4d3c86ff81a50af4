"""Numerical falsification of the forbidden devices.

Each hypothetical device (work cloner, energy-preserving work masker,
universal work masker, dual Bloch-radius channel) gets a non-negative
failure objective that is zero exactly when the device works. `minimize`
searches the unitary manifold with seeded Nelder-Mead restarts; a positive
control with a known reachable zero must succeed before a nonzero floor on
a forbidden task is read as evidence.

All objectives depend on U only through conjugation, so they are invariant
under a global phase; the search space exp(i sum_j theta_j G_j) covers
SU(d), which is therefore enough.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import BadGridError, DimensionMismatchError
from .states import Hamiltonian, gell_mann_basis
from .tolerances import SIMPLEX_DIAMETER

EVALS_PER_PARAM = 2000


@dataclass(frozen=True)
class UnitaryParams:
    """Coordinates over the Gell-Mann generators of SU(dim)."""

    dim: int
    theta: np.ndarray

    def __post_init__(self):
        th = np.asarray(self.theta, dtype=np.float64)
        if th.shape != (self.dim * self.dim - 1,):
            raise DimensionMismatchError(
                f"theta length {th.shape} != dim^2-1 = {self.dim * self.dim - 1}"
            )
        if not np.all(np.isfinite(th)):
            raise ValueError("theta must be finite")
        object.__setattr__(self, "theta", th)


@dataclass(frozen=True)
class SearchResult:
    best_objective: float
    best_params: UnitaryParams
    best_aux: np.ndarray
    restarts: int
    evaluations: int
    seed: int
    converged_restart_objectives: np.ndarray


def unitary_from_params(params: UnitaryParams) -> np.ndarray:
    """exp(i * sum_j theta_j G_j); surjective onto SU(dim)."""
    gens = gell_mann_basis(params.dim).elements
    return backend.kernels().unitary_from_theta(params.theta, gens)


def _as_kets(inputs, dim=None):
    kets = []
    for v in inputs:
        k = np.asarray(v, dtype=np.complex128).reshape(-1)
        k = k / np.linalg.norm(k)
        kets.append(k)
    psis = np.stack(kets)
    if dim is not None and psis.shape[1] != dim:
        raise DimensionMismatchError(f"inputs have dim {psis.shape[1]}, expected {dim}")
    return psis


def _ham_parts(h):
    h = h if isinstance(h, Hamiltonian) else Hamiltonian(h)
    return np.ascontiguousarray(h.matrix), np.ascontiguousarray(h.spectrum.eigenvalues)


def _check_two_qudit(u, d):
    u = np.ascontiguousarray(np.asarray(u, dtype=np.complex128))
    if u.shape != (d * d, d * d):
        raise DimensionMismatchError(f"U has shape {u.shape}, expected {(d * d, d * d)}")
    return u


def objective_work_clone(u, inputs, h) -> float:
    """Work-cloning failure score.

    Sum over inputs psi of |W(rho_A) - W(psi)| + |W(rho_B) - W(psi)| plus the
    impurities of both marginals of U(psi ⊗ |0><0|)U†. Zero iff every output
    marginal is a pure state on the input's circle of equal work; the purity
    terms rule out the trivial discard-and-prepare map.
    """
    hm, eps = _ham_parts(h)
    psis = _as_kets(inputs, hm.shape[0])
    u = _check_two_qudit(u, hm.shape[0])
    return float(backend.kernels().clone_objective(u, psis, hm, eps))


def objective_universal_mask(u, inputs, h) -> float:
    """Work-masking failure score: mean over inputs of W(rho_S) + W(rho_A).

    Zero iff both output marginals are passive for every input. For search
    use, the input set should contain an orthogonal pair so that the
    population-flip obstruction is active.
    """
    hm, eps = _ham_parts(h)
    psis = _as_kets(inputs, hm.shape[0])
    u = _check_two_qudit(u, hm.shape[0])
    return float(backend.kernels().mask_objective(u, psis, hm, eps))


def objective_bloch_radius(u, ancilla_basis_angles, inputs) -> float:
    """Dual Bloch half-axis failure score for a two-qubit unitary.

    Penalises off-diagonal weight of the system marginal in the computational
    basis and of the ancilla marginal in the basis fixed by
    ``ancilla_basis_angles`` = (polar, azimuth), plus any population deficit
    below 1/2 on the designated end of each axis.
    """
    angles = np.asarray(ancilla_basis_angles, dtype=np.float64).reshape(2)
    psis = _as_kets(inputs, 2)
    u = _check_two_qudit(u, 2)
    return float(backend.kernels().bloch_objective(u, angles, psis))


def energy_preserving_unitary(alpha: float, beta: float, theta: float,
                              mu: float, nu: float) -> np.ndarray:
    """Member of the energy-preserving two-qubit family for H = diag(0, e)
    on each qubit: phases on |00> and |11>, an SU(2) block on span{|01>,|10>}."""
    u = np.zeros((4, 4), dtype=np.complex128)
    u[0, 0] = np.exp(1j * alpha)
    u[3, 3] = np.exp(1j * beta)
    c = np.cos(theta)
    s = np.sin(theta)
    u[1, 1] = c * np.exp(1j * mu)
    u[1, 2] = s * np.exp(1j * nu)
    u[2, 1] = -s * np.exp(-1j * nu)
    u[2, 2] = c * np.exp(-1j * mu)
    return u


def scan_energy_preserving_mask(grid: int, inputs, h) -> float:
    """Exhaustive minimum of the masking score over the energy-preserving
    family, sampled on a uniform grid per parameter axis.

    The |11> phase never acts on psi ⊗ |0> inputs, so four axes are swept
    (grid**4 distinct unitaries). Expected strictly positive whenever some
    input carries both work and coherence.
    """
    grid = int(grid)
    if grid < 2:
        raise BadGridError(f"grid {grid} < 2")
    hm, eps = _ham_parts(h)
    if hm.shape[0] != 2:
        raise DimensionMismatchError("scan is defined for qubit Hamiltonians")
    if float(np.max(np.abs(hm - np.diag(np.diagonal(hm))))) > 1e-12:
        raise DimensionMismatchError("scan requires H diagonal in the computational basis")
    gap = float(hm[1, 1].real - hm[0, 0].real)
    if gap < 0:
        raise DimensionMismatchError("scan requires H = diag(0, e) with e >= 0")
    psis = _as_kets(inputs, 2)
    return float(backend.kernels().energy_preserving_min(grid, psis, gap))


def unitary_distance(u, v) -> float:
    """Phase-invariant distance 1 - |Tr(U†V)|/d; zero iff U = e^{i a} V."""
    u = np.asarray(u, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    if u.shape != v.shape:
        raise DimensionMismatchError(f"shape mismatch {u.shape} vs {v.shape}")
    d = u.shape[0]
    return max(0.0, float(1.0 - abs(np.trace(u.conj().T @ v)) / d))


def _nelder_mead(f, x0, max_evals, diam_tol):
    """Adaptive Nelder-Mead; deterministic for a fixed starting point."""
    n = x0.size
    alpha = 1.0
    beta = 1.0 + 2.0 / n
    gamma = 0.75 - 1.0 / (2.0 * n)
    delta = 1.0 - 1.0 / n
    pts = np.empty((n + 1, n))
    vals = np.empty(n + 1)
    pts[0] = x0
    vals[0] = f(x0)
    evals = 1
    step = 0.5
    for i in range(n):
        x = x0.copy()
        x[i] += step
        pts[i + 1] = x
        vals[i + 1] = f(x)
        evals += 1
    while evals < max_evals:
        order = np.argsort(vals, kind="stable")
        pts = pts[order]
        vals = vals[order]
        if float(np.max(np.abs(pts[1:] - pts[0]))) < diam_tol:
            break
        centroid = pts[:-1].mean(axis=0)
        direction = centroid - pts[-1]
        xr = centroid + alpha * direction
        fr = f(xr)
        evals += 1
        if fr < vals[0]:
            xe = centroid + beta * direction
            fe = f(xe)
            evals += 1
            if fe < fr:
                pts[-1], vals[-1] = xe, fe
            else:
                pts[-1], vals[-1] = xr, fr
        elif fr < vals[-2]:
            pts[-1], vals[-1] = xr, fr
        else:
            xc = centroid + (gamma if fr < vals[-1] else -gamma) * direction
            fc = f(xc)
            evals += 1
            if fc < min(fr, vals[-1]):
                pts[-1], vals[-1] = xc, fc
            else:
                for i in range(1, n + 1):
                    pts[i] = pts[0] + delta * (pts[i] - pts[0])
                    vals[i] = f(pts[i])
                    evals += 1
    best = int(np.argmin(vals))
    return pts[best], float(vals[best]), evals


def minimize(objective, dim: int, restarts: int = 50, seed: int = 42,
             n_aux: int = 0, jobs: int = 1, max_evals: int | None = None) -> SearchResult:
    """Derivative-free restart search over SU(dim) (plus auxiliary angles).

    ``objective(params, aux)`` receives a `UnitaryParams` and an auxiliary
    angle vector of length ``n_aux``. Restart i draws its start uniformly
    from [-pi, pi]^n with RNG seed ``seed + i`` and stops when the simplex
    diameter falls below 1e-8 or after 2000 evaluations per parameter;
    results do not depend on the execution schedule.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    n_theta = dim * dim - 1
    n = n_theta + n_aux
    budget = max_evals if max_evals is not None else EVALS_PER_PARAM * n

    def wrapped(x):
        params = UnitaryParams(dim, x[:n_theta].copy())
        return objective(params, x[n_theta:].copy())

    def one_restart(i):
        rng = np.random.default_rng(seed + i)
        x0 = rng.uniform(-np.pi, np.pi, n)
        return _nelder_mead(wrapped, x0, budget, SIMPLEX_DIAMETER)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(one_restart, range(restarts)))
    else:
        results = [one_restart(i) for i in range(restarts)]

    objectives = np.array([r[1] for r in results])
    best = int(np.argmin(objectives))
    x_best = results[best][0]
    return SearchResult(
        best_objective=float(objectives[best]),
        best_params=UnitaryParams(dim, x_best[:n_theta].copy()),
        best_aux=x_best[n_theta:].copy(),
        restarts=restarts,
        evaluations=int(sum(r[2] for r in results)),
        seed=seed,
        converged_restart_objectives=objectives,
    )
