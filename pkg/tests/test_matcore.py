import itertools

import numpy as np
import pytest

from qthermo import matcore
from qthermo.errors import (
    BadDimensionError,
    BadRankError,
    DimensionMismatchError,
    NotHermitianError,
    NotOrthonormalError,
)

from conftest import random_hermitian


def brute_force_partial_trace(m, dims, keep):
    """Index-contraction oracle, independent of the reshape-based implementation."""
    n = len(dims)
    keep = sorted(keep if not isinstance(keep, int) else [keep])
    kept_dims = [dims[k] for k in keep]
    out_dim = int(np.prod(kept_dims))
    out = np.zeros((out_dim, out_dim), dtype=complex)
    traced = [i for i in range(n) if i not in keep]

    def flat(idx):
        v = 0
        for i in range(n):
            v = v * dims[i] + idx[i]
        return v

    for row in itertools.product(*[range(dims[k]) for k in keep]):
        for col in itertools.product(*[range(dims[k]) for k in keep]):
            acc = 0.0
            for tr in itertools.product(*[range(dims[t]) for t in traced]):
                ridx = [0] * n
                cidx = [0] * n
                for pos, k in enumerate(keep):
                    ridx[k] = row[pos]
                    cidx[k] = col[pos]
                for pos, t in enumerate(traced):
                    ridx[t] = tr[pos]
                    cidx[t] = tr[pos]
                acc += m[flat(ridx), flat(cidx)]
            r = sum(row[i] * int(np.prod(kept_dims[i + 1:])) for i in range(len(keep)))
            c = sum(col[i] * int(np.prod(kept_dims[i + 1:])) for i in range(len(keep)))
            out[r, c] = acc
    return out


class TestEigHermitian:
    def test_diagonal(self):
        spec = matcore.eig_hermitian(np.diag([0.0, 1.0]))
        assert np.allclose(spec.eigenvalues, [0.0, 1.0])
        assert np.allclose(np.abs(spec.eigenvectors), np.eye(2))

    def test_pauli_x(self):
        spec = matcore.eig_hermitian(np.array([[0, 1], [1, 0]], dtype=complex))
        assert np.allclose(spec.eigenvalues, [-1.0, 1.0])
        for k in range(2):
            v = spec.eigenvectors[:, k]
            assert np.allclose(np.abs(v), [1 / np.sqrt(2)] * 2, atol=1e-12)

    def test_reconstruction_random(self, rng):
        a = random_hermitian(8, rng)
        spec = matcore.eig_hermitian(a)
        assert np.max(np.abs(spec.reconstruct() - a)) < 1e-9

    def test_matches_lapack(self, rng):
        for dim in (2, 3, 5, 16):
            a = random_hermitian(dim, rng)
            spec = matcore.eig_hermitian(a)
            assert np.max(np.abs(spec.eigenvalues - np.linalg.eigvalsh(a))) < 1e-10

    def test_eigenvector_residuals(self, rng):
        a = random_hermitian(6, rng)
        spec = matcore.eig_hermitian(a)
        scale = max(1.0, np.max(np.abs(spec.eigenvalues)))
        for k in range(6):
            res = a @ spec.eigenvectors[:, k] - spec.eigenvalues[k] * spec.eigenvectors[:, k]
            assert np.max(np.abs(res)) / scale < 1e-9
        vtv = spec.eigenvectors.conj().T @ spec.eigenvectors
        assert np.max(np.abs(vtv - np.eye(6))) < 1e-10

    def test_trace_and_frobenius_identities(self, rng):
        a = random_hermitian(7, rng)
        spec = matcore.eig_hermitian(a)
        assert abs(np.sum(spec.eigenvalues) - np.trace(a).real) < 1e-9
        assert abs(np.sum(spec.eigenvalues**2) - np.sum(np.abs(a) ** 2)) < 1e-9

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            matcore.eig_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_deterministic(self, rng):
        a = random_hermitian(5, rng)
        s1 = matcore.eig_hermitian(a)
        s2 = matcore.eig_hermitian(a)
        assert np.array_equal(s1.eigenvalues, s2.eigenvalues)
        assert np.array_equal(s1.eigenvectors, s2.eigenvectors)

    def test_zero_matrix(self):
        spec = matcore.eig_hermitian(np.zeros((3, 3)))
        assert np.array_equal(spec.eigenvalues, np.zeros(3))


class TestKron:
    def test_identity(self):
        assert np.array_equal(matcore.kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_rank_one_projector(self):
        p0 = np.diag([1.0, 0.0])
        p1 = np.diag([0.0, 1.0])
        out = matcore.kron(p0, p1)
        expected = np.zeros((4, 4))
        expected[1, 1] = 1.0
        assert np.array_equal(out, expected)

    def test_trace_multiplicativity(self, rng):
        for _ in range(5):
            a = random_hermitian(3, rng)
            b = random_hermitian(3, rng)
            lhs = np.trace(matcore.kron(a, b))
            assert abs(lhs - np.trace(a) * np.trace(b)) < 1e-12

    def test_associativity_exact(self):
        rng = np.random.default_rng(3)
        a, b, c = (rng.integers(-3, 4, (2, 2)).astype(complex) for _ in range(3))
        left = matcore.kron(matcore.kron(a, b), c)
        right = matcore.kron(a, matcore.kron(b, c))
        assert np.array_equal(left, right)

    def test_associativity_float(self, rng):
        a = random_hermitian(2, rng)
        b = random_hermitian(3, rng)
        c = random_hermitian(2, rng)
        left = matcore.kron(matcore.kron(a, b), c)
        right = matcore.kron(a, matcore.kron(b, c))
        assert np.max(np.abs(left - right)) < 1e-12


class TestPartialTrace:
    def test_product_state(self, rng):
        a = random_hermitian(2, rng)
        b = random_hermitian(2, rng)
        m = matcore.kron(a, b)
        assert np.max(np.abs(matcore.partial_trace(m, (2, 2), 0) - np.trace(b) * a)) < 1e-12
        assert np.max(np.abs(matcore.partial_trace(m, (2, 2), 1) - np.trace(a) * b)) < 1e-12

    def test_bell_marginal(self):
        bell = np.zeros(4, dtype=complex)
        bell[0] = bell[3] = 1 / np.sqrt(2)
        rho = np.outer(bell, bell.conj())
        marg = matcore.partial_trace(rho, (2, 2), 0)
        assert np.max(np.abs(marg - np.eye(2) / 2)) < 1e-12

    def test_four_qubit_masker_state(self):
        from qthermo.protocols import four_party_masker

        u = four_party_masker()
        ket = np.zeros(16, dtype=complex)
        ket[0] = 0.6
        ket[8] = 0.8j
        out = u @ ket
        rho = np.outer(out, out.conj())
        marg = matcore.partial_trace(rho, (2, 2, 2, 2), 2)
        oracle = brute_force_partial_trace(rho, (2, 2, 2, 2), [2])
        assert np.max(np.abs(marg - oracle)) < 1e-12
        assert np.max(np.abs(marg - np.eye(2) / 2)) < 1e-12

    def test_against_brute_force(self, rng):
        dims = (2, 3, 2)
        d = int(np.prod(dims))
        m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        for keep in ([0], [1], [2], [0, 1], [0, 2], [1, 2]):
            got = matcore.partial_trace(m, dims, keep)
            want = brute_force_partial_trace(m, dims, keep)
            assert np.max(np.abs(got - want)) < 1e-12

    def test_full_trace(self, rng):
        for dims in ((2, 3), (2, 2, 3)):
            d = int(np.prod(dims))
            m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            got = matcore.partial_trace(m, dims, range(len(dims)))
            assert np.max(np.abs(got - m)) < 1e-12
            traced = matcore.partial_trace(m, dims, [0])
            assert abs(np.trace(traced) - np.trace(m)) < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            matcore.partial_trace(np.eye(4), (2, 3), 0)
        with pytest.raises(DimensionMismatchError):
            matcore.partial_trace(np.eye(4), (2, 2), [])
        with pytest.raises(DimensionMismatchError):
            matcore.partial_trace(np.eye(4), (2, 2), [2])


class TestTraceDistance:
    def test_identical_states(self, rng):
        rho = matcore.sample_ginibre_density(3, 3, rng)
        assert matcore.trace_distance(rho, rho) == 0.0

    def test_orthogonal_pure_states(self):
        assert abs(matcore.trace_distance(np.diag([1.0, 0]), np.diag([0, 1.0])) - 1.0) < 1e-12

    def test_witness_inequality(self, rng):
        for _ in range(10):
            a = matcore.sample_ginibre_density(3, 3, rng).matrix
            b = matcore.sample_ginibre_density(3, 2, rng).matrix
            td = matcore.trace_distance(a, b)
            v = matcore.sample_haar_ket(3, rng)
            p = np.outer(v, v.conj())
            assert td >= np.trace(p @ (b - a)).real - 1e-12

    def test_triangle_inequality(self, rng):
        for _ in range(10):
            a, b, c = (matcore.sample_ginibre_density(3, 3, rng) for _ in range(3))
            assert matcore.trace_distance(a, c) <= (
                matcore.trace_distance(a, b) + matcore.trace_distance(b, c) + 1e-10
            )

    def test_symmetry_and_range(self, rng):
        a = matcore.sample_ginibre_density(4, 2, rng)
        b = matcore.sample_ginibre_density(4, 4, rng)
        d1 = matcore.trace_distance(a, b)
        d2 = matcore.trace_distance(b, a)
        assert abs(d1 - d2) < 1e-14
        assert 0.0 <= d1 <= 1.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            matcore.trace_distance(np.eye(2) / 2, np.eye(3) / 3)


class TestCompleteToUnitary:
    def test_single_basis_column(self):
        u = matcore.complete_to_unitary({0: np.array([1.0, 0.0])}, 2)
        assert np.array_equal(u, np.eye(2))

    def test_partial_isometry_completion(self):
        v = np.zeros(4, dtype=complex)
        v[1] = v[2] = 1 / np.sqrt(2)
        cols = {0: np.array([1, 0, 0, 0], dtype=complex), 2: v}
        u = matcore.complete_to_unitary(cols, 4)
        assert np.max(np.abs(u.conj().T @ u - np.eye(4))) < 1e-10
        assert np.array_equal(u[:, 0], cols[0])
        assert np.array_equal(u[:, 2], cols[2])

    def test_deterministic(self, rng):
        v = matcore.sample_haar_ket(4, rng)
        u1 = matcore.complete_to_unitary({1: v}, 4)
        u2 = matcore.complete_to_unitary({1: v}, 4)
        assert np.array_equal(u1, u2)

    def test_rejects_non_orthonormal(self):
        cols = {0: np.array([1.0, 0.0]), 1: np.array([1.0, 1e-3])}
        with pytest.raises(NotOrthonormalError):
            matcore.complete_to_unitary(cols, 2)

    def test_assigned_columns_exact(self, rng):
        q = matcore.sample_haar_unitary(5, rng)
        cols = {0: q[:, 0], 3: q[:, 1]}
        u = matcore.complete_to_unitary(cols, 5)
        assert np.array_equal(u[:, 0], q[:, 0])
        assert np.array_equal(u[:, 3], q[:, 1])
        assert np.max(np.abs(u.conj().T @ u - np.eye(5))) < 1e-10


class TestExpm:
    def test_t_zero(self, rng):
        a = random_hermitian(3, rng)
        assert np.max(np.abs(matcore.expm_i_hermitian(a, 0.0) - np.eye(3))) < 1e-12

    def test_diagonal_phase(self):
        u = matcore.expm_i_hermitian(np.diag([0.0, 1.0]), np.pi)
        assert np.max(np.abs(u - np.diag([1.0, np.exp(-1j * np.pi)]))) < 1e-12

    def test_composition(self, rng):
        a = random_hermitian(4, rng)
        u1 = matcore.expm_i_hermitian(a, 0.7)
        u2 = matcore.expm_i_hermitian(a, 1.9)
        u12 = matcore.expm_i_hermitian(a, 2.6)
        assert np.max(np.abs(u1 @ u2 - u12)) < 1e-10

    def test_unitarity(self, rng):
        a = random_hermitian(5, rng)
        u = matcore.expm_i_hermitian(a, 2.3)
        assert matcore.is_unitary(u, 1e-10)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            matcore.expm_i_hermitian(np.array([[0, 1], [0, 0]], dtype=complex), 1.0)


class TestSampling:
    def test_ginibre_pure(self, rng):
        rho = matcore.sample_ginibre_density(4, 1, rng)
        assert abs(rho.purity() - 1.0) < 1e-12

    def test_ginibre_full_rank(self, rng):
        rho = matcore.sample_ginibre_density(4, 4, rng)
        assert abs(np.trace(rho.matrix).real - 1.0) < 1e-12
        w = np.linalg.eigvalsh(rho.matrix)
        assert np.all(w > 0)

    def test_ginibre_deterministic(self):
        r1 = matcore.sample_ginibre_density(3, 2, np.random.default_rng(7))
        r2 = matcore.sample_ginibre_density(3, 2, np.random.default_rng(7))
        assert np.array_equal(r1.matrix, r2.matrix)

    def test_ginibre_bad_rank(self, rng):
        with pytest.raises(BadRankError):
            matcore.sample_ginibre_density(3, 0, rng)
        with pytest.raises(BadRankError):
            matcore.sample_ginibre_density(3, 4, rng)

    def test_haar_dim_one(self, rng):
        u = matcore.sample_haar_unitary(1, rng)
        assert abs(abs(u[0, 0]) - 1.0) < 1e-12

    def test_haar_unitarity(self, rng):
        u = matcore.sample_haar_unitary(6, rng)
        assert matcore.is_unitary(u, 1e-10)

    def test_haar_first_moment(self):
        # |U_00|^2 ~ Beta(1, d-1): mean 1/d, var (d-1)/(d^2 (d+1))
        dim, n = 3, 10000
        rng = np.random.default_rng(123)
        acc = 0.0
        for _ in range(n):
            acc += abs(matcore.sample_haar_unitary(dim, rng)[0, 0]) ** 2
        mean = acc / n
        sigma = np.sqrt((dim - 1) / (dim**2 * (dim + 1)) / n)
        assert abs(mean - 1.0 / dim) < 3 * sigma

    def test_haar_bad_dim(self, rng):
        with pytest.raises(BadDimensionError):
            matcore.sample_haar_unitary(0, rng)


class TestPredicates:
    def test_is_hermitian(self, rng):
        assert matcore.is_hermitian(random_hermitian(3, rng))
        assert not matcore.is_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_is_unitary(self, rng):
        assert matcore.is_unitary(matcore.sample_haar_unitary(4, rng))
        assert not matcore.is_unitary(np.eye(3) * 1.5)
