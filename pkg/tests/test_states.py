import numpy as np
import pytest

from qthermo import matcore, states
from qthermo.errors import DimensionMismatchError, InvalidStateError, NotHermitianError
from qthermo.states import BlochVector, DensityMatrix, Hamiltonian, gell_mann_basis

from conftest import random_hermitian


class TestDensityMatrix:
    def test_rejects_non_hermitian(self):
        m = np.array([[0.5, 0.3], [0.1, 0.5]], dtype=complex)
        with pytest.raises(InvalidStateError):
            DensityMatrix(m)

    def test_rejects_wrong_trace(self):
        with pytest.raises(InvalidStateError):
            DensityMatrix(np.eye(2))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(InvalidStateError):
            DensityMatrix(np.diag([1.5, -0.5]))

    def test_accepts_valid(self, rng):
        rho = matcore.sample_ginibre_density(3, 2, rng)
        again = DensityMatrix(rho.matrix)
        assert again.dim == 3

    def test_immutable(self, rng):
        rho = matcore.sample_ginibre_density(2, 2, rng)
        with pytest.raises(AttributeError):
            rho.dim = 5
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 9.0

    def test_pure_normalises(self):
        rho = DensityMatrix.pure([2.0, 0.0])
        assert abs(rho.purity() - 1.0) < 1e-12


class TestGellMannBasis:
    @pytest.mark.parametrize("dim", [2, 3, 4, 5])
    def test_orthonormal_traceless(self, dim):
        basis = gell_mann_basis(dim)
        n = len(basis)
        assert n == dim * dim - 1
        for j in range(n):
            assert abs(np.trace(basis.elements[j])) < 1e-12
            for k in range(j, n):
                val = np.trace(basis.elements[j] @ basis.elements[k]).real
                assert abs(val - (1.0 if j == k else 0.0)) < 1e-12

    @pytest.mark.parametrize("dim", [2, 3, 4, 5])
    def test_completeness(self, dim, rng):
        basis = gell_mann_basis(dim)
        a = random_hermitian(dim, rng)
        b = states.to_bloch(a, basis)
        assert np.max(np.abs(states.from_bloch(b, basis) - a)) < 1e-12

    def test_structure_constants_antisymmetric(self):
        basis = gell_mann_basis(3)
        table = basis.structure_constants
        for (j, k, l), v in table.items():
            assert abs(table.get((k, j, l), 0.0) + v) < 1e-10

    def test_qubit_structure_constants(self):
        # [X, Y] = 2iZ; with sigma = pauli/sqrt(2) this gives eps = sqrt(2)
        basis = gell_mann_basis(2)
        assert abs(basis.structure_constants[(0, 1, 2)] - np.sqrt(2.0)) < 1e-12

    def test_commutator_expansion(self, rng):
        basis = gell_mann_basis(3)
        sig = basis.elements
        j, k = 1, 5
        comm = sig[j] @ sig[k] - sig[k] @ sig[j]
        rebuilt = sum(
            1j * v * sig[l] for (jj, kk, l), v in basis.structure_constants.items()
            if (jj, kk) == (j, k)
        )
        assert np.max(np.abs(comm - rebuilt)) < 1e-12

    def test_cached_instance(self):
        assert gell_mann_basis(3) is gell_mann_basis(3)


class TestBloch:
    def test_maximally_mixed_is_origin(self):
        basis = gell_mann_basis(4)
        b = states.to_bloch(np.eye(4) / 4, basis)
        assert b.norm() < 1e-14
        assert abs(b.scalar - 1.0) < 1e-14

    def test_pure_qubit_radius(self):
        basis = gell_mann_basis(2)
        b = states.to_bloch(np.diag([1.0, 0.0]), basis)
        assert abs(b.norm() - np.sqrt(2.0)) < 1e-12

    def test_roundtrip_random(self, rng):
        basis = gell_mann_basis(3)
        for _ in range(100):
            a = random_hermitian(3, rng)
            b = states.to_bloch(a, basis)
            assert np.max(np.abs(states.from_bloch(b, basis) - a)) < 1e-12

    def test_purity_relation(self, rng):
        basis = gell_mann_basis(3)
        for rank in (1, 2, 3):
            rho = matcore.sample_ginibre_density(3, rank, rng)
            b = states.to_bloch(rho, basis)
            assert abs(rho.purity() - (3 + b.norm() ** 2) / 9) < 1e-10

    def test_from_bloch_allows_outside_state_body(self):
        basis = gell_mann_basis(2)
        comps = np.zeros(3)
        comps[2] = 10.0  # far outside the ball
        m = states.from_bloch(BlochVector(dim=2, scalar=1.0, components=comps), basis)
        assert matcore.is_hermitian(m)
        assert abs(np.trace(m).real - 1.0) < 1e-12
        assert np.min(np.linalg.eigvalsh(m)) < 0

    def test_to_bloch_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            states.to_bloch(np.array([[0, 1], [0, 0]], dtype=complex), gell_mann_basis(2))

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            states.to_bloch(np.eye(3) / 3, gell_mann_basis(2))


class TestEnergy:
    def test_ground_state(self):
        assert states.energy(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])) == 0.0

    def test_maximally_mixed(self):
        assert abs(states.energy(np.eye(2) / 2, np.diag([0.0, 1.0])) - 0.5) < 1e-15

    def test_linearity(self, rng):
        h = Hamiltonian(random_hermitian(3, rng))
        for _ in range(20):
            rho = matcore.sample_ginibre_density(3, 3, rng)
            sigma = matcore.sample_ginibre_density(3, 2, rng)
            p = rng.uniform()
            mix = p * rho.matrix + (1 - p) * sigma.matrix
            expect = p * states.energy(rho, h) + (1 - p) * states.energy(sigma, h)
            assert abs(states.energy(mix, h) - expect) < 1e-12

    def test_equi_energetic_convexity(self, rng):
        basis = gell_mann_basis(3)
        h = Hamiltonian(random_hermitian(3, rng))
        for _ in range(20):
            rho = matcore.sample_ginibre_density(3, 3, rng)
            sigma = states.equal_energy_partner(rho, h, basis, rng)
            e = states.energy(rho, h)
            assert abs(states.energy(sigma, h) - e) < 1e-12
            for lam in (0.1, 0.5, 0.9):
                tau = lam * rho.matrix + (1 - lam) * sigma.matrix
                assert abs(states.energy(tau, h) - e) < 1e-12

    def test_bloch_form_cross_check(self, rng):
        # direct trace equals the contraction n0/d + (n.r)/d^2 in this basis
        basis = gell_mann_basis(3)
        rho = matcore.sample_ginibre_density(3, 3, rng)
        h = Hamiltonian(random_hermitian(3, rng))
        br = states.to_bloch(rho, basis)
        bh = states.to_bloch(h, basis)
        via_bloch = bh.scalar / 3 + float(bh.components @ br.components) / 9
        assert abs(states.energy(rho, h) - via_bloch) < 1e-12


class TestEvolve:
    def test_t_zero(self, rng):
        rho = matcore.sample_ginibre_density(3, 3, rng)
        h = Hamiltonian(random_hermitian(3, rng))
        out = states.evolve(rho, h, 0.0)
        assert np.max(np.abs(out.matrix - rho.matrix)) < 1e-12

    def test_energy_conservation(self, rng):
        rho = matcore.sample_ginibre_density(3, 3, rng)
        h = Hamiltonian(random_hermitian(3, rng))
        e0 = states.energy(rho, h)
        for t in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0):
            assert abs(states.energy(states.evolve(rho, h, t), h) - e0) < 1e-10

    def test_spectrum_preserved(self, rng):
        rho = matcore.sample_ginibre_density(4, 3, rng)
        h = Hamiltonian(random_hermitian(4, rng))
        out = states.evolve(rho, h, 1.7)
        w0 = np.linalg.eigvalsh(rho.matrix)
        w1 = np.linalg.eigvalsh(out.matrix)
        assert np.max(np.abs(w0 - w1)) < 1e-10

    def test_group_action(self, rng):
        rho = matcore.sample_ginibre_density(3, 3, rng)
        h = Hamiltonian(random_hermitian(3, rng))
        a = states.evolve(states.evolve(rho, h, 0.6), h, 1.1)
        b = states.evolve(rho, h, 1.7)
        assert np.max(np.abs(a.matrix - b.matrix)) < 1e-10

    def test_qubit_velocity_matches_finite_difference(self, rng):
        basis = gell_mann_basis(2)
        for _ in range(10):
            rho = matcore.sample_ginibre_density(2, 2, rng)
            h = Hamiltonian(random_hermitian(2, rng))
            dt = 1e-6
            fwd = states.to_bloch(states.evolve(rho, h, dt), basis).components
            bwd = states.to_bloch(states.evolve(rho, h, -dt), basis).components
            fd = (fwd - bwd) / (2 * dt)
            model = states.bloch_velocity(rho, h, basis)
            assert np.max(np.abs(fd - model)) < 1e-4


class TestHamiltonian:
    def test_spectrum_reconstructs(self, rng):
        h = Hamiltonian(random_hermitian(5, rng))
        assert np.max(np.abs(h.spectrum.reconstruct() - h.matrix)) < 1e-9

    def test_no_silent_shift(self):
        h = Hamiltonian.from_eigenvalues([3.0, 5.0])
        assert np.allclose(h.energies, [3.0, 5.0])

    def test_equally_spaced(self):
        h = Hamiltonian.equally_spaced(4, spacing=0.5)
        assert np.allclose(h.energies, [0.0, 0.5, 1.0, 1.5])

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            Hamiltonian(np.array([[0, 1], [0, 0]], dtype=complex))
