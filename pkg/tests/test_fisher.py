import numpy as np
import pytest

import qfisher as qf
from qfisher.core import InvariantError


def random_pure(rng, n):
    return qf.make_pure(n, rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n))


def random_mixed(rng, n, rank=None):
    d = 2**n
    rank = rank or d
    a = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = a @ a.conj().T
    return qf.DensityMatrix(n, rho / np.trace(rho))


def random_direction(rng):
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


class TestQfi:
    def test_ghz_reaches_qubit_count_squared(self):
        for n in range(2, 9):
            rho = qf.density_from_pure(qf.ghz(n))
            assert abs(qf.qfi(rho, qf.collective_spin(n, "z")) - n**2) <= 1e-8

    def test_generator_eigenstate_carries_none(self):
        rho = qf.density_from_pure(qf.ones_state(3))
        assert abs(qf.qfi(rho, qf.collective_spin(3, "z"))) <= 1e-10

    def test_white_noise_scaling_of_ghz4(self):
        # closed-form scaling factor is the independent check on the
        # eigendecomposition route
        jz = qf.collective_spin(4, "z")
        for p in (0.3, 0.5, 0.9):
            got = qf.qfi(qf.mix_with_identity(qf.ghz(4), p), jz)
            assert abs(got - qf.white_noise_factor(p, 4) * 16.0) <= 1e-8

    def test_pure_state_reduction(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            psi = random_pure(rng, 3)
            h = qf.spin_along(3, random_direction(rng))
            mixed_path = qf.qfi(qf.density_from_pure(psi), h)
            assert abs(mixed_path - 4.0 * qf.variance(psi, h)) <= 1e-8

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            qf.qfi(qf.density_from_pure(qf.ghz(2)), qf.collective_spin(3, "z"))

    def test_convexity(self):
        rng = np.random.default_rng(1)
        for _ in range(30):
            a, b = random_mixed(rng, 2), random_mixed(rng, 2)
            h = qf.spin_along(2, random_direction(rng))
            p = rng.random()
            mix = qf.DensityMatrix(2, p * a.matrix + (1 - p) * b.matrix)
            assert qf.qfi(mix, h) <= p * qf.qfi(a, h) + (1 - p) * qf.qfi(b, h) + 1e-8


class TestQfiMatrix:
    def test_ones_is_transverse(self):
        for n in (2, 4, 6):
            gamma = qf.qfi_matrix(qf.ones_state(n))
            assert np.allclose(gamma.matrix, np.diag([n, n, 0.0]), atol=1e-9)

    def test_half_filled_dicke(self):
        gamma = qf.qfi_matrix(qf.dicke(4, 2))
        assert np.allclose(gamma.matrix, np.diag([12.0, 12.0, 0.0]), atol=1e-9)

    def test_duer_three_qubits(self):
        gamma = qf.qfi_matrix(qf.duer_state(3))
        assert np.allclose(gamma.matrix, np.diag([0.5, 0.5, 2.25]), atol=1e-9)

    def test_exactly_symmetric(self):
        rng = np.random.default_rng(2)
        gamma = qf.qfi_matrix(random_mixed(rng, 3)).matrix
        assert np.array_equal(gamma, gamma.T)

    def test_quadratic_form_identity(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            rho = random_mixed(rng, 2)
            n_vec = random_direction(rng)
            lhs = qf.qfi(rho, qf.spin_along(2, n_vec))
            gamma = qf.qfi_matrix(rho).matrix
            assert abs(lhs - n_vec @ gamma @ n_vec) <= 1e-8

    def test_collective_rotation_preserves_top_eigenvalue(self):
        rng = np.random.default_rng(4)
        theta = 0.7
        jy = qf.collective_spin(3, "y").matrix
        lam, v = np.linalg.eigh(jy)
        u = (v * np.exp(-1j * theta * lam)) @ v.conj().T
        for _ in range(20):
            rho = random_mixed(rng, 3)
            rotated = qf.DensityMatrix(3, u @ rho.matrix @ u.conj().T)
            v0, _ = qf.qfi_max(rho)
            v1, _ = qf.qfi_max(rotated)
            assert abs(v0 - v1) <= 1e-8

    def test_white_noise_scaling_entrywise(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            psi = random_pure(rng, 3)
            p = rng.random()
            mixed = qf.qfi_matrix(qf.mix_with_identity(psi, p)).matrix
            pure = qf.qfi_matrix(psi).matrix
            assert np.max(np.abs(mixed - qf.white_noise_factor(p, 3) * pure)) <= 1e-8


class TestQfiSummaries:
    def test_ghz4_max_direction(self):
        value, direction = qf.qfi_max(qf.ghz(4))
        assert abs(value - 16.0) <= 1e-9
        assert np.allclose(np.abs(direction), [0, 0, 1], atol=1e-9)

    def test_isotropic_state(self):
        value, _ = qf.qfi_max(qf.psi_s4("+"))
        assert abs(value - 8.0) <= 1e-9

    def test_smolin_max(self):
        value, _ = qf.qfi_max(qf.smolin_state(2))
        assert abs(value - 4.0) <= 1e-9

    def test_avg_values(self):
        assert abs(qf.qfi_avg(qf.ghz(4)) - 8.0) <= 1e-9
        assert abs(qf.qfi_avg(qf.ones_state(4)) - 8.0 / 3.0) <= 1e-9
        assert abs(qf.qfi_avg(qf.duer_state(4)) - 136.0 / 45.0) <= 1e-9

    def test_montecarlo_matches_average(self):
        value = qf.qfi_avg_montecarlo(qf.density_from_pure(qf.ghz(4)), 10_000, seed=0)
        assert abs(value - 8.0) <= 0.3

    def test_montecarlo_isotropic_exact(self):
        assert abs(qf.qfi_avg_montecarlo(qf.psi_s4("+"), 1, seed=0) - 8.0) <= 1e-9

    def test_montecarlo_deterministic(self):
        a = qf.qfi_avg_montecarlo(qf.ghz(3), 50, seed=11)
        b = qf.qfi_avg_montecarlo(qf.ghz(3), 50, seed=11)
        assert a == b


class TestPovm:
    def test_parity_completeness(self):
        povm = qf.parity_povm(3, "x")
        assert len(povm) == 2
        total = sum(povm.elements)
        assert np.max(np.abs(total - np.eye(8))) <= 1e-12

    def test_invalid_povm_rejected(self):
        eye = np.eye(2)
        with pytest.raises(InvariantError):
            qf.Povm((eye * 0.5,))  # incomplete
        with pytest.raises(InvariantError):
            qf.Povm((np.diag([1.5, 1.0]), np.diag([-0.5, 0.0])))  # negative element


class TestClassicalFisher:
    def test_parity_fringe_saturates_qfi(self):
        for n in (2, 4, 6):
            # analytic outcome model (1 +- cos(N theta))/2 carries exactly N^2
            rho = qf.density_from_pure(qf.ghz(n))
            f = qf.classical_fisher(
                rho, qf.collective_spin(n, "z"), qf.parity_povm(n, "x"), np.pi / (4 * n)
            )
            assert abs(f - n**2) <= 1e-4

    def test_insensitive_measurement(self):
        rho = qf.density_from_pure(qf.ghz(3))
        f = qf.classical_fisher(rho, qf.collective_spin(3, "z"), qf.computational_povm(3), 0.3)
        assert abs(f) <= 1e-10

    def test_separable_probe_bounded(self):
        rho = qf.density_from_pure(qf.plus_state(4))
        f = qf.classical_fisher(rho, qf.collective_spin(4, "z"), qf.x_basis_povm(4), 0.1)
        assert f <= 4 + 1e-4

    def test_never_exceeds_qfi(self):
        rng = np.random.default_rng(6)
        for _ in range(25):
            rho = random_mixed(rng, 2)
            h = qf.spin_along(2, random_direction(rng))
            basis, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
            povm = qf.povm_from_basis(basis)
            theta = rng.uniform(0, np.pi)
            assert qf.classical_fisher(rho, h, povm, theta) <= qf.qfi(rho, h) + 1e-4


class TestLocalDirectionOptimization:
    def test_ghz_optimum_along_z(self):
        # the two-qubit case is omitted from the direction check: its optimum
        # is degenerate (the x axis reaches 4 as well)
        for n in (2, 3, 4):
            value, dirs = qf.optimize_local_directions(qf.ghz(n), seed=0)
            assert abs(value - n**2) <= 1e-8
            if n >= 3:
                assert np.all(np.abs(np.abs(dirs[:, 2]) - 1.0) <= 1e-6)

    def test_product_state_additivity(self):
        psi = qf.tensor(qf.plus_state(1), qf.ones_state(1))
        value, _ = qf.optimize_local_directions(psi, seed=0)
        assert abs(value - 2.0) <= 1e-8

    def test_symmetric_states_match_collective(self):
        for state in (qf.dicke(4, 2), qf.ghz(3), qf.psi_s4("+")):
            value, _ = qf.optimize_local_directions(state, seed=1)
            collective, _ = qf.qfi_max(state)
            assert abs(value - collective) <= 1e-8

    def test_never_below_collective(self):
        rng = np.random.default_rng(7)
        for i in range(10):
            psi = random_pure(rng, 3)
            value, _ = qf.optimize_local_directions(psi, restarts=3, seed=i)
            collective, _ = qf.qfi_max(psi)
            assert value >= collective - 1e-8

    def test_rejects_mixed_input(self):
        with pytest.raises(TypeError):
            qf.optimize_local_directions(qf.mix_with_identity(qf.ghz(2), 0.5))
