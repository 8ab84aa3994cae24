import numpy as np
import pytest
from scipy.stats import ortho_group

from src.domain.entities import LtiSystem, Subspace, Trajectory
from src.domain.exceptions import InvalidInputError, DimensionMismatchError
from src.domain.services import LtiDynamics, VisibilityAnalyzer

from .helpers import pe_experiment


class TestVisibleSubspace:
    def test_worked_example_dimensions(self, worked_system, good_x0, bad_x0):
        assert VisibilityAnalyzer.visible_subspace(worked_system, good_x0).k == 3
        assert VisibilityAnalyzer.visible_subspace(worked_system, bad_x0).k == 2

    def test_bad_x0_spans_first_two_axes(self, worked_system, bad_x0):
        subspace = VisibilityAnalyzer.visible_subspace(worked_system, bad_x0)
        expected = np.diag([1.0, 1.0, 0.0])
        np.testing.assert_allclose(subspace.projector, expected, atol=1e-12)

    def test_basis_is_orthonormal(self, worked_system, bad_x0):
        basis = VisibilityAnalyzer.visible_subspace(worked_system, bad_x0).basis
        np.testing.assert_allclose(basis.T @ basis, np.eye(2), atol=1e-12)

    def test_krylov_shape(self, worked_system, good_x0):
        krylov = VisibilityAnalyzer.krylov_matrix(worked_system, good_x0)
        assert krylov.shape == (3, 9)
        np.testing.assert_allclose(krylov[:, 3], worked_system.a_matrix @ good_x0)

    def test_zero_x0_and_no_inputs(self):
        system = LtiSystem(a_matrix=np.eye(2), b_matrix=None)
        subspace = VisibilityAnalyzer.visible_subspace(system, np.zeros(2))
        assert subspace.k == 0
        assert subspace.basis.shape == (2, 0)

    def test_x0_dimension_mismatch(self, worked_system):
        with pytest.raises(DimensionMismatchError):
            VisibilityAnalyzer.visible_subspace(worked_system, np.ones(2))

    def test_rtol_must_be_positive(self, worked_system, good_x0):
        with pytest.raises(InvalidInputError):
            VisibilityAnalyzer.visible_subspace(worked_system, good_x0, rtol=0.0)

    def test_planted_dimension(self, planted):
        for k in (1, 3, 5):
            system, x0 = planted(6, k, seed=k)
            assert VisibilityAnalyzer.visible_subspace(system, x0).k == k

    def test_invariant_under_zoh(self, planted):
        """연속 쌍과 ZOH 이산 쌍의 가시 부분공간이 일치합니다."""
        for seed in range(100):
            system, x0 = planted(6, 1 + seed % 5, seed=2000 + seed)
            continuous = VisibilityAnalyzer.visible_subspace(system, x0)
            for dt in (0.05, 0.5, 1.0):
                discrete = LtiDynamics.discretize_zoh(system, dt)
                as_system = LtiSystem(a_matrix=discrete.ad_matrix, b_matrix=discrete.bd_matrix)
                sampled = VisibilityAnalyzer.visible_subspace(as_system, x0)
                assert sampled.k == continuous.k
                angle = VisibilityAnalyzer.principal_angle_deg(continuous.basis, sampled.basis)
                assert angle < 1e-6

    def test_extra_input_never_shrinks_subspace(self, planted, rng):
        for seed in range(30):
            system, x0 = planted(6, 1 + seed % 5, seed=3000 + seed)
            widened = LtiSystem(
                a_matrix=system.a_matrix, b_matrix=np.hstack([system.b_matrix, rng.standard_normal((6, 1))])
            )
            before = VisibilityAnalyzer.visible_subspace(system, x0).k
            assert VisibilityAnalyzer.visible_subspace(widened, x0).k >= before

    def test_well_separated_rank_decision(self):
        basis = np.eye(3)[:, :2]
        clear = Subspace(basis=basis, k=2, singular_values=np.array([1.0, 1e-3, 1e-17]), rtol=1e-10)
        weak = Subspace(basis=basis, k=2, singular_values=np.array([1.0, 3.3e-10, 1e-17]), rtol=1e-10)
        leaky = Subspace(basis=basis, k=2, singular_values=np.array([1.0, 1e-3, 1e-11]), rtol=1e-10)

        assert clear.is_well_separated()
        assert not weak.is_well_separated()
        assert not leaky.is_well_separated()
        assert not clear.is_well_separated(margin=1e8)


class TestBlockForm:
    def test_lower_left_block_vanishes(self, worked_system, bad_x0):
        subspace = VisibilityAnalyzer.visible_subspace(worked_system, bad_x0)
        block = VisibilityAnalyzer.block_form(worked_system, bad_x0, subspace)

        assert block.k == 2
        assert block.lower_left_residual < 1e-10
        assert block.input_residual < 1e-10
        assert block.state_residual < 1e-10
        assert block.a_w[0, 0] == pytest.approx(3.0)
        np.testing.assert_allclose(block.t_matrix.T @ block.t_matrix, np.eye(3), atol=1e-12)

    def test_full_subspace_has_empty_hidden_blocks(self, worked_system, good_x0):
        subspace = VisibilityAnalyzer.visible_subspace(worked_system, good_x0)
        block = VisibilityAnalyzer.block_form(worked_system, good_x0, subspace)
        assert block.a_w.shape == (0, 0)
        assert block.a_star.shape == (3, 0)

    def test_restricted_spectrum_is_visible_part(self, worked_system, bad_x0):
        subspace = VisibilityAnalyzer.visible_subspace(worked_system, bad_x0)
        a_v, b_v = VisibilityAnalyzer.restrict(worked_system, subspace.basis)
        np.testing.assert_allclose(np.sort(np.linalg.eigvals(a_v).real), [1.0, 2.0], atol=1e-10)
        assert b_v.shape == (2, 2)

    def test_restriction_follows_basis_rotation(self, planted):
        """P 대신 P·R 을 쓰면 제한 쌍이 Rᵀ 로 닮음 변환됩니다."""
        for seed in range(10):
            system, x0 = planted(6, 3, seed=4000 + seed)
            basis = VisibilityAnalyzer.visible_subspace(system, x0).basis
            rotation = ortho_group.rvs(3, random_state=seed)

            a_v, b_v = VisibilityAnalyzer.restrict(system, basis)
            a_rot, b_rot = VisibilityAnalyzer.restrict(system, basis @ rotation)
            np.testing.assert_allclose(a_rot, rotation.T @ a_v @ rotation, atol=1e-10)
            np.testing.assert_allclose(b_rot, rotation.T @ b_v, atol=1e-10)
            # 특성다항식 계수로 고유값 다중집합 비교
            np.testing.assert_allclose(np.poly(a_rot), np.poly(a_v), atol=1e-8)


class TestPrincipalAngle:
    def test_identical_subspaces(self):
        basis = ortho_group.rvs(5, random_state=1)[:, :3]
        assert VisibilityAnalyzer.principal_angle_deg(basis, basis) == pytest.approx(0.0, abs=1e-6)

    def test_orthogonal_subspaces(self):
        eye = np.eye(4)
        assert VisibilityAnalyzer.principal_angle_deg(eye[:, :2], eye[:, 2:]) == pytest.approx(90.0)

    def test_known_small_angle(self):
        angle = np.radians(1e-3)
        p1 = np.array([[1.0], [0.0]])
        p2 = np.array([[np.cos(angle)], [np.sin(angle)]])
        assert VisibilityAnalyzer.principal_angle_deg(p1, p2) == pytest.approx(1e-3, rel=1e-6)

    def test_basis_rotation_does_not_matter(self):
        basis = ortho_group.rvs(5, random_state=2)[:, :2]
        rotation = ortho_group.rvs(2, random_state=3)
        assert VisibilityAnalyzer.principal_angle_deg(basis, basis @ rotation) < 1e-5

    def test_mismatched_shapes(self):
        eye = np.eye(3)
        with pytest.raises(InvalidInputError):
            VisibilityAnalyzer.principal_angle_deg(eye[:, :1], eye[:, :2])


class TestEmpiricalBasis:
    def test_recovers_planted_subspace(self, planted):
        system, x0 = planted(6, 3, seed=4)
        experiment = pe_experiment(x0, m=system.m, horizon=100, dt=0.1, seed=5)
        trajectory = LtiDynamics.simulate_discrete(LtiDynamics.discretize_zoh(system, 0.1), experiment)

        basis, k_hat = VisibilityAnalyzer.empirical_visible_basis(trajectory)
        oracle = VisibilityAnalyzer.visible_subspace(system, x0).basis

        assert k_hat == 3
        assert VisibilityAnalyzer.principal_angle_deg(oracle, basis) < 1e-3

    def test_zero_trajectory(self):
        basis, k_hat = VisibilityAnalyzer.empirical_visible_basis(Trajectory(states=np.zeros((5, 3)), dt=1.0))
        assert k_hat == 0
        assert basis.shape == (3, 0)

    def test_tau_must_be_positive(self):
        with pytest.raises(InvalidInputError):
            VisibilityAnalyzer.empirical_visible_basis(Trajectory(states=np.ones((5, 2)), dt=1.0), tau=0.0)


class TestProperties:
    def test_constant_trajectory(self):
        states = np.tile([1.0, 0.0, 0.0], (10, 1))
        basis, k_hat = VisibilityAnalyzer.empirical_visible_basis(Trajectory(states=states, dt=1.0))
        assert k_hat == 1
        np.testing.assert_allclose(np.abs(basis[:, 0]), [1.0, 0.0, 0.0], atol=1e-12)

    def test_subspace_is_minimal_invariant(self, sampler):
        """V(x₀) 는 x₀ 와 B 의 열을 담고 A 에 대해 불변입니다."""
        for seed in range(20):
            n, k = 5, 1 + seed % 4
            system, x0 = sampler.planted_visibility_system(n, k, 2, seed=seed)
            subspace = VisibilityAnalyzer.visible_subspace(system, x0)
            projector = subspace.projector
            complement = np.eye(n) - projector

            assert np.linalg.norm(complement @ x0) <= 1e-8
            assert np.linalg.norm(complement @ system.b_matrix) <= 1e-8 * max(1.0, np.linalg.norm(system.b_matrix))
            assert np.linalg.norm(complement @ system.a_matrix @ subspace.basis) <= 1e-8 * np.linalg.norm(system.a_matrix)

    def test_block_residuals_over_random_systems(self, sampler):
        for seed in range(100):
            system, x0 = sampler.planted_visibility_system(6, 1 + seed % 5, 2, seed=1000 + seed)
            subspace = VisibilityAnalyzer.visible_subspace(system, x0)
            block = VisibilityAnalyzer.block_form(system, x0, subspace)
            assert block.lower_left_residual <= 1e-8 * np.linalg.norm(system.a_matrix)
