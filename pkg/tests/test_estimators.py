import numpy as np
import pytest

from src.containers import Container
from src.domain.entities import DiscreteSystem, EnsembleFamily, EnsembleSpec, Experiment, EstimationMethod, Trajectory
from src.domain.exceptions import InvalidInputError, DimensionMismatchError
from src.domain.services import IdentifiabilityTester, LtiDynamics, RecoveryMetrics, VisibilityAnalyzer
from src.infrastructure.estimation import DmdcEstimator, StlsqEstimator
from src.infrastructure.sampling import EnsembleSampler

from .helpers import pe_experiment


@pytest.fixture
def sparse_discrete():
    """행렬 성분이 모두 0 이거나 |a| ≥ 0.2 인 안정 이산 시스템."""
    return DiscreteSystem(
        ad_matrix=[[0.5, 0.2, 0.0], [0.0, -0.4, 0.0], [0.0, 0.3, 0.3]],
        bd_matrix=[[1.0, 0.0], [0.0, 0.0], [0.0, 1.0]],
        dt=1.0,
    )


def simulate(discrete: DiscreteSystem, x0, horizon: int = 60, seed: int = 0):
    experiment = Experiment(x0=x0, inputs=EnsembleSampler.pe_input(discrete.m, horizon, seed), dt=discrete.dt)
    return LtiDynamics.simulate_discrete(discrete, experiment), experiment.inputs


class TestDmdc:
    def test_exact_recovery_on_informative_data(self, sparse_discrete):
        trajectory, inputs = simulate(sparse_discrete, [1.0, 1.0, 1.0])
        fit = DmdcEstimator().fit(trajectory, inputs)

        np.testing.assert_allclose(fit.ad_hat, sparse_discrete.ad_matrix, atol=1e-9)
        np.testing.assert_allclose(fit.bd_hat, sparse_discrete.bd_matrix, atol=1e-9)
        assert fit.residual < 1e-9
        assert fit.method == EstimationMethod.DMDC

    def test_rank_deficient_fit_is_consistent(self, planted):
        """가시 부분이 참값과 같고 REE_full 은 최소 노름 예측과 일치합니다."""
        system, x0 = planted(6, 3, seed=7)
        discrete = LtiDynamics.discretize_zoh(system, 0.1)
        experiment = pe_experiment(x0, m=system.m, horizon=80, dt=0.1)
        trajectory = LtiDynamics.simulate_discrete(discrete, experiment)

        fit = DmdcEstimator().fit(trajectory, experiment.inputs)
        basis = VisibilityAnalyzer.visible_subspace(system, x0).basis
        truth = (discrete.ad_matrix, discrete.bd_matrix)

        assert RecoveryMetrics.ree_vis(truth, (fit.ad_hat, fit.bd_hat), basis) < 1e-6
        np.testing.assert_allclose(fit.bd_hat, discrete.bd_matrix, atol=1e-6)
        assert RecoveryMetrics.ree_full(truth, (fit.ad_hat, fit.bd_hat)) == pytest.approx(
            RecoveryMetrics.min_norm_full_error(truth, basis), abs=1e-6
        )

    def test_zero_system(self):
        trajectory = Trajectory(states=np.zeros((6, 2)), dt=1.0)
        fit = DmdcEstimator().fit(trajectory, np.zeros((5, 1)))
        np.testing.assert_array_equal(fit.stacked, np.zeros((2, 3)))

    def test_needs_one_snapshot_pair(self):
        with pytest.raises(InvalidInputError):
            DmdcEstimator().fit(Trajectory(states=np.ones((1, 2)), dt=1.0), np.ones((1, 1)))

    def test_short_inputs(self):
        with pytest.raises(DimensionMismatchError):
            DmdcEstimator().fit(Trajectory(states=np.ones((6, 2)), dt=1.0), np.ones((3, 1)))


class TestStlsq:
    def test_zero_threshold_equals_dmdc(self, planted):
        system, x0 = planted(5, 3, seed=2)
        experiment = pe_experiment(x0, m=system.m, horizon=50, dt=0.1)
        trajectory = LtiDynamics.simulate_discrete(LtiDynamics.discretize_zoh(system, 0.1), experiment)

        dmdc = DmdcEstimator().fit(trajectory, experiment.inputs)
        stlsq = StlsqEstimator(threshold=0.0).fit(trajectory, experiment.inputs)
        np.testing.assert_array_equal(stlsq.stacked, dmdc.stacked)

    def test_recovers_sparse_support(self, sparse_discrete):
        trajectory, inputs = simulate(sparse_discrete, [1.0, -1.0, 0.5], seed=3)
        fit = StlsqEstimator(threshold=0.05).fit(trajectory, inputs)

        truth = np.hstack([sparse_discrete.ad_matrix, sparse_discrete.bd_matrix])
        np.testing.assert_array_equal(fit.stacked != 0, truth != 0)
        np.testing.assert_allclose(fit.stacked, truth, atol=1e-9)
        assert fit.method == EstimationMethod.STLSQ

    def test_matches_dmdc_on_truncated_gaussian_ensemble(self, sampler):
        """성분 크기가 0.1 이상인 앙상블에서는 임계 처리가 참 지지집합을 보존합니다."""
        checked = 0
        for seed in range(300):
            spec = EnsembleSpec(
                n=5, m=2, density_p=0.5, family=EnsembleFamily.TRUNC_GAUSS_SPARSE, rho_target=0.95, seed=seed
            )
            system = sampler.trunc_gauss_sparse(spec)
            truth = np.hstack([system.a_matrix, system.b_matrix])
            if not truth.any() or np.min(np.abs(truth[truth != 0])) < 0.1:
                continue

            discrete = DiscreteSystem(ad_matrix=system.a_matrix, bd_matrix=system.b_matrix, dt=1.0)
            x0 = sampler.sample_x0(5, 1.0, seed=seed)
            trajectory, inputs = simulate(discrete, x0, horizon=80, seed=seed)
            report = IdentifiabilityTester.informativeness_gramian(trajectory.states[:80], inputs, 1.0, rtol=1e-6)
            if not report.informative:
                continue

            dmdc = DmdcEstimator().fit(trajectory, inputs)
            stlsq = StlsqEstimator(threshold=0.05).fit(trajectory, inputs)
            np.testing.assert_array_equal(stlsq.stacked != 0, truth != 0)
            np.testing.assert_allclose(stlsq.stacked, truth, atol=1e-8)
            np.testing.assert_allclose(stlsq.stacked, dmdc.stacked, atol=1e-8)

            checked += 1
            if checked == 20:
                break
        assert checked == 20

    def test_large_threshold_zeroes_everything(self, sparse_discrete):
        trajectory, inputs = simulate(sparse_discrete, [1.0, 1.0, 1.0])
        fit = StlsqEstimator(threshold=10.0).fit(trajectory, inputs)
        assert not fit.stacked.any()

    @pytest.mark.parametrize("kwargs", [{"threshold": -0.1}, {"iterations": 0}])
    def test_invalid_arguments(self, kwargs):
        with pytest.raises(InvalidInputError):
            StlsqEstimator(**kwargs)


class TestRecoveryMetrics:
    def test_relative_error(self):
        truth = (np.eye(2), np.zeros((2, 1)))
        fit = (2 * np.eye(2), np.zeros((2, 1)))
        assert RecoveryMetrics.ree_full(truth, fit) == pytest.approx(1.0)

    def test_visible_error_ignores_hidden_block(self):
        truth = (np.diag([1.0, 2.0]), np.array([[1.0], [0.0]]))
        fit = (np.diag([1.0, 7.0]), np.array([[1.0], [0.0]]))
        basis = np.array([[1.0], [0.0]])
        assert RecoveryMetrics.ree_vis(truth, fit, basis) == 0.0
        assert RecoveryMetrics.ree_full(truth, fit) > 0.0

    def test_zero_truth(self):
        zero = (np.zeros((2, 2)), np.zeros((2, 1)))
        with pytest.raises(InvalidInputError):
            RecoveryMetrics.ree_full(zero, zero)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            RecoveryMetrics.ree_full((np.eye(2), np.zeros((2, 1))), (np.eye(3), np.zeros((3, 1))))


class TestRegistry:
    def test_moesp_resolves_to_least_squares(self):
        container = Container()
        assert isinstance(container.estimators("moesp"), DmdcEstimator)
        assert isinstance(container.estimators("dmdc"), DmdcEstimator)
        assert isinstance(container.estimators("stlsq"), StlsqEstimator)
