import numpy as np
import pytest
from scipy.integrate import solve_ivp

from src.domain.entities import LtiSystem, DiscreteSystem, Experiment, Trajectory
from src.domain.exceptions import InvalidInputError, DimensionMismatchError
from src.domain.services import LtiDynamics, VisibilityAnalyzer

from .helpers import pe_experiment


class TestEntities:
    def test_rejects_non_square_a(self):
        with pytest.raises(InvalidInputError):
            LtiSystem(a_matrix=np.zeros((2, 3)), b_matrix=np.zeros((2, 1)))

    def test_rejects_b_row_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            LtiSystem(a_matrix=np.eye(2), b_matrix=np.zeros((3, 1)))

    def test_rejects_non_finite_entries(self):
        with pytest.raises(InvalidInputError):
            LtiSystem(a_matrix=[[np.nan]], b_matrix=[[1.0]])

    def test_arrays_are_read_only(self, worked_system):
        with pytest.raises(ValueError):
            worked_system.a_matrix[0, 0] = 5.0

    def test_zero_inputs_allowed(self):
        system = LtiSystem(a_matrix=np.eye(2), b_matrix=None)
        assert system.m == 0
        assert system.b_matrix.shape == (2, 0)

    def test_experiment_requires_positive_dt(self):
        with pytest.raises(InvalidInputError):
            Experiment(x0=[1.0], inputs=[[0.0]], dt=0.0)


class TestDiscretization:
    def test_zoh_of_pure_integrator(self):
        system = LtiSystem(a_matrix=np.zeros((2, 2)), b_matrix=np.eye(2))
        discrete = LtiDynamics.discretize_zoh(system, 0.5)
        np.testing.assert_allclose(discrete.ad_matrix, np.eye(2), atol=1e-15)
        np.testing.assert_allclose(discrete.bd_matrix, 0.5 * np.eye(2), atol=1e-15)

    def test_zoh_scalar_decay(self):
        system = LtiSystem(a_matrix=[[-1.0]], b_matrix=[[1.0]])
        discrete = LtiDynamics.discretize_zoh(system, 0.3)
        assert discrete.ad_matrix[0, 0] == pytest.approx(np.exp(-0.3), rel=1e-14)
        assert discrete.bd_matrix[0, 0] == pytest.approx(1 - np.exp(-0.3), rel=1e-13)

    @pytest.mark.parametrize("dt", [0.0, -0.1, np.inf])
    def test_zoh_rejects_bad_dt(self, worked_system, dt):
        with pytest.raises(InvalidInputError):
            LtiDynamics.discretize_zoh(worked_system, dt)

    def test_euler_pair(self, worked_system):
        discrete = LtiDynamics.discretize_euler(worked_system, 0.1)
        np.testing.assert_allclose(discrete.ad_matrix, np.eye(3) + 0.1 * worked_system.a_matrix)
        np.testing.assert_allclose(discrete.bd_matrix, 0.1 * worked_system.b_matrix)


class TestSimulation:
    def test_matches_adaptive_reference_integrator(self, rng):
        for _ in range(50):
            n, m, dt = 4, 2, 0.1
            a_matrix = rng.standard_normal((n, n)) / np.sqrt(n) - 1.5 * np.eye(n)
            system = LtiSystem(a_matrix=a_matrix, b_matrix=rng.standard_normal((n, m)))
            experiment = Experiment(x0=rng.standard_normal(n), inputs=rng.standard_normal((20, m)), dt=dt)

            trajectory = LtiDynamics.simulate_discrete(LtiDynamics.discretize_zoh(system, dt), experiment)

            reference = [experiment.x0]
            for u in experiment.inputs:
                solution = solve_ivp(
                    lambda t, x, u=u: a_matrix @ x + system.b_matrix @ u,
                    (0.0, dt),
                    reference[-1],
                    rtol=1e-12,
                    atol=1e-14,
                )
                reference.append(solution.y[:, -1])
            reference = np.array(reference)

            error = np.linalg.norm(trajectory.states - reference) / np.linalg.norm(reference)
            assert error <= 1e-8

    def test_trajectory_shape_and_times(self, worked_system, good_x0):
        experiment = pe_experiment(good_x0, m=2, horizon=10)
        trajectory = LtiDynamics.simulate_discrete(LtiDynamics.discretize_zoh(worked_system, 0.1), experiment)
        assert trajectory.states.shape == (11, 3)
        np.testing.assert_allclose(trajectory.times, 0.1 * np.arange(11))
        np.testing.assert_array_equal(trajectory.states[0], good_x0)

    def test_euler_simulation_equals_discrete_euler_pair(self, worked_system, good_x0):
        experiment = pe_experiment(good_x0, m=2, horizon=15, dt=0.05)
        euler = LtiDynamics.simulate_euler(worked_system, experiment)
        stepped = LtiDynamics.simulate_discrete(LtiDynamics.discretize_euler(worked_system, 0.05), experiment)
        np.testing.assert_allclose(euler.states, stepped.states, rtol=1e-12, atol=1e-12)

    def test_simulation_is_linear_in_x0_and_inputs(self, worked_system, rng):
        discrete = LtiDynamics.discretize_zoh(worked_system, 0.1)
        first = Experiment(x0=rng.standard_normal(3), inputs=rng.standard_normal((25, 2)), dt=0.1)
        second = Experiment(x0=rng.standard_normal(3), inputs=rng.standard_normal((25, 2)), dt=0.1)
        weight = -2.5
        combined = Experiment(
            x0=first.x0 + weight * second.x0, inputs=first.inputs + weight * second.inputs, dt=0.1
        )

        superposed = (
            LtiDynamics.simulate_discrete(discrete, first).states
            + weight * LtiDynamics.simulate_discrete(discrete, second).states
        )
        direct = LtiDynamics.simulate_discrete(discrete, combined).states
        assert np.linalg.norm(direct - superposed) <= 1e-10 * np.linalg.norm(direct)

    def test_dt_mismatch(self, worked_system, good_x0):
        discrete = LtiDynamics.discretize_zoh(worked_system, 0.1)
        with pytest.raises(InvalidInputError):
            LtiDynamics.simulate_discrete(discrete, pe_experiment(good_x0, m=2, dt=0.2))

    def test_input_dimension_mismatch(self, worked_system, good_x0):
        discrete = LtiDynamics.discretize_zoh(worked_system, 0.1)
        with pytest.raises(DimensionMismatchError):
            LtiDynamics.simulate_discrete(discrete, pe_experiment(good_x0, m=3))

    def test_state_dimension_mismatch(self, worked_system):
        with pytest.raises(DimensionMismatchError):
            LtiDynamics.simulate_euler(worked_system, pe_experiment(np.ones(2), m=2))

    def test_orbit_stays_in_visible_subspace(self, worked_system, bad_x0, planted):
        cases = [(worked_system, bad_x0)] + [planted(6, k, seed=k) for k in (2, 3, 4)]
        for system, x0 in cases:
            experiment = pe_experiment(x0, m=system.m, horizon=80, dt=0.1)
            trajectory = LtiDynamics.simulate_discrete(LtiDynamics.discretize_zoh(system, 0.1), experiment)
            projector = VisibilityAnalyzer.visible_subspace(system, x0).projector

            outside = trajectory.states - trajectory.states @ projector
            scale = max(1.0, np.linalg.norm(trajectory.states, axis=1).max())
            assert np.linalg.norm(outside, axis=1).max() / scale <= 1e-8


class TestNoise:
    def test_zero_sigma_returns_same_trajectory(self):
        trajectory = Trajectory(states=np.ones((3, 2)), dt=1.0)
        assert LtiDynamics.add_noise(trajectory, 0.0, seed=1) is trajectory

    def test_seeded_noise_is_deterministic(self):
        trajectory = Trajectory(states=np.zeros((50, 3)), dt=1.0)
        first = LtiDynamics.add_noise(trajectory, 0.1, seed=7)
        second = LtiDynamics.add_noise(trajectory, 0.1, seed=7)
        np.testing.assert_array_equal(first.states, second.states)
        assert first.states.std() == pytest.approx(0.1, rel=0.2)

    def test_negative_sigma(self):
        with pytest.raises(InvalidInputError):
            LtiDynamics.add_noise(Trajectory(states=np.zeros((2, 1)), dt=1.0), -1.0, seed=0)


def test_discrete_system_validates_dt():
    with pytest.raises(InvalidInputError):
        DiscreteSystem(ad_matrix=np.eye(2), bd_matrix=np.zeros((2, 1)), dt=-1.0)


def test_euler_converges_at_first_order():
    system = LtiSystem(a_matrix=[[-1.0, 0.5], [0.0, -2.0]], b_matrix=[[0.0], [1.0]])
    x0 = np.array([1.0, 1.0])

    errors = []
    for dt in (0.1, 0.01):
        steps = int(round(1.0 / dt))
        experiment = Experiment(x0=x0, inputs=np.ones((steps, 1)), dt=dt)
        exact = LtiDynamics.simulate_discrete(LtiDynamics.discretize_zoh(system, dt), experiment).states[-1]
        euler = LtiDynamics.simulate_euler(system, experiment).states[-1]
        errors.append(np.linalg.norm(euler - exact))

    assert 7.0 < errors[0] / errors[1] < 13.0


def test_noise_sample_moments():
    clean = Trajectory(states=np.zeros((81, 10)), dt=0.1)
    deviations = np.concatenate([
        (LtiDynamics.add_noise(clean, 0.1, seed=s).states - clean.states).ravel() for s in range(3)
    ])
    assert 0.08 <= deviations.std() <= 0.12
