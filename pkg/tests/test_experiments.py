import json

import pytest
from pydantic import ValidationError

from src.application.dto import RunConfig, ExperimentId, EXPERIMENT_DEFAULTS
from src.application.use_cases import RunExperimentUseCase
from src.domain.exceptions import InvalidConfigError, ResourceNotFoundError
from src.infrastructure.estimation import DmdcEstimator, StlsqEstimator
from src.infrastructure.sampling import EnsembleSampler
from src.infrastructure.storage import ResultStorage

ESTIMATORS = {"dmdc": DmdcEstimator, "moesp": DmdcEstimator, "stlsq": StlsqEstimator}


@pytest.fixture
def use_case(tmp_path) -> RunExperimentUseCase:
    return RunExperimentUseCase(
        sampler=EnsembleSampler(),
        estimator_factory=lambda name: ESTIMATORS[name](),
        result_storage=ResultStorage(str(tmp_path / "results"), version="test"),
        horizon=60,
    )


def run(use_case, **fields):
    return ResultStorage.read(use_case.execute(RunConfig(**fields)))


def select(rows, **where):
    return [row for row in rows if all(row[key] == str(value) for key, value in where.items())]


class TestSparseEnsembles:
    def test_heatmap_extremes(self, use_case):
        rows = run(use_case, experiment_id="heatmap", dims=[2, 3], densities=[0.0, 1.0], trials=20)

        assert len(rows) == 2 * 2 * 2
        for n in (2, 3):
            (empty,) = select(rows, n=n, p=0.0, metric="frac_controllable")
            assert float(empty["value"]) == 0.0
        (dense,) = select(rows, n=2, p=1.0, metric="frac_controllable")
        assert float(dense["value"]) == 1.0
        (density,) = select(rows, n=3, p=1.0, metric="realized_density")
        assert float(density["value"]) == 1.0

    def test_heatmap_long_format_columns(self, use_case):
        path = use_case.execute(RunConfig(experiment_id="heatmap", dims=[2], densities=[0.5], trials=4))
        header = path.read_text(encoding="utf-8").splitlines()[0]
        assert header == "n,p,metric,value,mean,std,median,se,trials"

        (cell,) = select(ResultStorage.read(path), n=2, p=0.5, metric="frac_controllable")
        assert float(cell["value"]) == float(cell["mean"])
        assert float(cell["se"]) >= 0.0

    def test_x0_density_rows(self, use_case):
        rows = run(
            use_case,
            experiment_id="x0_density",
            dims=[2],
            densities=[0.3],
            x0_densities=[0.5, 1.0],
            trials=10,
            x0_samples=4,
            density_window=(0.0, 1.0),
        )
        assert [row["p_x0"] for row in rows] == ["0.5", "1.0"]
        assert all(0.0 <= float(row["value"]) <= 1.0 for row in rows)
        assert all(0 < int(row["trials"]) <= 40 and int(row["trials"]) % 4 == 0 for row in rows)

    def test_x0_density_skips_controllable_systems(self, use_case):
        # 조밀한 가우시안 2차원 쌍은 모두 가제어
        rows = run(
            use_case,
            experiment_id="x0_density",
            dims=[2],
            densities=[1.0],
            x0_densities=[0.5],
            trials=10,
            x0_samples=4,
            density_window=(0.0, 1.0),
        )
        assert rows == []


class TestRecovery:
    def test_noise_free_visible_recovery(self, use_case):
        rows = run(
            use_case,
            experiment_id="recovery_k",
            dims=[6],
            visible_dims=[3, 6],
            noise_levels=[0.0],
            trials=3,
            sampling="planted",
            methods=["dmdc"],
        )
        for k in (3, 6):
            (vis,) = select(rows, k=k, metric="ree_vis")
            assert float(vis["value"]) < 1e-6
            (flag,) = select(rows, k=k, metric="vis_le_full")
            assert float(flag["value"]) == 1.0
        (full,) = select(rows, k=3, metric="ree_full")
        assert float(full["value"]) > 1e-3

    def test_noise_raises_error(self, use_case):
        rows = run(
            use_case,
            experiment_id="recovery_noise",
            dims=[5],
            visible_dims=[3],
            noise_levels=[0.0, 0.1],
            trials=3,
            sampling="planted",
            methods=["dmdc", "stlsq"],
        )
        assert {row["method"] for row in rows} == {"dmdc", "stlsq"}
        (clean,) = select(rows, sigma=0.0, method="dmdc", metric="ree_vis")
        (noisy,) = select(rows, sigma=0.1, method="dmdc", metric="ree_vis")
        assert float(clean["value"]) < float(noisy["value"])

    def test_stratified_sampling(self, use_case):
        rows = run(
            use_case,
            experiment_id="recovery_k",
            dims=[3],
            densities=[0.5],
            visible_dims=[3],
            noise_levels=[0.0],
            trials=2,
            methods=["dmdc"],
        )
        assert select(rows, k=3, metric="ree_full")[0]["trials"] == "2"

    def test_dt_sweep_keeps_visible_dimension(self, use_case):
        rows = run(
            use_case,
            experiment_id="dt_sweep",
            dims=[6],
            visible_dims=[3],
            dts=[0.1, 0.5],
            trials=2,
            sampling="planted",
        )
        for dt in (0.1, 0.5):
            (match,) = select(rows, dt=dt, metric="visible_dim_match")
            assert float(match["value"]) == 1.0
            (vis,) = select(rows, dt=dt, metric="ree_vis")
            assert float(vis["value"]) < 1e-6

    def test_dim_sweep_matches_min_norm_prediction(self, use_case):
        rows = run(use_case, experiment_id="dim_sweep", dims=[6, 10], visible_dims=[3], trials=2)
        for n in (6, 10):
            (full,) = select(rows, n=n, metric="ree_full")
            (predicted,) = select(rows, n=n, metric="min_norm_full")
            assert float(full["value"]) == pytest.approx(float(predicted["value"]), abs=1e-6)
            (hidden,) = select(rows, n=n, metric="hidden_fraction")
            assert float(hidden["value"]) == pytest.approx((n - 3) / n)


def test_empirical_visibility_without_noise(use_case):
    rows = run(use_case, experiment_id="empirical_vis", dims=[8], visible_dims=[3], noise_levels=[0.0], trials=3)
    (match,) = select(rows, metric="k_hat_match")
    (angle,) = select(rows, metric="theta_max_deg")
    assert float(match["value"]) == 1.0
    assert float(angle["value"]) < 1e-3
    (oracle,) = select(rows, metric="ree_oracle_vis")
    (empirical,) = select(rows, metric="ree_emp_vis")
    assert float(oracle["value"]) < 1e-6
    assert float(empirical["value"]) < 1e-6
    (paired,) = select(rows, metric="emp_ge_oracle")
    assert 0.0 <= float(paired["value"]) <= 1.0
    assert paired["trials"] == "3"


class TestDeterminism:
    CONFIG = {
        "experiment_id": "recovery_noise",
        "dims": [5],
        "visible_dims": [2, 4],
        "noise_levels": [0.0, 0.01],
        "trials": 3,
        "sampling": "planted",
    }

    def test_repeated_runs_are_identical(self, use_case, tmp_path):
        first = use_case.execute(RunConfig(**self.CONFIG), output_dir=str(tmp_path / "a"))
        second = use_case.execute(RunConfig(**self.CONFIG), output_dir=str(tmp_path / "b"))
        assert first.read_bytes() == second.read_bytes()
        assert (tmp_path / "a" / "recovery_noise.meta.json").read_bytes() == (
            tmp_path / "b" / "recovery_noise.meta.json"
        ).read_bytes()

    def test_worker_count_does_not_change_results(self, use_case, tmp_path):
        serial = use_case.execute(RunConfig(**self.CONFIG), output_dir=str(tmp_path / "serial"), workers=1)
        parallel = use_case.execute(RunConfig(**self.CONFIG), output_dir=str(tmp_path / "parallel"), workers=3)
        assert serial.read_bytes() == parallel.read_bytes()

    def test_seed_changes_results(self, use_case, tmp_path):
        base = use_case.execute(RunConfig(**self.CONFIG), output_dir=str(tmp_path / "a"))
        other = use_case.execute(RunConfig(**self.CONFIG), output_dir=str(tmp_path / "b"), seed=99)
        assert base.read_bytes() != other.read_bytes()


class TestRunConfig:
    def test_defaults_fill_unset_fields(self):
        resolved = RunConfig(experiment_id="dim_sweep").resolved(base_seed=1, horizon=80, euler_dt=1.0)
        defaults = EXPERIMENT_DEFAULTS[ExperimentId.DIM_SWEEP]
        assert resolved.dims == defaults["dims"]
        assert resolved.sampling == "planted"
        assert resolved.methods == ["dmdc"]
        assert (resolved.base_seed, resolved.horizon, resolved.dt) == (1, 80, 1.0)

    def test_explicit_values_are_kept(self):
        resolved = RunConfig(experiment_id="heatmap", trials=7, base_seed=3).resolved(1, 80, 1.0)
        assert resolved.trials == 7
        assert resolved.base_seed == 3

    @pytest.mark.parametrize(
        "fields",
        [
            {"unknown": 1},
            {"dims": []},
            {"densities": [1.5]},
            {"x0_densities": [0.0]},
            {"noise_levels": [-0.1]},
            {"dts": [0.0]},
            {"trials": 0},
            {"methods": []},
            {"methods": ["node"]},
            {"density_window": (0.8, 0.2)},
        ],
    )
    def test_rejects_invalid_fields(self, fields):
        with pytest.raises(ValidationError):
            RunConfig(experiment_id="heatmap", **fields)

    def test_load_config(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"experiment_id": "heatmap", "trials": 2}))
        assert RunExperimentUseCase.load_config(str(path)).trials == 2

    def test_load_config_errors(self, tmp_path):
        with pytest.raises(ResourceNotFoundError):
            RunExperimentUseCase.load_config(str(tmp_path / "missing.json"))

        path = tmp_path / "config.json"
        path.write_text(json.dumps({"experiment_id": "fig9"}))
        with pytest.raises(InvalidConfigError):
            RunExperimentUseCase.load_config(str(path))
