"""Benchmark-influence grid: panel properties, stability metrics, determinism."""

import numpy as np
import pytest

from priorrank import (
    DrawSpec,
    GridConfig,
    Normal,
    Uniform,
    ValidationError,
    compare_rank_stability,
    conflict_fraction,
    default_benchmarks,
    grid_cell,
    run_grid,
)

STANDARD_DRAW = DrawSpec(Normal(0.0, 1.0), 100, seed=1)


def small_config(**overrides):
    defaults = dict(data=STANDARD_DRAW, mean_steps=17, sd_steps=10)
    defaults.update(overrides)
    return GridConfig(**defaults)


@pytest.fixture(scope="module")
def small_result():
    return run_grid(small_config())


class TestRunGrid:
    def test_axes_and_shapes(self, small_result):
        assert small_result.offsets.shape == (17,)
        assert small_result.sds.shape == (10,)
        for name, _ in default_benchmarks():
            assert small_result.matrices[name].shape == (17, 10)
        assert small_result.errors == {}

    def test_means_are_offsets_around_sample_mean(self, small_result):
        ybar = small_result.data_summary["mean"]
        assert np.allclose(small_result.means, ybar + small_result.offsets)

    def test_minimum_sits_at_posterior_neighborhood(self, small_result):
        # the best approximant of the posterior is the posterior itself
        m = small_result.matrices["A"]
        i, j = np.unravel_index(np.argmin(m), m.shape)
        assert abs(small_result.offsets[i]) <= 0.5 + 1e-12
        post_sd = small_result.posterior.summary.sd
        step = small_result.sds[1] - small_result.sds[0]
        assert abs(small_result.sds[j] - post_sd) <= step

    def test_accurate_informative_benchmark_mostly_conflicts(self, small_result):
        assert conflict_fraction(small_result.matrices["B"]) > 0.95

    def test_misplaced_informative_benchmark_conflicts_in_corner(self, small_result):
        mat = small_result.matrices["D"]
        conflicts = np.argwhere(mat > 1.0)
        assert len(conflicts) > 0
        for i, j in conflicts:
            assert abs(small_result.offsets[i]) > 1.0
            assert small_result.sds[j] < 0.5

    def test_uninformative_panels_rank_identically(self, small_result):
        stats = compare_rank_stability(
            small_result.matrices["A"], small_result.matrices["C"]
        )
        assert stats["kendall_tau"] > 0.999
        assert stats["spearman_rho"] > 0.999

    def test_classification_shifts_while_ranking_stays(self, small_result):
        frac_a = conflict_fraction(small_result.matrices["A"])
        frac_b = conflict_fraction(small_result.matrices["B"])
        assert abs(frac_a - frac_b) > 0.3

    def test_dataset_input_equivalent_to_drawspec(self):
        from priorrank import Dataset, sample

        values = sample(Normal(0.0, 1.0), 100, seed=1)
        by_draw = run_grid(small_config())
        by_data = run_grid(small_config(data=Dataset.from_sequence(values)))
        for name in by_draw.matrices:
            assert np.array_equal(by_draw.matrices[name], by_data.matrices[name])

    def test_failed_benchmark_is_isolated(self):
        benches = (("ok", Normal(0.0, 100.0)), ("broken", Uniform(30.0, 40.0)))
        result = run_grid(small_config(benchmarks=benches))
        assert "broken" in result.errors
        assert "ok" in result.matrices and "broken" not in result.matrices

    def test_refit_moves_informative_panels_only(self):
        shared = run_grid(small_config())
        refit = run_grid(small_config(refit_per_benchmark=True))
        # uniform benchmark: same posterior either way
        assert np.allclose(shared.matrices["C"], refit.matrices["C"])
        # the misplaced-normal panel feels the prior pull under refit
        assert refit.per_benchmark_posteriors["D"].summary.mean > (
            shared.posterior.summary.mean
        )
        assert not np.allclose(shared.matrices["D"], refit.matrices["D"])


class TestCellIndependence:
    def test_single_cell_recompute_is_bitwise(self, small_result):
        cfg = small_config()
        rng = np.random.default_rng(0)
        for _ in range(10):
            name = ("A", "B", "C", "D")[rng.integers(0, 4)]
            i = int(rng.integers(0, cfg.mean_steps))
            j = int(rng.integers(0, cfg.sd_steps))
            assert grid_cell(cfg, name, i, j) == small_result.matrices[name][i, j]

    def test_scaling_law(self, small_result):
        # scaling the benchmark divergence rescales scores, order unchanged
        mat = small_result.matrices["A"]
        bkl = small_result.benchmark_kls["A"]
        rescaled = mat * bkl / (2.0 * bkl)
        assert np.allclose(rescaled * 2.0, mat)
        assert np.array_equal(np.argsort(mat.ravel()), np.argsort(rescaled.ravel()))


class TestRankStabilityMetrics:
    def test_identity(self):
        m = np.arange(12.0).reshape(3, 4)
        stats = compare_rank_stability(m, m)
        assert stats["kendall_tau"] == pytest.approx(1.0)
        assert stats["spearman_rho"] == pytest.approx(1.0)

    def test_negation(self):
        m = np.arange(12.0).reshape(3, 4)
        stats = compare_rank_stability(m, -m)
        assert stats["kendall_tau"] == pytest.approx(-1.0)
        assert stats["spearman_rho"] == pytest.approx(-1.0)

    def test_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            compare_rank_stability(np.zeros((2, 3)), np.zeros((3, 2)))


class TestConflictFraction:
    def test_trivial_values(self):
        assert conflict_fraction(np.full((5, 5), 0.5)) == 0.0
        assert conflict_fraction(np.full((5, 5), 2.0)) == 1.0
        assert conflict_fraction(np.array([[0.5, 2.0]])) == 0.5

    def test_boundary_is_strict(self):
        assert conflict_fraction(np.full((3, 3), 1.0)) == 0.0


class TestConfigValidation:
    def test_step_minimum(self):
        with pytest.raises(ValidationError):
            small_config(mean_steps=1)

    def test_sd_range_positive(self):
        with pytest.raises(ValidationError):
            small_config(sd_range=(0.0, 3.0))

    def test_duplicate_benchmark_names(self):
        with pytest.raises(ValidationError):
            small_config(benchmarks=(("A", Normal(0, 1)), ("A", Normal(0, 2))))

    def test_drawspec_needs_two(self):
        with pytest.raises(ValidationError):
            DrawSpec(Normal(0, 1), 1, seed=0)
