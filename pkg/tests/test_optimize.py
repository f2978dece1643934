import numpy as np
import pytest

from shallowfp.analysis import epsilon_of
from shallowfp.coeffsets import expand_subset_sums, explicit_set
from shallowfp.optimize import (
    DescentConfig,
    audit_local_optimality,
    compare_experiment,
    coordinate_descent,
)


class TestGeneralMode:
    def test_improves_on_seed_point(self):
        cfg = DescentConfig(seed=5)
        res = coordinate_descent(7, 2, cfg)
        # reconstruct the seeded start and compare
        from shallowfp.rng import SplitMix64

        rng = SplitMix64(5)
        start = [rng.in_range(1, 7) for _ in range(2)]
        start_eps, _ = epsilon_of(explicit_set(7, start))
        assert res.best_epsilon <= start_eps + 1e-12

    def test_determinism(self):
        cfg = DescentConfig(seed=123, restarts=1)
        a = coordinate_descent(31, 4, cfg)
        b = coordinate_descent(31, 4, cfg)
        assert a.best_point == b.best_point
        assert a.best_epsilon == b.best_epsilon
        assert a.history == b.history

    def test_history_monotone(self):
        res = coordinate_descent(101, 8, DescentConfig(seed=7))
        eps_values = [e for _, e in res.history]
        assert all(a >= b - 1e-15 for a, b in zip(eps_values, eps_values[1:]))

    def test_final_epsilon_matches_canonical_path(self):
        res = coordinate_descent(31, 4, DescentConfig(seed=9))
        eps, _ = epsilon_of(explicit_set(31, res.best_point))
        assert res.best_epsilon == eps

    def test_audit_passes_after_convergence(self):
        cfg = DescentConfig(seed=11)
        res = coordinate_descent(31, 3, cfg)
        assert res.sweeps_used < cfg.max_sweeps
        assert audit_local_optimality(res, 31, cfg)


class TestShallowMode:
    def test_expanded_set_epsilon(self):
        cfg = DescentConfig(seed=2, mode="shallow")
        res = coordinate_descent(31, 2, cfg)
        expanded = expand_subset_sums(0, res.best_point, 31)
        eps, _ = epsilon_of(expanded)
        assert res.best_epsilon == eps
        assert res.best_set.coefficients == expanded.coefficients

    def test_size_guard(self):
        with pytest.raises(ValueError):
            coordinate_descent(7, 10, DescentConfig(seed=0, mode="shallow"))

    def test_exhaustive_minimum_reachable(self):
        # brute-force oracle over all generator pairs of Z_31
        p, m = 31, 2
        best_oracle = min(epsilon_of(expand_subset_sums(0, (t1, t2), p))[0]
                          for t1 in range(p) for t2 in range(p))
        cfg = DescentConfig(seed=1, mode="shallow", restarts=6)
        res = coordinate_descent(p, m, cfg)
        assert res.best_epsilon <= best_oracle + 1e-12

    def test_initial_override(self):
        cfg = DescentConfig(seed=0, mode="shallow")
        res = coordinate_descent(31, 2, cfg, initial=(3, 7))
        start_eps, _ = epsilon_of(expand_subset_sums(0, (3, 7), 31))
        assert res.best_epsilon <= start_eps + 1e-12


class TestCompareExperiment:
    def test_records_and_ratio(self):
        cfg = DescentConfig(seed=3)
        records = compare_experiment([11, 13], 2, cfg)
        assert [r.p for r in records] == [11, 13]
        for r in records:
            assert r.m == 2
            assert r.ratio == pytest.approx(
                r.eps_shallow / max(r.eps_general, 1e-15))
            assert r.general.best_set.d == 4
            assert len(r.shallow.best_point) == 2
