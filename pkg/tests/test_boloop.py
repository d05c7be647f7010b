"""Tests for the BO loop, traces, and regret metrics."""

import numpy as np
import pytest

from searchlab import boloop, testfns
from searchlab.acqopt import FocusSearchParams, latin_hypercube
from searchlab.acquisition import AcquisitionSpec
from searchlab.errors import NumericalError, UsageError
from searchlab.seeding import derive_seed

FAST_FOCUS = FocusSearchParams(n_points=200, n_shrinks=3, n_restarts=2)


def make_trace(scores, f_star_fn=0):
    obs = tuple(
        boloop.Observation(x=np.array([0.1 * (i + 1), 0.5]), y=s, index=i + 1)
        for i, s in enumerate(scores)
    )
    meta = boloop.TraceMeta(source="human", function_id=f_star_fn, user_id="u", end_timestamp=1)
    return boloop.Trace(observations=obs, meta=meta)


class TestRunBO:
    def test_zero_budget_is_pure_design(self):
        t = boloop.run_bo(2, boloop.GPSpec(), AcquisitionSpec("EI"), m=6, N=0, seed=3)
        design = latin_hypercube(6, seed=derive_seed(3, "lhs"))
        assert len(t) == 6
        assert np.allclose(t.points(), design.points)
        for obs in t.observations:
            assert obs.y == testfns.evaluate(2, obs.x)

    def test_seeded_determinism(self):
        kwargs = dict(m=4, N=3, seed=11, focus=FAST_FOCUS)
        t1 = boloop.run_bo(1, boloop.GPSpec(), AcquisitionSpec("EI"), **kwargs)
        t2 = boloop.run_bo(1, boloop.GPSpec(), AcquisitionSpec("EI"), **kwargs)
        assert np.array_equal(t1.points(), t2.points())
        assert np.array_equal(t1.scores(), t2.scores())
        assert t1.meta == t2.meta

    def test_trace_shape_and_invariants(self):
        t = boloop.run_bo(4, boloop.RFSpec(), AcquisitionSpec("UCB", beta=0.5), m=5, N=4, seed=2, focus=FAST_FOCUS)
        assert len(t) == 9
        assert [o.index for o in t.observations] == list(range(1, 10))
        pts = t.points()
        assert np.all(pts >= 0) and np.all(pts <= 1)
        assert np.all(np.diff(boloop.best_so_far(t)) >= 0)

    def test_machine_metadata(self):
        t = boloop.run_bo(0, boloop.GPSpec(kernel_family="matern32"), AcquisitionSpec("UCB", beta=1.0), m=3, N=1, seed=5, focus=FAST_FOCUS)
        assert t.meta.source == "machine"
        assert t.meta.surrogate == "gp-matern32"
        assert t.meta.acquisition == "UCB(beta=1)"
        assert t.meta.budget == 4
        assert t.meta.seed == 5
        assert t.meta.user_id == "machine:gp-matern32:UCB(beta=1):5"
        assert t.meta.end_timestamp is not None

    def test_invalid_sizes(self):
        with pytest.raises(UsageError):
            boloop.run_bo(0, boloop.GPSpec(), AcquisitionSpec("EI"), m=0, N=2)
        with pytest.raises(UsageError):
            boloop.run_bo(0, boloop.GPSpec(), AcquisitionSpec("EI"), m=3, N=-1)

    def test_partial_trace_on_surrogate_failure(self, monkeypatch):
        calls = {"n": 0}
        real = boloop.fit_surrogate

        def flaky(spec, X, y, seed=0):
            calls["n"] += 1
            if calls["n"] >= 3:
                raise NumericalError("forced failure")
            return real(spec, X, y, seed)

        monkeypatch.setattr(boloop, "fit_surrogate", flaky)
        with pytest.raises(boloop.PartialTraceError) as err:
            boloop.run_bo(1, boloop.GPSpec(), AcquisitionSpec("EI"), m=4, N=5, seed=9, focus=FAST_FOCUS)
        assert len(err.value.trace) == 6  # 4 design + 2 completed iterations

    def test_random_search_trace(self):
        t = boloop.run_random_search(3, 10, seed=4)
        assert len(t) == 10
        assert t.meta.surrogate == "random"
        assert t.meta.acquisition == "RANDOM"
        t2 = boloop.run_random_search(3, 10, seed=4)
        assert np.array_equal(t.points(), t2.points())


class TestRegrets:
    def test_simple_regret_example(self):
        assert boloop.simple_regret(make_trace([20.0, 50.0, 40.0]), 100.0) == 50.0

    def test_simple_regret_zero_at_optimum(self):
        assert boloop.simple_regret(make_trace([100.0, 10.0]), 100.0) == 0.0

    def test_prefix_regret_dominates(self):
        scores = [20.0, 50.0, 40.0, 80.0, 60.0]
        full = boloop.simple_regret(make_trace(scores), 100.0)
        for k in range(1, len(scores) + 1):
            assert boloop.simple_regret(make_trace(scores[:k]), 100.0) >= full

    def test_cumulative_regret_example(self):
        assert boloop.cumulative_regret(make_trace([20.0, 50.0, 40.0]), 100.0) == 190.0

    def test_cumulative_regret_zero_when_all_optimal(self):
        assert boloop.cumulative_regret(make_trace([100.0, 100.0]), 100.0) == 0.0

    def test_cumulative_identity(self):
        scores = [12.5, 33.0, 97.25, 4.0]
        t = make_trace(scores)
        assert boloop.cumulative_regret(t, 100.0) == pytest.approx(
            len(scores) * 100.0 - sum(scores), abs=1e-9
        )

    def test_cumulative_at_least_simple(self):
        t = make_trace([20.0, 50.0, 40.0])
        assert boloop.cumulative_regret(t, 100.0) >= boloop.simple_regret(t, 100.0)

    def test_empty_trace_rejected(self):
        empty = boloop.Trace(observations=(), meta=boloop.TraceMeta(source="human", function_id=0))
        for fn in (boloop.simple_regret, boloop.cumulative_regret):
            with pytest.raises(UsageError):
                fn(empty, 100.0)
        with pytest.raises(UsageError):
            boloop.best_so_far(empty)

    def test_round_off_clamp(self):
        t = make_trace([100.0 + 1e-12])
        assert boloop.simple_regret(t, 100.0) == 0.0
