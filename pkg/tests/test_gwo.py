import numpy as np
import pytest

from wavepower.errors import ContractError, DomainError, EvaluationError
from wavepower.gwo import (
    GwoConfig,
    SearchBounds,
    a_schedule,
    gwo_maximize,
    update_position,
)


class ConstantRng:
    """Stand-in generator returning a fixed value for every draw."""

    def __init__(self, value):
        self.value = value

    def random(self, shape=None):
        return np.full(shape, self.value) if shape else self.value


def sphere(x):
    return -float(np.sum(np.asarray(x) ** 2))


class TestTypes:
    def test_bounds_validation(self):
        with pytest.raises(DomainError):
            SearchBounds(lower=[1.0, 0.0], upper=[1.0, 2.0])
        with pytest.raises(ContractError):
            SearchBounds(lower=[0.0], upper=[1.0, 2.0])
        with pytest.raises(ContractError):
            SearchBounds(lower=[0.0, 0.0], upper=[1.0, 1.0], labels=("x",))

    def test_config_validation(self):
        with pytest.raises(DomainError):
            GwoConfig(agents=3)
        with pytest.raises(DomainError):
            GwoConfig(max_iter=0)


class TestASchedule:
    def test_endpoints(self):
        assert a_schedule(0, 200) == 2.0
        assert a_schedule(200, 200) == 0.0

    def test_midpoint(self):
        assert a_schedule(100, 200) == 1.0

    def test_affine(self):
        vals = [a_schedule(i, 50) for i in range(51)]
        assert np.allclose(np.diff(vals), -2.0 / 50)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            a_schedule(-1, 10)
        with pytest.raises(DomainError):
            a_schedule(11, 10)


class TestUpdatePosition:
    def test_fixed_point(self):
        # agent at the leaders with C forced to 1: every D is zero
        p = np.array([1.0, -2.0, 3.0])
        out = update_position(p, np.stack([p, p, p]), a=1.5,
                              rng=ConstantRng(0.5))
        assert out == pytest.approx(p)

    def test_a_zero_gives_leader_mean(self):
        # r1 = 0.5 makes A = 0, so the agent jumps to the leader centroid
        leaders = np.array([[0.0, 0.0], [3.0, 6.0], [6.0, 0.0]])
        out = update_position(np.array([100.0, -50.0]), leaders, a=0.0,
                              rng=ConstantRng(0.5))
        assert out == pytest.approx(leaders.mean(axis=0))

    def test_determinism(self):
        agent = np.array([0.5, 0.5])
        leaders = np.array([[0.0, 1.0], [1.0, 0.0], [0.2, 0.2]])
        o1 = update_position(agent, leaders, 1.0, np.random.default_rng(9))
        o2 = update_position(agent, leaders, 1.0, np.random.default_rng(9))
        assert np.array_equal(o1, o2)

    def test_dimension_mismatch(self):
        with pytest.raises(ContractError):
            update_position(np.zeros(2), np.zeros((3, 4)), 1.0,
                            np.random.default_rng(0))


class TestGwoMaximize:
    bounds3 = SearchBounds(lower=[-10.0, -10.0, -10.0],
                           upper=[10.0, 10.0, 10.0])

    def test_sphere(self):
        run = gwo_maximize(sphere, self.bounds3,
                           GwoConfig(agents=10, max_iter=200, seed=0))
        assert run.best_value >= -1e-4

    def test_deterministic_run(self):
        cfg = GwoConfig(agents=8, max_iter=50, seed=123)
        r1 = gwo_maximize(sphere, self.bounds3, cfg)
        r2 = gwo_maximize(sphere, self.bounds3, cfg)
        assert np.array_equal(r1.best_position, r2.best_position)
        assert r1.best_value == r2.best_value
        assert np.array_equal(r1.convergence, r2.convergence)
        assert r1.evaluations == r2.evaluations

    def test_convergence_curve_contract(self):
        cfg = GwoConfig(agents=6, max_iter=40, seed=7)
        run = gwo_maximize(sphere, self.bounds3, cfg)
        assert run.convergence.size == 40
        assert np.all(np.diff(run.convergence) >= 0)
        assert run.convergence[-1] == run.best_value
        assert run.evaluations == 6 * 40

    def test_best_position_in_bounds(self):
        bounds = SearchBounds(lower=[0.1, 2.0], upper=[0.6, 6.0])
        run = gwo_maximize(lambda x: float(x[0] * x[1]), bounds,
                           GwoConfig(agents=5, max_iter=30, seed=1))
        assert np.all(run.best_position >= bounds.lower - 1e-12)
        assert np.all(run.best_position <= bounds.upper + 1e-12)

    def test_curve_tracks_running_max_of_evaluations(self):
        # elitist alpha: best-so-far equals the running max over all
        # evaluations completed by the end of each iteration
        seen = []

        def recording(x):
            v = sphere(x)
            seen.append(v)
            return v

        cfg = GwoConfig(agents=5, max_iter=20, seed=4)
        run = gwo_maximize(recording, self.bounds3, cfg)
        per_iter = np.array(seen).reshape(20, 5)
        running = np.maximum.accumulate(per_iter.max(axis=1))
        assert np.array_equal(run.convergence, running)

    def test_non_finite_objective(self):
        def bad(x):
            return float("nan")

        with pytest.raises(EvaluationError) as exc:
            gwo_maximize(bad, self.bounds3, GwoConfig(agents=4, max_iter=5))
        assert exc.value.position is not None

    def test_corner_optimum(self):
        # monotone objective: optimizer should reach the box corner
        bounds = SearchBounds(lower=[0.0, 0.0], upper=[1.0, 2.0])
        run = gwo_maximize(lambda x: float(x[0] + x[1]), bounds,
                           GwoConfig(agents=10, max_iter=200, seed=2))
        assert run.best_position == pytest.approx([1.0, 2.0], abs=1e-3)
