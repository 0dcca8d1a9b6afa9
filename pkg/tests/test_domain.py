import numpy as np
import pytest
from hypothesis import given, strategies as st

from mbph import (
    AssumptionViolation,
    BenchmarkTrajectory,
    DomainError,
    LinearTrajectory,
    PiecewiseFrozen,
    StaticTrajectory,
    chart,
    chart_velocity,
    eval_bounds,
    inverse_chart,
)
from mbph.domain import bounds_arrays

ALL_FAMILIES = [
    StaticTrajectory(0.0, 1.0),
    StaticTrajectory(-2.5, 0.5),
    LinearTrajectory(0.0, 1.0, 0.1, 0.3),
    LinearTrajectory(0.2, 0.6, -0.05, -0.01),
    BenchmarkTrajectory(),
    PiecewiseFrozen(LinearTrajectory(0.0, 1.0, 0.1, 0.3), t_freeze=2.0),
]


def test_benchmark_bounds_at_zero():
    b = eval_bounds(BenchmarkTrajectory(), 0.0)
    assert b.a == pytest.approx(0.2, abs=1e-15)
    assert b.b == pytest.approx(0.4, abs=1e-15)
    assert b.da == pytest.approx(0.02, abs=1e-15)
    assert b.db == pytest.approx(0.0, abs=1e-15)


def test_static_bounds():
    for t in (0.0, 1.7, -3.0, 100.0):
        b = eval_bounds(StaticTrajectory(0.0, 1.0), t)
        assert (b.a, b.b, b.da, b.db) == (0.0, 1.0, 0.0, 0.0)
        assert b.width == 1.0


def test_benchmark_frozen_after_cutoff():
    traj = BenchmarkTrajectory()
    b = eval_bounds(traj, 7.5)
    assert b.da == 0.0 and b.db == 0.0
    later = eval_bounds(traj, 12.0)
    assert later.a == b.a and later.b == b.b
    assert later.da == 0.0 and later.db == 0.0
    # moving just before the freeze
    before = eval_bounds(traj, 7.5 - 1e-9)
    assert before.da == pytest.approx(0.02)
    assert before.db > 0.0


def test_benchmark_formula_on_grid():
    traj = BenchmarkTrajectory()
    for t in np.linspace(0.0, 7.5, 31)[:-1]:
        b = eval_bounds(traj, float(t))
        assert b.a == pytest.approx(0.2 + 0.02 * t, rel=1e-15)
        assert b.b == pytest.approx(0.5 - 0.1 * np.cos(0.25 * t), rel=1e-15)
        assert b.db == pytest.approx(0.025 * np.sin(0.25 * t), rel=1e-14, abs=1e-15)


def test_assumption_grid_on_families():
    for traj in ALL_FAMILIES:
        for t in np.linspace(0.0, 12.0, 97):
            b = eval_bounds(traj, float(t))
            assert b.a < b.b
            assert b.da * b.db >= -1e-12


def test_degenerate_domain_rejected():
    with pytest.raises(AssumptionViolation):
        eval_bounds(StaticTrajectory(1.0, 1.0), 0.0)
    with pytest.raises(AssumptionViolation):
        eval_bounds(LinearTrajectory(0.0, 1.0, 1.0, 0.0), 2.0)


def test_opposite_velocities_rejected():
    grow = LinearTrajectory(0.0, 1.0, -0.1, 0.1)
    with pytest.raises(AssumptionViolation):
        eval_bounds(grow, 0.0)


def test_nonfinite_time_rejected():
    with pytest.raises(AssumptionViolation):
        eval_bounds(StaticTrajectory(0.0, 1.0), float("nan"))


def test_chart_examples():
    assert chart(StaticTrajectory(0.0, 1.0), 0.0, 0.5) == pytest.approx(0.5)
    assert chart(BenchmarkTrajectory(), 0.0, 0.0) == pytest.approx(0.2)
    assert chart(StaticTrajectory(0.2, 0.4), 0.0, 0.75) == pytest.approx(0.35)
    assert chart(StaticTrajectory(0.2, 0.4), 0.0, 0.0) == pytest.approx(0.2)
    assert chart(StaticTrajectory(0.2, 0.4), 0.0, 1.0) == pytest.approx(0.4)


def test_chart_velocity_examples():
    assert chart_velocity(StaticTrajectory(0.0, 1.0), 3.0, 0.7) == 0.0
    rigid = LinearTrajectory(0.0, 1.0, 0.02, 0.02)
    for shat in (0.0, 0.3, 1.0):
        assert chart_velocity(rigid, 1.0, shat) == pytest.approx(0.02)
    stretch = LinearTrajectory(0.0, 1.0, 0.0, 0.1)
    assert chart_velocity(stretch, 0.0, 0.5) == pytest.approx(0.05)


def test_inverse_chart_examples():
    assert inverse_chart(StaticTrajectory(0.0, 1.0), 0.0, 0.3) == pytest.approx(0.3)
    assert inverse_chart(StaticTrajectory(0.2, 0.4), 0.0, 0.4) == pytest.approx(1.0)
    assert inverse_chart(StaticTrajectory(0.2, 0.4), 0.0, 0.25) == pytest.approx(0.25)


def test_chart_out_of_range():
    traj = StaticTrajectory(0.0, 1.0)
    with pytest.raises(DomainError):
        chart(traj, 0.0, 1.5)
    with pytest.raises(DomainError):
        chart_velocity(traj, 0.0, -0.2)
    with pytest.raises(DomainError):
        inverse_chart(traj, 0.0, 1.2)


@given(
    shat=st.floats(min_value=0.0, max_value=1.0),
    t=st.floats(min_value=0.0, max_value=12.0),
)
def test_chart_round_trip(shat, t):
    traj = BenchmarkTrajectory()
    s = chart(traj, t, shat)
    back = inverse_chart(traj, t, s)
    assert back == pytest.approx(shat, abs=1e-14, rel=1e-14)


def test_derivatives_match_finite_differences():
    h = 1e-6
    for traj in ALL_FAMILIES:
        for t in (0.1, 1.3, 5.2):
            # keep clear of the freeze discontinuities
            if isinstance(traj, PiecewiseFrozen) and abs(t - traj.t_freeze) < 0.1:
                continue
            da_fd = (traj.a(t + h) - traj.a(t - h)) / (2 * h)
            db_fd = (traj.b(t + h) - traj.b(t - h)) / (2 * h)
            assert traj.da(t) == pytest.approx(da_fd, abs=1e-6)
            assert traj.db(t) == pytest.approx(db_fd, abs=1e-6)


def test_piecewise_frozen_wraps_inner():
    inner = LinearTrajectory(0.0, 1.0, 0.1, 0.3)
    traj = PiecewiseFrozen(inner, t_freeze=2.0)
    before = eval_bounds(traj, 1.0)
    assert before.a == pytest.approx(0.1) and before.da == pytest.approx(0.1)
    at = eval_bounds(traj, 2.0)
    assert at.da == 0.0 and at.db == 0.0  # right-sided at the freeze
    after = eval_bounds(traj, 5.0)
    assert after.a == pytest.approx(inner.a(2.0))
    assert after.b == pytest.approx(inner.b(2.0))


def test_bounds_arrays_matches_scalar_eval():
    ts = np.linspace(0.0, 11.0, 57)
    for traj in ALL_FAMILIES:
        a, b, da, db = bounds_arrays(traj, ts)
        for k, t in enumerate(ts):
            ref = eval_bounds(traj, float(t))
            assert a[k] == ref.a and b[k] == ref.b
            assert da[k] == ref.da and db[k] == ref.db


def test_bounds_arrays_validates():
    with pytest.raises(AssumptionViolation):
        bounds_arrays(LinearTrajectory(0.0, 1.0, 1.0, 0.0), np.linspace(0.0, 3.0, 7))
