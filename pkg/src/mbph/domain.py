"""Moving spatial domains [a(t), b(t)] and the chart to the unit interval.

A trajectory supplies the two boundary positions together with their
exact time derivatives in closed form.  Numerical differentiation of
user-supplied trajectories is deliberately not offered: the
admissibility checks and the boundary-port formulas need exact
velocities.

Admissibility (checked on every query):
  * ``a(t) < b(t)`` -- the domain never degenerates;
  * ``da(t) * db(t) >= 0`` -- both boundaries move in the same
    direction (or stand still).
"""

from dataclasses import dataclass

import numpy as np

from .errors import AssumptionViolation, DomainError

#: tolerance on the velocity sign condition da*db >= 0
SIGN_TOL = 1e-12

#: slack accepted on unit-interval membership checks
COORD_TOL = 1e-12


@dataclass(frozen=True)
class BoundsSample:
    """Domain boundaries and their velocities at one instant."""

    t: float
    a: float
    b: float
    da: float
    db: float

    @property
    def width(self) -> float:
        return self.b - self.a


class BoundaryTrajectory:
    """Base class: positions and exact velocities of both boundaries."""

    def a(self, t: float) -> float:
        raise NotImplementedError

    def b(self, t: float) -> float:
        raise NotImplementedError

    def da(self, t: float) -> float:
        raise NotImplementedError

    def db(self, t: float) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class StaticTrajectory(BoundaryTrajectory):
    """Fixed domain [a0, b0]."""

    a0: float
    b0: float

    def a(self, t):
        return self.a0

    def b(self, t):
        return self.b0

    def da(self, t):
        return 0.0

    def db(self, t):
        return 0.0


@dataclass(frozen=True)
class LinearTrajectory(BoundaryTrajectory):
    """Boundaries drifting at constant velocities va, vb."""

    a0: float
    b0: float
    va: float
    vb: float

    def a(self, t):
        return self.a0 + self.va * t

    def b(self, t):
        return self.b0 + self.vb * t

    def da(self, t):
        return self.va

    def db(self, t):
        return self.vb


@dataclass(frozen=True)
class BenchmarkTrajectory(BoundaryTrajectory):
    """Built-in demo segment: left boundary drifts right at 0.02 m/s, the
    right boundary follows 0.5 - 0.1*cos(0.25 t); both freeze at t = 7.5 s.

    At exactly the freeze time the right-sided (zero) velocity is
    reported, so integrators should align a step boundary there.
    """

    t_freeze: float = 7.5

    def _tau(self, t):
        return min(t, self.t_freeze)

    def a(self, t):
        return 0.2 + 0.02 * self._tau(t)

    def b(self, t):
        return 0.5 - 0.1 * np.cos(0.25 * self._tau(t))

    def da(self, t):
        return 0.02 if t < self.t_freeze else 0.0

    def db(self, t):
        return 0.025 * np.sin(0.25 * t) if t < self.t_freeze else 0.0


@dataclass(frozen=True)
class PiecewiseFrozen(BoundaryTrajectory):
    """Wrap another trajectory and freeze it in place after ``t_freeze``.

    Velocities are right-sided at the freeze instant (i.e. zero).
    """

    inner: BoundaryTrajectory
    t_freeze: float

    def a(self, t):
        return self.inner.a(min(t, self.t_freeze))

    def b(self, t):
        return self.inner.b(min(t, self.t_freeze))

    def da(self, t):
        return self.inner.da(t) if t < self.t_freeze else 0.0

    def db(self, t):
        return self.inner.db(t) if t < self.t_freeze else 0.0


def eval_bounds(traj: BoundaryTrajectory, t: float) -> BoundsSample:
    """Evaluate boundaries and exact velocities, validating admissibility.

    Raises
    ------
    AssumptionViolation
        If a >= b, or if da*db < -SIGN_TOL (boundaries moving apart in
        opposite directions), or if t is not finite.
    """
    if not np.isfinite(t):
        raise AssumptionViolation(f"time must be finite, got {t}")
    a, b = float(traj.a(t)), float(traj.b(t))
    da, db = float(traj.da(t)), float(traj.db(t))
    if not a < b:
        raise AssumptionViolation(f"domain degenerated at t={t}: a={a} >= b={b}")
    if da * db < -SIGN_TOL:
        raise AssumptionViolation(
            f"boundary velocities have opposite sign at t={t}: da={da}, db={db}"
        )
    return BoundsSample(t=t, a=a, b=b, da=da, db=db)


def bounds_arrays(traj: BoundaryTrajectory, ts):
    """Vectorized (a, b, da, db) over an array of times, with the same
    admissibility checks as :func:`eval_bounds`.

    The built-in families evaluate in closed form; unknown trajectories
    fall back to a scalar loop.
    """
    ts = np.asarray(ts, dtype=float)
    if isinstance(traj, StaticTrajectory):
        shape = ts.shape
        a = np.full(shape, traj.a0)
        b = np.full(shape, traj.b0)
        da = np.zeros(shape)
        db = np.zeros(shape)
    elif isinstance(traj, LinearTrajectory):
        a = traj.a0 + traj.va * ts
        b = traj.b0 + traj.vb * ts
        da = np.full(ts.shape, traj.va)
        db = np.full(ts.shape, traj.vb)
    elif isinstance(traj, BenchmarkTrajectory):
        tau = np.minimum(ts, traj.t_freeze)
        a = 0.2 + 0.02 * tau
        b = 0.5 - 0.1 * np.cos(0.25 * tau)
        moving = ts < traj.t_freeze
        da = np.where(moving, 0.02, 0.0)
        db = np.where(moving, 0.025 * np.sin(0.25 * ts), 0.0)
    elif isinstance(traj, PiecewiseFrozen):
        tau = np.minimum(ts, traj.t_freeze)
        a, b, da, db = bounds_arrays(traj.inner, tau)
        moving = ts < traj.t_freeze
        da = np.where(moving, da, 0.0)
        db = np.where(moving, db, 0.0)
    else:
        samples = [eval_bounds(traj, float(t)) for t in ts.ravel()]
        a = np.array([s.a for s in samples]).reshape(ts.shape)
        b = np.array([s.b for s in samples]).reshape(ts.shape)
        da = np.array([s.da for s in samples]).reshape(ts.shape)
        db = np.array([s.db for s in samples]).reshape(ts.shape)
        return a, b, da, db
    if not np.all(a < b):
        k = int(np.argmax(~(a < b)))
        raise AssumptionViolation(f"domain degenerated at t={ts.ravel()[k]}")
    if np.any(da * db < -SIGN_TOL):
        k = int(np.argmax(da * db < -SIGN_TOL))
        raise AssumptionViolation(f"boundary velocities have opposite sign at t={ts.ravel()[k]}")
    return a, b, da, db


def _check_unit(shat):
    shat = np.asarray(shat, dtype=float)
    if np.any(shat < -COORD_TOL) or np.any(shat > 1.0 + COORD_TOL):
        raise DomainError(f"unit coordinate outside [0, 1]: {shat}")
    return np.clip(shat, 0.0, 1.0)


def chart(traj: BoundaryTrajectory, t: float, shat):
    """Map unit coordinates to physical positions: a + (b - a)*shat."""
    bounds = eval_bounds(traj, t)
    shat = _check_unit(shat)
    out = bounds.a + bounds.width * shat
    return float(out) if np.ndim(out) == 0 else out


def chart_velocity(traj: BoundaryTrajectory, t: float, shat):
    """Velocity of the physical point tracked by a fixed unit coordinate:
    da + (db - da)*shat."""
    bounds = eval_bounds(traj, t)
    shat = _check_unit(shat)
    out = bounds.da + (bounds.db - bounds.da) * shat
    return float(out) if np.ndim(out) == 0 else out


def inverse_chart(traj: BoundaryTrajectory, t: float, s):
    """Map physical positions in [a, b] back to unit coordinates."""
    bounds = eval_bounds(traj, t)
    s = np.asarray(s, dtype=float)
    tol = COORD_TOL * max(1.0, abs(bounds.a), abs(bounds.b))
    if np.any(s < bounds.a - tol) or np.any(s > bounds.b + tol):
        raise DomainError(f"position outside [{bounds.a}, {bounds.b}]: {s}")
    out = np.clip((s - bounds.a) / bounds.width, 0.0, 1.0)
    return float(out) if np.ndim(out) == 0 else out
