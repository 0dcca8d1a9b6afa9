"""Time integration of the semi-discrete system and the moving-segment
demo: analytic reference solution, classical RK4, stability-limited
stepping, per-step diagnostics and convergence studies.

The exact nodal-effort closure couples every element, and the resulting
operator spectrum grows like N^2 (measured factor about 8/pi times
N^2 * wave_speed / width), so the default step is derived from the RK4
imaginary-axis stability limit of that estimate rather than from the
transport CFL count alone.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from numpy.typing import NDArray

from . import _kernel
from .discretization import (
    BoundaryConditions,
    Mesh,
    discrete_hamiltonian,
    element_rhs_all,
    power_audit,
    project_state,
    reconstruct_nodal_efforts,
)
from .domain import BoundaryTrajectory, bounds_arrays, eval_bounds
from .errors import CflViolation, NonFiniteState, ParameterError
from .system import Field, PHSystem, tl_parameters, wave_speed

ArrayF = NDArray[np.float64]

#: measured growth factor of the semi-discrete spectral radius,
#: lambda_max ~= SPECTRAL_FACTOR * N^2 * wave_speed / width (plus margin)
SPECTRAL_FACTOR = 2.6

#: RK4 stability interval on the imaginary axis
RK4_IMAG_LIMIT = 2.0 * math.sqrt(2.0)


def analytic_solution(t: float, s, L: float = 1.0, C: float = 1.0, causal: bool = True):
    """Closed-form line solution (V, I, q, phi) at time t and positions s.

    The causal branch is the quiescent line driven from the left: a unit
    sine front travelling right at speed 1, zero ahead of the front.
    The smooth branch drops the front and is infinitely differentiable,
    which is convenient for convergence studies.  Both require the unit
    wave speed and unit impedance of L = C = 1 to solve the dynamics.
    """
    s = np.asarray(s, dtype=float)
    u = t - s
    if causal:
        u = np.maximum(0.0, u)
    V = np.sin(u)
    I = V
    return V, I, C * V, L * I


def analytic_state_field(
    traj: BoundaryTrajectory, t: float, L: float = 1.0, C: float = 1.0, causal: bool = True
) -> Field:
    """Transformed state of the analytic solution on the moving domain,
    with its exact spatial derivative."""
    if not (L == 1.0 and C == 1.0):
        raise ParameterError("the analytic reference solves the L = C = 1 line only")
    bounds = eval_bounds(traj, t)
    a, w = bounds.a, bounds.width
    sw = math.sqrt(w)

    def fn(shat):
        s = a + w * shat
        V, I, q, phi = analytic_solution(t, s, L, C, causal)
        return sw * np.stack([q, phi], axis=-1)

    def deriv(shat):
        s = a + w * shat
        dV = -np.cos(t - s)
        if causal:
            dV = np.where(t - s > 0.0, dV, 0.0)
        return sw * w * np.stack([C * dV, L * dV], axis=-1)

    return Field(2, fn, deriv)


def analytic_trace_bc(
    traj: BoundaryTrajectory, L: float = 1.0, C: float = 1.0, causal: bool = True
) -> BoundaryConditions:
    """Boundary closure from the analytic traces: transformed voltage at
    the left end, transformed current at the right end."""

    def left(t: float) -> float:
        bounds = eval_bounds(traj, t)
        V, _, _, _ = analytic_solution(t, bounds.a, L, C, causal)
        return math.sqrt(bounds.width) * float(V)

    def right(t: float) -> float:
        bounds = eval_bounds(traj, t)
        _, I, _, _ = analytic_solution(t, bounds.b, L, C, causal)
        return math.sqrt(bounds.width) * float(I)

    kind = "analytic-causal" if causal else "analytic-smooth"
    return BoundaryConditions(left_value=left, right_value=right, kind=kind)


def zero_bc() -> BoundaryConditions:
    return BoundaryConditions(left_value=lambda t: 0.0, right_value=lambda t: 0.0, kind="zero")


def rk4_step(rhs, state, t: float, dt: float):
    """One classical fourth-order Runge-Kutta step of d state/dt = rhs(t, state)."""
    k1 = rhs(t, state)
    k2 = rhs(t + 0.5 * dt, state + 0.5 * dt * k1)
    k3 = rhs(t + 0.5 * dt, state + 0.5 * dt * k2)
    k4 = rhs(t + dt, state + dt * k3)
    return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def min_width(traj: BoundaryTrajectory, t_start: float, t_end: float, samples: int = 4001) -> float:
    """Smallest domain width over the horizon (dense sampling)."""
    ts = np.linspace(t_start, t_end, samples)
    a, b, _, _ = bounds_arrays(traj, ts)
    return float(np.min(b - a))


def cfl_limit(
    sys: PHSystem,
    traj: BoundaryTrajectory,
    N: int,
    t_start: float,
    t_end: float,
    cfl_fraction: float = 0.5,
) -> float:
    """Largest admissible step.

    The binding constraint is RK4 stability against the measured N^2
    operator growth; the classical transport count
    cfl_fraction * width / (N * wave_speed) is kept as a second cap.
    """
    w_min = min_width(traj, t_start, t_end)
    c = wave_speed(sys)
    dt_stability = RK4_IMAG_LIMIT * w_min / (SPECTRAL_FACTOR * N * N * c)
    dt_transport = cfl_fraction * w_min / (N * c)
    return min(dt_stability, dt_transport)


def default_dt(
    sys: PHSystem,
    traj: BoundaryTrajectory,
    N: int,
    t_start: float,
    t_end: float,
    cfl_fraction: float = 0.5,
) -> float:
    """Default step: the admissible limit scaled by cfl_fraction."""
    w_min = min_width(traj, t_start, t_end)
    c = wave_speed(sys)
    dt_stability = RK4_IMAG_LIMIT * w_min / (SPECTRAL_FACTOR * N * N * c)
    return min(cfl_fraction * dt_stability, cfl_fraction * w_min / (N * c))


@dataclass(frozen=True)
class SimConfig:
    """Everything one run needs; construction is validation-free, the
    checks run at the top of :func:`simulate`."""

    system: PHSystem
    trajectory: BoundaryTrajectory
    n_elements: int
    t_end: float
    dt: float | None = None
    t_start: float = 0.0
    cfl_fraction: float = 0.5
    quad_order: int = 8
    quad_panels: int = 64
    output_every: int = 1
    seed: int = 0
    bc: BoundaryConditions | None = None
    reference: str = "causal"  # "causal", "smooth" or "none"
    initial: str = "zero"  # "zero" or "reference"
    align_times: tuple = (7.5,)


@dataclass
class SimRecord:
    """Diagnostics emitted at one output instant."""

    t: float
    a: float
    b: float
    da: float
    db: float
    H: float
    dH_dt: float
    port_power: float
    residual: float
    max_err: float
    x: ArrayF
    e: ArrayF


def _reference_fn(cfg: SimConfig):
    if cfg.reference == "none":
        return None
    L, C = tl_parameters(cfg.system)
    causal = cfg.reference == "causal"

    def ref_voltage(t, s):
        V, _, _, _ = analytic_solution(t, s, L, C, causal)
        return V

    return ref_voltage


def voltage_error(
    sys: PHSystem, traj: BoundaryTrajectory, t: float, mesh: Mesh, x: ArrayF, ref_voltage
) -> float:
    """Largest physical-coordinate voltage error at element midpoints."""
    bounds = eval_bounds(traj, t)
    V_hat_mid = mesh.N * (x @ sys.Q.T)[:, 0]
    V_sim = V_hat_mid / math.sqrt(bounds.width)
    s_mid = bounds.a + bounds.width * mesh.midpoints
    return float(np.max(np.abs(V_sim - ref_voltage(t, s_mid))))


def _stage_bcs(bc: BoundaryConditions, ts: ArrayF, a: ArrayF, b: ArrayF, w: ArrayF):
    sw = np.sqrt(w)
    if bc.kind == "zero":
        z = np.zeros_like(ts)
        return z, z
    if bc.kind in ("analytic-causal", "analytic-smooth"):
        ul = ts - a
        ur = ts - b
        if bc.kind == "analytic-causal":
            ul = np.maximum(0.0, ul)
            ur = np.maximum(0.0, ur)
        return sw * np.sin(ul), sw * np.sin(ur)
    raise ParameterError(f"no batched evaluation for boundary kind {bc.kind!r}")


def simulate(cfg: SimConfig) -> list[SimRecord]:
    """Integrate the semi-discrete system and collect diagnostics.

    The state starts from the configured initial condition projected
    onto the element grid; every step reconstructs nodal efforts from
    the boundary traces and advances with RK4.  Output rows carry the
    energy, the port-power audit and (when a reference is configured)
    the physical-space error.  Step boundaries are aligned exactly on
    the configured alignment times so no step straddles a velocity
    discontinuity.
    """
    sys_, traj = cfg.system, cfg.trajectory
    mesh = Mesh(cfg.n_elements)
    if cfg.t_end <= cfg.t_start:
        raise ParameterError("t_end must exceed t_start")

    allowed = cfl_limit(sys_, traj, mesh.N, cfg.t_start, cfg.t_end, cfg.cfl_fraction)
    if cfg.dt is None:
        dt_target = default_dt(sys_, traj, mesh.N, cfg.t_start, cfg.t_end, cfg.cfl_fraction)
    else:
        dt_target = cfg.dt
        if dt_target <= 0:
            raise ParameterError(f"dt must be positive, got {dt_target}")
        if dt_target > allowed * (1.0 + 1e-12):
            raise CflViolation(
                f"dt={dt_target:.6g} exceeds the stability bound {allowed:.6g} "
                f"(min of RK4 limit against the N^2 operator growth and "
                f"cfl_fraction * min_width / (N * wave_speed))"
            )

    bc = cfg.bc
    if bc is None:
        L, C = tl_parameters(sys_)
        bc = (
            zero_bc()
            if cfg.reference == "none"
            else analytic_trace_bc(traj, L, C, causal=cfg.reference == "causal")
        )
    ref_voltage = _reference_fn(cfg)

    if cfg.initial == "zero":
        x = np.zeros((mesh.N, sys_.n))
    elif cfg.initial == "reference":
        if ref_voltage is None:
            raise ParameterError("initial='reference' needs a reference solution")
        L, C = tl_parameters(sys_)
        x = project_state(
            mesh, analytic_state_field(traj, cfg.t_start, L, C, cfg.reference == "causal")
        )
    else:
        raise ParameterError(f"unknown initial condition {cfg.initial!r}")

    use_fast = (
        _kernel.HAVE_NUMBA
        and sys_.n == 2
        and not np.any(sys_.J0)
        and {bc.left_component, bc.right_component} == {0, 1}
        and bc.kind in ("zero", "analytic-causal", "analytic-smooth")
    )

    def rhs(t: float, state: ArrayF) -> ArrayF:
        bounds = eval_bounds(traj, t)
        e = reconstruct_nodal_efforts(
            sys_, mesh, state, bc.left_value(t), bc.right_value(t),
            bc.left_component, bc.right_component,
        )
        return element_rhs_all(sys_, bounds, mesh, state, e)

    def make_record(t: float, state: ArrayF) -> SimRecord:
        bounds = eval_bounds(traj, t)
        e = reconstruct_nodal_efforts(
            sys_, mesh, state, bc.left_value(t), bc.right_value(t),
            bc.left_component, bc.right_component,
        )
        f = element_rhs_all(sys_, bounds, mesh, state, e)
        audit = power_audit(sys_, traj, t, mesh, state, e, f)
        err = (
            voltage_error(sys_, traj, t, mesh, state, ref_voltage)
            if ref_voltage is not None
            else float("nan")
        )
        return SimRecord(
            t=t, a=bounds.a, b=bounds.b, da=bounds.da, db=bounds.db,
            H=discrete_hamiltonian(sys_, mesh, state),
            dH_dt=audit["dH_dt"], port_power=audit["port_power"],
            residual=audit["residual"], max_err=err,
            x=state.copy(), e=e,
        )

    cuts = sorted(t for t in cfg.align_times if cfg.t_start < t < cfg.t_end)
    seg_edges = [cfg.t_start, *cuts, cfg.t_end]

    records = [make_record(cfg.t_start, x)]
    step_count = 0
    for seg_lo, seg_hi in zip(seg_edges[:-1], seg_edges[1:]):
        n_steps = max(1, math.ceil((seg_hi - seg_lo) / dt_target - 1e-12))
        dt = (seg_hi - seg_lo) / n_steps
        k = 0
        while k < n_steps:
            batch = min(
                cfg.output_every - (step_count % cfg.output_every),
                n_steps - k,
            )
            t_lo = seg_lo + k * dt
            if use_fast:
                stage_ts = t_lo + 0.5 * dt * np.arange(2 * batch + 1)
                a_st, b_st, da_st, db_st = bounds_arrays(traj, stage_ts)
                w_st = b_st - a_st
                bcl_st, bcr_st = _stage_bcs(bc, stage_ts, a_st, b_st, w_st)
                x = np.ascontiguousarray(x)
                done = _kernel.rk4_batch(
                    x, mesh.nodes, sys_.Q, sys_.Qinv, sys_.J1,
                    bc.left_component, bc.right_component,
                    w_st, da_st, db_st, bcl_st, bcr_st, dt, batch,
                )
                if done < batch or not np.all(np.isfinite(x)):
                    raise NonFiniteState(
                        f"state left finite range after t={t_lo + (done - 1) * dt:.6g}"
                    )
            else:
                for j in range(batch):
                    t_j = t_lo + j * dt
                    x = rk4_step(rhs, x, t_j, dt)
                    if not np.all(np.isfinite(x)):
                        raise NonFiniteState(f"state left finite range after t={t_j:.6g}")
            k += batch
            step_count += batch
            t_now = seg_hi if k == n_steps else seg_lo + k * dt
            if step_count % cfg.output_every == 0 or k == n_steps:
                records.append(make_record(t_now, x))
    return records


def convergence_study(cfg: SimConfig, n_list, t_err_min: float = 0.0) -> list[dict]:
    """Re-run the configuration over a ladder of mesh sizes.

    Each row reports the worst reference error and the worst power-audit
    residual over output instants with t >= t_err_min; the step size is
    re-derived from the stability bound for every N.
    """
    rows = []
    for N in n_list:
        dt_n = default_dt(
            cfg.system, cfg.trajectory, int(N), cfg.t_start, cfg.t_end, cfg.cfl_fraction
        )
        cadence = max(1, int((cfg.t_end - cfg.t_start) / dt_n) // 800)
        run_cfg = replace(cfg, n_elements=int(N), dt=None, output_every=cadence)
        records = simulate(run_cfg)
        window = [r for r in records if r.t >= t_err_min]
        rows.append(
            {
                "N": int(N),
                "max_error": max(r.max_err for r in window),
                "power_residual_peak": max(r.residual for r in window),
            }
        )
    return rows
