"""Continuous-level structure on the moving domain: flows generated by
efforts, complex boundary ports, the symmetric pairing, isotropy
verification, power balance and conserved-quantity diagnostics.

Boundary velocities enter the ports through principal square roots, so
individual port entries turn imaginary when a boundary retreats; the
port power stays real whenever both velocities share a sign.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from . import quadrature
from .domain import BoundaryTrajectory, BoundsSample, eval_bounds
from .errors import RequiresClosedForm
from .system import Field, PHSystem, effort_of

ArrayC = NDArray[np.complex128]


class ComplexRoot:
    """Principal square root of a real scalar.

    sqrt(z) for z >= 0 and i*sqrt(|z|) for z < 0, with its conjugate.
    """

    __slots__ = ("value",)

    def __init__(self, z: float):
        if z >= 0.0:
            self.value = complex(math.sqrt(z), 0.0)
        else:
            self.value = complex(0.0, math.sqrt(-z))

    @property
    def conj(self) -> complex:
        return self.value.conjugate()


@dataclass
class PortVector:
    """Boundary port pair (flow side, effort side), each of length r + n.

    The first r entries couple to the differential operator; the last n
    entries carry the boundary-motion power and vanish on a static
    domain.
    """

    f: ArrayC
    e: ArrayC
    r: int
    n: int

    @property
    def f_internal(self) -> ArrayC:
        return self.f[: self.r]

    @property
    def f_motion(self) -> ArrayC:
        return self.f[self.r :]

    @property
    def e_internal(self) -> ArrayC:
        return self.e[: self.r]

    @property
    def e_motion(self) -> ArrayC:
        return self.e[self.r :]

    def power(self) -> complex:
        """Hermitian product f^H e: power flowing through the ports."""
        return complex(np.vdot(self.f, self.e))


def _make_ports(sys: PHSystem, w: float, va: float, vb: float, e0, e1) -> PortVector:
    """Ports for one interval of width w whose end points move at va, vb."""
    sw = math.sqrt(w)
    ra = ComplexRoot(va)
    rb = ComplexRoot(vb)
    S1M = sys.S1 @ sys.M
    f = np.empty(sys.r + sys.n, dtype=complex)
    e = np.empty(sys.r + sys.n, dtype=complex)
    f[: sys.r] = (S1M @ (e0 - e1)) / sw
    f[sys.r :] = (-ra.conj * e0 + rb.conj * e1) / sw
    e[: sys.r] = (sys.M @ (e0 + e1)) / sw
    e[sys.r :] = 0.5 * (sys.Qinv @ (ra.value * e0 + rb.value * e1)) / sw
    return PortVector(f=f, e=e, r=sys.r, n=sys.n)


def boundary_ports(sys: PHSystem, traj: BoundaryTrajectory, t: float, e0, e1) -> PortVector:
    """Boundary ports of the moving domain from the two effort traces."""
    bounds = eval_bounds(traj, t)
    e0 = np.asarray(e0, dtype=float)
    e1 = np.asarray(e1, dtype=float)
    return _make_ports(sys, bounds.width, bounds.da, bounds.db, e0, e1)


def flow_from_effort(sys: PHSystem, traj: BoundaryTrajectory, t: float, effort: Field) -> Field:
    """Flow field generated by a closed-form effort on the moving domain.

    Combines the static differential operator with the compression and
    translation contributions of the boundary motion; the product rule
    on the translation term is expanded analytically.
    """
    if not effort.has_derivative:
        raise RequiresClosedForm("flow construction needs an exact effort derivative")
    bounds = eval_bounds(traj, t)
    w, da, db = bounds.width, bounds.da, bounds.db
    dv = db - da
    J0T, J1T, QinvT = sys.J0.T, sys.J1.T, sys.Qinv.T

    def fn(shat):
        e = effort(shat)
        de = effort.derivative(shat)
        alpha = (da + dv * shat) / w
        xe = e @ QinvT
        dxe = de @ QinvT
        return e @ J0T + (de @ J1T) / w + (0.5 * dv / w) * xe + alpha[:, None] * dxe

    return Field(sys.n, fn)


@dataclass
class DiracElement:
    """A (flow, ports, effort) triple satisfying the structure relations
    by construction."""

    flow: Field
    effort: Field
    ports: PortVector


def dirac_element(sys: PHSystem, traj: BoundaryTrajectory, t: float, effort: Field) -> DiracElement:
    """Assemble the structure element generated by a closed-form effort."""
    flow = flow_from_effort(sys, traj, t, effort)
    e0, e1 = effort.endpoints()
    ports = boundary_ports(sys, traj, t, e0, e1)
    return DiracElement(flow=flow, effort=effort, ports=ports)


def pairing_terms(
    g1: DiracElement,
    g2: DiracElement,
    order: int = quadrature.DEFAULT_ORDER,
    panels: int = quadrature.DEFAULT_PANELS,
) -> tuple[complex, complex, complex, complex]:
    """The four summands of the symmetric pairing of two elements."""
    t1 = complex(quadrature.l2_inner(g1.flow, g2.effort, order, panels))
    t2 = complex(quadrature.l2_inner(g2.flow, g1.effort, order, panels))
    t3 = -np.vdot(g1.ports.f, g2.ports.e)
    t4 = -np.vdot(g2.ports.f, g1.ports.e)
    return t1, t2, complex(t3), complex(t4)


def pairing(
    g1: DiracElement,
    g2: DiracElement,
    order: int = quadrature.DEFAULT_ORDER,
    panels: int = quadrature.DEFAULT_PANELS,
) -> complex:
    """Symmetric pairing; vanishes identically on structure elements."""
    return sum(pairing_terms(g1, g2, order, panels), start=0j)


def random_effort(sys: PHSystem, rng: np.random.Generator, degree: int = 4) -> Field:
    """Componentwise polynomial effort with iid uniform[-1, 1] coefficients."""
    coeffs = rng.uniform(-1.0, 1.0, size=(sys.n, degree + 1))
    return Field.polynomial(coeffs)


def verify_dirac(
    sys: PHSystem,
    traj: BoundaryTrajectory,
    t: float,
    n_samples: int = 100,
    degree: int = 4,
    seed: int = 0,
    order: int = quadrature.DEFAULT_ORDER,
    panels: int = quadrature.DEFAULT_PANELS,
    rel_tol: float = 1e-9,
) -> dict:
    """Sample random element pairs and report the worst pairing magnitude.

    The pass threshold is relative to ``scale``, the largest magnitude
    among the four pairing terms seen across all samples.
    """
    rng = np.random.default_rng(seed)
    max_abs = 0.0
    scale = 0.0
    for _ in range(n_samples):
        g1 = dirac_element(sys, traj, t, random_effort(sys, rng, degree))
        g2 = dirac_element(sys, traj, t, random_effort(sys, rng, degree))
        terms = pairing_terms(g1, g2, order, panels)
        scale = max(scale, *(abs(term) for term in terms))
        max_abs = max(max_abs, abs(sum(terms)))
    threshold = rel_tol * scale
    return {
        "max_abs_pairing": max_abs,
        "n_samples": n_samples,
        "seed": seed,
        "pass": bool(max_abs <= threshold),
        "scale": scale,
        "threshold": threshold,
        "t": t,
        "degree": degree,
    }


def general_boundary_power(sys: PHSystem, bounds: BoundsSample, e0, e1) -> float:
    """Boundary side of the energy rate: operator term plus motion term.

    Evaluates -[e^T M^T S1 M e / w] + [alpha(shat)/2 * e^T Q^{-1} e]
    between the two end points.
    """
    e0 = np.asarray(e0, dtype=float)
    e1 = np.asarray(e1, dtype=float)
    w = bounds.width
    K = sys.M.T @ sys.S1 @ sys.M
    internal = -(e1 @ K @ e1 - e0 @ K @ e0) / w
    motion = 0.5 * (bounds.db * (e1 @ sys.Qinv @ e1) - bounds.da * (e0 @ sys.Qinv @ e0)) / w
    return float(internal + motion)


def tl_boundary_power(L: float, C: float, bounds: BoundsSample, e0, e1) -> float:
    """Transmission-line specialization of the boundary power, written
    directly in terms of voltage/current traces and boundary energy
    densities.

    Equals ``width * general_boundary_power`` for the matching system;
    kept as an independent formula for cross-checking.
    """
    V0, I0 = float(e0[0]), float(e0[1])
    V1, I1 = float(e1[0]), float(e1[1])
    q0, phi0 = C * V0, L * I0
    q1, phi1 = C * V1, L * I1
    return (
        V0 * I0
        - V1 * I1
        + bounds.db * (q1**2 / (2 * C) + phi1**2 / (2 * L))
        - bounds.da * (q0**2 / (2 * C) + phi0**2 / (2 * L))
    )


def power_balance_residual(
    sys: PHSystem,
    traj: BoundaryTrajectory,
    t: float,
    state: Field,
    dstate_dt: Field,
    order: int = quadrature.DEFAULT_ORDER,
    panels: int = quadrature.DEFAULT_PANELS,
) -> float:
    """|<effort, d state/dt> - boundary power| for a given state and its
    time derivative (e.g. a finite difference of an analytic solution)."""
    bounds = eval_bounds(traj, t)
    effort = effort_of(sys, state)
    lhs = quadrature.l2_inner(effort, dstate_dt, order, panels)
    e0, e1 = effort.endpoints()
    rhs = general_boundary_power(sys, bounds, e0, e1)
    return abs(lhs - rhs)


def conserved_total(
    traj: BoundaryTrajectory,
    t: float,
    state: Field,
    component: int = 0,
    order: int = quadrature.DEFAULT_ORDER,
    panels: int = quadrature.DEFAULT_PANELS,
) -> float:
    """Physical-domain total of one state component, sqrt(w) * integral."""
    bounds = eval_bounds(traj, t)
    sw = math.sqrt(bounds.width)
    return sw * quadrature.integrate(lambda shat: state(shat)[:, component], order, panels)


def charge_balance_residual(
    sys: PHSystem,
    traj: BoundaryTrajectory,
    t: float,
    state_at,
    component: int = 0,
    dt_fd: float | None = None,
    order: int = quadrature.DEFAULT_ORDER,
    panels: int = quadrature.DEFAULT_PANELS,
) -> float:
    """Residual of the conserved-total identity for one component.

    ``state_at(t)`` must return the transformed state field at time t.
    The time derivative of the total is formed by central differences;
    the boundary flux combines the motion-carried density with the
    conjugate effort entering through the differential operator.  With
    component 0 this is the total-charge identity of the two-component
    line; component 1 gives the mirrored total-flux identity.
    """
    if dt_fd is None:
        dt_fd = 1e-5 * max(1.0, abs(t))
    total_p = conserved_total(traj, t + dt_fd, state_at(t + dt_fd), component, order, panels)
    total_m = conserved_total(traj, t - dt_fd, state_at(t - dt_fd), component, order, panels)
    d_total = (total_p - total_m) / (2.0 * dt_fd)

    bounds = eval_bounds(traj, t)
    w, da, db = bounds.width, bounds.da, bounds.db
    sw = math.sqrt(w)
    state = state_at(t)
    effort = effort_of(sys, state)
    x0, x1 = state.endpoints()
    e0, e1 = effort.endpoints()
    # translation-carried density plus operator flux; J0 contributes an
    # interior term that is nonzero only for gyrator-type coupling
    flux = (db * x1[component] - da * x0[component]) / sw + (
        (sys.J1 @ e1)[component] - (sys.J1 @ e0)[component]
    ) / sw
    if np.any(sys.J0):
        flux += sw * quadrature.integrate(
            lambda shat: (effort(shat) @ sys.J0.T)[:, component], order, panels
        )
    return abs(d_total - flux)
