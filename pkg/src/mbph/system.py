"""System data (J0, J1, Q and the port matrices), fields on the unit
interval, the moving-domain state transformation, and energy.

The state transformation absorbs the domain width so that the energy
functional keeps the static form on [0, 1]:

    transformed state(shat) = sqrt(b - a) * physical state(a + (b-a)*shat)

Efforts are the energy gradient, effort = Q * state, pointwise.
"""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from . import quadrature
from .domain import BoundsSample
from .errors import DomainError, ParameterError, RequiresClosedForm

ArrayF = NDArray[np.float64]

_SYM_TOL = 1e-12


@dataclass(frozen=True)
class PHSystem:
    """Linear first-order port-Hamiltonian system data.

    Attributes
    ----------
    J0 : (n, n) skew-symmetric interconnection matrix.
    J1 : (n, n) symmetric, full-rank differential-coupling matrix.
    Q : (n, n) symmetric positive-definite energy weight.
    M, S1 : port construction matrices; for full-rank J1 these are
        the identity and -J1/2.
    """

    J0: ArrayF
    J1: ArrayF
    Q: ArrayF
    M: ArrayF = field(init=False)
    S1: ArrayF = field(init=False)
    Qinv: ArrayF = field(init=False)

    def __post_init__(self):
        J0 = np.atleast_2d(np.asarray(self.J0, dtype=float))
        J1 = np.atleast_2d(np.asarray(self.J1, dtype=float))
        Q = np.atleast_2d(np.asarray(self.Q, dtype=float))
        n = Q.shape[0]
        for name, m in (("J0", J0), ("J1", J1), ("Q", Q)):
            if m.shape != (n, n):
                raise ParameterError(f"{name} must be {n}x{n}, got {m.shape}")
        scale = max(1.0, float(np.abs(J0).max()))
        if np.abs(J0 + J0.T).max() > _SYM_TOL * scale:
            raise ParameterError("J0 must be skew-symmetric")
        if np.abs(J1 - J1.T).max() > _SYM_TOL * max(1.0, float(np.abs(J1).max())):
            raise ParameterError("J1 must be symmetric")
        if np.abs(Q - Q.T).max() > _SYM_TOL * max(1.0, float(np.abs(Q).max())):
            raise ParameterError("Q must be symmetric")
        if np.min(np.linalg.eigvalsh(Q)) <= 0.0:
            raise ParameterError("Q must be positive definite")
        if np.linalg.matrix_rank(J1) < n:
            raise ParameterError("J1 must have full rank")
        for name, m in (("J0", J0), ("J1", J1), ("Q", Q)):
            m.setflags(write=False)
            object.__setattr__(self, name, m)
        M = np.eye(n)
        S1 = -0.5 * J1
        Qinv = np.linalg.inv(Q)
        for name, m in (("M", M), ("S1", S1), ("Qinv", Qinv)):
            m.setflags(write=False)
            object.__setattr__(self, name, m)

    @property
    def n(self) -> int:
        return self.Q.shape[0]

    @property
    def r(self) -> int:
        return self.n  # full-rank J1 only


def tl_system(L: float, C: float) -> PHSystem:
    """Lossless transmission-line segment with distributed inductance L
    and capacitance C.

    State ordering is (charge density, flux density); efforts come out
    as (voltage, current) = diag(1/C, 1/L) @ state.
    """
    if not (L > 0 and C > 0):
        raise ParameterError(f"L and C must be positive, got L={L}, C={C}")
    J0 = np.zeros((2, 2))
    J1 = np.array([[0.0, -1.0], [-1.0, 0.0]])
    Q = np.diag([1.0 / C, 1.0 / L])
    return PHSystem(J0=J0, J1=J1, Q=Q)


def tl_parameters(sys: PHSystem) -> tuple[float, float]:
    """Recover (L, C) from a transmission-line style system."""
    if sys.n != 2 or abs(sys.Q[0, 1]) > 0 or abs(sys.Q[1, 0]) > 0:
        raise ParameterError("system is not a diagonal-Q two-component line")
    return 1.0 / sys.Q[1, 1], 1.0 / sys.Q[0, 0]


def wave_speed(sys: PHSystem) -> float:
    """Largest characteristic speed of the operator J1 Q d/ds."""
    return float(np.max(np.abs(np.linalg.eigvals(sys.J1 @ sys.Q))))


class Field:
    """Vector-valued field on [0, 1], optionally with an exact derivative.

    The callable representation maps an array of points (m,) to values
    (m, dim).  Fields built from closed-form expressions carry an exact
    derivative; fields sampled on nodes do not, and operations that
    need d/dshat refuse them.
    """

    def __init__(self, dim: int, fn, deriv=None):
        self.dim = dim
        self._fn = fn
        self._deriv = deriv

    def __call__(self, shat) -> ArrayF:
        pts = np.atleast_1d(np.asarray(shat, dtype=float))
        out = np.asarray(self._fn(pts), dtype=float)
        return out

    def derivative(self, shat) -> ArrayF:
        if self._deriv is None:
            raise RequiresClosedForm("field has no exact spatial derivative")
        pts = np.atleast_1d(np.asarray(shat, dtype=float))
        return np.asarray(self._deriv(pts), dtype=float)

    @property
    def has_derivative(self) -> bool:
        return self._deriv is not None

    def endpoints(self) -> tuple[ArrayF, ArrayF]:
        vals = self(np.array([0.0, 1.0]))
        return vals[0], vals[1]

    @staticmethod
    def constant(values) -> "Field":
        values = np.atleast_1d(np.asarray(values, dtype=float))
        dim = values.shape[0]
        return Field(
            dim,
            lambda s: np.broadcast_to(values, (s.shape[0], dim)).copy(),
            lambda s: np.zeros((s.shape[0], dim)),
        )

    @staticmethod
    def polynomial(coeffs) -> "Field":
        """Componentwise polynomial, coefficient rows in ascending degree."""
        coeffs = np.atleast_2d(np.asarray(coeffs, dtype=float))
        dcoeffs = np.polynomial.polynomial.polyder(coeffs, axis=1) if coeffs.shape[1] > 1 else np.zeros((coeffs.shape[0], 1))
        poly = np.polynomial.polynomial.polyval
        return Field(
            coeffs.shape[0],
            lambda s: poly(s, coeffs.T).T,
            lambda s: poly(s, dcoeffs.T).T,
        )

    @staticmethod
    def from_nodes(nodes, values) -> "Field":
        """Linear interpolant of nodal samples; carries no exact derivative."""
        nodes = np.asarray(nodes, dtype=float)
        values = np.atleast_2d(np.asarray(values, dtype=float))
        dim = values.shape[1]
        return Field(
            dim,
            lambda s: np.stack([np.interp(s, nodes, values[:, k]) for k in range(dim)], axis=-1),
        )


def matmul_field(A: ArrayF, f: Field) -> Field:
    """Field obtained by applying a constant matrix pointwise."""
    A = np.asarray(A, dtype=float)
    deriv = (lambda s: f.derivative(s) @ A.T) if f.has_derivative else None
    return Field(A.shape[0], lambda s: f(s) @ A.T, deriv)


def effort_of(sys: PHSystem, state: Field) -> Field:
    """Pointwise co-energy field Q @ state (exact derivative preserved)."""
    return matmul_field(sys.Q, state)


def push_forward(x_phys, bounds: BoundsSample, x_phys_deriv=None, dim: int = 2) -> Field:
    """Transform a physical-coordinate state on [a, b] to the unit interval.

    ``x_phys`` maps positions (m,) to (m, dim).  The result carries an
    exact derivative when ``x_phys_deriv`` (d/ds) is given.
    """
    w = bounds.width
    sw = np.sqrt(w)
    a = bounds.a

    def fn(shat):
        return sw * np.asarray(x_phys(a + w * shat))

    deriv = None
    if x_phys_deriv is not None:
        def deriv(shat):
            return sw * w * np.asarray(x_phys_deriv(a + w * shat))

    return Field(dim, fn, deriv)


def pull_back(state: Field, bounds: BoundsSample):
    """Physical-coordinate state on [a, b] from a unit-interval field."""
    w = bounds.width
    sw = np.sqrt(w)
    a, b = bounds.a, bounds.b
    tol = 1e-12 * max(1.0, abs(a), abs(b))

    def x_phys(s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        if np.any(s < a - tol) or np.any(s > b + tol):
            raise DomainError(f"position outside [{a}, {b}]")
        shat = np.clip((s - a) / w, 0.0, 1.0)
        return state(shat) / sw

    return x_phys


def hamiltonian(
    sys: PHSystem,
    state: Field,
    order: int = quadrature.DEFAULT_ORDER,
    panels: int = quadrature.DEFAULT_PANELS,
) -> float:
    """Stored energy (1/2) * integral of state^T Q state over [0, 1]."""
    if order < 2:
        raise ParameterError(f"quadrature order must be >= 2, got {order}")

    def density(shat):
        v = state(shat)
        return np.sum((v @ sys.Q) * v, axis=-1)

    return 0.5 * quadrature.integrate(density, order, panels)
