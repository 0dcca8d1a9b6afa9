"""Port-Hamiltonian simulation of 1-D distributed systems on moving
spatial domains: moving-domain structure diagnostics, a dynamic-mesh
mixed-element scheme, and a CFL-limited time loop.
"""

from .dirac import (
    ComplexRoot,
    DiracElement,
    PortVector,
    boundary_ports,
    charge_balance_residual,
    conserved_total,
    dirac_element,
    flow_from_effort,
    general_boundary_power,
    pairing,
    power_balance_residual,
    tl_boundary_power,
    verify_dirac,
)
from .discretization import (
    BoundaryConditions,
    Mesh,
    discrete_hamiltonian,
    element_ports,
    element_rhs,
    element_rhs_all,
    power_audit,
    project_state,
    reconstruct_nodal_efforts,
)
from .domain import (
    BenchmarkTrajectory,
    BoundaryTrajectory,
    BoundsSample,
    LinearTrajectory,
    PiecewiseFrozen,
    StaticTrajectory,
    chart,
    chart_velocity,
    eval_bounds,
    inverse_chart,
)
from .errors import (
    AssumptionViolation,
    CflViolation,
    ConfigError,
    DomainError,
    MBPHError,
    NonFiniteState,
    ParameterError,
    RequiresClosedForm,
    UnsupportedClosure,
)
from .system import (
    Field,
    PHSystem,
    effort_of,
    hamiltonian,
    pull_back,
    push_forward,
    tl_system,
    wave_speed,
)
from .timeloop import (
    SimConfig,
    SimRecord,
    analytic_solution,
    analytic_state_field,
    analytic_trace_bc,
    cfl_limit,
    convergence_study,
    rk4_step,
    simulate,
    voltage_error,
)

__version__ = "0.1.0"
