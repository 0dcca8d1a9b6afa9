"""Exception hierarchy shared by all mbph modules."""


class MBPHError(Exception):
    """Base class for all errors raised by this package."""


class AssumptionViolation(MBPHError):
    """The boundary trajectory violates an admissibility assumption.

    Raised when a(t) >= b(t) (the domain degenerates) or when the two
    boundary velocities have opposite sign beyond tolerance.
    """


class DomainError(MBPHError):
    """A spatial coordinate lies outside its admissible interval."""


class ParameterError(MBPHError):
    """System matrices or physical parameters fail validation."""


class RequiresClosedForm(MBPHError):
    """An operation needs an exact spatial derivative but the field
    only provides sampled values."""


class UnsupportedClosure(MBPHError):
    """The boundary-condition pattern or system shape is outside the
    supported mixed-element closure (two components, one imposed per end)."""


class CflViolation(MBPHError):
    """The requested time step exceeds the CFL stability bound."""


class NonFiniteState(MBPHError):
    """The integrated state left the set of finite numbers."""


class ConfigError(MBPHError):
    """A configuration file failed to parse or validate."""
