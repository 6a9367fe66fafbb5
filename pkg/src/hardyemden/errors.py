"""Exception hierarchy shared by all subsystems."""


class HardyEmdenError(Exception):
    """Base class for all library errors."""


class ValidationError(HardyEmdenError):
    """Invalid parameters or arguments (caller error)."""


class NumericalError(HardyEmdenError):
    """A numerical procedure failed to converge or to find a bracket."""


class CaseError(ValidationError):
    """Operation invoked outside its admissible parameter case."""


class BracketNotFoundError(NumericalError):
    """Shooting could not establish a collapse/escape bracket."""


class ToleranceNotMetError(NumericalError):
    """Iteration exhausted without reaching the requested tolerance."""


class NewtonError(NumericalError):
    """Damped Newton iteration failed on a boundary value solve."""
