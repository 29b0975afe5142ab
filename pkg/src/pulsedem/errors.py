"""Exception types raised by the numerical laboratory."""


class PulsedemError(Exception):
    """Base class for all package errors."""


class NoRootError(PulsedemError):
    """A bracketing root search found no sign change."""


class ToleranceError(PulsedemError):
    """Adaptive refinement hit its subdivision limit before reaching tolerance."""


class SuperluminalError(PulsedemError):
    """A speed argument was given with |v| >= c."""


class AtSourceError(PulsedemError):
    """A field was evaluated exactly on the source point or sheet."""


class TooCloseToSourceError(PulsedemError):
    """A finite-difference stencil would straddle the source region."""


class PeriodNotFoundError(PulsedemError):
    """The period scan bracket contained no admissible zero."""


class DegenerateFieldError(PulsedemError):
    """The sampled field vanishes identically, so the requested inverse problem
    has no unique answer (every candidate period integrates to zero)."""


class DegenerateResidualError(PulsedemError):
    """Residuals sit at the rounding floor, so a convergence order is meaningless."""


class ConfigError(PulsedemError):
    """A scenario configuration file is malformed, out of range, or has unknown keys."""
