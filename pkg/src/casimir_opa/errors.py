"""Exception hierarchy.

Two families matter to callers: :class:`ValidationError` for bad inputs and
:class:`NumericalError` for evaluations that cannot be carried out reliably.
The command line maps them to exit codes 2 and 3.
"""


class CasimirError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(CasimirError, ValueError):
    """Inputs violate a documented precondition."""


class NumericalError(CasimirError, ArithmeticError):
    """A numerical evaluation failed or would be unreliable."""


class ThresholdViolation(ValidationError):
    """Pump at or above the oscillation threshold, kappa <= 2 (epsilon + eta)."""


class NonPositiveRate(ValidationError):
    """A rate that must be strictly positive is not."""


class OrderTooLarge(ValidationError):
    """Bessel order beyond the supported cap."""


class StepTooLarge(ValidationError):
    """Integrator step or horizon outside the allowed band."""


class LengthMismatch(ValidationError):
    """Two series that must align have different lengths."""


class NotQuasiSteady(ValidationError):
    """Reference time too early for a quasi-steady spectrum."""


class AlreadyNormalized(ValidationError):
    """Operation requires an unnormalized spectrum."""


class UnknownKey(ValidationError):
    """Configuration file names a key that is not recognised."""


class MissingRequired(ValidationError):
    """A required configuration value was not supplied."""


class GridTooLarge(ValidationError):
    """Sweep grid exceeds the point budget."""


class ExponentOverflow(NumericalError):
    """Envelope exponent outside the representable band."""


class SeriesDivergence(NumericalError):
    """Bessel series failed to converge before the order cap."""


class VacuumReference(NumericalError):
    """Ratio observable requested for a (near) vacuum reference state."""


class ResolutionTooCoarse(NumericalError):
    """Quadrature sampling rule cannot be met within the sample budget."""


class ZeroReference(NumericalError):
    """Normalization reference value is not positive."""


class ConsistencyError(NumericalError):
    """Two independent evaluations of the same quantity disagree."""


class DegenerateModulation(UserWarning):
    """Modulation amplitude is zero, so the modulated quantity vanishes identically."""
