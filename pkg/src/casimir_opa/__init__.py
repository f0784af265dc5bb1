"""Photon generation and quantum statistics of a damped cavity with a
degenerate OPA under amplitude-modulated pumping.

Closed-form observables live in :mod:`casimir_opa.analytics`; an
independent RK4 moment-equation reference lives in :mod:`casimir_opa.oracle`.
"""

__version__ = "0.1.0"

from .core import (
    AnalogyParams,
    CavityParams,
    PumpProfile,
    SystemConfig,
    max_mirror_speed_ratio,
    mirror_displacement,
    pump_amplitude,
    validate_config,
)
from .analytics import (
    casimir_variances,
    fourth_moment,
    g2,
    mandel_Q,
    mean_photon_number,
    photon_breakdown,
    quadrature_variances,
    squeezing,
    two_time,
)
from .spectrum import intracavity_spectrum, normalize, output_spectrum

__all__ = [
    "AnalogyParams", "CavityParams", "PumpProfile", "SystemConfig",
    "validate_config", "pump_amplitude", "mirror_displacement", "max_mirror_speed_ratio",
    "photon_breakdown", "mean_photon_number", "quadrature_variances", "squeezing",
    "casimir_variances", "two_time", "g2", "mandel_Q", "fourth_moment",
    "intracavity_spectrum", "normalize", "output_spectrum",
]
