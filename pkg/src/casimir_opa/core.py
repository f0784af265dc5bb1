"""Parameter records for the modulated-pump OPA cavity.

All rates are angular frequencies in s^-1. Ratio-style inputs quote
``kappa / 2 pi`` in Hz; :meth:`SystemConfig.from_ratios` performs the
conversion.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .errors import DegenerateModulation, NonPositiveRate, ThresholdViolation, ValidationError

SPEED_OF_LIGHT = 299_792_458.0


@dataclass(frozen=True)
class PumpProfile:
    """Pump law ``epsilon + eta * cos(omega_mod * t)``."""

    epsilon: float
    eta: float = 0.0
    omega_mod: float = 0.0

    def __post_init__(self):
        for name in ("epsilon", "eta", "omega_mod"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValidationError(f"{name} must be finite, got {value!r}")
        if self.epsilon < 0:
            raise ValidationError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.eta < 0:
            raise ValidationError(f"eta must be >= 0, got {self.eta}")
        if self.omega_mod < 0:
            raise NonPositiveRate(f"omega_mod must be >= 0, got {self.omega_mod}")
        if self.eta > 0 and self.omega_mod <= 0:
            raise NonPositiveRate("omega_mod must be > 0 when eta > 0")

    @property
    def eta_tilde(self) -> float:
        """Modulation depth ``eta / omega_mod`` (zero when unmodulated)."""
        if self.eta == 0:
            return 0.0
        return self.eta / self.omega_mod

    @property
    def z(self) -> float:
        return 2.0 * self.eta_tilde


@dataclass(frozen=True)
class CavityParams:
    """Cavity damping.

    ``epsilon`` is carried so the relaxation rates can be derived; it is
    filled in by :func:`validate_config` from the pump.
    """

    kappa: float
    epsilon: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.kappa) or self.kappa <= 0:
            raise NonPositiveRate(f"kappa must be > 0, got {self.kappa}")

    @property
    def gamma_plus(self) -> float:
        return self.kappa + 2.0 * self.epsilon

    @property
    def gamma_minus(self) -> float:
        return self.kappa - 2.0 * self.epsilon


@dataclass(frozen=True)
class AnalogyParams:
    """Geometry for the moving-mirror picture of the modulated pump."""

    cavity_length: float
    crystal_length: float
    crystal_index: float

    def __post_init__(self):
        if not (self.cavity_length > 0 and self.crystal_length > 0):
            raise ValidationError("cavity and crystal lengths must be > 0")
        if not self.crystal_index >= 1:
            raise ValidationError(f"crystal_index must be >= 1, got {self.crystal_index}")

    @property
    def effective_length(self) -> float:
        return self.cavity_length + self.crystal_length * (self.crystal_index - 1.0)


@dataclass(frozen=True)
class SystemConfig:
    """A validated pump + cavity pair. Build it with :func:`validate_config`."""

    pump: PumpProfile
    cavity: CavityParams
    analogy: Optional[AnalogyParams] = field(default=None, compare=False)

    def __post_init__(self):
        _check_threshold(self.pump, self.cavity)
        if self.cavity.epsilon != self.pump.epsilon:
            object.__setattr__(self, "cavity", replace(self.cavity, epsilon=self.pump.epsilon))

    @classmethod
    def from_ratios(
        cls,
        kappa_over_2pi_hz: float,
        epsilon_over_kappa: float,
        eta_over_kappa: float = 0.0,
        kappa_over_omega: Optional[float] = None,
    ) -> "SystemConfig":
        """Build from ratios to kappa, with kappa itself given as kappa / 2 pi in Hz."""
        kappa = 2.0 * math.pi * kappa_over_2pi_hz
        if eta_over_kappa > 0 and (kappa_over_omega is None or kappa_over_omega <= 0):
            raise NonPositiveRate("kappa_over_omega must be > 0 when eta > 0")
        omega = kappa / kappa_over_omega if kappa_over_omega else 0.0
        pump = PumpProfile(epsilon_over_kappa * kappa, eta_over_kappa * kappa, omega)
        return validate_config(pump, CavityParams(kappa))

    # shorthands used throughout the numerics
    @property
    def kappa(self) -> float:
        return self.cavity.kappa

    @property
    def epsilon(self) -> float:
        return self.pump.epsilon

    @property
    def eta(self) -> float:
        return self.pump.eta

    @property
    def omega(self) -> float:
        return self.pump.omega_mod

    @property
    def eta_tilde(self) -> float:
        return self.pump.eta_tilde

    @property
    def z(self) -> float:
        return self.pump.z

    @property
    def gamma_plus(self) -> float:
        return self.cavity.gamma_plus

    @property
    def gamma_minus(self) -> float:
        return self.cavity.gamma_minus

    @property
    def modulated(self) -> bool:
        return self.eta > 0

    def without_modulation(self) -> "SystemConfig":
        """Same epsilon and kappa with eta set to zero."""
        return replace(self, pump=replace(self.pump, eta=0.0))

    def steady_time(self, theta: Optional[float] = None) -> float:
        """Quasi-steady reference time.

        ``max(20/gamma_minus, 20/kappa)``; when ``theta`` is given the time is
        advanced to the next instant with ``omega * t = theta (mod 2 pi)``.
        """
        t_s = max(20.0 / self.gamma_minus, 20.0 / self.kappa)
        if theta is None or not self.modulated:
            return t_s
        period = 2.0 * math.pi / self.omega
        k = math.ceil((t_s - theta / self.omega) / period)
        return k * period + theta / self.omega


def _check_threshold(pump: PumpProfile, cavity: CavityParams) -> None:
    kappa = cavity.kappa
    if not kappa > 2.0 * (pump.epsilon + pump.eta):
        raise ThresholdViolation(
            f"below-threshold condition kappa > 2(epsilon + eta) violated: "
            f"kappa={kappa:g}, 2(epsilon + eta)={2.0 * (pump.epsilon + pump.eta):g}"
        )


def validate_config(
    pump: PumpProfile, cavity: CavityParams, analogy: Optional[AnalogyParams] = None
) -> SystemConfig:
    """Check the joint below-threshold condition and bind epsilon into the cavity.

    Raises
    ------
    ThresholdViolation
        If ``kappa <= 2 (epsilon + eta)``; the inequality is strict.
    NonPositiveRate
        If ``kappa <= 0`` or ``omega_mod <= 0`` while ``eta > 0`` (raised by
        the record constructors).
    """
    return SystemConfig(pump, replace(cavity, epsilon=pump.epsilon), analogy)


def pump_amplitude(pump: PumpProfile, t):
    """Instantaneous pump rate ``epsilon + eta cos(omega_mod t)``; accepts arrays."""
    return pump.epsilon + pump.eta * np.cos(pump.omega_mod * np.asarray(t, dtype=float))


def mirror_displacement(analogy: AnalogyParams, pump: PumpProfile, t):
    """Equivalent mirror displacement ``2 L0 (eta/Omega) sin(Omega t)`` in metres.

    Without modulation the displacement vanishes identically; zero is
    returned and a :class:`DegenerateModulation` warning is issued.
    """
    t = np.asarray(t, dtype=float)
    if pump.eta == 0:
        warnings.warn("eta = 0: mirror displacement is identically zero", DegenerateModulation)
        return np.zeros_like(t) if t.ndim else 0.0
    out = 2.0 * analogy.effective_length * pump.eta_tilde * np.sin(pump.omega_mod * t)
    return out if out.ndim else float(out)


def max_mirror_speed_ratio(analogy: AnalogyParams, cavity: CavityParams) -> float:
    """Peak effective mirror speed over c, ``kappa L0 / c``."""
    return cavity.kappa * analogy.effective_length / SPEED_OF_LIGHT
