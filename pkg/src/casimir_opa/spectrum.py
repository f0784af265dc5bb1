"""Power spectrum of the intracavity field and its emitted counterpart.

``S(w) = (1/pi) Re int_0^inf e^{i w tau} <a+(t_s) a(t_s + tau)> dtau``.
The correlator is real, so the integral reduces to a cosine transform,
evaluated by composite Simpson on one shared delay grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from . import analytics
from . import oracle as _oracle
from .core import CavityParams, SystemConfig
from .errors import AlreadyNormalized, NotQuasiSteady, ResolutionTooCoarse, ValidationError, ZeroReference

TAIL_DECADES = 12.0
DEFAULT_SAMPLES_PER_PERIOD = 128
MIN_SAMPLES_PER_PERIOD = 40
MAX_SAMPLES = 2_000_000


@dataclass(frozen=True)
class SpectrumSeries:
    omegas: np.ndarray
    values: np.ndarray
    t_s: float
    theta_s: float
    normalized: bool = False
    reference_omega: Optional[float] = None

    def __post_init__(self):
        if len(self.omegas) != len(self.values):
            raise ValidationError("omegas and values must have equal length")
        if not np.all(np.isfinite(self.values)):
            raise ValidationError("spectral values must be finite")


def tail_length(config: SystemConfig) -> float:
    """Delay beyond which the correlator envelope has fallen by ``1e-12``.

    The envelope is ``exp(-gamma_- tau / 2)`` times at most ``exp(2 eta~)``
    from the modulation, hence ``(2/gamma_-) (ln 1e12 + 2 eta~)``.
    """
    return 2.0 / config.gamma_minus * (TAIL_DECADES * math.log(10.0) + 2.0 * config.eta_tilde)


def delay_grid(config: SystemConfig, omegas, samples_per_period: int = DEFAULT_SAMPLES_PER_PERIOD,
               tail_scale: float = 1.0) -> np.ndarray:
    """Uniform Simpson grid (odd length) resolving the fastest of ``|w|``, ``Omega`` and ``kappa``."""
    if samples_per_period < MIN_SAMPLES_PER_PERIOD:
        raise ResolutionTooCoarse(f"need >= {MIN_SAMPLES_PER_PERIOD} samples per period")
    fastest = max(float(np.max(np.abs(omegas), initial=0.0)), config.omega, config.kappa)
    tau_max = tail_scale * tail_length(config)
    period = 2.0 * math.pi / fastest
    intervals = math.ceil(tau_max / period * samples_per_period)
    intervals += intervals % 2
    if intervals + 1 > MAX_SAMPLES:
        raise ResolutionTooCoarse(f"{intervals + 1} delay samples exceed the budget of {MAX_SAMPLES}")
    return np.linspace(0.0, tau_max, intervals + 1)


def _simpson_weights(n: int, h: float) -> np.ndarray:
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * h / 3.0


def correlator_samples(config: SystemConfig, t_s: float, taus: np.ndarray, source: str = "closed") -> np.ndarray:
    """``<a+(t_s) a(t_s + tau)>`` on ``taus`` from the closed form or the regression ODE."""
    if source == "closed":
        return np.asarray(analytics.two_time(config, t_s, taus).c_normal)
    if source == "oracle":
        settings = _oracle.IntegratorSettings.default(config, t_s + float(taus[-1]))
        run = _oracle.integrate_regression(config, settings, t_s, taus)
        return np.array([r.c_normal for r in run])
    raise ValidationError(f"unknown correlator source {source!r}")


def intracavity_spectrum(config: SystemConfig, t_s: float, omegas: Sequence[float],
                         source: str = "closed", samples_per_period: int = DEFAULT_SAMPLES_PER_PERIOD,
                         tail_scale: float = 1.0) -> SpectrumSeries:
    """Quasi-steady spectrum at reference time ``t_s``.

    Raises
    ------
    NotQuasiSteady
        If ``t_s < 20 / gamma_-``.
    ResolutionTooCoarse
        If the sampling rule needs more than ``MAX_SAMPLES`` delay points.
    """
    omegas = np.asarray(omegas, dtype=float)
    if not np.all(np.isfinite(omegas)):
        raise ValidationError("omegas must be finite")
    if t_s < 20.0 / config.gamma_minus * (1 - 1e-12):
        raise NotQuasiSteady(f"t_s = {t_s:.4g} s is below 20/gamma_- = {20.0 / config.gamma_minus:.4g} s")
    taus = delay_grid(config, omegas, samples_per_period, tail_scale)
    weighted = _simpson_weights(taus.size, taus[1] - taus[0]) * correlator_samples(config, t_s, taus, source)
    values = np.empty(omegas.size)
    chunk = max(1, 4_000_000 // taus.size)
    for lo in range(0, omegas.size, chunk):
        block = omegas[lo:lo + chunk]
        values[lo:lo + chunk] = np.cos(np.outer(block, taus)) @ weighted / math.pi
    return SpectrumSeries(omegas, values, float(t_s), config.omega * t_s)


def normalize(series: SpectrumSeries, reference_omega: float) -> SpectrumSeries:
    """Divide by the (linearly interpolated) value at ``reference_omega``."""
    order = np.argsort(series.omegas)
    ref = float(np.interp(reference_omega, series.omegas[order], series.values[order]))
    if not ref > 0:
        raise ZeroReference(f"spectral value {ref:.3g} at reference frequency is not positive")
    return replace(series, values=series.values / ref, normalized=True, reference_omega=float(reference_omega))


def output_spectrum(series: SpectrumSeries, cavity: CavityParams) -> SpectrumSeries:
    """Emitted-field spectrum ``kappa S(w)`` (vacuum input adds nothing)."""
    if series.normalized:
        raise AlreadyNormalized("output spectrum needs the unnormalized intracavity series")
    return replace(series, values=cavity.kappa * series.values)
