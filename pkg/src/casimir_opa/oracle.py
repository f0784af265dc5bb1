"""Brute-force reference: fixed-step RK4 on the moment equations.

The Langevin equations are linear with vacuum noise, so the second moments
obey closed ODEs. With ``p(t)`` the pump rate,

    dV1/dt = (2 p - kappa) V1 + kappa/4
    dV2/dt = -(2 p + kappa) V2 + kappa/4

and, by the regression theorem, for ``C(tau) = <a+(t) a(t+tau)>`` and
``D(tau) = <a+(t) a+(t+tau)>``

    dC/dtau = -kappa/2 C + p(t+tau) D
    dD/dtau = -kappa/2 D + p(t+tau) C.

Nothing here touches Bessel functions or the closed-form envelopes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .core import SystemConfig
from .errors import LengthMismatch, StepTooLarge, ValidationError


@dataclass(frozen=True)
class OracleState:
    """Single-time moments from the ODE run (mirrors the closed-form record)."""

    v1: float
    v2: float
    t: float

    @property
    def n(self) -> float:
        return self.v1 + self.v2 - 0.5

    @property
    def m_anom(self) -> float:
        return self.v1 - self.v2


@dataclass(frozen=True)
class OracleCorrelators:
    c_normal: float
    c_anomalous: float
    t: float
    tau: float


@dataclass(frozen=True)
class IntegratorSettings:
    step: float
    max_time: float
    scheme: str = "RK4"

    @classmethod
    def default(cls, config: SystemConfig, max_time: float) -> "IntegratorSettings":
        """Step ``min(1/(100 kappa), 2 pi/(100 Omega))``."""
        step = 1.0 / (100.0 * config.kappa)
        if config.modulated:
            step = min(step, 2.0 * math.pi / (100.0 * config.omega))
        return cls(step, max_time)

    def check(self, config: SystemConfig) -> None:
        if self.scheme != "RK4":
            raise ValidationError(f"unsupported scheme {self.scheme!r}")
        bound = 1.0 / (50.0 * config.kappa)
        if config.modulated:
            bound = min(bound, 2.0 * math.pi / (50.0 * config.omega))
        if not 0 < self.step <= bound * (1 + 1e-12):
            raise StepTooLarge(f"step {self.step:.3g} outside (0, {bound:.3g}]")
        if not 0 <= self.max_time * config.kappa <= 1e4:
            raise StepTooLarge(f"max_time * kappa = {self.max_time * config.kappa:.3g} exceeds 1e4")


@dataclass(frozen=True)
class OracleReport:
    max_rel_error: float
    worst_time: float
    quantity: str


def _pump(config: SystemConfig):
    eps, eta, om = config.epsilon, config.eta, config.omega
    return lambda t: eps + eta * math.cos(om * t)


def _check_grid(grid: Sequence[float], lo: float, hi: float) -> np.ndarray:
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1 or g.size == 0:
        raise ValidationError("grid must be a non-empty 1-D sequence")
    if np.any(np.diff(g) < 0):
        raise ValidationError("grid must be ascending")
    if g[0] < lo or g[-1] > hi * (1 + 1e-12):
        raise ValidationError(f"grid must lie within [{lo:g}, {hi:g}]")
    return g


def _rk4_linear_pair(rhs, y1: float, y2: float, t0: float, t1: float, step: float):
    """Advance ``(y1, y2)`` from ``t0`` to ``t1`` in equal substeps no longer than ``step``."""
    span = t1 - t0
    if span <= 0:
        return y1, y2
    n = max(1, math.ceil(span / step - 1e-9))
    h = span / n
    t = t0
    for _ in range(n):
        a1, b1 = rhs(t, y1, y2)
        a2, b2 = rhs(t + 0.5 * h, y1 + 0.5 * h * a1, y2 + 0.5 * h * b1)
        a3, b3 = rhs(t + 0.5 * h, y1 + 0.5 * h * a2, y2 + 0.5 * h * b2)
        a4, b4 = rhs(t + h, y1 + h * a3, y2 + h * b3)
        y1 += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        y2 += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        t += h
    return y1, y2


def integrate_moments(config: SystemConfig, settings: IntegratorSettings,
                      grid: Sequence[float]) -> List[OracleState]:
    """Integrate the variance ODEs from the vacuum ``V1 = V2 = 1/4`` and sample on ``grid``."""
    settings.check(config)
    g = _check_grid(grid, 0.0, settings.max_time)
    kappa = config.kappa
    pump = _pump(config)
    quarter = 0.25 * kappa

    def rhs(t, v1, v2):
        p = pump(t)
        return (2.0 * p - kappa) * v1 + quarter, -(2.0 * p + kappa) * v2 + quarter

    out = []
    t_prev, v1, v2 = 0.0, 0.25, 0.25
    for ti in g:
        v1, v2 = _rk4_linear_pair(rhs, v1, v2, t_prev, float(ti), settings.step)
        t_prev = float(ti)
        out.append(OracleState(v1, v2, t_prev))
    return out


def integrate_regression(config: SystemConfig, settings: IntegratorSettings, t: float,
                         tau_grid: Sequence[float],
                         initial: Optional[OracleState] = None) -> List[OracleCorrelators]:
    """Two-time correlators at reference time ``t`` on an ascending delay grid.

    ``initial`` is the single-time state at ``t``; when omitted it is
    obtained from :func:`integrate_moments`.
    """
    settings.check(config)
    taus = _check_grid(tau_grid, 0.0, settings.max_time)
    if initial is None:
        initial = integrate_moments(config, settings, [t])[-1]
    kappa = config.kappa
    pump = _pump(config)
    half = 0.5 * kappa

    def rhs(s, c, d):
        p = pump(t + s)
        return -half * c + p * d, -half * d + p * c

    out = []
    s_prev, c, d = 0.0, initial.n, initial.m_anom
    for si in taus:
        c, d = _rk4_linear_pair(rhs, c, d, s_prev, float(si), settings.step)
        s_prev = float(si)
        out.append(OracleCorrelators(c, d, t, s_prev))
    return out


def compare(closed_series: Sequence[float], oracle_series: Sequence[float],
            times: Optional[Sequence[float]] = None, quantity: str = "") -> OracleReport:
    """Worst ``|a - b| / (1 + |b|)`` over the grid and where it occurs.

    ``worst_time`` is taken from ``times`` when given, otherwise it is the
    sample index.
    """
    a = np.asarray(closed_series, dtype=float)
    b = np.asarray(oracle_series, dtype=float)
    if a.shape != b.shape:
        raise LengthMismatch(f"lengths differ: {a.shape} vs {b.shape}")
    if times is not None and len(times) != a.size:
        raise LengthMismatch("times must match series length")
    if a.size == 0:
        return OracleReport(0.0, float("nan"), quantity)
    err = np.abs(a - b) / (1.0 + np.abs(b))
    i = int(np.argmax(err))
    where = float(times[i]) if times is not None else float(i)
    return OracleReport(float(err[i]), where, quantity)
