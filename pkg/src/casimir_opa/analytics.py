"""Closed-form observables of the modulated-pump OPA cavity.

Every function accepts scalar or array times and is vectorized over them.
The field state is Gaussian with zero mean, so all single-time quantities
follow from the two quadrature variances

    V1 = (f1^2 + kappa f1^2 int g1^2) / 4,   V2 = (f2^2 + kappa f2^2 int g2^2) / 4

with ``n = V1 + V2 - 1/2`` and ``<a^2> = V1 - V2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .core import SystemConfig
from .errors import ConsistencyError, ValidationError, VacuumReference
from .special import EnvelopeKind, IntegralKind, bessel_I, damped_weighted_integral, envelope_exponent, harmonic_series

ArrayLike = Union[float, np.ndarray]

VACUUM_FLOOR = 1e-12
DECOMPOSITION_TOL = 1e-9
FOURTH_MOMENT_TOL = 1e-8


def _out(x):
    x = np.asarray(x, dtype=float)
    return x if x.ndim else float(x)


def _times(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValidationError("times must be >= 0")
    return t


@dataclass(frozen=True)
class PhotonBreakdown:
    """Mean photon number split into constant-pump, modulation and interference parts."""

    n_opa: ArrayLike
    n_eta: ArrayLike
    n_interference: ArrayLike
    t: ArrayLike

    @property
    def n_casimir(self) -> ArrayLike:
        return _out(np.asarray(self.n_eta) + self.n_interference)

    @property
    def n_total(self) -> ArrayLike:
        return _out(np.asarray(self.n_opa) + self.n_eta + self.n_interference)


@dataclass(frozen=True)
class MomentState:
    v1: ArrayLike
    v2: ArrayLike
    t: ArrayLike

    @property
    def n(self) -> ArrayLike:
        return _out(np.asarray(self.v1) + self.v2 - 0.5)

    @property
    def m_anom(self) -> ArrayLike:
        return _out(np.asarray(self.v1) - self.v2)


@dataclass(frozen=True)
class TwoTimeCorrelators:
    """``<a+(t) a(t+tau)>`` and ``<a+(t) a+(t+tau)>``; both real here."""

    c_normal: ArrayLike
    c_anomalous: ArrayLike
    t: ArrayLike
    tau: ArrayLike


@dataclass(frozen=True)
class SqueezingPair:
    s1: ArrayLike
    s2: ArrayLike


def _envelope_squares(config: SystemConfig, t):
    f1sq = np.exp(2.0 * envelope_exponent(EnvelopeKind.F1, config, t))
    f2sq = np.exp(2.0 * envelope_exponent(EnvelopeKind.F2, config, t))
    return f1sq, f2sq


def _damped_pair(config: SystemConfig, t):
    d1 = damped_weighted_integral(IntegralKind.G1SQ, config, t).value
    d2 = damped_weighted_integral(IntegralKind.G2SQ, config, t).value
    return np.asarray(d1), np.asarray(d2)


def mean_photon_number(config: SystemConfig, t) -> ArrayLike:
    """Total ``<n(t)>`` from the envelope form, without the three-way split."""
    t = _times(t)
    f1sq, f2sq = _envelope_squares(config, t)
    d1, d2 = _damped_pair(config, t)
    return _out(0.25 * (f1sq + f2sq - 2.0 + d1 + d2))


def photon_breakdown(config: SystemConfig, t) -> PhotonBreakdown:
    """Constant-pump, modulation and interference contributions to ``<n(t)>``.

    The sum of the three parts is checked against :func:`mean_photon_number`
    and a :class:`ConsistencyError` is raised if they differ by more than
    ``1e-9 (1 + n)``.
    """
    t = _times(t)
    kappa, eps, om, z = config.kappa, config.epsilon, config.omega, config.z
    gp, gm = config.gamma_plus, config.gamma_minus
    ep, em = np.exp(-gp * t), np.exp(-gm * t)

    n_opa = 2.0 * eps**2 / (gp * gm) + eps / (2.0 * gp) * ep - eps / (2.0 * gm) * em

    i0 = bessel_I(0, z)
    n_eta = 0.25 * kappa * (i0 - 1.0) * (1.0 / gp + 1.0 / gm - (ep / gp + em / gm))

    if config.modulated:
        wob = z * np.sin(om * t)
        up, down = np.exp(wob), np.exp(-wob)
        four_int = (up - 1.0) * (em + kappa * i0 / gm * (1.0 - em))
        four_int = four_int + (down - 1.0) * (ep + kappa * i0 / gp * (1.0 - ep))
        h_plus = harmonic_series(gp, om, z, 1.0, t, start=1).value
        h_minus = harmonic_series(gm, om, z, -1.0, t, start=1).value
        four_int = four_int + kappa * (down * h_plus + up * h_minus)
        n_int = 0.25 * four_int
    else:
        n_int = np.zeros_like(t)

    out = PhotonBreakdown(_out(n_opa), _out(n_eta), _out(n_int), _out(t))
    direct = np.asarray(mean_photon_number(config, t))
    gap = np.abs(direct - out.n_total) / (1.0 + np.abs(direct))
    if np.any(gap > DECOMPOSITION_TOL):
        raise ConsistencyError(f"three-term sum differs from direct total by {np.max(gap):.3g}")
    return out


def quadrature_variances(config: SystemConfig, t) -> MomentState:
    t = _times(t)
    f1sq, f2sq = _envelope_squares(config, t)
    d1, d2 = _damped_pair(config, t)
    return MomentState(_out(0.25 * (f1sq + d1)), _out(0.25 * (f2sq + d2)), _out(t))


def squeezing(config: SystemConfig, t) -> SqueezingPair:
    """``S_i = 4 Var(a_i) - 1``; negative values mean sub-vacuum noise."""
    st = quadrature_variances(config, t)
    return SqueezingPair(_out(4.0 * np.asarray(st.v1) - 1.0), _out(4.0 * np.asarray(st.v2) - 1.0))


def casimir_variances(config: SystemConfig, t):
    """Quadrature variances minus those of the same cavity pumped at constant epsilon."""
    full = quadrature_variances(config, t)
    base = quadrature_variances(config.without_modulation(), t)
    return (_out(np.asarray(full.v1) - base.v1), _out(np.asarray(full.v2) - base.v2))


def _phase(config: SystemConfig, t, tau):
    om = config.omega
    phi = config.epsilon * tau
    if config.modulated:
        phi = phi + 2.0 * config.eta_tilde * np.sin(0.5 * om * tau) * np.cos(0.5 * om * (2.0 * t + tau))
    return phi


def two_time(config: SystemConfig, t, tau) -> TwoTimeCorrelators:
    """Normal and anomalous two-time correlators at reference time ``t``.

    ``f(t) f(t+tau) (1 + kappa int g^2)`` is rewritten as
    ``4 V(t) f(t+tau)/f(t)`` so the result stays bounded. The anomalous
    correlator carries ``- f2 f2 (1 + kappa int g2^2)`` in its second term,
    which makes it vanish identically in the vacuum; see
    :func:`anomalous_correlator_uncorrected` for the other sign.
    """
    t = _times(t)
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0):
        raise ValidationError("tau must be >= 0")
    st = quadrature_variances(config, t)
    phi = _phase(config, t, tau)
    damp = np.exp(-0.5 * config.kappa * tau)
    grow, shrink = np.exp(phi), np.exp(-phi)
    x1 = np.asarray(st.v1) - 0.25
    x2 = np.asarray(st.v2) - 0.25
    c_normal = damp * (grow * x1 + shrink * x2)
    c_anom = damp * (grow * x1 - shrink * x2)
    return TwoTimeCorrelators(_out(c_normal), _out(c_anom), _out(t), _out(tau))


def anomalous_correlator_uncorrected(config: SystemConfig, t, tau) -> ArrayLike:
    """Anomalous correlator with the second bracket taken as ``+f2 f2 (kappa int g2^2 - 1)``.

    Kept for comparison only: it does not vanish for the undriven vacuum
    and tends to 1/2 there at large ``t``.
    """
    t = _times(t)
    tau = np.asarray(tau, dtype=float)
    st = quadrature_variances(config, t)
    f1sq, f2sq = _envelope_squares(config, t)
    _, d2 = _damped_pair(config, t)
    phi = _phase(config, t, tau)
    damp = np.exp(-0.5 * config.kappa * tau)
    r1, r2 = damp * np.exp(phi), damp * np.exp(-phi)
    value = r1 * st.v1 + 0.25 * r2 * (d2 - f2sq) - 0.5 * damp * np.sinh(phi)
    return _out(value)


def _require_population(n) -> None:
    if np.any(np.asarray(n) <= VACUUM_FLOOR):
        raise VacuumReference(f"mean photon number {np.min(n):.3g} too small for a ratio observable")


def g2(config: SystemConfig, t, tau) -> ArrayLike:
    """Intensity autocorrelation ``1 + (<a+ a+_tau>^2 + <a+ a_tau>^2) / n^2``."""
    n = quadrature_variances(config, t).n
    _require_population(n)
    corr = two_time(config, t, tau)
    n = np.asarray(n)
    return _out(1.0 + (np.square(corr.c_anomalous) + np.square(corr.c_normal)) / n**2)


def _af_terms(config: SystemConfig, t, uncorrected: bool):
    t = _times(t)
    u, v = _envelope_squares(config, t)
    p, r = _damped_pair(config, t)
    e = np.exp(-config.kappa * t)
    a1 = (10.0 * e**2 + 3.0 * (u**2 + v**2) - 8.0 * e * (u + v)) / 16.0
    a2 = 0.25 * (u - v)
    a4 = 0.25 * (u + v - 2.0 * e)
    a3 = 0.25 * (u - v - 2.0 * e) if uncorrected else a4
    a5 = a6 = a2 if uncorrected else a4
    a7 = a2
    f2 = 0.25 * (p - r)
    f3 = 0.25 * (p + r - 2.0 * (1.0 - e))
    f8 = f2 * f2 + 2.0 * f3 * f3
    a = (a1, a2, a3, a4, a5, a6, a7, 1.0)
    f = (1.0, f2, f3, f3, f3, f3, f2, f8)
    return a, f


def fourth_moment(config: SystemConfig, t, uncorrected: bool = False) -> ArrayLike:
    """``<a+^2 a^2>`` as the eight-term sum ``sum_i A_i F_i``.

    By default ``A3 = A5 = A6 = A4``, which is what Wick's theorem requires
    (the sum then equals ``2 n^2 + <a^2>^2``). ``uncorrected=True`` instead
    uses ``A3 = (f1^2 - f2^2 - 2 e^{-kappa t})/4`` and ``A5 = A6 = A2``.
    The ``F3..F6`` integrand is ``g2^2``.
    """
    a, f = _af_terms(config, t, uncorrected)
    return _out(sum(ai * fi for ai, fi in zip(a, f)))


def mandel_Q(config: SystemConfig, t) -> ArrayLike:
    """Mandel parameter ``(<a+^2 a^2> - n^2) / n``.

    The eight-term sum is cross-checked against the Gaussian identity
    ``2 n^2 + <a^2>^2``.
    """
    st = quadrature_variances(config, t)
    n, m = np.asarray(st.n), np.asarray(st.m_anom)
    _require_population(n)
    s = np.asarray(fourth_moment(config, t))
    gaussian = 2.0 * n**2 + m**2
    gap = np.abs(s - gaussian) / (1.0 + gaussian)
    if np.any(gap > FOURTH_MOMENT_TOL):
        raise ConsistencyError(f"A/F sum differs from Gaussian fourth moment by {np.max(gap):.3g}")
    return _out((s - n**2) / n)
