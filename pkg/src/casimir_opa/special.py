"""Envelope kernels and the damping-weighted integrals of the squared inverse envelopes.

The quadrature solutions are ``X(t) = f1(t) (X(0) + int F+ g1)`` and
``Y(t) = f2(t) (Y(0) + int F- g2)`` with

    f1 = exp((eps - kappa/2) t + eta~ sin(Omega t)),   g1 = 1/f1
    f2 = exp(-(eps + kappa/2) t - eta~ sin(Omega t)),  g2 = 1/f2

Writing ``g^2 = exp(gamma t + s z sin(Omega t))`` (``gamma = gamma_-``,
``s = -1`` for ``g1``; ``gamma = gamma_+``, ``s = +1`` for ``g2``) and using
the Jacobi-Anger expansion

    exp(s z sin th) = I0(z) + 2 sum_j (-1)^j I_2j(z) cos(2j th)
                            + 2 s sum_j (-1)^j I_(2j+1)(z) sin((2j+1) th)

every harmonic integrates in closed form. The products ``f^2 int g^2`` are
evaluated directly in that damped form, so nothing grows with ``t``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import special as _sp

from .core import SystemConfig
from .errors import ExponentOverflow, OrderTooLarge, SeriesDivergence, ValidationError

BESSEL_ORDER_CAP = 250
SERIES_ORDER_CAP = 200
SERIES_REL_TOL = 1e-12
EXPONENT_LIMIT = 700.0

ArrayLike = Union[float, np.ndarray]


class EnvelopeKind(enum.Enum):
    F1 = "f1"
    F2 = "f2"
    G1 = "g1"
    G2 = "g2"


class IntegralKind(enum.Enum):
    """Which squared inverse envelope is integrated."""

    G1SQ = "g1sq"
    G2SQ = "g2sq"


class Method(enum.Enum):
    BESSEL_SERIES = "bessel"
    ADAPTIVE_QUADRATURE = "quadrature"


@dataclass(frozen=True)
class SeriesResult:
    """Value of a truncated expansion or adaptive integral.

    ``terms_used`` counts harmonics (series) or accepted panels (quadrature);
    ``truncation_estimate`` bounds the first omitted term, or the quadrature
    error estimate.
    """

    value: ArrayLike
    terms_used: int
    truncation_estimate: float


def bessel_I(order: int, z) -> ArrayLike:
    """Modified Bessel function of the first kind ``I_order(z)`` for integer order."""
    if int(order) != order or order < 0:
        raise ValidationError(f"order must be a non-negative integer, got {order!r}")
    if order > BESSEL_ORDER_CAP:
        raise OrderTooLarge(f"order {order} exceeds cap {BESSEL_ORDER_CAP}")
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ValidationError("z must be >= 0")
    out = _sp.iv(int(order), z)
    return out if out.ndim else float(out)


def _check_exponent(expo) -> None:
    if np.any(np.abs(expo) > EXPONENT_LIMIT):
        raise ExponentOverflow(
            f"envelope exponent {np.max(np.abs(expo)):.4g} exceeds +/-{EXPONENT_LIMIT:g}"
        )


def envelope_exponent(kind: EnvelopeKind, config: SystemConfig, t):
    t = np.asarray(t, dtype=float)
    kappa, eps = config.kappa, config.epsilon
    wobble = config.eta_tilde * np.sin(config.omega * t)
    if kind in (EnvelopeKind.F1, EnvelopeKind.G1):
        expo = (eps - 0.5 * kappa) * t + wobble
        return expo if kind is EnvelopeKind.F1 else -expo
    expo = -(eps + 0.5 * kappa) * t - wobble
    return expo if kind is EnvelopeKind.F2 else -expo


def envelope(kind: EnvelopeKind, config: SystemConfig, t) -> ArrayLike:
    """Evaluate ``f1``, ``f2``, ``g1`` or ``g2`` at ``t``.

    Raises :class:`ExponentOverflow` rather than saturating when the exponent
    leaves ``[-700, 700]``.
    """
    expo = envelope_exponent(kind, config, t)
    _check_exponent(expo)
    out = np.exp(expo)
    return out if out.ndim else float(out)


def _rate_and_sign(which: IntegralKind, config: SystemConfig):
    if which is IntegralKind.G1SQ:
        return config.gamma_minus, -1.0
    if which is IntegralKind.G2SQ:
        return config.gamma_plus, 1.0
    raise ValidationError(f"unknown integral kind {which!r}")


def harmonic_coefficients(z: float, sign: float, start: int = 0):
    """Fourier coefficients of ``exp(sign z sin th)``, as ``(k, cos_coef, sin_coef)`` rows.

    Yields one harmonic at a time starting at ``k = start``.
    """
    k = start
    while True:
        if k > SERIES_ORDER_CAP:
            return
        ik = bessel_I(k, z)
        if k == 0:
            yield k, ik, 0.0
        elif k % 2 == 0:
            yield k, 2.0 * (-1.0) ** (k // 2) * ik, 0.0
        else:
            yield k, 0.0, 2.0 * sign * (-1.0) ** ((k - 1) // 2) * ik
        k += 1


def harmonic_series(gamma: float, omega: float, z: float, sign: float, t, start: int = 0) -> SeriesResult:
    """``exp(-gamma t) * int_0^t exp(gamma u) sum_{k>=start} h_k(Omega u) du``.

    ``h_k`` are the harmonics of ``exp(sign z sin(Omega u))``. Truncation
    stops at the first harmonic whose magnitude bound drops below
    ``1e-12`` of the accumulated bound.
    """
    t = np.asarray(t, dtype=float)
    decay = np.exp(-gamma * t)
    total = np.zeros_like(t)
    scale = 0.0
    used = 0
    if z == 0.0:
        if start == 0:
            total = (1.0 - decay) / gamma
            return SeriesResult(total if total.ndim else float(total), 1, 0.0)
        return SeriesResult(total if total.ndim else float(total), 1, 0.0)
    for k, a_k, b_k in harmonic_coefficients(z, sign, start):
        w = k * omega
        den = gamma * gamma + w * w
        bound = (abs(a_k) + abs(b_k)) * 2.0 * (gamma + w) / den
        if used > 0 and bound < SERIES_REL_TOL * scale:
            return SeriesResult(total if total.ndim else float(total), used, bound)
        if a_k:
            c, s = np.cos(w * t), np.sin(w * t)
            total = total + a_k * (gamma * c + w * s - gamma * decay) / den
        if b_k:
            c, s = np.cos(w * t), np.sin(w * t)
            total = total + b_k * (gamma * s - w * c + w * decay) / den
        scale += bound
        used += 1
    raise SeriesDivergence(
        f"harmonic series not converged by order {SERIES_ORDER_CAP} (z={z:g}, gamma={gamma:g})"
    )


def damped_weighted_integral(which: IntegralKind, config: SystemConfig, t) -> SeriesResult:
    """Bounded product ``kappa f^2(t) int_0^t g^2``, evaluated by the Bessel series."""
    gamma, sign = _rate_and_sign(which, config)
    t = np.asarray(t, dtype=float)
    prefactor_expo = -sign * config.z * np.sin(config.omega * t)
    _check_exponent(prefactor_expo)
    series = harmonic_series(gamma, config.omega, config.z, sign, t)
    value = config.kappa * np.exp(prefactor_expo) * series.value
    return SeriesResult(value if np.ndim(value) else float(value), series.terms_used,
                        config.kappa * math.exp(config.z) * series.truncation_estimate)


def _squared_inverse_envelope(which: IntegralKind, config: SystemConfig):
    gamma, sign = _rate_and_sign(which, config)
    sz, om = sign * config.z, config.omega

    def g2(u: float) -> float:
        return math.exp(gamma * u + sz * math.sin(om * u))

    return g2


def adaptive_simpson(f, a: float, b: float, abs_tol: float = 1e-12, rel_tol: float = 1e-13,
                     max_depth: int = 40, panels: int = 16):
    """Adaptive Simpson quadrature with Richardson correction.

    The interval is first cut into ``panels`` equal pieces; each piece is
    bisected until the local error estimate meets its share of
    ``max(abs_tol, rel_tol * |coarse estimate|)``. Returns
    ``(value, error_estimate, accepted_panels)``.
    """
    if b == a:
        return 0.0, 0.0, 1
    h = (b - a) / panels
    nodes = [a + i * h * 0.5 for i in range(2 * panels + 1)]
    vals = [f(x) for x in nodes]
    coarse = sum(h / 6.0 * (vals[2 * i] + 4.0 * vals[2 * i + 1] + vals[2 * i + 2]) for i in range(panels))
    tol = max(abs_tol, rel_tol * abs(coarse))
    total = 0.0
    err_total = 0.0
    accepted = 0
    for i in range(panels):
        x0, x1 = nodes[2 * i], nodes[2 * i + 2]
        f0, fm, f1 = vals[2 * i], vals[2 * i + 1], vals[2 * i + 2]
        whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1)
        stack = [(x0, x1, f0, fm, f1, whole, tol / panels, 0)]
        while stack:
            lo, hi, flo, fmid, fhi, est, eps, depth = stack.pop()
            mid = 0.5 * (lo + hi)
            lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
            flm, frm = f(lm), f(rm)
            left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
            right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi)
            delta = left + right - est
            if abs(delta) <= 15.0 * eps or depth >= max_depth:
                total += left + right + delta / 15.0
                err_total += abs(delta) / 15.0
                accepted += 1
            else:
                stack.append((lo, mid, flo, flm, fmid, left, 0.5 * eps, depth + 1))
                stack.append((mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth + 1))
    return total, err_total, accepted


def kappa_weighted_integral(which: IntegralKind, config: SystemConfig, t,
                            method: Method = Method.BESSEL_SERIES) -> SeriesResult:
    """``kappa * int_0^t g^2(u) du`` for ``g1`` or ``g2``.

    This is the raw (growing) integral; the analytics use
    :func:`damped_weighted_integral` instead. With
    ``Method.ADAPTIVE_QUADRATURE`` the squared envelope is integrated
    directly and no Bessel function is involved.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValidationError("t must be >= 0")
    gamma, sign = _rate_and_sign(which, config)
    if method is Method.BESSEL_SERIES:
        growth = gamma * t_arr + sign * config.z * np.sin(config.omega * t_arr)
        _check_exponent(growth)
        damped = damped_weighted_integral(which, config, t_arr)
        value = np.exp(growth) * damped.value
        return SeriesResult(value if value.ndim else float(value), damped.terms_used,
                            damped.truncation_estimate)
    if method is not Method.ADAPTIVE_QUADRATURE:
        raise ValidationError(f"unknown method {method!r}")
    _check_exponent(gamma * t_arr + config.z)
    f = _squared_inverse_envelope(which, config)
    periods = config.omega * float(np.max(t_arr, initial=0.0)) / (2.0 * math.pi)
    panels = int(min(4096, 16 + 8 * periods + 2 * gamma * float(np.max(t_arr, initial=0.0))))
    values, errs, used = [], 0.0, 0
    for ti in t_arr.ravel():
        v, e, n = adaptive_simpson(f, 0.0, float(ti), panels=panels)
        values.append(config.kappa * v)
        errs = max(errs, config.kappa * e)
        used += n
    value = np.array(values).reshape(t_arr.shape)
    return SeriesResult(value if value.ndim else float(value), max(used, 1), errs)
