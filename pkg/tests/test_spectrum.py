import math

import numpy as np
import pytest

from casimir_opa import spectrum as S
from casimir_opa.core import SystemConfig
from casimir_opa.errors import AlreadyNormalized, NotQuasiSteady, ResolutionTooCoarse, ZeroReference
from scipy.signal import find_peaks


def lorentz_pair(c, w):
    # constant pump correlator: n-weighted exponentials with rates gamma_-/2 and gamma_+/2
    k, e = c.kappa, c.epsilon
    x1 = 0.25 * k / (k - 2 * e) - 0.25
    x2 = 0.25 * k / (k + 2 * e) - 0.25
    out = 0.0
    for x, r in ((x1, c.gamma_minus / 2), (x2, c.gamma_plus / 2)):
        out = out + x * r / (r * r + w * w)
    return np.asarray(out) / math.pi


def steady_spectrum(c, w, **kw):
    return S.intracavity_spectrum(c, c.steady_time(), w, **kw)


def test_constant_pump_is_lorentzian(constant_pump):
    c = constant_pump
    w = np.linspace(-3, 3, 61) * c.kappa
    got = steady_spectrum(c, w).values
    np.testing.assert_allclose(got, lorentz_pair(c, w), rtol=1e-5)


def test_constant_pump_shape(constant_pump):
    c = constant_pump
    w = np.linspace(-3, 3, 121) * c.kappa
    s = steady_spectrum(c, w).values
    assert np.max(np.abs(s - s[::-1])) < 1e-8 * s[60]
    assert np.all(s > 0)
    assert int(np.argmax(s)) == 60 and len(find_peaks(s)[0]) == 1


def test_peak_narrows_and_grows_with_pump():
    w = np.linspace(-2, 2, 801)
    stats = []
    for e in (0.2, 0.4):
        c = SystemConfig.from_ratios(1e4, e)
        s = steady_spectrum(c, w * c.kappa).values
        above = w[s >= 0.5 * s.max()]
        stats.append((s.max(), above[-1] - above[0]))
    assert stats[1][0] > stats[0][0] and stats[1][1] < stats[0][1]


@pytest.mark.parametrize("ko", [0.1, 0.25])
@pytest.mark.parametrize("theta", [math.pi / 4, math.pi / 2])
def test_side_peaks_spaced_by_modulation_frequency(ko, theta):
    c = SystemConfig.from_ratios(1e4, 0.3, 0.15, ko)
    step = 0.02
    x = np.arange(-150, 151) * step
    s = S.intracavity_spectrum(c, c.steady_time(theta), x * c.omega).values
    peaks = x[find_peaks(s)[0]]
    assert len(peaks) >= 5 and len(peaks) % 2 == 1
    np.testing.assert_allclose(peaks, -peaks[::-1], atol=1e-9)
    assert np.all(np.abs(np.diff(peaks) - 1.0) <= step + 1e-9)
    assert np.max(np.abs(s - s[::-1])) <= 1e-6 * np.max(s)


def test_refinement_and_tail_stability(modulated):
    c = modulated
    w = np.linspace(-3, 3, 31) * c.omega
    base = steady_spectrum(c, w).values
    fine = steady_spectrum(c, w, samples_per_period=2 * S.DEFAULT_SAMPLES_PER_PERIOD).values
    long = steady_spectrum(c, w, tail_scale=1.5).values
    assert np.max(np.abs(fine - base) / np.abs(base)) < 1e-6
    assert np.max(np.abs(long - base) / np.abs(base)) < 1e-6


def test_oracle_source_agrees(modulated):
    c = modulated
    w = np.linspace(-2, 2, 9) * c.omega
    a = steady_spectrum(c, w).values
    b = steady_spectrum(c, w, source="oracle").values
    assert np.max(np.abs(a - b) / (1 + np.abs(b))) < 1e-6


def test_not_quasi_steady(modulated):
    with pytest.raises(NotQuasiSteady):
        S.intracavity_spectrum(modulated, 1 / modulated.kappa, [0.0])
    with pytest.raises(ResolutionTooCoarse):
        steady_spectrum(modulated, [0.0], samples_per_period=10)


def test_normalize(modulated):
    c = modulated
    w = np.linspace(-2, 2, 41) * c.omega
    n = S.normalize(steady_spectrum(c, w), c.omega)
    assert n.values[30] == pytest.approx(1.0, rel=1e-12)
    again = S.normalize(n, c.omega)
    np.testing.assert_allclose(again.values, n.values, rtol=1e-12)
    assert n.normalized and n.reference_omega == c.omega
    flat = S.SpectrumSeries(w, np.zeros_like(w), 0.0, 0.0)
    with pytest.raises(ZeroReference):
        S.normalize(flat, c.omega)


def test_output_spectrum(modulated):
    c = modulated
    w = np.linspace(-2, 2, 21) * c.omega
    inside = steady_spectrum(c, w)
    out = S.output_spectrum(inside, c.cavity)
    np.testing.assert_allclose(out.values / inside.values, c.kappa, rtol=1e-14)
    from dataclasses import replace
    wide = replace(c.cavity, kappa=2 * c.kappa)
    np.testing.assert_allclose(S.output_spectrum(inside, wide).values, 2 * out.values, rtol=1e-14)
    with pytest.raises(AlreadyNormalized):
        S.output_spectrum(S.normalize(inside, c.omega), c.cavity)


def test_modulation_signature_in_emitted_light():
    c = SystemConfig.from_ratios(1e4, 0.3, 0.15, 0.25)
    w = np.array([-2.0, -1.0, 1.0, 2.0]) * c.omega
    t = c.steady_time(0.0)
    on = S.output_spectrum(S.intracavity_spectrum(c, t, w), c.cavity).values
    plain = c.without_modulation()
    off = S.output_spectrum(S.intracavity_spectrum(plain, t, w), plain.cavity).values
    assert np.all(np.abs(on - off) > 1e-3 * np.abs(off))
