"""Intracavity and emitted spectra; modulation puts sidebands at multiples of Omega.

Run: python3 demos/power_spectrum.py
"""

import math

import numpy as np
from scipy.signal import find_peaks

from casimir_opa import SystemConfig
from casimir_opa.spectrum import intracavity_spectrum, normalize, output_spectrum

for e in (0.2, 0.4):
    c = SystemConfig.from_ratios(1e4, e)
    w = np.linspace(-2, 2, 401)
    s = intracavity_spectrum(c, c.steady_time(), w * c.kappa)
    above = w[s.values >= 0.5 * s.values.max()]
    print(f"eta = 0, eps/kappa = {e}: peak S = {s.values.max():.3e} s, FWHM = {above[-1] - above[0]:.3f} kappa")

c = SystemConfig.from_ratios(1e4, 0.3, 0.15, 0.25)
x = np.arange(-150, 151) * 0.02
for theta in (math.pi / 4, math.pi / 2):
    s = intracavity_spectrum(c, c.steady_time(theta), x * c.omega)
    peaks = x[find_peaks(s.values)[0]]
    sn = normalize(s, c.omega)
    print(f"\ntheta_s = {theta:.3f}: peaks at omega/Omega = {', '.join(f'{p:+.2f}' for p in peaks)}")
    print(f"  S(2 Omega) / S(Omega) = {np.interp(2.0, x, sn.values):.4f}")

out = output_spectrum(s, c.cavity)
print(f"\nemitted / intracavity = {out.values[150] / s.values[150]:.6g} = kappa = {c.kappa:.6g} s^-1")
