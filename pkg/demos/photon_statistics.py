"""Intensity correlations and the Mandel parameter.

Run: python3 demos/photon_statistics.py
"""

import math

import numpy as np

from casimir_opa import SystemConfig
from casimir_opa.analytics import g2, mandel_Q

c = SystemConfig.from_ratios(1e4, 0.3)
t_s = c.steady_time()
tau = np.array([0.0, 0.5, 1.0, 2.0, 5.0]) / c.kappa
print("constant pump, eps/kappa = 0.3 (bunched light: g2 falls from its zero-delay peak)")
for k, g in zip(tau * c.kappa, g2(c, t_s, tau)):
    print(f"  kappa tau = {k:3.1f}   g2 = {g:.4f}")

print("\nlong-delay g2 / g2(0) at kappa/Omega = 1 as eps/eta grows:")
for e, h in [(0.1, 0.3), (0.2, 0.2), (0.3, 0.1), (0.45, 0.02)]:
    c = SystemConfig.from_ratios(1e4, e, h, 1.0)
    g = g2(c, c.steady_time(math.pi / 2), np.array([0.0, 80.0]) / c.kappa)
    print(f"  eps/eta = {e / h:5.1f}   ratio = {g[1] / g[0]:.3f}")

print("\nMandel Q over kappa t in [0.5, 10] (positive means super-Poissonian):")
for e, h in [(0.3, 0.1), (0.1, 0.3)]:
    for ko in (2.0, 4.0):
        c = SystemConfig.from_ratios(1e4, e, h, ko)
        q = mandel_Q(c, np.linspace(0.5, 10, 1000) / c.kappa)
        print(f"  eps={e}, eta={h}, kappa/Omega={ko}:  Q in [{q.min():.3f}, {q.max():.3f}]")
