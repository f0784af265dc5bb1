"""Quadrature noise under constant and modulated pumping.

S_i = 4 Var(a_i) - 1, so negative values are below the vacuum level.
Run: python3 demos/squeezing.py
"""

import numpy as np

from casimir_opa import SystemConfig
from casimir_opa.analytics import quadrature_variances, squeezing

c = SystemConfig.from_ratios(1e4, 0.3)
sq = squeezing(c, 40 / c.kappa)
print(f"constant pump eps/kappa = 0.3: S1 = {sq.s1:.4f}, S2 = {sq.s2:.4f}")

c = SystemConfig.from_ratios(1e4, 0.1, 0.35, 1.0)
t = np.linspace(0, 20, 2001) / c.kappa
sq = squeezing(c, t)
print("\nmodulated (eps, eta) = (0.1, 0.35) kappa, kappa/Omega = 1")
print(f"  S1 dips to {np.min(sq.s1):+.4f}, S2 dips to {np.min(sq.s2):+.4f}: both quadratures squeeze at times")

# How low can Var(a_2) go? The variance equation keeps 4 V2 above
# 1 / (1 + 2 (eps + eta) / kappa), so sub-threshold operation caps it near 1/2.
best = (np.inf, None)
for e in np.arange(0.05, 0.46, 0.05):
    for h in np.arange(0.0, 0.46, 0.05):
        if 2 * (e + h) >= 1:
            continue
        c = SystemConfig.from_ratios(1e4, e, h, 1.0 if h else None)
        v2 = np.min(quadrature_variances(c, np.linspace(0, 40, 1601) / c.kappa).v2)
        best = min(best, (v2, (round(e, 2), round(h, 2))), key=lambda x: x[0])
v2, (e, h) = best
print(f"\nsmallest V2 = {v2:.4f} (4 V2 = {4 * v2:.4f}) at eps/kappa = {e}, eta/kappa = {h}")
print(f"floor from the variance equation: {0.25 / (1 + 2 * (e + h)):.4f}")
