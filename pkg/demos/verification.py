"""Closed forms checked against brute-force RK4 on the moment and regression equations.

Run: python3 demos/verification.py
"""

import numpy as np

from casimir_opa import SystemConfig
from casimir_opa.cli import verification_reports
from casimir_opa.special import IntegralKind, Method, kappa_weighted_integral

c = SystemConfig.from_ratios(1e4, 0.3, 0.1, 4.0)
print("eps = 0.3 kappa, eta = 0.1 kappa, kappa/Omega = 4")
for r in verification_reports(c):
    print(f"  {r.quantity:12s} max relative error {r.max_rel_error:.2e}")

# The Bessel-series integral against plain adaptive quadrature.
t = np.array([1.0, 3.0, 7.0]) / c.kappa
for which in IntegralKind:
    a = kappa_weighted_integral(which, c, t).value
    b = kappa_weighted_integral(which, c, t, Method.ADAPTIVE_QUADRATURE).value
    print(f"  {which.name}: series vs quadrature, worst relative gap {np.max(np.abs(a / b - 1)):.1e}")
