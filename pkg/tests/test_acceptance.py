"""Acceptance criteria, one test each.

Every test appends a ``PASS``/``FAIL`` line (with the measured figure of
merit and wall time) to the terminal summary before asserting.
"""

import math
import time

import numpy as np
import pytest
from scipy.signal import find_peaks

from casimir_opa import analytics as A
from casimir_opa import cli
from casimir_opa import oracle as O
from casimir_opa import spectrum as S
from casimir_opa.core import SystemConfig

from conftest import ACCEPTANCE_LINES, random_configs

KHZ = 1e4


def report(number, title, ok, detail, elapsed, budget):
    within = elapsed < budget
    verdict = "PASS" if ok and within else "FAIL"
    ACCEPTANCE_LINES.append(f"[{verdict}] {number}. {title}: {detail} ({elapsed:.2f} s / {budget:g} s)")
    assert ok, detail
    assert within, f"took {elapsed:.2f} s, budget {budget} s"


def kgrid(c, upto, n):
    return np.linspace(0.0, upto, n) / c.kappa


def oracle_moments(c, t):
    return O.integrate_moments(c, O.IntegratorSettings.default(c, float(t[-1])), t)


def test_c1_oracle_equivalence():
    t0 = time.perf_counter()
    worst = 0.0
    for c in random_configs(50):
        t = kgrid(c, 10.0, 201)
        ref = oracle_moments(c, t)
        st = A.quadrature_variances(c, t)
        n = A.photon_breakdown(c, t).n_total
        worst = max(worst,
                    O.compare(n, [s.n for s in ref]).max_rel_error,
                    O.compare(st.v1, [s.v1 for s in ref]).max_rel_error,
                    O.compare(st.v2, [s.v2 for s in ref]).max_rel_error)
    report(1, "oracle equivalence", worst < 1e-6, f"max rel error {worst:.2e} < 1e-6 over 50 configs",
           time.perf_counter() - t0, 30)


def test_c2_steady_state_anchors():
    t0 = time.perf_counter()
    checks = []
    c = SystemConfig.from_ratios(KHZ, 0.25)
    checks.append(("n(0.25)", A.mean_photon_number(c, 40 / c.kappa), 1 / 6))
    c = SystemConfig.from_ratios(KHZ, 0.3)
    t = 40 / c.kappa
    sq = A.squeezing(c, t)
    checks += [
        ("S1", sq.s1, 1.5),
        ("S2", sq.s2, -0.375),
        ("m_anom", A.quadrature_variances(c, t).m_anom, 0.46875),
        ("g2(0)", A.g2(c, t, 0.0), 2 + 1 / (4 * 0.09)),
        ("Q", A.mandel_Q(c, t), 1.0625),
    ]
    errs = {name: abs(got - want) / abs(want) for name, got, want in checks}
    worst = max(errs, key=errs.get)
    report(2, "steady-state anchors", all(e < 1e-4 for e in errs.values()),
           f"worst {worst} rel error {errs[worst]:.1e} < 1e-4", time.perf_counter() - t0, 5)


def test_c3_anti_dce():
    t0 = time.perf_counter()
    c = SystemConfig.from_ratios(KHZ, 0.3, 0.1, 4.0)
    pb = A.photon_breakdown(c, np.linspace(0, 20 * 2 * math.pi, 4001) / c.omega)
    lo, floor = float(np.min(pb.n_casimir)), float(np.min(pb.n_total))
    report(3, "anti-DCE existence", lo < -1e-6 and floor >= -1e-9,
           f"min n_casimir {lo:.4f}, min n_total {floor:.2e}", time.perf_counter() - t0, 5)


def test_c4_anomalous_sign_fix():
    t0 = time.perf_counter()
    c = SystemConfig.from_ratios(KHZ, 0.0)
    t = kgrid(c, 40.0, 81)[:, None]
    tau = kgrid(c, 20.0, 41)[None, :]
    fixed = float(np.max(np.abs(A.two_time(c, t, tau).c_anomalous)))
    uncorrected = float(A.anomalous_correlator_uncorrected(c, 40 / c.kappa, 0.0))
    ok = fixed < 1e-12 and abs(uncorrected - 0.5) < 1e-9
    report(4, "anomalous correlator sign", ok,
           f"corrected max |c_anom| {fixed:.1e}, uncorrected {uncorrected:.6f}", time.perf_counter() - t0, 2)


def test_c5_physicality():
    t0 = time.perf_counter()
    v_floor, g_floor, drift = np.inf, np.inf, 0.0
    for c in random_configs(50):
        st = A.quadrature_variances(c, kgrid(c, 10.0, 201))
        v_floor = min(v_floor, float(np.min(np.asarray(st.v1) * st.v2)))
        t_s = c.steady_time()
        g = A.g2(c, t_s, kgrid(c, 10.0, 201))
        g_floor = min(g_floor, float(np.min(g)))
        if c.modulated:
            period = 2 * math.pi / c.omega
            ts = 20 / c.gamma_minus + np.linspace(0, period, 64)
            for f in (A.mean_photon_number, lambda cc, tt: A.quadrature_variances(cc, tt).v1,
                      lambda cc, tt: A.quadrature_variances(cc, tt).v2):
                a, b = np.asarray(f(c, ts)), np.asarray(f(c, ts + period))
                drift = max(drift, float(np.max(np.abs(a - b) / np.abs(a))))
    ok = v_floor >= 1 / 16 - 1e-10 and g_floor >= 1 - 1e-12 and drift < 1e-6
    report(5, "physicality", ok,
           f"min V1V2 {v_floor:.6f}, min g2 {g_floor:.4f}, periodicity drift {drift:.1e}",
           time.perf_counter() - t0, 30)


def test_c6_squeezing_magnitude():
    t0 = time.perf_counter()
    levels = np.round(np.arange(0.05, 0.451, 0.05), 2)
    best, where = np.inf, None
    for ko in (0.25, 0.5, 1.0, 2.0, 4.0, 8.0):
        for e in levels:
            for h in levels:
                if 2 * (e + h) >= 1:
                    continue
                c = SystemConfig.from_ratios(KHZ, e, h, ko)
                t = c.steady_time() + np.linspace(0, 2 * math.pi / c.omega, 257)
                t = np.concatenate([kgrid(c, 40.0, 801), t])
                m = float(np.min(4 * np.asarray(A.quadrature_variances(c, t).v2)))
                if m < best:
                    best, where = m, (e, h, ko)
    ok = abs(best - 0.13) <= 0.02
    report(6, "squeezing magnitude", ok,
           f"min 4*V2 {best:.4f} at eps/kappa={where[0]}, eta/kappa={where[1]}, kappa/Omega={where[2]}; "
           f"target 0.13 +/- 0.02", time.perf_counter() - t0, 60)


def _spectrum_checks():
    notes, ok = [], True

    w = np.linspace(-3, 3, 241)
    widths = []
    for e in (0.2, 0.4):
        c = SystemConfig.from_ratios(KHZ, e)
        s = S.intracavity_spectrum(c, c.steady_time(), w * c.kappa).values
        even = np.max(np.abs(s - s[::-1])) <= 1e-8 * np.max(s)
        single = len(find_peaks(s)[0]) == 1
        above = w[s >= 0.5 * s.max()]
        widths.append(above[-1] - above[0])
        ok &= bool(even and single)
    ok &= widths[1] < widths[0]
    notes.append(f"eta=0 FWHM {widths[0]:.3f}->{widths[1]:.3f} kappa")

    step = 0.02
    x = np.arange(-150, 151) * step
    c = SystemConfig.from_ratios(KHZ, 0.3, 0.15, 0.25)
    worst_gap = 0.0
    for theta in (math.pi / 4, math.pi / 2):
        s = S.intracavity_spectrum(c, c.steady_time(theta), x * c.omega).values
        peaks = x[find_peaks(s)[0]]
        symmetric = len(peaks) >= 3 and np.allclose(peaks, -peaks[::-1], atol=1e-9)
        gap = float(np.max(np.abs(np.diff(peaks) - 1.0))) if len(peaks) > 1 else np.inf
        worst_gap = max(worst_gap, gap)
        ok &= bool(symmetric and gap <= step + 1e-9)
    notes.append(f"side-peak spacing off by <= {worst_gap:.2f} Omega (step {step})")

    c = SystemConfig.from_ratios(KHZ, 0.3, 0.1, 4.0)
    ws = np.linspace(-3, 3, 25) * c.omega
    t_s = c.steady_time(math.pi / 4)
    base = S.intracavity_spectrum(c, t_s, ws)
    fine = S.intracavity_spectrum(c, t_s, ws, samples_per_period=2 * S.DEFAULT_SAMPLES_PER_PERIOD).values
    long = S.intracavity_spectrum(c, t_s, ws, tail_scale=1.5).values
    d_fine = float(np.max(np.abs(fine - base.values) / np.abs(base.values)))
    d_tail = float(np.max(np.abs(long - base.values) / np.abs(base.values)))
    ok &= d_fine < 1e-6 and d_tail < 1e-6
    notes.append(f"refinement {d_fine:.1e}, tail {d_tail:.1e}")

    ratio = S.output_spectrum(base, c.cavity).values / base.values
    ok &= bool(np.all(ratio == c.kappa) or np.max(np.abs(ratio / c.kappa - 1)) < 1e-15)
    notes.append("S_out/S = kappa")
    return ok, "; ".join(notes)


def test_c7_spectrum():
    t0 = time.perf_counter()
    ok, detail = _spectrum_checks()
    report(7, "spectrum", ok, detail, time.perf_counter() - t0, 60)


def test_c8_mandel_sign():
    t0 = time.perf_counter()
    low = np.inf
    for e, h in ((0.3, 0.1), (0.1, 0.3)):
        for ko in (2.0, 4.0):
            c = SystemConfig.from_ratios(KHZ, e, h, ko)
            q = A.mandel_Q(c, np.linspace(0.5, 10, 2000) / c.kappa)
            low = min(low, float(np.min(q)))
    report(8, "Mandel sign", low > 0, f"min Q {low:.4f} > 0 over kappa t in [0.5, 10]",
           time.perf_counter() - t0, 10)


def test_c9_cli_determinism(tmp_path):
    t0 = time.perf_counter()
    base = ["--kappa-over-2pi-hz", "1e4", "--epsilon-over-kappa", "0.3", "--eta-over-kappa", "0.1",
            "--kappa-over-omega", "2"]
    same = True
    for cmd in ("verify", "photons"):
        outs = []
        for i in range(2):
            path = tmp_path / f"{cmd}{i}.csv"
            assert cli.main([cmd, *base, "-o", str(path)]) == 0
            outs.append(path.read_bytes())
        same &= outs[0] == outs[1]
    codes = (
        cli.main(["photons", *base, "-o", str(tmp_path / "ok.csv")]),
        cli.main(["photons", "--epsilon-over-kappa", "0.3", "-o", str(tmp_path / "bad.csv")]),
        cli.main(["mandel", "--kappa-over-2pi-hz", "1e4", "--epsilon-over-kappa", "0", "-o",
                  str(tmp_path / "num.csv")]),
    )
    ok = same and codes == (0, 2, 3) and not (tmp_path / "num.csv").exists()
    report(9, "CLI determinism", ok, f"byte-identical {same}, exit codes {codes}", time.perf_counter() - t0, 10)
