"""Command-line front end writing CSV tables of the observables.

Usage::

    casimir-opa photons --kappa-over-2pi-hz 1e4 --epsilon-over-kappa 0.3 \\
        --eta-over-kappa 0.1 --kappa-over-omega 2 --t-max-kappa 10 --points 1001 -o n.csv

Exit status: 0 on success, 2 on invalid input, 3 on a numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import math
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import __version__, analytics, oracle, spectrum
from .core import AnalogyParams, SystemConfig, max_mirror_speed_ratio, mirror_displacement
from .errors import GridTooLarge, MissingRequired, NumericalError, UnknownKey, ValidationError

SUBCOMMANDS = ("photons", "squeezing", "g2", "mandel", "spectrum", "analogy", "verify", "sweep")
SWEEP_LIMIT = 10_000
VERIFY_TOL = 1e-6
SYSTEM_KEYS = ("kappa_over_2pi_hz", "epsilon_over_kappa", "eta_over_kappa", "kappa_over_omega")
RELEVANT = {
    "photons": SYSTEM_KEYS + ("t_min_kappa", "t_max_kappa", "points"),
    "squeezing": SYSTEM_KEYS + ("t_min_kappa", "t_max_kappa", "points"),
    "mandel": SYSTEM_KEYS + ("t_min_kappa", "t_max_kappa", "points"),
    "g2": SYSTEM_KEYS + ("tau_max_kappa", "tau_points", "theta"),
    "spectrum": SYSTEM_KEYS + ("omega_max", "points", "theta", "normalize_at", "source"),
    "analogy": SYSTEM_KEYS + ("cavity_length_m", "crystal_length_m", "crystal_index"),
    "verify": SYSTEM_KEYS + ("t_max_kappa", "points", "tau_max_kappa", "tau_points", "theta"),
    "sweep": SYSTEM_KEYS + ("theta", "epsilon_over_kappa_values", "eta_over_kappa_values",
                            "kappa_over_omega_values", "theta_values", "observables",
                            "t_max_kappa", "points"),
}
SWEEP_OBSERVABLES = ("n_total", "n_casimir", "v1", "v2", "s1", "s2", "q", "g2_zero", "min_4v2", "q_swing")

# option name -> (type, default); None default means "not set"
OPTIONS: Dict[str, tuple] = {
    "kappa_over_2pi_hz": (float, None),
    "epsilon_over_kappa": (float, None),
    "eta_over_kappa": (float, 0.0),
    "kappa_over_omega": (float, None),
    "t_min_kappa": (float, None),
    "t_max_kappa": (float, 10.0),
    "points": (int, 1001),
    "tau_max_kappa": (float, 10.0),
    "tau_points": (int, 201),
    "theta": (float, math.pi / 2),
    "omega_max": (float, 3.0),
    "normalize_at": (float, None),
    "source": (str, "closed"),
    "cavity_length_m": (float, None),
    "crystal_length_m": (float, None),
    "crystal_index": (float, None),
    "epsilon_over_kappa_values": (str, None),
    "eta_over_kappa_values": (str, None),
    "kappa_over_omega_values": (str, None),
    "theta_values": (str, None),
    "observables": (str, ",".join(SWEEP_OBSERVABLES)),
    "jobs": (int, 1),
}


@dataclass
class RunConfig:
    subcommand: str
    system: Optional[SystemConfig]
    options: Dict[str, object]
    output: str = "-"
    plot_script: Optional[str] = None
    analogy: Optional[AnalogyParams] = None
    provenance: List[str] = field(default_factory=list)

    def opt(self, name):
        return self.options.get(name, OPTIONS[name][1])


def parse_config_text(text: str) -> Dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"config line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in OPTIONS:
            raise UnknownKey(f"config line {lineno}: unknown key {key!r}")
        out[key] = value
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="casimir-opa", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="key = value parameter file; flags override it")
        p.add_argument("-o", "--output", default="-", help="CSV path, '-' for stdout")
        p.add_argument("--plot-script", help="also write a matplotlib script for the CSV")
        for opt, (typ, _) in OPTIONS.items():
            p.add_argument("--" + opt.replace("_", "-"), dest=opt, type=typ, default=None)
    return parser


def _number_list(spec: str) -> List[float]:
    """``"a,b,c"`` or ``"start:stop:count"``."""
    spec = spec.strip()
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValidationError(f"range {spec!r} must be start:stop:count")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise ValidationError("range count must be >= 1")
        return [float(x) for x in np.linspace(start, stop, count)]
    return [float(x) for x in spec.split(",") if x.strip()]


def _system_from(options, allow_missing_kappa=False) -> SystemConfig:
    kappa_hz = options.get("kappa_over_2pi_hz")
    if kappa_hz is None:
        if not allow_missing_kappa:
            raise MissingRequired("kappa_over_2pi_hz is required")
        kappa_hz = 1e4
    eps = options.get("epsilon_over_kappa")
    if eps is None:
        if not allow_missing_kappa:
            raise MissingRequired("epsilon_over_kappa is required")
        eps = 0.0
    eta = options.get("eta_over_kappa", 0.0) or 0.0
    ko = options.get("kappa_over_omega")
    if eta > 0 and ko is None:
        raise MissingRequired("kappa_over_omega is required when eta_over_kappa > 0")
    return SystemConfig.from_ratios(kappa_hz, eps, eta, ko)


def parse_config(args: Sequence[str], file_text: Optional[str] = None) -> RunConfig:
    """Turn argument tokens (and optional config-file text) into a :class:`RunConfig`.

    File entries fill in anything the flags leave unset.
    """
    ns = _build_parser().parse_args(list(args))
    if file_text is None and ns.config:
        with open(ns.config, encoding="utf-8") as fh:
            file_text = fh.read()
    options: Dict[str, object] = {}
    if file_text:
        for key, raw in parse_config_text(file_text).items():
            typ = OPTIONS[key][0]
            try:
                options[key] = typ(raw)
            except ValueError as exc:
                raise ValidationError(f"bad value for {key}: {raw!r}") from exc
    for key in OPTIONS:
        value = getattr(ns, key)
        if value is not None:
            options[key] = value
    for key, (_, default) in OPTIONS.items():
        if default is not None:
            options.setdefault(key, default)

    cmd = ns.subcommand
    system = None
    analogy = None
    if cmd == "analogy":
        for key in ("cavity_length_m", "crystal_length_m", "crystal_index"):
            if options.get(key) is None:
                raise MissingRequired(f"{key} is required")
        analogy = AnalogyParams(options["cavity_length_m"], options["crystal_length_m"], options["crystal_index"])
        system = _system_from(options, allow_missing_kappa=True)
    elif cmd == "sweep":
        system = None
        if options.get("kappa_over_2pi_hz") is None:
            raise MissingRequired("kappa_over_2pi_hz is required")
    else:
        system = _system_from(options)

    if options["points"] < 2 or options["tau_points"] < 2:
        raise ValidationError("grids need at least 2 points")
    if options["source"] not in ("closed", "oracle"):
        raise ValidationError("source must be 'closed' or 'oracle'")
    if options["jobs"] < 1:
        raise ValidationError("jobs must be >= 1")
    if options["t_max_kappa"] <= 0 or options["tau_max_kappa"] <= 0:
        raise ValidationError("grid ranges must be positive")

    provenance = [f"casimir-opa {__version__}", f"subcommand = {cmd}"]
    for key in RELEVANT[cmd]:
        if options.get(key) is not None:
            provenance.append(f"{key} = {_fmt(options[key])}")
    return RunConfig(cmd, system, options, ns.output, ns.plot_script, analogy, provenance)


def _fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".12g")
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return str(x)


def _time_grid(rc: RunConfig, default_min: float = 0.0) -> np.ndarray:
    kappa = rc.system.kappa
    t_min = rc.opt("t_min_kappa")
    t_min = default_min if t_min is None else t_min
    t_max = rc.opt("t_max_kappa")
    if not 0 <= t_min < t_max:
        raise ValidationError("need 0 <= t_min_kappa < t_max_kappa")
    return np.linspace(t_min, t_max, rc.opt("points")) / kappa


def _photons(rc):
    c = rc.system
    t = _time_grid(rc)
    pb = analytics.photon_breakdown(c, t)
    header = ["kappa_t", "omega_t", "n_opa", "n_eta", "n_interference", "n_casimir", "n_total"]
    cols = [c.kappa * t, c.omega * t, pb.n_opa, pb.n_eta, pb.n_interference, pb.n_casimir, pb.n_total]
    return header, cols


def _squeezing(rc):
    c = rc.system
    t = _time_grid(rc)
    st = analytics.quadrature_variances(c, t)
    sq = analytics.squeezing(c, t)
    cv1, cv2 = analytics.casimir_variances(c, t)
    header = ["kappa_t", "omega_t", "v1", "v2", "s1", "s2", "v1_casimir", "v2_casimir"]
    return header, [c.kappa * t, c.omega * t, st.v1, st.v2, sq.s1, sq.s2, cv1, cv2]


def _g2(rc):
    c = rc.system
    t_ref = c.steady_time(rc.opt("theta"))
    tau = np.linspace(0.0, rc.opt("tau_max_kappa"), rc.opt("tau_points")) / c.kappa
    g = np.asarray(analytics.g2(c, t_ref, tau))
    rc.provenance.append(f"reference_time_s = {_fmt(t_ref)}")
    return ["kappa_tau", "omega_tau", "g2", "g2_normalized"], [c.kappa * tau, c.omega * tau, g, g / g[0]]


def _mandel(rc):
    c = rc.system
    t = _time_grid(rc, default_min=0.5)
    return ["kappa_t", "omega_t", "q"], [c.kappa * t, c.omega * t, analytics.mandel_Q(c, t)]


def _spectrum(rc):
    c = rc.system
    unit, axis = (c.omega, "omega_over_Omega") if c.modulated else (c.kappa, "omega_over_kappa")
    x = np.linspace(-rc.opt("omega_max"), rc.opt("omega_max"), rc.opt("points"))
    t_s = c.steady_time(rc.opt("theta"))
    series = spectrum.intracavity_spectrum(c, t_s, x * unit, source=rc.opt("source"))
    ref = rc.opt("normalize_at")
    if ref is None:
        ref = 1.0 if c.modulated else c.epsilon / c.kappa
    normed = spectrum.normalize(series, ref * unit)
    out = spectrum.output_spectrum(series, c.cavity)
    rc.provenance.append(f"t_s = {_fmt(t_s)}")
    rc.provenance.append(f"theta_s = {_fmt(series.theta_s)}")
    if rc.options.get("normalize_at") is None:
        rc.provenance.append(f"normalize_at = {_fmt(ref)}")
    return [axis, "s", "s_normalized", "s_out"], [x, series.values, normed.values, out.values]


def verification_reports(c: SystemConfig, t_max_kappa: float = 10.0, points: int = 1001,
                         tau_max_kappa: float = 10.0, tau_points: int = 201, theta: float = math.pi / 2):
    """Closed forms against the ODE oracle; one report per observable."""
    kappa = c.kappa
    t = np.linspace(0.0, t_max_kappa, points) / kappa
    settings = oracle.IntegratorSettings.default(c, t[-1])
    runs = oracle.integrate_moments(c, settings, t)
    st = analytics.quadrature_variances(c, t)
    pb = analytics.photon_breakdown(c, t)
    reports = [
        oracle.compare(pb.n_total, [r.n for r in runs], t, "n_total"),
        oracle.compare(st.v1, [r.v1 for r in runs], t, "v1"),
        oracle.compare(st.v2, [r.v2 for r in runs], t, "v2"),
    ]
    t_ref = c.steady_time(theta)
    tau = np.linspace(0.0, tau_max_kappa, tau_points) / kappa
    settings = oracle.IntegratorSettings.default(c, t_ref + tau[-1])
    reg = oracle.integrate_regression(c, settings, t_ref, tau)
    tt = analytics.two_time(c, t_ref, tau)
    reports.append(oracle.compare(tt.c_normal, [r.c_normal for r in reg], tau, "c_normal"))
    reports.append(oracle.compare(tt.c_anomalous, [r.c_anomalous for r in reg], tau, "c_anomalous"))
    return reports


def _verify(rc):
    reports = verification_reports(rc.system, rc.opt("t_max_kappa"), rc.opt("points"),
                                   rc.opt("tau_max_kappa"), rc.opt("tau_points"), rc.opt("theta"))
    rc.provenance.append(f"tolerance = {_fmt(VERIFY_TOL)}")
    header = ["quantity", "max_rel_error", "worst_time"]
    cols = [[r.quantity for r in reports], [r.max_rel_error for r in reports], [r.worst_time for r in reports]]
    failed = [r.quantity for r in reports if not r.max_rel_error < VERIFY_TOL]
    return header, cols, failed


def _analogy(rc):
    c, a = rc.system, rc.analogy
    if c.modulated:
        peak = float(mirror_displacement(a, c.pump, math.pi / (2.0 * c.omega)))
    else:
        peak = 0.0
    rows = [
        ("effective_length_m", a.effective_length),
        ("peak_displacement_m", peak),
        ("max_speed_ratio", max_mirror_speed_ratio(a, c.cavity)),
    ]
    return ["quantity", "value"], [[r[0] for r in rows], [r[1] for r in rows]]


def sweep_point(kappa_hz: float, eps: float, eta: float, ko: Optional[float], theta: float,
                observables: Sequence[str], t_max_kappa: float = 10.0, points: int = 1001):
    """Observables at the quasi-steady time for one grid point; ``None`` if above threshold."""
    try:
        c = SystemConfig.from_ratios(kappa_hz, eps, eta, ko if eta > 0 or ko else None)
    except ValidationError:
        return None
    t_s = c.steady_time(theta)
    values = []
    for name in observables:
        if name == "n_total":
            values.append(analytics.mean_photon_number(c, t_s))
        elif name == "n_casimir":
            values.append(analytics.photon_breakdown(c, t_s).n_casimir)
        elif name in ("v1", "v2"):
            values.append(getattr(analytics.quadrature_variances(c, t_s), name))
        elif name in ("s1", "s2"):
            values.append(getattr(analytics.squeezing(c, t_s), name))
        elif name == "q":
            values.append(analytics.mandel_Q(c, t_s))
        elif name == "g2_zero":
            values.append(analytics.g2(c, t_s, 0.0))
        elif name == "min_4v2":
            t = np.linspace(0.0, t_max_kappa, points) / c.kappa
            values.append(float(np.min(4.0 * np.asarray(analytics.quadrature_variances(c, t).v2))))
        elif name == "q_swing":
            if c.modulated:
                t = t_s + np.linspace(0.0, 2.0 * math.pi / c.omega, 201)
                q = np.asarray(analytics.mandel_Q(c, t))
                values.append(float(q.max() - q.min()))
            else:
                values.append(0.0)
        else:
            raise ValidationError(f"unknown observable {name!r}")
    return [float(v) for v in values]


def _sweep_axes(rc):
    base = {
        "epsilon_over_kappa": rc.opt("epsilon_over_kappa"),
        "eta_over_kappa": rc.opt("eta_over_kappa"),
        "kappa_over_omega": rc.opt("kappa_over_omega"),
        "theta": rc.opt("theta"),
    }
    axes = []
    for key in base:
        spec = rc.opt(key + "_values")
        if spec is not None:
            axes.append(_number_list(spec))
        elif base[key] is None:
            if key == "epsilon_over_kappa":
                raise MissingRequired("epsilon_over_kappa or epsilon_over_kappa_values is required")
            axes.append([None])
        else:
            axes.append([base[key]])
    return axes


def _sweep(rc):
    observables = [s.strip() for s in rc.opt("observables").split(",") if s.strip()]
    for name in observables:
        if name not in SWEEP_OBSERVABLES:
            raise ValidationError(f"unknown observable {name!r}")
    axes = _sweep_axes(rc)
    grid = list(itertools.product(*axes))
    if len(grid) > SWEEP_LIMIT:
        raise GridTooLarge(f"{len(grid)} sweep points exceed {SWEEP_LIMIT}")
    kappa_hz = rc.opt("kappa_over_2pi_hz")
    args = [(kappa_hz, e, h or 0.0, ko, th, observables, rc.opt("t_max_kappa"), rc.opt("points"))
            for e, h, ko, th in grid]
    jobs = rc.opt("jobs")
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_star, args))
    else:
        results = [_sweep_star(a) for a in args]
    rows, skipped = [], 0
    for (e, h, ko, th), res in zip(grid, results):
        if res is None:
            skipped += 1
            continue
        rows.append([e, h or 0.0, ko if ko is not None else float("nan"), th] + res)
    rc.provenance.append(f"skipped_above_threshold = {skipped}")
    header = ["epsilon_over_kappa", "eta_over_kappa", "kappa_over_omega", "theta"] + observables
    cols = [list(col) for col in zip(*rows)] if rows else [[] for _ in header]
    return header, cols


def _sweep_star(a):
    return sweep_point(*a)


HANDLERS = {
    "photons": _photons,
    "squeezing": _squeezing,
    "g2": _g2,
    "mandel": _mandel,
    "spectrum": _spectrum,
    "analogy": _analogy,
    "sweep": _sweep,
}


def render_csv(provenance: Sequence[str], header: Sequence[str], cols) -> str:
    """CSV text: ``#`` provenance lines, header, then rows at 12 significant digits."""
    buf = io.StringIO()
    for line in provenance:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    cols = [np.asarray(col).ravel() if not isinstance(col, list) else col for col in cols]
    n = len(cols[0]) if cols else 0
    for i in range(n):
        writer.writerow([_fmt(col[i]) if not isinstance(col[i], str) else col[i] for col in cols])
    return buf.getvalue()


def _write_atomic(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".casimir-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


PLOT_TEMPLATE = """\
import csv
import matplotlib.pyplot as plt

with open({path!r}, newline="") as fh:
    rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
header, data = rows[0], rows[1:]
x = [float(r[{xcol}]) for r in data]
for j in range({first}, len(header)):
    plt.plot(x, [float(r[j]) for r in data], label=header[j])
plt.xlabel(header[{xcol}])
plt.legend()
plt.show()
"""


def run(rc: RunConfig) -> int:
    """Execute a parsed configuration; returns the process exit status."""
    if rc.subcommand == "verify":
        header, cols, failed = _verify(rc)
        status = 3 if failed else 0
        if failed:
            rc.provenance.append("failed = " + " ".join(failed))
    else:
        header, cols = HANDLERS[rc.subcommand](rc)
        status = 0
    _write_atomic(rc.output, render_csv(rc.provenance, header, cols))
    if rc.plot_script and rc.output != "-" and rc.subcommand not in ("verify", "analogy"):
        xcol = 1 if rc.subcommand in ("photons", "squeezing", "g2", "mandel") and rc.system.modulated else 0
        first = 2 if rc.subcommand in ("photons", "squeezing", "g2", "mandel") else 1
        _write_atomic(rc.plot_script, PLOT_TEMPLATE.format(path=rc.output, xcol=xcol, first=first))
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        rc = parse_config(argv)
        return run(rc)
    except ValidationError as exc:
        print(f"casimir-opa: error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"casimir-opa: numerical error: {exc}", file=sys.stderr)
        return 3
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    except OSError as exc:
        print(f"casimir-opa: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
