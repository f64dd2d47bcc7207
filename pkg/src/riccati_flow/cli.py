"""Config-driven scenario runner.

Every run reads one JSON file of flat, dot-namespaced keys (nested objects
are flattened), writes its artifacts into ``--out`` and prints a
``key=value`` summary on stdout.  Exit status: 0 success, 1 a tolerance
gate failed, 2 the configuration is invalid.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import closed_forms as cf
from .assembly import (FlowSolution, PolynomialPotential, RiccatiIrrotational,
                       TangentIrrotational, sample_grid, trkal_solution)
from .errors import AdmissibilityError, RiccatiFlowError
from .export import (TIMESERIES_COLUMNS, emit_timeseries, timeseries_table, write_csv,
                     write_fields_csv, write_vtk)
from .gamma_constraints import GammaExponential
from .residual_verify import convergence_study, verify
from .riccati_core import RiccatiState, integrate, radius_identity_residual, rk4
from .stencils import Grid
from .vorticity_fields import BeltramiABC, VorticityFieldSpec, shear_mode


class ConfigError(Exception):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


def flatten(obj: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in obj.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(flatten(v, key + "."))
        else:
            out[key] = v
    return out


class Config:
    """Typed, validating accessors over a flat key map."""

    def __init__(self, data: dict):
        self.data = flatten(data)

    @classmethod
    def load(cls, path) -> "Config":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError("--config", f"cannot read {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError("--config", f"invalid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("--config", "top level must be an object")
        return cls(data)

    def has(self, key):
        return key in self.data

    def number(self, key, default=None, *, positive=False, nonneg=False, nonzero=False) -> float:
        if key not in self.data:
            if default is None:
                raise ConfigError(key, "required")
            return float(default)
        v = self.data[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ConfigError(key, f"expected a finite number, got {v!r}")
        v = float(v)
        if positive and not v > 0:
            raise ConfigError(key, "must be positive")
        if nonneg and v < 0:
            raise ConfigError(key, "must be non-negative")
        if nonzero and v == 0:
            raise ConfigError(key, "must be nonzero")
        return v

    def integer(self, key, default, choices=None) -> int:
        v = self.data.get(key, default)
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(key, f"expected an integer, got {v!r}")
        if choices and v not in choices:
            raise ConfigError(key, f"must be one of {list(choices)}")
        return v

    def vector(self, key, default=None, n=3) -> tuple:
        v = self.data.get(key, default)
        if v is None:
            raise ConfigError(key, "required")
        if not isinstance(v, (list, tuple)) or len(v) != n or not all(
                isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x) for x in v):
            raise ConfigError(key, f"expected {n} finite numbers, got {v!r}")
        return tuple(float(x) for x in v)

    def number_list(self, key, default=None, *, nonneg=False) -> list:
        v = self.data.get(key, default)
        if v is None:
            raise ConfigError(key, "required")
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            v = [v]
        if not isinstance(v, list) or not v or not all(
                isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x) for x in v):
            raise ConfigError(key, f"expected a non-empty list of numbers, got {v!r}")
        if nonneg and any(x < 0 for x in v):
            raise ConfigError(key, "values must be non-negative")
        return [float(x) for x in v]

    def choice(self, key, default, options) -> str:
        v = self.data.get(key, default)
        if v not in options:
            raise ConfigError(key, f"must be one of {list(options)}, got {v!r}")
        return v

    def flag(self, key, default: bool) -> bool:
        v = self.data.get(key, default)
        if not isinstance(v, bool):
            raise ConfigError(key, f"expected true/false, got {v!r}")
        return v

    def strings(self, key, default, options) -> list:
        v = self.data.get(key, default)
        if isinstance(v, str):
            v = [v]
        if not isinstance(v, list) or any(x not in options for x in v):
            raise ConfigError(key, f"entries must be among {list(options)}, got {v!r}")
        return v


class Run:
    """Collects summary lines and artifacts for one invocation."""

    def __init__(self, out: Path, tolerance_scale: float, figures: bool):
        self.out = out
        self.scale = tolerance_scale
        self.figures = figures
        self.summary: list[tuple[str, object]] = []
        self.failed = False

    def put(self, key, value):
        self.summary.append((key, value))

    def gate(self, key, value, limit):
        limit = limit * self.scale
        ok = value <= limit
        self.put(f"gate.{key}", f"{'pass' if ok else 'FAIL'} value={value:.6g} limit={limit:.6g}")
        self.failed |= not ok
        return ok

    def path(self, name) -> Path:
        return self.out / name

    def emit(self):
        self.put("status", "fail" if self.failed else "pass")
        for k, v in self.summary:
            if isinstance(v, float):
                v = "%.17g" % v
            print(f"{k}={v}")


# -- flows ------------------------------------------------------------------

def build_grid(cfg: Config, order: int) -> Grid:
    dims = cfg.data.get("grid.dims", [21, 21, 21])
    if (not isinstance(dims, list) or len(dims) != 3
            or not all(isinstance(d, int) and not isinstance(d, bool) for d in dims)):
        raise ConfigError("grid.dims", f"expected 3 integers, got {dims!r}")
    if min(dims) < order + 1:
        raise ConfigError("grid.dims", f"{dims} too small for order-{order} stencils (need >= {order + 1})")
    return Grid(cfg.vector("grid.origin", [0.0, 0.0, 0.0]), cfg.number("grid.h", 0.05, positive=True), dims)


def build_abc(cfg: Config, nu: float, beta: float) -> BeltramiABC:
    kappa = cfg.number("abc.kappa", 1.0 / beta, nonzero=True)
    return BeltramiABC(cfg.number("abc.A", 1.0), cfg.number("abc.B", 1.0), cfg.number("abc.C", 1.0),
                       kappa, nu)


def build_flow(cfg: Config) -> tuple[str, FlowSolution]:
    kind = cfg.choice("flow.kind", "trkal", ("trkal", "assembled", "riccati"))
    nu = cfg.number("flow.nu", 0.1, positive=True)
    rho = cfg.number("flow.rho", 1.0, positive=True)
    beta = cfg.number("flow.beta", 1.0, nonzero=True)
    pressure_model = cfg.choice("flow.pressure", "bernoulli", ("bernoulli", "zero"))
    potential = PolynomialPotential(cfg.number("potential.constant", 0.0),
                                    cfg.vector("potential.linear", [0.0, 0.0, 0.0]))
    if kind == "trkal":
        abc = build_abc(cfg, nu, beta)
        if abs(abc.kappa * beta - 1.0) > 1e-12:
            raise ConfigError("abc.kappa", f"Trkal flow needs abc.kappa * flow.beta = 1 (got {abc.kappa * beta})")
        sol = trkal_solution(beta, abc, rho, potential)
    elif kind == "assembled":
        alpha = cfg.number("gamma.alpha", 1.0, nonzero=True)
        gamma = GammaExponential(cfg.number("gamma.gamma0", 1.0, nonzero=True),
                                 cfg.number("gamma.k", 2.0, nonzero=True), alpha)
        amp = cfg.number("shear.amplitude", 1.0, nonzero=True)
        spec = VorticityFieldSpec((shear_mode(cfg.number("shear.q", 1.0, nonzero=True),
                                              (-alpha * amp, amp, 0.0)),), nu)
        convention = cfg.choice("gamma.convention", "printed", ("printed", "corrected"))
        sol = FlowSolution(TangentIrrotational(gamma, spec, convention), beta, spec, potential,
                           nu, rho, pressure_model)
    else:
        abc = build_abc(cfg, nu, beta)
        spec = VorticityFieldSpec((abc,), nu)
        a, b = cfg.vector("riccati.state0", [0.0, 0.0], n=2)
        irr = RiccatiIrrotational(RiccatiState(a, b), cfg.number("riccati.gamma", 1.0),
                                  spec, cfg.number("riccati.dt", 1e-3, positive=True))
        sol = FlowSolution(irr, beta, spec, potential, nu, rho, pressure_model)
    if kind == "trkal" and pressure_model != "bernoulli":
        sol = FlowSolution(sol.irrotational, sol.beta, sol.vorticity, sol.potential, sol.nu, sol.rho,
                           pressure_model)
    return kind, sol


DEFAULT_GATES = {
    "trkal": {"momentum": 5e-4, "continuity": 1e-6},
    "riccati": {"rotation": 1e-5},
    "assembled": {},
}
GATEABLE = ("momentum", "continuity", "heat", "rotation", "curl_free", "potential_continuity")


def gates_for(cfg: Config, kind: str) -> dict:
    gates = dict(DEFAULT_GATES[kind])
    for name in GATEABLE:
        key = f"tolerance.{name}"
        if cfg.has(key):
            gates[name] = cfg.number(key, positive=True)
    return gates


def _time_list(cfg, key, default):
    return cfg.number_list(key, default, nonneg=True)


# -- commands ---------------------------------------------------------------

def cmd_simulate(cfg: Config, run: Run):
    a0, b0 = cfg.vector("riccati.state0", [1.0, 0.0], n=2)
    w = np.array(cfg.vector("riccati.w", [0.0, 0.0, 1.0]))
    decay = cfg.number("riccati.w_decay", 0.0, nonneg=True)
    gamma = cfg.number("riccati.gamma", 1.0)
    t0 = cfg.number("time.t0", 0.0)
    t1 = cfg.number("time.t1", 10.0)
    if not t1 > t0:
        raise ConfigError("time.t1", "must exceed time.t0")
    dt = cfg.number("time.dt", 1e-3, positive=True)
    bound = cfg.number("riccati.bound", 1e12, positive=True)

    w_of_t = lambda t: w * math.exp(-decay * (t - t0))
    traj = integrate(RiccatiState(a0, b0), w_of_t, (t0, t1), dt, bound)
    emit_timeseries(traj, gamma, run.path("trajectory.csv"))
    run.put("artifact.timeseries", run.path("trajectory.csv"))
    run.put("samples", len(traj.times))
    run.put("escaped", str(traj.escaped).lower())
    if traj.escaped:
        run.put("escape_time", traj.escape_time)
    run.put("final.t", float(traj.times[-1]))
    run.put("final.a", float(traj.a[-1]))
    run.put("final.b", float(traj.b[-1]))
    if len(traj.times) >= 3:
        run.put("radius_identity_residual", radius_identity_residual(traj, w_of_t))
    if run.figures:
        from .plots import plot_timeseries
        run.put("artifact.figure", plot_timeseries(timeseries_table(traj, gamma), run.path("trajectory.png")))


def _sample_times(t1, dt):
    n = int(round(t1 / dt))
    return np.linspace(0.0, t1, n + 1)


def cmd_closed_form(cfg: Config, run: Run):
    case = cfg.choice("closed_form.case", "tangent", ("tangent", "circle", "bernoulli", "algebraic", "elliptic"))
    t1 = cfg.number("time.t1", 1.0, positive=True)
    dt = cfg.number("time.dt", 1e-4, positive=True)
    tol = cfg.number("tolerance.closed_form", 1e-6, positive=True)
    gamma = cfg.number("riccati.gamma", 1.0)
    stride = _stride(cfg, 1)
    times = _sample_times(t1, dt)

    try:
        if case == "tangent":
            alpha = cfg.number("tangent.alpha", 1.0, nonzero=True)
            amp = cfg.number("tangent.wy_amplitude", 1.0)
            decay = cfg.number("tangent.wy_decay", 0.0, nonneg=True)
            conv = cfg.choice("tangent.convention", "corrected", ("corrected", "printed"))
            closed = lambda t: cf.tangent_decaying_state(alpha, amp, decay, t, conv)
            w_of_t = lambda t: (-alpha * amp * math.exp(-decay * t), amp * math.exp(-decay * t), 0.0)
            traj = integrate(RiccatiState(0.0, 0.0), w_of_t, (0.0, t1), dt)
            if decay > 0:
                lim = cf.tangent_decaying_limit(alpha, amp, decay, conv)
                U_lim = -gamma * 2 * lim.a / (1 + lim.a ** 2 + lim.b ** 2)
                run.put("limit.a", lim.a)
                run.put("limit.U", U_lim)
        elif case == "circle":
            wz0 = cfg.number("circle.wz", 1.0)
            wz_decay = cfg.number("circle.wz_decay", 0.0, nonneg=True)
            lam = cfg.number("circle.lambda", 0.0)
            phase0 = cfg.number("circle.phase0", 0.0)
            wz_int = lambda t: cf.decaying_integral(wz0, wz_decay, t)
            closed = lambda t: cf.circle_solution(wz_int, t, phase0)

            def w_of_t(t):
                s = closed(t)
                return (lam * s.a, lam * s.b, wz0 * math.exp(-wz_decay * t))
            traj = integrate(closed(0.0), w_of_t, (0.0, t1), dt)
        elif case == "bernoulli":
            A, B, D = (cfg.number(f"bernoulli.{k}") for k in ("A", "B", "D"))
            delta = cfg.number("bernoulli.delta")
            eps = cfg.number("bernoulli.epsilon", nonzero=True)
            a0 = cfg.number("bernoulli.a0")
            if abs(cf.bernoulli_condition(A, B, D, delta, eps)) > cf.CONST_CONDITION_TOL:
                raise ConfigError("bernoulli.D", "coefficients violate delta^2 A + epsilon delta B + epsilon^2 D = 0")
            closed = lambda t: RiccatiState(cf.bernoulli_case_solve(A, B, D, delta, eps, a0, t), 0.0)
            traj = rk4(lambda t, a: A * a * a + B * a + D, a0, (0.0, t1), dt)
            traj = _scalar_as_pair(traj)
        elif case == "algebraic":
            A = cfg.number("algebraic.A", nonzero=True)
            B = cfg.number("algebraic.B")
            D = B * B / (4.0 * A)
            closed = lambda t: RiccatiState(cf.algebraic_case_solution(lambda s: A, lambda s: B, t), 0.0)
            traj = _scalar_as_pair(rk4(lambda t, a: A * a * a + B * a + D, -B / (2 * A), (0.0, t1), dt))
        else:
            C = cfg.number("elliptic.C", 2.0, positive=True)
            coef = cfg.number("elliptic.R_coef", 0.0)
            pa = cfg.integer("elliptic.R_a_power", 1)
            ps = cfg.integer("elliptic.R_s_power", 2, choices=(0, 1, 2))
            wx = cfg.number("elliptic.wx", -1.0)
            a0 = cfg.number("elliptic.a0", 1.0)
            if not abs(a0) < C:
                raise ConfigError("elliptic.a0", "must satisfy |a0| < elliptic.C")
            R = lambda a, s: coef * a ** pa * s ** ps
            def closed(t):
                a = cf.elliptic_case_solve(C, R, lambda s: wx, a0, t)
                return RiccatiState(a, math.sqrt(max(0.0, C * C - a * a)))
            # each sample costs a quadrature inversion, so thin the comparison by default
            stride = _stride(cfg, max(1, len(times) // 50))
            traj = rk4(cf.elliptic_system_rhs(C, R, lambda s: wx),
                       np.array([a0, math.sqrt(C * C - a0 * a0)]), (0.0, t1), dt)
    except AdmissibilityError as exc:
        raise ConfigError("closed_form.case", str(exc)) from None

    if traj.escaped:
        run.put("oracle.escape_time", traj.escape_time)
    sample_t = traj.times[::stride]
    table = timeseries_table(closed, gamma, sample_t)
    write_csv(table, TIMESERIES_COLUMNS, run.path("timeseries.csv"))
    run.put("artifact.timeseries", run.path("timeseries.csv"))
    run.put("case", case)
    oracle = traj.states[::stride]
    # scalar cases carry no b component
    cols = slice(0, 1) if case in ("bernoulli", "algebraic") else slice(0, 2)
    err = float(np.max(np.abs(table[:, 1:3][:, cols] - oracle[:, cols])))
    run.put("final.a", float(table[-1, 1]))
    run.put("final.U", float(table[-1, 3]))
    run.gate("closed_form_vs_rk4", err, tol)
    if run.figures:
        from .plots import plot_timeseries
        run.put("artifact.figure", plot_timeseries(table, run.path("timeseries.png"), f"{case} case"))


def _stride(cfg, default):
    stride = cfg.integer("output.stride", default)
    if stride < 1:
        raise ConfigError("output.stride", "must be a positive integer")
    return stride


def _scalar_as_pair(traj):
    states = np.column_stack((traj.states, np.zeros_like(traj.states)))
    return type(traj)(traj.times, states, traj.escape_time, traj.bound)


def _flow_setup(cfg):
    order = cfg.integer("verify.order", 2, choices=(2, 4))
    cont_order = cfg.integer("verify.continuity_order", 4, choices=(2, 4))
    grid = build_grid(cfg, max(order, cont_order))
    kind, sol = build_flow(cfg)
    dt_fd = cfg.number("verify.dt_fd", 1e-4, positive=True) if cfg.has("verify.dt_fd") else None
    return kind, sol, grid, order, cont_order, dt_fd


def _check_times(times, dt_fd, key):
    for t in times:
        dt = 1e-4 * max(1.0, t) if dt_fd is None else dt_fd
        if t - dt < 0:
            raise ConfigError(key, f"time {t} too close to 0 for the time-difference step {dt}")


def cmd_verify(cfg: Config, run: Run):
    kind, sol, grid, order, cont_order, dt_fd = _flow_setup(cfg)
    times = _time_list(cfg, "verify.times", [1.0])
    _check_times(times, dt_fd, "verify.times")
    gates = gates_for(cfg, kind)
    write_vtk_out = cfg.flag("output.vtk", True)
    write_csv_out = cfg.flag("output.csv", False)

    run.put("flow.kind", kind)
    run.put("grid", grid.describe())
    rows, history = [], {name: [] for name in GATEABLE}
    for i, t in enumerate(times):
        try:
            report = verify(sol, grid, t, dt_fd, order, cont_order)
        except AdmissibilityError as exc:
            raise ConfigError("grid.origin", f"{exc} at {exc.location}") from None
        for key, value in report.as_dict().items():
            run.put(f"t{i}.{key}", value)
            name, rest = key.split(".", 1)
            rows.append((t, key, value))
        for name in GATEABLE:
            history[name].append(report.max_of(name))
        for note in report.notes:
            run.put(f"t{i}.note", note)
        for name, limit in gates.items():
            run.gate(f"t{i}.{name}", report.max_of(name), limit)
        _export_fields(sol, grid, t, i, run, write_vtk_out, write_csv_out)

    with open(run.path("residuals.csv"), "w") as fh:
        fh.write("t,residual,value\n")
        for t, key, value in rows:
            fh.write("%.17g,%s,%.17g\n" % (t, key, value))
    run.put("artifact.residuals", run.path("residuals.csv"))
    if run.figures:
        from .plots import plot_residual_history
        run.put("artifact.figure", plot_residual_history(times, history, run.path("residuals.png")))


def _export_fields(sol, grid, t, i, run, vtk_out, csv_out):
    if not (vtk_out or csv_out):
        return
    fields = sample_grid(sol, grid, t)
    if fields.failures:
        run.put(f"t{i}.inadmissible_points", len(fields.failures))
    if vtk_out:
        path = run.path(f"fields_{i:03d}.vtk")
        write_vtk(path, grid, fields.velocity, fields.pressure, f"t={t!r}")
        run.put(f"artifact.vtk.{i}", path)
    if csv_out:
        path = run.path(f"fields_{i:03d}.csv")
        write_fields_csv(path, grid, fields.velocity, fields.pressure)
        run.put(f"artifact.csv.{i}", path)


def cmd_convergence(cfg: Config, run: Run):
    order = cfg.integer("verify.order", 2, choices=(2, 4))
    cont_order = cfg.integer("verify.continuity_order", order, choices=(2, 4))
    kind, sol = build_flow(cfg)
    origin = cfg.vector("grid.origin", [0.0, 0.0, 0.0])
    extent = cfg.vector("convergence.extent", [1.0, 1.0, 1.0])
    hs = cfg.number_list("convergence.hs", [0.1, 0.05, 0.025])
    if len(hs) < 3:
        raise ConfigError("convergence.hs", "need at least 3 spacings")
    if any(h <= 0 for h in hs):
        raise ConfigError("convergence.hs", "spacings must be positive")
    grids = []
    for h in hs:
        dims = []
        for e in extent:
            n = e / h
            if abs(n - round(n)) > 1e-9 * max(1.0, n):
                raise ConfigError("convergence.hs", f"h={h} does not divide the extent {e}")
            dims.append(int(round(n)) + 1)
        if min(dims) < max(order, cont_order) + 1:
            raise ConfigError("convergence.hs", f"h={h} gives dims {dims}, too small for the stencil")
        grids.append(Grid(origin, h, dims))
    t = cfg.number("convergence.t", 1.0, nonneg=True)
    dt_fd = cfg.number("verify.dt_fd", 1e-4, positive=True) if cfg.has("verify.dt_fd") else None
    _check_times([t], dt_fd, "convergence.t")
    gated = cfg.strings("convergence.gated", ["momentum"], GATEABLE)
    lo = cfg.number("convergence.order_min", 1.8)
    hi = cfg.number("convergence.order_max", 2.2)

    try:
        results = convergence_study(sol, grids, t, dt_fd, order, cont_order)
    except AdmissibilityError as exc:
        raise ConfigError("grid.origin", f"{exc} at {exc.location}") from None
    rows = []
    for name, res in results.items():
        run.put(f"order.{name}", res.order if isinstance(res.order, str) else float(res.order))
        for h, v in zip(res.hs, res.values):
            rows.append((name, h, v))
    for name in gated:
        res = results[name]
        ok = res.is_exact or lo <= res.order <= hi
        shown = res.order if res.is_exact else f"{res.order:.4f}"
        run.put(f"gate.order.{name}", f"{'pass' if ok else 'FAIL'} order={shown} range=[{lo}, {hi}]")
        run.failed |= not ok
    with open(run.path("convergence.csv"), "w") as fh:
        fh.write("residual,h,max\n")
        for name, h, v in rows:
            fh.write("%s,%.17g,%.17g\n" % (name, h, v))
    run.put("artifact.convergence", run.path("convergence.csv"))
    if run.figures:
        from .plots import plot_convergence
        run.put("artifact.figure", plot_convergence(results, run.path("convergence.png"), kind))


def cmd_export(cfg: Config, run: Run):
    grid = build_grid(cfg, 0)
    _, sol = build_flow(cfg)
    times = _time_list(cfg, "export.times", [0.0])
    formats = cfg.strings("export.format", ["vtk", "csv"], ("vtk", "csv"))
    for i, t in enumerate(times):
        _export_fields(sol, grid, t, i, run, "vtk" in formats, "csv" in formats)
        run.put(f"t{i}", t)


COMMANDS = {
    "simulate": cmd_simulate,
    "closed-form": cmd_closed_form,
    "verify": cmd_verify,
    "convergence": cmd_convergence,
    "export": cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="riccati-flow", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, help="JSON scenario file")
    parser.add_argument("--out", default=".", help="output directory (created if missing)")
    parser.add_argument("--tolerance-scale", type=float, default=1.0,
                        help="multiply every tolerance gate by this factor")
    parser.add_argument("--figures", action="store_true",
                        help="also render PNG figures next to the CSV outputs")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if not (args.tolerance_scale > 0 and math.isfinite(args.tolerance_scale)):
        print("error: --tolerance-scale must be a positive number", file=sys.stderr)
        return 2
    out = Path(args.out)
    try:
        cfg = Config.load(args.config)
        out.mkdir(parents=True, exist_ok=True)
        run = Run(out, args.tolerance_scale, args.figures)
        COMMANDS[args.command](cfg, run)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except RiccatiFlowError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    run.emit()
    return 1 if run.failed else 0


if __name__ == "__main__":
    sys.exit(main())
