"""Command-line front end: parameter sweeps, bound checks and optimum reports.

Exit codes: 0 success, 1 bound violation or failed --check, 2 usage error.
"""
import argparse
import io
import itertools
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .channels import ModelParams, model_state
from .correlations import lqu_closed, lqu_numeric, msc_bruteforce, msc_model_closed, msc_xstate
from .errors import NoOptimum, RelMetroError
from .qfi import (
    grid_argmax,
    model_family,
    optimal_p,
    optimal_p_q0,
    optimal_q,
    optimal_r,
    optimal_value,
    qfi_numeric,
    qfi_phase_closed,
    qfi_weight_closed,
    weight_qfi_array,
)
from .states import XState

VARIABLES = ("theta", "phi", "p", "q", "r")
QUANTITIES = ("F_theta", "F_phi", "LQU", "MSC", "success_prob")
BOUND_TOL = 1e-9
CHECK_TOL = 1e-6
GRID_STEP = 1e-4

_DOMAINS = {
    "theta": (0.0, math.pi, True),
    "phi": (0.0, 2 * math.pi, True),
    "p": (0.0, 1.0, False),
    "q": (0.0, 1.0, False),
    "r": (0.0, math.pi / 4, True),
}


class UsageError(RelMetroError):
    pass


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    steps: int
    fixed: dict = field(default_factory=dict)
    quantities: tuple = ("F_theta", "F_phi")

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise UsageError(f"unknown variable {self.variable!r}")
        if self.steps < 2:
            raise UsageError("steps must be >= 2")
        if not self.start < self.stop:
            raise UsageError("start must be < stop")
        lo, hi, closed = _DOMAINS[self.variable]
        if self.start < lo or self.stop > hi or (not closed and self.stop >= hi):
            raise UsageError(f"[{self.start}, {self.stop}] outside the domain of {self.variable}")
        bad = [x for x in self.quantities if x not in QUANTITIES]
        if bad or not self.quantities:
            raise UsageError(f"unknown quantities {bad}; choose from {QUANTITIES}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)

    def params_at(self, x: float) -> ModelParams:
        kw = {k: float(v) for k, v in self.fixed.items() if k in VARIABLES}
        kw[self.variable] = float(x)
        return ModelParams(**kw)


def _safe(fn, *args) -> float:
    try:
        v = float(fn(*args))
    except (RelMetroError, ZeroDivisionError, FloatingPointError):
        return math.nan
    return v if math.isfinite(v) else math.nan


def quantity(name: str, params: ModelParams) -> float:
    if name == "F_theta":
        return _safe(qfi_weight_closed, params)
    if name == "F_phi":
        return _safe(qfi_phase_closed, params)
    try:
        st = model_state(params, check=False)
    except RelMetroError:
        return math.nan
    if name == "LQU":
        return _safe(lqu_numeric, st.rho)
    if name == "MSC":
        return _safe(lambda: msc_xstate(XState.from_matrix(st.rho)))
    if name == "success_prob":
        return st.success_probability
    raise UsageError(f"unknown quantity {name!r}")


def numeric_check(name: str, params: ModelParams) -> float:
    """Independent spectral-engine value for F_theta / F_phi."""
    wrt = {"F_theta": "theta", "F_phi": "phi"}[name]
    return qfi_numeric(model_family(params, wrt), getattr(params, wrt)).value


def sweep_rows(spec: SweepSpec):
    """Yield (x, [values...]) in grid order."""
    for x in spec.grid():
        params = spec.params_at(x)
        yield float(x), [quantity(name, params) for name in spec.quantities]


def fmt(v: float) -> str:
    return "nan" if not math.isfinite(v) else f"{v:.17g}"


def write_sweep(spec: SweepSpec, out, check: bool = False) -> int:
    """Write the sweep as CSV; returns the number of --check failures."""
    out.write(",".join((spec.variable,) + tuple(spec.quantities)) + "\n")
    failures = 0
    for x, values in sweep_rows(spec):
        out.write(",".join(fmt(v) for v in [x] + values) + "\n")
        if not check:
            continue
        params = spec.params_at(x)
        for name, v in zip(spec.quantities, values):
            if name not in ("F_theta", "F_phi") or not math.isfinite(v):
                continue
            ref = numeric_check(name, params)
            if abs(ref - v) > CHECK_TOL:
                failures += 1
                print(f"check failed: {name} at {spec.variable}={x!r}: closed {v!r} numeric {ref!r}", file=sys.stderr)
    return failures


@dataclass
class BoundsReport:
    points: int
    lqu_violation: float
    lqu_worst: tuple
    msc_violation: float
    msc_worst: tuple

    @property
    def ok(self) -> bool:
        return self.lqu_violation <= BOUND_TOL and self.msc_violation <= BOUND_TOL


def bounds_grid(resolution: int):
    """theta excludes the singular endpoints; p, q exclude 1."""
    if resolution < 3:
        raise UsageError("grid resolution must be >= 3")
    n = resolution
    return (
        np.linspace(0, np.pi, n + 2)[1:-1],
        np.linspace(0, 2 * np.pi, n),
        np.linspace(0, 1, n + 1)[:-1],
        np.linspace(0, 1, n + 1)[:-1],
        np.linspace(0, np.pi / 4, n),
    )


def verify_bounds(resolution: int, phase_offset: float = 0.0) -> BoundsReport:
    """Max violations of LQU <= F_phi and F_phi <= MSC over the full parameter grid.

    ``phase_offset`` is added to F_phi; it exists only to exercise the
    failure path.
    """
    lqu_v = msc_v = -math.inf
    lqu_w = msc_w = ()
    count = 0
    for th, ph, p, q, r in itertools.product(*bounds_grid(resolution)):
        params = ModelParams(th, ph, p, q, r)
        rho = model_state(params, check=False).rho
        f = qfi_phase_closed(params) + phase_offset
        u = lqu_numeric(rho)
        m = msc_xstate(XState.from_matrix(rho))
        count += 1
        if u - f > lqu_v:
            lqu_v, lqu_w = u - f, (float(th), float(ph), float(p), float(q), float(r))
        if f - m > msc_v:
            msc_v, msc_w = f - m, (float(th), float(ph), float(p), float(q), float(r))
    return BoundsReport(count, lqu_v, lqu_w, msc_v, msc_w)


@dataclass
class OptimalReport:
    mode: str
    closed: float  # nan when no physical optimum
    grid: float
    f_closed: float
    f_grid: float
    f_target: float

    @property
    def difference(self) -> float:
        return self.closed - self.grid


def optimal_report(mode: str, theta: float, p: float = 0.0, q: float = 0.0, r: float = 0.0) -> OptimalReport:
    """Closed-form optimum against a brute-force grid argmax of F_theta."""
    ModelParams(theta, 0.0, p, q, r)
    if mode == "r":
        closed = optimal_r(theta, p, q)
        grid, f_grid = grid_argmax(lambda x: weight_qfi_array(theta, p, q, x), 0.0, np.pi / 4, GRID_STEP)
        f_at = (lambda x: weight_qfi_array(theta, p, q, x))
    elif mode == "p":
        if q == 0:
            try:
                closed = optimal_p_q0(theta)[0]
            except NoOptimum:
                closed = None
        else:
            closed = optimal_p(q, r, theta) if np.pi / 2 < theta < np.pi else None
        grid, f_grid = grid_argmax(lambda x: weight_qfi_array(theta, x, q, r), 0.0, 1 - GRID_STEP, GRID_STEP)
        f_at = (lambda x: weight_qfi_array(theta, x, q, r))
    elif mode == "q":
        closed = optimal_q(p, r, theta) if 0 < theta < np.pi / 2 else None
        grid, f_grid = grid_argmax(lambda x: weight_qfi_array(theta, p, x, r), 0.0, 1 - GRID_STEP, GRID_STEP)
        f_at = (lambda x: weight_qfi_array(theta, p, x, r))
    else:
        raise UsageError(f"mode must be p, q or r, not {mode!r}")
    if closed is None:
        return OptimalReport(mode, math.nan, grid, math.nan, f_grid, optimal_value(theta))
    return OptimalReport(mode, closed, grid, float(f_at(closed)), f_grid, optimal_value(theta))


def _params_from(args) -> ModelParams:
    return ModelParams(args.theta, args.phi, args.p, args.q, args.r)


def _open_out(path):
    if path in (None, "-", "stdout"):
        return sys.stdout, False
    return open(path, "w", newline="\n"), True


def _add_param_flags(sp, theta=math.pi / 2):
    sp.add_argument("--theta", type=float, default=theta, help="weight parameter (rad)")
    sp.add_argument("--phi", type=float, default=0.0, help="phase parameter (rad)")
    sp.add_argument("--p", type=float, default=0.0, help="weak measurement strength")
    sp.add_argument("--q", type=float, default=0.0, help="reversal strength")
    sp.add_argument("--r", type=float, default=0.0, help="acceleration parameter (rad)")
    sp.add_argument("--out", default="stdout", help="output path or 'stdout'")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="relmetro", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sweep", help="CSV sweep of one parameter")
    _add_param_flags(sp)
    sp.add_argument("--var", required=True, choices=VARIABLES)
    sp.add_argument("--start", type=float, required=True)
    sp.add_argument("--stop", type=float, required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--quantities", default="F_theta,F_phi",
                    help=f"comma-separated subset of {','.join(QUANTITIES)}")
    sp.add_argument("--check", action="store_true", help="recompute F values with the numeric engine")

    sp = sub.add_parser("verify-bounds", help="check LQU <= F_phi <= MSC on a grid")
    sp.add_argument("--grid", type=int, default=5)
    sp.add_argument("--out", default="stdout")
    sp.add_argument("--fphi-offset", type=float, default=0.0, help=argparse.SUPPRESS)

    sp = sub.add_parser("optimal", help="closed-form vs grid-search optimum of F_theta")
    _add_param_flags(sp)
    sp.add_argument("--mode", required=True, choices=("p", "q", "r"))

    sp = sub.add_parser("qfi", help="F_theta and F_phi at one point")
    _add_param_flags(sp)
    sp.add_argument("--check", action="store_true")

    sp = sub.add_parser("lqu", help="local quantum uncertainty at one point")
    _add_param_flags(sp)

    sp = sub.add_parser("msc", help="maximal steered coherence at one point")
    _add_param_flags(sp)
    sp.add_argument("--n-dirs", type=int, default=0, help="also run the brute-force search")
    return ap


def _run(args, out) -> int:
    if args.command == "sweep":
        fixed = {k: getattr(args, k) for k in VARIABLES if k != args.var}
        spec = SweepSpec(args.var, args.start, args.stop, args.steps, fixed,
                         tuple(x.strip() for x in args.quantities.split(",") if x.strip()))
        spec.params_at(spec.start), spec.params_at(spec.stop)
        return 1 if write_sweep(spec, out, args.check) else 0

    if args.command == "verify-bounds":
        rep = verify_bounds(args.grid, args.fphi_offset)
        out.write(f"points {rep.points}\n")
        out.write(f"max violation LQU <= F_phi: {fmt(rep.lqu_violation)} at {rep.lqu_worst}\n")
        out.write(f"max violation F_phi <= MSC: {fmt(rep.msc_violation)} at {rep.msc_worst}\n")
        if not rep.ok:
            bad = rep.lqu_worst if rep.lqu_violation > BOUND_TOL else rep.msc_worst
            out.write("FAIL (theta, phi, p, q, r) = " + ", ".join(fmt(v) for v in bad) + "\n")
            return 1
        out.write("OK\n")
        return 0

    params = _params_from(args)
    if args.command == "optimal":
        rep = optimal_report(args.mode, params.theta, params.p, params.q, params.r)
        closed = "none" if math.isnan(rep.closed) else fmt(rep.closed)
        out.write(f"mode {rep.mode}\n")
        out.write(f"closed_form {closed}\n")
        out.write(f"grid_search {fmt(rep.grid)}\n")
        out.write(f"difference {fmt(rep.difference)}\n")
        out.write(f"F_at_optimum {fmt(rep.f_closed)}\n")
        out.write(f"F_grid_max {fmt(rep.f_grid)}\n")
        out.write(f"one_over_sin2_theta {fmt(rep.f_target)}\n")
        return 0

    if args.command == "qfi":
        status = 0
        for name in ("F_theta", "F_phi"):
            v = quantity(name, params)
            line = f"{name} {fmt(v)}"
            if args.check and math.isfinite(v):
                ref = numeric_check(name, params)
                line += f" numeric {fmt(ref)}"
                if abs(ref - v) > CHECK_TOL:
                    status = 1
            out.write(line + "\n")
        return status

    if args.command == "lqu":
        rho = model_state(params).rho
        out.write(f"LQU_numeric {fmt(lqu_numeric(rho))}\n")
        out.write(f"LQU_closed {fmt(_safe(lqu_closed, params))}\n")
        return 0

    if args.command == "msc":
        rho = model_state(params).rho
        out.write(f"MSC_closed {fmt(msc_model_closed(params.q, params.r))}\n")
        out.write(f"MSC_xstate {fmt(_safe(lambda: msc_xstate(XState.from_matrix(rho))))}\n")
        if args.n_dirs:
            out.write(f"MSC_bruteforce {fmt(msc_bruteforce(rho, args.n_dirs))}\n")
        return 0
    raise UsageError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, close = _open_out(getattr(args, "out", None))
    except OSError as exc:
        print(f"relmetro: cannot open output: {exc}", file=sys.stderr)
        return 2
    buf = io.StringIO()
    try:
        code = _run(args, buf)
    except (RelMetroError, ValueError) as exc:
        print(f"relmetro: error: {exc}", file=sys.stderr)
        if close:
            out.close()
        return 2
    out.write(buf.getvalue())
    if close:
        out.close()
    return code


if __name__ == "__main__":
    sys.exit(main())
