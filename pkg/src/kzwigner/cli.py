"""Command-line front end: ``kz <command> [options]``.

Commands: qubit, qutrit, sweep, global, wigner, verify.  Reports go to stdout
or ``--output`` as text, JSON or CSV; floats carry 17 significant digits.
Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 integrator did
not reach ``--tolerance``.
"""
import argparse
import csv
import io
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .haar import SU2_RANGES, SU3_RANGES, phase_measure, su2_batch, su3_batch
from .indicators import (
    IntegratorConfig,
    global_indicator,
    kz_closed,
    kz_closed_qubit,
    kz_numeric,
    parse_degenerate_zeta,
)
from .integrate import chart_spectrum
from .states import (
    BlochState,
    NotAStateError,
    SimplexDomainError,
    diagonalize,
    in_simplex,
    qutrit_diagonal_state,
)
from .swkernel import KernelModuli, ModuliError, spectrum_from_moduli, stratum_of
from .wigner import wigner_batch

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CONVERGENCE = 0, 1, 2, 3
DEFAULT_TOLERANCE = {"quadrature": 1e-4, "mc": 1e-2}


class InputError(ValueError):
    pass


# -- formatting -----------------------------------------------------------------

def fmt(x, short=False):
    """17 significant digits, or the shortest round-trip form when ``short``."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x)) if short else "%.17g" % x
    return str(x)


def to_json(obj):
    """JSON text with every float printed as %.17g (non-finite values become null)."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return "%.17g" % obj if math.isfinite(obj) else "null"
    return json.dumps(str(obj))


def to_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


# -- argument parsing -------------------------------------------------------------

def parse_zeta(text):
    t = text.strip().lower().replace(" ", "")
    named = {"0": 0.0, "pi/3": math.pi / 3, "pi/6": math.pi / 6}
    if t in named:
        return named[t]
    try:
        return float(t)
    except ValueError as exc:
        raise InputError(f"cannot read zeta {text!r}; give radians or pi/3") from exc


def _floats(text, what):
    try:
        return [float(v) for v in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InputError(f"{what} must be a list of numbers, got {text!r}") from exc


def _matrix(text):
    try:
        raw = json.loads(text)
        m = np.array([[complex(v.replace(" ", "")) if isinstance(v, str) else v for v in row] for row in raw],
                     dtype=complex)
    except (ValueError, TypeError, AttributeError) as exc:
        raise InputError("--matrix must be a JSON list of rows; complex entries as strings like \"0.1-0.2j\"") from exc
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"--matrix must be square, got shape {m.shape}")
    return m


def _state_from_args(args, dim):
    """State from exactly one of --bloch, --matrix, (--xi3, --xi8) [or --r for qubits]."""
    given = {
        "bloch": args.bloch is not None,
        "matrix": args.matrix is not None,
        "simplex": getattr(args, "xi3", None) is not None or getattr(args, "xi8", None) is not None,
        "radius": getattr(args, "r", None) is not None,
    }
    chosen = [k for k, v in given.items() if v]
    if len(chosen) != 1:
        raise InputError("give exactly one state: --bloch, --matrix" + (", --r" if dim == 2 else ", --xi3/--xi8"))
    kind = chosen[0]
    if kind == "radius":
        if not 0 <= args.r <= 1:
            raise InputError(f"Bloch radius {args.r} outside [0, 1]")
        return BlochState(2, [0.0, 0.0, args.r]), {"r": args.r}
    if kind == "simplex":
        if args.xi3 is None or args.xi8 is None:
            raise InputError("--xi3 and --xi8 go together")
        if not in_simplex(args.xi3, args.xi8):
            raise InputError(f"(xi3, xi8) = ({args.xi3}, {args.xi8}) is outside the ordered simplex")
        return qutrit_diagonal_state(args.xi3, args.xi8), {"xi3": args.xi3, "xi8": args.xi8}
    if kind == "bloch":
        vec = _floats(args.bloch, "--bloch")
        if len(vec) != dim * dim - 1:
            raise InputError(f"--bloch needs {dim * dim - 1} components for N={dim}")
        return BlochState(dim, vec), {"bloch": vec}
    m = _matrix(args.matrix)
    if m.shape[0] != dim:
        raise InputError(f"--matrix must be {dim}x{dim}")
    spec = [[[z.real, z.imag] for z in row] for row in m.tolist()]
    return BlochState.from_matrix(m), {"matrix": spec}


def _zeta_from_args(args):
    if args.zeta is not None and args.zeta_frac is not None:
        raise InputError("--zeta and --zeta-frac are mutually exclusive")
    if args.zeta_frac is not None:
        return args.zeta_frac * math.pi / 3
    if args.zeta is None:
        raise InputError("--zeta or --zeta-frac is required")
    return parse_zeta(args.zeta)


def _config(args, method=None):
    method = method or args.method
    tol = args.tolerance if args.tolerance is not None else DEFAULT_TOLERANCE[method]
    if not tol > 0:
        raise InputError("--tolerance must be positive")
    try:
        return IntegratorConfig(
            method=method,
            nodes=args.nodes,
            samples=args.samples or 100_000,
            seed=args.seed,
            tolerance=tol,
            workers=args.workers,
            backend=args.backend,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _config_inputs(cfg):
    return {"nodes": cfg.nodes, "samples": cfg.samples if cfg.method == "mc" else None,
            "seed": cfg.seed, "tolerance": cfg.tolerance}


# -- reports ---------------------------------------------------------------------

class Report:
    """Scalar or tabular result plus the inputs that produced it."""

    def __init__(self, command, inputs, value=None, method=None, error_estimate=None,
                 details=None, header=None, rows=None, status=EXIT_OK):
        self.command = command
        self.inputs = {"command": command, **inputs}
        self.value = value
        self.method = method
        self.error_estimate = error_estimate
        self.details = details or {}
        self.header = header
        self.rows = rows
        self.status = status
        self.runtime_ms = None

    def as_dict(self):
        out = {"inputs": self.inputs}
        if self.rows is not None:
            out["columns"] = list(self.header)
            out["rows"] = [list(r) for r in self.rows]
        out.update(value=self.value, method=self.method, error_estimate=self.error_estimate,
                   runtime_ms=self.runtime_ms, version=__version__)
        if self.details:
            out["details"] = self.details
        return out

    def render(self, form):
        if form == "json":
            return to_json(self.as_dict()) + "\n"
        if self.rows is not None:
            if form == "csv":
                return to_csv(self.header, self.rows)
            return _text_table(self.header, self.rows)
        if form == "csv":
            return to_csv(["value", "method", "error_estimate", "runtime_ms"],
                          [[self.value, self.method, self.error_estimate, self.runtime_ms]])
        lines = [fmt(self.value, short=True)]
        if self.runtime_ms is not None:
            lines.append(f"runtime_ms {fmt(self.runtime_ms, short=True)}")
        return "\n".join(lines) + "\n"


def _text_table(header, rows):
    cells = [list(header)] + [[fmt(v, short=True) for v in r] for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(header))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n" for row in cells)


def _indicator_report(command, inputs, res, cfg=None):
    details = {"stratum": res.stratum, "converged": res.converged, "flags": list(res.flags)}
    status = EXIT_OK if res.converged else EXIT_CONVERGENCE
    if cfg is not None:
        inputs = {**inputs, **_config_inputs(cfg)}
    return Report(command, inputs, res.value, res.method, res.error_estimate, details, status=status)


# -- commands --------------------------------------------------------------------

def cmd_qubit(args):
    state, spec = _state_from_args(args, 2)
    inputs = {"state": spec, "method": args.method}
    if args.method == "closed":
        radius = float(np.linalg.norm(state.bloch))
        return Report("qubit", inputs, kz_closed_qubit(min(radius, 1.0)), "closed-form", 0.0,
                      {"stratum": "(12)", "converged": True, "flags": []})
    cfg = _config(args)
    return _indicator_report("qubit", inputs, kz_numeric(state, KernelModuli.qubit(), cfg), cfg)


def cmd_qutrit(args):
    state, spec = _state_from_args(args, 3)
    zeta = _zeta_from_args(args)
    inputs = {"state": spec, "zeta": zeta, "method": args.method}
    if args.method == "closed":
        point, _ = diagonalize(state.matrix)
        parse_degenerate_zeta(zeta)
        return _indicator_report("qutrit", inputs, kz_closed(point.xi3, point.xi8, zeta))
    cfg = _config(args)
    return _indicator_report("qutrit", inputs, kz_numeric(state, KernelModuli.qutrit(zeta), cfg), cfg)


def sweep_points(grid):
    """Rectangular (ξ₃, ξ₈) grid on the bounding box of the simplex, kept where ξ₃ ≤ √3 ξ₈."""
    if grid < 2:
        raise InputError("--grid must be at least 2")
    pts = []
    for i in range(grid):
        for j in range(grid):
            x = math.sqrt(3) / 2 * i / (grid - 1)
            y = 0.5 * j / (grid - 1)
            # same index test as exact arithmetic: x/√3 ≤ y  <=>  i ≤ j
            if i <= j:
                pts.append((x, y))
    return pts


def cmd_sweep(args):
    zeta = _zeta_from_args(args)
    cfg = _config(args)
    try:
        parse_degenerate_zeta(zeta)
        closed = True
    except ValueError:
        closed = False
    m = KernelModuli.qutrit(zeta)
    rows, status = [], EXIT_OK
    for x, y in sweep_points(args.grid):
        num = kz_numeric(qutrit_diagonal_state(x, y), m, cfg)
        if not num.converged:
            status = EXIT_CONVERGENCE
        exact = kz_closed(x, y, zeta).value if closed else None
        rows.append((x, y, exact, num.value, num.error_estimate))
    inputs = {"zeta": zeta, "grid": args.grid, "method": cfg.method, **_config_inputs(cfg)}
    return Report("sweep", inputs, method=num.method, header=("xi3", "xi8", "delta_closed", "delta_numeric", "err"),
                  rows=rows, status=status)


def cmd_global(args):
    zeta = _zeta_from_args(args)
    method = {"exact": "exact-region"}.get(args.method, args.method)
    samples = args.samples or 1_000_000
    res = global_indicator(zeta, args.measure, method, samples=samples, seed=args.seed)
    inputs = {"zeta": zeta, "measure": args.measure, "method": method}
    if method == "sampling":
        inputs.update(samples=samples, seed=args.seed)
    return Report("global", inputs, res.value, res.method, res.error_estimate, {"stratum": res.stratum})


def cmd_wigner(args):
    # no modulus means a qubit, whose kernel is unique
    dim = 2 if args.zeta is None and args.zeta_frac is None else 3
    if dim == 2 and (args.xi3 is not None or args.xi8 is not None):
        raise InputError("--xi3/--xi8 describe a qutrit; add --zeta")
    state, spec = _state_from_args(args, dim)
    if args.grid < 2:
        raise InputError("--grid must be at least 2")
    if dim == 2:
        m, ranges, batch, names = KernelModuli.qubit(), SU2_RANGES, su2_batch, ("alpha", "beta", "gamma")
        zeta = None
    else:
        zeta = _zeta_from_args(args)
        m, ranges, batch = KernelModuli.qutrit(zeta), SU3_RANGES, su3_batch
        names = tuple(SU3_RANGES)
    kernel = spectrum_from_moduli(m)
    stratum = stratum_of(kernel)
    active = phase_measure(stratum).active
    axes = [np.linspace(*ranges[a], args.grid) for a in active]
    mesh = [g.reshape(-1) for g in np.meshgrid(*axes, indexing="ij")]
    angles = np.zeros((mesh[0].size, len(names)))
    for a, col in zip(active, mesh):
        angles[:, names.index(a)] = col
    values = wigner_batch(state.matrix, chart_spectrum(stratum, kernel.pis), batch(angles))
    rows = [tuple(col[k] for col in mesh) + (values[k],) for k in range(values.size)]
    inputs = {"state": spec, "zeta": zeta, "grid": args.grid, "stratum": stratum}
    return Report("wigner", inputs, header=tuple(active) + ("W",), rows=rows)


def cmd_verify(args):
    from .verify import run_checks

    rows = run_checks(fast=args.fast, seed=args.seed)
    status = EXIT_OK if all(r[-1] for r in rows) else EXIT_FAILED
    return Report("verify", {"fast": args.fast, "seed": args.seed},
                  header=("check", "observed", "expected", "tolerance", "pass"), rows=rows, status=status)


# -- parser ----------------------------------------------------------------------

def _add_common(p):
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="record runtime_ms in the report")
    p.add_argument("--seed", type=int, default=0)


def _add_numeric(p, methods):
    p.add_argument("--method", choices=methods, default=methods[0])
    p.add_argument("--nodes", type=int, help="Gauss-Legendre nodes per angle (default 128, refined to tolerance)")
    p.add_argument("--samples", type=int, help="Monte-Carlo sample count")
    p.add_argument("--tolerance", type=float,
                   help="largest acceptable error estimate (default 1e-4 quadrature, 1e-2 mc)")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--backend", choices=("auto", "compiled", "python"), default="auto")


def _add_state(p, qubit):
    p.add_argument("--bloch", help="Bloch components, comma or space separated")
    p.add_argument("--matrix", help="density matrix as JSON rows")
    if qubit:
        p.add_argument("--r", type=float, help="Bloch radius")
    else:
        p.add_argument("--xi3", type=float)
        p.add_argument("--xi8", type=float)


def _add_zeta(p):
    p.add_argument("--zeta", help="kernel modulus in radians, or pi/3")
    p.add_argument("--zeta-frac", type=float, help="modulus as a fraction f of pi/3")


def build_parser():
    parser = argparse.ArgumentParser(prog="kz", description="Wigner negativity of qubits and qutrits.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qubit", help="negativity indicator of a qubit state")
    _add_state(p, qubit=True)
    _add_numeric(p, ("closed", "quadrature", "mc"))
    _add_common(p)
    p.set_defaults(run=cmd_qubit)

    p = sub.add_parser("qutrit", help="negativity indicator of a qutrit state")
    _add_state(p, qubit=False)
    _add_zeta(p)
    _add_numeric(p, ("closed", "quadrature", "mc"))
    _add_common(p)
    p.set_defaults(run=cmd_qutrit)

    p = sub.add_parser("sweep", help="closed and numeric indicator over a simplex grid (CSV)")
    _add_zeta(p)
    p.add_argument("--grid", type=int, default=11)
    _add_numeric(p, ("quadrature", "mc"))
    _add_common(p)
    p.set_defaults(run=cmd_sweep, format="csv")

    p = sub.add_parser("global", help="probability of a nonnegative Wigner function")
    _add_zeta(p)
    p.add_argument("--measure", choices=("euclidean", "hs", "hilbert-schmidt"), default="euclidean")
    p.add_argument("--method", choices=("exact", "exact-region", "sampling"), default="exact")
    p.add_argument("--samples", type=int, help="sampling draws (default 1e6)")
    _add_common(p)
    p.set_defaults(run=cmd_global)

    p = sub.add_parser("wigner", help="W over a grid of the active Euler angles (CSV)")
    _add_state(p, qubit=False)
    _add_zeta(p)
    p.add_argument("--grid", type=int, default=9, help="points per active angle")
    _add_common(p)
    p.set_defaults(run=cmd_wigner, format="csv")

    p = sub.add_parser("verify", help="run the invariant checks and print a table")
    p.add_argument("--fast", action="store_true", help="structural checks only")
    _add_common(p)
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        start = time.perf_counter()
        report = args.run(args)
        if args.timing:
            report.runtime_ms = (time.perf_counter() - start) * 1e3
    except (InputError, NotAStateError, SimplexDomainError, ModuliError, ValueError) as exc:
        print(f"kz: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = report.render(args.format)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"kz: error: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(text)
    if report.status == EXIT_CONVERGENCE:
        print("kz: error estimate above tolerance", file=sys.stderr)
    return report.status


if __name__ == "__main__":
    sys.exit(main())
