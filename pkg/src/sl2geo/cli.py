"""Command-line front end.

Exit codes: 0 success, 2 invariant violation, 3 solver failure, 4 bad arguments.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field

from .errors import GeometryError, SolverError
from .geodesics import SOLVER_TOL, relative_chart_point, solve_geodesic_to
from .model_core import ModelPoint, is_interior
from .report import (
    EXTRA_COLUMNS,
    SUITES,
    TABLE3_Y2,
    TABLE4_Z3,
    TABLE_COLUMNS,
    meta_record,
    render,
    run_sweep,
    run_table3,
    run_table4,
    run_verify,
)
from .translation_curves import translation_arc_to
from .triangles import (
    Triangle,
    find_pi_sum_triangle,
    geodesic_triangle_report,
    translation_triangle_report,
)

EXIT_OK, EXIT_VIOLATION, EXIT_SOLVER, EXIT_ARGS = 0, 2, 3, 4

COMMANDS = ("geodesic", "translate", "triangle", "table3", "table4", "find-pi", "sweep", "verify")


class ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARGS, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    format: str = "csv"
    out: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ArgumentError(f"unknown command {self.command!r}")
        tol = self.params.get("tol")
        if tol is not None and not tol > 0:
            raise ArgumentError("--tol must be positive")
        for key in ("y2_values", "z3_values"):
            for v in self.params.get(key) or ():
                if not 0 < v < 1:
                    raise ArgumentError(f"table parameters must lie in (0, 1), got {v}")


def _point(text: str) -> ModelPoint:
    try:
        x, y, z = (float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y,z but got {text!r}")
    m = ModelPoint(x, y, z)
    if not is_interior(m):
        raise argparse.ArgumentTypeError(f"{text} is not an interior point")
    return m


def _positive_int(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sl2geo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", metavar="PATH", help="write here instead of standard output")
        return p

    origin = ModelPoint(0.0, 0.0, 0.0)
    for name, help_ in (("geodesic", "geodesic from P to Q"),
                        ("translate", "translation curve from P to Q")):
        p = common(sub.add_parser(name, help=help_))
        p.add_argument("--p", type=_point, default=origin, metavar="X,Y,Z")
        p.add_argument("--q", type=_point, required=True, metavar="X,Y,Z")

    p = common(sub.add_parser("triangle", help="angles and sides of one triangle"))
    p.add_argument("--a1", type=_point, default=origin, metavar="X,Y,Z")
    p.add_argument("--a2", type=_point, required=True, metavar="X,Y,Z")
    p.add_argument("--a3", type=_point, required=True, metavar="X,Y,Z")
    p.add_argument("--kind", choices=("geodesic", "translation"), default="geodesic")

    p = common(sub.add_parser("table3", help="fibre-like right triangles"))
    p.add_argument("--x3", type=float, default=0.2)
    p.add_argument("--y2", type=float, action="append", dest="y2_values")
    p.add_argument("--no-limits", action="store_true")

    p = common(sub.add_parser("table4", help="hyperbolic-like right triangles"))
    p.add_argument("--y2", type=float, default=0.5)
    p.add_argument("--z3", type=float, action="append", dest="z3_values")
    p.add_argument("--no-limits", action="store_true")

    p = common(sub.add_parser("find-pi", help="bisect for a geodesic triangle with angle sum pi"))
    p.add_argument("--y2", type=float, default=0.5)
    p.add_argument("--z3", type=float, default=0.5)
    p.add_argument("--x3", type=float, default=0.5)
    p.add_argument("--tol", type=float, default=1e-10)

    p = common(sub.add_parser("sweep", help="right-triangle grid over (0,1)^2"))
    p.add_argument("--family", choices=("fibre", "hyperbolic"), default="fibre")
    p.add_argument("--n", type=_positive_int, default=19)

    p = common(sub.add_parser("verify", help="run invariant suites"))
    p.add_argument("--suite", choices=("all", *SUITES), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=_positive_int, default=None)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    params = {k: v for k, v in vars(ns).items() if k not in ("command", "format", "out")}
    return RunConfig(ns.command, params, ns.format, ns.out)


def _geodesic_rows(cfg):
    p, q = cfg.params["p"], cfg.params["q"]
    local = relative_chart_point(p.lift(), q.lift())
    if not any(local.as_array()):
        return [{"s": 0.0}]
    arc = solve_geodesic_to(local)
    d = arc.direction
    return [{"s": arc.s, "alpha": d.alpha, "lambda": d.lam, "regime": d.regime.value,
             "residual": arc.residual}]


def _translate_rows(cfg):
    p, q = cfg.params["p"], cfg.params["q"]
    arc = translation_arc_to(relative_chart_point(p.lift(), q.lift()))
    d = arc.direction
    return [{"s": arc.s, "alpha": d.alpha, "lambda": d.lam, "regime": d.regime.value}]


def _triangle_rows(cfg):
    pr = cfg.params
    tri = Triangle.from_chart(pr["a1"], pr["a2"], pr["a3"])
    report = (geodesic_triangle_report if pr["kind"] == "geodesic" else translation_triangle_report)(tri)
    a1, a2, a3 = report.side_lengths
    return [{"omega1": report.omega1, "omega2": report.omega2, "omega3": report.omega3,
             "sum": report.angle_sum, "a1": a1, "a2": a2, "a3": a3,
             "kind": report.kind.value, "classification": report.classification.value}]


def _find_pi_rows(cfg):
    pr = cfg.params
    t, tri = find_pi_sum_triangle((0, pr["y2"], 0), (0, 0, pr["z3"]), (pr["x3"], 0, 0), tol=pr["tol"])
    report = geodesic_triangle_report(tri)
    x, y, z = tri.chart_points()[2]
    return [{"t": t, "x": x, "y": y, "z": z, "omega1": report.omega1, "omega2": report.omega2,
             "omega3": report.omega3, "sum": report.angle_sum,
             "deviation": report.angle_sum - math.pi}]


SIMPLE_COLUMNS = {
    "geodesic": ("s", "alpha", "lambda", "regime", "residual"),
    "translate": ("s", "alpha", "lambda", "regime"),
    "triangle": ("omega1", "omega2", "omega3", "sum", "a1", "a2", "a3", "kind", "classification"),
    "find-pi": ("t", "x", "y", "z", "omega1", "omega2", "omega3", "sum", "deviation"),
}


def execute(cfg: RunConfig) -> tuple[str, int]:
    """Run a configuration and return ``(rendered output, exit code)``."""
    pr = cfg.params
    meta = meta_record(command=cfg.command, tolerance=SOLVER_TOL)
    code = EXIT_OK
    if cfg.command == "geodesic":
        rows = _geodesic_rows(cfg)
    elif cfg.command == "translate":
        rows = _translate_rows(cfg)
    elif cfg.command == "triangle":
        rows = _triangle_rows(cfg)
    elif cfg.command == "find-pi":
        meta["tolerance"] = pr["tol"]
        rows = _find_pi_rows(cfg)
    elif cfg.command in ("table3", "table4"):
        if cfg.command == "table3":
            rows = run_table3(pr["x3"], pr["y2_values"] or TABLE3_Y2, not pr["no_limits"])
            columns = ("y2", *TABLE_COLUMNS, *EXTRA_COLUMNS)
            meta["x3"] = pr["x3"]
        else:
            rows = run_table4(pr["y2"], pr["z3_values"] or TABLE4_Z3, not pr["no_limits"])
            columns = ("z3", *TABLE_COLUMNS, *EXTRA_COLUMNS)
            meta["y2"] = pr["y2"]
        if any("error" in r for r in rows):
            code = EXIT_SOLVER
        return render(rows, columns, cfg.format, meta), code
    elif cfg.command == "sweep":
        rows = run_sweep(pr["family"], pr["n"])
        meta.update(family=pr["family"], n=pr["n"])
        columns = ("p", "q", "alpha23", "d_A2A3", "omega1", "omega2", "omega3", "sum", "error")
        if any("error" in r for r in rows):
            code = EXIT_SOLVER
        return render(rows, columns, cfg.format, meta), code
    else:
        results = run_verify(pr["suite"], pr["seed"], pr["n"])
        rows = [r.as_dict() for r in results]
        meta.update(seed=pr["seed"], n=pr["n"], tolerance={r.name: r.tolerance for r in results})
        columns = ("suite", "passed", "n", "worst_margin", "tolerance", "counterexample")
        if not all(r.passed for r in results):
            code = EXIT_VIOLATION
        return render(rows, columns, cfg.format, meta), code
    return render(rows, SIMPLE_COLUMNS[cfg.command], cfg.format, meta), code


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ArgumentError as e:
        parser.error(str(e))
    try:
        text, code = execute(cfg)
    except SolverError as e:
        print(f"solver failure: {e} (residual {e.residual:.3g})", file=sys.stderr)
        return EXIT_SOLVER
    except GeometryError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ARGS
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
