"""Table reproduction, parameter sweeps and invariant suites behind the CLI."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import ChartError, GeometryError, SolverError
from .geodesics import (
    closed_vs_integrated,
    geodesic_point,
    solve_geodesic_to,
)
from .isometries import apply, translation_inverse, translation_to
from .metric import metric_inhomogeneous, pullback_polar_metric
from .model_core import ModelPoint
from .sampling import (
    open_grid,
    random_chart_point,
    random_direction,
    random_lightlike_triangle_vertices,
    random_triangle_vertices,
)
from .triangles import (
    Triangle,
    antipodal_check,
    find_pi_sum_triangle,
    geodesic_triangle_report,
    lightlike_defect,
    translated_vertices,
    translation_triangle_report,
)

TABLE_COLUMNS = ("alpha23", "d_A2A3", "omega2", "omega3", "sum")
EXTRA_COLUMNS = ("kind", "check", "target", "deviation", "error")

TABLE3_Y2 = (1 / 1000, 1 / 3, 1 / 2, 3 / 4, 999 / 1000)
TABLE4_Z3 = (1 / 10, 1 / 3, 999 / 1000, (10**6 - 1) / 10**6)
LIMIT_PARAM = 1e-6

ODE_ALPHAS = (0.0, 0.2, math.pi / 4, 1.0, math.pi / 2 - 0.01)


def _right_triangle_row(param_name, param, a2, a3):
    row = {param_name: param, "kind": "row"}
    try:
        rep = geodesic_triangle_report(Triangle.from_chart((0, 0, 0), a2, a3))
    except (SolverError, GeometryError) as e:
        row["error"] = str(e)
        return row
    row.update(
        alpha23=abs(rep.directions[2, 3].alpha),
        d_A2A3=rep.side_lengths[0],
        omega1=rep.omega1,
        omega2=rep.omega2,
        omega3=rep.omega3,
        sum=rep.angle_sum,
    )
    return row


def _limit_row(row, label, check, target):
    row["kind"] = f"limit {label}"
    if check in row:
        row.update(check=check, target=target, deviation=row[check] - target)
    return row


def run_table3(x3: float = 0.2, y2_values=TABLE3_Y2, limits: bool = True) -> list[dict]:
    """Fibre-like right triangles ``E0, (0, y2, 0), (x3, 0, 0)``."""
    rows = [_right_triangle_row("y2", y2, (0, y2, 0), (x3, 0, 0)) for y2 in y2_values]
    if limits:
        lo, hi = LIMIT_PARAM, 1 - LIMIT_PARAM
        rows.insert(0, _limit_row(
            _right_triangle_row("y2", lo, (0, lo, 0), (x3, 0, 0)),
            "y2->0", "d_A2A3", math.atan(x3)))
        rows.append(_limit_row(
            _right_triangle_row("y2", hi, (0, hi, 0), (x3, 0, 0)),
            "y2->1", "sum", math.pi))
    return rows


def run_table4(y2: float = 0.5, z3_values=TABLE4_Z3, limits: bool = True) -> list[dict]:
    """Hyperbolic-like right triangles ``E0, (0, y2, 0), (0, 0, z3)``."""
    rows = [_right_triangle_row("z3", z3, (0, y2, 0), (0, 0, z3)) for z3 in z3_values]
    if limits:
        lo = LIMIT_PARAM
        rows.insert(0, _limit_row(
            _right_triangle_row("z3", lo, (0, y2, 0), (0, 0, lo)),
            "z3->0", "d_A2A3", math.atanh(y2)))
    return rows


def run_sweep(family: str, n: int) -> list[dict]:
    """Right-triangle families over an ``n x n`` grid in ``(0, 1)^2``."""
    rows = []
    for p in open_grid(n):
        for q in open_grid(n):
            if family == "fibre":
                a2, a3 = (0, q, 0), (p, 0, 0)
            elif family == "hyperbolic":
                a2, a3 = (0, p, 0), (0, 0, q)
            else:
                raise ValueError(f"unknown family {family!r}")
            row = _right_triangle_row("p", float(p), a2, a3)
            row["q"] = float(q)
            rows.append(row)
    return rows


# -- invariant suites --------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    passed: bool
    n: int
    #: Smallest slack against the tolerance; negative means violated.
    worst_margin: float
    tolerance: float
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "n": self.n,
            "worst_margin": self.worst_margin,
            "tolerance": self.tolerance,
            "counterexample": self.counterexample,
            **self.details,
        }


def _track(result_name, tol, items):
    """Fold ``(margin, instance)`` pairs into a SuiteResult."""
    worst, witness, count = math.inf, None, 0
    for margin, instance in items:
        count += 1
        if margin < worst:
            worst, witness = margin, instance
    passed = bool(worst >= 0)
    return SuiteResult(result_name, passed, count, worst, tol, None if passed else witness)


def _tri_dict(a2, a3):
    return {"A2": [float(v) for v in a2], "A3": [float(v) for v in a3]}


def suite_translation_anglesum(rng, n, tol=1e-9):
    def items():
        for _ in range(n):
            a2, a3 = random_triangle_vertices(rng)
            rep = translation_triangle_report(Triangle.from_chart((0, 0, 0), a2, a3))
            yield rep.angle_sum - math.pi + tol, _tri_dict(a2, a3)
    return _track("translation-anglesum", tol, items())


def suite_lightlike_equality(rng, n, tol=1e-7):
    def items():
        for _ in range(n):
            a2, a3 = random_lightlike_triangle_vertices(rng)
            rep = translation_triangle_report(Triangle.from_chart((0, 0, 0), a2, a3))
            yield tol - abs(rep.angle_sum - math.pi), _tri_dict(a2, a3)
    return _track("lightlike-equality", tol, items())


def suite_non_lightlike_strict(rng, n, min_defect=0.05):
    """Angle sums strictly above pi away from light-like planes; margin is the excess."""
    def items():
        made = 0
        while made < n:
            a2, a3 = random_triangle_vertices(rng)
            if abs(lightlike_defect(np.cross(a2, a3))) < min_defect:
                continue
            made += 1
            rep = translation_triangle_report(Triangle.from_chart((0, 0, 0), a2, a3))
            yield rep.angle_sum - math.pi, _tri_dict(a2, a3)
    res = _track("non-lightlike-strict", 0.0, items())
    res.passed = bool(res.worst_margin > 0)
    res.counterexample = None if res.passed else res.counterexample
    return res


def suite_ode_vs_closed(rng, n, tol=1e-6):
    alphas = list(ODE_ALPHAS[:n])
    if n > len(ODE_ALPHAS):
        alphas += list(rng.uniform(-math.pi / 2 + 0.01, math.pi / 2 - 0.01, n - len(ODE_ALPHAS)))
    dev = closed_vs_integrated(alphas, s_min=0.05, s_max=2.0)
    items = ((tol - d, {"alpha": float(a), "deviation": float(d)}) for a, d in zip(alphas, dev))
    res = _track("ode-vs-closed", tol, items)
    res.details["max_deviation"] = float(np.max(dev))
    return res


def _right_grid_items(family, n, check):
    for row in run_sweep(family, n):
        if "error" in row:
            yield -math.inf, row
        else:
            yield check(row), row


def suite_fibre_grid(rng, n, tol=1e-7, right_tol=1e-8):
    def check(row):
        return min(
            row["sum"] - math.pi + tol,
            right_tol - abs(row["omega1"] - math.pi / 2),
            right_tol - abs(row["omega3"] - (math.pi / 2 - row["alpha23"])),
        )
    return _track("fibre-grid", tol, _right_grid_items("fibre", n, check))


def suite_hyperbolic_grid(rng, n, tol=1e-7, right_tol=1e-8):
    def check(row):
        return min(math.pi + tol - row["sum"], right_tol - abs(row["omega1"] - math.pi / 2))
    return _track("hyperbolic-grid", tol, _right_grid_items("hyperbolic", n, check))


def suite_bvp_roundtrip(rng, n, tol=1e-9, s_max=2.0):
    def items():
        made = 0
        while made < n:
            d = random_direction(rng)
            s = rng.uniform(0.05, s_max)
            try:
                target = geodesic_point(s, d)
            except ChartError:
                continue
            made += 1
            try:
                arc = solve_geodesic_to(target)
                res = float(np.linalg.norm(geodesic_point(arc.s, arc.direction).as_array()
                                           - target.as_array()))
            except SolverError as e:
                res = e.residual
            yield tol - res, {"s": s, "alpha": d.alpha, "lambda": d.lam, "residual": res}
    return _track("bvp-roundtrip", tol, items())


def suite_vertex_closed_form(rng, n, tol=1e-12):
    def items():
        for _ in range(n):
            a2, a3 = random_triangle_vertices(rng)
            tri = Triangle.from_chart((0, 0, 0), a2, a3)
            worst = 0.0
            for i in (1, 2, 3):
                closed = translated_vertices(tri, i)
                Tinv = translation_inverse(tri.vertices[i - 1])
                for j in (1, 2, 3):
                    img = apply(Tinv, tri.vertices[j - 1]).as_array()[1:]
                    worst = max(worst, float(np.max(np.abs(img - closed[j - 1]))))
            yield tol - worst, _tri_dict(a2, a3)
    return _track("vertex-closed-form", tol, items())


def suite_antipodality(rng, n, tol=1e-10):
    def items():
        for _ in range(n):
            a2, a3 = random_triangle_vertices(rng)
            tri = Triangle.from_chart((0, 0, 0), a2, a3)
            a12, _, a32 = translated_vertices(tri, 2)
            a13, a23, _ = translated_vertices(tri, 3)
            ok = (antipodal_check(a2, a12, tol) and antipodal_check(a3, a13, tol)
                  and antipodal_check(a32, a23, tol))
            yield (tol if ok else -1.0), _tri_dict(a2, a3)
    return _track("antipodality", tol, items())


def suite_metric_pullback(rng, n, tol=1e-5):
    def items():
        made = 0
        while made < n:
            p = random_chart_point(rng)
            if np.hypot(p[1], p[2]) < 0.05:
                continue
            made += 1
            m = ModelPoint.from_array(p)
            err = float(np.max(np.abs(metric_inhomogeneous(m) - pullback_polar_metric(m))))
            yield tol - err, {"point": [float(v) for v in p], "error": err}
    return _track("metric-pullback", tol, items())


def suite_isometry_invariance(rng, n, tol=1e-7):
    def items():
        for _ in range(n):
            a2, a3 = random_triangle_vertices(rng)
            shift = translation_to(ModelPoint.from_array(0.5 * random_chart_point(rng)).lift())
            tri = Triangle.from_chart((0, 0, 0), a2, a3)
            moved = Triangle(*(apply(shift, P) for P in tri.vertices))
            base = geodesic_triangle_report(tri).angle_sum
            gap = abs(geodesic_triangle_report(moved).angle_sum - base)
            yield tol - gap, _tri_dict(a2, a3)
    return _track("isometry-invariance", tol, items())


def suite_pi_sum(rng, n, tol=1e-10):
    t, tri = find_pi_sum_triangle((0, 0.5, 0), (0, 0, 0.5), (0.5, 0, 0), tol=tol)
    total = geodesic_triangle_report(tri).angle_sum
    res = _track("pi-sum", tol, [(tol - abs(total - math.pi),
                                  {"t": t, "A3": [float(v) for v in tri.chart_points()[2]]})])
    res.details["t_E"] = t
    return res


SUITES = {
    "translation-anglesum": (suite_translation_anglesum, 1000),
    "lightlike-equality": (suite_lightlike_equality, 200),
    "non-lightlike-strict": (suite_non_lightlike_strict, 200),
    "ode-vs-closed": (suite_ode_vs_closed, 5),
    "fibre-grid": (suite_fibre_grid, 19),
    "hyperbolic-grid": (suite_hyperbolic_grid, 19),
    "bvp-roundtrip": (suite_bvp_roundtrip, 500),
    "vertex-closed-form": (suite_vertex_closed_form, 100),
    "antipodality": (suite_antipodality, 100),
    "metric-pullback": (suite_metric_pullback, 200),
    "isometry-invariance": (suite_isometry_invariance, 20),
    "pi-sum": (suite_pi_sum, 1),
}


def run_verify(suite: str, seed: int = 0, n: int | None = None) -> list[SuiteResult]:
    """Run one named invariant suite, or ``"all"``; deterministic for a fixed seed."""
    names = list(SUITES) if suite == "all" else [suite]
    results = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
        func, default_n = SUITES[name]
        count = default_n if n is None else n
        if count <= 0:
            raise ValueError("n must be positive")
        results.append(func(np.random.default_rng(seed), count))
    return results


# -- output --------------------------------------------------------------------


def meta_record(**extra) -> dict:
    import scipy

    return {
        "versions": {"sl2geo": __version__, "numpy": np.__version__, "scipy": scipy.__version__},
        **extra,
    }


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, (np.floating, np.integer)):
        return _json_value(v.item())
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return v


def _csv_value(v):
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".10g")
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(_json_value(v), sort_keys=True)
    return str(v)


def render(rows: list[dict], columns, fmt: str, meta: dict) -> str:
    if fmt == "json":
        doc = {"meta": _json_value(meta), "rows": [_json_value(r) for r in rows]}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_value(row.get(c)) for c in columns])
    return buf.getvalue()
