"""Command-line entry point: ``capchart {area,chart,table,optimize,heatmap}``.

Exit codes: 0 success, 2 invalid input, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import geometry as geo
from .capability import (
    as_sizing,
    cca_closed_form,
    cca_from_chart,
    chart,
    is_convex_chart,
    max_power_transfer,
    perfect_boundary,
    require_feasible,
)
from .errors import InvalidInputError, UnsupportedInputError
from .oracle import cca_montecarlo
from .optimizer import heatmap, optimize_convex, optimize_mpt, optimize_unconstrained

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_IO = 3

TABLE_DESIGNS = [
    ("Conventional", (1 / 3, 1 / 3, 1 / 3)),
    ("Optimal", None),  # searched at run time
    ("MPT optimal", (1 / 2, 1 / 3, 1 / 6)),
    ("Convex optimal", (0.4, 0.4, 0.2)),
    ("Two converters", (1 / 2, 1 / 2, 0.0)),
]


@dataclass(frozen=True)
class DesignReport:
    name: str
    alpha: tuple[float, float, float]

    @property
    def cca(self) -> float:
        return cca_closed_form(self.alpha)

    @property
    def mpt(self) -> float:
        return max_power_transfer(self.alpha)

    @property
    def convex(self) -> bool:
        return is_convex_chart(self.alpha)


def fmt(x: float) -> str:
    """Shortest round-trip decimal."""
    return repr(float(x))


def parse_alpha(text: str) -> tuple[float, float, float]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise InvalidInputError(f"cannot parse --alpha {text!r}; expected three comma-separated decimals")
    if len(vals) != 3:
        raise InvalidInputError(f"--alpha needs 3 values, got {len(vals)}")
    return vals


def cmd_area(alpha: Sequence[float], method: str = "closed", samples: int = 1_000_000, seed: int = 0) -> dict:
    if method == "mc":
        s = as_sizing(alpha)
        est = cca_montecarlo(s.alpha, samples, seed)
        return {"alpha": list(s.alpha), "method": method, "cca": est.area, "std_error": est.std_error}
    s = require_feasible(alpha)
    if method == "closed":
        cca = cca_closed_form(s)
    elif method == "union":
        cca = cca_from_chart(s)
    else:
        raise InvalidInputError(f"unknown method {method!r}")
    return {"alpha": list(s.alpha), "method": method, "cca": cca}


def chart_csv(alpha: Sequence[float]) -> str:
    """Boundary of the full chart, parallel-connection spokes included."""
    C = chart(alpha, all_configurations=True)
    buf = io.StringIO()
    buf.write("p1,p2,px,py\n")
    for x, y in C.vertices:
        p1, p2 = geo.plane_to_nominal_xy(x, y)
        buf.write(f"{fmt(p1)},{fmt(p2)},{fmt(x)},{fmt(y)}\n")
    return buf.getvalue()


def _path(vertices) -> str:
    if not vertices:
        return ""
    pts = " L ".join(f"{x:.6f} {y:.6f}" for x, y in vertices)
    return f"M {pts} Z"


def _to_coords(poly: geo.ChartPolygon, coords: str):
    if coords == "plane":
        return poly.vertices
    a = poly.as_array()
    if len(a) == 0:
        return ()
    p1, p2 = geo.plane_to_nominal_xy(a[:, 0], a[:, 1])
    return tuple(zip(p1.tolist(), p2.tolist()))


def chart_svg(alpha: Sequence[float], coords: str = "plane") -> str:
    C = chart(alpha, all_configurations=True)
    s = as_sizing(alpha)
    ticks = []
    for k in range(-7, 8):
        t = k / 10
        ticks.append(f'<line x1="{t:.1f}" y1="-0.01" x2="{t:.1f}" y2="0.01"/>')
        ticks.append(f'<line x1="-0.01" y1="{t:.1f}" x2="0.01" y2="{t:.1f}"/>')
    label = "p1, p2 (pu)" if coords == "nominal" else "px, py (pu)"
    a = ", ".join(f"{v:.4g}" for v in s.alpha)
    return "\n".join([
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="480" height="480" viewBox="-0.8 -0.8 1.6 1.6">',
        f"<title>Capability chart, alpha = ({a}), {label}</title>",
        '<g transform="scale(1,-1)">',
        '<g stroke="#888" stroke-width="0.002">',
        '<line x1="-0.8" y1="0" x2="0.8" y2="0"/>',
        '<line x1="0" y1="-0.8" x2="0" y2="0.8"/>',
        *ticks,
        "</g>",
        f'<path id="perfect" d="{_path(_to_coords(perfect_boundary(), coords))}" '
        'fill="none" stroke="#000" stroke-width="0.004" stroke-dasharray="0.02,0.015"/>',
        f'<path id="chart" d="{_path(_to_coords(C, coords))}" '
        'fill="#1f77b4" fill-opacity="0.35" stroke="#1f77b4" stroke-width="0.006"/>',
        "</g>",
        "</svg>",
        "",
    ])


def cmd_chart(alpha: Sequence[float], coords: str, fmt_: str, out: str | Path) -> Path:
    require_feasible(alpha)
    text = chart_csv(alpha) if fmt_ == "csv" else chart_svg(alpha, coords)
    out = Path(out)
    with open(out, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    return out


def table_reports(step: float = 0.002) -> list[DesignReport]:
    reports = []
    for name, alpha in TABLE_DESIGNS:
        if alpha is None:
            alpha = optimize_unconstrained(step).alpha.alpha
        reports.append(DesignReport(name, as_sizing(alpha).alpha))
    return reports


def cmd_table(step: float = 0.002) -> str:
    rows = [("Design", "Converter sizes alpha, pu", "CCA, pu^2", "MPT, pu", "Convex")]
    for r in table_reports(step):
        sizes = "(" + ", ".join(f"{v:.3f}" for v in r.alpha) + ")"
        rows.append((r.name, sizes, f"{r.cca:.3f}", f"{r.mpt:.3f}", "yes" if r.convex else "no"))
    P = perfect_boundary()
    a = P.as_array()
    p1, p2 = geo.plane_to_nominal_xy(a[:, 0], a[:, 1])
    mpt = max(abs(p1).max(), abs(p2).max(), abs(p1 + p2).max())
    rows.append(("Perfect converter", "na", f"{geo.polygon_area(P):.3f}", f"{mpt:.3f}",
                 "yes" if geo.is_convex(P) else "no"))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def cmd_optimize(constraint: str = "none", step: float = 0.002, tol: float = 1e-4) -> dict:
    if constraint == "none":
        res = optimize_unconstrained(step)
    elif constraint == "mpt":
        res = optimize_mpt(step)
    elif constraint == "convex":
        res = optimize_convex(tol)
    else:
        raise InvalidInputError(f"unknown constraint {constraint!r}")
    return {
        "constraint": constraint,
        "alpha": list(res.alpha.alpha),
        "cca": res.cca,
        "step": res.grid_step,
    }


def heatmap_csv(step: float) -> str:
    grid = heatmap(step)
    buf = io.StringIO()
    buf.write("alpha1,alpha2,cca\n")
    for a1, a2, c in grid.cells:
        buf.write(f"{fmt(a1)},{fmt(a2)},{fmt(c)}\n")
    return buf.getvalue()


def cmd_heatmap(step: float, out: str | Path) -> Path:
    text = heatmap_csv(step)
    out = Path(out)
    with open(out, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capchart",
        description="Capability chart areas of three-terminal multiplexed AC-DC-AC converters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("area", help="capability chart area of one sizing")
    p.add_argument("--alpha", required=True, help="three comma-separated ratings in pu")
    p.add_argument("--method", choices=["closed", "union", "mc"], default="closed")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("chart", help="export the chart boundary as CSV or SVG")
    p.add_argument("--alpha", required=True)
    p.add_argument("--coords", choices=["nominal", "plane"], default="plane")
    p.add_argument("--format", choices=["csv", "svg"], default="csv")
    p.add_argument("--out", required=True)

    p = sub.add_parser("table", help="reproduce the table of reference designs")
    p.add_argument("--step", type=float, default=0.002)

    p = sub.add_parser("optimize", help="search the sizing triangle")
    p.add_argument("--constraint", choices=["none", "mpt", "convex"], default="none")
    p.add_argument("--step", type=float, default=0.002)
    p.add_argument("--tol", type=float, default=1e-4, help="bisection tolerance for --constraint convex")

    p = sub.add_parser("heatmap", help="CCA over the sizing triangle as CSV")
    p.add_argument("--step", type=float, default=0.002)
    p.add_argument("--out", required=True)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "area":
            print(json.dumps(cmd_area(parse_alpha(args.alpha), args.method, args.samples, args.seed)))
        elif args.command == "chart":
            cmd_chart(parse_alpha(args.alpha), args.coords, args.format, args.out)
        elif args.command == "table":
            sys.stdout.write(cmd_table(args.step))
        elif args.command == "optimize":
            print(json.dumps(cmd_optimize(args.constraint, args.step, args.tol)))
        elif args.command == "heatmap":
            cmd_heatmap(args.step, args.out)
    except (InvalidInputError, UnsupportedInputError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
