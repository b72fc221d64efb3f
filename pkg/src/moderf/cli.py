"""Command-line interface.

Subcommands: eval (pointwise function values), solve (compute the modified
error function for one delta), delta0 (the contraction-range endpoint and
its constants), figure (reproduce the data behind the survey figures as CSV
plus a rendered PNG), and verify (run the named verification suites).

All delimited output is UTF-8 CSV with '#'-prefixed comment lines echoing
the effective configuration and reals serialized to 17 significant digits,
so identical invocations are byte-identical.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 solver error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import analysis, picard, series, shooting, specfun
from .exceptions import ModerfError
from .grid import grid_nodes

FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4a", "fig4b", "fig5")
FAMILY_DELTAS = (-0.9, -0.5, 0.0, 0.5, 1.0, 2.0)
PAIR_DELTAS = (-0.9, -0.5, 0.5, 1.0, 1.5, 2.0)


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (tuple, list)):
        return "(" + " ".join(_fmt(v) for v in value) + ")"
    return format(float(value), ".17g")


@dataclass
class OutputTable:
    """Column-oriented table with a provenance comment header."""

    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    meta: dict[str, object] = field(default_factory=dict)

    def add(self, *row):
        if len(row) != len(self.columns):
            raise ValueError(f"row arity {len(row)} != {len(self.columns)} columns")
        self.rows.append(row)

    def to_csv(self) -> str:
        lines = [f"# {key} = {_fmt(val)}" for key, val in self.meta.items()]
        lines.append(",".join(self.columns))
        for row in self.rows:
            lines.append(",".join(_fmt(v) for v in row))
        return "\n".join(lines) + "\n"

    def write(self, path: Path):
        path.write_text(self.to_csv(), encoding="utf-8", newline="\n")


def _config_meta(cfg) -> dict[str, object]:
    return {name: getattr(cfg, name) for name in cfg.__dataclass_fields__}


def _parse_x_list(text: str) -> list[float]:
    try:
        xs = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid --x list: {text!r}")
    if not xs:
        raise argparse.ArgumentTypeError("--x list is empty")
    return xs


def cmd_eval(args) -> OutputTable:
    spec = specfun.QuadratureSpec(abs_tol=args.tol or 1e-10)
    table = OutputTable(("x", "value"), meta={"function": args.fn})
    if args.fn == "psi":
        table.meta["delta"] = args.delta
        table.meta["m"] = args.m
    table.meta.update(_config_meta(spec))

    def evaluate(x: float) -> float:
        if args.fn == "erf":
            return specfun.erf(x)
        if args.fn == "erfi":
            return specfun.erfi(x)
        if args.fn == "phi1":
            return series.phi1(x)
        if args.fn == "g2":
            return series.g2(x)
        if args.fn == "phi2":
            return series.phi2(x, spec)
        return series.psi(args.delta, args.m, x, spec)

    for x in args.x:
        table.add(x, evaluate(x))
    return table


def _solver_configs(args):
    picard_cfg = picard.PicardConfig(
        x_max=args.xmax, step=args.step, fp_tol=args.tol or 1e-10
    )
    shooting_cfg = shooting.ShootingConfig(
        x_max=args.xmax,
        step=args.step,
        ivp_tol=args.tol or 1e-10,
        root_tol=args.tol or 1e-10,
    )
    return picard_cfg, shooting_cfg


def _solve(delta: float, backend: str, picard_cfg, shooting_cfg):
    if backend == "auto":
        backend = (
            "picard"
            if 0.0 <= delta < picard.solve_delta0(1e-12)
            else "shooting"
        )
    if backend == "picard":
        sol, _ = picard.solve_fixed_point(delta, picard_cfg)
    else:
        sol = shooting.solve_bvp(delta, shooting_cfg)
    return sol, backend


def cmd_solve(args) -> OutputTable:
    picard_cfg, shooting_cfg = _solver_configs(args)
    sol, backend = _solve(args.delta, args.backend, picard_cfg, shooting_cfg)
    cfg = picard_cfg if backend == "picard" else shooting_cfg
    meta = {"delta": args.delta, "backend": backend}
    meta.update(_config_meta(cfg))
    table = OutputTable(("x", "phi"), meta=meta)
    for x, v in zip(sol.nodes, sol.values):
        table.add(x, v)
    return table


def cmd_delta0(args) -> OutputTable:
    tol = args.tol or 1e-10
    root = picard.solve_delta0(tol)
    table = OutputTable(("delta0", "C", "L"), meta={"tol": tol})
    table.add(root, picard.contraction_constant(), picard.lipschitz_constant())
    return table


def _curve_table(xs, values, meta) -> OutputTable:
    table = OutputTable(("x", "value"), meta=meta)
    for x, v in zip(xs, values):
        table.add(x, v)
    return table


def _figure_tables(fig_id: str, args) -> dict[str, OutputTable]:
    picard_cfg, shooting_cfg = _solver_configs(args)
    spec = specfun.QuadratureSpec(abs_tol=args.tol or 1e-10)
    base = {"figure": fig_id, "x_max": args.xmax, "step": args.step}
    tables: dict[str, OutputTable] = {}

    if fig_id in ("fig1", "fig3"):
        # fig3 is the zoomed companion: same solutions on the full domain
        # (the far-field condition stays at x_max), sliced to [0, 1.6]
        zoom = 1.6 if fig_id == "fig3" else None
        for d in FAMILY_DELTAS:
            sol, backend = _solve(d, "auto", picard_cfg, shooting_cfg)
            xs, ys = sol.nodes, sol.values
            if zoom is not None:
                keep = xs <= zoom + 1e-12
                xs, ys = xs[keep], ys[keep]
            meta = dict(base, delta=d, backend=backend)
            if zoom is not None:
                meta["window"] = zoom
            tables[f"{fig_id}_delta_{d:g}"] = _curve_table(xs, ys, meta)
    elif fig_id == "fig2":
        xs = grid_nodes(args.xmax, args.step)
        p0, p1, p2 = series.coefficient_grids(xs, spec)
        for name, col in (("phi0", p0), ("phi1", p1), ("phi2", p2)):
            meta = dict(base, coefficient=name, abs_tol=spec.abs_tol)
            tables[f"fig2_{name}"] = _curve_table(xs, col, meta)
    elif fig_id == "fig4a":
        deltas = [round(0.01 * k, 2) for k in range(0, 21)]
        reports = analysis.error_sweep(
            deltas, (0, 1, 2), picard_cfg, shooting_cfg, spec
        )
        for m in (0, 1, 2):
            meta = dict(base, m=m, backend="picard")
            table = OutputTable(("delta", "error"), meta=meta)
            for r in reports:
                if r.m == m:
                    table.add(r.delta, r.error)
            tables[f"fig4a_m{m}"] = table
    elif fig_id == "fig4b":
        d = 0.2
        sol, backend = _solve(d, "auto", picard_cfg, shooting_cfg)
        xs = sol.nodes
        approx = series.psi_grid(d, 1, xs, spec)
        tables["fig4b_phi"] = _curve_table(
            xs, sol.values, dict(base, delta=d, curve="phi", backend=backend)
        )
        tables["fig4b_psi1"] = _curve_table(
            xs, approx, dict(base, delta=d, curve="psi1")
        )
    elif fig_id == "fig5":
        xs = grid_nodes(args.xmax, args.step)
        grids = series.coefficient_grids(xs, spec)
        for d in PAIR_DELTAS:
            sol, backend = _solve(d, "auto", picard_cfg, shooting_cfg)
            approx = series.psi_grid(d, 1, xs, spec, grids=grids)
            tables[f"fig5_delta_{d:g}_phi"] = _curve_table(
                xs, sol.values, dict(base, delta=d, curve="phi", backend=backend)
            )
            tables[f"fig5_delta_{d:g}_psi1"] = _curve_table(
                xs, approx, dict(base, delta=d, curve="psi1")
            )
    else:
        raise ValueError(f"unknown figure id: {fig_id}")
    return tables


def cmd_figure(args) -> OutputTable:
    from . import figures  # deferred: matplotlib import is slow

    tables = _figure_tables(args.id, args)
    out_dir = Path(args.out or "figures")
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in sorted(tables):
        path = out_dir / f"{name}.csv"
        tables[name].write(path)
        written.append(path)
    png_path = out_dir / f"{args.id}.png"
    figures.render_figure(args.id, tables, png_path)
    written.append(png_path)

    listing = OutputTable(("file",), meta={"figure": args.id})
    for path in written:
        listing.add(str(path))
    return listing


def cmd_verify(args) -> tuple[OutputTable, int]:
    picard_cfg, shooting_cfg = _solver_configs(args)
    spec = specfun.QuadratureSpec(abs_tol=args.tol or 1e-10)
    reports = analysis.run_suites([args.suite], picard_cfg, shooting_cfg, spec)
    table = OutputTable(("suite", "check", "status", "detail"), meta={"suite": args.suite})
    ok = True
    for rep in reports:
        ok = ok and rep.passed
        for row in rep.rows:
            table.add(
                rep.name,
                row.check.replace(",", ";"),
                row.status,
                row.detail.replace(",", ";"),
            )
    return table, 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moderf",
        description="Modified error function: solvers, series approximations, verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--xmax", type=float, default=10.0, help="domain endpoint")
        p.add_argument("--step", type=float, default=0.01, help="grid spacing")
        p.add_argument("--tol", type=float, default=None, help="solver/quadrature tolerance")
        p.add_argument("--out", type=str, default=None, help="output directory")

    p_eval = sub.add_parser("eval", help="evaluate a function at points")
    p_eval.add_argument(
        "--fn",
        required=True,
        choices=("erf", "erfi", "phi1", "g2", "phi2", "psi"),
        help="function to evaluate",
    )
    p_eval.add_argument("--x", required=True, type=_parse_x_list, help="comma list of points")
    p_eval.add_argument("--delta", type=float, default=None)
    p_eval.add_argument("--m", type=int, default=None, choices=(0, 1, 2))
    common(p_eval)

    p_solve = sub.add_parser("solve", help="compute the modified error function")
    p_solve.add_argument("--delta", type=float, required=True)
    p_solve.add_argument(
        "--backend", choices=("picard", "shooting", "auto"), default="auto"
    )
    common(p_solve)

    p_delta0 = sub.add_parser("delta0", help="contraction-range endpoint and constants")
    common(p_delta0)

    p_fig = sub.add_parser("figure", help="reproduce figure data (CSV + PNG)")
    p_fig.add_argument("id", choices=FIGURE_IDS)
    common(p_fig)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument(
        "suite", choices=("properties", "lipschitz", "ordering", "residuals", "all")
    )
    common(p_verify)

    return parser


def _emit(table: OutputTable, args, default_name: str):
    text = table.to_csv()
    sys.stdout.write(text)
    if args.out and default_name:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / default_name).write_text(text, encoding="utf-8", newline="\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "eval" and args.fn == "psi":
        if args.delta is None or args.m is None:
            parser.error("--fn psi requires both --delta and --m")
    if args.command == "eval" and args.fn != "psi" and (
        args.delta is not None or args.m is not None
    ):
        parser.error(f"--delta/--m are only meaningful with --fn psi, not {args.fn}")

    try:
        if args.command == "eval":
            _emit(cmd_eval(args), args, "eval.csv")
        elif args.command == "solve":
            _emit(cmd_solve(args), args, "solve.csv")
        elif args.command == "delta0":
            _emit(cmd_delta0(args), args, "delta0.csv")
        elif args.command == "figure":
            listing = cmd_figure(args)
            sys.stdout.write(listing.to_csv())
        elif args.command == "verify":
            table, code = cmd_verify(args)
            _emit(table, args, "verify.csv")
            return code
    except ModerfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
