"""Error measurement, qualitative-property checks, and verification suites.

This is the layer that compares computed solutions against the partial-sum
approximations (discrete sup-norm errors and their ordering in the order m),
verifies the parameter-Lipschitz bound with the constants from the
fixed-point theory, and checks boundedness / monotonicity / concavity and
ODE residuals of every produced solution.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import picard, shooting
from .grid import GridFunction
from .series import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    as_delta,
    as_order,
    coefficient_grids,
    phi1,
    phi2,
    psi_grid,
)

# delta sets used by the named verification suites
PROPERTY_DELTAS = (0.01, 0.05, 0.1, 0.15, 0.2)
NONCONCAVE_DELTA = -0.9
LIPSCHITZ_DELTAS = (0.0, 0.05, 0.1, 0.15, 0.2)
ORDERING_DELTAS = tuple(round(0.01 * k, 2) for k in range(1, 21))
CONVERGENCE_DELTAS = (0.2, 0.1, 0.05, 0.025, 0.0125)
RESIDUAL_SHOOTING_DELTAS = (-0.9, -0.5, 0.5, 1.0, 2.0)

ODE_RESIDUAL_TOL = 1e-4
SERIES_RESIDUAL_TOL_1 = 1e-5
SERIES_RESIDUAL_TOL_2 = 1e-4


@dataclass(frozen=True)
class ErrorReport:
    """Discrete sup-norm error between a solution and a partial sum."""

    delta: float
    m: int
    error: float
    x_max: float
    step: float
    backend: str


class CheckResult(NamedTuple):
    passed: bool
    witness_x: float | None = None
    witness_value: float | None = None

    def describe(self) -> str:
        if self.passed:
            return "pass"
        return f"fail at x={self.witness_x:.4g} (value {self.witness_value:.6g})"


@dataclass(frozen=True)
class PropertyReport:
    """Verdicts (with witnesses on failure) for one computed solution."""

    delta: float
    bounded: CheckResult
    increasing: CheckResult
    concave: CheckResult
    residual: float


class LipschitzResult(NamedTuple):
    bound: float
    observed: float
    passed: bool


@functools.lru_cache(maxsize=128)
def _picard_solution(delta: float, cfg: picard.PicardConfig) -> GridFunction:
    sol, _ = picard.solve_fixed_point(delta, cfg)
    return sol


@functools.lru_cache(maxsize=64)
def _shooting_solution(delta: float, cfg: shooting.ShootingConfig) -> GridFunction:
    return shooting.solve_bvp(delta, cfg)


def reference_solution(
    delta,
    picard_cfg: picard.PicardConfig = picard.DEFAULT_CONFIG,
    shooting_cfg: shooting.ShootingConfig = shooting.DEFAULT_CONFIG,
) -> tuple[GridFunction, str]:
    """Solve with the fixed-point backend on its contraction range, else shoot."""
    d = as_delta(delta)
    if 0.0 <= d < picard.solve_delta0(1e-12):
        return _picard_solution(d, picard_cfg), "picard"
    return _shooting_solution(d, shooting_cfg), "shooting"


def fd_derivatives(values: np.ndarray, step: float) -> tuple[np.ndarray, np.ndarray]:
    """5-point central first and second derivatives on interior nodes [2, n-3]."""
    y = np.asarray(values, dtype=float)
    d1 = (-y[4:] + 8.0 * y[3:-1] - 8.0 * y[1:-3] + y[:-4]) / (12.0 * step)
    d2 = (-y[4:] + 16.0 * y[3:-1] - 30.0 * y[2:-2] + 16.0 * y[1:-3] - y[:-4]) / (
        12.0 * step * step
    )
    return d1, d2


def ode_residual(phi: GridFunction, delta) -> float:
    """Scaled sup-norm residual of (1+dy)y'' + d(y')^2 + 2xy' on [0.1, x_max-0.1]."""
    d = as_delta(delta)
    xs = phi.nodes[2:-2]
    y = phi.values[2:-2]
    d1, d2 = fd_derivatives(phi.values, phi.step)
    resid = np.abs((1.0 + d * y) * d2 + d * d1 * d1 + 2.0 * xs * d1)
    scale = 1.0 + 2.0 * xs * np.abs(d1)
    mask = (xs >= 0.1) & (xs <= phi.x_max - 0.1)
    return float((resid[mask] / scale[mask]).max())


def discrete_error(
    phi: GridFunction,
    delta,
    m,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    grids: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None,
    backend: str = "picard",
) -> ErrorReport:
    """Sup-norm distance between phi and the order-m partial sum on its grid."""
    d = as_delta(delta)
    order = as_order(m)
    approx = psi_grid(d, order, phi.nodes, spec, grids=grids)
    err = float(np.abs(approx - phi.values).max())
    return ErrorReport(d, order, err, phi.x_max, phi.step, backend)


def check_properties(
    phi: GridFunction,
    delta,
    bound_tol: float = 1e-8,
    increase_tol: float = 1e-10,
) -> PropertyReport:
    """Boundedness in [0,1], monotonicity, concavity, and the ODE residual.

    Concavity allows second differences up to 1e-8 * step^2 so that the far
    field, where the curvature decays to zero, is not failed on roundoff.
    Verdicts never raise; failures carry the worst witness node.
    """
    d = as_delta(delta)
    xs = phi.nodes
    y = phi.values

    lo_gap = y - (-bound_tol)
    hi_gap = (1.0 + bound_tol) - y
    worst = int(np.argmin(np.minimum(lo_gap, hi_gap)))
    bounded_ok = bool(lo_gap[worst] >= 0.0 and hi_gap[worst] >= 0.0)
    bounded = CheckResult(
        bounded_ok,
        None if bounded_ok else float(xs[worst]),
        None if bounded_ok else float(y[worst]),
    )

    diffs = np.diff(y)
    worst = int(np.argmin(diffs))
    increasing_ok = bool(diffs[worst] > -increase_tol)
    increasing = CheckResult(
        increasing_ok,
        None if increasing_ok else float(xs[worst]),
        None if increasing_ok else float(diffs[worst]),
    )

    second = np.diff(y, 2)
    concave_tol = 1e-8 * phi.step * phi.step
    worst = int(np.argmax(second))
    concave_ok = bool(second[worst] < concave_tol)
    concave = CheckResult(
        concave_ok,
        None if concave_ok else float(xs[worst + 1]),
        None if concave_ok else float(second[worst]),
    )

    return PropertyReport(d, bounded, increasing, concave, ode_residual(phi, d))


def error_sweep(
    deltas: Iterable[float],
    orders: Iterable[int],
    picard_cfg: picard.PicardConfig = picard.DEFAULT_CONFIG,
    shooting_cfg: shooting.ShootingConfig = shooting.DEFAULT_CONFIG,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> list[ErrorReport]:
    """One ErrorReport per (delta, order) pair, deterministic in input order."""
    deltas = [as_delta(d) for d in deltas]
    orders = [as_order(m) for m in orders]
    grids = None
    reports = []
    for d in deltas:
        phi, backend = reference_solution(d, picard_cfg, shooting_cfg)
        if grids is None:
            grids = coefficient_grids(phi.nodes, spec)
        for m in orders:
            reports.append(
                discrete_error(phi, d, m, spec, grids=grids, backend=backend)
            )
    return reports


def lipschitz_check(
    delta1,
    delta2,
    cfg: picard.PicardConfig = picard.DEFAULT_CONFIG,
) -> LipschitzResult:
    """Test sup|Phi_d1 - Phi_d2| <= L |d1 - d2| on computed fixed points."""
    d1 = as_delta(delta1)
    d2 = as_delta(delta2)
    sol1 = _picard_solution(d1, cfg)
    sol2 = _picard_solution(d2, cfg)
    observed = sol1.sup_diff(sol2)
    bound = picard.lipschitz_constant() * abs(d1 - d2)
    return LipschitzResult(bound, observed, observed <= bound)


def series_residuals(
    x_values: Sequence[float],
    fd_step: float = 1e-3,
    spec: QuadratureSpec = QuadratureSpec(abs_tol=1e-12, max_depth=48),
) -> tuple[float, float]:
    """Max finite-difference residuals of the coefficient ODEs at the points.

    Checks 2x phi1' + phi1'' = -((phi0')^2 + phi0 phi0'') and
    2x phi2' + phi2'' = -(2 phi0' phi1' + phi0 phi1'' + phi1 phi0''), with all
    derivatives taken as 5-point central differences at spacing fd_step.
    """
    x_values = np.asarray(sorted(x_values), dtype=float)
    offsets = fd_step * np.arange(-2.0, 3.0)
    stencil = (x_values[:, None] + offsets[None, :]).ravel()
    if np.any(np.diff(stencil) <= 0.0):
        raise ValueError("stencil points overlap; check points too close together")
    p0, p1, p2 = coefficient_grids(stencil, spec)

    def derivs(col: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        c = col.reshape(-1, 5)
        v = c[:, 2]
        d1 = (-c[:, 4] + 8.0 * c[:, 3] - 8.0 * c[:, 1] + c[:, 0]) / (12.0 * fd_step)
        d2 = (-c[:, 4] + 16.0 * c[:, 3] - 30.0 * c[:, 2] + 16.0 * c[:, 1] - c[:, 0]) / (
            12.0 * fd_step * fd_step
        )
        return v, d1, d2

    v0, d0_1, d0_2 = derivs(p0)
    v1, d1_1, d1_2 = derivs(p1)
    v2, d2_1, d2_2 = derivs(p2)

    rhs1 = -(d0_1 * d0_1 + v0 * d0_2)
    res1 = np.abs(2.0 * x_values * d1_1 + d1_2 - rhs1)
    rhs2 = -(2.0 * d0_1 * d1_1 + v0 * d1_2 + v1 * d0_2)
    res2 = np.abs(2.0 * x_values * d2_1 + d2_2 - rhs2)
    return float(res1.max()), float(res2.max())


@dataclass(frozen=True)
class SuiteRow:
    check: str
    status: str  # "pass", "fail", or "info"
    detail: str


@dataclass(frozen=True)
class SuiteReport:
    name: str
    rows: tuple[SuiteRow, ...]

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.rows)


def _row(check: str, ok: bool, detail: str) -> SuiteRow:
    return SuiteRow(check, "pass" if ok else "fail", detail)


def suite_properties(
    picard_cfg: picard.PicardConfig = picard.DEFAULT_CONFIG,
    shooting_cfg: shooting.ShootingConfig = shooting.DEFAULT_CONFIG,
) -> SuiteReport:
    """Qualitative properties on the contraction range, plus the expected
    concavity failure at delta = -0.9."""
    rows = []
    for d in PROPERTY_DELTAS:
        rep = check_properties(_picard_solution(d, picard_cfg), d)
        rows.append(_row(f"bounded[delta={d}]", rep.bounded.passed, rep.bounded.describe()))
        rows.append(
            _row(f"increasing[delta={d}]", rep.increasing.passed, rep.increasing.describe())
        )
        rows.append(_row(f"concave[delta={d}]", rep.concave.passed, rep.concave.describe()))
    d = NONCONCAVE_DELTA
    rep = check_properties(_shooting_solution(d, shooting_cfg), d)
    rows.append(_row(f"bounded[delta={d}]", rep.bounded.passed, rep.bounded.describe()))
    rows.append(
        _row(
            f"concavity-fails[delta={d}]",
            not rep.concave.passed,
            rep.concave.describe(),
        )
    )
    rows.append(
        SuiteRow(
            f"increasing[delta={d}]",
            "info",
            rep.increasing.describe(),
        )
    )
    return SuiteReport("properties", tuple(rows))


def suite_lipschitz(
    picard_cfg: picard.PicardConfig = picard.DEFAULT_CONFIG,
) -> SuiteReport:
    """Parameter-Lipschitz bound over all pairs, plus constant consistency."""
    rows = []
    d0 = picard.solve_delta0(1e-12)
    c = picard.contraction_constant()
    c_alt = d0 * (1.0 + d0) ** 1.5 * (3.0 + d0)
    rows.append(
        _row("contraction-consistency", abs(c - c_alt) < 1e-8, f"|{c:.10f} - {c_alt:.10f}|")
    )
    rows.append(_row("contraction-in-(0,1)", 0.0 < c < 1.0, f"C = {c:.10f}"))
    lip = picard.lipschitz_constant()
    rows.append(_row("lipschitz-positive", lip > 0.0, f"L = {lip:.6f}"))
    ds = LIPSCHITZ_DELTAS
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            res = lipschitz_check(ds[i], ds[j], picard_cfg)
            rows.append(
                _row(
                    f"pair[{ds[i]},{ds[j]}]",
                    res.passed,
                    f"observed {res.observed:.3e} <= bound {res.bound:.3e}",
                )
            )
    return SuiteReport("lipschitz", tuple(rows))


def suite_ordering(
    picard_cfg: picard.PicardConfig = picard.DEFAULT_CONFIG,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> SuiteReport:
    """Error orderings across partial-sum orders and decay of the order-0 error."""
    rows = []
    reports = error_sweep(ORDERING_DELTAS, (0, 1, 2), picard_cfg, spec=spec)
    by_key = {(r.delta, r.m): r.error for r in reports}
    for d in ORDERING_DELTAS:
        e0, e1 = by_key[(d, 0)], by_key[(d, 1)]
        rows.append(
            _row(f"order1<=order0[delta={d}]", e1 <= e0, f"E1 {e1:.3e} vs E0 {e0:.3e}")
        )
    e0s = [by_key[(d, 0)] for d in ORDERING_DELTAS]
    increasing = all(a < b for a, b in zip(e0s, e0s[1:]))
    rows.append(
        _row(
            "order0-error-increasing-in-delta",
            increasing,
            f"E0 from {e0s[0]:.3e} to {e0s[-1]:.3e}",
        )
    )
    lip = picard.lipschitz_constant()
    conv = error_sweep(CONVERGENCE_DELTAS, (0,), picard_cfg, spec=spec)
    errs = [r.error for r in conv]
    rows.append(
        _row(
            "order0-error-decays-with-delta",
            all(a > b for a, b in zip(errs, errs[1:])),
            " > ".join(f"{e:.3e}" for e in errs),
        )
    )
    for d, e in zip(CONVERGENCE_DELTAS, errs):
        rows.append(
            _row(f"order0-below-L-delta[delta={d}]", e <= lip * d, f"{e:.3e} <= {lip * d:.3e}")
        )
    # first vs second order: reported, never failed (second-order quadrature
    # sensitivity makes this comparison informational only)
    wins = 0
    for d in ORDERING_DELTAS:
        e1, e2 = by_key[(d, 1)], by_key[(d, 2)]
        if e1 <= e2:
            wins += 1
        rows.append(
            SuiteRow(
                f"order1-vs-order2[delta={d}]",
                "info",
                f"E1 {e1:.3e} vs E2 {e2:.3e} ({'order1' if e1 <= e2 else 'order2'} smaller)",
            )
        )
    rows.append(
        SuiteRow(
            "order1-vs-order2-summary",
            "info",
            f"order1 smaller in {wins}/{len(ORDERING_DELTAS)} cases",
        )
    )
    return SuiteReport("ordering", tuple(rows))


def suite_residuals(
    picard_cfg: picard.PicardConfig = picard.DEFAULT_CONFIG,
    shooting_cfg: shooting.ShootingConfig = shooting.DEFAULT_CONFIG,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> SuiteReport:
    """ODE residuals of solutions from both backends and of the coefficients."""
    rows = []
    for d in PROPERTY_DELTAS:
        r = ode_residual(_picard_solution(d, picard_cfg), d)
        rows.append(
            _row(f"solution-residual[picard,delta={d}]", r < ODE_RESIDUAL_TOL, f"{r:.3e}")
        )
    for d in RESIDUAL_SHOOTING_DELTAS:
        r = ode_residual(_shooting_solution(d, shooting_cfg), d)
        rows.append(
            _row(f"solution-residual[shooting,delta={d}]", r < ODE_RESIDUAL_TOL, f"{r:.3e}")
        )
    xs = np.round(np.arange(0.1, 5.0001, 0.1), 10)
    r1, r2 = series_residuals(xs)
    rows.append(_row("coefficient1-residual", r1 < SERIES_RESIDUAL_TOL_1, f"{r1:.3e}"))
    rows.append(_row("coefficient2-residual", r2 < SERIES_RESIDUAL_TOL_2, f"{r2:.3e}"))
    b = [abs(phi1(0.0)), abs(phi2(0.0, spec))]
    rows.append(_row("coefficients-vanish-at-0", max(b) < 1e-14, f"max {max(b):.3e}"))
    far = [abs(phi1(8.0)), abs(phi2(8.0, spec))]
    rows.append(_row("coefficients-vanish-far-field", max(far) < 1e-10, f"max {max(far):.3e}"))
    return SuiteReport("residuals", tuple(rows))


SUITES = {
    "properties": lambda p, s, q: suite_properties(p, s),
    "lipschitz": lambda p, s, q: suite_lipschitz(p),
    "ordering": lambda p, s, q: suite_ordering(p, q),
    "residuals": lambda p, s, q: suite_residuals(p, s, q),
}


def run_suites(
    names: Sequence[str],
    picard_cfg: picard.PicardConfig = picard.DEFAULT_CONFIG,
    shooting_cfg: shooting.ShootingConfig = shooting.DEFAULT_CONFIG,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> list[SuiteReport]:
    """Run the named suites ('all' expands to every suite) in a fixed order."""
    if "all" in names:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites: {unknown}; available: {sorted(SUITES)}")
    return [SUITES[n](picard_cfg, shooting_cfg, spec) for n in names]
