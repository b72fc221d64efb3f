"""Power-series coefficients of the modified error function in delta.

The modified error function is expanded as Phi_delta = sum_n phi_n(x) delta^n.
phi0 = erf; each higher coefficient solves the linear problem

    2x phi_n' + phi_n'' = source_n(x),   phi_n(0) = 0,  phi_n(inf) = 0,

where source_n collects products of the lower-order coefficients. g2 is the
explicit closed form of source_2. The order-m partial sums psi(delta, m, x)
are the practical approximations this package compares against the solvers.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DeltaRangeError
from .specfun import (
    DEFAULT_QUADRATURE,
    SQRT_PI,
    QuadratureSpec,
    adaptive_quad,
    erf,
    erfc_scaled,
)

# beyond this point erfc_scaled(y)*g2(y) is below 1e-30 and tail integrals
# are truncated with no correction
_TAIL_CUT = 9.0


@dataclass(frozen=True)
class DeltaParam:
    """Dimensionless slope of the linear conductivity law; must exceed -1."""

    delta: float

    def __post_init__(self):
        if not self.delta > -1.0:
            raise DeltaRangeError(
                f"delta must be > -1 for positive conductivity, got {self.delta}"
            )


@dataclass(frozen=True)
class ApproxOrder:
    """Order m of the partial sum; only m = 0, 1, 2 are available."""

    m: int

    def __post_init__(self):
        if self.m not in (0, 1, 2):
            raise ValueError(f"approximation order must be 0, 1 or 2, got {self.m}")


def as_delta(value) -> float:
    """Coerce a DeltaParam or number to a validated float delta."""
    if isinstance(value, DeltaParam):
        return value.delta
    v = float(value)
    if not v > -1.0:
        raise DeltaRangeError(f"delta must be > -1, got {v}")
    return v


def as_order(value) -> int:
    """Coerce an ApproxOrder or integer to a validated order in {0, 1, 2}."""
    if isinstance(value, ApproxOrder):
        return value.m
    m = int(value)
    if m != value or m not in (0, 1, 2):
        raise ValueError(f"approximation order must be 0, 1 or 2, got {value}")
    return m


def phi0(x: float) -> float:
    """Zeroth coefficient: the classical error function."""
    return erf(x)


def phi1(x: float) -> float:
    """First series coefficient, in closed form through erf and exponentials."""
    x = float(x)
    e1 = math.exp(-x * x)
    er = erf(x)
    return (
        (0.5 - 1.0 / math.pi) * er
        + (1.0 - e1 * e1) / math.pi
        - x * er * e1 / SQRT_PI
        - 0.5 * er * er
    )


def g2(x: float) -> float:
    """Source term of the second-order coefficient problem."""
    x = float(x)
    e1 = math.exp(-x * x)
    e2 = e1 * e1
    e3 = e2 * e1
    er = erf(x)
    pi = math.pi
    return (
        (16.0 / pi) * er * e2
        + (4.0 / pi) * (2.0 / pi - 1.0) * e2
        - (12.0 / (pi * SQRT_PI)) * x * e3
        + (4.0 / SQRT_PI - 8.0 / (pi * SQRT_PI)) * x * er * e1
        - (12.0 / SQRT_PI) * x * er * er * e1
        + (4.0 / (pi * SQRT_PI)) * x * e1
        - (8.0 / pi) * x * x * er * e2
        + (4.0 / SQRT_PI) * x ** 3 * er * er * e1
    )


def _g2_exp(x: float) -> float:
    """exp(x^2) * g2(x), evaluated without overflow.

    Every g2 term carries exp(-x^2), exp(-2x^2) or exp(-3x^2), so the product
    only involves decaying exponentials and polynomials.
    """
    x = float(x)
    e1 = math.exp(-x * x)
    e2 = e1 * e1
    er = erf(x)
    pi = math.pi
    return (
        (16.0 / pi) * er * e1
        + (4.0 / pi) * (2.0 / pi - 1.0) * e1
        - (12.0 / (pi * SQRT_PI)) * x * e2
        + (4.0 / SQRT_PI - 8.0 / (pi * SQRT_PI)) * x * er
        - (12.0 / SQRT_PI) * x * er * er
        + (4.0 / (pi * SQRT_PI)) * x
        - (8.0 / pi) * x * x * er * e1
        + (4.0 / SQRT_PI) * x ** 3 * er * er
    )


def _erfcx_g2(y: float) -> float:
    return erfc_scaled(y) * g2(y)


@functools.lru_cache(maxsize=None)
def _far_field_coefficient(spec: QuadratureSpec) -> float:
    """integral_0^inf erfc_scaled(y) g2(y) dy (tail truncated at _TAIL_CUT)."""
    return adaptive_quad(_erfcx_g2, 0.0, _TAIL_CUT, spec)


def phi2(x: float, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Second series coefficient.

    Solves 2x u' + u'' = g2, u(0) = 0, u(inf) = 0 by variation of parameters:

        phi2(x) = (sqrt(pi)/2) * [ erfc(x) * (K - G(x)) - T(x) ]

    with G(x) = integral_0^x exp(y^2) g2(y) dy,
         T(x) = integral_x^inf erfc_scaled(y) g2(y) dy and K = T(0).
    The arrangement is free of cancellation for large x, so the far-field
    decay comes out at roundoff level rather than at quadrature tolerance.
    """
    x = float(x)
    if x < 0.0:
        raise ValueError(f"phi2 requires x >= 0, got {x}")
    k = _far_field_coefficient(spec)
    g = adaptive_quad(_g2_exp, 0.0, x, spec) if x > 0.0 else 0.0
    t = adaptive_quad(_erfcx_g2, x, _TAIL_CUT, spec) if x < _TAIL_CUT else 0.0
    c = math.exp(-x * x) * erfc_scaled(x)
    return 0.5 * SQRT_PI * (c * (k - g) - t)


def psi(delta, m, x: float, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Order-m partial sum sum_{n<=m} phi_n(x) delta^n."""
    d = as_delta(delta)
    order = as_order(m)
    total = phi0(x)
    if order >= 1:
        total += d * phi1(x)
    if order >= 2:
        total += d * d * phi2(x, spec)
    return total


def coefficient_grids(
    xs: np.ndarray, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Sample phi0, phi1, phi2 on an increasing grid of non-negative nodes.

    phi2 is assembled from panel-wise adaptive integrals so the whole column
    costs one sweep instead of one full quadrature per node.
    """
    xs = np.asarray(xs, dtype=float)
    n = xs.size
    p0 = np.array([phi0(v) for v in xs])
    p1 = np.array([phi1(v) for v in xs])

    panel_spec = QuadratureSpec(
        abs_tol=max(spec.abs_tol / max(n, 1), 1e-15), max_depth=spec.max_depth
    )
    k = _far_field_coefficient(spec)

    grow = np.zeros(n)
    for i in range(n - 1):
        grow[i + 1] = grow[i] + adaptive_quad(_g2_exp, xs[i], xs[i + 1], panel_spec)

    tail = np.zeros(n)
    last = n - 1
    while last >= 0 and xs[last] >= _TAIL_CUT:
        last -= 1
    if last >= 0:
        tail[last] = adaptive_quad(_erfcx_g2, xs[last], _TAIL_CUT, panel_spec)
        for i in range(last - 1, -1, -1):
            tail[i] = tail[i + 1] + adaptive_quad(_erfcx_g2, xs[i], xs[i + 1], panel_spec)

    cfac = np.array([math.exp(-v * v) * erfc_scaled(v) for v in xs])
    p2 = 0.5 * SQRT_PI * (cfac * (k - grow) - tail)
    return p0, p1, p2


def psi_grid(
    delta,
    m,
    xs: np.ndarray,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    grids: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None,
) -> np.ndarray:
    """Partial sum psi(delta, m, .) sampled on a grid.

    Pass precomputed coefficient_grids(xs, spec) as `grids` when evaluating
    many (delta, m) pairs on the same nodes.
    """
    d = as_delta(delta)
    order = as_order(m)
    if grids is None:
        grids = coefficient_grids(xs, spec)
    p0, p1, p2 = grids
    out = p0.copy()
    if order >= 1:
        out += d * p1
    if order >= 2:
        out += d * d * p2
    return out
