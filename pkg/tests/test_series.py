import math

import numpy as np
import pytest

import oracles
from moderf.analysis import series_residuals
from moderf.exceptions import DeltaRangeError, QuadratureError
from moderf.series import (
    ApproxOrder,
    DeltaParam,
    QuadratureSpec,
    as_delta,
    as_order,
    coefficient_grids,
    g2,
    phi0,
    phi1,
    phi2,
    psi,
    psi_grid,
)
from moderf.specfun import erf

# frozen from the mpmath oracles (term-by-term closed forms; phi2 from the
# variation-of-parameters solution of its source problem)
PHI1_01 = 0.014130497951112037
PHI1_05 = -0.029996754676873092
PHI1_1 = -0.10163629127275558
PHI1_2 = -0.016860195566992722
PHI1_ZERO = 0.34911850854515426
G2_0 = -0.46267007559646051
G2_1 = -0.54014098708356295
PHI2_025 = -0.0091083907348103767
PHI2_05 = 0.004020781065645705
PHI2_1 = 0.041815205880264176
PHI2_15 = -0.0011644945208555435
PHI2_2 = -0.014272824256341221
PSI_02_1_1 = 0.82237353469516375

TIGHT = QuadratureSpec(abs_tol=1e-13, max_depth=48)


class TestPhi0:
    def test_is_erf(self):
        for x in (0.0, 0.5, 1.0, 3.0):
            assert phi0(x) == erf(x)

    def test_boundaries(self):
        assert phi0(0.0) == 0.0
        assert phi0(6.0) > 1.0 - 1e-15

    def test_ode_residual(self):
        # 2x phi0' + phi0'' = 0, five-point differences at step 1e-3
        h = 1e-3
        for x in np.arange(0.1, 5.0001, 0.1):
            stencil = [phi0(x + k * h) for k in (-2, -1, 0, 1, 2)]
            d1 = (-stencil[4] + 8 * stencil[3] - 8 * stencil[1] + stencil[0]) / (12 * h)
            d2 = (
                -stencil[4] + 16 * stencil[3] - 30 * stencil[2] + 16 * stencil[1] - stencil[0]
            ) / (12 * h * h)
            assert abs(2.0 * x * d1 + d2) < 1e-6


class TestPhi1:
    @pytest.mark.parametrize(
        "x,expected",
        [(0.1, PHI1_01), (0.5, PHI1_05), (1.0, PHI1_1), (2.0, PHI1_2)],
    )
    def test_frozen_values(self, x, expected):
        assert abs(phi1(x) - expected) < 5e-14

    def test_boundaries(self):
        assert phi1(0.0) == 0.0
        assert abs(phi1(8.0)) < 1e-12

    def test_sign_structure(self):
        # one positive hump near the origin, non-positive beyond the crossing
        assert phi1(0.1) > 0.0
        assert abs(phi1(PHI1_ZERO)) < 1e-10
        for x in np.arange(0.35, 8.0001, 0.01):
            assert phi1(x) <= 1e-15

    def test_against_dense_bvp_oracle(self):
        xs, u = oracles.fd_linear_bvp(oracles.phi1_source, 8.0, 4000)
        ours = np.array([phi1(x) for x in xs])
        assert np.abs(ours - u).max() < 1e-5


class TestG2:
    def test_value_at_zero_exact_form(self):
        expected = (4.0 / math.pi) * (2.0 / math.pi - 1.0)
        assert g2(0.0) == pytest.approx(expected, abs=1e-16)
        assert abs(G2_0 - expected) < 1e-15

    def test_frozen_value(self):
        assert abs(g2(1.0) - G2_1) < 5e-14

    def test_far_field(self):
        assert abs(g2(8.0)) < 1e-12

    def test_matches_independent_expression(self):
        xs = np.linspace(0.0, 6.0, 61)
        theirs = oracles.g2_scipy(xs)
        ours = np.array([g2(x) for x in xs])
        assert np.abs(ours - theirs).max() < 1e-13


class TestPhi2:
    def test_at_zero(self):
        assert phi2(0.0) == 0.0

    def test_far_field_default_tolerance(self):
        assert abs(phi2(8.0)) < 1e-10

    @pytest.mark.parametrize(
        "x,expected",
        [
            (0.25, PHI2_025),
            (0.5, PHI2_05),
            (1.0, PHI2_1),
            (1.5, PHI2_15),
            (2.0, PHI2_2),
        ],
    )
    def test_frozen_values(self, x, expected):
        assert abs(phi2(x, TIGHT) - expected) < 1e-11

    def test_default_spec_accuracy(self):
        assert abs(phi2(1.0) - PHI2_1) < 5e-10

    def test_against_dense_bvp_oracle(self):
        xs, u = oracles.fd_linear_bvp(oracles.g2_scipy, 8.0, 4000)
        ours = np.array([phi2(x, TIGHT) for x in xs[::40]])
        assert np.abs(ours - u[::40]).max() < 1e-5

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            phi2(-0.5)

    def test_propagates_quadrature_failure(self):
        with pytest.raises(QuadratureError):
            phi2(1.0, QuadratureSpec(abs_tol=1e-16, max_depth=1))


class TestSeriesResiduals:
    def test_coefficient_odes(self):
        xs = np.round(np.arange(0.1, 5.0001, 0.1), 10)
        r1, r2 = series_residuals(xs)
        assert r1 < 1e-5
        assert r2 < 1e-4


class TestPsi:
    def test_delta_zero_collapses_to_erf(self):
        for x in (0.0, 0.7, 2.0):
            assert psi(0.0, 2, x) == erf(x)

    def test_order_zero_ignores_delta(self):
        for d in (-0.5, 0.0, 1.5):
            assert psi(d, 0, 1.3) == erf(1.3)

    def test_first_order_composition(self):
        assert abs(psi(0.2, 1, 1.0) - PSI_02_1_1) < 1e-14
        assert psi(0.2, 1, 1.0) == erf(1.0) + 0.2 * phi1(1.0)

    def test_accepts_wrapper_types(self):
        assert psi(DeltaParam(0.2), ApproxOrder(1), 1.0) == psi(0.2, 1, 1.0)


class TestGrids:
    def test_matches_scalar_evaluations(self):
        xs = np.linspace(0.0, 10.0, 201)
        p0, p1, p2 = coefficient_grids(xs, TIGHT)
        for i in (0, 7, 20, 100, 200):
            assert p0[i] == phi0(xs[i])
            assert p1[i] == phi1(xs[i])
            assert abs(p2[i] - phi2(xs[i], TIGHT)) < 1e-11

    def test_psi_grid_consistency(self):
        xs = np.linspace(0.0, 5.0, 101)
        grids = coefficient_grids(xs, TIGHT)
        vals = psi_grid(0.15, 2, xs, TIGHT, grids=grids)
        for i in (3, 50, 100):
            assert abs(vals[i] - psi(0.15, 2, xs[i], TIGHT)) < 1e-11


class TestParameterTypes:
    def test_delta_param_invariant(self):
        with pytest.raises(DeltaRangeError):
            DeltaParam(-1.0)
        assert DeltaParam(-0.9).delta == -0.9

    def test_order_invariant(self):
        with pytest.raises(ValueError):
            ApproxOrder(3)

    def test_coercions(self):
        assert as_delta(DeltaParam(0.1)) == 0.1
        assert as_order(ApproxOrder(2)) == 2
        with pytest.raises(DeltaRangeError):
            as_delta(-2.0)
        with pytest.raises(ValueError):
            as_order(5)
