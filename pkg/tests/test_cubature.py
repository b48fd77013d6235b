import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from discinterp.cubature import (
    IntegrationError,
    MomentTable,
    PolarRule,
    basis_integrals,
    func_integral_over_ball,
    monomial_integrals,
    monomial_moment_unit,
    poly_integral_over_ball,
)
from discinterp.geometry import Ball
from discinterp.polyspace import BasisKind, BasisSpec, MultiIndex, PolynomialRep, basis_element

PI = math.pi
UNIT = Ball((0.0, 0.0), 1.0)


def dblquad_disc(f, ball):
    cx, cy = ball.centre
    r = ball.radius
    val, _ = integrate.dblquad(
        lambda y, x: f(x, y),
        cx - r, cx + r,
        lambda x: cy - math.sqrt(max(r * r - (x - cx) ** 2, 0.0)),
        lambda x: cy + math.sqrt(max(r * r - (x - cx) ** 2, 0.0)),
        epsabs=1e-13, epsrel=1e-13,
    )
    return val


@pytest.mark.parametrize("a, b, expected", [
    (0, 0, PI), (1, 0, 0.0), (2, 0, PI / 4), (2, 2, PI / 24),
])
def test_moment_examples(a, b, expected):
    assert monomial_moment_unit(a, b) == pytest.approx(expected, rel=1e-15, abs=0)


@pytest.mark.parametrize("a, b", [(2, 0), (2, 2), (4, 2), (6, 0)])
def test_moment_matches_polar_rule_and_dblquad(a, b):
    rule = PolarRule(8, 15)
    via_rule = func_integral_over_ball(lambda x, y: x ** a * y ** b, UNIT, rule)
    assert monomial_moment_unit(a, b) == pytest.approx(via_rule, rel=1e-14)
    assert monomial_moment_unit(a, b) == pytest.approx(
        dblquad_disc(lambda x, y: x ** a * y ** b, UNIT), rel=1e-9)


def test_moment_table_invariants():
    table = MomentTable.build(12)
    assert table[MultiIndex(0, 0)] == PI
    for idx, v in table.values.items():
        if idx.a % 2 or idx.b % 2:
            assert v == 0.0
        else:
            assert v > 0


def test_area_and_centroid():
    one = basis_element(BasisSpec(BasisKind.MONOMIAL, 0), 0, 0)
    for c, r in [((0.3, -0.2), 0.4), ((0.0, 0.0), 1.0), ((-0.5, 0.1), 0.05)]:
        assert poly_integral_over_ball(one, Ball(c, r)) == pytest.approx(PI * r * r, rel=1e-15)
    x = basis_element(BasisSpec(BasisKind.MONOMIAL, 1), 1, 0)
    assert poly_integral_over_ball(x, Ball((1.0, 0.0), 1.0)) == pytest.approx(PI, rel=1e-15)


def test_t2_over_unit_disc():
    t2 = basis_element(BasisSpec(BasisKind.CHEBYSHEV, 2), 2, 0)
    exact = poly_integral_over_ball(t2, UNIT)
    assert exact == pytest.approx(-PI / 2, rel=1e-15)
    via_rule = func_integral_over_ball(lambda x, y: 2 * x * x - 1, UNIT, PolarRule(4, 7))
    assert exact == pytest.approx(via_rule, rel=1e-14)


def test_func_integral_examples():
    assert func_integral_over_ball(lambda x, y: np.ones_like(x), UNIT, PolarRule(1, 1)) == pytest.approx(PI, rel=1e-13)
    assert func_integral_over_ball(lambda x, y: x * x, UNIT, PolarRule(4, 7)) == pytest.approx(PI / 4, rel=1e-13)


def test_f1_rule_refinement_converges():
    f1 = lambda x, y: np.exp(x) * np.sin(x + y)
    ball = Ball((0.0, 0.0), 0.5)
    a = func_integral_over_ball(f1, ball, PolarRule(40, 79))
    b = func_integral_over_ball(f1, ball, PolarRule(41, 81))
    assert abs(a - b) <= 1e-12


def test_func_integral_reports_bad_node():
    with pytest.raises(IntegrationError, match="node"):
        func_integral_over_ball(lambda x, y: np.where(x < 0, np.nan, x), Ball((0.0, 0.0), 0.5),
                                PolarRule(3, 4))


def test_polar_rule_exact_degree():
    rule = PolarRule.for_degree(9)
    assert rule.exact_degree >= 9
    ball = Ball((0.2, -0.3), 0.45)
    ints = monomial_integrals([ball], 9)[0]
    for a in range(10):
        for b in range(10 - a):
            got = func_integral_over_ball(lambda x, y: x ** a * y ** b, ball, rule)
            assert got == pytest.approx(ints[a, b], rel=1e-13, abs=1e-15)


def test_odd_moments_vanish_on_centred_discs():
    ints = monomial_integrals([Ball((0.0, 0.0), 0.7)], 9)[0]
    for a in range(10):
        for b in range(10 - a):
            if a % 2 or b % 2:
                assert ints[a, b] == 0.0


@pytest.mark.parametrize("r", [0.1, 0.37, 1.0])
def test_scaling_law(r):
    ints = monomial_integrals([Ball((0.0, 0.0), r)], 12)[0]
    for a in range(0, 13, 2):
        for b in range(0, 13 - a, 2):
            assert ints[a, b] == pytest.approx(r ** (a + b + 2) * monomial_moment_unit(a, b), rel=1e-14)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 8), st.integers(0, 2**32 - 1))
def test_linearity(d, seed):
    rng = np.random.default_rng(seed)
    spec = BasisSpec(BasisKind.CHEBYSHEV, d)
    p, q = rng.standard_normal((2, len(spec)))
    alpha, beta = rng.standard_normal(2)
    ball = Ball(rng.uniform(-0.4, 0.4, 2), rng.uniform(0.05, 0.5))
    lhs = poly_integral_over_ball(PolynomialRep(spec, alpha * p + beta * q), ball)
    rhs = alpha * poly_integral_over_ball(PolynomialRep(spec, p), ball) + beta * poly_integral_over_ball(
        PolynomialRep(spec, q), ball)
    scale = abs(alpha) * np.abs(p).sum() + abs(beta) * np.abs(q).sum()
    assert abs(lhs - rhs) <= 1e-13 * max(abs(lhs), scale * PI * ball.radius ** 2)


def test_basis_integrals_agree_with_single_path():
    spec = BasisSpec(BasisKind.CHEBYSHEV, 5)
    balls = [Ball((0.1, 0.2), 0.3), Ball((-0.4, 0.0), 0.1)]
    G = basis_integrals(balls, spec)
    for t, m in enumerate(spec.indices):
        for k, b in enumerate(balls):
            assert G[k, t] == pytest.approx(poly_integral_over_ball(basis_element(spec, m.a, m.b), b), rel=1e-13, abs=1e-16)
