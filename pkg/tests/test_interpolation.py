import math

import numpy as np
import pytest

from discinterp.cubature import PolarRule, func_integral_over_ball, poly_integrals
from discinterp.geometry import Ball, BallConfig, counterexample_collinear, counterexample_concentric, \
    gen_halton_config, gen_orbit_config
from discinterp.interpolation import (
    SINGULAR_THRESHOLD,
    UnisolvenceError,
    Verdict,
    assemble_vandermonde,
    check_unisolvence,
    interpolate,
    lagrange_coefficients,
)
from discinterp.polyspace import BasisKind, BasisSpec, PolynomialRep, enumerate_basis, eval_poly

CHEB = BasisKind.CHEBYSHEV
MONO = BasisKind.MONOMIAL


def f1(x, y):
    return np.exp(x) * np.sin(x + y)


def test_degree_zero():
    cfg = BallConfig((Ball((0.1, -0.2), 0.3),), 0, "single")
    sys = assemble_vandermonde(cfg)
    np.testing.assert_allclose(sys.V, [[math.pi * 0.09]], rtol=1e-15)
    ell = lagrange_coefficients(sys)[0]
    assert eval_poly(ell, 0.7, 0.7) == pytest.approx(1 / (math.pi * 0.09), rel=1e-14)


@pytest.mark.parametrize("basis", [CHEB, MONO])
def test_vandermonde_entries_match_polar_rule(basis):
    cfg = gen_orbit_config(4)
    sys = assemble_vandermonde(cfg, basis)
    spec = BasisSpec(basis, 4)
    rule = PolarRule(6, 11)
    for i, m in enumerate(enumerate_basis(spec)):
        e = np.zeros(len(spec))
        e[i] = 1.0
        p = PolynomialRep(spec, e)
        for j in (0, 5, 14):
            ref = func_integral_over_ball(lambda x, y: p(x, y), cfg.balls[j], rule)
            assert sys.V[i, j] == pytest.approx(ref, rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("d", [1, 3, 6, 9])
@pytest.mark.parametrize("family", ["orbits", "halton"])
def test_lagrange_duality(d, family):
    cfg = gen_orbit_config(d) if family == "orbits" else gen_halton_config(d)
    sys = assemble_vandermonde(cfg)
    L = lagrange_coefficients(sys)
    G = np.array([poly_integrals(L[i], cfg.balls) for i in range(len(L))])
    np.testing.assert_allclose(G, np.eye(len(cfg)), atol=1e-10)


@pytest.mark.parametrize("d", [1, 4, 7])
def test_reproduces_polynomials(d):
    rng = np.random.default_rng(d)
    spec = BasisSpec(CHEB, d)
    p = PolynomialRep(spec, rng.standard_normal(len(spec)))
    q = interpolate(p, gen_orbit_config(d))
    np.testing.assert_allclose(q.coeffs, p.coeffs, atol=1e-10)


@pytest.mark.parametrize("d", [1, 4, 7])
def test_reproduces_polynomials_through_polar_rule(d):
    rng = np.random.default_rng(10 + d)
    spec = BasisSpec(CHEB, d)
    p = PolynomialRep(spec, rng.standard_normal(len(spec)))
    q = interpolate(lambda x, y: p(x, y), gen_orbit_config(d))
    np.testing.assert_allclose(q.coeffs, p.coeffs, atol=1e-10)


def test_projector():
    cfg = gen_orbit_config(5)
    p = interpolate(f1, cfg)
    np.testing.assert_allclose(interpolate(p, cfg).coeffs, p.coeffs, atol=1e-12)


def test_interpolant_matches_data_integrals():
    cfg = gen_halton_config(5)
    p = interpolate(f1, cfg)
    rule = PolarRule()
    data = [func_integral_over_ball(f1, b, rule) for b in cfg.balls]
    np.testing.assert_allclose(poly_integrals(p, cfg.balls), data, rtol=1e-10, atol=1e-14)


def test_basis_independence():
    cfg = gen_orbit_config(6)
    pc = interpolate(f1, cfg, CHEB)
    pm = interpolate(f1, cfg, MONO)
    g = np.linspace(-0.9, 0.9, 15)
    X, Y = np.meshgrid(g, g)
    np.testing.assert_allclose(pc(X, Y), pm(X, Y), atol=1e-10)


@pytest.mark.parametrize("d", [1, 2, 5])
def test_degenerate_configs_raise(d):
    for cfg in (counterexample_concentric(d), counterexample_collinear(d)):
        sys = assemble_vandermonde(cfg)
        assert sys.is_singular and sys.sigma_ratio < SINGULAR_THRESHOLD
        with pytest.raises(UnisolvenceError):
            interpolate(f1, sys)
        assert check_unisolvence(cfg).verdict is Verdict.SINGULAR


@pytest.mark.parametrize("d", range(1, 13))
def test_orbit_configs_unisolvent(d):
    rep = check_unisolvence(gen_orbit_config(d))
    assert rep.verdict is Verdict.UNISOLVENT
    assert rep.cond >= 1.0


@pytest.mark.parametrize("factor", [0.25, 0.5, 1.0])
def test_radius_rescaling_keeps_unisolvence(factor):
    cfg = gen_orbit_config(6).scaled_radii(factor)
    assert check_unisolvence(cfg).verdict is Verdict.UNISOLVENT


def test_solvers_agree_with_dense_inverse():
    sys = assemble_vandermonde(gen_orbit_config(4))
    rhs = np.arange(len(sys.V), dtype=float)
    np.testing.assert_allclose(sys.solve_transpose(rhs), np.linalg.solve(sys.V.T, rhs), rtol=1e-10)
    np.testing.assert_allclose(sys.solve(rhs), np.linalg.solve(sys.V, rhs), rtol=1e-10)
