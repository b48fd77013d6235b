"""Integration over discs.

Polynomials are integrated exactly: the disc B(c, r) is pulled back to the
unit disc, the shifted monomials are expanded binomially and contracted
against closed-form unit-disc moments. General integrands go through a
polar product rule (Gauss-Legendre in the radius, trapezoid in the angle),
which doubles as an independent check of the exact path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, pi
from typing import Callable, Sequence

import numpy as np

from .geometry import Ball
from .polyspace import (
    BasisKind,
    BasisSpec,
    MultiIndex,
    PolynomialRep,
    chebyshev_matrix,
    exponent_arrays,
    monomial_grid,
)


class IntegrationError(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def moment_fraction(a: int, b: int) -> Fraction:
    """Unit-disc moment of x^a y^b as an exact rational multiple of pi."""
    if a < 0 or b < 0:
        raise ValueError("exponents must be nonnegative")
    if a % 2 or b % 2:
        return Fraction(0)
    p, q = a // 2, b // 2
    return Fraction(
        factorial(2 * p) * factorial(2 * q),
        4 ** (p + q) * factorial(p) * factorial(q) * factorial(p + q + 1),
    )


def monomial_moment_unit(a: int, b: int) -> float:
    """Integral of x^a y^b over the closed unit disc."""
    return float(moment_fraction(a, b)) * pi


@dataclass(frozen=True)
class MomentTable:
    degree: int
    values: dict = field(repr=False, compare=False)

    @classmethod
    def build(cls, degree: int) -> "MomentTable":
        vals = {
            MultiIndex(a, k - a): monomial_moment_unit(a, k - a)
            for k in range(degree + 1)
            for a in range(k + 1)
        }
        return cls(degree, vals)

    def __getitem__(self, idx: MultiIndex) -> float:
        return self.values[idx]


@lru_cache(maxsize=None)
def _moment_matrix(d: int) -> np.ndarray:
    m = np.zeros((d + 1, d + 1))
    for a in range(d + 1):
        for b in range(d + 1 - a):
            m[a, b] = monomial_moment_unit(a, b)
    m.setflags(write=False)
    return m


@lru_cache(maxsize=None)
def _binomials(d: int) -> np.ndarray:
    return np.array([[comb(a, k) for k in range(d + 1)] for a in range(d + 1)], dtype=float)


def _shift_expansion(c: np.ndarray, r: np.ndarray, d: int) -> np.ndarray:
    """E[m, a, k] = C(a, k) c_m^(a-k) r_m^k, so (c + r u)^a = sum_k E[., a, k] u^k."""
    cp = c[:, None] ** np.arange(d + 1)[None, :]
    rp = r[:, None] ** np.arange(d + 1)[None, :]
    a = np.arange(d + 1)
    diff = a[:, None] - a[None, :]
    lower = diff >= 0
    cpow = np.where(lower[None], cp[:, np.clip(diff, 0, d)], 0.0)
    return _binomials(d)[None] * cpow * rp[:, None, :]


def monomial_integrals(balls: Sequence[Ball], degree: int) -> np.ndarray:
    """All monomial integrals over each disc.

    Returns ``I`` with shape ``(len(balls), d+1, d+1)`` where
    ``I[m, a, b]`` is the integral of x^a y^b over ``balls[m]``; entries with
    a + b > d are left at whatever the expansion produces and should be
    ignored.
    """
    centres = np.array([bl.centre for bl in balls], dtype=float).reshape(-1, 2)
    radii = np.array([bl.radius for bl in balls], dtype=float)
    ex = _shift_expansion(centres[:, 0], radii, degree)
    ey = _shift_expansion(centres[:, 1], radii, degree)
    mom = _moment_matrix(degree)
    return (radii ** 2)[:, None, None] * (ex @ mom @ ey.transpose(0, 2, 1))


def basis_integrals(balls: Sequence[Ball], basis: BasisSpec) -> np.ndarray:
    """Matrix ``G`` with ``G[m, t]`` = integral of basis function t over ``balls[m]``."""
    d = basis.degree
    table = monomial_integrals(balls, d)
    if basis.kind is BasisKind.CHEBYSHEV:
        cheb = chebyshev_matrix(d)
        table = cheb @ table @ cheb.T
    a, b = exponent_arrays(d)
    return table[:, a, b]


def poly_integral_over_ball(p: PolynomialRep, ball: Ball) -> float:
    grid = monomial_grid(p)
    table = monomial_integrals([ball], p.basis.degree)[0]
    return float(np.sum(grid * table))


def poly_integrals(p: PolynomialRep, balls: Sequence[Ball]) -> np.ndarray:
    """Exact integrals of one polynomial over many discs."""
    if len(balls) == 0:
        return np.zeros(0)
    return basis_integrals(balls, p.basis) @ p.coeffs


@dataclass(frozen=True)
class PolarRule:
    """Gauss-Legendre (radial, weight rho) x trapezoid (angular) rule on the unit disc.

    Exact for bivariate polynomials of total degree <= min(2*m - 2, m_theta - 1).
    """

    m: int = 30
    m_theta: int = 61

    def __post_init__(self):
        if self.m < 1 or self.m_theta < 1:
            raise ValueError("rule sizes must be positive")

    @property
    def exact_degree(self) -> int:
        return min(2 * self.m - 2, self.m_theta - 1)

    @classmethod
    def for_degree(cls, degree: int) -> "PolarRule":
        m = (degree + 3) // 2
        return cls(m, max(2 * m - 1, degree + 1))

    def unit_nodes(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Nodes (u, v) on the unit disc and their weights, flattened."""
        return _unit_nodes(self.m, self.m_theta)


@lru_cache(maxsize=32)
def _unit_nodes(m: int, m_theta: int):
    t, w = np.polynomial.legendre.leggauss(m)
    rho = 0.5 * (t + 1.0)
    wr = 0.5 * w * rho
    theta = 2.0 * pi * np.arange(m_theta) / m_theta
    wt = np.full(m_theta, 2.0 * pi / m_theta)
    u = (rho[:, None] * np.cos(theta)[None, :]).ravel()
    v = (rho[:, None] * np.sin(theta)[None, :]).ravel()
    wts = (wr[:, None] * wt[None, :]).ravel()
    for arr in (u, v, wts):
        arr.setflags(write=False)
    return u, v, wts


DEFAULT_RULE = PolarRule()


def func_integrals(
    f: Callable, balls: Sequence[Ball], rule: PolarRule = DEFAULT_RULE
) -> np.ndarray:
    """Integrals of a vectorised ``f(x, y)`` over each disc.

    ``f`` receives arrays of shape ``(len(balls), nodes)``.
    """
    if len(balls) == 0:
        return np.zeros(0)
    u, v, w = rule.unit_nodes()
    centres = np.array([bl.centre for bl in balls], dtype=float).reshape(-1, 2)
    radii = np.array([bl.radius for bl in balls], dtype=float)
    x = centres[:, :1] + radii[:, None] * u[None, :]
    y = centres[:, 1:] + radii[:, None] * v[None, :]
    vals = np.broadcast_to(np.asarray(f(x, y), dtype=float), x.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        m, k = np.argwhere(bad)[0]
        raise IntegrationError(
            f"integrand is {vals[m, k]} at node ({x[m, k]!r}, {y[m, k]!r}) of ball {balls[m]}"
        )
    return (radii ** 2) * (vals @ w)


def func_integral_over_ball(f: Callable, ball: Ball, rule: PolarRule = DEFAULT_RULE) -> float:
    return float(func_integrals(f, [ball], rule)[0])


def integrals(f, balls: Sequence[Ball], rule: PolarRule = DEFAULT_RULE) -> np.ndarray:
    """Exact path for a :class:`PolynomialRep`, the polar rule for anything else."""
    if isinstance(f, PolynomialRep):
        return poly_integrals(f, balls)
    return func_integrals(f, balls, rule)
