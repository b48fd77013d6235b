"""Interpolation from disc averages.

Given N = dim P_d discs B_j and a basis p_i, the integral Vandermonde matrix
is V[i, j] = int_{B_j} p_i. The Lagrange functions l_i = sum_j L[i, j] p_j
satisfy int_{B_k} l_i = delta_ik, i.e. L = V^{-1}, and the interpolant of f
is sum_i (int_{B_i} f) l_i.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.linalg

from .cubature import DEFAULT_RULE, PolarRule, basis_integrals, integrals
from .geometry import BallConfig, ConfigError
from .polyspace import BasisKind, BasisSpec, PolynomialRep, dim_poly_space

SINGULAR_THRESHOLD = 1e-12


class UnisolvenceError(np.linalg.LinAlgError):
    """The disc configuration is (numerically) not unisolvent."""

    def __init__(self, sigma_ratio: float, label: str = ""):
        self.sigma_ratio = sigma_ratio
        where = f" for {label}" if label else ""
        super().__init__(
            f"Vandermonde system{where} is singular: sigma_min/sigma_max = {sigma_ratio:.3e}"
        )


class Verdict(str, enum.Enum):
    UNISOLVENT = "Unisolvent"
    SINGULAR = "Singular"


def as_basis(basis, degree: int) -> BasisSpec:
    if isinstance(basis, BasisSpec):
        if basis.degree != degree:
            raise ConfigError(f"basis degree {basis.degree} does not match config degree {degree}")
        return basis
    return BasisSpec(BasisKind(basis), degree)


def _ratio(sv: np.ndarray) -> float:
    return float(sv[-1] / sv[0]) if sv[0] > 0 else 0.0


@dataclass(frozen=True, eq=False)
class VandermondeSystem:
    """The integral Vandermonde matrix of a configuration.

    ``sigma_ratio`` is measured on the matrix of disc *averages*
    (column j divided by |B_j|), which has the same null space as ``V``
    but does not degrade when one disc is much smaller than the others.
    ``cond_estimate`` is the 2-norm condition number of ``V`` itself.
    """

    V: np.ndarray
    basis: BasisSpec
    config: BallConfig
    singular_values: np.ndarray = field(repr=False)
    average_singular_values: np.ndarray = field(repr=False)
    _lu: tuple | None = field(default=None, repr=False)

    @property
    def sigma_ratio(self) -> float:
        return _ratio(self.average_singular_values)

    @property
    def cond_estimate(self) -> float:
        r = _ratio(self.singular_values)
        return float("inf") if r == 0 else 1.0 / r

    @property
    def is_singular(self) -> bool:
        return self.sigma_ratio <= SINGULAR_THRESHOLD

    def require_nonsingular(self) -> None:
        if self.is_singular or self._lu is None:
            raise UnisolvenceError(self.sigma_ratio, self.config.label)

    def solve_transpose(self, rhs: np.ndarray) -> np.ndarray:
        """Solve V^T x = rhs (rhs may have several columns)."""
        self.require_nonsingular()
        return scipy.linalg.lu_solve(self._lu, rhs, trans=1)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Solve V x = rhs."""
        self.require_nonsingular()
        return scipy.linalg.lu_solve(self._lu, rhs)


def assemble_vandermonde(config: BallConfig, basis=BasisKind.CHEBYSHEV) -> VandermondeSystem:
    basis = as_basis(basis, config.degree)
    n = dim_poly_space(basis.degree, 2)
    if len(config) != n:
        raise ConfigError(f"expected {n} balls, got {len(config)}")
    V = basis_integrals(config.balls, basis).T
    V.setflags(write=False)
    sv = np.linalg.svd(V, compute_uv=False)
    sv_avg = np.linalg.svd(V / (np.pi * config.radii ** 2)[None, :], compute_uv=False)
    lu = None
    if _ratio(sv_avg) > SINGULAR_THRESHOLD:
        lu = scipy.linalg.lu_factor(V, check_finite=True)
    return VandermondeSystem(V, basis, config, sv, sv_avg, lu)


@dataclass(frozen=True, eq=False)
class LagrangeBasis:
    """Row i of ``L`` holds the coefficients of l_{B_i} in ``basis``."""

    L: np.ndarray
    basis: BasisSpec

    def __len__(self) -> int:
        return self.L.shape[0]

    def __getitem__(self, i: int) -> PolynomialRep:
        return PolynomialRep(self.basis, self.L[i])


def lagrange_coefficients(sys: VandermondeSystem) -> LagrangeBasis:
    # L V = I  <=>  V^T L^T = I
    n = sys.V.shape[0]
    L = sys.solve_transpose(np.eye(n)).T
    return LagrangeBasis(L, sys.basis)


def interpolate(
    f: Callable | PolynomialRep,
    config: BallConfig | VandermondeSystem,
    basis=BasisKind.CHEBYSHEV,
    rule: PolarRule = DEFAULT_RULE,
) -> PolynomialRep:
    """Polynomial of degree ``config.degree`` with the same disc integrals as ``f``.

    A :class:`PolynomialRep` argument is integrated exactly; any other
    callable goes through ``rule``.
    """
    sys = config if isinstance(config, VandermondeSystem) else assemble_vandermonde(config, basis)
    data = integrals(f, sys.config.balls, rule)
    if not np.all(np.isfinite(data)):
        raise ArithmeticError("non-finite data integral")
    return PolynomialRep(sys.basis, sys.solve_transpose(data))


@dataclass(frozen=True)
class UnisolvenceReport:
    verdict: Verdict
    sigma_ratio: float
    cond: float


def check_unisolvence(config: BallConfig, basis=BasisKind.CHEBYSHEV) -> UnisolvenceReport:
    sys = assemble_vandermonde(config, basis)
    verdict = Verdict.SINGULAR if sys.is_singular else Verdict.UNISOLVENT
    return UnisolvenceReport(verdict, sys.sigma_ratio, sys.cond_estimate)
