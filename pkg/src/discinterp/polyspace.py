"""Bivariate polynomial spaces of bounded total degree.

Two ordered bases of P_d(R^2) are supported: monomials x^a y^b and the
tensor Chebyshev family T_a(x) T_b(y), both restricted to a + b <= d and
listed in graded-lexicographic order (degree first, then a descending).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np


class BasisKind(str, enum.Enum):
    MONOMIAL = "monomial"
    CHEBYSHEV = "chebyshev"


@dataclass(frozen=True, order=True)
class MultiIndex:
    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError(f"exponents must be nonnegative, got ({self.a}, {self.b})")

    @property
    def degree(self) -> int:
        return self.a + self.b


@dataclass(frozen=True)
class BasisSpec:
    kind: BasisKind
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "kind", BasisKind(self.kind))
        if self.degree < 0:
            raise ValueError(f"degree must be >= 0, got {self.degree}")

    def __len__(self) -> int:
        return dim_poly_space(self.degree, 2)

    @property
    def indices(self) -> tuple[MultiIndex, ...]:
        return enumerate_basis(self)


@dataclass(frozen=True, eq=False)
class PolynomialRep:
    """A polynomial stored as coefficients against an ordered basis."""

    basis: BasisSpec
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float).copy()
        if c.shape != (len(self.basis),):
            raise ValueError(
                f"expected {len(self.basis)} coefficients for {self.basis}, got shape {c.shape}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __call__(self, x, y):
        return eval_poly(self, x, y)

    def __eq__(self, other):
        if not isinstance(other, PolynomialRep):
            return NotImplemented
        return self.basis == other.basis and np.array_equal(self.coeffs, other.coeffs)

    def coefficient_grid(self) -> np.ndarray:
        """Coefficients scattered into a (d+1, d+1) array indexed by (a, b)."""
        d = self.basis.degree
        grid = np.zeros((d + 1, d + 1))
        a, b = exponent_arrays(self.basis.degree)
        grid[a, b] = self.coeffs
        return grid


def dim_poly_space(d: int, n: int = 2) -> int:
    """Dimension of polynomials of total degree <= d in n variables."""
    if d < 0 or n < 1:
        raise ValueError(f"need d >= 0 and n >= 1, got d={d}, n={n}")
    return comb(d + n, n)


def dim_sphere_space(d: int, n: int = 2) -> int:
    """Dimension of P_d restricted to the sphere S^{n-1}."""
    if d < 0 or n < 2:
        raise ValueError(f"need d >= 0 and n >= 2, got d={d}, n={n}")
    lower = comb(d - 2 + n, n) if d >= 2 else 0
    return comb(d + n, n) - lower


@lru_cache(maxsize=None)
def _graded_lex(d: int) -> tuple[MultiIndex, ...]:
    return tuple(MultiIndex(k - j, j) for k in range(d + 1) for j in range(k + 1))


def enumerate_basis(spec: BasisSpec) -> tuple[MultiIndex, ...]:
    """Exponent pairs of the basis in graded-lex order.

    For monomials ``(a, b)`` stands for x^a y^b, for the Chebyshev family
    it stands for T_a(x) T_b(y).
    """
    return _graded_lex(spec.degree)


@lru_cache(maxsize=None)
def _exponent_arrays(d: int) -> tuple[np.ndarray, np.ndarray]:
    idx = _graded_lex(d)
    a = np.array([m.a for m in idx], dtype=int)
    b = np.array([m.b for m in idx], dtype=int)
    a.setflags(write=False)
    b.setflags(write=False)
    return a, b


def exponent_arrays(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectors of x- and y-exponents in basis order."""
    return _exponent_arrays(d)


@lru_cache(maxsize=None)
def chebyshev_integer_coeffs(d: int) -> tuple[tuple[int, ...], ...]:
    """Exact monomial coefficients of T_0..T_d; row k lists t^0..t^d."""
    rows = [[0] * (d + 1) for _ in range(d + 1)]
    rows[0][0] = 1
    if d >= 1:
        rows[1][1] = 1
    for k in range(1, d):
        nxt = rows[k + 1]
        for j in range(d):
            nxt[j + 1] += 2 * rows[k][j]
        for j in range(d + 1):
            nxt[j] -= rows[k - 1][j]
    return tuple(tuple(r) for r in rows)


def chebyshev_matrix(d: int) -> np.ndarray:
    """Float copy of :func:`chebyshev_integer_coeffs` as a (d+1, d+1) array."""
    return np.array(chebyshev_integer_coeffs(d), dtype=float)


def _chebyshev_table(t: np.ndarray, d: int) -> np.ndarray:
    out = np.empty((d + 1,) + t.shape)
    out[0] = 1.0
    if d >= 1:
        out[1] = t
    for k in range(1, d):
        out[k + 1] = 2.0 * t * out[k] - out[k - 1]
    return out


def _power_table(t: np.ndarray, d: int) -> np.ndarray:
    out = np.empty((d + 1,) + t.shape)
    out[0] = 1.0
    for k in range(d):
        out[k + 1] = out[k] * t
    return out


def basis_values(spec: BasisSpec, x, y) -> np.ndarray:
    """Values of every basis function; shape ``(len(spec),) + broadcast(x, y).shape``."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    table = _chebyshev_table if spec.kind is BasisKind.CHEBYSHEV else _power_table
    tx = table(x, spec.degree)
    ty = table(y, spec.degree)
    a, b = exponent_arrays(spec.degree)
    return tx[a] * ty[b]


def eval_poly(p: PolynomialRep, x, y):
    vals = basis_values(p.basis, x, y)
    out = np.tensordot(p.coeffs, vals, axes=(0, 0))
    return float(out) if np.ndim(out) == 0 else out


def monomial_grid(p: PolynomialRep) -> np.ndarray:
    """Monomial coefficients of ``p`` as a (d+1, d+1) array indexed by (a, b)."""
    grid = p.coefficient_grid()
    if p.basis.kind is BasisKind.CHEBYSHEV:
        cheb = chebyshev_matrix(p.basis.degree)
        # sum_{a,b} g[a,b] T_a(x) T_b(y) = sum_{i,j} (C^T g C)[i,j] x^i y^j
        grid = cheb.T @ grid @ cheb
    return grid


def to_monomial(p: PolynomialRep) -> PolynomialRep:
    if p.basis.kind is BasisKind.MONOMIAL:
        return p
    grid = monomial_grid(p)
    a, b = exponent_arrays(p.basis.degree)
    return PolynomialRep(BasisSpec(BasisKind.MONOMIAL, p.basis.degree), grid[a, b])


def basis_element(spec: BasisSpec, a: int, b: int) -> PolynomialRep:
    """The single basis function with exponents ``(a, b)``."""
    c = np.zeros(len(spec))
    c[enumerate_basis(spec).index(MultiIndex(a, b))] = 1.0
    return PolynomialRep(spec, c)
