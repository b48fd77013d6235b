"""Ball norm and generalised Lebesgue constant.

Suprema over all discs inside the domain are replaced by maxima over a
finite probe family, so every value returned here is a lower approximation
of the corresponding supremum.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .cubature import DEFAULT_RULE, PolarRule, basis_integrals, func_integrals, integrals, poly_integrals
from .geometry import Ball, BallConfig, ConfigError
from .interpolation import BasisKind, as_basis, assemble_vandermonde, VandermondeSystem
from .polyspace import PolynomialRep

DEFAULT_PROBE_RADII = (0.05, 0.1, 0.2, 0.4)
DEFAULT_PROBE_RESOLUTION = 41


@dataclass(frozen=True)
class ProbeSpec:
    resolution: int = DEFAULT_PROBE_RESOLUTION
    radii: tuple[float, ...] = DEFAULT_PROBE_RADII
    include_supports: bool = True
    domain_radius: float = 1.0
    min_radius: float = 1e-3

    def __post_init__(self):
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        if self.resolution < 1:
            raise ConfigError("probe resolution must be >= 1")
        if not self.radii or any(r <= 0 for r in self.radii):
            raise ConfigError("probe radii must be a nonempty list of positive numbers")


@dataclass(frozen=True)
class ProbeFamily:
    discs: tuple[Ball, ...]
    spec: ProbeSpec | None = None

    def __post_init__(self):
        object.__setattr__(self, "discs", tuple(self.discs))
        if not self.discs:
            raise ConfigError("empty probe family")

    def __len__(self) -> int:
        return len(self.discs)

    def __iter__(self):
        return iter(self.discs)

    @property
    def radii(self) -> np.ndarray:
        return np.array([d.radius for d in self.discs])

    def describe(self) -> dict:
        out = {"size": len(self)}
        if self.spec is not None:
            out.update(asdict(self.spec))
            out["radii"] = list(self.spec.radii)
        return out


def gen_probe_family(spec: ProbeSpec = ProbeSpec(), config: BallConfig | None = None) -> ProbeFamily:
    """Grid centres in [-R, R]^2 crossed with the radius list.

    Discs poking out of the domain are shrunk to touch its boundary; those
    that would end up smaller than ``spec.min_radius`` are dropped. With
    ``include_supports`` the discs of ``config`` are appended.
    """
    R = spec.domain_radius
    n = spec.resolution
    axis = np.array([0.0]) if n == 1 else np.linspace(-R, R, n)
    seen: set[tuple[float, float, float]] = set()
    discs: list[Ball] = []
    for cx in axis:
        for cy in axis:
            room = R - math.hypot(cx, cy)
            if room < spec.min_radius:
                continue
            for r in spec.radii:
                rr = min(r, room)
                if rr < spec.min_radius:
                    continue
                key = (float(cx), float(cy), rr)
                if key not in seen:
                    seen.add(key)
                    discs.append(Ball((cx, cy), rr))
    if spec.include_supports and config is not None:
        discs.extend(config.balls)
    return ProbeFamily(tuple(discs), spec)


def ball_norm(f, probes: ProbeFamily, rule: PolarRule = DEFAULT_RULE) -> float:
    """max_k |int_{D_k} f| / |D_k| over the probe family."""
    vals = integrals(f, probes.discs, rule)
    area = math.pi * probes.radii ** 2
    if not np.all(np.isfinite(vals)):
        raise ArithmeticError("non-finite probe integral")
    return float(np.max(np.abs(vals) / area))


def error_norm(f: Callable, p: PolynomialRep, probes: ProbeFamily,
               rule: PolarRule = DEFAULT_RULE) -> float:
    """Ball norm of f - p; f by the polar rule, p exactly."""
    diff = func_integrals(f, probes.discs, rule) - poly_integrals(p, probes.discs)
    if not np.all(np.isfinite(diff)):
        raise ArithmeticError("non-finite probe integral")
    return float(np.max(np.abs(diff) / (math.pi * probes.radii ** 2)))


def lower_bound(d: int, n: int = 2, c: float = 1.0) -> float:
    """c log d for n = 1, c d^((n-1)/2) otherwise."""
    if d < 1:
        raise ValueError("lower bound needs d >= 1")
    return c * math.log(d) if n == 1 else c * d ** ((n - 1) / 2)


@dataclass(frozen=True)
class LebesgueReport:
    lam: float
    argmax_disc: Ball
    matrix_dims: tuple[int, int]
    lower_bound: float
    degree: int
    probes: dict = field(default_factory=dict)
    row_sums: np.ndarray | None = field(default=None, repr=False, compare=False)


def lebesgue_matrix(sys: VandermondeSystem, probes: ProbeFamily) -> np.ndarray:
    """A[k, i] = |B_i| / |D_k| * int_{D_k} l_{B_i}."""
    W = basis_integrals(probes.discs, sys.basis)
    # int_{D_k} l_i = (W L^T)[k, i] with L = V^{-1}
    WLt = sys.solve(W.T).T
    r2 = sys.config.radii ** 2
    rho2 = probes.radii ** 2
    return WLt * r2[None, :] / rho2[:, None]


def lebesgue_constant(config: BallConfig | VandermondeSystem, basis=BasisKind.CHEBYSHEV,
                      probes: ProbeFamily | None = None) -> LebesgueReport:
    sys = config if isinstance(config, VandermondeSystem) else assemble_vandermonde(
        config, as_basis(basis, config.degree))
    config = sys.config
    if probes is None:
        probes = gen_probe_family(ProbeSpec(domain_radius=config.domain_radius), config)
    A = lebesgue_matrix(sys, probes)
    rows = np.sum(np.abs(A), axis=1)
    k = int(np.argmax(rows))
    lb = lower_bound(config.degree) if config.degree >= 1 else 0.0
    return LebesgueReport(float(rows[k]), probes.discs[k], A.shape, lb, config.degree,
                          probes.describe(), rows)


def lebesgue_direct(config: BallConfig, basis=BasisKind.CHEBYSHEV,
                    probes: Sequence[Ball] = ()) -> float:
    """Straight summation of max_k rho_k^-2 sum_i r_i^2 |int_{D_k} l_i|, one Lagrange function at a time."""
    from .interpolation import lagrange_coefficients

    sys = assemble_vandermonde(config, basis)
    lag = lagrange_coefficients(sys)
    discs = list(probes)
    rho2 = np.array([d.radius ** 2 for d in discs])
    total = np.zeros(len(discs))
    for i, b in enumerate(config.balls):
        total += b.radius ** 2 * np.abs(poly_integrals(lag[i], discs))
    return float(np.max(total / rho2))
