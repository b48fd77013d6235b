"""Polynomial interpolation on the disc from integrals over small discs."""

from .cubature import PolarRule, integrals, monomial_integrals
from .geometry import (
    Ball,
    BallConfig,
    ConfigError,
    gen_halton_config,
    gen_orbit_config,
    load_config,
    randomize_radii,
    save_config,
)
from .interpolation import (
    UnisolvenceError,
    Verdict,
    assemble_vandermonde,
    check_unisolvence,
    interpolate,
    lagrange_coefficients,
)
from .lebesgue import ProbeSpec, ball_norm, error_norm, gen_probe_family, lebesgue_constant
from .polyspace import BasisKind, BasisSpec, PolynomialRep, dim_poly_space, eval_poly, to_monomial

__all__ = [
    "Ball", "BallConfig", "BasisKind", "BasisSpec", "ConfigError", "PolarRule", "PolynomialRep",
    "ProbeSpec", "UnisolvenceError", "Verdict", "assemble_vandermonde", "ball_norm",
    "check_unisolvence", "dim_poly_space", "error_norm", "eval_poly", "gen_halton_config",
    "gen_orbit_config", "gen_probe_family", "integrals", "interpolate", "lagrange_coefficients",
    "lebesgue_constant", "load_config", "monomial_integrals", "randomize_radii", "save_config",
    "to_monomial",
]
