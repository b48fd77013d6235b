"""Discs, disc configurations and their generators.

Configurations are built either from orbits (concentric circles carrying
2k+1 equally spaced centres for k = d, d-2, ..., plus the origin when d is
even) or from point sets such as the 2-D Halton sequence. Two families of
deliberately degenerate configurations are provided for testing.
"""

from __future__ import annotations

import csv
import enum
import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .polyspace import dim_poly_space, dim_sphere_space

SAFETY_MARGIN = 1e-9


class ConfigError(ValueError):
    """Raised for malformed or inconsistent disc configurations."""


@dataclass(frozen=True)
class Ball:
    centre: tuple[float, ...]
    radius: float

    def __post_init__(self):
        c = tuple(float(v) for v in np.ravel(self.centre))
        object.__setattr__(self, "centre", c)
        object.__setattr__(self, "radius", float(self.radius))
        if not all(math.isfinite(v) for v in c):
            raise ConfigError(f"centre must be finite, got {c}")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ConfigError(f"radius must be positive, got {self.radius}")

    @property
    def volume(self) -> float:
        return ball_volume(self.radius, len(self.centre))

    def contained_in(self, domain_radius: float, tol: float = 1e-12) -> bool:
        return math.hypot(*self.centre) + self.radius <= domain_radius + tol


def ball_volume(radius: float, n: int = 2) -> float:
    """Volume of the n-ball, pi^(n/2) / Gamma(n/2 + 1) * radius^n."""
    if radius <= 0 or n < 1:
        raise ValueError(f"need radius > 0 and n >= 1, got radius={radius}, n={n}")
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1) * radius ** n


@dataclass(frozen=True)
class BallConfig:
    balls: tuple[Ball, ...]
    degree: int
    label: str = ""
    domain_radius: float = 1.0
    allow_exceed: bool = False
    expect_singular: bool = False

    def __post_init__(self):
        object.__setattr__(self, "balls", tuple(self.balls))
        expected = dim_poly_space(self.degree, 2)
        if len(self.balls) != expected:
            raise ConfigError(
                f"expected {expected} balls for degree {self.degree}, got {len(self.balls)}"
            )
        if not self.allow_exceed:
            for i, b in enumerate(self.balls):
                if not b.contained_in(self.domain_radius):
                    raise ConfigError(
                        f"ball {i} {b} leaves the domain of radius {self.domain_radius}"
                    )

    def __len__(self) -> int:
        return len(self.balls)

    def __iter__(self):
        return iter(self.balls)

    @property
    def centres(self) -> np.ndarray:
        return np.array([b.centre for b in self.balls])

    @property
    def radii(self) -> np.ndarray:
        return np.array([b.radius for b in self.balls])

    def with_radii(self, radii: Sequence[float], **changes) -> "BallConfig":
        balls = tuple(Ball(b.centre, r) for b, r in zip(self.balls, radii, strict=True))
        return replace(self, balls=balls, **changes)

    def scaled_radii(self, factor: float) -> "BallConfig":
        return self.with_radii(self.radii * factor)

    def is_disjoint(self) -> bool:
        return _min_gap(self.centres, self.radii) > 0


def _pairwise_distances(centres: np.ndarray) -> np.ndarray:
    diff = centres[:, None, :] - centres[None, :, :]
    dist = np.sqrt(np.sum(diff ** 2, axis=-1))
    np.fill_diagonal(dist, np.inf)
    return dist


def _min_gap(centres: np.ndarray, radii: np.ndarray) -> float:
    if len(centres) < 2:
        return math.inf
    return float(np.min(_pairwise_distances(centres) - radii[:, None] - radii[None, :]))


# -- radius rules -----------------------------------------------------------


@dataclass(frozen=True)
class MaxDisjoint:
    """Largest common radius keeping the discs pairwise disjoint and inside the domain."""


@dataclass(frozen=True)
class Fixed:
    radius: float


@dataclass(frozen=True)
class PerOrbit:
    """One radius per orbit, outermost first; the origin disc (even d) takes the last entry."""

    radii: tuple[float, ...]


RadiusRule = MaxDisjoint | Fixed | PerOrbit


# -- orbits -----------------------------------------------------------------


class OrbitRule(str, enum.Enum):
    CHEBYSHEV = "chebyshev"
    EQUIDISTANT = "equidistant"
    EXPLICIT = "explicit"


def orbit_degrees(d: int) -> list[int]:
    """Degrees of the saturated orbits: d, d-2, ..., down to 1 or 2."""
    return list(range(d, 0, -2))


@dataclass(frozen=True)
class OrbitSchedule:
    """Normalised orbit radii in (0, 1], outermost first.

    The generator multiplies them by ``domain_radius - ball_radius`` so
    that the outermost discs stay inside the domain. The origin disc of an
    even degree is implicit and not listed.
    """

    orbit_radii: tuple[float, ...]
    rule: OrbitRule = OrbitRule.EXPLICIT

    def __post_init__(self):
        r = tuple(float(v) for v in self.orbit_radii)
        object.__setattr__(self, "orbit_radii", r)
        object.__setattr__(self, "rule", OrbitRule(self.rule))
        if any(not (0 < v <= 1) for v in r):
            raise ConfigError(f"orbit radii must lie in (0, 1], got {r}")
        if any(r[i] <= r[i + 1] for i in range(len(r) - 1)):
            raise ConfigError(f"orbit radii must be strictly decreasing, got {r}")

    @classmethod
    def chebyshev(cls, d: int) -> "OrbitSchedule":
        # positive Chebyshev-Gauss nodes of degree d + 1; for even d the
        # remaining nonnegative node is 0, i.e. the degenerate orbit
        m = d + 1
        nodes = [math.cos((2 * k - 1) * math.pi / (2 * m)) for k in range(1, m + 1)]
        pos = [x for x in nodes if x > 1e-12]
        return cls(tuple(pos[: len(orbit_degrees(d))]), OrbitRule.CHEBYSHEV)

    @classmethod
    def equidistant(cls, d: int) -> "OrbitSchedule":
        s = len(orbit_degrees(d))
        n = s + 1
        return cls(tuple(j / n for j in range(s, 0, -1)), OrbitRule.EQUIDISTANT)

    @classmethod
    def for_rule(cls, rule: OrbitRule | str, d: int) -> "OrbitSchedule":
        rule = OrbitRule(rule)
        if rule is OrbitRule.CHEBYSHEV:
            return cls.chebyshev(d)
        if rule is OrbitRule.EQUIDISTANT:
            return cls.equidistant(d)
        raise ConfigError("explicit schedules must be constructed with their radii")


def _orbit_unit_centres(d: int, schedule: OrbitSchedule, phase: float) -> tuple[np.ndarray, list[int]]:
    """Centres on the unit-scaled orbits plus the orbit index of each centre."""
    degrees = orbit_degrees(d)
    if len(schedule.orbit_radii) != len(degrees):
        raise ConfigError(
            f"degree {d} needs {len(degrees)} orbit radii, schedule has {len(schedule.orbit_radii)}"
        )
    pts, owner = [], []
    for j, (dj, rj) in enumerate(zip(degrees, schedule.orbit_radii)):
        count = dim_sphere_space(dj, 2)
        theta = phase + 2 * math.pi * np.arange(count) / count
        pts.append(np.column_stack([rj * np.cos(theta), rj * np.sin(theta)]))
        owner += [j] * count
    if d % 2 == 0:
        pts.append(np.zeros((1, 2)))
        owner.append(len(degrees))
    return np.vstack(pts), owner


def gen_orbit_config(
    d: int,
    schedule: OrbitSchedule | OrbitRule | str = OrbitRule.CHEBYSHEV,
    ball_radius_rule: RadiusRule = MaxDisjoint(),
    phase: float = 0.0,
    domain_radius: float = 1.0,
) -> BallConfig:
    """Discs centred on saturated orbits, plus one at the origin for even ``d``."""
    if d < 0:
        raise ConfigError(f"degree must be >= 0, got {d}")
    if not isinstance(schedule, OrbitSchedule):
        schedule = OrbitSchedule.for_rule(schedule, d)
    unit, owner = _orbit_unit_centres(d, schedule, phase)
    n_orbits = len(schedule.orbit_radii)
    R = domain_radius

    if isinstance(ball_radius_rule, MaxDisjoint):
        if n_orbits == 0:
            radii = np.array([R - SAFETY_MARGIN])
            scale = R
        else:
            ring = unit[: len(unit) - (d % 2 == 0)]
            # centres scale with (R - rho); disjointness needs (R - rho) * D >= 2 rho
            D = float(np.min(_pairwise_distances(ring))) if len(ring) > 1 else 2.0
            rho = R * D / (2.0 + D) - SAFETY_MARGIN
            scale = R - rho
            radii = np.full(len(unit), rho)
            if d % 2 == 0:
                inner = schedule.orbit_radii[-1] * scale
                radii[-1] = min(inner - rho, R) - SAFETY_MARGIN
    elif isinstance(ball_radius_rule, Fixed):
        rho = ball_radius_rule.radius
        scale = R - rho
        radii = np.full(len(unit), rho)
    elif isinstance(ball_radius_rule, PerOrbit):
        per = list(ball_radius_rule.radii)
        needed = n_orbits + (d % 2 == 0)
        if len(per) != needed:
            raise ConfigError(f"PerOrbit needs {needed} radii, got {len(per)}")
        scale = R - max(per[:n_orbits], default=0.0)
        radii = np.array([per[j] for j in owner])
    else:
        raise TypeError(f"unknown radius rule {ball_radius_rule!r}")

    if scale <= 0:
        raise ConfigError("ball radius leaves no room for the orbits")
    centres = unit * scale
    label = {
        OrbitRule.CHEBYSHEV: "chebyshev-orbits",
        OrbitRule.EQUIDISTANT: "equidistant-orbits",
        OrbitRule.EXPLICIT: "explicit-orbits",
    }[schedule.rule]
    balls = tuple(Ball(c, r) for c, r in zip(centres, radii))
    return BallConfig(balls, d, label, domain_radius)


# -- point sets -------------------------------------------------------------


def radical_inverse(i: int, base: int) -> float:
    """Van der Corput radical inverse of ``i`` in ``base``, correctly rounded."""
    num, den = 0, 1
    while i > 0:
        i, digit = divmod(i, base)
        num = num * base + digit
        den *= base
    return num / den


def halton_points(count: int, start: int = 1, bases: tuple[int, int] = (2, 3)) -> np.ndarray:
    """Unscrambled Halton points in [0, 1]^2 with indices ``start .. start+count-1``."""
    idx = range(start, start + count)
    return np.array([[radical_inverse(i, b) for b in bases] for i in idx]).reshape(count, len(bases))


def _radii_for_centres(centres: np.ndarray, rule: RadiusRule, R: float) -> np.ndarray:
    if isinstance(rule, Fixed):
        return np.full(len(centres), rule.radius)
    if isinstance(rule, MaxDisjoint):
        boundary = R - np.hypot(centres[:, 0], centres[:, 1])
        half = np.min(_pairwise_distances(centres)) / 2 if len(centres) > 1 else math.inf
        return np.full(len(centres), min(half, float(np.min(boundary))) - SAFETY_MARGIN)
    raise ConfigError(f"radius rule {rule!r} does not apply to point-set configurations")


def gen_halton_config(
    d: int,
    margin: float = 0.1,
    ball_radius_rule: RadiusRule = MaxDisjoint(),
    domain_radius: float = 1.0,
) -> BallConfig:
    """Discs centred at the first Halton points falling inside the shrunken domain."""
    if not 0 < margin < 1:
        raise ConfigError(f"margin must lie in (0, 1), got {margin}")
    n = dim_poly_space(d, 2)
    keep, i = [], 1
    while len(keep) < n:
        u = 2.0 * radical_inverse(i, 2) - 1.0
        v = 2.0 * radical_inverse(i, 3) - 1.0
        if math.hypot(u, v) <= 1.0 - margin:
            keep.append((u * domain_radius, v * domain_radius))
        i += 1
    centres = np.array(keep)
    radii = _radii_for_centres(centres, ball_radius_rule, domain_radius)
    return BallConfig(tuple(Ball(c, r) for c, r in zip(centres, radii)), d, "halton", domain_radius)


def config_from_centres(
    centres: np.ndarray,
    d: int,
    shrink: float = 1.0,
    ball_radius_rule: RadiusRule = MaxDisjoint(),
    label: str = "points",
    domain_radius: float = 1.0,
) -> BallConfig:
    """Discs on given centres, first pulled towards the origin by ``shrink``."""
    centres = np.asarray(centres, dtype=float).reshape(-1, 2) * shrink
    radii = _radii_for_centres(centres, ball_radius_rule, domain_radius)
    return BallConfig(tuple(Ball(c, r) for c, r in zip(centres, radii)), d, label, domain_radius)


# -- degenerate families ----------------------------------------------------


def counterexample_concentric(d: int) -> BallConfig:
    """All discs centred at the origin; never unisolvent for d >= 1."""
    if d < 1:
        raise ConfigError("counterexamples need d >= 1")
    n = dim_poly_space(d, 2)
    balls = tuple(Ball((0.0, 0.0), j / (n + 1)) for j in range(1, n + 1))
    return BallConfig(balls, d, "concentric", expect_singular=True)


def counterexample_collinear(d: int, radius: float = 0.1) -> BallConfig:
    """Translates of one disc along the x-axis; never unisolvent for d >= 1."""
    if d < 1:
        raise ConfigError("counterexamples need d >= 1")
    n = dim_poly_space(d, 2)
    xs = np.linspace(-0.5, 0.5, n)
    balls = tuple(Ball((x, 0.0), radius) for x in xs)
    return BallConfig(balls, d, "collinear", expect_singular=True)


# -- radius perturbation ----------------------------------------------------


def randomize_radii(config: BallConfig, seed: int, overlap_allowed: bool = False) -> BallConfig:
    """Redraw every radius uniformly from (0, r_max] with a seeded generator.

    ``r_max`` is the distance to the domain boundary, further capped by half
    the nearest-centre distance unless overlaps are allowed.
    """
    rng = np.random.default_rng(seed)
    c = config.centres
    rmax = config.domain_radius - np.hypot(c[:, 0], c[:, 1])
    if not overlap_allowed and len(c) > 1:
        rmax = np.minimum(rmax, np.min(_pairwise_distances(c), axis=1) / 2 - SAFETY_MARGIN)
    if np.any(rmax <= 0):
        raise ConfigError("some centre has no room for a disc")
    radii = rmax * (1.0 - rng.random(len(c)))
    suffix = "+random-radii" + ("-overlap" if overlap_allowed else "")
    return config.with_radii(radii, label=config.label + suffix)


# -- rigid motions and scalings ---------------------------------------------


def similarity(balls: Iterable[Ball], scale: float = 1.0, angle: float = 0.0,
               shift: Sequence[float] = (0.0, 0.0)) -> list[Ball]:
    """Apply x -> scale * (Rot(angle) x + shift) to every disc."""
    rot = np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])
    out = []
    for b in balls:
        c = scale * (rot @ np.asarray(b.centre) + np.asarray(shift, dtype=float))
        out.append(Ball(c, abs(scale) * b.radius))
    return out


def similar_config(config: BallConfig, scale: float = 1.0, angle: float = 0.0,
                   shift: Sequence[float] = (0.0, 0.0)) -> BallConfig:
    balls = similarity(config.balls, scale, angle, shift)
    return replace(config, balls=tuple(balls), allow_exceed=True,
                   domain_radius=config.domain_radius * abs(scale),
                   label=config.label + "+similarity")


# -- file I/O ---------------------------------------------------------------


def sidecar_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def save_config(config: BallConfig, path: str | Path) -> None:
    """Write ``x,y,r`` rows to ``path`` and the metadata to ``path + '.json'``."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y", "r"])
        for b in config.balls:
            w.writerow([repr(b.centre[0]), repr(b.centre[1]), repr(b.radius)])
    meta = {
        "degree": config.degree,
        "label": config.label,
        "domain_radius": config.domain_radius,
        "allow_exceed": config.allow_exceed,
        "expect_singular": config.expect_singular,
    }
    sidecar_path(path).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def _read_rows(path: Path) -> tuple[list[str], list[list[float]]]:
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ConfigError(f"{path}: empty file") from None
        rows = []
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not v.strip() for v in row):
                continue
            if len(row) != len(header):
                raise ConfigError(f"{path}:{line_no}: expected {len(header)} fields, got {len(row)}")
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise ConfigError(f"{path}:{line_no}: {exc}") from None
    return header, rows


def _infer_degree(n: int) -> int | None:
    d = 0
    while dim_poly_space(d, 2) < n:
        d += 1
    return d if dim_poly_space(d, 2) == n else None


def load_config(path: str | Path, degree: int | None = None, shrink: float = 1.0,
                ball_radius_rule: RadiusRule = MaxDisjoint()) -> BallConfig:
    """Read a configuration written by :func:`save_config`.

    Files with only ``x,y`` columns are read as centres; discs are then
    built on them after an optional pull towards the origin by ``shrink``.
    Without a sidecar the degree comes from ``degree`` or, failing that,
    from the number of rows.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(path)
    header, rows = _read_rows(path)
    meta = {}
    side = sidecar_path(path)
    if side.exists():
        try:
            meta = json.loads(side.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{side}:{exc.lineno}: {exc.msg}") from None
    if degree is None:
        degree = meta.get("degree")
    if degree is None:
        degree = _infer_degree(len(rows))
        if degree is None:
            raise ConfigError(f"{path}: {len(rows)} balls is not the dimension of any P_d(R^2)")
    expected = dim_poly_space(degree, 2)
    if len(rows) != expected:
        raise ConfigError(f"{path}: degree {degree}, expected {expected} balls, found {len(rows)}")
    label = meta.get("label", f"file:{path}")
    R = float(meta.get("domain_radius", 1.0))
    data = np.array(rows, dtype=float).reshape(len(rows), -1)

    if header == ["x", "y"]:
        return config_from_centres(data, degree, shrink, ball_radius_rule, label, R)
    if header != ["x", "y", "r"]:
        raise ConfigError(f"{path}:1: header must be 'x,y,r' or 'x,y', got {','.join(header)}")
    balls = tuple(Ball(row[:2] * shrink, row[2]) for row in data)
    return BallConfig(balls, degree, label, R,
                      allow_exceed=bool(meta.get("allow_exceed", False)),
                      expect_singular=bool(meta.get("expect_singular", False)))
