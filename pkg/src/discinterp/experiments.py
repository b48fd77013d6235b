"""Numerical experiments: conditioning, interpolation error, Lebesgue sweeps,
random radii and degenerate configurations.

Every ``run_*`` function returns a header tuple and a list of row tuples,
sorted by (family, degree, trial) whatever the scheduling.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable

import numpy as np

from .geometry import (
    BallConfig,
    ConfigError,
    counterexample_collinear,
    counterexample_concentric,
    gen_halton_config,
    gen_orbit_config,
    load_config,
    randomize_radii,
)
from .interpolation import UnisolvenceError, Verdict, assemble_vandermonde, interpolate
from .lebesgue import ProbeFamily, ProbeSpec, error_norm, gen_probe_family, lebesgue_constant, lower_bound
from .polyspace import BasisKind

log = logging.getLogger(__name__)


def f1(x, y):
    return np.exp(x) * np.sin(x + y)


def f2(x, y):
    return 1.0 / (25.0 * (x * x + y * y) + 1.0)


FUNCTIONS: dict[str, Callable] = {"f1": f1, "f2": f2}

ORBIT_FAMILIES = ("chebyshev-orbits", "equidistant-orbits")
POINT_FAMILIES = ("halton",)
EXPERIMENTS = ("conditioning", "interp_error", "lebesgue_sweep", "random_radii", "counterexamples")


def make_config(family: str, d: int, phase: float = 0.0) -> BallConfig:
    """Build the configuration named by a ``--family`` value.

    ``file:<path>`` may contain ``{d}``, which is replaced by the degree.
    """
    if family == "chebyshev-orbits":
        return gen_orbit_config(d, "chebyshev", phase=phase)
    if family == "equidistant-orbits":
        return gen_orbit_config(d, "equidistant", phase=phase)
    if family == "halton":
        return gen_halton_config(d)
    if family == "concentric":
        return counterexample_concentric(d)
    if family == "collinear":
        return counterexample_collinear(d)
    if family.startswith("file:"):
        path = family[len("file:"):].replace("{d}", str(d))
        return load_config(path, degree=d)
    raise ConfigError(f"unknown family {family!r}")


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    degrees: tuple[int, ...]
    families: tuple[str, ...] = ()
    basis: BasisKind = BasisKind.CHEBYSHEV
    seed: int = 0
    function: str = "f1"
    trials: int = 20
    probes: ProbeSpec = field(default_factory=ProbeSpec)
    phase: float = 0.0
    jobs: int = 1

    def __post_init__(self):
        if self.name not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.name!r}")
        degs = tuple(int(d) for d in self.degrees)
        if not degs:
            raise ValueError("degrees must be nonempty")
        if any(b <= a for a, b in zip(degs, degs[1:])):
            raise ValueError("degrees must be strictly ascending")
        object.__setattr__(self, "degrees", degs)
        object.__setattr__(self, "families", tuple(self.families))
        object.__setattr__(self, "basis", BasisKind(self.basis))
        if self.function not in FUNCTIONS:
            raise ValueError(f"unknown function {self.function!r}")

    def describe(self) -> dict:
        return {
            "name": self.name,
            "degrees": list(self.degrees),
            "families": list(self.families),
            "basis": self.basis.value,
            "seed": self.seed,
            "function": self.function,
            "trials": self.trials,
            "phase": self.phase,
            "probes": {
                "resolution": self.probes.resolution,
                "radii": list(self.probes.radii),
                "include_supports": self.probes.include_supports,
                "domain_radius": self.probes.domain_radius,
                "min_radius": self.probes.min_radius,
            },
        }


def _map(fn, tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


def _probes_for(spec: ExperimentSpec, config: BallConfig) -> ProbeFamily:
    return gen_probe_family(spec.probes, config)


def _warn_without_file(families: Iterable[str]) -> None:
    if not any(f.startswith("file:") for f in families):
        log.warning("no point file given, skipping the optimal-discs family")


# -- conditioning ----------------------------------------------------------

CONDITIONING_HEADER = ("d", "family", "basis", "cond")


def _conditioning_task(task):
    family, d, phase = task
    cfg = make_config(family, d, phase)
    return [(family, d, b.value, assemble_vandermonde(cfg, b).cond_estimate)
            for b in (BasisKind.MONOMIAL, BasisKind.CHEBYSHEV)]


def run_conditioning(spec: ExperimentSpec):
    families = spec.families or ("chebyshev-orbits", "halton")
    tasks = [(fam, d, spec.phase) for fam in families for d in spec.degrees]
    rows = [r for chunk in _map(_conditioning_task, tasks, spec.jobs) for r in chunk]
    rows = [(d, fam, b, c) for fam, d, b, c in rows]
    return CONDITIONING_HEADER, rows


# -- interpolation error ---------------------------------------------------

INTERP_HEADER = ("d", "family", "function", "error", "status")


def _interp_task(task):
    spec, family, d = task
    f = FUNCTIONS[spec.function]
    try:
        cfg = make_config(family, d, spec.phase)
        p = interpolate(f, cfg, spec.basis)
        err = error_norm(f, p, _probes_for(spec, cfg))
        return (d, family, spec.function, err, "ok")
    except FileNotFoundError as exc:
        log.warning("skipping %s at d=%d: %s", family, d, exc)
        return (d, family, spec.function, float("nan"), "missing-file")
    except UnisolvenceError as exc:
        return (d, family, spec.function, float("nan"), f"singular:{exc.sigma_ratio:.3e}")


def run_interp_error(spec: ExperimentSpec, function: str | None = None):
    if function is not None:
        spec = replace(spec, function=function)
    families = spec.families or ("halton",) + ORBIT_FAMILIES
    _warn_without_file(families)
    tasks = [(spec, fam, d) for fam in families for d in spec.degrees]
    return INTERP_HEADER, _map(_interp_task, tasks, spec.jobs)


# -- Lebesgue constants ------------------------------------------------------

LEBESGUE_HEADER = ("d", "family", "lambda", "lower_bound", "probes", "status")


def _lebesgue_task(task):
    spec, family, d = task
    lb = lower_bound(d) if d >= 1 else 0.0
    try:
        cfg = make_config(family, d, spec.phase)
        probes = _probes_for(spec, cfg)
        rep = lebesgue_constant(cfg, spec.basis, probes)
        return (d, family, rep.lam, lb, len(probes), "ok")
    except FileNotFoundError as exc:
        log.warning("skipping %s at d=%d: %s", family, d, exc)
        return (d, family, float("nan"), lb, 0, "missing-file")
    except UnisolvenceError as exc:
        return (d, family, float("nan"), lb, 0, f"singular:{exc.sigma_ratio:.3e}")


def run_lebesgue_sweep(spec: ExperimentSpec):
    families = spec.families or ORBIT_FAMILIES + POINT_FAMILIES
    _warn_without_file(families)
    tasks = [(spec, fam, d) for fam in families for d in spec.degrees]
    return LEBESGUE_HEADER, _map(_lebesgue_task, tasks, spec.jobs)


# -- random radii ------------------------------------------------------------

RANDOM_RADII_HEADER = ("d", "trial", "overlap", "seed", "error", "fixed_error", "verdict")


def trial_seed(base: int, trial: int) -> int:
    return base + trial


def _random_radii_task(task):
    spec, d = task
    f = FUNCTIONS[spec.function]
    base = make_config("chebyshev-orbits", d, spec.phase)
    # supports change from trial to trial, so all trials share a support-free family
    probes = gen_probe_family(replace(spec.probes, include_supports=False))
    fixed_err = error_norm(f, interpolate(f, base, spec.basis), probes)
    rows = []
    for overlap in (False, True):
        for t in range(spec.trials):
            seed = trial_seed(spec.seed, t)
            cfg = randomize_radii(base, seed, overlap_allowed=overlap)
            sys = assemble_vandermonde(cfg, spec.basis)
            if sys.is_singular:
                rows.append((d, t, int(overlap), seed, float("nan"), fixed_err, Verdict.SINGULAR.value))
                continue
            err = error_norm(f, interpolate(f, sys), probes)
            rows.append((d, t, int(overlap), seed, err, fixed_err, Verdict.UNISOLVENT.value))
    return rows


def run_random_radii(spec: ExperimentSpec):
    tasks = [(spec, d) for d in spec.degrees]
    rows = [r for chunk in _map(_random_radii_task, tasks, spec.jobs) for r in chunk]
    rows.sort(key=lambda r: (r[0], r[2], r[1]))
    return RANDOM_RADII_HEADER, rows


# -- degenerate families ----------------------------------------------------

COUNTEREXAMPLE_HEADER = ("d", "family", "basis", "sigma_ratio", "verdict", "expected")


def _counterexample_task(task):
    family, d = task
    cfg = make_config(family, d)
    expected = Verdict.SINGULAR if cfg.expect_singular else Verdict.UNISOLVENT
    rows = []
    for b in (BasisKind.MONOMIAL, BasisKind.CHEBYSHEV):
        sys = assemble_vandermonde(cfg, b)
        verdict = Verdict.SINGULAR if sys.is_singular else Verdict.UNISOLVENT
        rows.append((d, family, b.value, sys.sigma_ratio, verdict.value, expected.value))
    return rows


def run_counterexamples(spec: ExperimentSpec):
    families = spec.families or ("concentric", "collinear", "chebyshev-orbits")
    tasks = [(fam, d) for fam in families for d in spec.degrees if d >= 1]
    rows = [r for chunk in _map(_counterexample_task, tasks, spec.jobs) for r in chunk]
    return COUNTEREXAMPLE_HEADER, rows


RUNNERS = {
    "conditioning": run_conditioning,
    "interp_error": run_interp_error,
    "lebesgue_sweep": run_lebesgue_sweep,
    "random_radii": run_random_radii,
    "counterexamples": run_counterexamples,
}


def run(spec: ExperimentSpec):
    return RUNNERS[spec.name](spec)
