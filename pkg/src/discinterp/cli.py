"""Command-line entry point.

Exit codes: 0 success, 2 unisolvence failure where unisolvence was expected
(or a degenerate configuration reported unisolvent), 3 I/O or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import numpy as np

from . import experiments as ex
from .geometry import ConfigError, randomize_radii, save_config, sidecar_path
from .interpolation import UnisolvenceError, Verdict, assemble_vandermonde, interpolate
from .lebesgue import ProbeSpec, error_norm, gen_probe_family, lebesgue_constant
from .polyspace import BasisKind, enumerate_basis

EXIT_OK = 0
EXIT_UNISOLVENCE = 2
EXIT_IO = 3

log = logging.getLogger("discinterp")


def tool_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "unknown"


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (np.integer,)):
        return str(int(v))
    return str(v)


def write_csv(path: Path | None, header, rows, meta: dict | None = None) -> None:
    """Write rows to ``path`` (stdout when None) plus a JSON sidecar."""
    out = sys.stdout if path is None else open(path, "w", newline="")
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
    finally:
        if path is not None:
            out.close()
    if path is not None and meta is not None:
        meta = dict(meta, tool_version=tool_version())
        sidecar_path(path).write_text(json.dumps(meta, indent=2, sort_keys=True, default=str) + "\n")


def parse_degrees(text: str) -> list[int]:
    """``"3"``, ``"1,2,5"`` or ``"2-10"`` (inclusive)."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _probe_spec(args) -> ProbeSpec:
    radii = tuple(float(r) for r in args.probe_radii.split(","))
    return ProbeSpec(resolution=args.probe_resolution, radii=radii)


def _single_degree(args) -> int:
    degs = parse_degrees(args.degree)
    if len(degs) != 1:
        raise SystemExit(f"this command needs a single --degree, got {args.degree!r}")
    return degs[0]


def _config(args):
    d = _single_degree(args)
    cfg = ex.make_config(args.family or "chebyshev-orbits", d, args.phase)
    if getattr(args, "random_radii", False):
        cfg = randomize_radii(cfg, args.seed, overlap_allowed=args.allow_overlap)
    return cfg


def _meta(args, **extra) -> dict:
    skip = {"func"}
    meta = {k: v for k, v in vars(args).items() if k not in skip and not callable(v)}
    meta.update(extra)
    return meta


# -- subcommands -----------------------------------------------------------


def cmd_gen_config(args) -> int:
    cfg = _config(args)
    if args.out is None:
        write_csv(None, ("x", "y", "r"), [(b.centre[0], b.centre[1], b.radius) for b in cfg])
    else:
        save_config(cfg, args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    cfg = _config(args)
    sys_ = assemble_vandermonde(cfg, args.basis)
    verdict = Verdict.SINGULAR if sys_.is_singular else Verdict.UNISOLVENT
    expected = Verdict.SINGULAR if cfg.expect_singular else Verdict.UNISOLVENT
    rows = [(cfg.degree, cfg.label, args.basis, sys_.sigma_ratio, sys_.cond_estimate,
             verdict.value, expected.value)]
    write_csv(args.out, ("d", "family", "basis", "sigma_ratio", "cond", "verdict", "expected"),
              rows, _meta(args))
    return EXIT_OK if verdict is expected else EXIT_UNISOLVENCE


def cmd_vandermonde(args) -> int:
    cfg = _config(args)
    sys_ = assemble_vandermonde(cfg, args.basis)
    header = ("a", "b") + tuple(f"ball{j}" for j in range(len(cfg)))
    idx = enumerate_basis(sys_.basis)
    rows = [(m.a, m.b, *sys_.V[i]) for i, m in enumerate(idx)]
    write_csv(args.out, header, rows,
              _meta(args, cond=sys_.cond_estimate, sigma_ratio=sys_.sigma_ratio))
    log.info("cond=%.6e sigma_ratio=%.6e", sys_.cond_estimate, sys_.sigma_ratio)
    return EXIT_OK


def cmd_interp(args) -> int:
    cfg = _config(args)
    f = ex.FUNCTIONS[args.function]
    p = interpolate(f, cfg, args.basis)
    probes = gen_probe_family(_probe_spec(args), cfg)
    err = error_norm(f, p, probes)
    idx = enumerate_basis(p.basis)
    rows = [(m.a, m.b, c) for m, c in zip(idx, p.coeffs)]
    write_csv(args.out, ("a", "b", "coeff"), rows,
              _meta(args, error=err, probes=probes.describe()))
    log.info("error=%.6e", err)
    return EXIT_OK


def cmd_lebesgue(args) -> int:
    cfg = _config(args)
    probes = gen_probe_family(_probe_spec(args), cfg)
    rep = lebesgue_constant(cfg, args.basis, probes)
    disc = rep.argmax_disc
    rows = [(rep.degree, cfg.label, rep.lam, rep.lower_bound, disc.centre[0], disc.centre[1],
             disc.radius, len(probes))]
    write_csv(args.out, ("d", "family", "lambda", "lower_bound", "argmax_x", "argmax_y",
                         "argmax_r", "probes"), rows, _meta(args, probes=probes.describe()))
    return EXIT_OK


def cmd_experiment(args) -> int:
    families = tuple(([args.family] if args.family else []) + (args.family_list or []))
    spec = ex.ExperimentSpec(
        name=args.name.replace("-", "_"),
        degrees=tuple(parse_degrees(args.degree)),
        families=families,
        basis=args.basis,
        seed=args.seed,
        function=args.function,
        trials=args.trials,
        probes=_probe_spec(args),
        phase=args.phase,
        jobs=args.jobs,
    )
    header, rows = ex.run(spec)
    write_csv(args.out, header, rows, {"experiment": spec.describe(), "header": list(header)})

    if spec.name == "counterexamples":
        bad = [r for r in rows if r[4] != r[5]]
        for r in bad:
            log.error("d=%s %s (%s): expected %s, got %s", r[0], r[1], r[2], r[5], r[4])
        return EXIT_UNISOLVENCE if bad else EXIT_OK
    status_col = {"interp_error": 4, "lebesgue_sweep": 5}.get(spec.name)
    if status_col is not None and any(str(r[status_col]).startswith("singular") for r in rows):
        return EXIT_UNISOLVENCE
    if spec.name == "random_radii" and any(r[6] == Verdict.SINGULAR.value for r in rows):
        return EXIT_UNISOLVENCE
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree", default="4", help="degree, list '1,3,5' or range '2-10'")
    common.add_argument("--family", default=None,
                        help="[chebyshev-orbits] | equidistant-orbits | halton | concentric | "
                             "collinear | file:<path> ('{d}' in the path is replaced by the degree)")
    common.add_argument("--basis", default="chebyshev", choices=[b.value for b in BasisKind])
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--phase", type=float, default=0.0, help="angular offset of orbit centres")
    common.add_argument("--probe-resolution", type=int, default=41)
    common.add_argument("--probe-radii", default="0.05,0.1,0.2,0.4")
    common.add_argument("--out", type=Path, default=None, help="output CSV (stdout if omitted)")
    common.add_argument("--allow-overlap", action="store_true",
                        help="let randomised radii overlap neighbouring discs")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="discinterp",
                                     description="Polynomial interpolation from integrals over discs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-config", parents=[common], help="generate a disc configuration")
    p.add_argument("--random-radii", action="store_true", help="redraw radii using --seed")
    p.set_defaults(func=cmd_gen_config)

    for name, fn, text in [
        ("check", cmd_check, "unisolvence verdict of a configuration"),
        ("vandermonde", cmd_vandermonde, "write the integral Vandermonde matrix"),
        ("lebesgue", cmd_lebesgue, "Lebesgue constant on the probe family"),
    ]:
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--random-radii", action="store_true", help="redraw radii using --seed")
        p.set_defaults(func=fn)

    p = sub.add_parser("interp", parents=[common], help="interpolate f1 or f2")
    p.add_argument("--function", default="f1", choices=sorted(ex.FUNCTIONS))
    p.add_argument("--random-radii", action="store_true", help="redraw radii using --seed")
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("experiment", parents=[common], help="run one of the experiment sweeps")
    p.add_argument("name", choices=list(ex.EXPERIMENTS) + [n.replace("_", "-") for n in ex.EXPERIMENTS])
    p.add_argument("--families", dest="family_list", action="append", default=None,
                   help="restrict to a family (repeatable); defaults depend on the experiment")
    p.add_argument("--function", default="f1", choices=sorted(ex.FUNCTIONS))
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UnisolvenceError as exc:
        log.error("%s", exc)
        return EXIT_UNISOLVENCE
    except (OSError, ConfigError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
