"""Experiment runner: verification suites, curvature reports, parameter sweeps.

Subcommands
    verify    run one named invariant suite (or all) and report pass/fail
    curvature emit per-plaquette CSVs and the Chern/additivity report
    sweep     scan a one-parameter family and emit metric, monodromy and
              coordinate columns

Configs are flat key=value files with [section] headers; every report embeds
the hash of the effective configuration, the grid, the seed and the library
version, and nothing else varies between runs, so identical inputs give
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import configparser
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import CoverageError
from .grassmann import BaseGrid
from .detline import Trivialization, canonical_det, coordinate
from .models import (
    DEMO_COEFFICIENTS,
    CylinderFamily,
    coefficient_family,
    constant_scalar_family,
    rotated_interface,
    vortex_interface,
)
from .curvature import (
    additivity_residual,
    default_cover,
    pair_overlap_field,
    restricted_shift_field,
)
from .verify import SUITE_NAMES, run_suites

__all__ = ["main", "load_config", "config_hash"]


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


DEFAULTS: dict[str, dict[str, str]] = {
    "model": {
        "kind": "dirac",
        "rank": "1",
        "steps_per_half": "128",
        "value": "",
    },
    "grid": {"n1": "16", "n2": "16"},
    "interface": {
        "kind": "rotated",
        "strength": "0.4",
        "radius": "1.1",
        "orientation": "1",
    },
    "cylinder": {
        "truncation": "32",
        "gamma": "0.6",
        "amplitude": "1.0",
        "style": "conjugated",
    },
    "run": {
        "seed": "0",
        "tol": "1e-9",
        "sing_floor": "0.1",
        "max_excluded": "0.05",
    },
    "sweep": {"start": "-0.5", "stop": "2.5", "samples": "600"},
}


def load_config(path: str | None, overrides: dict[str, str] | None = None) -> dict[str, dict[str, str]]:
    """Effective configuration: defaults, overlaid file, overlaid CLI flags."""
    cfg = {sec: dict(kv) for sec, kv in DEFAULTS.items()}
    cfg["potential"] = {k: repr(v) for k, v in DEMO_COEFFICIENTS.items()}
    if path is not None:
        parser = configparser.ConfigParser()
        try:
            with open(path) as fh:
                parser.read_file(fh)
        except OSError as err:
            raise ConfigError(f"cannot read config file: {err}") from err
        except configparser.Error as err:
            raise ConfigError(f"cannot parse config file: {err}") from err
        for sec in parser.sections():
            if sec not in cfg:
                raise ConfigError(f"unknown config section [{sec}]")
            if sec == "potential":
                cfg[sec] = dict(parser.items(sec))
            else:
                for key, value in parser.items(sec):
                    if key not in cfg[sec]:
                        raise ConfigError(f"unknown key {key!r} in section [{sec}]")
                    cfg[sec][key] = value
    for dotted, value in (overrides or {}).items():
        sec, key = dotted.split(".", 1)
        cfg[sec][key] = value
    return cfg


def config_hash(cfg: dict[str, dict[str, str]]) -> str:
    dump = "\n".join(f"{sec}.{key}={cfg[sec][key]}"
                     for sec in sorted(cfg) for key in sorted(cfg[sec]))
    return hashlib.sha256(dump.encode()).hexdigest()[:16]


def _as_float(cfg, sec, key) -> float:
    try:
        return float(cfg[sec][key])
    except ValueError as err:
        raise ConfigError(f"{sec}.{key} must be a number, got {cfg[sec][key]!r}") from err


def _as_int(cfg, sec, key) -> int:
    try:
        return int(cfg[sec][key])
    except ValueError as err:
        raise ConfigError(f"{sec}.{key} must be an integer, got {cfg[sec][key]!r}") from err


def _positive(value: float, name: str) -> float:
    if not value > 0:
        raise ConfigError(f"{name} must be positive")
    return value


def build_family(cfg: dict[str, dict[str, str]], grid: BaseGrid):
    kind = cfg["model"]["kind"].strip().lower()
    steps = _as_int(cfg, "model", "steps_per_half")
    if kind == "dirac":
        coeffs = {}
        for key, value in cfg["potential"].items():
            try:
                coeffs[key] = float(value)
            except ValueError as err:
                raise ConfigError(f"potential.{key} must be a number") from err
        try:
            return coefficient_family(grid, coeffs, steps_per_half=steps)
        except ValueError as err:
            raise ConfigError(str(err)) from err
    if kind == "constant_scalar":
        raw = cfg["model"]["value"].strip()
        value = float(raw) if raw else None
        rank = _as_int(cfg, "model", "rank")
        return constant_scalar_family(grid, value=value, rank=rank,
                                      steps_per_half=steps)
    if kind == "cylinder":
        return CylinderFamily(
            grid,
            truncation=_as_int(cfg, "cylinder", "truncation"),
            gamma=_positive(_as_float(cfg, "cylinder", "gamma"), "cylinder.gamma"),
            seed=_as_int(cfg, "run", "seed"),
            amplitude=_as_float(cfg, "cylinder", "amplitude"),
            style=cfg["cylinder"]["style"].strip().lower(),
        )
    raise ConfigError(f"unknown model kind {cfg['model']['kind']!r}")


def build_interface(cfg: dict[str, dict[str, str]], family):
    if isinstance(family, CylinderFamily):
        return family.conjugated_section(
            0.5 * _as_float(cfg, "cylinder", "amplitude"), seed_offset=4)
    kind = cfg["interface"]["kind"].strip().lower()
    if kind == "rotated":
        return rotated_interface(family, strength=_as_float(cfg, "interface", "strength"))
    if kind == "vortex":
        return vortex_interface(family,
                                radius=_positive(_as_float(cfg, "interface", "radius"),
                                                 "interface.radius"),
                                orientation=_as_int(cfg, "interface", "orientation"))
    raise ConfigError(f"unknown interface kind {cfg['interface']['kind']!r}")


def _torus_from(cfg) -> BaseGrid:
    n1 = _as_int(cfg, "grid", "n1")
    n2 = _as_int(cfg, "grid", "n2")
    if min(n1, n2) < 4:
        raise ConfigError("grid axes need at least 4 points")
    return BaseGrid.torus(n1, n2)


def _meta(cfg, command: str) -> dict:
    return {
        "command": command,
        "config_hash": config_hash(cfg),
        "grid": [_as_int(cfg, "grid", "n1"), _as_int(cfg, "grid", "n2")],
        "library_version": __version__,
        "seed": _as_int(cfg, "run", "seed"),
    }


def _write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_rows(path: Path, header: list[str], rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(str(c) for c in row) + "\n")


def cmd_verify(suite: str, cfg: dict, out_dir: Path) -> int:
    names = list(SUITE_NAMES) if suite == "all" else [suite]
    seed = _as_int(cfg, "run", "seed")
    tol = _positive(_as_float(cfg, "run", "tol"), "run.tol")
    curvature_kwargs = {}
    if "curvature" in names:
        grid = _torus_from(cfg)
        if min(grid.shape) < 8:
            raise ConfigError("curvature suites need grid axes of at least 8 points")
        family = build_family(cfg, grid)
        curvature_kwargs = {
            "family": family,
            "section": build_interface(cfg, family),
            "sing_floor": _positive(_as_float(cfg, "run", "sing_floor"),
                                    "run.sing_floor"),
            "max_excluded": _as_float(cfg, "run", "max_excluded"),
        }
    results = run_suites(names, seed=seed, tol=tol, curvature_kwargs=curvature_kwargs)
    report = _meta(cfg, f"verify {suite}")
    report["suites"] = {name: [c.as_dict() for c in checks]
                        for name, checks in results.items()}
    failures = [f"{name}.{c.name}" for name, checks in results.items()
                for c in checks if not c.passed]
    report["passed"] = not failures
    report["failures"] = failures
    _write_json(out_dir / "verify_report.json", report)
    for name, checks in results.items():
        for c in checks:
            flag = "PASS" if c.passed else "FAIL"
            print(f"[{flag}] {name}.{c.name}  measured={c.measured:.6e}  "
                  f"threshold={c.threshold:.1e}")
    print(f"report: {out_dir / 'verify_report.json'}")
    if failures:
        print("failing invariants: " + ", ".join(failures), file=sys.stderr)
        return 1
    return 0


def cmd_curvature(cfg: dict, out_dir: Path) -> int:
    grid = _torus_from(cfg)
    if min(grid.shape) < 8:
        raise ConfigError("curvature reports need grid axes of at least 8 points")
    family = build_family(cfg, grid)
    section = build_interface(cfg, family)
    report = additivity_residual(
        family, section,
        sing_floor=_positive(_as_float(cfg, "run", "sing_floor"), "run.sing_floor"),
        max_excluded=_as_float(cfg, "run", "max_excluded"),
        label=cfg["model"]["kind"])
    out_dir.mkdir(parents=True, exist_ok=True)
    report.curvature.to_csv(out_dir / "curvature_full.csv")
    report.curvature_left.to_csv(out_dir / "curvature_left.csv")
    report.curvature_right.to_csv(out_dir / "curvature_right.csv")
    report.defect.to_csv(out_dir / "additivity_residual.csv")
    report.f_winding.to_csv(out_dir / "f_winding.csv")
    excl = report.defect.mask
    rows = []
    for idx in np.ndindex(*grid.shape):
        flag = bool(excl[idx]) if excl is not None else False
        rows.append([*idx, int(flag), 0])
    _write_rows(out_dir / "exclusions.csv", ["i", "j", "re", "im"], rows)
    payload = _meta(cfg, "curvature")
    payload["report"] = report.summary()
    payload["verdict"] = ("chern additivity holds" if report.chern_additive
                          else "chern additivity FAILED")
    _write_json(out_dir / "curvature_report.json", payload)
    print(f"chern full={report.chern} left={report.chern_left} "
          f"right={report.chern_right} -> {payload['verdict']}")
    for key, value in sorted(report.residuals.items()):
        print(f"  {key} = {value:.6e}")
    print(f"outputs: {out_dir}")
    return 0 if report.chern_additive else 1


def cmd_sweep(cfg: dict, out_dir: Path) -> int:
    samples = _as_int(cfg, "sweep", "samples")
    if samples < 4:
        raise ConfigError("sweep.samples must be at least 4")
    start = _as_float(cfg, "sweep", "start")
    stop = _as_float(cfg, "sweep", "stop")
    if not stop > start:
        raise ConfigError("sweep.stop must exceed sweep.start")
    grid = BaseGrid.line(samples, start, stop)
    family = build_family(cfg, grid)
    if isinstance(family, CylinderFamily):
        raise ConfigError("sweep supports the transfer-matrix families only")
    sec0, sec1 = family.boundary_pair("full")
    overlap = pair_overlap_field(sec0, sec1)
    metric = np.abs(np.linalg.det(overlap)) ** 2
    mono = family.monodromy_field()
    shifts = restricted_shift_field(sec0, sec1, default_cover(sec0.dim)[1])
    triv = Trivialization(grid, shifts, cond_bound=1e8, label="shifted")
    coord = np.empty(samples, dtype=complex)
    for k in range(samples):
        coord[k] = coordinate(canonical_det(overlap[k]), triv, (k,))

    params = grid.axis_coords(0)
    header = ["param", "value_re", "value_im"]
    _write_rows(out_dir / "sweep_metric.csv", header,
                ([repr(float(p)), repr(float(v)), repr(0.0)]
                 for p, v in zip(params, metric)))
    _write_rows(out_dir / "sweep_monodromy.csv", header,
                ([repr(float(p)), repr(float(v.real)), repr(float(v.imag))]
                 for p, v in zip(params, mono)))
    _write_rows(out_dir / "sweep_coordinate.csv", header,
                ([repr(float(p)), repr(float(v.real)), repr(float(v.imag))]
                 for p, v in zip(params, coord)))

    def zero_indices(values: np.ndarray) -> list[int]:
        v = np.abs(values)
        thr = 0.05 * float(v.max())
        return [k for k in range(1, len(v) - 1)
                if v[k] <= v[k - 1] and v[k] <= v[k + 1] and v[k] < thr]

    payload = _meta(cfg, "sweep")
    payload["grid"] = [samples]
    payload["range"] = [start, stop]
    payload["zero_indices"] = {
        "metric": zero_indices(metric),
        "monodromy": zero_indices(mono),
        "coordinate": zero_indices(coord),
    }
    _write_json(out_dir / "sweep_report.json", payload)
    print(f"sweep of {samples} samples over [{start}, {stop}]")
    for name, idx in payload["zero_indices"].items():
        at = ", ".join(f"{params[k]:.4f}" for k in idx)
        print(f"  zeros of {name}: [{at}]")
    print(f"outputs: {out_dir}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="detbundle",
        description="determinant-line bundle laboratory runner")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", metavar="PATH", help="key=value config file")
        p.add_argument("--grid", metavar="N", type=int,
                       help="override both grid axes")
        p.add_argument("--seed", metavar="K", type=int, help="override run seed")
        p.add_argument("--out", metavar="DIR", default="out",
                       help="output directory (default: ./out)")
        p.add_argument("--tol", metavar="X", type=float,
                       help="override the base tolerance")

    pv = sub.add_parser("verify", help="run invariant suites")
    pv.add_argument("suite", choices=list(SUITE_NAMES) + ["all"])
    common(pv)
    pc = sub.add_parser("curvature", help="curvature and additivity report")
    common(pc)
    ps = sub.add_parser("sweep", help="one-parameter kernel-locus scan")
    common(ps)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    overrides: dict[str, str] = {}
    if args.grid is not None:
        overrides["grid.n1"] = str(args.grid)
        overrides["grid.n2"] = str(args.grid)
    if args.seed is not None:
        overrides["run.seed"] = str(args.seed)
    if args.tol is not None:
        overrides["run.tol"] = repr(args.tol)
    try:
        cfg = load_config(args.config, overrides)
        out_dir = Path(args.out)
        if args.command == "verify":
            return cmd_verify(args.suite, cfg, out_dir)
        if args.command == "curvature":
            return cmd_curvature(cfg, out_dir)
        return cmd_sweep(cfg, out_dir)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except CoverageError as err:
        print(f"coverage failure: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
