"""Command-line front end: run experiments, figure presets, analytic tables.

Subcommands::

    rmtpurity run <config> [--out DIR] [--workers W]
    rmtpurity preset <fig1|fig2|fig3|fig4|fig5> [--ensemble M] [--seed S]
              [--out DIR] [--tmax T] [--points P] [--workers W]
    rmtpurity tables --n 4 10 --m 4 10 [--out DIR]

Config files are flat ``key = value`` text (``#`` starts a comment)::

    model = strong | weak
    kind = goe | poisson | picketfence      # strong coupling
    kind1 = ..., kind2 = ...                # weak coupling
    n = 4
    m = 4
    lambda = 0.03                           # weak coupling only
    tmax = 35.0
    points = 400
    ensemble = 20000
    seed = 12345
    policy = random | basis                 # default random
    record = 1                              # trajectories to retain

Outputs: ``purity.csv`` (or ``purity_<label>.csv`` per preset curve) with
header ``t,mean,std,count`` plus ``traj_<k>`` columns, ``analytics.csv``
with the closed-form curves, ``closed_forms.csv`` for `tables`, and a
``manifest.txt`` echoing the configuration.
"""

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .analytics import (
    f_uniform,
    i_infinity,
    i_min_coe,
    short_time_coefficient,
    short_time_purity,
    spectral_averages,
    time_scales,
)
from .ensembles import SpectrumKind
from .model import Dimensions, StrongCouplingSpec, WeakCouplingSpec
from .montecarlo import (
    BasisProduct,
    CurveStats,
    ExperimentConfig,
    RandomProduct,
    run_experiment,
)

__all__ = ["main", "parse_config", "format_config", "ConfigError",
           "PRESET_NAMES"]

EXIT_CONFIG = 2
EXIT_DIMENSION = 3

PRESET_NAMES = ("fig1", "fig2", "fig3", "fig4", "fig5")

_SCHEMA = {
    "model": str, "kind": str, "kind1": str, "kind2": str,
    "n": int, "m": int, "lambda": float, "tmax": float, "points": int,
    "ensemble": int, "seed": int, "policy": str, "record": int,
}
_REQUIRED = ("model", "n", "m", "tmax", "points", "ensemble", "seed")


class ConfigError(ValueError):
    """Malformed or incomplete experiment configuration."""


def parse_config(text: str) -> ExperimentConfig:
    """Parse the flat key-value format into an ExperimentConfig."""
    raw: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', "
                              f"got {stripped!r}")
        key, _, value = stripped.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if key not in _SCHEMA:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            raw[key] = _SCHEMA[key](value)
        except ValueError:
            raise ConfigError(
                f"line {lineno}: cannot parse {key} value {value!r} "
                f"as {_SCHEMA[key].__name__}") from None
    return _config_from_dict(raw)


def _config_from_dict(raw: dict) -> ExperimentConfig:
    for key in _REQUIRED:
        if key not in raw:
            raise ConfigError(f"missing required key {key!r}")

    dims = Dimensions(raw["n"], raw["m"])
    model_name = str(raw["model"]).lower()
    if model_name == "strong":
        if "kind" not in raw:
            raise ConfigError("strong model requires key 'kind'")
        for bad in ("kind1", "kind2", "lambda"):
            if bad in raw:
                raise ConfigError(f"key {bad!r} is not valid for model=strong")
        try:
            kind = SpectrumKind.from_name(raw["kind"])
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        model: StrongCouplingSpec | WeakCouplingSpec = \
            StrongCouplingSpec(dims, kind)
    elif model_name == "weak":
        if "kind1" not in raw or "kind2" not in raw:
            raise ConfigError("weak model requires keys 'kind1' and 'kind2'")
        if "kind" in raw:
            raise ConfigError("key 'kind' is not valid for model=weak")
        try:
            kind1 = SpectrumKind.from_name(raw["kind1"])
            kind2 = SpectrumKind.from_name(raw["kind2"])
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        model = WeakCouplingSpec(dims, kind1, kind2, raw.get("lambda", 0.0))
    else:
        raise ConfigError(f"model must be 'strong' or 'weak', "
                          f"got {raw['model']!r}")

    policy_name = str(raw.get("policy", "random")).lower()
    if policy_name == "random":
        policy: BasisProduct | RandomProduct = RandomProduct()
    elif policy_name == "basis":
        policy = BasisProduct(0, 0)
    else:
        raise ConfigError(f"policy must be 'random' or 'basis', "
                          f"got {raw['policy']!r}")

    if raw["points"] < 1:
        raise ConfigError("points must be >= 1")
    if raw["tmax"] < 0:
        raise ConfigError("tmax must be >= 0")
    grid = np.linspace(0.0, raw["tmax"], raw["points"])

    return ExperimentConfig(
        model=model,
        time_grid=grid,
        ensemble_size=raw["ensemble"],
        master_seed=raw["seed"],
        policy=policy,
        record_realizations=raw.get("record", 1),
    )


def format_config(config: ExperimentConfig) -> str:
    """Canonical key-value echo; `parse_config` round-trips it."""
    lines = []
    model = config.model
    if isinstance(model, StrongCouplingSpec):
        lines.append("model = strong")
        lines.append(f"kind = {model.kind}")
    else:
        lines.append("model = weak")
        lines.append(f"kind1 = {model.kind1}")
        lines.append(f"kind2 = {model.kind2}")
        lines.append(f"lambda = {model.lam:.17g}")
    lines.append(f"n = {model.dims.n}")
    lines.append(f"m = {model.dims.m}")
    grid = config.time_grid
    lines.append(f"tmax = {grid[-1]:.17g}")
    lines.append(f"points = {grid.size}")
    lines.append(f"ensemble = {config.ensemble_size}")
    lines.append(f"seed = {config.master_seed}")
    policy = "basis" if isinstance(config.policy, BasisProduct) else "random"
    lines.append(f"policy = {policy}")
    lines.append(f"record = {config.record_realizations}")
    return "\n".join(lines) + "\n"


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_purity_csv(path: Path, stats: CurveStats) -> None:
    traj_cols = [f"traj_{k}" for k in range(stats.trajectories.shape[0])]
    header = ",".join(["t", "mean", "std", "count"] + traj_cols)
    rows = [header]
    for j, t in enumerate(stats.times):
        cells = [_fmt(t), _fmt(stats.mean[j]), _fmt(stats.std[j]),
                 str(stats.count)]
        cells += [_fmt(stats.trajectories[k, j])
                  for k in range(stats.trajectories.shape[0])]
        rows.append(",".join(cells))
    path.write_text("\n".join(rows) + "\n")


def write_analytics_csv(path: Path, times: np.ndarray,
                        dims: Dimensions) -> None:
    header = "t,f,s1,s2,s3,s4,s5,short_time,i_min_coe,i_infinity"
    imin = i_min_coe(dims.n, dims.m)
    iinf = i_infinity(dims.n, dims.m)
    rows = [header]
    for t in times:
        s = spectral_averages(t)
        cells = [t, f_uniform(t), s.s1, s.s2, s.s3, s.s4, s.s5,
                 short_time_purity(t, dims.n, dims.m), imin, iinf]
        rows.append(",".join(_fmt(c) for c in cells))
    path.write_text("\n".join(rows) + "\n")


@dataclass(frozen=True)
class _RunResult:
    label: str
    config: ExperimentConfig
    csv_name: str


def _execute(out_dir: Path, runs: list[tuple[str, ExperimentConfig]],
             workers: int | None) -> int:
    """Run the configured experiments and write all artifacts.

    Single runs produce ``purity.csv``; multi-curve presets produce one
    ``purity_<label>.csv`` per curve.
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    started = time.monotonic()
    results: list[_RunResult] = []
    for label, config in runs:
        stats = run_experiment(config, workers=workers)
        name = "purity.csv" if label == "" else f"purity_{label}.csv"
        write_purity_csv(out_dir / name, stats)
        results.append(_RunResult(label, config, name))

    dims = runs[0][1].model.dims
    write_analytics_csv(out_dir / "analytics.csv", runs[0][1].time_grid, dims)

    outputs = [r.csv_name for r in results] + ["analytics.csv"]
    duration = time.monotonic() - started
    _write_manifest(out_dir / "manifest.txt", results, outputs, duration)
    return 0


def _write_manifest(path: Path, results: list[_RunResult],
                    outputs: list[str], duration: float) -> None:
    lines = [f"version = {__version__}",
             f"master_seed = {results[0].config.master_seed}",
             f"duration_seconds = {duration:.3f}",
             ""]
    for r in results:
        title = r.label or "run"
        lines.append(f"[config {title}]")
        lines.append(format_config(r.config).rstrip("\n"))
        lines.append("")
    lines.append("[outputs]")
    lines.extend(outputs + ["manifest.txt", ""])
    path.write_text("\n".join(lines))


def _strong_grid(heisenberg: float) -> np.ndarray:
    # step = t_H/400 puts the first minimum (t_H/16 for n=m=4), the partial
    # revival (t_H/2) and the recurrence (t_H) exactly on the grid
    step = heisenberg / 400.0
    return step * np.arange(481)


def _dense_prefix(grid: np.ndarray) -> np.ndarray:
    # expose the quadratic short-time regime in the band presets
    prefix = np.linspace(0.0, 0.5, 101)
    return np.unique(np.concatenate([prefix, grid]))


def preset_runs(name: str, ensemble: int | None, seed: int | None,
                tmax: float | None, points: int | None
                ) -> list[tuple[str, ExperimentConfig]]:
    """Experiment list for a figure preset, with optional overrides."""
    if name not in PRESET_NAMES:
        raise ConfigError(f"unknown preset {name!r}; "
                          f"expected one of {list(PRESET_NAMES)}")
    seed = 20030411 if seed is None else seed

    def grid_or_override(default_grid: np.ndarray) -> np.ndarray:
        if tmax is None and points is None:
            return default_grid
        hi = default_grid[-1] if tmax is None else tmax
        num = default_grid.size if points is None else points
        return np.linspace(0.0, hi, num)

    if name in ("fig1", "fig2"):
        dims = Dimensions(4, 4)
        scales = time_scales(dims.total)
        base = _strong_grid(scales.heisenberg_time)
        if name == "fig1":
            grid = grid_or_override(base)
            M = 20000 if ensemble is None else ensemble
            kinds = [SpectrumKind.GOE, SpectrumKind.Poisson,
                     SpectrumKind.PicketFence]
            return [(k.value,
                     ExperimentConfig(StrongCouplingSpec(dims, k), grid, M,
                                      seed))
                    for k in kinds]
        grid = grid_or_override(_dense_prefix(base))
        M = 20000 if ensemble is None else ensemble
        return [("goe",
                 ExperimentConfig(StrongCouplingSpec(dims, SpectrumKind.GOE),
                                  grid, M, seed))]

    if name in ("fig3", "fig4"):
        dims = Dimensions(4, 4)
        lam = 0.03
        base = np.linspace(0.0, 150.0, 301)
    else:  # fig5
        dims = Dimensions(10, 10)
        lam = 0.01
        base = np.linspace(0.0, 300.0, 301)

    combos = [(SpectrumKind.GOE, SpectrumKind.GOE),
              (SpectrumKind.GOE, SpectrumKind.Poisson),
              (SpectrumKind.Poisson, SpectrumKind.Poisson)]
    if name == "fig4":
        combos = combos[:1]
        base = _dense_prefix(base)
    grid = grid_or_override(base)
    M = 20000 if ensemble is None else ensemble
    return [(f"{k1.value}-{k2.value}",
             ExperimentConfig(WeakCouplingSpec(dims, k1, k2, lam), grid, M,
                              seed))
            for k1, k2 in combos]


def cmd_run(args) -> int:
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        config = parse_config(text)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"dimension error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    return _execute(Path(args.out), [("", config)], args.workers)


def cmd_preset(args) -> int:
    try:
        runs = preset_runs(args.name, args.ensemble, args.seed, args.tmax,
                           args.points)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return _execute(Path(args.out), runs, args.workers)


def cmd_tables(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        pairs = [(n, m) for n in args.n for m in args.m]
        rows = ["n,m,N,short_coeff,i_min_coe,i_infinity"]
        for n, m in pairs:
            Dimensions(n, m)
            rows.append(",".join([str(n), str(m), str(n * m),
                                  _fmt(short_time_coefficient(n, m)),
                                  _fmt(i_min_coe(n, m)),
                                  _fmt(i_infinity(n, m))]))
    except ValueError as exc:
        print(f"dimension error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    (out_dir / "closed_forms.csv").write_text("\n".join(rows) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rmtpurity",
        description="Purity decay of random product states under "
                    "random-matrix Hamiltonians.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment from a config file")
    p_run.add_argument("config", help="path to a key=value config file")
    p_run.add_argument("--out", default=".", help="output directory")
    p_run.add_argument("--workers", type=int, default=None)
    p_run.set_defaults(func=cmd_run)

    p_pre = sub.add_parser("preset", help="run a figure-reproduction preset")
    p_pre.add_argument("name", help="fig1 | fig2 | fig3 | fig4 | fig5")
    p_pre.add_argument("--ensemble", type=int, default=None,
                       help="override the ensemble size")
    p_pre.add_argument("--seed", type=int, default=None,
                       help="override the master seed")
    p_pre.add_argument("--tmax", type=float, default=None,
                       help="override the grid end time")
    p_pre.add_argument("--points", type=int, default=None,
                       help="override the number of grid points")
    p_pre.add_argument("--out", default=".", help="output directory")
    p_pre.add_argument("--workers", type=int, default=None)
    p_pre.set_defaults(func=cmd_preset)

    p_tab = sub.add_parser("tables", help="tabulate the closed forms")
    p_tab.add_argument("--n", type=int, nargs="+", required=True)
    p_tab.add_argument("--m", type=int, nargs="+", required=True)
    p_tab.add_argument("--out", default=".", help="output directory")
    p_tab.set_defaults(func=cmd_tables)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"dimension error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION


if __name__ == "__main__":
    sys.exit(main())
