"""Command-line interface.

Subcommands:
    sweep      run the full (comparator x k) accuracy sweep; writes
               results.csv, beta_hist.csv, sweep.svg, manifest.json
    single     one k value with its full beta histogram; writes results.csv,
               beta_hist.csv, single.svg, manifest.json
    profile    1-D comparator profiles and sensitivities around the decision
               point; writes profile.csv, sensitivity.csv, profile.svg,
               sensitivity.svg, manifest.json
    levelsets  2-D comparator level sets around the decision point; writes
               levelsets.csv, levelsets.svg, manifest.json
    validate   parse and echo the configuration, run nothing

Every subcommand takes --config PATH (JSON, see coinknn.config), --out DIR,
--seed N (overrides the config seed) and --threads N (default: the
COINKNN_THREADS environment variable, else the machine's CPU count).

Exit codes: 0 success, 2 configuration error, 3 computation error, 4 I/O
error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .config import RunConfig, parse_config
from .densities import sample_group_2d, substream, GroupSpec
from .errors import ConfigError, InvalidInputError, UnsupportedConfigurationError
from .experiment import reference_point, run_experiment
from .report import write_beta_hist_csv, write_csv, write_manifest, write_results_csv
from .sensitivity import level_set_grid, profile, reference_grid, sensitivity_curve
from .svg import contour_chart, histogram_chart, line_chart

DISSIMILARITY_LEVELS = (0.2, 0.4, 0.6, 0.8)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coinknn",
        description="k-NN decision-point accuracy experiments comparing the "
        "Euclidean distance with the coincidence dissimilarity index",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, summary in (
        ("sweep", "run the accuracy sweep over all configured k values"),
        ("single", "run one k value and emit its full beta histogram"),
        ("profile", "emit 1-D comparator profiles and sensitivities"),
        ("levelsets", "emit 2-D comparator level sets"),
        ("validate", "check a configuration and echo the resolved values"),
    ):
        cmd = sub.add_parser(name, help=summary)
        cmd.add_argument("--config", required=True, help="path to a JSON config")
        cmd.add_argument("--out", default="out", help="output directory")
        cmd.add_argument(
            "--seed", type=int, default=None, help="override the config seed"
        )
        cmd.add_argument(
            "--threads",
            type=int,
            default=None,
            help="worker threads for realizations "
            "(default: $COINKNN_THREADS, else CPU count)",
        )
    return parser


def _resolve_threads(flag: int | None) -> int:
    if flag is not None:
        value = flag
    else:
        env = os.environ.get("COINKNN_THREADS")
        if env is not None:
            try:
                value = int(env)
            except ValueError:
                raise ConfigError(
                    f"COINKNN_THREADS must be an integer, got {env!r}"
                ) from None
        else:
            value = os.cpu_count() or 1
    if value < 1:
        raise ConfigError(f"thread count must be >= 1, got {value}")
    return value


def _progress(stream):
    if not stream.isatty():
        return None

    def update(done: int, total: int) -> None:
        if done % 100 == 0 or done == total:
            print(f"\rrealization {done}/{total}", end="", file=stream)
            if done == total:
                print(file=stream)

    return update


def _load(args) -> RunConfig:
    run = parse_config(args.config)
    if args.seed is not None:
        run = replace(run, seed=args.seed)
    return run


def cmd_sweep(run: RunConfig, out: Path, threads: int) -> list[str]:
    stats = run_experiment(
        run.experiment(), threads=threads, progress=_progress(sys.stderr)
    )
    write_results_csv(out / "results.csv", run, stats)
    write_beta_hist_csv(out / "beta_hist.csv", run, stats)

    series = []
    bands = []
    ks = np.array(run.k_values, dtype=float)
    for ci, name in enumerate(run.comparator_names):
        means = np.array([stats.cell(ci, k).mean_beta for k in run.k_values])
        stds = np.array([stats.cell(ci, k).std_beta for k in run.k_values])
        series.append((name, ks, means))
        bands.append((ks, means - stds, means + stds))
    chart = line_chart(
        series,
        bands,
        f"decision-point accuracy, {run.transform_name} transform "
        f"({run.dimensions}-D)",
        "k neighbors",
        "mean beta +/- std",
    )
    (out / "sweep.svg").write_text(chart, encoding="utf-8")
    return ["results.csv", "beta_hist.csv", "sweep.svg"]


def cmd_single(run: RunConfig, out: Path, threads: int) -> list[str]:
    if len(run.k_values) != 1:
        raise ConfigError(
            "k_values must contain exactly one entry for the single command, "
            f"got {len(run.k_values)}"
        )
    k = run.k_values[0]
    stats = run_experiment(
        run.experiment(), threads=threads, progress=_progress(sys.stderr)
    )
    write_results_csv(out / "results.csv", run, stats)
    write_beta_hist_csv(out / "beta_hist.csv", run, stats)

    groups = []
    for ci, name in enumerate(run.comparator_names):
        cell = stats.cell(ci, k)
        groups.append((name, cell.hist_values, cell.hist_counts))
    chart = histogram_chart(
        groups,
        f"beta histogram at k={k}, {run.transform_name} transform "
        f"({stats.realizations} realizations)",
        "beta",
        "count",
    )
    (out / "single.svg").write_text(chart, encoding="utf-8")
    return ["results.csv", "beta_hist.csv", "single.svg"]


def cmd_profile(run: RunConfig, out: Path) -> list[str]:
    if run.dimensions != 1:
        raise ConfigError("profile requires dimensions=1")
    ref = float(reference_point(run.experiment())[0])
    grid = reference_grid(ref)
    curves = [profile(kind, ref, grid) for kind in run.comparators()]
    sens = [sensitivity_curve(c) for c in curves]

    def sens_cell(value: float) -> object:
        # the reference abscissa has no derivative; leave the cell empty
        return "" if np.isnan(value) else float(value)

    write_csv(
        out / "profile.csv",
        ("y",) + run.comparator_names,
        (
            (float(g),) + tuple(float(c.values[i]) for c in curves)
            for i, g in enumerate(grid)
        ),
    )
    write_csv(
        out / "sensitivity.csv",
        ("y",) + run.comparator_names,
        (
            (float(g),) + tuple(sens_cell(s[i]) for s in sens)
            for i, g in enumerate(grid)
        ),
    )

    normalized = [c.normalized() for c in curves]
    profile_chart = line_chart(
        [
            (name, c.grid, c.values)
            for name, c in zip(run.comparator_names, normalized)
        ],
        [],
        f"comparator profiles around the decision point y={ref:.6g} "
        "(each scaled by its maximum)",
        "y",
        "scaled comparison value",
    )
    (out / "profile.svg").write_text(profile_chart, encoding="utf-8")

    mask = grid != ref
    sens_chart = line_chart(
        [
            (name, grid[mask], sensitivity_curve(c)[mask])
            for name, c in zip(run.comparator_names, normalized)
        ],
        [],
        f"profile sensitivity |d/dy| around y={ref:.6g} (scaled profiles)",
        "y",
        "sensitivity",
    )
    (out / "sensitivity.svg").write_text(sens_chart, encoding="utf-8")
    return ["profile.csv", "sensitivity.csv", "profile.svg", "sensitivity.svg"]


def cmd_levelsets(run: RunConfig, out: Path) -> list[str]:
    if run.dimensions != 2:
        raise ConfigError("levelsets requires dimensions=2")
    exp = run.experiment()
    ref = reference_point(exp)

    # one fixed sample (substream 0) for the scatter and the rectangle
    rng = substream(run.seed, 0)
    samples = []
    for group in (exp.group_a, exp.group_b):
        spec1 = GroupSpec(group.label, group.bases[0], exp.transform, group.n)
        spec2 = GroupSpec(group.label, group.bases[1], exp.transform, group.n)
        samples.append(sample_group_2d(spec1, spec2, rng))
    all_points = np.concatenate([s.values for s in samples])
    lo = np.minimum(all_points.min(axis=0), ref)
    hi = np.maximum(all_points.max(axis=0), ref)
    pad = 0.05 * (hi - lo)
    rect = (
        max(0.0, float(lo[0] - pad[0])),
        float(hi[0] + pad[0]),
        max(0.0, float(lo[1] - pad[1])),
        float(hi[1] + pad[1]),
    )

    corner_distances = [
        np.hypot(rect[i] - ref[0], rect[j] - ref[1]) for i in (0, 1) for j in (2, 3)
    ]
    euclid_levels = tuple(
        float(f * max(corner_distances)) for f in DISSIMILARITY_LEVELS
    )

    rows = []
    contour_groups = []
    for name, kind in zip(run.comparator_names, run.comparators()):
        levels = euclid_levels if name == "euclidean" else DISSIMILARITY_LEVELS
        grid = level_set_grid(kind, ref, rect, resolution=512, levels=levels)
        flattened = []
        for level, polylines in zip(grid.levels, grid.contours):
            for pid, poly in enumerate(polylines):
                flattened.append(poly)
                for vid, (x, y) in enumerate(poly):
                    rows.append(
                        (
                            run.experiment_id(),
                            name,
                            float(level),
                            pid,
                            vid,
                            float(x),
                            float(y),
                        )
                    )
        contour_groups.append((name, flattened))

    write_csv(
        out / "levelsets.csv",
        ("experiment_id", "comparator", "level", "polyline", "vertex", "x", "y"),
        rows,
    )
    chart = contour_chart(
        [(s.label, s.values) for s in samples],
        contour_groups,
        f"comparator level sets, {run.transform_name} transform",
        "y1",
        "y2",
        rect,
    )
    (out / "levelsets.svg").write_text(chart, encoding="utf-8")
    return ["levelsets.csv", "levelsets.svg"]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        run = _load(args)
        threads = _resolve_threads(args.threads)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    if args.command == "validate":
        json.dump(run.echo(), sys.stdout, indent=2, sort_keys=True)
        print()
        return 0

    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        if args.command == "sweep":
            outputs = cmd_sweep(run, out, threads)
        elif args.command == "single":
            outputs = cmd_single(run, out, threads)
        elif args.command == "profile":
            outputs = cmd_profile(run, out)
        else:
            outputs = cmd_levelsets(run, out)
        write_manifest(
            out / "manifest.json", args.command, run, outputs, __version__
        )
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (InvalidInputError, UnsupportedConfigurationError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 4

    for name in sorted(outputs + ["manifest.json"]):
        print(out / name)
    return 0


if __name__ == "__main__":
    sys.exit(main())
