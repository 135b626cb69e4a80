"""CSV and manifest emission for CLI runs.

CSV files are written with '\n' line endings and RFC-4180 quoting; float
cells use ``repr`` (shortest round-trip form), so identical results always
serialize to identical bytes.  The manifest carries the resolved
configuration echo, which reproduces the run exactly; it is the only output
with a timestamp.
"""

from __future__ import annotations

import csv
import json
from datetime import datetime, timezone
from pathlib import Path

from .config import RunConfig
from .experiment import AccuracyStats

RESULTS_HEADER = (
    "experiment_id",
    "comparator",
    "transform",
    "dim",
    "k",
    "mean_beta",
    "std_beta",
    "realizations",
)
BETA_HIST_HEADER = ("experiment_id", "comparator", "k", "beta_value", "count")


def fmt(value) -> str:
    """Canonical cell text: shortest round-trip repr for floats."""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(cell) for cell in row])


def write_results_csv(path: Path, run: RunConfig, stats: AccuracyStats) -> None:
    rows = []
    for ci, name in enumerate(run.comparator_names):
        for k in run.k_values:
            cell = stats.cell(ci, k)
            rows.append(
                (
                    run.experiment_id(),
                    name,
                    run.transform_name,
                    run.dimensions,
                    k,
                    float(cell.mean_beta),
                    float(cell.std_beta),
                    stats.realizations,
                )
            )
    write_csv(path, RESULTS_HEADER, rows)


def write_beta_hist_csv(path: Path, run: RunConfig, stats: AccuracyStats) -> None:
    rows = []
    for ci, name in enumerate(run.comparator_names):
        for k in run.k_values:
            cell = stats.cell(ci, k)
            for value, count in zip(cell.hist_values, cell.hist_counts):
                rows.append(
                    (run.experiment_id(), name, k, float(value), int(count))
                )
    write_csv(path, BETA_HIST_HEADER, rows)


def write_manifest(
    path: Path, command: str, run: RunConfig, outputs: list[str], version: str
) -> None:
    manifest = {
        "artifact_version": version,
        "command": command,
        "config": run.echo(),
        "master_seed": run.seed,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "outputs": sorted(outputs),
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")
