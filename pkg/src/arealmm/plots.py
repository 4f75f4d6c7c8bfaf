"""Figure rendering for verification reports.

Writes the report figures and the delimited records next to each other in
one directory: a z-score chart for the Monte Carlo comparisons and a
log-scale discrepancy chart for the deterministic ones, alongside
``records.csv``.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .verification import SuiteReport, records_to_csv

__all__ = ["render_report"]

_PASS = "#2a7e43"
_FAIL = "#b2352b"


def _zscore_figure(records, path: Path):
    rows = [r for r in records if r.z is not None]
    fig, ax = plt.subplots(figsize=(8, 0.35 * len(rows) + 1.2))
    names = [r.case for r in rows]
    zs = [r.z for r in rows]
    colors = [_PASS if r.status == "pass" else _FAIL for r in rows]
    ax.barh(range(len(rows)), zs, color=colors)
    ax.axvline(4.0, color="0.4", linestyle="--", linewidth=1)
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("|z| of Monte Carlo estimate vs closed form")
    ax.set_xlim(0, max(4.5, max(zs, default=0) * 1.1))
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _discrepancy_figure(records, path: Path):
    rows = [r for r in records if r.z is None]
    fig, ax = plt.subplots(figsize=(8, 0.35 * len(rows) + 1.2))
    names = [r.case for r in rows]
    floor = 1e-17
    vals = [max(r.discrepancy, floor) for r in rows]
    colors = [_PASS if r.status == "pass" else _FAIL for r in rows]
    ax.barh(range(len(rows)), vals, color=colors)
    ax.set_xscale("log")
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("|closed - numeric| (deterministic checks)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_report(report: SuiteReport, outdir: str | Path) -> list:
    """Write records.csv plus the two report figures; returns the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []

    csv_path = outdir / "records.csv"
    csv_path.write_text(records_to_csv(report.records), encoding="utf-8")
    paths.append(csv_path)

    z_path = outdir / "zscores.png"
    _zscore_figure(report.records, z_path)
    paths.append(z_path)

    d_path = outdir / "discrepancies.png"
    _discrepancy_figure(report.records, d_path)
    paths.append(d_path)
    return paths
