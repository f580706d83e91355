"""Report files: tab-separated tables plus PNG figures (Agg backend)."""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["write_census_report", "write_geometric_report", "write_graph_report", "write_tsv"]

plt.rcParams.update(
    {
        "font.size": 9,
        "axes.titlesize": 10,
        "axes.spines.top": False,
        "axes.spines.right": False,
        "figure.dpi": 120,
    }
)


def write_tsv(path: str, header, rows) -> str:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    return path


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def write_census_report(report, outdir: str) -> list:
    """Stage counts and classes of one census level; returns written paths."""
    os.makedirs(outdir, exist_ok=True)
    stem = os.path.join(outdir, f"census-{report.mode}-{report.n}")
    paths = [write_tsv(stem + "-stages.tsv", ("stage", "count"), report.stage_rows())]
    rows = []
    for r in report.records:
        rec = r.record
        rows.append((r.signature, r.status, str(rec.h1), int(rec.orientable), f"{rec.tv5:.10f}", f"{rec.tv7:.10f}", r.graph))
    paths.append(write_tsv(stem + "-records.tsv", ("signature", "status", "H1", "orientable", "TV5", "TV7", "graph"), rows))

    names, counts = zip(*report.stage_rows())
    fig, ax = plt.subplots(figsize=(6, 3.2))
    ax.barh(range(len(names)), [max(c, 0.8) for c in counts], color="#4c72b0")
    ax.set_yticks(range(len(names)), names)
    ax.invert_yaxis()
    ax.set_xscale("log")
    ax.set_xlabel("count (log scale)")
    ax.set_title(f"{report.mode} census, n = {report.n}")
    for i, c in enumerate(counts):
        ax.text(max(c, 0.8), i, f" {c}", va="center", fontsize=7)
    paths.append(_save(fig, stem + "-stages.png"))
    return paths


def write_geometric_report(census, outdir: str) -> list:
    from .seifert import ROWS

    os.makedirs(outdir, exist_ok=True)
    stem = os.path.join(outdir, f"geometric-{census.max_c}")
    rows = [(g, c, census.rows.get((g, c), 0)) for g in ROWS for c in range(census.max_c + 1)]
    paths = [write_tsv(stem + "-rows.tsv", ("geometry", "c", "count"), rows)]
    paths.append(write_tsv(stem + "-manifolds.tsv", ("geometry", "c", "parameters"), census.manifolds))

    fig, ax = plt.subplots(figsize=(5.5, 3.5))
    cs = list(range(census.max_c + 1))
    for g in ROWS:
        ys = census.row(g)
        if any(ys):
            pts = [(c, y) for c, y in zip(cs, ys) if y]
            ax.plot(*zip(*pts), marker="o", ms=3, lw=1, label=g)
    ax.set_yscale("log")
    ax.set_xlabel("complexity c")
    ax.set_ylabel("manifolds")
    ax.legend(frameon=False, fontsize=7)
    paths.append(_save(fig, stem + "-rows.png"))
    return paths


def write_graph_report(counts: dict, outdir: str) -> list:
    """``counts`` maps n -> dict of column -> value (e.g. all, useful)."""
    os.makedirs(outdir, exist_ok=True)
    cols = sorted({k for v in counts.values() for k in v})
    rows = [(n,) + tuple(counts[n].get(c, "") for c in cols) for n in sorted(counts)]
    stem = os.path.join(outdir, "graphs")
    paths = [write_tsv(stem + ".tsv", ("n",) + tuple(cols), rows)]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    for c in cols:
        pts = [(n, counts[n][c]) for n in sorted(counts) if counts[n].get(c)]
        if pts:
            ax.plot(*zip(*pts), marker="s", ms=3, lw=1, label=c)
    ax.set_yscale("log")
    ax.set_xlabel("tetrahedra n")
    ax.set_ylabel("graphs")
    ax.legend(frameon=False, fontsize=7)
    paths.append(_save(fig, stem + ".png"))
    return paths
