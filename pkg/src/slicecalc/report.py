"""CSV tables and matplotlib figures for sweeps and towers."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .reps import GroupPQ  # noqa: E402
from .ring import SweepReport  # noqa: E402
from .slice import SliceTower, Spherical, TowerCheck  # noqa: E402


def write_sweep_csv(report: SweepReport, path: Path) -> Path:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["m", "n", "l", "a", "ring", "oracle", "table", "match"])
        for r in report.rows:
            w.writerow([*r.degree, str(r.ring), str(r.oracle), str(r.table), int(r.match)])
    return path


def write_towers_csv(checks: list[TowerCheck], path: Path) -> Path:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["p", "q", "a", "b", "c", "d", "dim", "s_p", "s_q", "beta",
                    "em_cells", "ok", "problems"])
        for c in checks:
            t = c.tower
            w.writerow([c.g.p, c.g.q, *c.v, c.v.dim, *t.shifts, str(t.beta),
                        len(t.em_cells()), int(c.ok), "; ".join(c.problems)])
    return path


def write_tower_csv(tower: SliceTower, path: Path) -> Path:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["dim", "kind", "prime", "suspension", "beta"])
        for cell in tower.cells:
            if isinstance(cell.content, Spherical):
                w.writerow([cell.dim, "sphere", "", "", str(cell.content.beta)])
            for e in cell.em_parts():
                w.writerow([cell.dim, cell.kind, e.prime, e.suspension, ""])
    return path


def plot_sweep(report: SweepReport, path: Path) -> Path:
    """Order of the G/G group against total degree, marking any mismatch."""
    fig, ax = plt.subplots(figsize=(7, 4))
    xs, ys, bad_x, bad_y = [], [], [], []
    for r in report.rows:
        order = r.ring.order()
        size = -1 if order is None else order
        (xs if r.match else bad_x).append(r.degree.dim)
        (ys if r.match else bad_y).append(size)
    ax.scatter(xs, ys, s=8, alpha=0.4, label="ring = oracle = table")
    if bad_x:
        ax.scatter(bad_x, bad_y, s=20, color="red", label="mismatch")
    ax.set_xlabel("2(m+n+l-a)")
    ax.set_ylabel("|group| (-1 = infinite)")
    ax.set_title(f"Positive cone over {report.g}: {len(report.rows)} degrees")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_tower(tower: SliceTower, path: Path) -> Path:
    """Slices drawn on a vertical dimension axis, coloured by prime."""
    g: GroupPQ = tower.g
    colours = {g.p: "tab:blue", g.q: "tab:orange"}
    fig, ax = plt.subplots(figsize=(4, 6))
    for cell in tower.cells:
        if isinstance(cell.content, Spherical):
            ax.scatter([0], [cell.dim], marker="s", color="black", s=60)
            ax.annotate(f"S^({cell.content.beta})", (0.08, cell.dim), fontsize=8, va="center")
            continue
        for j, e in enumerate(cell.em_parts()):
            ax.scatter([0.0 + 0.04 * j], [cell.dim], color=colours[e.prime], s=30)
            ax.annotate(f"Σ^{e.suspension} K<Z/{e.prime}>", (0.08 + 0.3 * j, cell.dim),
                        fontsize=7, va="center")
    dims = [c.dim for c in tower.cells]
    ax.set_ylim(min(dims) - 3, max(dims) + 3)
    ax.set_xlim(-0.1, 1.0)
    ax.set_xticks([])
    ax.set_ylabel("slice dimension")
    ax.set_title(f"S^({tower.input}) ∧ HZ over {g}", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_tower_sweep(checks: list[TowerCheck], path: Path) -> Path:
    """Number of EM slices against dim(V), one series per group."""
    fig, ax = plt.subplots(figsize=(7, 4))
    groups = sorted({c.g for c in checks}, key=lambda g: (g.p, g.q))
    for g in groups:
        sub = [c for c in checks if c.g == g]
        ax.scatter([c.v.dim for c in sub], [len(c.tower.em_cells()) for c in sub],
                   s=8, alpha=0.4, label=str(g))
    ax.set_xlabel("dim V")
    ax.set_ylabel("EM slices")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_verify_report(report: SweepReport, checks: list[TowerCheck], outdir: Path) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    return [
        write_sweep_csv(report, outdir / "phi_sweep.csv"),
        plot_sweep(report, outdir / "phi_sweep.png"),
        write_towers_csv(checks, outdir / "towers.csv"),
        plot_tower_sweep(checks, outdir / "towers.png"),
    ]
