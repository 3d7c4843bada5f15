"""Figure and CSV rendering for the CLI's report directories."""

import csv
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _grid_eval(f, xs, ys):
    """Float values of f on the meshgrid; exact coefficients demoted to float."""
    out = np.zeros_like(xs)
    for (ex, ey), c in f.terms.items():
        out += float(c) * xs**ex * ys**ey
    return out


def save_intersection_report(pair, data, out_dir):
    """Write the curve picture and the root/multiplicity table; return paths."""
    os.makedirs(out_dir, exist_ok=True)
    roots = [float(a) for a in data.x_roots]
    lo = min(roots, default=0.0) - 1.5
    hi = max(roots, default=0.0) + 1.5
    xs, ys = np.meshgrid(
        np.linspace(lo, hi, 400), np.linspace(-(hi - lo) / 2, (hi - lo) / 2, 400)
    )
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.contour(xs, ys, _grid_eval(pair.f1, xs, ys), levels=[0.0], colors="tab:blue")
    ax.contour(xs, ys, _grid_eval(pair.f2, xs, ys), levels=[0.0], colors="tab:orange")
    ax.axhline(0.0, color="gray", linewidth=0.8, linestyle="--")
    if roots:
        ax.plot(roots, [0.0] * len(roots), "ko", markersize=5)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"curves and their {data.total} intersection(s)")
    png = os.path.join(out_dir, "intersections.png")
    fig.savefig(png, dpi=120)
    plt.close(fig)

    table = os.path.join(out_dir, "intersections.csv")
    with open(table, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x_root", "multiplicity"])
        for a, m in zip(data.x_roots, data.multiplicities):
            writer.writerow([str(a), m])
        writer.writerow(["total", data.total])
    return [png, table]


def save_exploration_report(report, out_dir):
    """Write the Jacobian-degree histogram picture and table; return paths."""
    os.makedirs(out_dir, exist_ok=True)
    items = sorted(
        report.degree_histogram.items(),
        key=lambda kv: (-1 if kv[0] == "zero" else int(kv[0])),
    )
    labels = [k for k, _ in items]
    counts = [v for _, v in items]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.bar(range(len(labels)), counts, color="tab:blue")
    ax.set_xticks(range(len(labels)), labels)
    ax.set_xlabel("deg J(f)")
    ax.set_ylabel("candidates")
    ax.set_title(f"{report.candidates_examined} candidates, "
                 f"{len(report.counterexamples)} constant nonzero")
    png = os.path.join(out_dir, "exploration.png")
    fig.savefig(png, dpi=120)
    plt.close(fig)

    table = os.path.join(out_dir, "exploration.csv")
    with open(table, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["deg_jacobian", "count"])
        for k, v in items:
            writer.writerow([k, v])
    return [png, table]
