"""Render the chart comparisons and the CCA heatmap as PNGs (needs matplotlib).

Usage: python scripts/make_figures.py --out results/
"""
import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from capchart import geometry as geo
from capchart.capability import chart, perfect_boundary
from capchart.cli import cmd_chart, cmd_heatmap
from capchart.optimizer import heatmap, optimize_unconstrained

DESIGNS = {
    "Conventional": (1 / 3, 1 / 3, 1 / 3),
    "Optimal": None,
    "MPT optimal": (1 / 2, 1 / 3, 1 / 6),
    "Convex optimal": (0.4, 0.4, 0.2),
    "Two converters": (1 / 2, 1 / 2, 0.0),
}


def closed(poly, nominal=False):
    a = poly.as_array()
    if nominal and len(a):
        a = np.column_stack(geo.plane_to_nominal_xy(a[:, 0], a[:, 1]))
    return np.vstack([a, a[:1]]) if len(a) else a


def plot_coordinate_frames(out: Path):
    alpha = (0.5, 0.4, 0.1)
    C = chart(alpha, all_configurations=True)
    P = perfect_boundary()
    fig, axes = plt.subplots(1, 2, figsize=(9, 4.5))
    for ax, nominal, title in [(axes[0], True, "(a) nominal, p1 vs p2"), (axes[1], False, "(b) in-plane, px vs py")]:
        c, p = closed(C, nominal), closed(P, nominal)
        ax.fill(c[:, 0], c[:, 1], alpha=0.35)
        ax.plot(c[:, 0], c[:, 1])
        ax.plot(p[:, 0], p[:, 1], "k--", lw=0.8)
        ax.set_aspect("equal")
        ax.set_title(title)
        ax.grid(alpha=0.3)
    fig.suptitle(f"alpha = {alpha}")
    fig.savefig(out / "charts_coordinates.png", dpi=150, bbox_inches="tight")
    plt.close(fig)


def plot_heatmap(out: Path, step: float):
    grid = heatmap(step)
    fig, ax = plt.subplots(figsize=(6, 5))
    sc = ax.scatter(grid.alpha1, grid.alpha2, c=grid.cca, s=4, marker="s", cmap="viridis")
    fig.colorbar(sc, label="CCA, pu^2")
    k = int(np.argmax(grid.cca))
    ax.plot(grid.alpha1[k], grid.alpha2[k], "r+", ms=12)
    ax.set_xlabel("alpha[1], pu")
    ax.set_ylabel("alpha[2], pu")
    fig.savefig(out / "cca_heatmap.png", dpi=150, bbox_inches="tight")
    plt.close(fig)


def plot_designs(out: Path):
    fig, axes = plt.subplots(1, len(DESIGNS), figsize=(3.2 * len(DESIGNS), 3.4))
    P = closed(perfect_boundary())
    for ax, (name, alpha) in zip(axes, DESIGNS.items()):
        if alpha is None:
            alpha = optimize_unconstrained(0.002).alpha.alpha
        c = closed(chart(alpha, all_configurations=True))
        if len(c):
            ax.fill(c[:, 0], c[:, 1], alpha=0.35)
            ax.plot(c[:, 0], c[:, 1])
        ax.plot(P[:, 0], P[:, 1], "k--", lw=0.8)
        ax.set_aspect("equal")
        ax.set_title(f"{name}\n({', '.join(f'{v:.3f}' for v in alpha)})", fontsize=9)
        ax.set_xticks([])
        ax.set_yticks([])
    fig.savefig(out / "design_charts.png", dpi=150, bbox_inches="tight")
    plt.close(fig)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="results")
    parser.add_argument("--step", type=float, default=0.002)
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    plot_coordinate_frames(out)
    plot_heatmap(out, args.step)
    plot_designs(out)
    cmd_heatmap(args.step, out / "heatmap.csv")
    for coords in ("nominal", "plane"):
        cmd_chart((0.5, 0.4, 0.1), coords, "svg", out / f"chart_{coords}.svg")
    cmd_chart((0.5, 0.4, 0.1), "plane", "csv", out / "chart.csv")
    print(f"wrote figures to {out}/")


if __name__ == "__main__":
    main()
