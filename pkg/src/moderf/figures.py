"""Render the reproduction figures from their CSV tables.

Each figure id gets one PNG placed next to the delimited output; the curves
are read from the same OutputTable objects that get serialized, so the plot
and the CSV can never drift apart.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def _xy(table):
    xs = [row[0] for row in table.rows]
    ys = [row[1] for row in table.rows]
    return xs, ys


def _plot_family(ax, tables, prefix: str, x_limit: float | None = None):
    for name in sorted(tables, key=lambda n: float(tables[n].meta["delta"])):
        table = tables[name]
        xs, ys = _xy(table)
        ax.plot(xs, ys, lw=1.2, label=rf"$\delta = {table.meta['delta']:g}$")
    if x_limit is not None:
        ax.set_xlim(0.0, x_limit)
    ax.set_xlabel("$x$")
    ax.set_ylabel(r"$\Phi_\delta(x)$")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)


def render_figure(fig_id: str, tables: dict, png_path: Path):
    if fig_id in ("fig1", "fig3"):
        if fig_id == "fig1":
            fig, axes = plt.subplots(1, 2, figsize=(9, 3.6))
            _plot_family(axes[0], tables, fig_id, x_limit=1.6)
            _plot_family(axes[1], tables, fig_id)
        else:
            fig, ax = plt.subplots(figsize=(5, 3.6))
            _plot_family(ax, tables, fig_id)
    elif fig_id == "fig2":
        fig, axes = plt.subplots(1, 3, figsize=(12, 3.2))
        labels = {"phi0": r"$\varphi_0$", "phi1": r"$\varphi_1$", "phi2": r"$\varphi_2$"}
        for ax, name in zip(axes, ("phi0", "phi1", "phi2")):
            xs, ys = _xy(tables[f"fig2_{name}"])
            ax.plot(xs, ys, lw=1.2)
            ax.set_xlabel("$x$")
            ax.set_title(labels[name])
            ax.grid(alpha=0.3)
    elif fig_id == "fig4a":
        fig, ax = plt.subplots(figsize=(5.5, 3.8))
        for m in (0, 1, 2):
            xs, ys = _xy(tables[f"fig4a_m{m}"])
            ax.plot(xs, ys, marker="o", ms=2.5, lw=1.0, label=rf"$m = {m}$")
        ax.set_xlabel(r"$\delta$")
        ax.set_ylabel("discrete sup-norm error")
        ax.set_yscale("log")
        ax.grid(alpha=0.3)
        ax.legend()
    elif fig_id == "fig4b":
        fig, ax = plt.subplots(figsize=(5.5, 3.8))
        xs, ys = _xy(tables["fig4b_phi"])
        ax.plot(xs, ys, lw=1.4, label=r"$\Phi_{0.2}$")
        xs, ys = _xy(tables["fig4b_psi1"])
        ax.plot(xs, ys, "--", lw=1.2, label=r"$\Psi_{0.2,1}$")
        ax.set_xlabel("$x$")
        ax.grid(alpha=0.3)
        ax.legend()
    elif fig_id == "fig5":
        deltas = sorted(
            {float(t.meta["delta"]) for t in tables.values()}
        )
        fig, axes = plt.subplots(2, 3, figsize=(12, 6.4))
        for ax, d in zip(axes.ravel(), deltas):
            xs, ys = _xy(tables[f"fig5_delta_{d:g}_phi"])
            ax.plot(xs, ys, lw=1.4, label=r"$\Phi_\delta$")
            xs, ys = _xy(tables[f"fig5_delta_{d:g}_psi1"])
            ax.plot(xs, ys, "--", lw=1.2, label=r"$\Psi_{\delta,1}$")
            ax.set_title(rf"$\delta = {d:g}$")
            ax.set_xlabel("$x$")
            ax.grid(alpha=0.3)
            ax.legend(fontsize=8)
    else:
        raise ValueError(f"unknown figure id: {fig_id}")
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
