"""Figures written next to the CSV outputs of the command-line runner."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_timeseries(table: np.ndarray, path, title: str = ""):
    """U, V, W against t from a ``t,a,b,U,V,W`` table."""
    fig, (ax_u, ax_ab) = plt.subplots(2, 1, figsize=(6.4, 6.0), sharex=True)
    t = table[:, 0]
    for col, name in zip((3, 4, 5), ("U", "V", "W")):
        ax_u.plot(t, table[:, col], label=name)
    ax_u.set_ylabel("velocity")
    ax_u.legend(frameon=False)
    if title:
        ax_u.set_title(title)
    ax_ab.plot(t, table[:, 1], label="a")
    ax_ab.plot(t, table[:, 2], label="b", linestyle="--")
    ax_ab.set_xlabel("t")
    ax_ab.legend(frameon=False)
    return _finish(fig, path)


def plot_convergence(results: dict, path, title: str = ""):
    """Log-log residual against h for every residual that is not at round-off."""
    fig, ax = plt.subplots(figsize=(5.6, 4.4))
    for name, res in results.items():
        vals = np.asarray(res.values)
        if res.is_exact or np.all(vals == 0):
            continue
        label = f"{name} (order {res.order:.2f})"
        ax.loglog(res.hs, vals, marker="o", label=label)
    ax.set_xlabel("h")
    ax.set_ylabel("max-norm residual")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False, fontsize="small")
    return _finish(fig, path)


def plot_residual_history(times, series: dict, path):
    """Max-norm residuals against time for the verify command."""
    fig, ax = plt.subplots(figsize=(5.6, 4.4))
    for name, vals in series.items():
        vals = np.asarray(vals, dtype=float)
        if np.any(vals > 0):
            ax.semilogy(times, vals, marker="o", label=name)
    ax.set_xlabel("t")
    ax.set_ylabel("max-norm residual")
    ax.legend(frameon=False, fontsize="small")
    return _finish(fig, path)
