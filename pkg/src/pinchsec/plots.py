"""Figure rendering for sweep and table outputs.

Companion to the CSV emitters: each renderer takes the already-computed rows
and writes a PNG next to the delimited output.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_SERIES = (
    ("sop_cf", "closed form"),
    ("sop_mc", "Monte Carlo"),
    ("sop_fixed_mc", "fixed antenna (MC)"),
)


def render_sweep_plot(rows: list[dict], axis_label: str, out_path: str) -> None:
    """SOP curves versus the sweep axis for every populated series."""
    xs = [r["axis_value"] for r in rows]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for key, label in _SERIES:
        ys = [r.get(key) for r in rows]
        if any(v is not None for v in ys):
            ax.plot(xs, ys, marker=".", label=label)
    ax.set_xlabel(axis_label)
    ax.set_ylabel("secrecy outage probability")
    ax.set_ylim(-0.02, 1.02)
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def render_table1_plot(rows: list[dict], out_path: str) -> None:
    """Optimal coupling length and minimum SOP per transmit-SNR row."""
    xs = [r["rho_t_db"] for r in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.6, 4.0))
    ax1.plot(xs, [r["l1_theory_low"] for r in rows], marker="o", label="theory (lower)")
    ax1.plot(xs, [r["l1_theory_high"] for r in rows], marker="s", label="theory (upper)")
    ax1.plot(xs, [r["l1_sim_low"] for r in rows], marker="x", linestyle="--", label="grid (lower)")
    ax1.plot(xs, [r["l1_sim_high"] for r in rows], marker="+", linestyle="--", label="grid (upper)")
    ax1.set_xlabel("transmit SNR (dB)")
    ax1.set_ylabel("optimal coupling length of PA-1 (m)")
    ax1.set_yscale("log")
    ax1.grid(True, alpha=0.4)
    ax1.legend(fontsize=8)
    ax2.plot(xs, [r["min_sop"] for r in rows], marker="o", color="tab:red")
    ax2.set_xlabel("transmit SNR (dB)")
    ax2.set_ylabel("minimum SOP")
    ax2.set_ylim(-0.02, 1.02)
    ax2.grid(True, alpha=0.4)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
