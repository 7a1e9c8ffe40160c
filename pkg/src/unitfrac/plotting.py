"""Figure rendering for the report subcommands. Pure file output (Agg);
no interactive backends, no styling beyond what the data needs."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

__all__ = ["growth_figure", "bench_figure"]


def growth_figure(rows, path: str) -> str:
    """log(count)/N and the entropy bound per N, one marker per row."""
    ns = [r.N for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(ns, [r.log_count_over_N for r in rows], "o-", label="log(count) / N")
    ax.plot(ns, [r.upper_bound_log_over_N for r in rows], "s--", label="entropy bound / N")
    ax.set_xlabel("N")
    ax.set_ylabel("exponential rate")
    ax.set_title("Exact reciprocal-sum-1 counts vs the entropy bound")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def bench_figure(rows, path: str) -> str:
    """max_denominator / b against b, log-log, one series per strategy."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    strategies = sorted({r["strategy"] for r in rows})
    markers = {"greedy": "x", "smooth": "o"}
    for strategy in strategies:
        pts = [
            (r["b"], r["ratio_b"])
            for r in rows
            if r["strategy"] == strategy and math.isfinite(r["ratio_b"])
        ]
        if not pts:
            continue
        xs, ys = zip(*pts)
        ax.scatter(xs, ys, s=14, marker=markers.get(strategy, "."), label=strategy, alpha=0.7)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("b")
    ax.set_ylabel("max denominator / b")
    ax.set_title("Expansion budget by strategy")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
