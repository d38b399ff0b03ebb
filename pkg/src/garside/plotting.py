"""Figures for the benchmark report."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_bench(rows: list[dict], path: str) -> str:
    """
    Plot invariant-set sizes against k on a log scale, next to the 2^{2k-2} lower bound.
    Rows are the dicts produced by the bench command. Returns the path written.
    """
    ks = [r["k"] for r in rows]
    fig, ax = plt.subplots(figsize=(5.5, 3.6))
    ax.semilogy(ks, [2 ** (2 * k - 2) for k in ks], "k--", label=r"$2^{2k-2}$ witnesses")
    sss = [(r["k"], r["sss_size"]) for r in rows if r.get("sss_size") not in (None, "")]
    if sss:
        ax.semilogy(*zip(*sss), "o-", label="SSS size")
    ax.semilogy(ks, [r["sc_size"] for r in rows], "s-", label="SC size")
    ax.set_xlabel("k")
    ax.set_ylabel("cardinality")
    ax.set_xticks(ks)
    ax.legend(frameon=False)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
