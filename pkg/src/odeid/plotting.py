"""Optional figure rendering for the simulation commands (PNG next to the CSV)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

CASE_ORDER = ("A", "B", "C")
SCORE_LABELS = {"icis": "ICIS", "kappa": "kappa", "scn": "SCN", "pis": "PIS"}


def sim1_figure(records, path) -> None:
    ok = [r for r in records if not r.failed]
    inv = np.array([1.0 / max(r.icis, 1e-12) for r in ok])
    fig, axes = plt.subplots(1, 2, figsize=(9, 4))
    for ax, attr, title in (
        (axes[0], "ree_noisy", "noisy data"),
        (axes[1], "ree_clean", "noise-free data"),
    ):
        ax.scatter(inv, [getattr(r, attr) for r in ok], s=14, alpha=0.7)
        ax.set_xlabel("1 / ICIS")
        ax.set_ylabel("REE")
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def _finite_for_box(vals):
    vals = np.asarray(vals, dtype=float)
    finite = vals[np.isfinite(vals)]
    return finite if finite.size else np.array([np.nan])


def sim2_box_figure(records, path) -> None:
    ok = [r for r in records if not r.failed]
    fig, axes = plt.subplots(2, 4, figsize=(13, 6), sharex=True)
    for row, cond in enumerate(("noisy", "clean")):
        for col, score in enumerate(("icis", "scn", "pis", "kappa")):
            attr = "icis" if score == "icis" else f"{score}_{cond}"
            data = [
                _finite_for_box([getattr(r, attr) for r in ok if r.case == case])
                for case in CASE_ORDER
            ]
            ax = axes[row, col]
            ax.boxplot(data, tick_labels=CASE_ORDER)
            ax.set_yscale("log")
            if row == 0:
                ax.set_title(SCORE_LABELS[score])
            if col == 0:
                ax.set_ylabel(f"{cond} data")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def sim2_roc_figure(auc_table, path) -> None:
    fig, axes = plt.subplots(1, 2, figsize=(10, 4.6))
    for ax, cond in zip(axes, ("noisy", "clean")):
        for score, roc in auc_table[cond].items():
            fpr = [p[0] for p in roc.curve]
            tpr = [p[1] for p in roc.curve]
            ax.plot(fpr, tpr, label=f"{SCORE_LABELS[score]} (AUC={roc.auc:.3f})")
        ax.plot([0, 1], [0, 1], "k:", lw=0.8)
        ax.set_xlabel("false positive rate")
        ax.set_ylabel("true positive rate")
        ax.set_title(f"{cond} data")
        ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def dimscale_figure(records, path) -> None:
    ok = [r for r in records if not r.failed]
    dims = sorted({r.d for r in ok})
    data = [_finite_for_box([r.icis for r in ok if r.d == d]) for d in dims]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.boxplot(data, tick_labels=[str(d) for d in dims])
    ax.set_yscale("log")
    ax.set_xlabel("dimension d")
    ax.set_ylabel("ICIS")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
