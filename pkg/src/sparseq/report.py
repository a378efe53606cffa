"""Figure rendering for campaign outputs.

Renders the mean ISI learning curves and eigenvalue-spread histograms to
image files next to the delimited outputs.  The CSV/JSON files remain
the machine-readable contract; figures are for eyeballs.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .simulate import CampaignResult

__all__ = ["render_isi_traces", "render_evs_histogram"]


def render_isi_traces(result: CampaignResult, path: str) -> None:
    """Plot every algorithm's mean ISI trace on one set of axes."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for lab in result.labels:
        trace = result.mean_isi_db[lab]
        if np.all(np.isnan(trace)):
            continue
        ax.plot(np.arange(1, len(trace) + 1), trace, label=lab, linewidth=1.0)
    ax.set_xlabel("iteration")
    ax.set_ylabel("residual ISI [dB]")
    ax.grid(True, alpha=0.3)
    ax.legend()
    snr = result.config.snr_db
    ax.set_title(
        f"{result.config.channel_profile} channels, "
        f"{result.config.n_trials} trials, SNR {snr} dB"
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_evs_histogram(values: np.ndarray, path: str, bins: int = 40) -> None:
    """Histogram of eigenvalue spreads over an ensemble of channels."""
    finite = np.asarray(values)[np.isfinite(values)]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.hist(finite, bins=bins, edgecolor="black", linewidth=0.4)
    ax.set_xlabel("eigenvalue spread")
    ax.set_ylabel("count")
    if len(finite):
        ax.set_title(
            f"mean {finite.mean():.2f}, std {finite.std():.2f}, n={len(finite)}"
        )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
