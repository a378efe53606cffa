"""Monte-Carlo equalization campaigns over random sparse channels.

A trial draws one channel and one observation stream, then runs every
configured algorithm over the same stream, recording residual ISI after
each update.  A campaign repeats trials with seeds derived from a master
seed and aggregates the per-iteration traces; results land in a
delimited trace file and a JSON summary.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .channel import PROFILES, SparseChannel, generate_channel
from .config import AlgorithmSpec, ExperimentConfig
from .equalizers import (
    DivergenceError,
    EqualizerState,
    init_equalizer,
    step_ang_cma,
    step_cma,
    step_rscma,
    step_scma_p,
)
from .modulation import apsk8_constellation, dispersion_constant, transmit
from .prox import ProxConfig, regularize_complex_vector

__all__ = [
    "TrialResult",
    "CampaignResult",
    "residual_isi",
    "run_trial",
    "run_campaign",
    "write_traces_csv",
    "write_summary_json",
]

ISI_FLOOR_DB = -100.0
DIVERGENCE_NORM = 1e6
TARGET_DB = -10.0


def residual_isi(ch: SparseChannel, w: np.ndarray) -> float:
    """Residual intersymbol interference of the channel-equalizer cascade, in dB.

    The equalizer output is y[k] = w^H x[k..], so the cascade response is
    t = conv(h, conj(w)).  The metric is the power in t outside its peak
    tap, relative to the peak: (sum|t|^2 - max|t|^2) / max|t|^2, reported
    as 10 log10 and clamped below at -100 dB.  Scale-invariant in w.
    """
    t = np.convolve(ch.taps, np.conj(w))
    powers = np.abs(t) ** 2
    peak = powers.max()
    if peak == 0.0:
        raise ValueError("undefined response: cascade is identically zero")
    isi = (powers.sum() - peak) / peak
    if isi <= 0.0:
        return ISI_FLOOR_DB
    return max(10.0 * math.log10(isi), ISI_FLOOR_DB)


@dataclass
class TrialResult:
    """Per-iteration ISI traces and divergence markers for one trial."""

    isi_db: dict[str, np.ndarray]
    diverged_at: dict[str, int | None]
    channel: SparseChannel


@dataclass
class CampaignResult:
    """Aggregated traces and summary statistics for a whole campaign."""

    config: ExperimentConfig
    labels: list[str]
    mean_isi_db: dict[str, np.ndarray]
    divergence_count: dict[str, int]
    final_mean_isi_db: dict[str, float | None]
    steady_state_mean_isi_db: dict[str, float | None]
    mean_iterations_to_target: dict[str, float | None]
    elapsed_seconds: float
    trial_traces: dict[str, np.ndarray] = field(repr=False, default_factory=dict)


def _run_algorithm(
    spec: AlgorithmSpec,
    ch: SparseChannel,
    windows: np.ndarray,
    R: float,
    n_taps: int,
) -> tuple[np.ndarray, int | None]:
    n_iter = len(windows)
    trace = np.full(n_iter, np.nan)
    state = EqualizerState(
        w=init_equalizer(n_taps), mu=spec.mu, p=spec.p, eps_guard=spec.eps_guard
    )
    prox_cfg = None
    if spec.name == "rscma":
        prox_cfg = ProxConfig(
            mode=spec.prox_mode, lambda_r=spec.lambda_r, lambda_i=spec.lambda_i
        )
    w_report = state.w
    for k in range(n_iter):
        x = windows[k][::-1]
        try:
            if spec.name == "cma":
                step_cma(state, x, R)
            elif spec.name == "ang_cma":
                step_ang_cma(state, x, R, eps_prop=spec.eps_prop)
            elif spec.name == "scma_p":
                step_scma_p(state, x, R, rho=spec.rho)
            else:
                step_rscma(state, x, R)
        except DivergenceError:
            return trace, k
        if prox_cfg is not None and (k + 1) % spec.prox_every == 0:
            shrunk = regularize_complex_vector(state.w, prox_cfg)
            if spec.prox_write_back:
                state.w = shrunk
            # in output-only mode the shrunk taps are what the trial reports
            w_report = shrunk
        elif spec.prox_write_back or prox_cfg is None:
            w_report = state.w
        if np.linalg.norm(state.w) > DIVERGENCE_NORM:
            return trace, k
        if not np.any(w_report):
            # over-aggressive shrinkage can empty the reported equalizer;
            # score that iteration at 0 dB (interference on par with signal)
            trace[k] = 0.0
        else:
            trace[k] = residual_isi(ch, w_report)
    return trace, None


def run_trial(
    cfg: ExperimentConfig, trial_seed: int, channel_seed: int | None = None
) -> TrialResult:
    """Run every configured algorithm once over a shared observation stream.

    Channel and noise seeds derive deterministically from ``trial_seed``;
    an explicit ``channel_seed`` overrides the derived one.
    """
    derived = np.random.SeedSequence(trial_seed).generate_state(2, np.uint64)
    if channel_seed is None:
        channel_seed = int(derived[0])
    stream_seed = int(derived[1])

    profile = PROFILES[cfg.channel_profile]
    ch = generate_channel(profile, channel_seed, cfg.channel_length)
    constellation = apsk8_constellation(cfg.ring_ratio)
    R = dispersion_constant(constellation)
    stream = transmit(ch, constellation, cfg.n_iterations, cfg.snr_db, stream_seed)

    n = cfg.equalizer_length
    xpad = np.concatenate([np.zeros(n - 1, dtype=np.complex128), stream.x])
    windows = np.lib.stride_tricks.sliding_window_view(xpad, n)

    isi_db = {}
    diverged_at = {}
    for spec in cfg.algorithms:
        trace, div = _run_algorithm(spec, ch, windows, R, n)
        isi_db[spec.label] = trace
        diverged_at[spec.label] = div
    return TrialResult(isi_db=isi_db, diverged_at=diverged_at, channel=ch)


def _aggregate(traces: np.ndarray, domain: str) -> np.ndarray:
    """Mean trace over trials, in the dB domain or linearly."""
    if domain == "db":
        return traces.mean(axis=0)
    lin = 10.0 ** (traces / 10.0)
    with np.errstate(divide="ignore"):
        out = 10.0 * np.log10(lin.mean(axis=0))
    return np.maximum(out, ISI_FLOOR_DB)


def _iterations_to_target(trace: np.ndarray, target_db: float, n_iter: int) -> float:
    hits = np.nonzero(trace <= target_db)[0]
    return float(hits[0] + 1) if len(hits) else float(n_iter)


def run_campaign(cfg: ExperimentConfig, progress=None) -> CampaignResult:
    """Run ``cfg.n_trials`` independent trials and aggregate their traces.

    Trial seeds derive from ``cfg.master_seed``; channel seeds walk the
    range starting at ``channel.seed_start`` when that is set.  Divergent
    trials are excluded from the means but counted in the summary.
    """
    t0 = time.monotonic()
    trial_seeds = np.random.SeedSequence(cfg.master_seed).generate_state(
        cfg.n_trials, np.uint64
    )
    labels = [spec.label for spec in cfg.algorithms]
    all_traces = {
        lab: np.full((cfg.n_trials, cfg.n_iterations), np.nan) for lab in labels
    }
    div_counts = dict.fromkeys(labels, 0)
    ok_mask = {lab: np.zeros(cfg.n_trials, dtype=bool) for lab in labels}

    for i in range(cfg.n_trials):
        channel_seed = None
        if cfg.channel_seed_start is not None:
            channel_seed = cfg.channel_seed_start + i
        result = run_trial(cfg, int(trial_seeds[i]), channel_seed)
        for lab in labels:
            if result.diverged_at[lab] is None:
                all_traces[lab][i] = result.isi_db[lab]
                ok_mask[lab][i] = True
            else:
                div_counts[lab] += 1
        if progress is not None:
            progress(i + 1, cfg.n_trials)

    mean_isi = {}
    final_mean = {}
    steady_mean = {}
    to_target = {}
    tail = max(1, cfg.n_iterations // 10)
    for lab in labels:
        kept = all_traces[lab][ok_mask[lab]]
        if len(kept) == 0:
            mean_isi[lab] = np.full(cfg.n_iterations, np.nan)
            final_mean[lab] = None
            steady_mean[lab] = None
            to_target[lab] = None
            continue
        mean_trace = _aggregate(kept, cfg.average_domain)
        mean_isi[lab] = mean_trace
        final_mean[lab] = float(mean_trace[-1])
        steady_mean[lab] = float(mean_trace[-tail:].mean())
        to_target[lab] = float(
            np.mean(
                [
                    _iterations_to_target(tr, TARGET_DB, cfg.n_iterations)
                    for tr in kept
                ]
            )
        )

    return CampaignResult(
        config=cfg,
        labels=labels,
        mean_isi_db=mean_isi,
        divergence_count=div_counts,
        final_mean_isi_db=final_mean,
        steady_state_mean_isi_db=steady_mean,
        mean_iterations_to_target=to_target,
        elapsed_seconds=time.monotonic() - t0,
        trial_traces=all_traces,
    )


def write_traces_csv(result: CampaignResult, path: str) -> None:
    """Write the mean ISI traces as CSV: iteration,<label>_isi_db,...

    Float formatting uses the shortest round-trip representation, so two
    runs of the same campaign produce byte-identical files.
    """
    header = "iteration," + ",".join(f"{lab}_isi_db" for lab in result.labels)
    lines = [header]
    n_iter = result.config.n_iterations
    cols = [result.mean_isi_db[lab] for lab in result.labels]
    for k in range(n_iter):
        row = ",".join(repr(float(col[k])) for col in cols)
        lines.append(f"{k},{row}")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_json_safe(v) for v in value]
    return value


def write_summary_json(result: CampaignResult, path: str) -> None:
    """Write final means, divergence counts, config echo, and tool version."""
    algos = {}
    for spec, lab in zip(result.config.algorithms, result.labels):
        algos[lab] = {
            "name": spec.name,
            "divergence_count": result.divergence_count[lab],
            "final_mean_isi_db": result.final_mean_isi_db[lab],
            "steady_state_mean_isi_db": result.steady_state_mean_isi_db[lab],
            "mean_iterations_to_minus10db": result.mean_iterations_to_target[lab],
        }
    payload = {
        "tool": "sparseq",
        "version": __version__,
        "elapsed_seconds": result.elapsed_seconds,
        "n_trials": result.config.n_trials,
        "algorithms": algos,
        "config": _json_safe(result.config.echo),
    }
    with open(path, "w", encoding="ascii") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
