"""Command-line frontend.

Subcommands:
    channel-gen     draw random sparse channels, write them as JSON
    run             execute a simulation campaign from a config or preset
    prox-eval       evaluate a scalar shrinkage operator at one point
    evs-histogram   eigenvalue-spread distribution over random channels

Exit codes: 0 on success, 2 on configuration errors, 3 when a campaign
completes but at least one algorithm diverged in every trial.  The
SPARSEQ_OUT environment variable supplies the default output directory.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .channel import (
    PROFILES,
    eigenvalue_spread,
    generate_channel,
    save_channel,
)
from .config import ConfigError, load_config, preset_config
from .prox import prox_half, prox_two_thirds, tau_threshold
from .simulate import run_campaign, write_summary_json, write_traces_csv

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DIVERGED = 3


def _default_out() -> str:
    return os.environ.get("SPARSEQ_OUT", ".")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--out", default=None, metavar="DIR",
        help="output directory (default: $SPARSEQ_OUT or '.')",
    )
    parser.add_argument("--quiet", action="store_true", help="suppress progress chatter")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparseq",
        description="Sparse-channel blind equalization simulator",
    )
    parser.add_argument("--version", action="version", version=f"sparseq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_chan = sub.add_parser("channel-gen", help="generate random sparse channels")
    p_chan.add_argument("--count", type=int, default=1, help="number of channels")
    p_chan.add_argument("--seed", type=int, default=0, help="seed of the first channel")
    p_chan.add_argument(
        "--profile", choices=sorted(PROFILES), default="paper",
        help="tap layout profile",
    )
    p_chan.add_argument("--length", type=int, default=None, help="channel length")
    p_chan.add_argument(
        "--evs-order", type=int, default=120, metavar="N",
        help="correlation matrix order for the EVS summary",
    )
    _add_common(p_chan)

    p_run = sub.add_parser("run", help="run a simulation campaign")
    p_run.add_argument("--config", default=None, metavar="PATH", help="config file")
    p_run.add_argument(
        "--preset", choices=("desk", "paper"), default=None,
        help="built-in campaign preset (used when --config is omitted)",
    )
    p_run.add_argument("--seed", type=int, default=None, help="override master_seed")
    p_run.add_argument("--trials", type=int, default=None, help="override n_trials")
    p_run.add_argument(
        "--no-plot", action="store_true", help="skip figure rendering"
    )
    _add_common(p_run)

    p_prox = sub.add_parser("prox-eval", help="evaluate a shrinkage operator")
    p_prox.add_argument("--mode", choices=("half", "two_thirds"), required=True)
    p_prox.add_argument("--w", type=float, required=True, help="input value")
    p_prox.add_argument("--lam", type=float, required=True, help="penalty weight")

    p_evs = sub.add_parser(
        "evs-histogram", help="eigenvalue-spread histogram over random channels"
    )
    p_evs.add_argument("--count", type=int, default=10000, help="number of channels")
    p_evs.add_argument("--seed", type=int, default=0, help="seed of the first channel")
    p_evs.add_argument(
        "--profile", choices=sorted(PROFILES), default="paper",
        help="tap layout profile",
    )
    p_evs.add_argument("--length", type=int, default=None, help="channel length")
    p_evs.add_argument(
        "--evs-order", type=int, default=120, metavar="N",
        help="correlation matrix order",
    )
    p_evs.add_argument("--bins", type=int, default=40, help="histogram bins")
    p_evs.add_argument("--no-plot", action="store_true", help="skip figure rendering")
    _add_common(p_evs)

    return parser


def _ensure_out(args) -> Path:
    out = Path(args.out if args.out is not None else _default_out())
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out}: {exc}") from exc
    return out


def _cmd_channel_gen(args) -> int:
    out = _ensure_out(args)
    profile = PROFILES[args.profile]
    width = max(5, len(str(args.count - 1)))
    summary_path = out / "evs.csv"
    try:
        with open(summary_path, "w", encoding="ascii") as summary:
            summary.write("index,seed,file,evs\n")
            for i in range(args.count):
                seed = args.seed + i
                ch = generate_channel(profile, seed, args.length)
                name = f"channel_{i:0{width}d}.json"
                save_channel(ch, str(out / name))
                evs = eigenvalue_spread(ch, args.evs_order)
                summary.write(f"{i},{seed},{name},{evs!r}\n")
                if not args.quiet:
                    print(f"{name} seed={seed} evs={evs:.4f}")
    except OSError as exc:
        print(f"error: cannot write channel files: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if not args.quiet:
        print(f"wrote {args.count} channels + evs.csv to {out}")
    return EXIT_OK


def _cmd_run(args) -> int:
    if args.config is not None:
        cfg = load_config(args.config)
    elif args.preset is not None:
        cfg = preset_config(args.preset)
    else:
        raise ConfigError("run needs --config PATH or --preset {desk,paper}")
    if args.seed is not None:
        cfg.master_seed = args.seed
        cfg.echo["master_seed"] = args.seed
    if args.trials is not None:
        if args.trials < 1:
            raise ConfigError(f"--trials must be positive, got {args.trials}")
        cfg.n_trials = args.trials
        cfg.echo["n_trials"] = args.trials
    out = _ensure_out(args)

    progress = None
    if not args.quiet:
        def progress(done, total):
            print(f"\rtrial {done}/{total}", end="", flush=True)

    result = run_campaign(cfg, progress=progress)
    if not args.quiet:
        print()
    write_traces_csv(result, str(out / "traces.csv"))
    write_summary_json(result, str(out / "summary.json"))
    if not args.no_plot:
        from .report import render_isi_traces

        render_isi_traces(result, str(out / "traces.png"))
    if not args.quiet:
        for lab in result.labels:
            final = result.final_mean_isi_db[lab]
            shown = "divergent" if final is None else f"{final:+.2f} dB"
            print(
                f"{lab}: final mean ISI {shown}, "
                f"{result.divergence_count[lab]}/{cfg.n_trials} divergent"
            )
        print(f"outputs in {out}")
    if any(result.divergence_count[lab] == cfg.n_trials for lab in result.labels):
        return EXIT_DIVERGED
    return EXIT_OK


def _cmd_prox_eval(args) -> int:
    if args.lam < 0.0:
        raise ConfigError(f"--lam must be nonnegative, got {args.lam}")
    p = 0.5 if args.mode == "half" else 2.0 / 3.0
    tau = tau_threshold(p, args.lam)
    op = prox_half if args.mode == "half" else prox_two_thirds
    h = op(args.w, args.lam)
    print(f"mode={args.mode} w={args.w!r} lambda={args.lam!r}")
    print(f"threshold={tau!r}")
    print(f"prox={h!r}")
    if h != 0.0:
        # stationarity of (h-w)^2 + lam |h|^p: h - w + (lam p / 2) sign(h) |h|^(p-1) = 0
        residual = h - args.w + args.lam * p / 2.0 * math.copysign(
            abs(h) ** (p - 1.0), h
        )
        print(f"stationarity_residual={residual!r}")
    else:
        print("stationarity_residual=0.0  (dead-zone branch)")
    return EXIT_OK


def _cmd_evs_histogram(args) -> int:
    out = _ensure_out(args)
    profile = PROFILES[args.profile]
    values = np.empty(args.count)
    for i in range(args.count):
        ch = generate_channel(profile, args.seed + i, args.length)
        values[i] = eigenvalue_spread(ch, args.evs_order)
        if not args.quiet and (i + 1) % 1000 == 0:
            print(f"\rchannel {i + 1}/{args.count}", end="", flush=True)
    if not args.quiet and args.count >= 1000:
        print()
    finite = values[np.isfinite(values)]
    with open(out / "evs.csv", "w", encoding="ascii") as fh:
        fh.write("index,seed,evs\n")
        for i, v in enumerate(values):
            fh.write(f"{i},{args.seed + i},{v!r}\n")
    counts, edges = np.histogram(finite, bins=args.bins)
    with open(out / "evs_histogram.csv", "w", encoding="ascii") as fh:
        fh.write("bin_left,bin_right,count\n")
        for j in range(len(counts)):
            fh.write(f"{edges[j]!r},{edges[j + 1]!r},{counts[j]}\n")
    stats = {
        "count": int(args.count),
        "finite": int(len(finite)),
        "mean": float(finite.mean()) if len(finite) else None,
        "std": float(finite.std()) if len(finite) else None,
        "min": float(finite.min()) if len(finite) else None,
        "max": float(finite.max()) if len(finite) else None,
    }
    import json

    with open(out / "evs_stats.json", "w", encoding="ascii") as fh:
        json.dump(stats, fh, indent=2)
        fh.write("\n")
    if not args.no_plot:
        from .report import render_evs_histogram

        render_evs_histogram(values, str(out / "evs_histogram.png"), bins=args.bins)
    if not args.quiet:
        print(
            f"eigenvalue spread over {args.count} channels: "
            f"mean={stats['mean']:.3f} std={stats['std']:.3f}"
        )
        print(f"outputs in {out}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "channel-gen":
            return _cmd_channel_gen(args)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "prox-eval":
            return _cmd_prox_eval(args)
        if args.command == "evs-histogram":
            return _cmd_evs_histogram(args)
        parser.error(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
