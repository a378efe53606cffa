"""Campaign configuration: schema, validation, presets, file loading.

Config files are YAML (JSON is valid YAML, so either syntax loads).
Validation is strict: unknown keys are rejected by name, required keys
must be present, and every value is range-checked before a campaign
starts.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field
from typing import Any

import yaml

from .channel import PROFILES

__all__ = [
    "ConfigError",
    "AlgorithmSpec",
    "ExperimentConfig",
    "PRESETS",
    "load_config",
    "parse_config",
    "preset_config",
]

ALGORITHM_NAMES = ("cma", "ang_cma", "scma_p", "rscma")


class ConfigError(ValueError):
    """Invalid or malformed campaign configuration."""


@dataclass(frozen=True)
class AlgorithmSpec:
    """One algorithm entry: its update rule plus hyperparameters."""

    name: str
    mu: float
    label: str
    p: float = 0.5
    eps_guard: float = 1e-8
    eps_prop: float = 1e-3
    rho: float = 0.0
    prox_mode: str = "half"
    lambda_r: float = 1e-4
    lambda_i: float = 1e-4
    prox_every: int = 1
    prox_write_back: bool = True


@dataclass
class ExperimentConfig:
    """Fully resolved campaign description."""

    master_seed: int
    n_trials: int
    equalizer_length: int
    channel_profile: str
    channel_length: int
    channel_seed_start: int | None
    constellation: str
    ring_ratio: float
    snr_db: float
    n_iterations: int
    average_domain: str
    algorithms: list[AlgorithmSpec]
    echo: dict = field(repr=False, default_factory=dict)


_ALGO_KEYS = {
    "name",
    "label",
    "mu",
    "p",
    "eps_guard",
    "eps_prop",
    "rho",
    "prox_mode",
    "lambda_r",
    "lambda_i",
    "prox_every",
    "prox_write_back",
}

_TOP_KEYS = {
    "master_seed",
    "n_trials",
    "equalizer_length",
    "channel",
    "signal",
    "average_domain",
    "algorithms",
}

_CHANNEL_KEYS = {"profile", "length", "seed_start"}
_SIGNAL_KEYS = {"constellation", "ring_ratio", "snr_db", "n_iterations"}


def _reject_unknown(mapping: dict, allowed: set, where: str) -> None:
    unknown = sorted(set(mapping) - allowed)
    if unknown:
        raise ConfigError(f"unknown key {unknown[0]!r} in {where}")


def _require(mapping: dict, key: str, where: str) -> Any:
    if key not in mapping:
        raise ConfigError(f"missing required key {key!r} in {where}")
    return mapping[key]


def _as_int(value: Any, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    return value


def _as_number(value: Any, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    return float(value)


def parse_config(raw: dict) -> ExperimentConfig:
    """Validate a nested mapping and resolve it to an ExperimentConfig."""
    if not isinstance(raw, dict):
        raise ConfigError(f"config root must be a mapping, got {type(raw).__name__}")
    _reject_unknown(raw, _TOP_KEYS, "config root")

    master_seed = _as_int(_require(raw, "master_seed", "config root"), "master_seed")
    n_trials = _as_int(_require(raw, "n_trials", "config root"), "n_trials")
    if n_trials < 1:
        raise ConfigError(f"n_trials must be positive, got {n_trials}")
    eq_len = _as_int(
        _require(raw, "equalizer_length", "config root"), "equalizer_length"
    )
    if eq_len < 1:
        raise ConfigError(f"equalizer_length must be positive, got {eq_len}")

    chan = _require(raw, "channel", "config root")
    if not isinstance(chan, dict):
        raise ConfigError("channel section must be a mapping")
    _reject_unknown(chan, _CHANNEL_KEYS, "channel section")
    profile = _require(chan, "profile", "channel section")
    if profile not in PROFILES:
        raise ConfigError(
            f"channel.profile must be one of {sorted(PROFILES)}, got {profile!r}"
        )
    chan_length = chan.get("length")
    if chan_length is None:
        chan_length = PROFILES[profile].base_length
    else:
        chan_length = _as_int(chan_length, "channel.length")
    seed_start = chan.get("seed_start")
    if seed_start is not None:
        seed_start = _as_int(seed_start, "channel.seed_start")

    sig = _require(raw, "signal", "config root")
    if not isinstance(sig, dict):
        raise ConfigError("signal section must be a mapping")
    _reject_unknown(sig, _SIGNAL_KEYS, "signal section")
    constellation = sig.get("constellation", "apsk8")
    if constellation != "apsk8":
        raise ConfigError(
            f"signal.constellation must be 'apsk8', got {constellation!r}"
        )
    ring_ratio = _as_number(sig.get("ring_ratio", 2.0), "signal.ring_ratio")
    snr_raw = sig.get("snr_db", math.inf)
    snr_db = math.inf if snr_raw in ("inf", ".inf") else _as_number(
        snr_raw, "signal.snr_db"
    )
    n_iterations = _as_int(
        _require(sig, "n_iterations", "signal section"), "signal.n_iterations"
    )
    if n_iterations < 1:
        raise ConfigError(f"n_iterations must be positive, got {n_iterations}")

    average_domain = raw.get("average_domain", "db")
    if average_domain not in ("db", "linear"):
        raise ConfigError(
            f"average_domain must be 'db' or 'linear', got {average_domain!r}"
        )

    algos_raw = _require(raw, "algorithms", "config root")
    if not isinstance(algos_raw, list) or not algos_raw:
        raise ConfigError("algorithms must be a non-empty list")
    algorithms = []
    labels = set()
    for i, entry in enumerate(algos_raw):
        where = f"algorithms[{i}]"
        if not isinstance(entry, dict):
            raise ConfigError(f"{where} must be a mapping")
        _reject_unknown(entry, _ALGO_KEYS, where)
        name = _require(entry, "name", where)
        if name not in ALGORITHM_NAMES:
            raise ConfigError(
                f"{where}.name must be one of {list(ALGORITHM_NAMES)}, got {name!r}"
            )
        mu = _as_number(_require(entry, "mu", where), f"{where}.mu")
        if mu <= 0.0:
            raise ConfigError(f"{where}.mu must be positive, got {mu}")
        label = entry.get("label", name)
        if label in labels:
            raise ConfigError(f"duplicate algorithm label {label!r}")
        labels.add(label)
        spec = AlgorithmSpec(
            name=name,
            mu=mu,
            label=label,
            p=_as_number(entry.get("p", 0.5), f"{where}.p"),
            eps_guard=_as_number(entry.get("eps_guard", 1e-8), f"{where}.eps_guard"),
            eps_prop=_as_number(entry.get("eps_prop", 1e-3), f"{where}.eps_prop"),
            rho=_as_number(entry.get("rho", 0.0), f"{where}.rho"),
            prox_mode=entry.get("prox_mode", "half"),
            lambda_r=_as_number(entry.get("lambda_r", 1e-4), f"{where}.lambda_r"),
            lambda_i=_as_number(entry.get("lambda_i", 1e-4), f"{where}.lambda_i"),
            prox_every=_as_int(entry.get("prox_every", 1), f"{where}.prox_every"),
            prox_write_back=bool(entry.get("prox_write_back", True)),
        )
        if not 0.0 < spec.p < 1.0:
            raise ConfigError(f"{where}.p must lie in (0, 1), got {spec.p}")
        if spec.prox_mode not in ("half", "two_thirds"):
            raise ConfigError(
                f"{where}.prox_mode must be 'half' or 'two_thirds', "
                f"got {spec.prox_mode!r}"
            )
        if spec.prox_every < 1:
            raise ConfigError(
                f"{where}.prox_every must be >= 1, got {spec.prox_every}"
            )
        algorithms.append(spec)

    return ExperimentConfig(
        master_seed=master_seed,
        n_trials=n_trials,
        equalizer_length=eq_len,
        channel_profile=profile,
        channel_length=chan_length,
        channel_seed_start=seed_start,
        constellation=constellation,
        ring_ratio=ring_ratio,
        snr_db=snr_db,
        n_iterations=n_iterations,
        average_domain=average_domain,
        algorithms=algorithms,
        echo=copy.deepcopy(raw),
    )


def load_config(path: str) -> ExperimentConfig:
    """Parse and validate a YAML/JSON config file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config file {path}: {exc}") from exc
    return parse_config(raw)


def _desk_raw() -> dict:
    return {
        "master_seed": 20260819,
        "n_trials": 50,
        "equalizer_length": 48,
        "channel": {"profile": "desk", "length": 32, "seed_start": None},
        "signal": {
            "constellation": "apsk8",
            "ring_ratio": 2.0,
            "snr_db": 30.0,
            "n_iterations": 12000,
        },
        "average_domain": "db",
        "algorithms": [
            {"name": "cma", "mu": 1.0e-3},
            {"name": "ang_cma", "mu": 4.0e-3, "eps_prop": 1.0e-1},
            {"name": "scma_p", "mu": 1.0e-3, "p": 0.5, "rho": 1.0e-5},
            {
                "name": "rscma",
                "mu": 2.0e-3,
                "p": 0.5,
                "eps_guard": 2.0e-2,
                "prox_mode": "half",
                "lambda_r": 8.0e-3,
                "lambda_i": 8.0e-3,
                "prox_every": 50,
                "prox_write_back": True,
            },
        ],
    }


def _paper_raw() -> dict:
    raw = _desk_raw()
    raw["master_seed"] = 31415926
    raw["n_trials"] = 1000
    raw["equalizer_length"] = 120
    raw["channel"] = {"profile": "paper", "length": 100, "seed_start": None}
    raw["signal"]["n_iterations"] = 30000
    # step sizes shrink with the 48 -> 120 tap count (gradient noise grows
    # with filter length, so the stability ceiling drops roughly as 1/N)
    for algo in raw["algorithms"]:
        algo["mu"] = algo["mu"] * 0.4
    return raw


PRESETS = {"desk": _desk_raw, "paper": _paper_raw}


def preset_config(name: str) -> ExperimentConfig:
    """Built-in campaign presets: 'desk' (small, fast) and 'paper' (full scale)."""
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}, expected one of {sorted(PRESETS)}")
    return parse_config(PRESETS[name]())
