"""Random sparse multipath channels and their conditioning statistics.

A channel is a long FIR impulse response in which only a handful of taps
are active.  Each active tap is drawn inside a designated index window
with a window-specific amplitude law, and the full response is scaled to
unit Euclidean norm so that received signal power equals symbol power.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TapSpec",
    "ChannelProfile",
    "SparseChannel",
    "PAPER_PROFILE",
    "DESK_PROFILE",
    "PROFILES",
    "generate_channel",
    "generate_sparse_channel",
    "eigenvalue_spread",
    "save_channel",
    "load_channel",
]


@dataclass(frozen=True)
class TapSpec:
    """One active tap: an index window plus its amplitude law.

    ``window`` is a 1-based inclusive (lo, hi) range on the profile's base
    grid.  A non-dominant tap draws real and imaginary parts uniformly on
    [-re_scale, re_scale] and [-im_scale, im_scale].  A dominant tap has
    real part fixed to 1 and draws only the imaginary part.
    """

    window: tuple[int, int]
    re_scale: float
    im_scale: float
    dominant: bool = False


@dataclass(frozen=True)
class ChannelProfile:
    """Named layout of tap windows on a base grid of ``base_length`` indices."""

    name: str
    base_length: int
    taps: tuple[TapSpec, ...]


PAPER_PROFILE = ChannelProfile(
    name="paper",
    base_length=100,
    taps=(
        TapSpec((1, 10), 0.1, 0.1),
        TapSpec((20, 30), 1.0, 1.0, dominant=True),
        TapSpec((40, 50), 0.5, 0.2),
        TapSpec((70, 80), 0.2, 0.2),
        TapSpec((90, 100), 0.1, 0.1),
    ),
)

DESK_PROFILE = ChannelProfile(
    name="desk",
    base_length=32,
    taps=(
        TapSpec((1, 6), 0.45, 0.45),
        TapSpec((10, 16), 1.0, 1.0, dominant=True),
        TapSpec((22, 28), 0.45, 0.45),
    ),
)

PROFILES = {p.name: p for p in (PAPER_PROFILE, DESK_PROFILE)}


@dataclass
class SparseChannel:
    """Unit-norm impulse response plus the indices of its active taps."""

    taps: np.ndarray
    support: list[int]

    @property
    def length(self) -> int:
        return len(self.taps)


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def _scaled_windows(profile: ChannelProfile, length: int) -> list[tuple[int, int]]:
    """Rescale the profile's 1-based windows onto a grid of ``length`` indices."""
    if length < 10:
        raise ValueError(
            f"invalid profile: channel length {length} is below the minimum of 10"
        )
    ratio = length / profile.base_length
    windows = []
    for spec in profile.taps:
        lo = max(1, _round_half_up(spec.window[0] * ratio))
        hi = min(length, _round_half_up(spec.window[1] * ratio))
        if lo > hi:
            raise ValueError(
                f"invalid profile: window {spec.window} collapses at length {length}"
            )
        windows.append((lo, hi))
    for (lo_a, hi_a), (lo_b, hi_b) in zip(windows, windows[1:]):
        if hi_a >= lo_b:
            raise ValueError(
                f"invalid profile: windows overlap at length {length}"
            )
    return windows


def generate_channel(
    profile: ChannelProfile, seed: int, length: int | None = None
) -> SparseChannel:
    """Draw one random sparse channel from ``profile``.

    Tap positions are drawn first (one uniform integer per window, in
    window order), then amplitudes in the same order: a non-dominant tap
    draws its real part then its imaginary part, a dominant tap draws only
    the imaginary part.  The response is then scaled to unit norm.
    """
    if length is None:
        length = profile.base_length
    windows = _scaled_windows(profile, length)
    rng = np.random.default_rng(seed)
    # 1-based inclusive windows; integers() upper bound is exclusive
    positions = [int(rng.integers(lo, hi + 1)) - 1 for lo, hi in windows]
    h = np.zeros(length, dtype=np.complex128)
    for pos, spec in zip(positions, profile.taps):
        if spec.dominant:
            re = 1.0
        else:
            re = spec.re_scale * (2.0 * rng.random() - 1.0)
        im = spec.im_scale * (2.0 * rng.random() - 1.0)
        h[pos] = re + 1j * im
    h /= np.linalg.norm(h)
    support = [int(i) for i in np.flatnonzero(np.abs(h) > 0.0)]
    return SparseChannel(taps=h, support=support)


def generate_sparse_channel(seed: int, length: int = 100) -> SparseChannel:
    """Draw a five-tap random sparse channel (the default profile)."""
    return generate_channel(PAPER_PROFILE, seed, length)


def eigenvalue_spread(ch: SparseChannel, n: int) -> float:
    """Condition number (max/min eigenvalue) of the n-tap input correlation.

    The correlation matrix is Hermitian Toeplitz, built from the channel's
    deterministic autocorrelation r(m) = sum_j h[j] * conj(h[j + m]) under
    unit-power white symbols and no noise.  A numerically singular matrix
    reports +inf rather than raising.
    """
    if n < 1:
        raise ValueError(f"matrix order must be positive, got {n}")
    h = ch.taps
    L = len(h)
    r = np.zeros(n, dtype=np.complex128)
    m_max = min(n, L)
    # r(m) = sum_j h[j] conj(h[j+m]) is the conjugate of the lag-m autocorrelation
    full = np.correlate(h, h, mode="full")
    r[:m_max] = np.conj(full[L - 1 : L - 1 + m_max])
    idx = np.arange(n)
    delta = idx[:, None] - idx[None, :]
    R = np.where(delta >= 0, r[np.abs(delta)], np.conj(r[np.abs(delta)]))
    eigs = np.linalg.eigvalsh(R)
    lam_min, lam_max = eigs[0], eigs[-1]
    if lam_min <= 0.0:
        return math.inf
    return float(lam_max / lam_min)


def save_channel(ch: SparseChannel, path: str) -> None:
    """Write a channel to JSON with bit-exact float round-trip.

    Layout: {"taps": [{"re": ..., "im": ...}, ...], "support": [...]}.
    Values are serialized through Python's shortest round-trip repr, so
    load_channel recovers the identical 64-bit doubles.
    """
    payload = {
        "taps": [{"re": float(t.real), "im": float(t.imag)} for t in ch.taps],
        "support": list(ch.support),
    }
    with open(path, "w", encoding="ascii") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def load_channel(path: str) -> SparseChannel:
    with open(path, "r", encoding="ascii") as fh:
        payload = json.load(fh)
    try:
        taps = np.array(
            [complex(t["re"], t["im"]) for t in payload["taps"]],
            dtype=np.complex128,
        )
        support = [int(i) for i in payload["support"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed channel file {path}: {exc}") from exc
    return SparseChannel(taps=taps, support=support)
