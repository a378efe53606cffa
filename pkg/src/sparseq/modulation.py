"""Constellations and the baseband observation model.

The observation stream is x[k] = sum_j h[j] * s[k - j] + v[k]: i.i.d.
uniformly drawn symbols pushed through a sparse FIR channel with circular
complex Gaussian noise added at a requested SNR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import SparseChannel

__all__ = [
    "Constellation",
    "ObservationStream",
    "apsk8_constellation",
    "dispersion_constant",
    "transmit",
]


@dataclass(frozen=True)
class Constellation:
    name: str
    symbols: np.ndarray

    def mean_power(self) -> float:
        return float(np.mean(np.abs(self.symbols) ** 2))


@dataclass
class ObservationStream:
    """Channel output x, the symbols s that produced it, and the shared SNR."""

    x: np.ndarray
    s: np.ndarray
    snr_db: float


def apsk8_constellation(ring_ratio: float = 2.0) -> Constellation:
    """Two-ring 8-APSK, normalized to unit mean symbol power.

    Four inner points sit at odd multiples of 45 degrees and four outer
    points at multiples of 90 degrees, with outer/inner radius ratio
    ``ring_ratio``.  With the default ratio 2 the squared radii are 0.4
    and 1.6.  The two rings are offset so the set is closed under
    rotation by 90 degrees.
    """
    if ring_ratio <= 1.0:
        raise ValueError(
            f"invalid geometry: ring_ratio must exceed 1, got {ring_ratio}"
        )
    # mean power (r1^2 + r2^2)/2 = 1 with r2 = ratio * r1
    r1 = math.sqrt(2.0 / (1.0 + ring_ratio**2))
    r2 = ring_ratio * r1
    inner = r1 * np.exp(1j * (np.pi / 4 + np.pi / 2 * np.arange(4)))
    outer = r2 * np.exp(1j * (np.pi / 2 * np.arange(4)))
    return Constellation(name="apsk8", symbols=np.concatenate([inner, outer]))


def dispersion_constant(c: Constellation) -> float:
    """Constant-modulus target radius R = E|s|^4 / E|s|^2."""
    p2 = np.mean(np.abs(c.symbols) ** 2)
    p4 = np.mean(np.abs(c.symbols) ** 4)
    return float(p4 / p2)


def transmit(
    ch: SparseChannel,
    c: Constellation,
    n_symbols: int,
    snr_db: float,
    seed: int,
) -> ObservationStream:
    """Generate ``n_symbols`` observations of the channel output.

    Symbols are drawn i.i.d. uniform over the constellation; the stream
    is causal with zero prehistory, so x has the same length as s.  Noise
    variance is mean_symbol_power / 10^(snr_db/10), split evenly between
    real and imaginary parts.  ``snr_db = inf`` disables noise entirely.
    """
    if n_symbols < 1:
        raise ValueError(f"n_symbols must be positive, got {n_symbols}")
    rng = np.random.default_rng(seed)
    s = c.symbols[rng.integers(0, len(c.symbols), n_symbols)]
    x = np.convolve(ch.taps, s)[:n_symbols]
    if not math.isinf(snr_db):
        sigma2 = c.mean_power() / 10.0 ** (snr_db / 10.0)
        scale = math.sqrt(sigma2 / 2.0)
        noise = scale * (
            rng.standard_normal(n_symbols) + 1j * rng.standard_normal(n_symbols)
        )
        x = x + noise
    return ObservationStream(x=x, s=s, snr_db=snr_db)
