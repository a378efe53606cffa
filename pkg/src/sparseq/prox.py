"""Closed-form proximal operators for fractional lp penalties.

For a real scalar w and penalty weight lam > 0 the proximal problem is

    h* = argmin_h (h - w)^2 + lam * |h|^p,    p in {1/2, 2/3}.

Both exponents admit exact solutions by radical/trigonometric root
formulas, with a hard threshold tau(p, lam) below which the global
minimum is h* = 0:

    tau(p, lam) = ((2 - p) / 2) * (1 - p)^((p - 1) / (2 - p)) * lam^(1 / (2 - p))

* p = 1/2: substituting h = z^2 reduces the stationarity condition to a
  depressed cubic y^3 - 3y - 2q = 0 whose three-real-root branch is
  solved by the cosine triple-angle identity.  The shrunk magnitude is

      h = (2/3) |w| (1 + cos(2pi/3 - (2/3) phi(w))),
      phi(w) = arccos((lam / 8) (|w| / 3)^(-3/2)).

* p = 2/3: the quartic's resolvent cubic t^3 - (lam/3) t - w^2/8 = 0 has
  its real root on the hyperbolic-cosine branch,

      t = (2/3) sqrt(lam) cosh((1/3) arccosh((27/16) w^2 lam^(-3/2))),

  and the shrunk value is h = sign(w) (sqrt(t/2) + sqrt(|w|/sqrt(8t) - t/2))^3.

Exactly at |w| = tau the zero and nonzero candidates tie; the operators
return 0 there, preferring the sparser answer.  Complex vectors are
regularized elementwise on real and imaginary parts with independent
weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ProxConfig",
    "tau_threshold",
    "cardan_discriminant",
    "solve_depressed_cubic_trig",
    "prox_half",
    "holmes_root",
    "prox_two_thirds",
    "regularize_complex_vector",
]

_RESIDUAL_TOL = 1e-9
_MAX_POLISH = 3


@dataclass(frozen=True)
class ProxConfig:
    """Mode and per-part weights for complex-vector regularization.

    ``lambda_r`` applies to real parts, ``lambda_i`` to imaginary parts.
    A weight of zero turns that part's shrinkage into the identity.
    """

    mode: str = "half"
    lambda_r: float = 1e-4
    lambda_i: float = 1e-4

    def __post_init__(self):
        if self.mode not in ("half", "two_thirds"):
            raise ValueError(
                f"mode must be 'half' or 'two_thirds', got {self.mode!r}"
            )
        if self.lambda_r < 0.0 or self.lambda_i < 0.0:
            raise ValueError(
                f"penalty weights must be nonnegative, got "
                f"({self.lambda_r}, {self.lambda_i})"
            )


def tau_threshold(p: float, lam: float) -> float:
    """Dead-zone radius: inputs with |w| <= tau shrink exactly to zero."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"norm exponent must lie in (0, 1), got {p}")
    if lam < 0.0:
        raise ValueError(f"penalty weight must be nonnegative, got {lam}")
    return (2.0 - p) / 2.0 * (1.0 - p) ** ((p - 1.0) / (2.0 - p)) * lam ** (
        1.0 / (2.0 - p)
    )


def cardan_discriminant(c: float, d: float) -> float:
    """Discriminant -4c^3 - 27d^2 of z^3 + cz + d.

    Positive means three distinct real roots, negative means one real
    root, zero means a repeated root.
    """
    return -4.0 * c**3 - 27.0 * d**2


def solve_depressed_cubic_trig(q: float) -> float:
    """Largest real root of y^3 - 3y - 2q = 0 for |q| <= 1.

    On this range all three roots are real and the largest is
    y = 2 cos(pi/3 - C/3) with C = arccos(-q).
    """
    if abs(q) > 1.0:
        raise ValueError(f"trigonometric branch needs |q| <= 1, got {q}")
    C = math.acos(-q)
    y = 2.0 * math.cos(math.pi / 3.0 - C / 3.0)
    for _ in range(_MAX_POLISH):
        f = y**3 - 3.0 * y - 2.0 * q
        if abs(f) <= _RESIDUAL_TOL:
            break
        fp = 3.0 * y**2 - 3.0
        if fp == 0.0:
            break
        y -= f / fp
    return y


def _prox_half_positive(w_abs: np.ndarray, lam: float) -> np.ndarray:
    """Nonzero-branch magnitudes for the p = 1/2 prox (w_abs > tau)."""
    phi = np.arccos(np.clip(lam / 8.0 * (w_abs / 3.0) ** -1.5, -1.0, 1.0))
    h = 2.0 / 3.0 * w_abs * (1.0 + np.cos(2.0 * np.pi / 3.0 - 2.0 / 3.0 * phi))
    # polish stationarity 0 = h - w + (lam/4) h^(-1/2) where it matters
    for _ in range(_MAX_POLISH):
        f = h - w_abs + lam / 4.0 / np.sqrt(h)
        mask = np.abs(f) > _RESIDUAL_TOL
        if not mask.any():
            break
        fp = 1.0 - lam / 8.0 * h**-1.5
        h = np.where(mask & (fp > 0.0), h - f / np.where(fp > 0.0, fp, 1.0), h)
    return h


def prox_half(w: float, lam: float) -> float:
    """Scalar prox of lam * |h|^(1/2): exact trig solution with dead zone."""
    if lam < 0.0:
        raise ValueError(f"penalty weight must be nonnegative, got {lam}")
    if lam == 0.0:
        return float(w)
    if abs(w) <= tau_threshold(0.5, lam):
        return 0.0
    h = _prox_half_positive(np.array([abs(w)]), lam)[0]
    return float(math.copysign(h, w))


def holmes_root(lam: float, w_abs: float) -> float:
    """Real root of t^3 - (lam/3) t - w_abs^2 / 8 = 0 by the cosh branch.

    Valid for lam > 0 and w_abs above the two-thirds dead zone
    (2/3) (3 lam^3)^(1/4), where the cubic's discriminant is negative and
    arccosh receives an argument >= 1.
    """
    if lam <= 0.0:
        raise ValueError(f"penalty weight must be positive, got {lam}")
    if w_abs <= 2.0 / 3.0 * (3.0 * lam**3) ** 0.25:
        raise ValueError(
            f"input magnitude {w_abs} is inside the dead zone for lam={lam}"
        )
    t = float(_holmes_root_arr(np.array([w_abs]), lam)[0])
    return t


def _holmes_root_arr(w_abs: np.ndarray, lam: float) -> np.ndarray:
    arg = 27.0 / 16.0 * w_abs**2 * lam**-1.5
    t = 2.0 / 3.0 * math.sqrt(lam) * np.cosh(np.arccosh(arg) / 3.0)
    for _ in range(_MAX_POLISH):
        f = t**3 - lam / 3.0 * t - w_abs**2 / 8.0
        mask = np.abs(f) > _RESIDUAL_TOL
        if not mask.any():
            break
        fp = 3.0 * t**2 - lam / 3.0
        t = np.where(mask & (fp != 0.0), t - f / np.where(fp != 0.0, fp, 1.0), t)
    return t


def _prox_two_thirds_positive(w_abs: np.ndarray, lam: float) -> np.ndarray:
    """Nonzero-branch magnitudes for the p = 2/3 prox (w_abs > tau)."""
    t = _holmes_root_arr(w_abs, lam)
    inner = w_abs / np.sqrt(8.0 * t) - t / 2.0
    z = np.sqrt(t / 2.0) + np.sqrt(np.maximum(inner, 0.0))
    h = z**3
    for _ in range(_MAX_POLISH):
        f = h - w_abs + lam / 3.0 * h ** (-1.0 / 3.0)
        mask = np.abs(f) > _RESIDUAL_TOL
        if not mask.any():
            break
        fp = 1.0 - lam / 9.0 * h ** (-4.0 / 3.0)
        h = np.where(mask & (fp > 0.0), h - f / np.where(fp > 0.0, fp, 1.0), h)
    return h


def prox_two_thirds(w: float, lam: float) -> float:
    """Scalar prox of lam * |h|^(2/3): quartic-resolvent solution."""
    if lam < 0.0:
        raise ValueError(f"penalty weight must be nonnegative, got {lam}")
    if lam == 0.0:
        return float(w)
    if abs(w) <= tau_threshold(2.0 / 3.0, lam):
        return 0.0
    h = _prox_two_thirds_positive(np.array([abs(w)]), lam)[0]
    return float(math.copysign(h, w))


def _prox_real_array(v: np.ndarray, lam: float, mode: str) -> np.ndarray:
    """Vectorized prox of a real array, shared by both exponents."""
    if lam == 0.0:
        return v.copy()
    p = 0.5 if mode == "half" else 2.0 / 3.0
    tau = tau_threshold(p, lam)
    out = np.zeros_like(v)
    mask = np.abs(v) > tau
    if mask.any():
        mags = np.abs(v[mask])
        if mode == "half":
            h = _prox_half_positive(mags, lam)
        else:
            h = _prox_two_thirds_positive(mags, lam)
        out[mask] = np.copysign(h, v[mask])
    return out


def regularize_complex_vector(w: np.ndarray, cfg: ProxConfig) -> np.ndarray:
    """Shrink real and imaginary parts independently, elementwise.

    Equivalent to applying the scalar operator of ``cfg.mode`` with
    lambda_r to each real part and lambda_i to each imaginary part.
    """
    w = np.asarray(w, dtype=np.complex128)
    re = _prox_real_array(w.real, cfg.lambda_r, cfg.mode)
    im = _prox_real_array(w.imag, cfg.lambda_i, cfg.mode)
    return re + 1j * im
