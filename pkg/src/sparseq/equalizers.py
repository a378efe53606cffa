"""Stochastic-gradient constant-modulus equalizer updates.

All algorithms share the constant-modulus error surface: with output
y = w^H x and target radius R, the gradient with respect to conj(w) is

    g = (|y|^2 - R) * x * conj(y).

The sparsity-aware variant steers this gradient along the tangent plane
of the lp ball (0 < p < 1): it subtracts the component of g that is
normal to the ball, using the subgradient direction

    b[i] = (p/2) * w[i] / |w[i]|^(2-p)

and the projection coefficient lam = |b^H g| / ||b||^2, then updates
w <- w - mu * (g - lam * b).  Classic CMA is the lam = 0 special case.
Two reweighted baselines are included: a proportionate-gain update and a
fixed-weight lp-penalty update.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "EqualizerState",
    "StepDiagnostics",
    "DivergenceError",
    "cm_gradient",
    "lp_subgradient",
    "hermitian_projection_coefficient",
    "init_equalizer",
    "step_rscma",
    "step_cma",
    "step_ang_cma",
    "step_scma_p",
]


class DivergenceError(RuntimeError):
    """A step produced non-finite taps; the state was left unmodified."""

    def __init__(self, iteration: int, message: str):
        super().__init__(f"iteration {iteration}: {message}")
        self.iteration = iteration


@dataclass
class EqualizerState:
    """Equalizer taps plus the hyperparameters that govern each step."""

    w: np.ndarray
    mu: float
    p: float = 0.5
    eps_guard: float = 1e-8
    iteration: int = 0

    def __post_init__(self):
        self.w = np.asarray(self.w, dtype=np.complex128)
        if self.mu < 0.0:
            raise ValueError(f"step size must be nonnegative, got {self.mu}")
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"norm exponent must lie in (0, 1), got {self.p}")
        if self.eps_guard < 0.0:
            raise ValueError(f"eps_guard must be nonnegative, got {self.eps_guard}")


@dataclass
class StepDiagnostics:
    """Per-step scalars: output sample, projection weight, direction norms."""

    y: complex
    lam: float
    g_norm: float
    b_norm: float


def init_equalizer(n: int = 120) -> np.ndarray:
    """Center-spike initialization: tap n//2 set to 1+1j, the rest (1+1j)/n."""
    if n < 1:
        raise ValueError(f"equalizer length must be positive, got {n}")
    w = np.full(n, (1.0 + 1.0j) / n, dtype=np.complex128)
    w[n // 2] = 1.0 + 1.0j
    return w


def cm_gradient(w: np.ndarray, x: np.ndarray, R: float) -> np.ndarray:
    """Constant-modulus gradient (|y|^2 - R) x conj(y) with y = w^H x."""
    if len(w) != len(x):
        raise ValueError(
            f"dimension mismatch: taps {len(w)} vs regressor {len(x)}"
        )
    y = np.vdot(w, x)
    return (np.abs(y) ** 2 - R) * x * np.conj(y)


def lp_subgradient(w: np.ndarray, p: float, eps_guard: float = 1e-8) -> np.ndarray:
    """Subgradient of ||w||_p^p with respect to conj(w), for 0 < p < 1.

    Each component is (p/2) w[i] / |w[i]|^(2-p).  Magnitudes below
    eps_guard are clamped in the denominator, and exactly-zero taps map
    to exactly zero so pruned taps contribute no direction.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"norm exponent must lie in (0, 1), got {p}")
    mod = np.abs(w)
    denom = np.maximum(mod, eps_guard) ** (2.0 - p)
    with np.errstate(invalid="ignore", divide="ignore"):
        b = (p / 2.0) * w / denom
    b[mod == 0.0] = 0.0
    return b


def hermitian_projection_coefficient(g: np.ndarray, b: np.ndarray) -> float:
    """Magnitude-optimal projection weight lam = |b^H g| / ||b||^2.

    Insensitive to a common phase rotation of g, and zero whenever b
    vanishes (no constraint direction to project on).
    """
    nb2 = np.vdot(b, b).real
    if nb2 == 0.0:
        return 0.0
    return float(np.abs(np.vdot(b, g)) / nb2)


def _commit(state: EqualizerState, w_new: np.ndarray, algo: str) -> None:
    if not np.all(np.isfinite(w_new.view(np.float64))):
        raise DivergenceError(
            state.iteration, f"{algo} update produced non-finite taps"
        )
    state.w = w_new
    state.iteration += 1


def step_rscma(
    state: EqualizerState, x: np.ndarray, R: float
) -> tuple[EqualizerState, StepDiagnostics]:
    """Tangent-projected sparse update w <- w - mu (g - lam b)."""
    w = state.w
    y = np.vdot(w, x)
    g = cm_gradient(w, x, R)
    b = lp_subgradient(w, state.p, state.eps_guard)
    lam = hermitian_projection_coefficient(g, b)
    w_new = w - state.mu * (g - lam * b)
    diag = StepDiagnostics(
        y=complex(y),
        lam=lam,
        g_norm=float(np.linalg.norm(g)),
        b_norm=float(np.linalg.norm(b)),
    )
    _commit(state, w_new, "rscma")
    return state, diag


def step_cma(
    state: EqualizerState, x: np.ndarray, R: float
) -> tuple[EqualizerState, StepDiagnostics]:
    """Plain constant-modulus update w <- w - mu g."""
    w = state.w
    y = np.vdot(w, x)
    g = cm_gradient(w, x, R)
    w_new = w - state.mu * g
    diag = StepDiagnostics(
        y=complex(y), lam=0.0, g_norm=float(np.linalg.norm(g)), b_norm=0.0
    )
    _commit(state, w_new, "cma")
    return state, diag


def step_ang_cma(
    state: EqualizerState, x: np.ndarray, R: float, eps_prop: float = 1e-3
) -> tuple[EqualizerState, StepDiagnostics]:
    """Proportionate-gain update w[i] <- w[i] - mu (|w[i]| + eps_prop) g[i].

    Large taps adapt fast, small taps barely move; eps_prop keeps
    exactly-zero taps adaptable.  With eps_prop = 0 a zero tap is frozen.
    """
    w = state.w
    y = np.vdot(w, x)
    g = cm_gradient(w, x, R)
    w_new = w - state.mu * (np.abs(w) + eps_prop) * g
    diag = StepDiagnostics(
        y=complex(y), lam=0.0, g_norm=float(np.linalg.norm(g)), b_norm=0.0
    )
    _commit(state, w_new, "ang_cma")
    return state, diag


def step_scma_p(
    state: EqualizerState, x: np.ndarray, R: float, rho: float = 0.0
) -> tuple[EqualizerState, StepDiagnostics]:
    """Fixed-weight lp-penalty update w <- w - mu g - rho b.

    rho = 0 reduces exactly to the plain constant-modulus step.
    """
    w = state.w
    y = np.vdot(w, x)
    g = cm_gradient(w, x, R)
    b = lp_subgradient(w, state.p, state.eps_guard)
    w_new = w - state.mu * g - rho * b
    diag = StepDiagnostics(
        y=complex(y),
        lam=0.0,
        g_norm=float(np.linalg.norm(g)),
        b_norm=float(np.linalg.norm(b)),
    )
    _commit(state, w_new, "scma_p")
    return state, diag
