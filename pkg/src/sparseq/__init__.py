"""Blind adaptive equalization with sparsity-aware constant-modulus updates."""

__version__ = "0.1.0"

from .channel import (
    DESK_PROFILE,
    PAPER_PROFILE,
    PROFILES,
    ChannelProfile,
    SparseChannel,
    TapSpec,
    eigenvalue_spread,
    generate_channel,
    generate_sparse_channel,
    load_channel,
    save_channel,
)
from .config import (
    AlgorithmSpec,
    ConfigError,
    ExperimentConfig,
    load_config,
    parse_config,
    preset_config,
)
from .equalizers import (
    DivergenceError,
    EqualizerState,
    StepDiagnostics,
    cm_gradient,
    hermitian_projection_coefficient,
    init_equalizer,
    lp_subgradient,
    step_ang_cma,
    step_cma,
    step_rscma,
    step_scma_p,
)
from .modulation import (
    Constellation,
    ObservationStream,
    apsk8_constellation,
    dispersion_constant,
    transmit,
)
from .prox import (
    ProxConfig,
    cardan_discriminant,
    holmes_root,
    prox_half,
    prox_two_thirds,
    regularize_complex_vector,
    solve_depressed_cubic_trig,
    tau_threshold,
)
from .simulate import (
    CampaignResult,
    TrialResult,
    residual_isi,
    run_campaign,
    run_trial,
    write_summary_json,
    write_traces_csv,
)

__all__ = [
    "__version__",
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
    "Constellation",
    "ObservationStream",
    "apsk8_constellation",
    "dispersion_constant",
    "transmit",
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
    "ProxConfig",
    "tau_threshold",
    "cardan_discriminant",
    "solve_depressed_cubic_trig",
    "prox_half",
    "holmes_root",
    "prox_two_thirds",
    "regularize_complex_vector",
    "ConfigError",
    "AlgorithmSpec",
    "ExperimentConfig",
    "load_config",
    "parse_config",
    "preset_config",
    "TrialResult",
    "CampaignResult",
    "residual_isi",
    "run_trial",
    "run_campaign",
    "write_traces_csv",
    "write_summary_json",
]
