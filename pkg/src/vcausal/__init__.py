"""Lower bounds on superluminal quantum-communication speeds.

Toolkit for v-causal analyses of Bell tests on a rotating baseline:
closed-form speed bounds and their regimes, baseline/preferred-frame
geometry, the optical error budget behind the path-mismatch ratio,
measurement timetables, an event-level Monte Carlo cross-check, and
named campaign presets.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundCurve,
    BoundInputs,
    ChiPolicy,
    PreferredFrame,
    cmb_frame,
    default_beta_grid,
    eval_bound,
    eval_bound_fast_limit,
    regime_threshold_dt,
    sample_curve,
)
from .constants import CMB_BETA, CMB_CHI_DEG, EARTH_OMEGA, ROTATION_PERIOD, SPEED_OF_LIGHT
from .errors import ConfigError, DomainError, DropDetectedError, EmptyBinError, UnitError
from .error_budget import (
    OpticalBudget,
    coherence_length,
    combine_quadrature,
    effective_rho,
    rho,
)
from .kinematics import (
    FrameDirection,
    SiteGeometry,
    SpacetimeEvent,
    alpha_for_inaccessible_fraction,
    baseline_direction,
    effective_chi,
    inaccessible_fraction,
    inaccessible_fraction_mc,
    is_accessible,
    lorentz_gamma,
    perpendicularity_crossings,
    perpendicularity_windows,
    required_tachyon_beta,
    simultaneity_mismatch,
)
from .scans import ExperimentPreset, cmb_report, curves_to_csv, figure1, preset, worst_case_frame
from .schedule import (
    MeasurementSchedule,
    build_split_days,
    build_standard,
    effective_dt,
    validate_campaign,
)
from .simulation import (
    BinEstimate,
    CoincidenceTally,
    ExperimentConfig,
    SourceModel,
    TachyonHypothesis,
    bound_from_simulation,
    chsh_E,
    chsh_S,
    detect_drop,
    estimate_bell,
    simulate_campaign,
)

__all__ = [
    "BoundCurve",
    "BoundInputs",
    "ChiPolicy",
    "PreferredFrame",
    "cmb_frame",
    "default_beta_grid",
    "eval_bound",
    "eval_bound_fast_limit",
    "regime_threshold_dt",
    "sample_curve",
    "CMB_BETA",
    "CMB_CHI_DEG",
    "EARTH_OMEGA",
    "ROTATION_PERIOD",
    "SPEED_OF_LIGHT",
    "ConfigError",
    "DomainError",
    "DropDetectedError",
    "EmptyBinError",
    "UnitError",
    "OpticalBudget",
    "coherence_length",
    "combine_quadrature",
    "effective_rho",
    "rho",
    "FrameDirection",
    "SiteGeometry",
    "SpacetimeEvent",
    "alpha_for_inaccessible_fraction",
    "baseline_direction",
    "effective_chi",
    "inaccessible_fraction",
    "inaccessible_fraction_mc",
    "is_accessible",
    "lorentz_gamma",
    "perpendicularity_crossings",
    "perpendicularity_windows",
    "required_tachyon_beta",
    "simultaneity_mismatch",
    "ExperimentPreset",
    "cmb_report",
    "curves_to_csv",
    "figure1",
    "preset",
    "worst_case_frame",
    "MeasurementSchedule",
    "build_split_days",
    "build_standard",
    "effective_dt",
    "validate_campaign",
    "BinEstimate",
    "CoincidenceTally",
    "ExperimentConfig",
    "SourceModel",
    "TachyonHypothesis",
    "bound_from_simulation",
    "chsh_E",
    "chsh_S",
    "detect_drop",
    "estimate_bell",
    "simulate_campaign",
]
