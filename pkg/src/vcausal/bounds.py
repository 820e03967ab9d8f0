"""Closed-form lower bound on the speed of superluminal signalling.

If quantum correlations between two measurement stations were carried by
signals of reduced speed beta_t > 1 in some preferred frame, a Bell test on a
rotating baseline constrains beta_t from below:

    bound = sqrt(1 + (1 - beta^2) (1 - rho^2) / D^2),
    D     = rho + omega * beta * sin(chi) * delta_t / 2,

where rho = delta_d / d is the optical path-mismatch ratio, delta_t the time
needed to measure one Bell parameter, omega the Earth rotation rate, and
(beta, chi) the reduced speed and orientation angle of the candidate frame.
The Earth-rotation term in D accounts for the drift of the baseline away from
frame-perpendicularity over the course of one measurement: long delta_t
degrades the bound for moving frames, short delta_t leaves it flat at
roughly sqrt(1 - beta^2) / rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import CMB_BETA, CMB_CHI_DEG, EARTH_OMEGA
from .errors import DomainError


@dataclass(frozen=True)
class PreferredFrame:
    """Candidate preferred frame: reduced speed beta and orientation chi.

    chi is stored in radians and is the single angle whose sine multiplies
    the Earth-rotation term of the bound. Interfaces accept degrees; use
    :meth:`from_degrees` there.
    """

    beta: float
    chi: float

    def __post_init__(self):
        if not (0.0 <= self.beta < 1.0):
            raise DomainError(f"frame beta must lie in [0, 1), got {self.beta}")
        if not (0.0 <= self.chi <= math.pi):
            raise DomainError(f"frame chi must lie in [0, pi] rad, got {self.chi}")

    @classmethod
    def from_degrees(cls, beta: float, chi_deg: float) -> "PreferredFrame":
        return cls(beta=beta, chi=math.radians(chi_deg))

    @property
    def sin_chi(self) -> float:
        return math.sin(self.chi)


def cmb_frame() -> PreferredFrame:
    """The cosmic microwave background dipole frame as seen from Earth."""
    return PreferredFrame.from_degrees(CMB_BETA, CMB_CHI_DEG)


@dataclass(frozen=True)
class BoundInputs:
    """Experiment-side inputs of the bound: mismatch ratio, measurement time."""

    rho: float
    delta_t: float
    omega: float = EARTH_OMEGA

    def __post_init__(self):
        if not (0.0 < self.rho < 1.0):
            raise DomainError(f"rho must lie in (0, 1), got {self.rho}")
        if not (self.delta_t >= 0.0):
            raise DomainError(f"delta_t must be >= 0 s, got {self.delta_t}")
        if not (self.omega > 0.0):
            raise DomainError(f"omega must be > 0 rad/s, got {self.omega}")


@dataclass(frozen=True)
class ChiPolicy:
    """How chi is chosen when sweeping beta: fixed angle or worst case.

    Worst case sets sin(chi) = 1, the most conservative orientation.
    """

    mode: str
    chi: float | None = None

    def __post_init__(self):
        if self.mode not in ("fixed", "worst_case"):
            raise DomainError(f"unknown chi policy mode {self.mode!r}")
        if self.mode == "fixed":
            if self.chi is None:
                raise DomainError("fixed chi policy requires an angle")
            if not (0.0 <= self.chi <= math.pi):
                raise DomainError(f"chi must lie in [0, pi] rad, got {self.chi}")

    @classmethod
    def fixed(cls, chi: float) -> "ChiPolicy":
        return cls(mode="fixed", chi=chi)

    @classmethod
    def fixed_degrees(cls, chi_deg: float) -> "ChiPolicy":
        return cls(mode="fixed", chi=math.radians(chi_deg))

    @classmethod
    def worst_case(cls) -> "ChiPolicy":
        return cls(mode="worst_case")

    def frame_for(self, beta: float) -> PreferredFrame:
        chi = math.pi / 2.0 if self.mode == "worst_case" else self.chi
        return PreferredFrame(beta=beta, chi=chi)


@dataclass(frozen=True)
class BoundCurve:
    """Sampled bound versus frame speed beta, with evaluation provenance."""

    beta_grid: np.ndarray
    values: np.ndarray
    inputs: BoundInputs
    chi_policy: ChiPolicy

    def __post_init__(self):
        grid = np.asarray(self.beta_grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or grid.size == 0:
            raise DomainError("beta grid must be a non-empty 1-d array")
        if values.shape != grid.shape:
            raise DomainError("beta grid and values must have equal length")
        if not (np.all(grid >= 0.0) and np.all(grid < 1.0)):
            raise DomainError("beta grid entries must lie in [0, 1)")
        if not np.all(np.diff(grid) > 0.0):
            raise DomainError("beta grid must be strictly increasing")
        finite = values[np.isfinite(values)]
        if finite.size and np.any(finite < 1.0):
            raise DomainError("bound values below 1 are impossible")
        object.__setattr__(self, "beta_grid", grid)
        object.__setattr__(self, "values", values)


def eval_bound(inputs: BoundInputs, frame: PreferredFrame) -> float:
    """Evaluate the bound for one (inputs, frame) combination.

    Returns +inf instead of overflowing when rho is small enough that the
    denominator underflows. The result is always >= 1.
    """
    denom = inputs.rho + inputs.omega * frame.beta * frame.sin_chi * inputs.delta_t / 2.0
    if denom <= 0.0:
        raise DomainError(f"bound denominator must be positive, got {denom}")
    denom_sq = denom * denom
    if denom_sq == 0.0:
        return math.inf
    try:
        ratio = (1.0 - frame.beta**2) * (1.0 - inputs.rho**2) / denom_sq
    except OverflowError:
        return math.inf
    return math.sqrt(1.0 + ratio)


def eval_bound_fast_limit(rho: float, beta: float) -> float:
    """Short-measurement limit of the bound: sqrt(1 - beta^2) / rho.

    Valid when delta_t is far below the regime threshold 2 rho / omega.
    """
    if not (0.0 < rho < 1.0):
        raise DomainError(f"rho must lie in (0, 1), got {rho}")
    if not (0.0 <= beta < 1.0):
        raise DomainError(f"beta must lie in [0, 1), got {beta}")
    return math.sqrt(1.0 - beta * beta) / rho


def regime_threshold_dt(rho: float, omega: float = EARTH_OMEGA) -> float:
    """Measurement time 2 rho / omega separating flat from degraded bounds.

    Schedules with delta_t far below this keep the bound near its
    short-measurement limit for every frame speed.
    """
    if not (rho > 0.0):
        raise DomainError(f"rho must be > 0, got {rho}")
    if not (omega > 0.0):
        raise DomainError(f"omega must be > 0, got {omega}")
    return 2.0 * rho / omega


def default_beta_grid(n: int = 200, lo: float = 1e-6, hi: float = 0.999) -> np.ndarray:
    """Log-spaced beta grid covering non-relativistic through relativistic frames."""
    if not (0.0 < lo < hi < 1.0):
        raise DomainError(f"grid limits must satisfy 0 < lo < hi < 1, got [{lo}, {hi}]")
    if n < 2:
        raise DomainError(f"grid needs at least 2 points, got {n}")
    return np.geomspace(lo, hi, n)


def sample_curve(
    inputs: BoundInputs,
    chi_policy: ChiPolicy,
    beta_grid: np.ndarray | None = None,
) -> BoundCurve:
    """Evaluate the bound over a beta grid under the given chi policy.

    A failing sample becomes NaN; one bad point never aborts the curve.
    """
    grid = default_beta_grid() if beta_grid is None else np.asarray(beta_grid, dtype=float)
    values = np.empty_like(grid)
    for i, beta in enumerate(grid):
        try:
            values[i] = eval_bound(inputs, chi_policy.frame_for(float(beta)))
        except DomainError:
            values[i] = math.nan
    return BoundCurve(beta_grid=grid, values=values, inputs=inputs, chi_policy=chi_policy)
