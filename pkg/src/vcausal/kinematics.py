"""Rotating-baseline geometry and preferred-frame event kinematics.

The Alice-Bob baseline is modeled as a rigid chord through the Earth's
center, rotating uniformly about the polar axis: its direction keeps a fixed
polar angle alpha and sweeps azimuth at rate omega. A candidate preferred
frame moves with reduced speed beta along a fixed unit direction u. The
functions here answer the questions the bound rests on: when is the baseline
perpendicular to u (so the two measurement events are nearly simultaneous in
the moving frame), how large a signal speed would connect two given events in
that frame, and what fraction of isotropically distributed directions the
baseline can never become perpendicular to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import PreferredFrame
from .constants import EARTH_OMEGA, SPEED_OF_LIGHT
from .errors import DomainError


@dataclass(frozen=True)
class SiteGeometry:
    """Baseline orientation and length.

    alpha is the angle between the baseline and the rotation axis,
    normalized into (0, pi/2] (a baseline is a line, so alpha and
    pi - alpha describe the same geometry). phase0 is the baseline
    azimuth at t = 0.
    """

    alpha: float
    baseline_length: float
    phase0: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.alpha < math.pi):
            raise DomainError(f"alpha must lie in (0, pi), got {self.alpha}")
        if self.alpha > math.pi / 2.0:
            object.__setattr__(self, "alpha", math.pi - self.alpha)
        if not (self.baseline_length > 0.0):
            raise DomainError(f"baseline length must be > 0 m, got {self.baseline_length}")

    @property
    def d(self) -> float:
        return self.baseline_length


@dataclass(frozen=True)
class FrameDirection:
    """Unit direction of the preferred-frame velocity, in polar coordinates."""

    theta_u: float
    phi_u: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta_u <= math.pi):
            raise DomainError(f"theta_u must lie in [0, pi], got {self.theta_u}")

    def unit_vector(self) -> np.ndarray:
        st = math.sin(self.theta_u)
        return np.array(
            [st * math.cos(self.phi_u), st * math.sin(self.phi_u), math.cos(self.theta_u)]
        )


@dataclass(frozen=True)
class SpacetimeEvent:
    """Lab-frame event: time plus position in non-rotating Earth-centered axes."""

    t: float
    x: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        if x.shape != (3,) or not np.all(np.isfinite(x)) or not math.isfinite(self.t):
            raise DomainError("event needs a finite time and a finite 3-vector position")
        object.__setattr__(self, "x", x)


def lorentz_gamma(beta: float) -> float:
    """Lorentz factor 1 / sqrt(1 - beta^2)."""
    if not (0.0 <= beta < 1.0):
        raise DomainError(f"beta must lie in [0, 1), got {beta}")
    return 1.0 / math.sqrt(1.0 - beta * beta)


def baseline_direction(t: float, geo: SiteGeometry, omega: float = EARTH_OMEGA) -> np.ndarray:
    """Unit vector along the baseline at lab time t (period 2 pi / omega)."""
    az = geo.phase0 + omega * t
    sa = math.sin(geo.alpha)
    return np.array([sa * math.cos(az), sa * math.sin(az), math.cos(geo.alpha)])


def simultaneity_mismatch(
    event_a: SpacetimeEvent,
    event_b: SpacetimeEvent,
    frame: PreferredFrame,
    direction: FrameDirection,
) -> float:
    """Time separation of two events in the preferred frame.

    Standard Lorentz time transform for a boost of speed beta c along u:
    dt' = gamma (dt - beta (u . dx) / c).
    """
    dt = event_b.t - event_a.t
    dx = event_b.x - event_a.x
    gamma = lorentz_gamma(frame.beta)
    proj = float(direction.unit_vector() @ dx)
    return gamma * (dt - frame.beta * proj / SPEED_OF_LIGHT)


def boosted_separation(
    event_a: SpacetimeEvent,
    event_b: SpacetimeEvent,
    frame: PreferredFrame,
    direction: FrameDirection,
) -> np.ndarray:
    """Spatial separation of two events in the preferred frame."""
    dt = event_b.t - event_a.t
    dx = event_b.x - event_a.x
    gamma = lorentz_gamma(frame.beta)
    u = direction.unit_vector()
    proj = float(u @ dx)
    along = (gamma - 1.0) * proj - gamma * frame.beta * SPEED_OF_LIGHT * dt
    return dx + along * u


def required_tachyon_beta(
    event_a: SpacetimeEvent,
    event_b: SpacetimeEvent,
    frame: PreferredFrame,
    direction: FrameDirection,
) -> float:
    """Minimum reduced speed connecting two events in the preferred frame.

    Returns |dx'| / (c |dt'|); +inf when the events are simultaneous in the
    frame but spatially separated. Coincident events have no defined speed.
    """
    dt = event_b.t - event_a.t
    dx = event_b.x - event_a.x
    if dt == 0.0 and not np.any(dx):
        raise DomainError("events coincide in space and time; no speed is defined")
    dtp = simultaneity_mismatch(event_a, event_b, frame, direction)
    dxp = boosted_separation(event_a, event_b, frame, direction)
    dist = float(np.linalg.norm(dxp))
    if dtp == 0.0:
        return math.inf
    return dist / (SPEED_OF_LIGHT * abs(dtp))


def _projection_params(geo: SiteGeometry, direction: FrameDirection) -> tuple[float, float, float]:
    """b(t) . u = A + B cos(omega t + psi) with B >= 0."""
    a = math.cos(geo.alpha) * math.cos(direction.theta_u)
    b = math.sin(geo.alpha) * math.sin(direction.theta_u)
    psi = geo.phase0 - direction.phi_u
    return a, b, psi


# Rounding slack for the accessibility boundary |A| = B: the projection
# amplitudes are products of sines/cosines, so their float noise sits at
# the 1e-16 scale.
_BOUNDARY_EPS = 1e-15


def is_accessible(geo: SiteGeometry, direction: FrameDirection) -> bool:
    """Whether the rotating baseline ever becomes perpendicular to u."""
    a, b, _ = _projection_params(geo, direction)
    return abs(a) <= b + _BOUNDARY_EPS


def effective_chi(geo: SiteGeometry, direction: FrameDirection) -> float:
    """Orientation angle whose sine is the perpendicularity drift rate in units of omega.

    At a perpendicularity crossing, |d(b . u)/dt| = omega sqrt(B^2 - A^2);
    the bound formula sees exactly this factor as sin(chi). For an east-west
    baseline (alpha = pi/2) it reduces to the frame polar angle. The drift
    vanishes continuously as a direction approaches the accessibility
    boundary, so boundary-level rounding noise clamps to zero.
    """
    a, b, _ = _projection_params(geo, direction)
    s_sq = b * b - a * a
    if s_sq < -_BOUNDARY_EPS:
        raise DomainError("direction is inaccessible; the baseline never crosses perpendicularity")
    return math.asin(math.sqrt(min(max(s_sq, 0.0), 1.0)))


def perpendicularity_crossings(
    geo: SiteGeometry,
    direction: FrameDirection,
    horizon: float,
    omega: float = EARTH_OMEGA,
    t_start: float = 0.0,
) -> list[float]:
    """Instants in [t_start, t_start + horizon] where b(t) . u = 0.

    Empty for inaccessible directions and for directions the baseline stays
    perpendicular to continuously (no isolated crossings there).
    """
    if not (horizon > 0.0):
        raise DomainError(f"horizon must be > 0 s, got {horizon}")
    a, b, psi = _projection_params(geo, direction)
    if b == 0.0 or abs(a) > b:
        return []
    base = math.acos(max(-1.0, min(1.0, -a / b)))
    period = 2.0 * math.pi / omega
    phases = (base, -base) if base not in (0.0, math.pi) else (base,)
    times: list[float] = []
    for phase in phases:
        t0 = (phase - psi) / omega
        k0 = math.ceil((t_start - t0) / period)
        t = t0 + k0 * period
        while t <= t_start + horizon:
            if t >= t_start:
                times.append(t)
            t += period
    return sorted(times)


def perpendicularity_windows(
    geo: SiteGeometry,
    direction: FrameDirection,
    tolerance_cos: float,
    horizon: float,
    omega: float = EARTH_OMEGA,
) -> list[tuple[float, float]]:
    """Intervals of [0, horizon] where |b(t) . u| <= tolerance_cos.

    At most two windows per rotation period; the whole horizon when the
    baseline stays within tolerance continuously; empty when the direction
    is inaccessible at this tolerance.
    """
    if not (0.0 < tolerance_cos < 1.0):
        raise DomainError(f"tolerance_cos must lie in (0, 1), got {tolerance_cos}")
    if not (horizon > 0.0):
        raise DomainError(f"horizon must be > 0 s, got {horizon}")
    a, b, psi = _projection_params(geo, direction)

    if b == 0.0:
        return [(0.0, horizon)] if abs(a) <= tolerance_cos else []

    lo = (-tolerance_cos - a) / b
    hi = (tolerance_cos - a) / b
    if lo > 1.0 or hi < -1.0:
        return []
    if lo <= -1.0 and hi >= 1.0:
        return [(0.0, horizon)]

    # Solution arcs for cos(x) in [lo, hi] on one turn of x = omega t + psi.
    if hi >= 1.0:
        half = math.acos(max(-1.0, lo))
        arcs = [(-half, half)]
    elif lo <= -1.0:
        edge = math.acos(min(1.0, hi))
        arcs = [(edge, 2.0 * math.pi - edge)]
    else:
        x1, x2 = math.acos(hi), math.acos(lo)
        arcs = [(x1, x2), (2.0 * math.pi - x2, 2.0 * math.pi - x1)]

    period = 2.0 * math.pi / omega
    windows: list[tuple[float, float]] = []
    for x_lo, x_hi in arcs:
        t_lo = (x_lo - psi) / omega
        t_hi = (x_hi - psi) / omega
        k_min = math.floor((0.0 - t_hi) / period)
        k_max = math.ceil((horizon - t_lo) / period)
        for k in range(k_min, k_max + 1):
            start = max(t_lo + k * period, 0.0)
            end = min(t_hi + k * period, horizon)
            if end > start:
                windows.append((start, end))
    windows.sort()

    merged: list[tuple[float, float]] = []
    for start, end in windows:
        if merged and start <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], end))
        else:
            merged.append((start, end))
    return merged


def inaccessible_fraction(alpha: float) -> float:
    """Fraction of isotropic frame directions the baseline never gets perpendicular to.

    The inaccessible directions form two polar caps of half-angle
    pi/2 - alpha, giving the closed form 1 - sin(alpha).
    """
    if not (0.0 < alpha <= math.pi / 2.0):
        raise DomainError(f"alpha must lie in (0, pi/2], got {alpha}")
    return 1.0 - math.sin(alpha)


def alpha_for_inaccessible_fraction(fraction: float) -> float:
    """Baseline polar angle whose inaccessible fraction equals `fraction`."""
    if not (0.0 <= fraction < 1.0):
        raise DomainError(f"fraction must lie in [0, 1), got {fraction}")
    return math.asin(1.0 - fraction)


def inaccessible_fraction_mc(
    alpha: float, n_samples: int, seed: int
) -> tuple[float, float]:
    """Monte Carlo estimate of the inaccessible fraction, with binomial stderr.

    Draws isotropic directions and applies the geometric accessibility test
    directly, independent of the closed form.
    """
    if not (0.0 < alpha <= math.pi / 2.0):
        raise DomainError(f"alpha must lie in (0, pi/2], got {alpha}")
    if n_samples < 1:
        raise DomainError(f"need at least 1 sample, got {n_samples}")
    rng = np.random.default_rng(seed)
    vec = rng.normal(size=(n_samples, 3))
    norm = np.linalg.norm(vec, axis=1)
    cos_theta = vec[:, 2] / norm
    sin_theta = np.sqrt(np.maximum(0.0, 1.0 - cos_theta**2))
    # Perpendicularity is reachable iff |cos(alpha) cos(theta)| <= sin(alpha) sin(theta).
    blocked = np.abs(math.cos(alpha) * cos_theta) > math.sin(alpha) * sin_theta
    frac = float(np.mean(blocked))
    stderr = math.sqrt(max(frac * (1.0 - frac), 1.0 / n_samples) / n_samples)
    return frac, stderr
