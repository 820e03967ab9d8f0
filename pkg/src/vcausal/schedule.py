"""Measurement timetables and the effective delta_t they feed the bound.

Two campaign styles are supported. The standard cycle acquires all eight
polarizer settings back to back, so one Bell-parameter measurement takes the
whole cycle (acquisition plus polarizer-rotation overhead) and that cycle
time is the delta_t that degrades the bound. The split-days procedure fixes
one setting per day and accepts coincidences only inside a short window
around the daily perpendicularity instant, shrinking delta_t to the window
length at the cost of needing at least four days.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bounds import regime_threshold_dt
from .constants import EARTH_OMEGA, MIN_CAMPAIGN_SPAN, MIN_SPLIT_DAYS, ROTATION_PERIOD
from .errors import DomainError
from .kinematics import FrameDirection, SiteGeometry, is_accessible, perpendicularity_crossings
from .units import parse_time

# Canonical CHSH analyzer angles: a, a' for Alice and b, b' for Bob.
ANGLE_A = 0.0
ANGLE_A_PRIME = math.pi / 4.0
ANGLE_B = math.pi / 8.0
ANGLE_B_PRIME = 3.0 * math.pi / 8.0

CANONICAL_PAIRS: tuple[tuple[float, float], ...] = (
    (ANGLE_A, ANGLE_B),
    (ANGLE_A, ANGLE_B_PRIME),
    (ANGLE_A_PRIME, ANGLE_B),
    (ANGLE_A_PRIME, ANGLE_B_PRIME),
)

# Complementary acquisitions (Alice rotated by 90 degrees) normalize the
# correlator estimates: E at the complement is the negative of E at the pair.
COMPLEMENT_PAIRS: tuple[tuple[float, float], ...] = tuple(
    (a + math.pi / 2.0, b) for a, b in CANONICAL_PAIRS
)


@dataclass(frozen=True)
class MeasurementSchedule:
    """Timetable of polarizer settings and acquisition windows."""

    kind: str
    settings: tuple[tuple[float, float], ...]
    total_span: float
    per_setting_acquisition: float | None = None
    rotation_overhead: float | None = None
    cycles: int = 1
    days: int | None = None
    window_per_day: float | None = None

    def __post_init__(self):
        if self.kind == "standard":
            if len(self.settings) != 8:
                raise DomainError(
                    f"a standard cycle acquires exactly 8 settings, got {len(self.settings)}"
                )
            if self.per_setting_acquisition is None or self.per_setting_acquisition < 0.0:
                raise DomainError("standard schedule needs per-setting acquisition >= 0 s")
            if self.rotation_overhead is None or self.rotation_overhead < 0.0:
                raise DomainError("standard schedule needs rotation overhead >= 0 s")
            if self.cycles < 1:
                raise DomainError(f"standard schedule needs cycles >= 1, got {self.cycles}")
        elif self.kind == "split_days":
            if self.days is None or self.days < MIN_SPLIT_DAYS:
                raise DomainError(
                    f"split-days campaigns need at least {MIN_SPLIT_DAYS} days "
                    f"(one setting pair per day, four pairs per cycle); got {self.days}"
                )
            if self.window_per_day is None or not (self.window_per_day > 0.0):
                raise DomainError("split-days schedule needs a positive daily window")
        else:
            raise DomainError(f"unknown schedule kind {self.kind!r}")
        if self.total_span < 0.0:
            raise DomainError(f"total span must be >= 0 s, got {self.total_span}")

    @property
    def cycle_time(self) -> float:
        """Duration of one complete Bell-parameter measurement."""
        if self.kind == "standard":
            return 8.0 * (self.per_setting_acquisition + self.rotation_overhead)
        return float(MIN_SPLIT_DAYS) * ROTATION_PERIOD

    @property
    def redundancy_factor(self) -> float:
        """How many complete Bell-parameter measurements the campaign stacks."""
        if self.kind == "split_days":
            return self.days / MIN_SPLIT_DAYS
        return float(self.cycles)

    def setting_for_day(self, day_index: int) -> tuple[float, float]:
        return CANONICAL_PAIRS[day_index % len(CANONICAL_PAIRS)]

    def to_dict(self) -> dict:
        data: dict = {"kind": self.kind}
        if self.kind == "standard":
            data["per_setting_acquisition"] = self.per_setting_acquisition
            data["rotation_overhead"] = self.rotation_overhead
            data["cycles"] = self.cycles
        else:
            data["days"] = self.days
            data["window_per_day"] = self.window_per_day
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "MeasurementSchedule":
        kind = data.get("kind")
        if kind == "standard":
            return build_standard(
                per_setting=parse_time(data["per_setting_acquisition"]),
                rotation_overhead=parse_time(data.get("rotation_overhead", 0.0)),
                cycles=int(data.get("cycles", 1)),
            )
        if kind == "split_days":
            return build_split_days(
                days=int(data["days"]),
                window_per_day=parse_time(data["window_per_day"]),
            )
        raise DomainError(f"unknown schedule kind {kind!r}")


def build_standard(
    per_setting: float, rotation_overhead: float, cycles: int = 1
) -> MeasurementSchedule:
    """Standard CHSH cycle: 8 successive acquisitions with rotation dead time.

    The Bell parameter needs all 8, so the effective measurement time is
    8 (per_setting + rotation_overhead) regardless of how the sum splits.
    """
    return MeasurementSchedule(
        kind="standard",
        settings=CANONICAL_PAIRS + COMPLEMENT_PAIRS,
        per_setting_acquisition=per_setting,
        rotation_overhead=rotation_overhead,
        cycles=cycles,
        total_span=cycles * 8.0 * (per_setting + rotation_overhead),
    )


def build_split_days(days: int, window_per_day: float) -> MeasurementSchedule:
    """Split-days campaign: one setting per day inside the perpendicularity window.

    Polarizers never rotate mid-day, so the effective measurement time
    shrinks to the daily window length. Four days make one complete cycle.
    """
    if days < MIN_SPLIT_DAYS:
        raise DomainError(
            f"split-days campaigns need at least {MIN_SPLIT_DAYS} days "
            f"(one setting pair per day, four pairs per cycle); got {days}"
        )
    return MeasurementSchedule(
        kind="split_days",
        settings=CANONICAL_PAIRS,
        days=days,
        window_per_day=window_per_day,
        total_span=days * ROTATION_PERIOD,
    )


def effective_dt(schedule: MeasurementSchedule) -> float:
    """The delta_t to insert into the bound for this timetable."""
    if schedule.kind == "standard":
        return 8.0 * (schedule.per_setting_acquisition + schedule.rotation_overhead)
    return schedule.window_per_day


@dataclass
class CampaignValidation:
    """Pass/fail findings for a planned campaign; failures live in the report."""

    kind: str
    total_span: float
    effective_dt: float
    span_ok: bool
    accessible: bool
    windows_per_day: list[int] | None = None
    windows_ok: bool | None = None
    regime_threshold: float | None = None
    regime_verdict: str | None = None

    @property
    def passed(self) -> bool:
        return self.span_ok and self.windows_ok is not False

    def report_lines(self) -> list[str]:
        lines = [
            f"campaign kind:       {self.kind}",
            f"total span:          {self.total_span:.8e} s ({self.total_span / 3600.0:.2f} h)",
            f"effective delta_t:   {self.effective_dt:.8e} s",
            "12-hour rule:        " + ("pass" if self.span_ok else "FAIL (span below 12 h)"),
            "frame accessibility: " + ("accessible" if self.accessible else "inaccessible"),
        ]
        if self.windows_ok is not None:
            counts = ", ".join(str(n) for n in (self.windows_per_day or []))
            verdict = "pass" if self.windows_ok else "FAIL (a day lacks a crossing)"
            lines.append(f"daily crossings:     [{counts}] -> {verdict}")
        if self.regime_verdict is not None:
            lines.append(f"regime threshold:    {self.regime_threshold:.8e} s")
            lines.append(f"regime verdict:      {self.regime_verdict}")
        lines.append("overall:             " + ("pass" if self.passed else "FAIL"))
        return lines


def validate_campaign(
    schedule: MeasurementSchedule,
    geo: SiteGeometry,
    direction: FrameDirection,
    rho: float | None = None,
    omega: float = EARTH_OMEGA,
) -> CampaignValidation:
    """Check a campaign plan: span rule, window alignment, bound regime.

    Failures are reported, not raised; a plan that breaks the 12-hour rule
    or misses daily perpendicularity crossings comes back with the
    corresponding flag set.
    """
    dt = effective_dt(schedule)
    accessible = is_accessible(geo, direction)
    result = CampaignValidation(
        kind=schedule.kind,
        total_span=schedule.total_span,
        effective_dt=dt,
        span_ok=schedule.total_span >= MIN_CAMPAIGN_SPAN,
        accessible=accessible,
    )

    if schedule.kind == "split_days":
        period = 2.0 * math.pi / omega
        crossings = (
            perpendicularity_crossings(geo, direction, schedule.days * period, omega=omega)
            if accessible
            else []
        )
        per_day = [0] * schedule.days
        for t in crossings:
            day = min(int(t // period), schedule.days - 1)
            per_day[day] += 1
        result.windows_per_day = per_day
        result.windows_ok = all(n >= 1 for n in per_day)

    if rho is not None:
        threshold = regime_threshold_dt(rho, omega)
        result.regime_threshold = threshold
        result.regime_verdict = (
            "flat-bound regime" if dt < threshold else "beta-degraded regime"
        )
    return result
