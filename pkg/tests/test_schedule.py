import math

import numpy as np
import pytest

from vcausal import (
    BoundInputs,
    DomainError,
    FrameDirection,
    MeasurementSchedule,
    PreferredFrame,
    SiteGeometry,
    build_split_days,
    build_standard,
    effective_dt,
    eval_bound,
    validate_campaign,
)
from vcausal.schedule import CANONICAL_PAIRS, COMPLEMENT_PAIRS


EAST_WEST = SiteGeometry(alpha=math.pi / 2, baseline_length=1175.0)
CMB_DIRECTION = FrameDirection(theta_u=math.radians(83.6))


class TestBuildStandard:
    def test_tunnel_cycle_time(self):
        sched = build_standard(per_setting=20.0, rotation_overhead=5.0)
        assert effective_dt(sched) == 200.0
        assert len(sched.settings) == 8

    def test_tabletop_cycle_time(self):
        assert effective_dt(build_standard(12.5, 0.0)) == 100.0

    def test_degenerate_zero_cycle(self):
        sched = build_standard(0.0, 0.0)
        assert effective_dt(sched) == 0.0

    def test_canonical_order_then_complements(self):
        sched = build_standard(20.0, 5.0)
        assert sched.settings[:4] == CANONICAL_PAIRS
        assert sched.settings[4:] == COMPLEMENT_PAIRS
        for (a, b), (ac, bc) in zip(CANONICAL_PAIRS, COMPLEMENT_PAIRS):
            assert ac == pytest.approx(a + math.pi / 2)
            assert bc == b

    def test_canonical_angles_hit_tsirelson(self):
        # The four correlators of an ideal singlet-like law at these angles
        # combine to 2 sqrt(2).
        (a, b), (a2, b2), (a3, b3), (a4, b4) = CANONICAL_PAIRS
        s = abs(
            math.cos(2 * (a - b))
            - math.cos(2 * (a2 - b2))
            + math.cos(2 * (a3 - b3))
            + math.cos(2 * (a4 - b4))
        )
        assert s == pytest.approx(2.0 * math.sqrt(2.0), rel=1e-12)

    def test_cycle_arithmetic_exact(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            p = rng.uniform(0.0, 100.0)
            r = rng.uniform(0.0, 20.0)
            assert effective_dt(build_standard(p, r)) == 8.0 * (p + r)

    def test_multi_cycle_span(self):
        sched = build_standard(20.0, 5.0, cycles=216)
        assert sched.total_span == 216 * 200.0
        assert effective_dt(sched) == 200.0

    def test_validation(self):
        with pytest.raises(DomainError):
            build_standard(-1.0, 0.0)
        with pytest.raises(DomainError):
            build_standard(1.0, -1.0)
        with pytest.raises(DomainError):
            build_standard(1.0, 1.0, cycles=0)


class TestBuildSplitDays:
    def test_minimum_campaign(self):
        sched = build_split_days(days=4, window_per_day=0.492)
        assert effective_dt(sched) == 0.492
        assert sched.redundancy_factor == 1.0

    def test_three_days_rejected_with_reasoned_message(self):
        with pytest.raises(DomainError, match="4 days"):
            build_split_days(days=3, window_per_day=1.0)

    def test_extra_days_add_redundancy_not_dt(self):
        sched = build_split_days(days=8, window_per_day=0.492)
        assert effective_dt(sched) == 0.492
        assert sched.redundancy_factor == 2.0

    def test_dt_independent_of_day_count(self):
        for days in (4, 5, 7, 12):
            assert effective_dt(build_split_days(days, 0.492)) == 0.492

    def test_window_must_be_positive(self):
        with pytest.raises(DomainError):
            build_split_days(days=4, window_per_day=0.0)


class TestSerialization:
    def test_standard_round_trip(self):
        sched = build_standard(20.0, 5.0, cycles=3)
        assert MeasurementSchedule.from_dict(sched.to_dict()) == sched

    def test_split_round_trip(self):
        sched = build_split_days(6, 0.492)
        assert MeasurementSchedule.from_dict(sched.to_dict()) == sched

    def test_unit_suffixed_times(self):
        sched = MeasurementSchedule.from_dict(
            {"kind": "standard", "per_setting_acquisition": "20s", "rotation_overhead": "5s"}
        )
        assert effective_dt(sched) == 200.0


class TestValidateCampaign:
    def test_split_four_days_passes(self):
        sched = build_split_days(4, 0.492)
        report = validate_campaign(sched, EAST_WEST, CMB_DIRECTION, rho=1.83e-7)
        assert report.span_ok
        assert report.windows_ok
        assert report.accessible
        assert report.passed
        assert all(n >= 1 for n in report.windows_per_day)

    def test_two_hour_standard_plan_fails_span_rule(self):
        sched = build_standard(20.0, 5.0, cycles=36)  # 7200 s
        report = validate_campaign(sched, EAST_WEST, CMB_DIRECTION)
        assert not report.span_ok
        assert not report.passed
        assert any("FAIL" in line for line in report.report_lines())

    def test_standard_200s_is_beta_degraded(self):
        sched = build_standard(20.0, 5.0, cycles=216)
        report = validate_campaign(sched, EAST_WEST, CMB_DIRECTION, rho=1.83e-7)
        assert report.regime_verdict == "beta-degraded regime"
        assert report.regime_threshold == pytest.approx(5.0205761316872428e-3, rel=1e-12)

    def test_fast_cycle_is_flat_regime(self):
        sched = build_standard(1.25e-4, 0.0, cycles=500_000)
        report = validate_campaign(sched, EAST_WEST, CMB_DIRECTION, rho=1.83e-7)
        assert report.regime_verdict == "flat-bound regime"

    def test_inaccessible_direction_fails_split_windows(self):
        geo = SiteGeometry(alpha=math.radians(40.0), baseline_length=1175.0)
        sched = build_split_days(4, 0.492)
        report = validate_campaign(sched, geo, FrameDirection(theta_u=math.radians(5.0)))
        assert not report.accessible
        assert report.windows_ok is False
        assert not report.passed


class TestBoundOrderingAcrossSchedules:
    def test_split_bound_dominates_standard_bound(self):
        rng = np.random.default_rng(17)
        split_dt = effective_dt(build_split_days(4, 0.492))
        standard_dt = effective_dt(build_standard(20.0, 5.0))
        for _ in range(50):
            beta = rng.uniform(1e-6, 0.99)
            chi = rng.uniform(0.1, math.pi / 2)
            frame = PreferredFrame(beta=beta, chi=chi)
            split_bound = eval_bound(BoundInputs(rho=1.83e-7, delta_t=split_dt), frame)
            standard_bound = eval_bound(BoundInputs(rho=1.83e-7, delta_t=standard_dt), frame)
            assert split_bound > standard_bound
        frame0 = PreferredFrame(beta=0.0, chi=1.0)
        assert eval_bound(
            BoundInputs(rho=1.83e-7, delta_t=split_dt), frame0
        ) == eval_bound(BoundInputs(rho=1.83e-7, delta_t=standard_dt), frame0)
