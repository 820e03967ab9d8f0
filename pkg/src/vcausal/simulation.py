"""Event-level Monte Carlo of a Bell test under a v-causal hypothesis.

The premise under test: outcome correlations between the two stations are
carried by signals of reduced speed beta_t in a preferred frame. Each
generated photon pair defines two measurement events on the rotating
baseline; the pair is "connected" when beta_t meets the speed required to
link those events in the hypothesized frame. Connected pairs draw outcomes
from the two-channel polarization-correlation law

    P(o_a, o_b | a, b) = 1/4 [1 + o_a o_b V cos 2(a - b)],

disconnected pairs draw independent fair outcomes (correlator 0), the most
conservative local fallback. A hypothesis too slow to service the pairs
inside the perpendicularity windows therefore shows up as a drop of the
Bell parameter S in exactly those time bins.

Numerical note: detection-time differences are femtosecond scale while
campaign times reach days, so time offsets are carried separately from
absolute times everywhere; they must never be absorbed into a large float.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bounds import PreferredFrame
from .constants import DEFAULT_PAIR_RATE, DEFAULT_VISIBILITY, EARTH_OMEGA, SPEED_OF_LIGHT
from .errors import ConfigError, DomainError, DropDetectedError, EmptyBinError
from .error_budget import OpticalBudget
from .kinematics import (
    FrameDirection,
    SiteGeometry,
    SpacetimeEvent,
    baseline_direction,
    lorentz_gamma,
    perpendicularity_crossings,
    required_tachyon_beta,
)
from .schedule import CANONICAL_PAIRS, MeasurementSchedule

RNG_ALGORITHM = "numpy PCG64, per-bin substreams seeded by (seed, bin_index)"


@dataclass(frozen=True)
class SourceModel:
    """Entangled-pair source: rate, fringe visibility, detection-time jitter.

    lab_time_jitter is the half-width of the uniform lab-frame detection
    time offset between the two stations, derived from the path
    equalization uncertainty delta_d as delta_d / (2 c).
    """

    pair_rate: float = DEFAULT_PAIR_RATE
    visibility: float = DEFAULT_VISIBILITY
    lab_time_jitter: float = 0.0

    def __post_init__(self):
        if not (self.pair_rate > 0.0):
            raise DomainError(f"pair rate must be > 0 /s, got {self.pair_rate}")
        if not (0.0 <= self.visibility <= 1.0):
            raise DomainError(f"visibility must lie in [0, 1], got {self.visibility}")
        if self.lab_time_jitter < 0.0:
            raise DomainError(f"jitter must be >= 0 s, got {self.lab_time_jitter}")

    @classmethod
    def from_budget(
        cls,
        budget: OpticalBudget,
        pair_rate: float = DEFAULT_PAIR_RATE,
        visibility: float = DEFAULT_VISIBILITY,
    ) -> "SourceModel":
        return cls(
            pair_rate=pair_rate,
            visibility=visibility,
            lab_time_jitter=budget.delta_d / (2.0 * SPEED_OF_LIGHT),
        )


@dataclass(frozen=True)
class TachyonHypothesis:
    """Candidate signal speed beta_t (> 1, may be inf) in a candidate frame."""

    beta_t: float
    frame: PreferredFrame
    direction: FrameDirection

    def __post_init__(self):
        if math.isnan(self.beta_t) or not (self.beta_t > 1.0):
            raise DomainError(f"beta_t must exceed 1, got {self.beta_t}")


@dataclass(frozen=True)
class ExperimentConfig:
    """Site geometry plus optical budget; t_start anchors the campaign clock."""

    geometry: SiteGeometry
    budget: OpticalBudget
    t_start: float = 0.0


@dataclass
class CoincidenceTally:
    """Per-bin coincidence counts: columns (++, +-, -+, --) per time bin."""

    bin_edges: list[tuple[float, float]]
    bin_settings: list[tuple[float, float]]
    counts: np.ndarray
    seed: int
    rng_algorithm: str = RNG_ALGORITHM

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.shape != (len(self.bin_edges), 4):
            raise DomainError("counts must be one (++, +-, -+, --) row per bin")
        if np.any(counts < 0):
            raise DomainError("negative coincidence counts")
        if len(self.bin_settings) != len(self.bin_edges):
            raise DomainError("one setting pair per bin required")
        last_end = -math.inf
        for start, end in self.bin_edges:
            if end < start or start < last_end:
                raise DomainError("bins must be ordered and non-overlapping")
            last_end = end
        self.counts = counts

    def __len__(self) -> int:
        return len(self.bin_edges)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["bin_start", "bin_end", "setting_a", "setting_b", "n_pp", "n_pm", "n_mp", "n_mm"]
            )
            for (start, end), (a, b), row in zip(self.bin_edges, self.bin_settings, self.counts):
                writer.writerow(
                    [f"{start:.8e}", f"{end:.8e}", f"{a:.8e}", f"{b:.8e}"]
                    + [int(v) for v in row]
                )

    def to_json(self, path) -> None:
        data = {
            "seed": self.seed,
            "rng_algorithm": self.rng_algorithm,
            "bins": [
                {
                    "bin_start": start,
                    "bin_end": end,
                    "setting_a": a,
                    "setting_b": b,
                    "n_pp": int(row[0]),
                    "n_pm": int(row[1]),
                    "n_mp": int(row[2]),
                    "n_mm": int(row[3]),
                }
                for (start, end), (a, b), row in zip(
                    self.bin_edges, self.bin_settings, self.counts
                )
            ],
        }
        Path(path).write_text(json.dumps(data, indent=2))


def acquisition_bins(
    config: ExperimentConfig,
    schedule: MeasurementSchedule,
    direction: FrameDirection | None = None,
    omega: float = EARTH_OMEGA,
) -> tuple[list[tuple[float, float]], list[tuple[float, float]]]:
    """Concrete acquisition intervals and the setting pair active in each.

    Standard cycles run back to back from t_start, each setting acquiring
    for its slot before the rotation dead time. Split-days windows are
    centered on the first perpendicularity crossing of each day (which is
    why they need the frame direction), one canonical setting pair per day.
    """
    bins: list[tuple[float, float]] = []
    settings: list[tuple[float, float]] = []
    if schedule.kind == "standard":
        slot = schedule.per_setting_acquisition + schedule.rotation_overhead
        for cycle in range(schedule.cycles):
            cycle_start = config.t_start + cycle * 8.0 * slot
            for i, pair in enumerate(schedule.settings):
                start = cycle_start + i * slot
                bins.append((start, start + schedule.per_setting_acquisition))
                settings.append(pair)
    else:
        if direction is None:
            raise ConfigError("split-days window placement needs a frame direction")
        period = 2.0 * math.pi / omega
        half = schedule.window_per_day / 2.0
        for day in range(schedule.days):
            day_start = config.t_start + day * period
            crossings = perpendicularity_crossings(
                config.geometry, direction, period, omega=omega, t_start=day_start
            )
            if not crossings:
                continue
            center = crossings[0]
            bins.append((center - half, center + half))
            settings.append(CANONICAL_PAIRS[day % len(CANONICAL_PAIRS)])
    return bins, settings


def _required_beta_array(
    t: np.ndarray,
    dt_lab: np.ndarray,
    geo: SiteGeometry,
    frame: PreferredFrame,
    direction: FrameDirection,
    omega: float,
) -> np.ndarray:
    """Vectorized minimum connecting speed for pairs at times t, offsets dt_lab."""
    az = geo.phase0 + omega * t
    sa = math.sin(geo.alpha)
    bhat = np.stack(
        [sa * np.cos(az), sa * np.sin(az), np.full_like(t, math.cos(geo.alpha))], axis=1
    )
    dx = geo.d * bhat
    u = direction.unit_vector()
    gamma = lorentz_gamma(frame.beta)
    beta = frame.beta
    proj = dx @ u
    dtp = gamma * (dt_lab - beta * proj / SPEED_OF_LIGHT)
    along = (gamma - 1.0) * proj - gamma * beta * SPEED_OF_LIGHT * dt_lab
    dxp = dx + along[:, None] * u[None, :]
    dist = np.linalg.norm(dxp, axis=1)
    required = np.full(t.shape, math.inf)
    nonzero = dtp != 0.0
    required[nonzero] = dist[nonzero] / (SPEED_OF_LIGHT * np.abs(dtp[nonzero]))
    return required


def _generate_bin_pairs(
    rng: np.random.Generator,
    start: float,
    end: float,
    config: ExperimentConfig,
    source: SourceModel,
    frame: PreferredFrame,
    direction: FrameDirection,
    omega: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Poisson pair emissions in one bin: times, lab offsets, required speeds."""
    n = int(rng.poisson(source.pair_rate * (end - start)))
    t = rng.uniform(start, end, n)
    dt_lab = rng.uniform(-source.lab_time_jitter, source.lab_time_jitter, n)
    required = _required_beta_array(t, dt_lab, config.geometry, frame, direction, omega)
    return t, dt_lab, required


def pair_required_betas(
    config: ExperimentConfig,
    source: SourceModel,
    frame: PreferredFrame,
    direction: FrameDirection,
    schedule: MeasurementSchedule,
    seed: int,
    omega: float = EARTH_OMEGA,
) -> list[np.ndarray]:
    """Per-bin required connecting speeds for the pair stream a seed generates.

    Identical to what simulate_campaign sees internally: the connectivity
    decision for any beta_t is a pure threshold on these arrays.
    """
    bins, _ = acquisition_bins(config, schedule, direction, omega)
    out = []
    for k, (start, end) in enumerate(bins):
        rng = np.random.default_rng([seed, k])
        _, _, required = _generate_bin_pairs(
            rng, start, end, config, source, frame, direction, omega
        )
        out.append(required)
    return out


def simulate_campaign(
    config: ExperimentConfig,
    source: SourceModel,
    hyp: TachyonHypothesis,
    schedule: MeasurementSchedule,
    seed: int,
    omega: float = EARTH_OMEGA,
) -> CoincidenceTally:
    """Run the campaign and tally coincidences per acquisition bin.

    Deterministic for fixed inputs and seed: each bin derives its own RNG
    substream, so results do not depend on evaluation order or the degree
    of parallelism.
    """
    if seed < 0:
        raise ConfigError(f"seed must be a non-negative integer, got {seed}")
    bins, settings = acquisition_bins(config, schedule, hyp.direction, omega)
    if not bins or sum(end - start for start, end in bins) <= 0.0:
        raise ConfigError(
            "schedule windows never intersect the simulation horizon "
            "(inaccessible frame direction or zero acquisition time)"
        )
    counts = np.zeros((len(bins), 4), dtype=np.int64)
    for k, ((start, end), (angle_a, angle_b)) in enumerate(zip(bins, settings)):
        rng = np.random.default_rng([seed, k])
        _, _, required = _generate_bin_pairs(
            rng, start, end, config, source, hyp.frame, hyp.direction, omega
        )
        n = required.size
        connected = hyp.beta_t >= required
        pair_corr = np.where(
            connected, source.visibility * math.cos(2.0 * (angle_a - angle_b)), 0.0
        )
        outcome_a = rng.integers(0, 2, n) * 2 - 1
        same = rng.random(n) < (1.0 + pair_corr) / 2.0
        outcome_b = np.where(same, outcome_a, -outcome_a)
        pos_a = outcome_a > 0
        pos_b = outcome_b > 0
        counts[k, 0] = np.count_nonzero(pos_a & pos_b)
        counts[k, 1] = np.count_nonzero(pos_a & ~pos_b)
        counts[k, 2] = np.count_nonzero(~pos_a & pos_b)
        counts[k, 3] = np.count_nonzero(~pos_a & ~pos_b)
    return CoincidenceTally(
        bin_edges=bins, bin_settings=settings, counts=counts, seed=seed
    )


def chsh_E(counts) -> float:
    """Correlator estimate (n++ + n-- - n+- - n-+) / total for one setting pair."""
    pp, pm, mp, mm = (float(c) for c in counts)
    total = pp + pm + mp + mm
    if total <= 0:
        raise EmptyBinError("no coincidences in bin; correlator undefined")
    return (pp + mm - pm - mp) / total


def chsh_E_stderr(counts) -> float:
    """Binomial standard error of the correlator estimate."""
    pp, pm, mp, mm = (float(c) for c in counts)
    total = pp + pm + mp + mm
    if total <= 0:
        raise EmptyBinError("no coincidences in bin; correlator undefined")
    corr = (pp + mm - pm - mp) / total
    return math.sqrt(max(0.0, 1.0 - corr * corr) / total)


def chsh_S(e1: float, e2: float, e3: float, e4: float) -> float:
    """Bell parameter |E1 - E2 + E3 + E4| in the canonical setting order."""
    for e in (e1, e2, e3, e4):
        if not (abs(e) <= 1.0):
            raise DomainError(f"correlators must lie in [-1, 1], got {e}")
    return abs(e1 - e2 + e3 + e4)


@dataclass
class BinEstimate:
    """Per-bin correlator plus the Bell parameter of the bin's full cycle."""

    bin_start: float
    bin_end: float
    setting_a: float
    setting_b: float
    n_total: int
    corr: float
    corr_stderr: float
    s_value: float
    s_stderr: float
    cycle_index: int

    def to_dict(self) -> dict:
        return {
            "bin_start": self.bin_start,
            "bin_end": self.bin_end,
            "setting_a": self.setting_a,
            "setting_b": self.setting_b,
            "n_total": self.n_total,
            "corr": self.corr,
            "corr_stderr": self.corr_stderr,
            "s_value": self.s_value,
            "s_stderr": self.s_stderr,
            "cycle_index": self.cycle_index,
        }


def estimate_bell(tally: CoincidenceTally, schedule: MeasurementSchedule) -> list[BinEstimate]:
    """Correlators per bin and the Bell parameter per complete cycle.

    Standard cycles fold each complementary acquisition into its canonical
    partner ((E - E_complement) / 2, the complement measuring the negated
    correlator); split-days cycles combine four consecutive daily windows.
    Bins in incomplete cycles carry NaN for S.
    """
    n_bins = len(tally)
    corr = np.full(n_bins, math.nan)
    corr_var = np.full(n_bins, math.nan)
    totals = tally.counts.sum(axis=1)
    for i in range(n_bins):
        if totals[i] > 0:
            corr[i] = chsh_E(tally.counts[i])
            corr_var[i] = chsh_E_stderr(tally.counts[i]) ** 2

    group = 8 if schedule.kind == "standard" else 4
    expected_settings = tuple(schedule.settings) if schedule.kind == "standard" else CANONICAL_PAIRS
    s_values = np.full(n_bins, math.nan)
    s_errors = np.full(n_bins, math.nan)
    cycle_ids = np.arange(n_bins) // group
    for cycle in range(n_bins // group):
        sel = slice(cycle * group, (cycle + 1) * group)
        if tuple(tally.bin_settings[sel]) != expected_settings:
            # A skipped acquisition misaligned this cycle; S is undefined.
            continue
        e_bins = corr[sel]
        v_bins = corr_var[sel]
        if schedule.kind == "standard":
            e_vals = (e_bins[:4] - e_bins[4:]) / 2.0
            e_vars = (v_bins[:4] + v_bins[4:]) / 4.0
        else:
            e_vals = e_bins
            e_vars = v_bins
        if np.all(np.isfinite(e_vals)):
            s_values[sel] = chsh_S(*e_vals)
            s_errors[sel] = math.sqrt(float(np.sum(e_vars)))

    estimates = []
    for i in range(n_bins):
        start, end = tally.bin_edges[i]
        angle_a, angle_b = tally.bin_settings[i]
        estimates.append(
            BinEstimate(
                bin_start=start,
                bin_end=end,
                setting_a=angle_a,
                setting_b=angle_b,
                n_total=int(totals[i]),
                corr=float(corr[i]),
                corr_stderr=float(math.sqrt(corr_var[i])) if totals[i] > 0 else math.nan,
                s_value=float(s_values[i]),
                s_stderr=float(s_errors[i]),
                cycle_index=int(cycle_ids[i]),
            )
        )
    return estimates


def estimates_to_csv(estimates: list[BinEstimate], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [
                "bin_start",
                "bin_end",
                "setting_a",
                "setting_b",
                "n_total",
                "corr",
                "corr_stderr",
                "s_value",
                "s_stderr",
                "cycle_index",
            ]
        )
        for est in estimates:
            writer.writerow(
                [
                    f"{est.bin_start:.8e}",
                    f"{est.bin_end:.8e}",
                    f"{est.setting_a:.8e}",
                    f"{est.setting_b:.8e}",
                    est.n_total,
                    f"{est.corr:.8e}",
                    f"{est.corr_stderr:.8e}",
                    f"{est.s_value:.8e}",
                    f"{est.s_stderr:.8e}",
                    est.cycle_index,
                ]
            )


def estimates_to_json(estimates: list[BinEstimate], path) -> None:
    Path(path).write_text(json.dumps([est.to_dict() for est in estimates], indent=2))


def detect_drop(estimates: list[BinEstimate], threshold: float = 2.0) -> list[BinEstimate]:
    """Bins whose Bell parameter sits below threshold beyond 3 standard errors.

    An empty result means no drop was observed: the tested hypothesis
    survives and the campaign's speed bound applies.
    """
    if not estimates:
        raise DomainError("empty estimate series")
    return [
        est
        for est in estimates
        if math.isfinite(est.s_value) and est.s_value + 3.0 * est.s_stderr < threshold
    ]


def bound_from_simulation(
    config: ExperimentConfig,
    schedule: MeasurementSchedule,
    frame: PreferredFrame,
    direction: FrameDirection,
    drop_report: list[BinEstimate],
    omega: float = EARTH_OMEGA,
) -> float:
    """Event-level speed bound: the weakest requirement any scheduled bin enforces.

    For each acquisition bin, representative station events are placed at
    the bin edges and center with the full path-equalization uncertainty
    delta_d / c as the worst-case lab time offset (both signs); the bin's
    requirement is the minimum connecting speed over those configurations.
    Refuses to quote a bound when a drop was detected.
    """
    if drop_report:
        raise DropDetectedError(
            f"correlation drop detected in {len(drop_report)} bin(s); no bound can be quoted"
        )
    bins, _ = acquisition_bins(config, schedule, direction, omega)
    if not bins:
        raise ConfigError("schedule produced no acquisition bins")
    geo = config.geometry
    offset = config.budget.delta_d / SPEED_OF_LIGHT
    best = math.inf
    for start, end in bins:
        for t in (start, 0.5 * (start + end), end):
            bhat = baseline_direction(t, geo, omega)
            # Event times are relative to the pair emission: absolute campaign
            # times would swallow the femtosecond offset in float rounding.
            station_a = SpacetimeEvent(0.0, -0.5 * geo.d * bhat)
            for sign in (-1.0, 1.0):
                station_b = SpacetimeEvent(sign * offset, 0.5 * geo.d * bhat)
                best = min(
                    best, required_tachyon_beta(station_a, station_b, frame, direction)
                )
    return best
