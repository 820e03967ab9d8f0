"""Command-line front end.

Subcommands: curve, coherence, coverage, schedule, simulate. Exit codes:
0 success, 1 domain/physics error, 2 usage or configuration error. Every
randomized command requires an explicit --seed so runs stay reproducible;
numeric CSV output uses scientific notation with 9 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import BoundInputs, PreferredFrame, eval_bound
from .constants import EARTH_OMEGA
from .errors import ConfigError, DomainError
from .error_budget import OpticalBudget, combine_quadrature, coherence_length, effective_rho
from .kinematics import (
    FrameDirection,
    SiteGeometry,
    alpha_for_inaccessible_fraction,
    effective_chi,
    inaccessible_fraction,
    inaccessible_fraction_mc,
    is_accessible,
)
from .scans import ExperimentPreset, cmb_report, curves_to_csv, figure1, preset
from .schedule import (
    MeasurementSchedule,
    build_split_days,
    build_standard,
    effective_dt,
    validate_campaign,
)
from .simulation import (
    ExperimentConfig,
    SourceModel,
    TachyonHypothesis,
    bound_from_simulation,
    detect_drop,
    estimate_bell,
    estimates_to_csv,
    estimates_to_json,
    simulate_campaign,
)
from .error_budget import rho as path_rho
from .units import parse_angle, parse_length, parse_time


def _sci(x: float) -> str:
    return f"{x:.8e}"


def cmd_curve(args) -> int:
    single_point = args.rho is not None
    if single_point and args.presets:
        raise ConfigError("give either --presets or --rho/--dt/--beta, not both")
    if not single_point and not args.presets:
        raise ConfigError("nothing to do: give --presets or a --rho/--dt/--beta point")

    if single_point:
        if args.dt is None or args.beta is None:
            raise ConfigError("single-point mode needs --rho, --dt and --beta")
        inputs = BoundInputs(rho=args.rho, delta_t=parse_time(args.dt), omega=args.omega)
        chi = math.pi / 2.0 if args.chi is None else parse_angle(args.chi)
        frame = PreferredFrame(beta=args.beta, chi=chi)
        print(_sci(eval_bound(inputs, frame)))
        return 0

    names = [n.strip() for n in args.presets.split(",") if n.strip()]
    presets = [preset(n) for n in names]
    grid = np.geomspace(args.beta_min, args.beta_max, args.grid_points)
    curves = figure1(presets, grid, omega=args.omega)
    curves_to_csv(curves, args.output)
    print(f"wrote {len(names)} curve(s) x {args.grid_points} points to {args.output}")

    if args.cmb_report is not None:
        reports = {p.name: cmb_report(p, omega=args.omega).to_dict() for p in presets}
        Path(args.cmb_report).write_text(json.dumps(reports, indent=2))
        for p in presets:
            for line in cmb_report(p, omega=args.omega).report_lines():
                print(line)
            print()
    return 0


def cmd_coherence(args) -> int:
    wavelength = parse_length(args.wavelength)
    bandwidth = parse_length(args.filter)
    coherence = coherence_length(wavelength, bandwidth)
    print(f"coherence length: {_sci(coherence)} m ({coherence * 1e6:.4f} um)")
    if args.budget is not None:
        budget = _load_budget(args.budget)
        combined = combine_quadrature([budget.delta_d, coherence])
        print(f"combined delta_d: {_sci(combined)} m ({combined * 1e6:.2f} um)")
        print(f"effective rho:    {_sci(path_rho(combined, budget.distance))}")
        print(f"budget rho:       {_sci(effective_rho(budget))}")
    return 0


def cmd_coverage(args) -> int:
    if args.fraction is not None:
        alpha = alpha_for_inaccessible_fraction(args.fraction)
        print(f"alpha for inaccessible fraction {args.fraction}: {math.degrees(alpha):.4f} deg")
    else:
        alpha = parse_angle(args.alpha)
        closed = inaccessible_fraction(alpha)
        print(f"inaccessible fraction (closed form): {_sci(closed)}")
    if args.mc is not None:
        estimate, stderr = inaccessible_fraction_mc(alpha, args.mc, args.seed)
        print(
            f"inaccessible fraction (Monte Carlo, n={args.mc}, seed={args.seed}): "
            f"{estimate:.6f} +- {stderr:.6f}"
        )
    return 0


def _schedule_from_args(args) -> MeasurementSchedule:
    if args.kind == "standard":
        return build_standard(
            per_setting=parse_time(args.per_setting),
            rotation_overhead=parse_time(args.overhead),
            cycles=args.cycles,
        )
    if args.days is None or args.window is None:
        raise ConfigError("split schedules need --days and --window")
    return build_split_days(days=args.days, window_per_day=parse_time(args.window))


def cmd_schedule(args) -> int:
    sched = _schedule_from_args(args)
    print(f"schedule kind:       {sched.kind}")
    print(f"effective delta_t:   {_sci(effective_dt(sched))} s")
    print(f"total span:          {_sci(sched.total_span)} s")
    if args.validate:
        geo = SiteGeometry(
            alpha=parse_angle(args.alpha),
            baseline_length=parse_length(args.baseline),
            phase0=parse_angle(args.phase0),
        )
        direction = FrameDirection(
            theta_u=parse_angle(args.theta_u), phi_u=parse_angle(args.phi_u)
        )
        report = validate_campaign(sched, geo, direction, rho=args.rho)
        for line in report.report_lines():
            print(line)
    if args.save is not None:
        Path(args.save).write_text(json.dumps(sched.to_dict(), indent=2))
        print(f"schedule written to {args.save}")
    return 0


def _load_budget(path) -> OpticalBudget:
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise ConfigError(f"budget file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"budget file {path} is not valid JSON: {exc}") from exc
    return OpticalBudget.from_dict(data)


def _load_simulation_config(path):
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc

    base: ExperimentPreset | None = None
    if "preset" in data:
        base = preset(data["preset"])

    if "budget" in data:
        budget = OpticalBudget.from_dict(data["budget"])
    elif base is not None:
        budget = base.budget
    else:
        raise ConfigError("config needs a budget (or a preset providing one)")

    if "schedule" in data:
        sched = MeasurementSchedule.from_dict(data["schedule"])
    elif base is not None:
        sched = base.schedule
    else:
        raise ConfigError("config needs a schedule (or a preset providing one)")

    geo_data = data.get("geometry", {})
    geo = SiteGeometry(
        alpha=parse_angle(geo_data.get("alpha", 90.0)),
        baseline_length=parse_length(geo_data.get("baseline_length", budget.distance)),
        phase0=parse_angle(geo_data.get("phase0", 0.0)),
    )

    source_data = data.get("source", {})
    source = SourceModel.from_budget(
        budget,
        pair_rate=float(source_data.get("pair_rate", 1300.0)),
        visibility=float(source_data.get("visibility", 0.94)),
    )

    if "hypothesis" not in data:
        raise ConfigError("config needs a hypothesis block (beta_t, beta, theta_u)")
    hyp_data = data["hypothesis"]
    beta_t_raw = hyp_data.get("beta_t", "inf")
    beta_t = math.inf if str(beta_t_raw).lower() in ("inf", "infinity") else float(beta_t_raw)
    direction = FrameDirection(
        theta_u=parse_angle(hyp_data.get("theta_u", 90.0)),
        phi_u=parse_angle(hyp_data.get("phi_u", 0.0)),
    )
    if "chi" in hyp_data:
        chi = parse_angle(hyp_data["chi"])
    elif is_accessible(geo, direction):
        chi = effective_chi(geo, direction)
    else:
        raise ConfigError("inaccessible frame direction: give chi explicitly")
    frame = PreferredFrame(beta=float(hyp_data.get("beta", 0.0)), chi=chi)
    hyp = TachyonHypothesis(beta_t=beta_t, frame=frame, direction=direction)

    config = ExperimentConfig(
        geometry=geo, budget=budget, t_start=parse_time(data.get("t_start", 0.0))
    )
    return config, source, hyp, sched


def cmd_simulate(args) -> int:
    config, source, hyp, sched = _load_simulation_config(args.config)
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    tally = simulate_campaign(config, source, hyp, sched, seed=args.seed)
    tally.to_csv(out_dir / "tally.csv")
    tally.to_json(out_dir / "tally.json")

    estimates = estimate_bell(tally, sched)
    estimates_to_csv(estimates, out_dir / "estimates.csv")
    estimates_to_json(estimates, out_dir / "estimates.json")

    drops = detect_drop(estimates, threshold=args.threshold)
    drop_payload = {
        "threshold": args.threshold,
        "n_drop_bins": len(drops),
        "drop_bins": [d.to_dict() for d in drops],
    }
    (out_dir / "drop_report.json").write_text(json.dumps(drop_payload, indent=2))

    metadata = {
        "seed": tally.seed,
        "rng_algorithm": tally.rng_algorithm,
        "n_bins": len(tally),
        "n_pairs": int(tally.counts.sum()),
        "effective_dt": effective_dt(sched),
        "beta_t": "inf" if math.isinf(hyp.beta_t) else hyp.beta_t,
    }
    (out_dir / "run_metadata.json").write_text(json.dumps(metadata, indent=2))

    print(f"simulated {metadata['n_pairs']} pairs in {metadata['n_bins']} bins")
    print(f"drop bins: {len(drops)}")

    if not args.bound:
        return 0
    if drops:
        print(
            "error: correlation drop detected; cannot quote a speed bound "
            "(rerun with --no-bound to keep the drop report only)",
            file=sys.stderr,
        )
        return 1

    sim_bound = bound_from_simulation(config, sched, hyp.frame, hyp.direction, drops)
    bare_rho = path_rho(config.budget.delta_d, config.budget.distance)
    closed = eval_bound(
        BoundInputs(rho=bare_rho, delta_t=effective_dt(sched)), hyp.frame
    )
    comparison = {
        "simulated_bound": sim_bound,
        "closed_form_bound": closed,
        "closed_form_rho": bare_rho,
        "ratio": sim_bound / closed,
    }
    (out_dir / "bound_comparison.json").write_text(json.dumps(comparison, indent=2))
    print(f"event-level bound:  {_sci(sim_bound)}")
    print(f"closed-form bound:  {_sci(closed)}")
    print(f"ratio:              {comparison['ratio']:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vcausal",
        description=(
            "Lower bounds on superluminal quantum-communication speeds from "
            "rotating-baseline Bell tests."
        ),
    )
    parser.add_argument("--version", action="version", version=f"vcausal {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_curve = sub.add_parser("curve", help="emit bound curves or evaluate one point")
    p_curve.add_argument(
        "--presets", help="comma-separated preset names (ego_red, ego_green, tabletop_blue)"
    )
    p_curve.add_argument("--output", default="figure1.csv", help="curve CSV path")
    p_curve.add_argument("--grid-points", type=int, default=200, help="beta grid size")
    p_curve.add_argument("--beta-min", type=float, default=1e-6, help="smallest frame beta")
    p_curve.add_argument("--beta-max", type=float, default=0.999, help="largest frame beta")
    p_curve.add_argument("--cmb-report", help="also write per-preset CMB-frame summaries (JSON)")
    p_curve.add_argument("--rho", type=float, help="single point: path-mismatch ratio")
    p_curve.add_argument("--dt", help="single point: measurement time (e.g. 0.492s)")
    p_curve.add_argument("--beta", type=float, help="single point: frame reduced speed")
    p_curve.add_argument(
        "--chi", help="single point: orientation angle (degrees unless suffixed; default worst case)"
    )
    p_curve.add_argument("--omega", type=float, default=EARTH_OMEGA, help="rotation rate, rad/s")
    p_curve.set_defaults(func=cmd_curve)

    p_coh = sub.add_parser("coherence", help="photon coherence length and budget combination")
    p_coh.add_argument("--lambda", dest="wavelength", required=True, help="center wavelength (e.g. 813nm)")
    p_coh.add_argument("--filter", required=True, help="filter bandwidth (e.g. 40nm)")
    p_coh.add_argument("--budget", help="optical budget JSON to combine with")
    p_coh.set_defaults(func=cmd_coherence)

    p_cov = sub.add_parser("coverage", help="inaccessible-frame fraction of a baseline")
    group = p_cov.add_mutually_exclusive_group(required=True)
    group.add_argument("--alpha", help="baseline polar angle (degrees unless suffixed)")
    group.add_argument(
        "--fraction", type=float, help="target inaccessible fraction to invert for alpha"
    )
    p_cov.add_argument("--mc", type=int, help="Monte Carlo sample count")
    p_cov.add_argument("--seed", type=int, help="RNG seed (required with --mc)")
    p_cov.set_defaults(func=cmd_coverage)

    p_sched = sub.add_parser("schedule", help="build and validate measurement timetables")
    p_sched.add_argument("--kind", choices=["standard", "split"], required=True)
    p_sched.add_argument("--per-setting", default="0s", help="standard: acquisition per setting")
    p_sched.add_argument("--overhead", default="0s", help="standard: rotation dead time per setting")
    p_sched.add_argument("--cycles", type=int, default=1, help="standard: number of cycles")
    p_sched.add_argument("--days", type=int, help="split: number of days (>= 4)")
    p_sched.add_argument("--window", help="split: daily acquisition window (e.g. 0.492s)")
    p_sched.add_argument("--validate", action="store_true", help="run campaign validation")
    p_sched.add_argument("--alpha", default="90deg", help="baseline polar angle")
    p_sched.add_argument("--baseline", default="1175m", help="baseline length")
    p_sched.add_argument("--phase0", default="0deg", help="baseline azimuth at t=0")
    p_sched.add_argument("--theta-u", default="83.6deg", help="frame direction polar angle")
    p_sched.add_argument("--phi-u", default="0deg", help="frame direction azimuth")
    p_sched.add_argument("--rho", type=float, help="mismatch ratio for the regime verdict")
    p_sched.add_argument("--save", help="write the schedule as JSON")
    p_sched.set_defaults(func=cmd_schedule)

    p_sim = sub.add_parser("simulate", help="run an event-level campaign simulation")
    p_sim.add_argument("--config", required=True, help="campaign config JSON")
    p_sim.add_argument("--seed", type=int, required=True, help="RNG seed")
    p_sim.add_argument("--output-dir", default=".", help="directory for output files")
    p_sim.add_argument("--threshold", type=float, default=2.0, help="drop threshold on S")
    p_sim.add_argument(
        "--no-bound",
        dest="bound",
        action="store_false",
        help="skip the speed bound (drop report only)",
    )
    p_sim.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "coverage" and args.mc is not None and args.seed is None:
        print("error: --mc requires an explicit --seed", file=sys.stderr)
        return 2

    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
