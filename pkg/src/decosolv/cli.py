"""Command-line interface.

Every physical quantity on the command line carries its unit (``10.6fs``,
``0.21eV``, ``298K``, ``1500cm-1``).  Exit codes: 0 success, 2 usage error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__, csvio
from .bath import (
    BathModes,
    DebyeDensity,
    OhmicDensity,
    WidthModel,
    discretize,
    read_spectral_table,
    width_factor,
)
from .decoherence import decoherence_time, gaussian_decoherence_exponent, golden_rule_curve
from .errors import ConversionError, DomainError, FitError, NumericalError
from .oracle import EnsembleSpec, analytic_classical_c, run_oracle, sample_gap_array
from .relation import (
    CASE_STUDIES,
    GENERAL,
    CaseStudyInput,
    ROOM_TEMPERATURE,
    RmsFluctuation,
    StokesShift,
    evaluate_case_study,
    ratio_squared_general,
    read_case_file,
)
from .solvation import (
    GapTrajectory,
    estimate_c,
    fit_gaussian_timescale,
    read_gap_trajectory,
    write_gap_trajectory,
)
from .units import (
    ANGULAR_FREQUENCY,
    ENERGY,
    HBAR,
    TEMPERATURE,
    TIME,
    angular_to_wavenumber,
    parse_internal,
    thermal_energy,
)

EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _typed(dimension):
    def parse(text):
        try:
            return parse_internal(text, dimension)
        except ConversionError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None

    parse.__name__ = dimension
    return parse


energy = _typed(ENERGY)
time_ = _typed(TIME)
freq = _typed(ANGULAR_FREQUENCY)
temperature = _typed(TEMPERATURE)


def mode_spec(text):
    """``<frequency>:<reorganization energy>``, e.g. ``1000cm-1:0.1eV``."""
    try:
        w, lam = text.split(":")
        return parse_internal(w, ANGULAR_FREQUENCY), parse_internal(lam, ENERGY)
    except (ValueError, ConversionError):
        raise argparse.ArgumentTypeError(
            f"{text!r}: expected FREQ:REORG such as 1000cm-1:0.1eV"
        ) from None


def nm_pair(text):
    """``<abs>nm:<em>nm``."""
    try:
        a, e = text.split(":")
        return parse_internal(a, ENERGY), parse_internal(e, ENERGY), a, e
    except (ValueError, ConversionError):
        raise argparse.ArgumentTypeError(
            f"{text!r}: expected ABS:EM wavelengths such as 467.5nm:582.5nm"
        ) from None


def threshold(text):
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError("threshold must lie in (0, 1)")
    return v


def positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


class UsageError(Exception):
    pass


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _emit_csv(columns, config, path):
    fh, close = _open_out(path)
    try:
        csvio.write_csv(fh, columns, config)
    finally:
        if close:
            fh.close()


def _report_stream(csv_path):
    # keep stdout clean for CSV when it goes there
    return sys.stderr if csv_path in (None, "-") else sys.stdout


def _kv(stream, pairs):
    for k, v in pairs:
        if isinstance(v, float):
            v = f"{v:.6g}"
        print(f"{k}={v}", file=stream)


def _gap_from_args(args):
    if args.rms is not None:
        return RmsFluctuation(args.rms)
    if args.stokes is not None:
        return StokesShift(args.stokes)
    if getattr(args, "stokes_nm", None) is not None:
        # photon energies come back in eV; energy order is reversed w.r.t. nm
        e_abs, e_em = args.stokes_nm[0], args.stokes_nm[1]
        if not e_abs > e_em:
            raise UsageError("--stokes-nm: absorption wavelength must be shorter than emission")
        return StokesShift(e_abs - e_em)
    return None


def _add_gap_flags(p, required):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--rms", type=energy, help="rms gap fluctuation, e.g. 0.21eV")
    g.add_argument("--stokes", type=energy, help="Stokes shift 2*lambda, e.g. 1.7eV")
    g.add_argument(
        "--stokes-nm", type=nm_pair, metavar="ABS:EM",
        help="absorption and emission maxima, e.g. 467.5nm:582.5nm",
    )


# --- relate -----------------------------------------------------------------


def cmd_relate(args):
    gap = _gap_from_args(args)
    T = args.temp
    var = gap.variance(T)
    kT = thermal_energy(T)
    result = evaluate_case_study(CaseStudyInput("cli", args.tau_g, T, gap))
    pathway, r2 = result.pathway, result.ratio_squared
    if args.mode:
        modes = BathModes(np.array([m[0] for m in args.mode]), np.array([m[1] for m in args.mode]))
        r2 = ratio_squared_general(modes, var, T, args.width_model)
        pathway = f"{GENERAL}/{WidthModel.parse(args.width_model).value}"
    tau_D = float(np.sqrt(r2) * args.tau_g)
    out = sys.stdout
    _kv(out, [
        ("tau_D_fs", tau_D),
        ("tau_g_fs", args.tau_g),
        ("ratio", float(np.sqrt(r2))),
        ("ratio_squared", r2),
        ("lambda_eV", var / (2 * kT)),
        ("stokes_shift_eV", var / kT),
        ("gap_variance_eV2", var),
        ("gap_rms_eV", float(np.sqrt(var))),
        ("temperature_K", T),
        ("pathway", pathway),
    ])
    print("", file=out)
    print(
        f"Decoherence time {tau_D:.3g} fs from a {args.tau_g:g} fs Gaussian solvation "
        f"time at {T:g} K (tau_D/tau_g = {np.sqrt(r2):.4f}, {pathway} route).",
        file=out,
    )
    if not args.mode:
        lo, hi = (
            evaluate_case_study(CaseStudyInput("lo", args.tau_g, t, gap)).tau_D
            for t in (293.0, 300.0)
        )
        print(f"Temperature sensitivity: {lo:.3g} fs at 293 K, {hi:.3g} fs at 300 K.", file=out)
    return 0


# --- widths -----------------------------------------------------------------


def cmd_widths(args):
    T = args.temp
    out = sys.stdout
    print("omega_rad_fs,omega_cm-1,x,W_tanh,W_nitzan,W_highT", file=out)
    for w in args.omega:
        x = HBAR * w / (2 * thermal_energy(T)) if T > 0 else float("inf")
        row = [w, float(angular_to_wavenumber(w)), x]
        for model in (WidthModel.TANH, WidthModel.NITZAN, WidthModel.HIGH_T):
            try:
                row.append(width_factor(w, T, model))
            except DomainError:
                row.append(float("nan"))
        print(",".join(f"{v:.10g}" for v in row), file=out)
    return 0


# --- spinboson --------------------------------------------------------------


def _density_from_args(args):
    if args.density == "table":
        if not args.table:
            raise UsageError("--density table needs --table FILE")
        return read_spectral_table(args.table)
    if args.cutoff is None:
        raise UsageError(f"--density {args.density} needs --cutoff")
    if (args.reorg is None) == (args.kondo is None):
        raise UsageError("give exactly one of --reorg or --kondo")
    if args.density == "ohmic":
        if args.kondo is not None:
            return OhmicDensity.from_kondo(args.kondo, args.cutoff)
        return OhmicDensity.from_reorganization(args.reorg, args.cutoff)
    if args.kondo is not None:
        raise UsageError("--kondo applies to the Ohmic density only")
    return DebyeDensity(args.reorg, args.cutoff)


def cmd_spinboson(args):
    sd = _density_from_args(args)
    T = args.temp
    omega_max = args.omega_max or sd.default_cutoff()
    n = int(np.floor(args.t_max / args.dt + 1e-9)) + 1
    times = np.arange(n) * args.dt
    bath = discretize(sd, args.n_modes, omega_max) if args.n_modes else sd
    gr = golden_rule_curve(bath, T, times, omega_max=omega_max)
    cols = {"t_fs": times, "D_goldenrule": gr.values}
    alphas = {}
    for name, model in (("tanh", WidthModel.TANH), ("nitzan", WidthModel.NITZAN), ("highT", WidthModel.HIGH_T)):
        a = gaussian_decoherence_exponent(bath, T, model, omega_max=omega_max)
        alphas[name] = a
        cols[f"D_gaussian_{name}"] = np.exp(-a * times * times)
    cols["C_classical"] = analytic_classical_c(bath, times, omega_max=omega_max)
    config = {
        "command": "spinboson", "density": sd.kind, "temperature_K": T,
        "omega_max_rad_fs": omega_max, "dt_fs": args.dt, "t_max_fs": args.t_max,
        "n_modes": args.n_modes or "quadrature",
    }
    if args.density != "table":
        config["cutoff_rad_fs"] = args.cutoff
        config["reorg_eV"] = sd.reorganization_energy()
    else:
        config["table"] = args.table
    _emit_csv(cols, config, args.output)
    rep = _report_stream(args.output)
    chosen = WidthModel.parse(args.width_model).value
    key = {"tanh": "tanh", "nitzan": "nitzan", "highT": "highT"}[chosen]
    _kv(rep, [(f"tau_D_{k}_fs", decoherence_time(a)) for k, a in alphas.items() if a > 0])
    if alphas[key] > 0:
        print(f"Gaussian decoherence time ({chosen} width): {decoherence_time(alphas[key]):.4g} fs", file=rep)
    return 0


# --- respond ----------------------------------------------------------------


def cmd_respond(args):
    traj = read_gap_trajectory(args.trajectory)
    max_lag = args.max_lag if args.max_lag is not None else (len(traj) - 1) * traj.dt / 2
    t, c = estimate_c(traj, max_lag)
    config = {
        "command": "respond", "trajectory": args.trajectory, "dt_fs": traj.dt,
        "max_lag_fs": max_lag, "threshold": args.threshold,
    }
    _emit_csv({"t_fs": t, "C": c}, config, args.output)
    rep = _report_stream(args.output)
    tau_g = fit_gaussian_timescale(t, c, args.threshold)
    s = traj.samples
    pairs = [
        ("tau_g_fs", tau_g),
        ("mean_gap_eV", float(s.mean())),
        ("gap_rms_eV", float(s.std())),
        ("n_samples", len(traj)),
    ]
    gap = _gap_from_args(args)
    if gap is None and args.temp is not None:
        gap = RmsFluctuation(float(s.std()))
    if gap is not None:
        if args.temp is None:
            raise UsageError("--temp is needed to predict tau_D")
        res = evaluate_case_study(CaseStudyInput("respond", tau_g, args.temp, gap))
        pairs += [("tau_D_fs", res.tau_D), ("ratio", res.ratio), ("pathway", res.pathway)]
    _kv(rep, pairs)
    return 0


# --- oracle -----------------------------------------------------------------


def cmd_oracle(args):
    modes = BathModes(np.array([m[0] for m in args.mode]), np.array([m[1] for m in args.mode]))
    spec = EnsembleSpec(modes, args.temp, args.samples, args.dt, args.steps, args.seed)
    max_lag = args.max_lag if args.max_lag is not None else (args.steps - 1) // 2 * args.dt
    rep_obj = run_oracle(spec, max_lag, args.threshold)
    config = {
        "command": "oracle", "seed": args.seed, "samples": args.samples, "dt_fs": args.dt,
        "steps": args.steps, "temperature_K": args.temp, "threshold": args.threshold,
        "modes": ";".join(f"{w:.10g}rad/fs:{l:.10g}eV" for w, l in zip(modes.omega, modes.lam)),
    }
    _emit_csv(
        {
            "t_fs": rep_obj.times, "C_estimate": rep_obj.c_estimate,
            "C_error": rep_obj.c_error, "C_analytic": rep_obj.c_analytic,
        },
        config,
        args.output,
    )
    if args.save_trajectories:
        os.makedirs(args.save_trajectories, exist_ok=True)
        y = sample_gap_array(spec)
        for i in range(min(args.save_count, y.shape[0])):
            write_gap_trajectory(
                os.path.join(args.save_trajectories, f"traj_{i:05d}.dat"),
                GapTrajectory(args.dt, y[i]),
                header=f"t_fs U_eV seed={args.seed} sample={i}",
            )
    rep = _report_stream(args.output)
    _kv(rep, [
        ("seed", args.seed),
        ("n_samples", args.samples),
        ("tau_g_fit_fs", rep_obj.tau_fit if rep_obj.tau_fit is not None else "nan"),
        ("tau_g_expected_fs", rep_obj.tau_expected),
        ("gap_variance_eV2", rep_obj.variance_estimate),
        ("gap_variance_error_eV2", rep_obj.variance_error),
        ("gap_variance_expected_eV2", rep_obj.variance_expected),
        ("mean_C_error", float(np.nanmean(rep_obj.c_error[1:])) if rep_obj.c_error.size > 1 else 0.0),
        ("fraction_within_3sigma", rep_obj.band_fraction(3.0)),
    ])
    return 0


# --- casestudies ------------------------------------------------------------


def cmd_casestudies(args):
    cases = read_case_file(args.file) if args.file else list(CASE_STUDIES)
    out = sys.stdout
    header = f"{'case':<28}{'tau_g/fs':>9}{'T/K':>7}{'gap input':>22}{'tau_D/fs':>10}{'reported':>10}{'dev':>8}  status"
    print(header, file=out)
    notes = []
    for c in cases:
        r = evaluate_case_study(c)
        if isinstance(c.gap, RmsFluctuation):
            gin = f"rms {c.gap.value:.4g} eV"
        else:
            gin = f"Stokes {c.gap.value:.4g} eV"
        if c.reported_tau_D:
            dev = (r.tau_D - c.reported_tau_D) / c.reported_tau_D
            rep, devs = f"{c.reported_tau_D:.3g}", f"{100 * dev:+.1f}%"
            status = "ok" if abs(dev) <= 0.05 else "MISMATCH"
        else:
            rep, devs, status = "-", "-", "-"
        if c.assumption:
            status = "ASSUMPTION*"
            notes.append(f"* {c.label}: {c.assumption}")
        print(
            f"{c.label:<28}{c.tau_g:>9.4g}{c.temperature:>7.4g}{gin:>22}{r.tau_D:>10.3f}{rep:>10}{devs:>8}  {status}",
            file=out,
        )
    for n in notes:
        print(n, file=out)
    return 0


# --- parser -----------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="decosolv",
        description="Decoherence times from short-time solvation dynamics.",
    )
    p.add_argument("--version", action="version", version=f"decosolv {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("relate", help="tau_D from tau_g and gap statistics")
    r.add_argument("--tau-g", type=time_, required=True, help="Gaussian solvation time, e.g. 10.6fs")
    r.add_argument("--temp", type=temperature, default=ROOM_TEMPERATURE, help="default 298K")
    _add_gap_flags(r, required=True)
    r.add_argument("--mode", type=mode_spec, action="append", help="bath mode FREQ:REORG (general route)")
    r.add_argument("--width-model", default="tanh", choices=["tanh", "nitzan", "highT"])
    r.set_defaults(func=cmd_relate)

    w = sub.add_parser("widths", help="thermal width factors for each prescription")
    w.add_argument("--omega", type=freq, action="append", required=True, help="e.g. 1500cm-1")
    w.add_argument("--temp", type=temperature, default=ROOM_TEMPERATURE)
    w.set_defaults(func=cmd_widths)

    s = sub.add_parser("spinboson", help="golden-rule and Gaussian decoherence curves (CSV)")
    s.add_argument("--density", choices=["ohmic", "debye", "table"], default="ohmic")
    s.add_argument("--reorg", type=energy, help="total reorganization energy, e.g. 0.05eV")
    s.add_argument("--kondo", type=float, help="dimensionless Ohmic coupling alpha")
    s.add_argument("--cutoff", type=freq, help="cutoff / Debye frequency, e.g. 500cm-1")
    s.add_argument("--table", help="two-column file: omega in cm-1, J_eff in eV")
    s.add_argument("--temp", type=temperature, default=ROOM_TEMPERATURE)
    s.add_argument("--t-max", type=time_, required=True)
    s.add_argument("--dt", type=time_, required=True)
    s.add_argument("--omega-max", type=freq, default=None)
    s.add_argument("--n-modes", type=positive_int, default=None, help="discretize instead of quadrature")
    s.add_argument("--width-model", default="tanh", choices=["tanh", "nitzan", "highT"])
    s.add_argument("--output", "-o", default=None)
    s.set_defaults(func=cmd_spinboson)

    c = sub.add_parser("respond", help="C(t) and tau_g from a gap trajectory")
    c.add_argument("--trajectory", required=True, help="two columns: t in fs, U in eV")
    c.add_argument("--max-lag", type=time_, default=None)
    c.add_argument("--threshold", type=threshold, default=0.6)
    c.add_argument("--temp", type=temperature, default=None)
    _add_gap_flags(c, required=False)
    c.add_argument("--output", "-o", default=None)
    c.set_defaults(func=cmd_respond)

    o = sub.add_parser("oracle", help="classical harmonic-bath Monte Carlo check")
    o.add_argument("--mode", type=mode_spec, action="append", required=True)
    o.add_argument("--temp", type=temperature, default=ROOM_TEMPERATURE)
    o.add_argument("--samples", type=positive_int, default=10000)
    o.add_argument("--dt", type=time_, required=True)
    o.add_argument("--steps", type=positive_int, required=True)
    o.add_argument("--seed", type=int, default=20240601)
    o.add_argument("--max-lag", type=time_, default=None)
    o.add_argument("--threshold", type=threshold, default=0.9)
    o.add_argument("--output", "-o", default=None)
    o.add_argument("--save-trajectories", metavar="DIR", default=None)
    o.add_argument("--save-count", type=positive_int, default=1)
    o.set_defaults(func=cmd_oracle)

    cs = sub.add_parser("casestudies", help="built-in experimental case studies")
    cs.add_argument("--file", default=None, help="batch file of case studies")
    cs.set_defaults(func=cmd_casestudies)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except NumericalError as exc:
        print(f"decosolv: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (DomainError, FitError, ValueError, OSError) as exc:
        print(f"decosolv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
