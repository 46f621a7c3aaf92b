"""Command-line front end.

Subcommands: spectrum, potential, qes, match, nogo, oracle, reproduce.
Exit codes: 0 success / all rows pass, 1 a numeric check failed,
2 configuration error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import nogo
from .matching import Branch, NoSolutionError, solve_match
from .oracle import DomainTooSmallError, GridSpec, default_grid_for, grid_spectrum
from .potentials import (
    EvenPolynomialPotential,
    load_potential,
    pt_taylor,
    wkb_Q,
    wkb_q_phase,
    wkb_q_real,
    wkb_suq11,
)
from .qes import QespParams, qes_levels, qesp_potential
from .report import reproduce
from .spectra import (
    DeformationParam,
    Suq11Params,
    spectrum_pt_limit,
    spectrum_q_phase,
    spectrum_q_real,
    spectrum_Q,
    spectrum_suq11,
)
from .tables import EnergyLevel, EnergyTable, parity_of

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

class ConfigError(Exception):
    pass


def parse_levels(text):
    """'0..18:2' -> 0, 2, ..., 18; '0,3,5' -> 0, 3, 5; '4' -> 0..4."""
    text = text.strip()
    try:
        if ".." in text:
            rng, _, step = text.partition(":")
            lo, hi = rng.split("..")
            return list(range(int(lo), int(hi) + 1, int(step) if step else 1))
        if "," in text:
            return [int(t) for t in text.split(",")]
        return list(range(int(text) + 1))
    except ValueError:
        raise ConfigError(f"cannot parse level list {text!r}") from None


def _write_outputs(args, json_text=None, csv_text=None):
    """Write the optional --json / --csv files; arguments may be callables."""
    if getattr(args, "json", None) and json_text is not None:
        with open(args.json, "w") as fh:
            fh.write((json_text() if callable(json_text) else json_text) + "\n")
    if getattr(args, "csv", None) and csv_text is not None:
        with open(args.csv, "w") as fh:
            fh.write(csv_text() if callable(csv_text) else csv_text)


def _print_table(table: EnergyTable):
    print(f"# {table.label}")
    print(f"{'index':>6} {'parity':>6} {'energy':>18}  provenance")
    for lv in table:
        print(f"{lv.index:>6} {lv.parity:>6} {lv.energy:>18.10g}  {lv.provenance}")


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise ConfigError(f"{args.command} {args.model}: missing --{', --'.join(missing)}")


def cmd_spectrum(args):
    levels = np.array(parse_levels(args.levels))
    model = args.model
    if model == "q-phase":
        _need(args, "tau")
        energies = spectrum_q_phase(levels, DeformationParam.q_phase(args.tau, args.omega))
    elif model == "q-real":
        _need(args, "tau")
        energies = spectrum_q_real(levels, DeformationParam.q_real(args.tau, args.omega))
    elif model == "Q":
        _need(args, "Q")
        energies = spectrum_Q(levels, DeformationParam.q_base(args.Q, args.omega))
    elif model == "suq11":
        _need(args, "N", "tau", "A")
        energies = spectrum_suq11(levels, Suq11Params(args.A, args.tau, args.N, args.E0))
    else:
        _need(args, "N", "A")
        energies = spectrum_pt_limit(levels, args.A, args.N, args.E0)
    table = EnergyTable(
        f"{model} spectrum",
        [EnergyLevel(int(n), float(e), parity_of(int(n)), "deformed-model") for n, e in zip(levels, energies)],
    )
    _print_table(table)
    _write_outputs(args, table.to_json(indent=2), table.to_csv())
    if args.plot_data:
        np.savetxt(args.plot_data, np.column_stack([levels, energies]), header="n E_n")
    return EXIT_OK


def build_potential(args) -> EvenPolynomialPotential:
    model = args.model
    order = args.order
    if model == "q-phase":
        _need(args, "tau")
        return wkb_q_phase(args.omega, args.tau, order)
    if model == "q-real":
        _need(args, "tau")
        return wkb_q_real(args.omega, args.tau, order)
    if model == "Q":
        _need(args, "Q")
        return wkb_Q(args.omega, args.Q, order)
    if model == "suq11":
        _need(args, "N", "tau", "A")
        return wkb_suq11(Suq11Params(args.A, args.tau, args.N, args.E0), min(order, 8))
    if model == "pt":
        _need(args, "N", "A")
        return pt_taylor(args.A, args.N, min(order, 8))
    _need(args, "b", "n")
    return qesp_potential(QespParams(args.b, args.n, args.r, args.a))


def cmd_potential(args):
    pot = build_potential(args)
    text = pot.to_json(indent=2)
    print(text)
    _write_outputs(args, text)
    if args.plot_data:
        x = np.linspace(-args.xmax, args.xmax, 401)
        np.savetxt(args.plot_data, np.column_stack([x, pot(x)]), header="x V(x)")
    return EXIT_OK


def cmd_qes(args):
    table = qes_levels(QespParams(args.b, args.n, args.r, args.a))
    _print_table(table)
    _write_outputs(args, table.to_json(indent=2), table.to_csv())
    return EXIT_OK


def cmd_match(args):
    if args.N is not None:
        N_range = [args.N]
    else:
        N_range = range(args.N_min, args.N_max + 1)
    try:
        sols = solve_match(args.n, args.r, Branch.parse(args.branch), N_range, l=args.l)
    except NoSolutionError as exc:
        print(f"no solution: {exc} (skipped N: {len(exc.skipped)})", file=sys.stderr)
        return EXIT_FAIL
    chosen = sols if args.all else sols[:1]
    payload = [s.to_dict() for s in chosen]
    text = json.dumps(payload if args.all else payload[0], indent=2)
    print(text)
    _write_outputs(args, text)
    return EXIT_OK


def cmd_nogo(args):
    model = args.model
    if model == "q-phase":
        _need(args, "tau")
        verdict = nogo.check_q_phase(args.omega, args.tau)
    elif model == "q-real":
        _need(args, "tau")
        verdict = nogo.check_q_real(args.omega, args.tau)
    elif model == "Q":
        _need(args, "Q")
        verdict = nogo.check_Q(args.omega, args.Q)
    else:
        _need(args, "A")
        verdict = nogo.check_pt(args.A, args.N if args.N is not None else 1)
    text = verdict.to_json(indent=2)
    print(text)
    _write_outputs(args, text)
    return EXIT_OK


def cmd_oracle(args):
    if args.potential_file:
        pot = load_potential(args.potential_file)
    else:
        if args.b is None or args.n is None:
            raise ConfigError("oracle needs --potential-file or QES parameters --b and --n")
        pot = qesp_potential(QespParams(args.b, args.n, args.r, args.a))
    if args.L is not None and args.M is not None:
        grid = GridSpec(args.L, args.M, args.count)
    elif isinstance(pot, EvenPolynomialPotential):
        grid = default_grid_for(pot, args.count, points_per_wavelength=args.ppw)
    else:
        raise ConfigError("tabulated potentials need explicit --L and --M")
    try:
        result = grid_spectrum(pot, grid)
    except DomainTooSmallError as exc:
        print(f"{exc}; try --L {exc.suggested_half_width:.4g}", file=sys.stderr)
        return EXIT_FAIL
    print(f"# grid L={grid.half_width:.6g} M={grid.points}")
    print(f"{'index':>6} {'parity':>6} {'energy':>18} {'estimate':>12}")
    for i, (e, p, c) in enumerate(zip(result.energies, result.parities, result.convergence_estimate)):
        print(f"{i:>6} {p:>6} {e:>18.10g} {c:>12.3e}")
    _write_outputs(args, result.to_json(indent=2), result.to_csv())
    return EXIT_OK


def cmd_reproduce(args):
    report = reproduce()
    sys.stdout.write(report.to_text())
    _write_outputs(args, report.to_json, report.to_csv)
    return EXIT_OK if report.ok else EXIT_FAIL


def _outputs(p, plot=False):
    p.add_argument("--json", metavar="PATH", help="write JSON output")
    p.add_argument("--csv", metavar="PATH", help="write CSV output")
    if plot:
        p.add_argument("--plot-data", metavar="PATH", help="write series for external plotting")


def _model_params(p):
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--tau", type=float)
    p.add_argument("--Q", type=float)
    p.add_argument("--A", type=float)
    p.add_argument("--N", type=int)
    p.add_argument("--E0", type=float, default=0.0, help="E0' offset of the SU_q(1,1) spectrum")


def _qes_params(p, required=True):
    p.add_argument("--b", type=float, required=required)
    p.add_argument("--n", type=int, required=required)
    p.add_argument("--r", type=int, default=0, choices=(0, 1))
    p.add_argument("--a", type=float, default=1.0)


def build_parser():
    parser = argparse.ArgumentParser(prog="qesmatch", description=__doc__.splitlines()[0])
    parser.add_argument("--config", metavar="PATH", help="JSON file whose keys mirror the flags")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="energy levels of a deformed oscillator")
    p.add_argument("model", choices=("q-phase", "q-real", "Q", "suq11", "pt-limit"))
    _model_params(p)
    p.add_argument("--levels", default="0..9", help="'0..18:2', '0,2,4' or a top index")
    _outputs(p, plot=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("potential", help="WKB-equivalent or QES potential coefficients")
    p.add_argument("model", choices=("q-phase", "q-real", "Q", "suq11", "pt", "qes"))
    _model_params(p)
    _qes_params(p, required=False)
    p.add_argument("--order", type=int, default=6, help="truncation order (even)")
    p.add_argument("--xmax", type=float, default=1.0, help="range for --plot-data")
    _outputs(p, plot=True)
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("qes", help="exactly known levels of the QES sextic potential")
    _qes_params(p)
    _outputs(p)
    p.set_defaults(func=cmd_qes)

    p = sub.add_parser("match", help="match an SU_q(1,1) potential to a QES potential")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=0, choices=(0, 1))
    p.add_argument("--branch", default="pos", choices=("pos", "neg"))
    p.add_argument("--N", type=int, help="solve for this N only")
    p.add_argument("--N-min", type=int, default=3)
    p.add_argument("--N-max", type=int, default=1000)
    p.add_argument("--l", type=int, default=0, help="periodic window offset (b > 0 only)")
    p.add_argument("--all", action="store_true", help="emit every N, not just the first")
    _outputs(p)
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("nogo", help="infeasibility verdict for a non-matching model")
    p.add_argument("model", choices=("q-phase", "q-real", "Q", "pt"))
    _model_params(p)
    _outputs(p)
    p.set_defaults(func=cmd_nogo)

    p = sub.add_parser("oracle", help="finite-difference spectrum of a potential")
    p.add_argument("--potential-file", metavar="PATH", help="potential JSON or (x, V) table")
    _qes_params(p, required=False)
    p.add_argument("--count", type=int, default=6)
    p.add_argument("--L", type=float, help="grid half width")
    p.add_argument("--M", type=int, help="grid points (odd)")
    p.add_argument("--ppw", type=float, default=20, help="points per shortest wavelength")
    _outputs(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reproduce", help="recompute every published number and compare")
    _outputs(p)
    p.set_defaults(func=cmd_reproduce)
    return parser


def _apply_config(parser, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    with open(known.config) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ConfigError("config file must hold a JSON object")
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    parser.set_defaults(**cfg)
    for action in parser._subparsers._group_actions:
        for subparser in action.choices.values():
            subparser.set_defaults(**cfg)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
    except (OSError, ValueError, ConfigError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
