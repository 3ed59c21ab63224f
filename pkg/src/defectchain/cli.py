"""Command-line front end: tabular data for the spectrum, bound state, dynamics and transport.

Exit codes: 0 success, 2 usage or parameter error, 3 numerical failure,
4 I/O failure.
"""
import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .dynamics import METHODS, TimeGrid, amplitude_series, oracle_ring_size
from .entanglement import localized_concurrence
from .errors import NumericalError, ParameterError
from .greens import localized_state
from .model import ChainSpec, build_hamiltonian, diagonalize
from .transport import DEFAULT_SENDER, sweep_grid, transport_sweep

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_IO = 0, 2, 3, 4

DEFAULT_ALPHA = -2.0
DEFAULT_SITES = {"spectrum": 401, "localized": 401, "evolve": 401, "transport": 1001}
DEFAULT_J_MAX = {"localized": 10, "evolve": 20}

OUTPUT_SCHEMA = {
    "type": "object",
    "required": ["meta", "data"],
    "properties": {
        "meta": {
            "type": "object",
            "required": ["spec", "method", "version"],
            "properties": {
                "spec": {"type": "object"},
                "method": {"type": ["string", "null"]},
                "version": {"const": SCHEMA_VERSION},
            },
        },
        "data": {"type": "array", "items": {"type": "object"}},
    },
}


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if isinstance(value, str):
        return value
    return "%.9e" % float(value)


def _json_value(value):
    if value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return int(value)
    v = float(value)
    return float("%.9e" % v) if math.isfinite(v) else None


def render(columns, rows, meta, fmt):
    """Serialize rows (tuples matching ``columns``) as CSV or JSON text."""
    if fmt == "json":
        doc = {
            "meta": {k: _json_value(v) if not isinstance(v, dict) else v
                     for k, v in meta.items()},
            "data": [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows],
        }
        return json.dumps(doc, indent=1) + "\n"
    buf = io.StringIO()
    for key in sorted(k for k in meta if k not in ("spec", "method", "version")):
        buf.write(f"# {key}={_fmt(meta[key])}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _spec_meta(spec):
    return {
        "n_sites": spec.n_sites,
        "field_h": _json_value(spec.field_h),
        "coupling_J": _json_value(spec.coupling_J),
        "defect_eps": _json_value(spec.defect_eps),
        "defect_site": spec.defect_site,
        "alpha": _json_value(spec.alpha),
    }


def spec_from_args(args):
    sites = args.sites if args.sites is not None else DEFAULT_SITES[args.command]
    if args.alpha is not None and args.eps is not None:
        print("warning: both --alpha and --eps given; using --alpha", file=sys.stderr)
    if args.alpha is not None or args.eps is None:
        alpha = DEFAULT_ALPHA if args.alpha is None else args.alpha
        return ChainSpec.from_alpha(sites, alpha, args.h, args.J, args.defect_site)
    return ChainSpec(sites, args.h, args.J, args.eps, args.defect_site)


def _time_grid(args):
    if not args.t_max > 0 or not args.dt > 0:
        raise ParameterError("--t-max and --dt must be positive")
    return TimeGrid.uniform(args.t_max, args.dt)


def cmd_spectrum(args):
    spec = spec_from_args(args)
    spectrum = diagonalize(build_hamiltonian(spec))
    rows = [("eigenvalue", k, v) for k, v in enumerate(spectrum.eigenvalues)]
    lo, hi = spec.band
    rows += [("band_lower", None, lo), ("band_upper", None, hi)]
    if spec.alpha != 0:
        rows.append(("e_loc", None, localized_state(spec).energy_loc))
    return ["quantity", "index", "value"], rows, {"spec": _spec_meta(spec), "method": None}


def cmd_localized(args):
    spec = spec_from_args(args)
    if spec.alpha == 0:
        raise ParameterError("alpha = 0: no bound state exists; pass a nonzero --alpha/--eps")
    state = localized_state(spec)
    j_max = args.j_max if args.j_max is not None else DEFAULT_J_MAX["localized"]
    rows = []
    for n in range(-j_max, j_max + 1):
        c = None if n == 0 else localized_concurrence(spec, 0, n)
        rows.append((n, state.amplitude(n), c))
    meta = {
        "spec": _spec_meta(spec),
        "method": None,
        "e_loc": state.energy_loc,
        "xi": state.xi,
        "localization_length": state.localization_length,
    }
    return ["n", "b_n", "c_0n"], rows, meta


def cmd_evolve(args):
    spec = spec_from_args(args)
    grid = _time_grid(args)
    r_max = args.j_max if args.j_max is not None else DEFAULT_J_MAX["evolve"]
    sender = args.sender if args.sender is not None else 0
    receivers = range(-r_max, r_max + 1)
    if args.receiver is not None:
        receivers = [args.receiver]
    t = grid.t_values
    conc = {}
    if args.method == "oracle":
        tau_max = spec.coupling_J * float(t[-1])
        far = max(abs(spec.offset(r)) for r in receivers)
        need = oracle_ring_size(tau_max, far, spec.offset(sender))
        if spec.n_sites < need:
            raise ParameterError(
                f"ring of {spec.n_sites} sites too small for the oracle up to tau={tau_max:g}; "
                f"need --sites >= {need}")
        column = np.abs(diagonalize(build_hamiltonian(spec)).propagator_column(sender, t))
        for r in receivers:
            conc[r] = column[:, r % spec.n_sites]
    else:
        for r in receivers:
            conc[r] = amplitude_series(spec, sender, r, t, args.method).concurrence()
    rows = [(float(tk), r, float(conc[r][k])) for k, tk in enumerate(t) for r in receivers]
    meta = {"spec": _spec_meta(spec), "method": args.method, "sender": sender}
    return ["t", "r", "c_r"], rows, meta


def cmd_transport(args):
    template = spec_from_args(args)
    sender = args.sender if args.sender is not None else DEFAULT_SENDER
    alphas = sweep_grid(args.alpha_min, args.alpha_max, args.alpha_step)
    results = transport_sweep(alphas, sender, template)
    rows = [(r.alpha, r.T, r.R, r.residual, r.t_star) for r in results]
    meta = {"spec": _spec_meta(template), "method": "oracle", "sender": sender}
    return ["alpha", "T", "R", "residual", "t_star"], rows, meta


COMMANDS = {
    "spectrum": (cmd_spectrum, "eigenvalues of the finite ring with band edges and E_loc"),
    "localized": (cmd_localized, "bound-state amplitudes and concurrence profile"),
    "evolve": (cmd_evolve, "long-format (t, r, C_r) table of concurrence dynamics"),
    "transport": (cmd_transport, "transmission/reflection sweep over alpha"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sites", type=int, default=None,
                        help="ring size n_sites (default 401; 1001 for transport)")
    common.add_argument("--h", type=float, default=1.0, help="uniform field h")
    common.add_argument("--J", type=float, default=1.0, help="coupling J")
    common.add_argument("--eps", type=float, default=None, help="defect field eps")
    common.add_argument("--alpha", type=float, default=None,
                        help="dimensionless defect 2 eps / J (wins over --eps; default -2)")
    common.add_argument("--defect-site", type=int, default=0)
    common.add_argument("--sender", type=int, default=None)
    common.add_argument("--receiver", type=int, default=None)
    common.add_argument("--t-max", type=float, default=30.0)
    common.add_argument("--dt", type=float, default=0.1)
    common.add_argument("--j-max", type=int, default=None,
                        help="site half-range for localized/evolve tables")
    common.add_argument("--alpha-min", type=float, default=-4.0)
    common.add_argument("--alpha-max", type=float, default=4.0)
    common.add_argument("--alpha-step", type=float, default=0.1)
    common.add_argument("--method", choices=METHODS, default="oracle")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output path (default stdout)")

    parser = argparse.ArgumentParser(
        prog="defectchain",
        description="Entanglement in an XY ring with a single field defect.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, helptext) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=helptext)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        if args.j_max is not None and args.j_max < 0:
            raise ParameterError("--j-max must be non-negative")
        columns, rows, meta = handler(args)
    except ParameterError as exc:
        print(f"defectchain {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"defectchain {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    meta = {**meta, "version": SCHEMA_VERSION}
    text = render(columns, rows, meta, args.format)
    try:
        if args.out is None:
            sys.stdout.write(text)
        else:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"defectchain {args.command}: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
