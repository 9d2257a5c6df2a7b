"""Command-line entry point: ``corrcm <command> [options]``.

Commands
--------
decoherence        D(n) (or D'(n) with ``--order after``) at one (epsilon, tau)
blp-map            BLP measure over an (epsilon, tau) grid
pair-correlations  concurrence and mutual information of the ancilla pair
verify             cross-checks of all computation routes

Exit status is 0 on success, 1 for invalid configuration and 2 when a
verification suite exceeds its tolerance.
"""

import argparse
import json
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .collision_model import AncillaState, ModelParams
from .liouville_rep import d_via_xi, dprime_series
from .nonmarkov_measures import blp_sweep, pair_correlation_series, resolve_workers
from .verify import FAULTS, run_suites

EXIT_OK, EXIT_CONFIG, EXIT_VERIFY = 0, 1, 2
THREADS_ENV = "CORRCM_THREADS"
_ANGLE_SLACK = 1e-12
_PI_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Angle:
    """An angle in radians together with the text the user typed."""

    value: float
    text: str


def parse_angle(text):
    """Parse ``"0.195pi"``, ``"pi/4"``, ``"0.25*pi"`` or a plain float (radians)."""
    m = _PI_RE.match(text.lower())
    if m:
        coef = float(m.group(1)) if m.group(1) else 1.0
        div = float(m.group(2)) if m.group(2) else 1.0
        if div == 0:
            raise ConfigError(f"division by zero in angle {text!r}")
        return Angle(coef * np.pi / div, text)
    try:
        return Angle(float(text), text)
    except ValueError:
        raise ConfigError(f"cannot parse angle {text!r}") from None


def _check_range_angle(a, name):
    if not -_ANGLE_SLACK <= a.value <= np.pi + _ANGLE_SLACK:
        raise ConfigError(f"{name} = {a.text} lies outside [0, pi]")
    return a


def parse_range(text, name):
    """``min:max:steps`` -> (axis, min Angle, max Angle)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{name} must look like min:max:steps, got {text!r}")
    lo = _check_range_angle(parse_angle(parts[0]), name)
    hi = _check_range_angle(parse_angle(parts[1]), name)
    try:
        steps = int(parts[2])
    except ValueError:
        raise ConfigError(f"{name} steps must be an integer, got {parts[2]!r}") from None
    if steps < 1:
        raise ConfigError(f"{name} needs at least one step")
    if steps == 1:
        if abs(hi.value - lo.value) > _ANGLE_SLACK:
            raise ConfigError(f"{name} with one step needs min == max")
        return np.array([lo.value]), lo, hi
    if hi.value <= lo.value:
        raise ConfigError(f"{name} must have max > min")
    return np.linspace(lo.value, hi.value, steps), lo, hi


def parse_ancilla(text):
    try:
        x, y, z = (float(v) for v in text.split(","))
    except ValueError:
        raise ConfigError(f"ancilla must be x,y,z Bloch components, got {text!r}") from None
    if x * x + y * y + z * z > 1 + 1e-12:
        raise ConfigError("ancilla Bloch vector must have length <= 1")
    return AncillaState.from_bloch(x, y, z)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="corrcm", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"corrcm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--ancilla", default="1,0,0", help="Bloch vector x,y,z of rho_A (default |+>)")
        p.add_argument("-o", "--output", default="-", help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("decoherence", help="decoherence function at one parameter point")
    p.add_argument("--epsilon", required=True)
    p.add_argument("--tau", required=True)
    p.add_argument("--n-max", type=int, default=100)
    p.add_argument("--order", choices=("before", "after"), default="before")
    common(p)

    p = sub.add_parser("blp-map", help="BLP non-Markovianity over an (epsilon, tau) grid")
    p.add_argument("--eps-range", default="0:0.5pi:101")
    p.add_argument("--tau-range", default="0:0.5pi:101")
    p.add_argument("--n-max", type=int, default=100)
    p.add_argument("--order", choices=("before", "after"), default="before")
    p.add_argument("--threads", type=int, default=None, help=f"worker processes (env {THREADS_ENV})")
    common(p)

    p = sub.add_parser("pair-correlations", help="concurrence and mutual information of A_n A_{n+1}")
    p.add_argument("--eps-range", default="0:0.5pi:51")
    p.add_argument("--n-max", type=int, default=10)
    common(p)

    p = sub.add_parser("verify", help="cross-check all computation routes")
    p.add_argument("--n-max", type=int, default=6, help="oracle depth (collisions)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", choices=FAULTS, default=None, help=argparse.SUPPRESS)
    return parser


def _fmt(x):
    return f"{x:.12g}"


def _angle_meta(a):
    return {"radians": _fmt(a.value), "text": a.text}


def _write(args, meta, columns, rows):
    if args.format == "csv":
        head = " ".join(f"{k}={json.dumps(v, sort_keys=True, separators=(',', ':'))}" for k, v in meta.items())
        lines = [f"# {head}", ",".join(columns)]
        lines += [",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        body = {
            "metadata": meta,
            "columns": list(columns),
            "rows": [[float(_fmt(v)) if isinstance(v, float) else v for v in row] for row in rows],
        }
        text = json.dumps(body, indent=1) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)


def _base_meta(args, ancilla):
    return {
        "command": args.command,
        "version": __version__,
        "ancilla_bloch": [float(_fmt(v)) for v in ancilla.bloch],
    }


def _check_n_max(n):
    if n < 0:
        raise ConfigError("--n-max must be nonnegative")
    return n


def cmd_decoherence(args):
    eps = _check_range_angle(parse_angle(args.epsilon), "epsilon")
    tau = _check_range_angle(parse_angle(args.tau), "tau")
    n_max = _check_n_max(args.n_max)
    ancilla = parse_ancilla(args.ancilla)
    params = ModelParams(tau.value, eps.value, 2, ancilla)
    D = d_via_xi(params, n_max) if args.order == "before" else dprime_series(params, n_max)
    meta = _base_meta(args, ancilla)
    meta.update(epsilon=_angle_meta(eps), tau=_angle_meta(tau), n_max=n_max, order=args.order)
    rows = [(n, float(d.real), float(d.imag), float(abs(d))) for n, d in enumerate(D)]
    _write(args, meta, ("n", "re_D", "im_D", "abs_D"), rows)
    return EXIT_OK


def cmd_blp_map(args):
    eps_axis, e_lo, e_hi = parse_range(args.eps_range, "eps-range")
    tau_axis, t_lo, t_hi = parse_range(args.tau_range, "tau-range")
    n_max = _check_n_max(args.n_max)
    ancilla = parse_ancilla(args.ancilla)
    try:
        workers = resolve_workers(args.threads, THREADS_ENV)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    variant = "forward" if args.order == "before" else "reversed"
    grid = blp_sweep(eps_axis, tau_axis, n_max, variant, ancilla, workers)
    meta = _base_meta(args, ancilla)
    meta.update(
        eps_range={"min": _angle_meta(e_lo), "max": _angle_meta(e_hi), "steps": len(eps_axis)},
        tau_range={"min": _angle_meta(t_lo), "max": _angle_meta(t_hi), "steps": len(tau_axis)},
        n_max=n_max,
        order=args.order,
    )
    rows = [
        (float(e), float(t), float(grid.values[i, j]))
        for i, e in enumerate(grid.epsilon_axis)
        for j, t in enumerate(grid.tau_axis)
    ]
    _write(args, meta, ("epsilon", "tau", "n_blp"), rows)
    return EXIT_OK


def cmd_pair_correlations(args):
    eps_axis, e_lo, e_hi = parse_range(args.eps_range, "eps-range")
    n_max = _check_n_max(args.n_max)
    ancilla = parse_ancilla(args.ancilla)
    rows = []
    for e in eps_axis:
        for rec in pair_correlation_series(e, n_max, ancilla):
            rows.append((float(e), rec.n, rec.concurrence, rec.mutual_info_bits))
    meta = _base_meta(args, ancilla)
    meta.update(
        eps_range={"min": _angle_meta(e_lo), "max": _angle_meta(e_hi), "steps": len(eps_axis)},
        n_max=n_max,
        entropy_base=2,
    )
    _write(args, meta, ("epsilon", "n", "concurrence", "mutual_info_bits"), rows)
    return EXIT_OK


def cmd_verify(args):
    try:
        results = run_suites(args.n_max, args.seed, args.inject_fault)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    failed = [r.name for r in results if not r.ok]
    for r in results:
        status = "ok" if r.ok else "FAIL"
        print(f"{r.name:32s} max deviation {r.max_deviation:.3e} (tol {r.tolerance:.0e}) {status}")
    if failed:
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


COMMANDS = {
    "decoherence": cmd_decoherence,
    "blp-map": cmd_blp_map,
    "pair-correlations": cmd_pair_correlations,
    "verify": cmd_verify,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"corrcm: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
