"""Command-line front end.

Usage:
    mixnum pair --bandwidth 480e3 --df1 30e3 --df2 15e3
    mixnum rho --nu 2 --n1 8 --m 1 --n 1 --mode discrete
    mixnum curve --nu 2,4,8 --d -4:4:0.01 --out fig3.csv
    mixnum curve --nu 2 --d -4:4:0.01 --n1 8 --out fig4.csv
    mixnum beta --n1 8,16,32,64 --d 0:4:0.05 --out fig5.csv
    mixnum subsets --nu 2 --n1 4
    mixnum matrix --nu 2 --n1 8 --mode discrete --out matrix.csv --phase
    mixnum simulate --nu 2 --n1 64 --symbols 4 --constellation qpsk --seed 42 --out report.json

Exit codes: 0 success, 2 validation error, 3 numeric-domain error, 4 IO error.
"""

from __future__ import annotations

import argparse
import sys

from . import ini, oracle, reports
from .core import make_pair, pair_from_counts
from .errors import NumericDomainError, ValidationError
from .sim import ALLOCATIONS, CONSTELLATIONS, ExperimentConfig, run_experiment

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DOMAIN = 3
EXIT_IO = 4

DEFAULT_N1 = 8


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _print(obj) -> None:
    sys.stdout.write(reports.to_json(obj) + "\n")


def cmd_pair(args) -> None:
    _print(make_pair(args.bandwidth, args.df1, args.df2).summary())


def cmd_rho(args) -> None:
    pair = pair_from_counts(args.nu, args.n1)
    if args.mode == "continuous":
        result = ini.rho_continuous(pair, args.m, args.n)
    elif args.mode == "discrete":
        result = ini.rho_discrete(pair, args.m, args.n)
    elif args.mode == "oracle":
        result = oracle.rho_continuous_quadrature(pair, args.m, args.n, tol=args.tol)
    else:
        result = oracle.rho_discrete_soe(pair, args.m, args.n)
    _print(result.as_dict())


def cmd_curve(args) -> None:
    mode = ini.CONTINUOUS if args.n1 is None else ini.DISCRETE
    spec = reports.CurveSpec(tuple(args.nu), reports.parse_range(args.d), mode, args.n1)
    reports.emit_magnitude_curve(spec, args.out)


def cmd_beta(args) -> None:
    reports.emit_beta_surface(args.n1, reports.parse_range(args.d), args.out)


def cmd_subsets(args) -> None:
    pair = pair_from_counts(args.nu, args.n1)
    _print({
        "nu": pair.nu,
        "n1": pair.n1,
        "n2": pair.n2,
        "subsets": [s.as_dict() for s in ini.orthogonal_subsets(pair)],
    })


def cmd_matrix(args) -> None:
    pair = pair_from_counts(args.nu, args.n1)
    reports.emit_matrix(ini.ini_matrix(pair, args.mode), args.out, phase=args.phase)


def cmd_simulate(args) -> None:
    config = ExperimentConfig(args.nu, args.n1, args.symbols, args.constellation,
                              args.seed, args.allocation)
    reports.write_text(args.out, reports.to_json(run_experiment(config).as_dict()))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixnum", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pair", help="validate a numerology pair and print its summary")
    p.add_argument("--bandwidth", type=float, required=True, help="system bandwidth, Hz")
    p.add_argument("--df1", type=float, required=True, help="wide subcarrier spacing, Hz")
    p.add_argument("--df2", type=float, required=True, help="narrow subcarrier spacing, Hz")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("rho", help="inner product of one subcarrier pair")
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--n1", type=int, default=DEFAULT_N1)
    p.add_argument("--m", type=int, required=True, help="wide subcarrier index")
    p.add_argument("--n", type=int, required=True, help="narrow subcarrier index")
    p.add_argument("--mode", choices=("continuous", "discrete", "oracle", "oracle-soe"),
                   default="continuous")
    p.add_argument("--tol", type=float, default=1e-11, help="quadrature tolerance (oracle mode)")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("curve", help="magnitude vs relative distance")
    p.add_argument("--nu", type=_int_list, required=True)
    p.add_argument("--d", required=True, help="start:stop:step")
    p.add_argument("--n1", type=int, default=None, help="add discrete columns for this N1")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("beta", help="discretization factor surface")
    p.add_argument("--n1", type=_int_list, required=True)
    p.add_argument("--d", required=True, help="start:stop:step")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("subsets", help="orthogonal subcarrier subsets")
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--n1", type=int, required=True)
    p.set_defaults(func=cmd_subsets)

    p = sub.add_parser("matrix", help="full INI matrix as long-form CSV")
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--mode", choices=(ini.CONTINUOUS, ini.DISCRETE), default=ini.CONTINUOUS)
    p.add_argument("--phase", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("simulate", help="end-to-end two-numerology INI experiment")
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--symbols", type=int, required=True, help="narrow-numerology symbol count K2")
    p.add_argument("--constellation", choices=CONSTELLATIONS, default="qpsk")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--allocation", choices=ALLOCATIONS, default="full")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)
    return parser


def _attach_range_values(argv: list[str]) -> list[str]:
    # "--d -4:4:0.5" would otherwise be read as an unknown flag
    out = []
    it = iter(argv)
    for token in it:
        if token == "--d":
            value = next(it, None)
            out.append(token if value is None else f"--d={value}")
        else:
            out.append(token)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_attach_range_values(argv))
    try:
        args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericDomainError as exc:
        print(f"numeric domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
