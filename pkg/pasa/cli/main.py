"""Command-line front end.

    pasa solve   --problem FILE [--eps ...] [--trace FILE] [--diagnostics FILE] [--json]
    pasa project --problem FILE --point "z1 z2 ..." [--json]
    pasa check   --problem FILE --point "x1 x2 ..." [--json]

Exit codes: 0 converged/success, 1 max_iter, 2 infeasible, 3 input error,
4 line-search failure.
"""

import argparse
import json
import sys

import numpy as np

from pasa.cli.problem_file import load_problem
from pasa.diagnostics import lemma_ratios
from pasa.errors import InfeasibleError, InputError, NonconvergenceError, PasaError
from pasa.measures import snapshot
from pasa.problems.suites import KnownSolution
from pasa.projection import project
from pasa.solver import PasaParams, PasaSolver, pasa_default_config
from pasa.solver.driver import CONVERGED, INFEASIBLE, LINE_SEARCH_FAILURE, MAX_ITER
from pasa.utils import add_flags_from_config, as_vector, format_number, format_vector

EXIT_SUCCESS = 0
EXIT_MAX_ITER = 1
EXIT_INFEASIBLE = 2
EXIT_INPUT_ERROR = 3
EXIT_LINE_SEARCH = 4

STATUS_EXIT_CODES = {
    CONVERGED: EXIT_SUCCESS,
    MAX_ITER: EXIT_MAX_ITER,
    INFEASIBLE: EXIT_INFEASIBLE,
    LINE_SEARCH_FAILURE: EXIT_LINE_SEARCH,
}

SOLVE_FLAGS = [
    "eps",
    "theta",
    "mu",
    "delta",
    "eta",
    "alpha",
    "gamma",
    "beta",
    "max_iter",
    "step_rule",
]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pasa", description="Polyhedral active set solver"
    )
    subparsers = parser.add_subparsers(dest="command")
    subparsers.required = True

    solve_parser = subparsers.add_parser("solve", help="minimize the objective")
    solve_parser.add_argument("--problem", required=True, help="problem file")
    add_flags_from_config(solve_parser, pasa_default_config, whitelist=SOLVE_FLAGS)
    solve_parser.add_argument("--trace", metavar="FILE", help="write the trace CSV")
    solve_parser.add_argument(
        "--diagnostics",
        metavar="FILE",
        help="write per-iterate diagnostics CSV (final iterate used as x*)",
    )

    for name, help in [
        ("project", "project a point onto the feasible set"),
        ("check", "report E, e, A(x) and U(x) at a point"),
    ]:
        sub = subparsers.add_parser(name, help=help)
        sub.add_argument("--problem", required=True, help="problem file")
        sub.add_argument("--point", required=True, help='e.g. "0.5 1"')
        if name == "check":
            add_flags_from_config(sub, pasa_default_config, whitelist=["gamma", "beta"])

    for sub in subparsers.choices.values():
        sub.add_argument("--json", action="store_true", help="print a JSON document")
        sub.add_argument("--verbose", action="store_true")
    return parser


def parse_point(text, n):
    try:
        values = [float(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"Malformed --point {text!r}.")
    return as_vector(values, n=n, name="--point")


def _overrides(args, names):
    return {k: getattr(args, k) for k in names if getattr(args, k, None) is not None}


def _print_fields(fields):
    for key, value in fields:
        print(f"{key}: {value}".rstrip())


def _format_indices(indices):
    return " ".join(str(i) for i in indices)


def cmd_solve(args, problem):
    obj, poly, x0 = problem.build()
    solver = PasaSolver(verbose=args.verbose, **_overrides(args, SOLVE_FLAGS))
    result = solver.solve(obj, poly, x0)

    if args.trace:
        result.to_frame().to_csv(args.trace, index=False)
    if args.diagnostics and result.trace:
        params = PasaParams.from_config(solver.config)
        config = params.projection_config()
        final = snapshot(obj, poly, result.x, **config)
        sol = KnownSolution.from_kkt("final_iterate", poly, result.x, final.lam)
        diag = lemma_ratios(result.trace, sol, obj, poly, trace=result.trace, **config)
        diag.to_csv(args.diagnostics)

    if args.json:
        print(json.dumps(result.to_dict(), indent=1))
    else:
        _print_fields(
            [
                ("status", result.status),
                ("x", format_vector(result.x)),
                ("f", format_number(result.f)),
                ("E", format_number(result.E)),
            ]
        )
    return STATUS_EXIT_CODES[result.status]


def cmd_project(args, problem):
    _, poly, _ = problem.build()
    z = parse_point(args.point, poly.n)
    y = project(poly, z)
    if args.json:
        doc = {
            "point": y.point.tolist(),
            "multipliers": y.multipliers.tolist(),
            "active": list(y.active_at_point),
            "iterations": y.iterations,
            "kkt_residual": y.kkt_residual,
        }
        print(json.dumps(doc, indent=1))
    else:
        _print_fields(
            [
                ("point", format_vector(y.point)),
                ("multipliers", format_vector(y.multipliers)),
                ("active", _format_indices(y.active_at_point)),
            ]
        )
    return EXIT_SUCCESS


def cmd_check(args, problem):
    obj, poly, _ = problem.build()
    x = parse_point(args.point, poly.n)
    params = PasaParams.from_config(_overrides(args, ["gamma", "beta"]))
    config = params.projection_config()
    snap = snapshot(obj, poly, x, params.gamma, params.beta, **config)
    if args.json:
        doc = {
            "f": snap.f,
            "E": snap.E,
            "e": snap.e,
            "active": list(snap.active),
            "undecided": list(snap.undecided),
            "multipliers": snap.lam.tolist(),
        }
        print(json.dumps(doc, indent=1))
    else:
        _print_fields(
            [
                ("f", format_number(snap.f)),
                ("E", format_number(snap.E)),
                ("e", format_number(snap.e)),
                ("active", _format_indices(snap.active)),
                ("undecided", _format_indices(snap.undecided)),
            ]
        )
    return EXIT_SUCCESS


COMMANDS = {"solve": cmd_solve, "project": cmd_project, "check": cmd_check}


def run_cli(argv=None):
    """Runs one command and returns its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors, which is our infeasible code
        return EXIT_SUCCESS if e.code == 0 else EXIT_INPUT_ERROR

    try:
        problem = load_problem(args.problem)
        return COMMANDS[args.command](args, problem)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except InfeasibleError as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except NonconvergenceError as e:
        print(f"max_iter: {e}", file=sys.stderr)
        return EXIT_MAX_ITER
    except PasaError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def main():
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
