import argparse
import json
import logging
import sys
from typing import List, Optional

from kangaroo_core.exceptions import ExperimentFailed, KangarooException
from kangaroo_core.groups import MERSENNE_61, make_group
from kangaroo_core.harness import ExperimentSpec, default_workers, report_to_json, run_experiment, write_report
from kangaroo_core.solver import SolverKeys, solve
from kangaroo_core.stepset import build_step_set, distinguished_predicate
from kangaroo_core.zwalk import birthday_bounds


def configure_logging(verbose: bool = False) -> None:
    logging_level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        format='[%(asctime)s]:[%(levelname)s] - %(message)s',
        handlers=[
            logging.FileHandler("kangaroo.log"),
            logging.StreamHandler()
        ],
        level=logging_level
    )


def _add_experiment_arguments(parser: argparse.ArgumentParser, base_required: bool = False) -> None:
    parser.add_argument("--width", type=int, required=True, help="Interval width b - a")
    parser.add_argument("--trials", type=int, required=True)
    parser.add_argument("--base", type=int, default=2, required=base_required, help="Step set base n")
    parser.add_argument("--seed", type=int, required=True, help="Master seed")
    parser.add_argument("--out", required=True, help="Report path, written as <out>.json and <out>.csv")
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        help="Worker processes, defaults to the physical core count. Results do not depend on it",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Kangaroo interval discrete logarithms and walk simulations")
    parser.add_argument("--verbose", action="store_true", help="Log at debug level")
    commands = parser.add_subparsers(dest="command", required=True)

    solve_parser = commands.add_parser("solve", help="Solve g^x = h for x in [a, b]")
    solve_parser.add_argument("--kind", choices=["mul", "add"], required=True, help="Group law")
    solve_parser.add_argument("--modulus", type=int, required=True)
    solve_parser.add_argument("--generator", type=int, required=True)
    solve_parser.add_argument("--order", type=int, required=True)
    solve_parser.add_argument("--h", type=int, required=True, help="Target element residue")
    solve_parser.add_argument("--a", type=int, required=True)
    solve_parser.add_argument("--b", type=int, required=True)
    solve_parser.add_argument("--base", type=int, default=2)
    solve_parser.add_argument("--c", type=float, default=64, help="Distinguished point constant")
    solve_parser.add_argument("--seed", type=int, default=0, help="Seed for the hash keys")

    reproduce_parser = commands.add_parser("reproduce", help="Reproduce a running-time result")
    reproduce_parser.add_argument("target", choices=["theorem1"])
    _add_experiment_arguments(reproduce_parser)
    reproduce_parser.add_argument("--worst", action="store_true", help="Take x = a instead of uniform x")
    reproduce_parser.add_argument("--c", type=float, default=64)
    reproduce_parser.add_argument("--group", choices=["mul", "add"], default="mul")
    reproduce_parser.add_argument("--modulus", type=int, default=MERSENNE_61)
    reproduce_parser.add_argument("--generator", type=int, default=37)
    reproduce_parser.add_argument("--order", type=int, default=MERSENNE_61 - 1)

    simulate_parser = commands.add_parser("simulate", help="Run an intersection-time simulation")
    simulate_parser.add_argument("kind", choices=["hitting", "b-epsilon", "sandwich"])
    _add_experiment_arguments(simulate_parser, base_required=True)
    simulate_parser.add_argument("--uniform-d", type=int, default=None, help="Use the uniform step set n^0..n^d")
    simulate_parser.add_argument("--horizon", type=int, default=None, help="Truncation M for B_eps, default 64(d+1)")

    bounds_parser = commands.add_parser("bounds", help="Evaluate the lower and upper intersection bounds")
    bounds_parser.add_argument("--sbar", type=float, required=True)
    bounds_parser.add_argument("--tbar", type=float, required=True)
    bounds_parser.add_argument("--b", type=float, required=True)
    bounds_parser.add_argument("--eps", type=float, required=True)
    return parser


def _solve(args: argparse.Namespace) -> int:
    group = make_group(args.kind, args.modulus, args.generator, args.order)
    keys = SolverKeys.from_seed(args.seed)
    step_set = build_step_set(args.a, args.b, args.base)
    predicate = distinguished_predicate(args.b - args.a, args.c, keys.distinguished)
    result = solve(group, group.element(args.h), args.a, args.b, step_set, predicate, keys)
    print(json.dumps(result.to_dict(), indent=1))
    return 0


def _experiment_spec(args: argparse.Namespace) -> ExperimentSpec:
    if args.command == "reproduce":
        if args.worst:
            kind = "solve-worst"
        elif args.base != 2:
            kind = "base-n-solve"
        else:
            kind = "solve-average"
        return ExperimentSpec(
            kind=kind,
            b=args.width,
            trials=args.trials,
            master_seed=args.seed,
            base=args.base,
            c=args.c,
            group_kind=args.group,
            modulus=args.modulus,
            generator=args.generator,
            order=args.order,
            output=args.out,
        )
    return ExperimentSpec(
        kind=args.kind,
        b=args.width,
        trials=args.trials,
        master_seed=args.seed,
        base=args.base,
        uniform_d=args.uniform_d,
        horizon=args.horizon,
        output=args.out,
    )


def _experiment(args: argparse.Namespace) -> int:
    spec = _experiment_spec(args)
    workers = args.workers if args.workers is not None else default_workers()
    report = run_experiment(spec, workers=workers, progress=True)
    write_report(report, args.out)
    print(report_to_json(report), end="")
    if report.status == "failed":
        raise ExperimentFailed(len(report.failures), spec.trials)
    return 0


def _bounds(args: argparse.Namespace) -> int:
    lower, upper = birthday_bounds(args.sbar, args.tbar, args.b, args.eps)
    print(json.dumps({"lower": lower, "upper": upper}, indent=1))
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    """Runs one CLI command

    :param argv: arguments without the program name, defaults to sys.argv
    :return: 0 on success, 1 if an experiment failed, 2 on any other error
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    commands = {"solve": _solve, "reproduce": _experiment, "simulate": _experiment, "bounds": _bounds}
    try:
        return commands[args.command](args)
    except ExperimentFailed as failed:
        logging.error(failed.user_message)
        return 1
    except KangarooException as error:
        logging.error(error.user_message)
        return 2
    except ValueError as error:
        logging.error(str(error))
        return 2


if __name__ == "__main__":
    sys.exit(main())
