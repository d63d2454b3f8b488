"""Command-line front end.

Subcommands: canonicalize, equiv, derive, prob-check, value-fn, infer.
Exit status 0 on success, 1 on a verification failure (games found
inequivalent, a rewrite or derivation rejected, an impostor measure), and
2 on input or usage errors.  All rationals are printed exactly as "p/q";
the single floating-point quantity is printed with 12 significant digits
and labeled "approx".
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .derivation import Precision, derive_value
from .errors import (
    DomainMismatchError,
    InvalidGameError,
    QGamesError,
    SchemaError,
)
from .exact import format_rational, parse_rational
from .games import canonicalize, validate_game
from .equivalence import equivalent
from .inference import (
    RepeatedMeasurement,
    acceptance_weight,
    branch_weight,
    gaussian_approx,
    strategy_eu,
)
from .probability import power_set_events, uniqueness_search, weight_measure
from .serialize import load_game, load_measurement
from .valuefn import build_value, integer_oracle, money_oracle


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgames",
        description="Exact calculus for branching-measurement betting games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_canon = sub.add_parser("canonicalize", help="print a game's canonical form")
    p_canon.add_argument("game", help="game JSON file")

    p_equiv = sub.add_parser("equiv", help="decide whether two games are equivalent")
    p_equiv.add_argument("game_a", help="first game JSON file")
    p_equiv.add_argument("game_b", help="second game JSON file")

    p_derive = sub.add_parser("derive", help="derive a game's value with a checked trace")
    p_derive.add_argument("game", help="game JSON file")
    p_derive.add_argument(
        "--epsilon", type=_rational_arg, default=Fraction(1, 1000),
        help="sandwich tolerance as p/q (default 1/1000)",
    )
    p_derive.add_argument("--trace-out", help="write the derivation trace JSON here")

    p_prob = sub.add_parser(
        "prob-check", help="verify the probability representation for a measurement"
    )
    p_prob.add_argument("measurement", help="measurement JSON file (state + observable)")
    p_prob.add_argument(
        "--bound", type=int, default=12, help="denominator bound for the search (default 12)"
    )

    p_value = sub.add_parser("value-fn", help="bracket a value ratio from a built-in oracle")
    p_value.add_argument(
        "--oracle", choices=("integers", "money"), default="integers",
        help="built-in preference oracle",
    )
    p_value.add_argument("--target", required=True, help="element to value (integer or p/q)")
    p_value.add_argument("--unit", default="1", help="unit element (default 1)")
    p_value.add_argument("--depth", type=int, default=12, help="bisection depth (default 12)")

    p_infer = sub.add_parser(
        "infer", help="exact frequency-betting computations for repeated measurements"
    )
    p_infer.add_argument("--n", type=int, required=True, help="number of repetitions")
    p_infer.add_argument("--p", type=_rational_arg, required=True, help="weight of outcome 0")
    p_infer.add_argument("--x", type=_rational_arg, required=True, help="payoff on outcome 0")
    p_infer.add_argument("--y", type=_rational_arg, required=True, help="payoff on outcome 1")
    p_infer.add_argument(
        "--epsilon", type=_rational_arg, default=Fraction(0), help="hedge threshold"
    )
    p_infer.add_argument(
        "--sweep", help="comma-separated list of n values for a convergence table"
    )
    return parser


def _load_game_checked(path: str):
    g = load_game(path)
    validate_game(g)
    return g


def _cmd_canonicalize(args) -> int:
    cg = canonicalize(_load_game_checked(args.game))
    print(json.dumps({"branches": cg.to_jsonable()}, indent=2))
    return 0


def _cmd_equiv(args) -> int:
    a = _load_game_checked(args.game_a)
    b = _load_game_checked(args.game_b)
    if equivalent(a, b):
        print("EQUIVALENT")
        return 0
    print("NOT EQUIVALENT")
    return 1


def _cmd_derive(args) -> int:
    g = _load_game_checked(args.game)
    (lower, upper), trace = derive_value(g, Precision(args.epsilon))
    print(f"value = {format_rational(lower)}")
    print(f"interval = [{format_rational(lower)}, {format_rational(upper)}]")
    if args.trace_out:
        with open(args.trace_out, "w", encoding="utf-8") as fh:
            json.dump(trace.to_jsonable(), fh, indent=2)
            fh.write("\n")
        print(f"trace written to {args.trace_out}")
    return 0


def _cmd_prob_check(args) -> int:
    m = load_measurement(args.measurement)
    outcomes = m.occurring_spectrum()
    print("occurring outcomes and weights:")
    for x in outcomes:
        print(f"  {format_rational(x)}: weight {format_rational(m.weight_of(x))}")
    singles = sorted(
        ((m.weight_of(x), format_rational(x)) for x in outcomes)
    )
    chain = " < ".join(
        "{" + name + "}" + f" ({format_rational(w)})" for w, name in singles
    )
    print(f"qualitative order on singletons: {chain}")
    events = power_set_events(m)
    print(f"events checked: {len(events)}")

    report = uniqueness_search(m, args.bound)
    print(f"candidates tested: {report.candidates_tested}")
    print(
        f"order-isomorphic within the measurement: "
        f"{len(report.measures) + len(report.within_measurement)}"
    )
    if not report.conclusive:
        print(f"INCONCLUSIVE: {report.note}")
        return 0
    expected = weight_measure(m)
    if len(report.measures) == 1 and report.measures[0] == expected:
        print("UNIQUE: the branch-weight measure is the only representing measure")
        return 0
    print("FAILURE: representing measures other than the weights survived")
    for cand in report.measures:
        print(f"  impostor: {json.dumps(cand.to_jsonable())}")
    return 1


def _cmd_value_fn(args) -> int:
    if args.oracle == "integers":
        oracle = integer_oracle()
        target = int(args.target)
        unit = int(args.unit)
    else:
        oracle = money_oracle()
        target = parse_rational(args.target)
        unit = parse_rational(args.unit)
    cut = build_value(oracle, unit, target, args.depth)
    print(f"value ratio in [{format_rational(cut.lower)}, {format_rational(cut.upper)}]")
    print(f"width = {format_rational(cut.width())}")
    return 0


def _cmd_infer(args) -> int:
    if args.sweep:
        try:
            ns = [int(part) for part in args.sweep.split(",") if part.strip()]
        except ValueError as exc:
            raise SchemaError(f"--sweep expects integers: {exc}") from None
        print("n exact_eu approx |difference| (approx)")
        for n in ns:
            rm = RepeatedMeasurement(n, args.p, args.x, args.y, args.epsilon)
            eu = strategy_eu(rm)
            approx = gaussian_approx(rm)
            diff = abs(float(eu) - approx)
            print(f"{n} {format_rational(eu)} {approx:.12g} {diff:.12g}")
        return 0
    rm = RepeatedMeasurement(args.n, args.p, args.x, args.y, args.epsilon)
    print("m weight")
    for m in range(rm.n + 1):
        print(f"{m} {format_rational(branch_weight(rm.n, m, rm.p))}")
    print(f"acceptance weight = {format_rational(acceptance_weight(rm))}")
    print(f"exact EU = {format_rational(strategy_eu(rm))}")
    if 0 < rm.p < 1:
        print(f"gaussian EU = {gaussian_approx(rm):.12g} (approx)")
    else:
        print("gaussian EU undefined at p in {0, 1}")
    return 0


_COMMANDS = {
    "canonicalize": _cmd_canonicalize,
    "equiv": _cmd_equiv,
    "derive": _cmd_derive,
    "prob-check": _cmd_prob_check,
    "value-fn": _cmd_value_fn,
    "infer": _cmd_infer,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(
            f"error: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
            file=sys.stderr,
        )
        return 2
    except (SchemaError, InvalidGameError, DomainMismatchError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QGamesError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
