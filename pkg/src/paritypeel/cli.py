"""Command-line front end.

Exit codes: 0 success, 2 unreadable or malformed input, 3 solver made no
progress or an internal invariant failed, 4 oracle mismatch or falsified claim.
"""

from __future__ import annotations

import argparse
import sys

from paritypeel.dominion import compute_dominion_attractor, format_trace
from paritypeel.errors import (
    BadId,
    DanglingSuccessor,
    DeadEnd,
    DuplicateVertex,
    EmptyGame,
    NoProgress,
    ParityGameError,
    PGSolverSyntaxError,
    TooLarge,
)
from paritypeel.game import GameView, remove_self_loops
from paritypeel.generators import GenConfig, family_game, random_game
from paritypeel.harness import DiffConfig, bench, difftest, format_bench, missed_minimal_dominions, oracle_partition
from paritypeel.pgformat import Convention, convert_convention, export_dot, parse_pgsolver, serialize_pgsolver
from paritypeel.solver import solve

EXIT_OK, EXIT_PARSE, EXIT_INTERNAL, EXIT_MISMATCH = 0, 2, 3, 4
PARSE_ERRORS = (PGSolverSyntaxError, DanglingSuccessor, DuplicateVertex, EmptyGame, DeadEnd, BadId)


def _range(text):
    lo, _, hi = text.partition(":")
    lo = int(lo)
    hi = int(hi) if hi else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _sizes(text):
    return [int(s) for s in text.split(",") if s]


def _load(path, convention="min"):
    with open(path) as fh:
        text = fh.read()
    return parse_pgsolver(text, Convention(convention))


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _fmt(game, vertices):
    return ",".join(str(v) for v in sorted(game.external_id(v) for v in vertices))


def cmd_solve(args):
    game = _load(args.file, args.convention)
    try:
        result = solve(game, check_claims=args.check_claims, keep_removals=bool(args.trace) or args.check_claims)
    except NoProgress as exc:
        print(f"error: {exc}")
        print(f"residual: {_fmt(game, exc.origin)}")
        sys.stdout.write(exc.residual)
        return EXIT_INTERNAL
    p = result.partition
    print(f"even: {_fmt(game, p.even)}".rstrip())
    print(f"odd: {_fmt(game, p.odd)}".rstrip())
    print("stats:")
    for line in result.stats.lines():
        print(f"  {line}")
    status = EXIT_OK
    if args.check_claims:
        for f in result.falsified:
            print(f"claim {f.claim}: FALSIFIED {f.explanation}")
            status = EXIT_MISMATCH
        for player, dom, region in missed_minimal_dominions(game):
            print(f"claim MissedMinimalDominion: FALSIFIED {player} dominion {_fmt(game, dom)} "
                  f"not inside attractor {_fmt(game, region) or '-'}")
            status = EXIT_MISMATCH
    if args.oracle != "none":
        expected, name = oracle_partition(game, args.oracle)
        if expected == p:
            print(f"oracle {name}: MATCH")
        else:
            print(f"oracle {name}: MISMATCH on {_fmt(game, p.disagreement(expected))}")
            status = EXIT_MISMATCH
    if args.trace:
        _write(args.trace, result.trace_text())
    if args.dot:
        _write(args.dot, export_dot(game, p))
    return status


def cmd_trace(args):
    game = _load(args.file, args.convention)
    if args.priority is None:
        try:
            result = solve(game, keep_removals=True)
        except NoProgress as exc:
            sys.stdout.write(exc.trace)
            print(f"error: {exc}")
            return EXIT_INTERNAL
        sys.stdout.write(result.trace_text())
        return EXIT_OK
    pre = remove_self_loops(game)
    if pre.residual is None:
        print("error: no vertex survives self-loop removal")
        return EXIT_INTERNAL
    trace = compute_dominion_attractor(GameView.full(pre.residual), args.priority)
    print(format_trace(trace, 0, pre.origin))
    return EXIT_OK


def cmd_difftest(args):
    cfg = DiffConfig(
        seed=args.seed,
        count=args.count,
        n_range=args.n_range,
        deg_range=args.deg_range,
        max_priority=args.max_priority,
        self_loops=args.self_loops,
        minimize=args.minimize,
        oracle=args.oracle,
    )
    summary = difftest(cfg, out=args.out, workers=args.workers)
    print(summary.line())
    print(summary.claims_line())
    return summary.exit_code


def cmd_bench(args):
    rows = bench(args.sizes, args.repeat, args.family, args.deg, args.max_priority, args.seed)
    print(format_bench(rows))
    return EXIT_OK


def cmd_gen(args):
    if args.family:
        game = family_game(args.family, args.size)
    else:
        game = random_game(GenConfig(args.n, args.deg, args.max_priority, args.seed, args.self_loops))
    _write(args.output, serialize_pgsolver(game))
    return EXIT_OK


def cmd_convert(args):
    game = _load(args.file)
    source, target = Convention(args.source), Convention(args.target)
    if source != target:
        game = convert_convention(game, source, target)
    _write(args.output, serialize_pgsolver(game))
    return EXIT_OK


def cmd_dot(args):
    game = _load(args.file, args.convention)
    partition = solve(game).partition if args.solve else None
    _write(args.output, export_dot(game, partition))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paritypeel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a PGSolver game with the peeling solver")
    p.add_argument("file")
    p.add_argument("--convention", choices=["min", "max"], default="min")
    p.add_argument("--oracle", choices=["zielonka", "brute", "none"], default="none")
    p.add_argument("--check-claims", action="store_true",
                   help="check every removal and the minimal-dominion containment")
    p.add_argument("--trace", metavar="PATH", help="write the dominion-attractor trace ('-' for stdout)")
    p.add_argument("--dot", metavar="PATH", help="write a DOT rendering with winner colors")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("trace", help="print dominion-attractor traces")
    p.add_argument("file")
    p.add_argument("-d", "--priority", type=int, help="single call at this priority instead of a full solve")
    p.add_argument("--convention", choices=["min", "max"], default="min")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("difftest", help="differential test against the reference solvers")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n-range", type=_range, default=(4, 8))
    p.add_argument("--deg-range", type=_range, default=(1, 3))
    p.add_argument("--max-priority", type=int, default=6)
    p.add_argument("--self-loops", action="store_true")
    p.add_argument("--minimize", action="store_true")
    p.add_argument("--oracle", choices=["auto", "brute", "zielonka"], default="auto",
                   help="auto picks brute force up to 8 vertices, Zielonka above")
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_difftest)

    p = sub.add_parser("bench", help="time the solver over growing games")
    p.add_argument("--family", choices=["two_cycle", "chain_of_cycles", "complete_bipartite"])
    p.add_argument("--sizes", type=_sizes, default=[100, 200, 400])
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--deg", type=_range, default=(1, 4))
    p.add_argument("--max-priority", type=int, default=8)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="generate a game")
    p.add_argument("--family", choices=["two_cycle", "chain_of_cycles", "complete_bipartite"])
    p.add_argument("--size", type=int, default=1)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--deg", type=_range, default=(1, 3))
    p.add_argument("--max-priority", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--self-loops", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("convert", help="convert between min- and max-parity priorities")
    p.add_argument("file")
    p.add_argument("--from", dest="source", choices=["min", "max"], default="max")
    p.add_argument("--to", dest="target", choices=["min", "max"], default="min")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("dot", help="export a game to Graphviz")
    p.add_argument("file")
    p.add_argument("--convention", choices=["min", "max"], default="min")
    p.add_argument("--solve", action="store_true", help="color the winning regions")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PARSE_ERRORS as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ParityGameError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
