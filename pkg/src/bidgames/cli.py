"""Command-line driver: solve, verify, oracle, decide, play, serve.

Exit codes are scriptable: 0 for solved/verified/true, 1 for
rejected/false, 2 for input errors or a refused computation. All output
is deterministic for a fixed input; the oracle command prints thresholds
in exactly the format of solve so the two can be diffed.
"""

from __future__ import annotations

import argparse
import os
import sys

from .budgets import Budget, BudgetError, format_value, parse_value
from .certify import CandidateRejected, certify, decide_threshold
from .engine import ActionHalf, IllegalBid, new_session, step
from .games import GameFormatError, load_game, load_threshold_map
from .oracle import OracleCapExceeded, oracle_thresholds
from .parity import DescentTrace, solve_frugal_parity
from .reachability import IterationTrace

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT = 2


def _fail(message: str) -> int:
    print(message, file=sys.stderr)
    return EXIT_INPUT


def _format_map(values: dict) -> str:
    return " ".join(f"{vid}={format_value(values[vid])}" for vid in sorted(values))


def _print_thresholds(tmap: dict) -> None:
    for vid in sorted(tmap):
        print(f"{vid} {format_value(tmap[vid])}")


def _print_trace(trace: DescentTrace | IterationTrace | None) -> None:
    if trace is None:
        return
    if isinstance(trace, IterationTrace):
        for i, row in enumerate(trace.rows):
            print(f"sweep {i}: {_format_map(row)}")
        return
    print(f"high {' '.join(sorted(trace.high_set))}")
    for i, r in enumerate(trace.rounds):
        print(f"round {i} forbid {_format_map(r.forbid)}")
        print(f"round {i} survive {_format_map(r.survive)}")
        print(f"round {i} revisit {_format_map(r.revisit)}")
    print(f"final {_format_map(trace.final)}")


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        game = load_game(args.game)
    except GameFormatError as exc:
        return _fail(f"invalid game: {exc}")
    tmap, trace = solve_frugal_parity(game)
    if args.trace:
        _print_trace(trace)
    _print_thresholds(tmap)
    if args.certify:
        report = certify(game, tmap)
        print(f"certification {report.describe()}")
        if not report.verified:
            return EXIT_REJECTED
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        game = load_game(args.game)
        candidate = load_threshold_map(args.candidate, game)
    except GameFormatError as exc:
        return _fail(f"invalid input: {exc}")
    report = certify(game, candidate)
    print(report.describe())
    return EXIT_OK if report.verified else EXIT_REJECTED


def cmd_oracle(args: argparse.Namespace) -> int:
    try:
        game = load_game(args.game)
    except GameFormatError as exc:
        return _fail(f"invalid game: {exc}")
    try:
        tmap = oracle_thresholds(game, max_states=args.max_states)
    except OracleCapExceeded as exc:
        return _fail(f"refused: {exc}")
    _print_thresholds(tmap)
    return EXIT_OK


def cmd_decide(args: argparse.Namespace) -> int:
    try:
        game = load_game(args.game)
        level = parse_value(args.level)
        candidate = (
            load_threshold_map(args.candidate, game) if args.candidate else None
        )
    except (GameFormatError, BudgetError) as exc:
        return _fail(f"invalid input: {exc}")
    try:
        answer = decide_threshold(game, args.vertex, level, candidate=candidate)
    except CandidateRejected as exc:
        return _fail(str(exc))
    except ValueError as exc:
        return _fail(str(exc))
    print("true" if answer else "false")
    return EXIT_OK if answer else EXIT_REJECTED


def _describe_round(record, human_side: int) -> str:
    b1, b2 = record.bids
    who = "you" if record.winner == human_side else "engine"
    mark = " using the advantage" if record.advantage_used else ""
    return (
        f"round {record.round}: p1 bid {format_value(b1)}, p2 bid {format_value(b2)}; "
        f"{who} won{mark} and moved to {record.next_vertex}"
    )


def cmd_play(args: argparse.Namespace) -> int:
    try:
        game = load_game(args.game)
    except GameFormatError as exc:
        return _fail(f"invalid game: {exc}")
    human = args.side
    engine_side = 3 - human
    start = args.start
    if start is None:
        start = min(game.vertices) if game.vertices else min(game.sinks)
    budget_text = args.p1_budget
    if budget_text is None:
        budget_text = str(Budget.of(game.k))
    try:
        p1 = parse_value(budget_text)
        if not isinstance(p1, Budget):
            return _fail("player 1 budget must be a concrete budget, not top")
        session = new_session(
            game, human_side=human, start=start, p1_budget=p1, horizon=args.horizon
        )
    except (BudgetError, ValueError) as exc:
        return _fail(str(exc))
    brain = session.brains[engine_side]
    own = session.budget_of(engine_side)
    threshold = brain.tmap[session.vertex] if session.vertex in brain.tmap else None
    print(f"you play player {human}; the engine plays player {engine_side}")
    print(
        f"engine strategy: {brain.label}"
        + (
            f" (budget {format_value(own)} vs threshold "
            f"{format_value(threshold)} at {session.vertex})"
            if threshold is not None
            else ""
        )
    )
    while not session.over:
        you = session.budget_of(human)
        other = session.budget_of(engine_side)
        print(
            f"token at {session.vertex}; your budget {format_value(you)}, "
            f"engine budget {format_value(other)}"
        )
        print(f"moves from {session.vertex}: {' '.join(game.neighbors(session.vertex))}")
        try:
            line = input("bid and move> ")
        except EOFError:
            print("bye")
            return EXIT_OK
        parts = line.split()
        if len(parts) != 2:
            print("enter a bid literal and a vertex, e.g.: 0* v1")
            continue
        try:
            bid = parse_value(parts[0])
            if not isinstance(bid, Budget):
                print("illegal bid: top is not biddable")
                continue
            record = step(session, ActionHalf(bid=bid, move=parts[1]))
        except IllegalBid as exc:
            print(f"illegal bid: {exc.reason}")
            continue
        except BudgetError as exc:
            print(f"illegal bid: {exc}")
            continue
        print(_describe_round(record, human))
    outcome = session.outcome
    assert outcome is not None
    final = "you win" if outcome.winner == human else "engine wins"
    extra = " (provisional, horizon reached)" if outcome.provisional else ""
    print(f"play over: player {outcome.winner} wins - {final}{extra}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import build_app

    store = args.store or os.environ.get("BIDGAMES_STORE") or ".bidgames-store"
    port = args.port or int(os.environ.get("BIDGAMES_PORT", "8000"))
    app = build_app(store)
    uvicorn.run(app, host="127.0.0.1", port=port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bidgames",
        description="solve, certify and play graph games with bidding",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute threshold budgets")
    p.add_argument("game")
    p.add_argument("--trace", action="store_true", help="print iteration tables")
    p.add_argument("--certify", action="store_true", help="certify the output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="certify a candidate threshold map")
    p.add_argument("game")
    p.add_argument("candidate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force thresholds on the explicit game")
    p.add_argument("game")
    p.add_argument("--max-states", type=int, default=200_000)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("decide", help="is the threshold at a vertex at least a value")
    p.add_argument("game")
    p.add_argument("vertex")
    p.add_argument("level")
    p.add_argument("--candidate", help="certified candidate map to answer from")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("play", help="interactive play against the engine")
    p.add_argument("game")
    p.add_argument("--as", dest="side", type=int, choices=(1, 2), required=True)
    p.add_argument("--start")
    p.add_argument("--p1-budget", default=None)
    p.add_argument("--horizon", type=int, default=64)
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--store", default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
