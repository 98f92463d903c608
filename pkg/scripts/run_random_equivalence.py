#!/usr/bin/env python3
"""Random-corpus agreement run: iterative solver vs explicit-game oracle.

For every seeded game the solver map must match the brute-force oracle
(which itself checks both bid-reveal orders), certify as Verified, and,
with --mutants, every other map satisfying the averaging property must be
rejected by the certifier.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from bidgames.averages import enumerate_average_maps
from bidgames.certify import certify
from bidgames.generate import random_game
from bidgames.oracle import OracleCapExceeded, oracle_thresholds
from bidgames.parity import solve_frugal_parity


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--games", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-vertices", type=int, default=5)
    parser.add_argument("--max-k", type=int, default=5)
    parser.add_argument("--max-priority", type=int, default=3)
    parser.add_argument("--max-sinks", type=int, default=2)
    parser.add_argument(
        "--mutants",
        action="store_true",
        help="also reject every non-truth map with the averaging property",
    )
    args = parser.parse_args(argv)

    rng = random.Random(args.seed)
    start = time.time()
    skipped = 0
    maps_seen = 0
    for i in range(args.games):
        game = random_game(
            rng,
            max_vertices=args.max_vertices,
            max_k=args.max_k,
            max_priority=args.max_priority,
            max_sinks=args.max_sinks,
        )
        try:
            truth = oracle_thresholds(game)
        except OracleCapExceeded as exc:
            print(f"game {i}: skipped ({exc})")
            skipped += 1
            continue
        solved, _ = solve_frugal_parity(game)
        if solved != truth:
            print(f"game {i}: solver disagrees with oracle")
            print(f"  solver: { {v: str(t) for v, t in sorted(solved.items())} }")
            print(f"  oracle: { {v: str(t) for v, t in sorted(truth.items())} }")
            return 1
        report = certify(game, solved)
        if not report.verified:
            print(f"game {i}: true map rejected: {report.describe()}")
            return 1
        if args.mutants:
            for cand in enumerate_average_maps(game):
                maps_seen += 1
                verdict = certify(game, cand)
                if verdict.verified != (cand == truth):
                    shown = {v: str(t) for v, t in sorted(cand.items())}
                    print(f"game {i}: wrong verdict {verdict.describe()} for {shown}")
                    return 1
        if (i + 1) % 50 == 0:
            print(f"  {i + 1}/{args.games} games, {time.time() - start:.1f}s")

    extra = f", {maps_seen} average maps checked" if args.mutants else ""
    print(
        f"ok: {args.games - skipped} games agree ({skipped} over the oracle cap)"
        f"{extra}, {time.time() - start:.1f}s"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
