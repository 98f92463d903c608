#!/usr/bin/env python3
"""Pretty-print the solver's work on a game file, one table row per step.

Shows the per-sweep threshold maps for reachability/safety games and the
forbid/survive/revisit rounds of the descent for parity games, with a
change marker against the previous row.
"""

from __future__ import annotations

import argparse
import sys

from bidgames.budgets import format_value
from bidgames.games import load_game
from bidgames.parity import DescentTrace
from bidgames.reachability import IterationTrace
from bidgames.parity import solve_frugal_parity


def _cell(tmap: dict, vid: str) -> str:
    return format_value(tmap[vid]) if vid in tmap else "."


def _table(rows: list[tuple[str, dict]], ids: list[str]) -> str:
    head = ["step"] + ids
    cells = [[label] + [_cell(tmap, v) for v in ids] for label, tmap in rows]
    widths = [
        max(len(head[c]), *(len(r[c]) + 1 for r in cells)) for c in range(len(head))
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(head, widths))]
    prev: dict = {}
    for label, tmap in rows:
        row = [label.ljust(widths[0])]
        for c, v in enumerate(ids, start=1):
            text = _cell(tmap, v)
            if v in tmap and v in prev and prev[v] != tmap[v]:
                text += "!"
            row.append(text.ljust(widths[c]))
        lines.append("  ".join(row))
        prev = dict(prev, **tmap)
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("game", help="path to a .game file")
    args = parser.parse_args(argv)

    game = load_game(args.game)
    tmap, trace = solve_frugal_parity(game)
    ids = sorted(game.all_ids)

    if isinstance(trace, IterationTrace):
        print(f"value iteration, {trace.sweeps} changing sweeps")
        rows = [(str(i), row) for i, row in enumerate(trace.rows)]
        print(_table(rows, ids))
    elif isinstance(trace, DescentTrace):
        kind = "descent (dualized)" if trace.dualized else "descent"
        print(f"{kind}, high set {{{', '.join(trace.high_set)}}}")
        rows = []
        for i, rnd in enumerate(trace.rounds):
            rows.append((f"{i} forbid", rnd.forbid))
            rows.append((f"{i} survive", rnd.survive))
            rows.append((f"{i} revisit", rnd.revisit))
        rows.append(("final", trace.final))
        print(_table(rows, ids))
    else:
        print("single fixed point, no trace")

    print()
    print("thresholds:")
    for vid in ids:
        print(f"  {vid} {format_value(tmap[vid])}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
