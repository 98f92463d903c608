"""Threshold solvers for parity objectives via layered descent.

The general solver peels off the highest priority d. When d is even, the
set F of d-vertices is hostile territory that player 1 may only visit
finitely often "for free": the solver alternates two subgame solves, a
survive game on the remaining vertices where entering F is priced by a
requirement map, and a leave game on F where stepping back out is priced by
the survive game's thresholds. The price map starts at TOP (F forbidden
outright) and only falls; the alternation stops when the survive
thresholds repeat. When d is odd the same procedure runs on the dualized
game and the answer flips back.

Co-Buchi games (every priority odd except one even top value) are the
two-priority instance of the descent where every survive game is a pure
safety game; they get a dedicated entry point that exposes the round table.

The round table also yields budget-bounded thresholds: the round-i entry
prices plays that pay for at most i visits to the top even layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .averages import check_average
from .budgets import TOP, Value, value_level
from .games import BiddingGame, ThresholdMap, dualize, make_game
from .reachability import (
    IterationTrace,
    solve_frugal_reachability,
    solve_frugal_safety,
)
from .budgets import flip_threshold


@dataclass
class DescentRound:
    forbid: dict[str, Value]
    survive: ThresholdMap
    revisit: dict[str, Value]


@dataclass
class DescentTrace:
    high_set: tuple[str, ...]
    rounds: list[DescentRound] = field(default_factory=list)
    final: ThresholdMap = field(default_factory=dict)
    dualized: bool = False


def _avoid_subgame(
    game: BiddingGame, high: set[str], forbid: dict[str, Value]
) -> BiddingGame:
    """The survive game: high-priority vertices become priced sinks."""
    vertices = {v: game.priority[v] for v in game.vertices if v not in high}
    sinks: dict[str, Value] = dict(game.frugal)
    for u in high:
        sinks[u] = forbid[u]
    edges = [(a, b) for a, b in game.edges if a not in high]
    return make_game(k=game.k, vertices=vertices, sinks=sinks, edges=edges)


def _leave_subgame(
    game: BiddingGame, high: set[str], border: ThresholdMap
) -> BiddingGame:
    """The leave game: reach the priced border from inside the high set."""
    vertices = {u: 2 for u in high}
    sinks: dict[str, Value] = dict(game.frugal)
    for v in game.vertices:
        if v not in high:
            sinks[v] = border[v]
    edges = [(a, b) for a, b in game.edges if a in high]
    return make_game(k=game.k, vertices=vertices, sinks=sinks, edges=edges)


def _combine(
    game: BiddingGame,
    high: set[str],
    survive: ThresholdMap,
    on_high: dict[str, Value],
) -> ThresholdMap:
    combined: ThresholdMap = dict(game.frugal)
    for v in game.vertices:
        combined[v] = on_high[v] if v in high else survive[v]
    return combined


def _pointwise_at_most(
    after: dict[str, Value], before: dict[str, Value], k: int
) -> bool:
    return all(
        value_level(after[key], k) <= value_level(before[key], k) for key in after
    )


def _even_descent(game: BiddingGame) -> tuple[ThresholdMap, DescentTrace]:
    top = max(game.priority[v] for v in game.vertices)
    assert top % 2 == 0, f"descent needs an even top priority, got {top}"
    high = {v for v in game.vertices if game.priority[v] == top}
    trace = DescentTrace(high_set=tuple(sorted(high)))
    forbid: dict[str, Value] = {u: TOP for u in high}
    previous_survive: ThresholdMap | None = None
    bound = len(high) * (2 * game.k + 2) + 2
    while True:
        survive_full, _ = solve_frugal_parity(_avoid_subgame(game, high, forbid))
        survive = {v: survive_full[v] for v in game.vertices if v not in high}
        if previous_survive is not None and survive == previous_survive:
            break
        revisit_full, _ = solve_frugal_reachability(_leave_subgame(game, high, survive))
        revisit = {u: revisit_full[u] for u in high}
        if trace.rounds:
            last = trace.rounds[-1]
            assert _pointwise_at_most(survive, last.survive, game.k), (
                "survive thresholds went up between rounds"
            )
            assert _pointwise_at_most(revisit, last.revisit, game.k), (
                "revisit thresholds went up between rounds"
            )
        trace.rounds.append(
            DescentRound(forbid=dict(forbid), survive=survive, revisit=revisit)
        )
        assert len(trace.rounds) <= bound, (
            f"descent ran {len(trace.rounds)} rounds, bound is {bound}"
        )
        previous_survive = survive
        forbid = revisit
    last = trace.rounds[-1]
    final = _combine(game, high, last.survive, last.revisit)
    violations = check_average(game, final)
    assert not violations, f"descent result breaks the averaging property: {violations}"
    trace.final = final
    return final, trace


def solve_cobuchi(game: BiddingGame) -> tuple[ThresholdMap, DescentTrace]:
    """Thresholds for the two-priority shape: odd everywhere, even on top.

    Player 1 wins an infinite play iff it eventually avoids the even-top
    set. Wrapper around the descent that checks the shape first.
    """
    assert game.vertices, "co-buchi solver needs at least one non-sink"
    top = max(game.priority[v] for v in game.vertices)
    assert top % 2 == 0, f"co-buchi shape needs an even top priority, got {top}"
    for v in game.vertices:
        p = game.priority[v]
        assert p == top or p % 2 == 1, (
            f"co-buchi shape allows odd priorities below the top, {v} has {p}"
        )
    return _even_descent(game)


def solve_frugal_parity(
    game: BiddingGame,
) -> tuple[ThresholdMap, DescentTrace | IterationTrace | None]:
    """Thresholds for an arbitrary priority assignment."""
    if not game.vertices:
        return dict(game.frugal), None
    parities = {game.priority[v] % 2 for v in game.vertices}
    if parities == {0}:
        return solve_frugal_reachability(game)
    if parities == {1}:
        return solve_frugal_safety(game)
    top = max(game.priority[v] for v in game.vertices)
    if top % 2 == 0:
        return _even_descent(game)
    final_dual, trace_dual = solve_frugal_parity(dualize(game))
    final = {vid: flip_threshold(val, game.k) for vid, val in final_dual.items()}
    violations = check_average(game, final)
    assert not violations, f"flipped result breaks the averaging property: {violations}"
    trace = _flip_trace(trace_dual, game.k) if trace_dual is not None else None
    if isinstance(trace, DescentTrace):
        trace.final = final
        trace.dualized = True
    return final, trace


def _flip_trace(
    trace: DescentTrace | IterationTrace, k: int
) -> DescentTrace | IterationTrace:
    def flip_map(values: dict[str, Value]) -> dict[str, Value]:
        return {vid: flip_threshold(val, k) for vid, val in values.items()}

    if isinstance(trace, IterationTrace):
        return IterationTrace(rows=[flip_map(row) for row in trace.rows])
    return DescentTrace(
        high_set=trace.high_set,
        rounds=[
            DescentRound(
                forbid=flip_map(r.forbid),
                survive=flip_map(r.survive),
                revisit=flip_map(r.revisit),
            )
            for r in trace.rounds
        ],
        final=flip_map(trace.final),
        dualized=True,
    )


def bounded_threshold(game: BiddingGame, visits: int) -> ThresholdMap:
    """Thresholds when player 1 may pay for at most `visits` entries into
    the top even-priority layer.

    Entry 0 prices that layer at TOP outright; entry i pairs the round-i
    survive thresholds with the round-i revisit prices. Past the fixed
    point the entries equal the unbounded thresholds. Defined for games
    whose top priority is even.
    """
    if visits < 0:
        raise ValueError(f"visit bound must be non-negative, got {visits}")
    if not game.vertices:
        return dict(game.frugal)
    top = max(game.priority[v] for v in game.vertices)
    if top % 2 != 0:
        raise ValueError(
            "bounded thresholds are defined for games whose top priority is even"
        )
    final, trace = _even_descent(game)
    high = set(trace.high_set)
    entries: list[ThresholdMap] = []
    for index, rnd in enumerate(trace.rounds):
        on_high = rnd.forbid if index == 0 else rnd.revisit
        entries.append(_combine(game, high, rnd.survive, on_high))
    if entries[-1] != final:
        entries.append(final)
    for before, after in zip(entries, entries[1:]):
        assert _pointwise_at_most(after, before, game.k), (
            "bounded thresholds must fall as the visit budget grows"
        )
    return entries[min(visits, len(entries) - 1)]
