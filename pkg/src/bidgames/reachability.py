"""Threshold solvers for frugal reachability and frugal safety.

Reachability thresholds are the greatest fixed point of the averaging
recurrence: start every non-sink at TOP (sinks at their frugal value) and
repeatedly replace each non-sink value with the midpoint of its neighbors,
one full sweep at a time, always reading the previous sweep's values. The
sequence is pointwise non-increasing and each changing sweep lowers some
level by at least one, so it stabilizes within |V| * (2k + 2) changing
sweeps.

Safety is reachability for the opponent: solve the dualized game and flip
the resulting map pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .averages import average_at, check_average
from .budgets import flip_threshold, value_level
from .games import BiddingGame, ThresholdMap, dualize


@dataclass
class IterationTrace:
    """Successive threshold maps, first row the start, last two rows equal."""

    rows: list[ThresholdMap] = field(default_factory=list)

    @property
    def sweeps(self) -> int:
        """Number of sweeps that changed at least one value."""
        changing = 0
        for before, after in zip(self.rows, self.rows[1:]):
            if before != after:
                changing += 1
        return changing


def sweep_once(game: BiddingGame, tmap: ThresholdMap) -> ThresholdMap:
    """One full update pass, every vertex read from the same input map."""
    updated = dict(tmap)
    for v in game.vertices:
        updated[v] = average_at(game, tmap, v)
    return updated


def solve_frugal_reachability(
    game: BiddingGame,
) -> tuple[ThresholdMap, IterationTrace]:
    """Thresholds for a game whose infinite plays all lose for player 1.

    Expects every priority to be even (the normalized reachability shape;
    the parity solver also calls this on subgames it builds that way).
    """
    for v in game.vertices:
        assert game.priority[v] % 2 == 0, (
            f"reachability solver needs even priorities, {v} has {game.priority[v]}"
        )
    from .budgets import TOP

    current: ThresholdMap = {v: TOP for v in game.vertices}
    current.update(game.frugal)
    trace = IterationTrace(rows=[dict(current)])
    bound = len(game.vertices) * (2 * game.k + 2)
    while True:
        after = sweep_once(game, current)
        trace.rows.append(dict(after))
        for v in game.vertices:
            assert value_level(after[v], game.k) <= value_level(current[v], game.k), (
                f"midpoint sweep increased {v}: {current[v]} -> {after[v]}"
            )
        if after == current:
            break
        current = after
        assert trace.sweeps <= bound, (
            f"sweep count {trace.sweeps} exceeded bound {bound}"
        )
    violations = check_average(game, current)
    assert not violations, f"fixed point breaks the averaging property: {violations}"
    return current, trace


def solve_frugal_safety(game: BiddingGame) -> tuple[ThresholdMap, IterationTrace]:
    """Thresholds for a game whose infinite plays all win for player 1.

    Expects every priority to be odd. Solved through the opponent's eyes:
    dualize (which makes every priority even), solve reachability there,
    and flip the resulting map back pointwise. The returned trace is the
    dual run's trace flipped rowwise, so viewed primally it starts at 0 on
    the non-sinks and climbs, ending with two equal rows.
    """
    for v in game.vertices:
        assert game.priority[v] % 2 == 1, (
            f"safety solver needs odd priorities, {v} has {game.priority[v]}"
        )
    dual = dualize(game)
    dual_map, dual_trace = solve_frugal_reachability(dual)
    flipped = IterationTrace(
        rows=[
            {vid: flip_threshold(val, game.k) for vid, val in row.items()}
            for row in dual_trace.rows
        ]
    )
    result = {vid: flip_threshold(val, game.k) for vid, val in dual_map.items()}
    violations = check_average(game, result)
    assert not violations, f"flipped safety map breaks the averaging property: {violations}"
    return result, flipped
