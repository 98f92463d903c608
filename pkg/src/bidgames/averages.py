"""The averaging recurrence on threshold maps and the play recipe it induces.

A map T from vertices to budget values satisfies the local averaging
property when at every non-sink v, T(v) is the "discrete midpoint" of the
extreme neighbor values: with a = |max T(N(v))| and b = |min T(N(v))|
(counting TOP as magnitude k+1), the midpoint has level a + b, bumped by
one when the minimum carries the advantage mark, and clamps to TOP past k*.

Any map with that property yields a recipe for player 1: a base bid sized
to half the gap between the extremes, and a set of allowed vertices to move
to on winning, chosen so the budget invariant "current budget stays at or
above T(current vertex)" survives both bidding outcomes.
"""

from __future__ import annotations

from .budgets import (
    TOP,
    Budget,
    BudgetError,
    TopValue,
    Value,
    add_levels,
    pred,
    succ,
    sub_levels,
    top_level,
    value_level,
)
from .games import BiddingGame, ThresholdMap


class RecipeUndefined(BudgetError):
    """The bid recipe has no defined value at this vertex."""


def _extremes(game: BiddingGame, tmap: ThresholdMap, v: str) -> tuple[Value, Value]:
    values = [tmap[u] for u in game.neighbors(v)]
    hi = max(values, key=lambda x: value_level(x, game.k))
    lo = min(values, key=lambda x: value_level(x, game.k))
    return hi, lo


def average_at(game: BiddingGame, tmap: ThresholdMap, v: str) -> Value:
    """The discrete midpoint of the extreme neighbor values at v."""
    hi, lo = _extremes(game, tmap, v)
    hi_mag = value_level(hi, game.k) // 2
    lo_mag = value_level(lo, game.k) // 2
    lo_marked = isinstance(lo, Budget) and lo.advantage
    level = hi_mag + lo_mag + (1 if lo_marked else 0)
    if level >= top_level(game.k):
        return TOP
    return Budget(level)


def check_average(game: BiddingGame, tmap: ThresholdMap) -> list[str]:
    """All vertices where the map breaks the averaging property.

    Sinks must match their frugal requirement exactly; every non-sink must
    equal the midpoint of its neighbors. Returns a report, empty when the
    map qualifies.
    """
    problems: list[str] = []
    missing = [vid for vid in game.all_ids if vid not in tmap]
    if missing:
        return [f"map missing entries for {missing}"]
    for s in game.sinks:
        if tmap[s] != game.frugal[s]:
            problems.append(
                f"sink {s}: value {tmap[s]} does not match required {game.frugal[s]}"
            )
    for v in game.vertices:
        want = average_at(game, tmap, v)
        if tmap[v] != want:
            problems.append(f"vertex {v}: value {tmap[v]} is not the midpoint {want}")
    return problems


def enumerate_average_maps(game: BiddingGame, values: list[Value] | None = None):
    """Yield every map with the averaging property, sinks pinned to frugal.

    Walks per-vertex assignments depth first in a fixed order and abandons
    a branch as soon as some vertex with all successors assigned misses its
    midpoint. A pruned branch can never recover (the midpoint at a vertex
    depends only on values already fixed), so the walk yields exactly the
    maps check_average accepts while touching a small fraction of the full
    product space.
    """
    vs = sorted(game.vertices)
    if values is None:
        values = [Budget(level) for level in range(2 * game.k + 2)] + [TOP]
    order = {v: i for i, v in enumerate(vs)}
    ready_at: dict[int, list[str]] = {}
    for w in vs:
        depths = [order[w]] + [order[u] for u in game.neighbors(w) if u in order]
        ready_at.setdefault(max(depths), []).append(w)
    cand: ThresholdMap = {s: game.frugal[s] for s in game.sinks}

    def walk(i: int):
        if i == len(vs):
            yield dict(cand)
            return
        v = vs[i]
        for val in values:
            cand[v] = val
            if all(
                cand[w] == average_at(game, cand, w) for w in ready_at.get(i, ())
            ):
                yield from walk(i + 1)
        del cand[v]

    yield from walk(0)


def complement_map(game: BiddingGame, tmap: ThresholdMap) -> ThresholdMap:
    """Player 2's matching thresholds: the pointwise flip of the map."""
    from .budgets import flip_threshold

    return {vid: flip_threshold(val, game.k) for vid, val in tmap.items()}


def allowed_moves(game: BiddingGame, tmap: ThresholdMap, v: str) -> tuple[str, ...]:
    """Neighbors player 1 may move to after winning the bidding at v.

    With m the minimum neighbor value: exactly the m-valued neighbors when
    m is unmarked, and the neighbors valued at most succ(m) when m is
    marked. Winning pays the base bid, which lands the budget exactly on
    the chosen neighbor's threshold or its successor.
    """
    _, lo = _extremes(game, tmap, v)
    if isinstance(lo, TopValue):
        return game.neighbors(v)
    if lo.advantage:
        cap = succ(lo)
        return tuple(
            u
            for u in game.neighbors(v)
            if value_level(tmap[u], game.k) <= cap.level
        )
    return tuple(u for u in game.neighbors(v) if tmap[u] == lo)


def concede_only(game: BiddingGame, tmap: ThresholdMap, v: str) -> bool:
    """True when every neighbor shares one advantage-marked value.

    The midpoint then equals that shared value and the base-bid formula
    bottoms out below zero: there is no bid that both can win and preserves
    the invariant. The recipe degenerates to bidding nothing and relying on
    the opponent overpaying.
    """
    hi, lo = _extremes(game, tmap, v)
    return (
        isinstance(hi, Budget)
        and isinstance(lo, Budget)
        and hi == lo
        and lo.advantage
    )


def base_bid(game: BiddingGame, tmap: ThresholdMap, v: str) -> Budget:
    """The gap-halving bid at v for a map with the averaging property.

    Undefined (raises) at vertices whose own value is TOP and at
    concede-only vertices; callers test concede_only() first.
    """
    hi, lo = _extremes(game, tmap, v)
    if isinstance(tmap[v], TopValue):
        raise RecipeUndefined(f"no bid recipe at {v}: vertex value is top")
    hi_mag = value_level(hi, game.k) // 2
    lo_mag = value_level(lo, game.k) // 2
    half = (hi_mag - lo_mag) // 2
    parity_even = (hi_mag + lo_mag) % 2 == 0
    lo_marked = isinstance(lo, Budget) and lo.advantage
    if parity_even and not lo_marked:
        return Budget.of(half)
    if not parity_even and lo_marked:
        return Budget.of(half)
    if parity_even and lo_marked:
        if half == 0:
            raise RecipeUndefined(
                f"no bid recipe at {v}: all neighbors share the marked value {lo}"
            )
        return pred(Budget.of(half))
    return succ(Budget.of(half))


def strategy_bid(game: BiddingGame, tmap: ThresholdMap, v: str, budget: Budget) -> Budget:
    """The bid actually placed when holding this budget at v.

    The base bid, adjusted by one level when its advantage mark disagrees
    with the budget's (a player can only stake an advantage it holds, and
    with the mark in hand the marked variant is the cheaper stake). At
    concede-only vertices the recipe bids zero.
    """
    if concede_only(game, tmap, v):
        return Budget(0)
    base = base_bid(game, tmap, v)
    if base.advantage == budget.advantage:
        return base
    return succ(base)


def recipe_summary(game: BiddingGame, tmap: ThresholdMap) -> dict[str, dict]:
    """Bid and allowed moves per non-sink vertex, for display and logs."""
    summary: dict[str, dict] = {}
    for v in game.vertices:
        entry: dict = {"allowed": list(allowed_moves(game, tmap, v))}
        if isinstance(tmap[v], TopValue):
            entry["bid"] = None
        elif concede_only(game, tmap, v):
            entry["bid"] = "0"
            entry["concede_only"] = True
        else:
            entry["bid"] = str(base_bid(game, tmap, v))
        summary[v] = entry
    return summary
