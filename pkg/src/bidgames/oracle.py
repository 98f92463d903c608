"""Ground-truth thresholds by brute force over the explicit state space.

The bidding game is unrolled into a finite turn-based game over
configurations (vertex, budget level). One player commits a full action
(bid plus move-on-win) first; the other responds seeing it; the bidding
resolves deterministically. Committing first is a disadvantage at most,
and determinacy says it does not matter: the oracle builds the game twice,
once per reveal order, and insists the two agree.

No pruning: both players range over every legal bid and every neighbor.
This is exponential in the budget's bit width and exists to validate the
polynomial solvers on small instances. Games whose explicit arena exceeds
the state cap are refused, never truncated.
"""

from __future__ import annotations

from .budgets import TOP, Budget, Value, value_level
from .games import BiddingGame, ThresholdMap
from .turnbased import (
    ANTAGONIST,
    PROTAGONIST,
    Node,
    TurnBasedParityGame,
    solve_turn_based,
)

DEFAULT_STATE_CAP = 200_000

REVEAL_ORDERS = ("p1_first", "p2_first")


class OracleCapExceeded(RuntimeError):
    def __init__(self, required: int, cap: int):
        super().__init__(
            f"explicit arena needs more than {cap} states "
            f"(at least {required}); raise the cap to force it"
        )
        self.required = required
        self.cap = cap


def legal_bid_levels(side: int, p1_level: int, k: int) -> list[int]:
    """All bid levels open to one side at a given player-1 budget level.

    A level-odd bid stakes the advantage, so it is legal only for the side
    currently holding it: player 1 holds it iff its own level is odd.
    """
    if side == 1:
        ceiling = p1_level
        holder = p1_level % 2 == 1
    else:
        ceiling = 2 * k + 1 - p1_level
        holder = p1_level % 2 == 0
    return [b for b in range(ceiling + 1) if b % 2 == 0 or holder]


def resolve_bids(
    p1_level: int,
    p1_action: tuple[int, str],
    p2_action: tuple[int, str],
) -> tuple[int, str, int]:
    """Outcome of simultaneous actions: (winner, next vertex, next level).

    Strictly higher bid level wins. Equal levels can only be two unmarked
    bids, and the holder of the advantage declined to stake it, so the
    non-holder takes the tie. The winner pays its bid: player 1's level
    drops by its own bid, or rises by player 2's.
    """
    bid1, move1 = p1_action
    bid2, move2 = p2_action
    if bid1 > bid2:
        winner = 1
    elif bid2 > bid1:
        winner = 2
    else:
        winner = 1 if p1_level % 2 == 0 else 2
    if winner == 1:
        return 1, move1, p1_level - bid1
    return 2, move2, p1_level + bid2


def build_explicit_game(
    game: BiddingGame, reveal: str, max_states: int = DEFAULT_STATE_CAP
) -> TurnBasedParityGame:
    """The sequentialized arena for one reveal order.

    Nodes: ("cfg", v, level) for every vertex and budget level, and
    ("mid", v, level, bid, move) for every committed first action. Sink
    configurations absorb with priority 1 when the level meets the frugal
    requirement and 0 when it does not; response nodes are neutral
    (priority 0); other configurations inherit the vertex priority.
    """
    assert reveal in REVEAL_ORDERS, f"unknown reveal order {reveal!r}"
    k = game.k
    levels = range(2 * k + 2)
    first = 1 if reveal == "p1_first" else 2
    second = 2 if reveal == "p1_first" else 1
    owner_of = {1: PROTAGONIST, 2: ANTAGONIST}

    owner: dict[Node, int] = {}
    succ: dict[Node, tuple[Node, ...]] = {}
    priority: dict[Node, int] = {}
    count = 0

    def admit(n: int) -> None:
        nonlocal count
        count += n
        if count > max_states:
            raise OracleCapExceeded(count, max_states)

    for s in game.sinks:
        need = value_level(game.frugal[s], k)
        for lvl in levels:
            node = ("cfg", s, lvl)
            admit(1)
            owner[node] = PROTAGONIST
            succ[node] = (node,)
            priority[node] = 1 if lvl >= need else 0

    for v in game.vertices:
        moves = game.neighbors(v)
        for lvl in levels:
            cfg = ("cfg", v, lvl)
            admit(1)
            owner[cfg] = owner_of[first]
            priority[cfg] = game.priority[v]
            mids = []
            for bid in legal_bid_levels(first, lvl, k):
                for move in moves:
                    mid = ("mid", v, lvl, bid, move)
                    admit(1)
                    mids.append(mid)
                    owner[mid] = owner_of[second]
                    priority[mid] = 0
                    outcomes = []
                    for rbid in legal_bid_levels(second, lvl, k):
                        for rmove in moves:
                            if first == 1:
                                _, nxt, nlvl = resolve_bids(
                                    lvl, (bid, move), (rbid, rmove)
                                )
                            else:
                                _, nxt, nlvl = resolve_bids(
                                    lvl, (rbid, rmove), (bid, move)
                                )
                            outcomes.append(("cfg", nxt, nlvl))
                    succ[mid] = tuple(dict.fromkeys(outcomes))
            succ[cfg] = tuple(mids)
    return TurnBasedParityGame(owner=owner, succ=succ, priority=priority)


def _thresholds_one_order(
    game: BiddingGame, reveal: str, max_states: int
) -> ThresholdMap:
    explicit = build_explicit_game(game, reveal, max_states)
    solution = solve_turn_based(explicit)
    thresholds: ThresholdMap = {}
    for vid in game.all_ids:
        winning = [
            lvl
            for lvl in range(2 * game.k + 2)
            if solution.win[("cfg", vid, lvl)] == PROTAGONIST
        ]
        for lo, hi in zip(winning, winning[1:]):
            assert hi == lo + 1, f"winning levels not upward closed at {vid}"
        if winning:
            assert winning[-1] == 2 * game.k + 1, (
                f"winning region at {vid} does not include the full pot"
            )
            thresholds[vid] = Budget(winning[0])
        else:
            thresholds[vid] = TOP
    return thresholds


def oracle_thresholds(
    game: BiddingGame, max_states: int = DEFAULT_STATE_CAP
) -> ThresholdMap:
    """Least winning budget per vertex, brute-forced, both reveal orders."""
    first = _thresholds_one_order(game, "p1_first", max_states)
    second = _thresholds_one_order(game, "p2_first", max_states)
    assert first == second, (
        "reveal orders disagree: "
        + str(
            {
                vid: (str(first[vid]), str(second[vid]))
                for vid in first
                if first[vid] != second[vid]
            }
        )
    )
    return first


def oracle_value(game: BiddingGame, vertex: str, budget: Value) -> bool:
    """Does player 1 win from this configuration? Convenience wrapper."""
    if isinstance(budget, Budget) and budget.level > 2 * game.k + 1:
        raise ValueError(f"budget {budget} does not fit pot k={game.k}")
    thresholds = oracle_thresholds(game)
    need = thresholds[vertex]
    return value_level(budget, game.k) >= value_level(need, game.k)
