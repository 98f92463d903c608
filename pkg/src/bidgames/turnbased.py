"""Turn-based parity games: model, attractors, and a Zielonka-style solver.

Two players alternate no turns here; each node belongs to one player, who
picks the outgoing edge. The protagonist (player 1) wins an infinite play
iff the maximum priority visited infinitely often is odd. Every node must
have at least one successor; absorbing outcomes are modeled as self-loops
(odd priority where the protagonist wins, even where the antagonist does).

The solver returns both winning regions and one positional strategy per
player on its own region. The recursion is unrolled onto an explicit stack
so large game graphs do not exhaust the interpreter stack, and two common
single-purpose shapes (pure reachability, pure safety) are dispatched to a
single attractor computation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable

Node = Hashable

PROTAGONIST = 1
ANTAGONIST = 2


@dataclass
class TurnBasedParityGame:
    owner: dict[Node, int]
    succ: dict[Node, tuple[Node, ...]]
    priority: dict[Node, int]
    _pred: dict[Node, tuple[Node, ...]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        for node, owner in self.owner.items():
            if owner not in (PROTAGONIST, ANTAGONIST):
                raise ValueError(f"node {node!r} has bad owner {owner!r}")
            if not self.succ.get(node):
                raise ValueError(f"node {node!r} has no successor")
            if node not in self.priority:
                raise ValueError(f"node {node!r} has no priority")
        preds: dict[Node, list[Node]] = {node: [] for node in self.owner}
        for node, targets in self.succ.items():
            for target in targets:
                if target not in self.owner:
                    raise ValueError(f"edge {node!r}->{target!r} leaves the game")
                preds[target].append(node)
        self._pred = {node: tuple(ps) for node, ps in preds.items()}

    def nodes(self) -> Iterable[Node]:
        return self.owner.keys()

    def preds(self, node: Node) -> tuple[Node, ...]:
        return self._pred[node]


@dataclass
class TurnBasedSolution:
    win: dict[Node, int]
    strategy: dict[int, dict[Node, Node]]

    def region(self, player: int) -> set[Node]:
        return {node for node, owner in self.win.items() if owner == player}


def attractor(
    game: TurnBasedParityGame,
    region: set[Node],
    target: set[Node],
    player: int,
) -> tuple[set[Node], dict[Node, Node]]:
    """Nodes in region from which player can force reaching target.

    Also returns the forcing edge for each attracted node the player owns;
    targets themselves get no strategy entry.
    """
    attracted = set(target)
    queue = deque(target)
    strategy: dict[Node, Node] = {}
    remaining: dict[Node, int] = {}
    while queue:
        current = queue.popleft()
        for prev in game.preds(current):
            if prev not in region or prev in attracted:
                continue
            if game.owner[prev] == player:
                attracted.add(prev)
                strategy[prev] = current
                queue.append(prev)
            else:
                if prev not in remaining:
                    remaining[prev] = sum(
                        1 for nxt in game.succ[prev] if nxt in region
                    )
                remaining[prev] -= 1
                if remaining[prev] == 0:
                    attracted.add(prev)
                    queue.append(prev)
    return attracted, strategy


def _absorbing(game: TurnBasedParityGame, node: Node) -> bool:
    return all(nxt == node for nxt in game.succ[node])


def _single_purpose_shape(game: TurnBasedParityGame) -> int | None:
    """Detect games decided by one attractor: returns the decisive parity.

    When every odd-priority node is absorbing, any play avoiding them sees
    only even priorities forever, so the protagonist wins exactly the
    attractor of the odd absorbing nodes (a reachability game). Dually for
    even absorbing nodes (a safety game). Returns the parity whose nodes
    are all absorbing, or None when neither holds.
    """
    odd_absorbing = True
    even_absorbing = True
    for node, prio in game.priority.items():
        if not _absorbing(game, node):
            if prio % 2 == 1:
                odd_absorbing = False
            else:
                even_absorbing = False
            if not odd_absorbing and not even_absorbing:
                return None
    return 1 if odd_absorbing else 0


def _solve_single_purpose(game: TurnBasedParityGame, q: int) -> TurnBasedSolution:
    nodes = set(game.nodes())
    targets = {n for n in nodes if game.priority[n] % 2 == q}
    seeker = PROTAGONIST if q == 1 else ANTAGONIST
    keeper = ANTAGONIST if seeker == PROTAGONIST else PROTAGONIST
    reach, reach_strategy = attractor(game, nodes, targets, seeker)
    win: dict[Node, int] = {}
    keep_strategy: dict[Node, Node] = {}
    for node in nodes:
        if node in reach:
            win[node] = seeker
        else:
            win[node] = keeper
            if game.owner[node] == keeper:
                for nxt in game.succ[node]:
                    if nxt not in reach:
                        keep_strategy[node] = nxt
                        break
    for node in targets:
        if game.owner[node] == seeker:
            reach_strategy.setdefault(node, game.succ[node][0])
    strategies = {
        seeker: {n: s for n, s in reach_strategy.items() if win[n] == seeker},
        keeper: keep_strategy,
    }
    return TurnBasedSolution(win=win, strategy=strategies)


def solve_turn_based(game: TurnBasedParityGame) -> TurnBasedSolution:
    """Winning regions and positional strategies for both players."""
    q = _single_purpose_shape(game)
    if q is not None:
        return _solve_single_purpose(game, q)
    win, strat1, strat2 = _zielonka(game)
    return TurnBasedSolution(win=win, strategy={PROTAGONIST: strat1, ANTAGONIST: strat2})


def _zielonka(
    game: TurnBasedParityGame,
) -> tuple[dict[Node, int], dict[Node, Node], dict[Node, Node]]:
    # Explicit-stack unrolling of the classical recursion. Each frame solves
    # one region; phases mark how far it has progressed past its child calls.
    result_win: dict[Node, int] = {}
    result_strategy = {PROTAGONIST: {}, ANTAGONIST: {}}

    Frame = dict
    root: Frame = {"region": frozenset(game.nodes()), "phase": 0}
    stack = [root]
    returned: tuple[set[Node], set[Node], dict, dict] | None = None

    def empty_result():
        return (set(), set(), {}, {})

    while stack:
        frame = stack[-1]
        region: frozenset = frame["region"]
        if frame["phase"] == 0:
            if not region:
                returned = empty_result()
                stack.pop()
                continue
            top = max(game.priority[n] for n in region)
            player = PROTAGONIST if top % 2 == 1 else ANTAGONIST
            targets = {n for n in region if game.priority[n] == top}
            area, to_targets = attractor(game, set(region), targets, player)
            frame.update(
                player=player,
                targets=targets,
                area=area,
                to_targets=to_targets,
                phase=1,
            )
            stack.append({"region": frozenset(region - area), "phase": 0})
            continue
        if frame["phase"] == 1:
            assert returned is not None
            sub_win1, sub_win2, sub_s1, sub_s2 = returned
            player = frame["player"]
            opponent = ANTAGONIST if player == PROTAGONIST else PROTAGONIST
            opp_region = sub_win2 if opponent == ANTAGONIST else sub_win1
            if not opp_region:
                # player sweeps the whole region
                own_region = set(region)
                strategy = dict(sub_s1 if player == PROTAGONIST else sub_s2)
                strategy.update(frame["to_targets"])
                for node in frame["targets"]:
                    if game.owner[node] == player and node not in strategy:
                        strategy[node] = next(
                            nxt for nxt in game.succ[node] if nxt in region
                        )
                other = dict(sub_s2 if player == PROTAGONIST else sub_s1)
                if player == PROTAGONIST:
                    returned = (own_region, set(), strategy, other)
                else:
                    returned = (set(), own_region, other, strategy)
                stack.pop()
                continue
            escape, to_opp = attractor(game, set(region), opp_region, opponent)
            frame.update(
                opp_first=opp_region,
                opp_first_strategy=dict(sub_s1 if opponent == PROTAGONIST else sub_s2),
                escape=escape,
                to_opp=to_opp,
                phase=2,
            )
            stack.append({"region": frozenset(region - escape), "phase": 0})
            continue
        # phase 2: second child done
        assert returned is not None
        sub_win1, sub_win2, sub_s1, sub_s2 = returned
        player = frame["player"]
        opponent = ANTAGONIST if player == PROTAGONIST else PROTAGONIST
        opp_total = (sub_win2 if opponent == ANTAGONIST else sub_win1) | frame["escape"]
        player_total = sub_win1 if player == PROTAGONIST else sub_win2
        opp_strategy = dict(sub_s2 if opponent == ANTAGONIST else sub_s1)
        opp_strategy.update(frame["to_opp"])
        opp_strategy.update(frame["opp_first_strategy"])
        player_strategy = dict(sub_s1 if player == PROTAGONIST else sub_s2)
        if player == PROTAGONIST:
            returned = (player_total, opp_total, player_strategy, opp_strategy)
        else:
            returned = (opp_total, player_total, opp_strategy, player_strategy)
        stack.pop()

    assert returned is not None
    win1, win2, strat1, strat2 = returned
    for node in win1:
        result_win[node] = PROTAGONIST
    for node in win2:
        result_win[node] = ANTAGONIST
    result_strategy[PROTAGONIST] = {n: s for n, s in strat1.items() if n in win1}
    result_strategy[ANTAGONIST] = {n: s for n, s in strat2.items() if n in win2}
    return result_win, result_strategy[PROTAGONIST], result_strategy[ANTAGONIST]
