"""Turn-based parity solving: anchors, attractors, strategy enumeration."""

import itertools
import random

import pytest

from bidgames.turnbased import (
    ANTAGONIST,
    PROTAGONIST,
    TurnBasedParityGame,
    attractor,
    solve_turn_based,
)


def test_validation_errors():
    with pytest.raises(ValueError, match="owner"):
        TurnBasedParityGame({"a": 3}, {"a": ("a",)}, {"a": 0})
    with pytest.raises(ValueError, match="successor"):
        TurnBasedParityGame({"a": 1}, {"a": ()}, {"a": 0})
    with pytest.raises(ValueError, match="leaves"):
        TurnBasedParityGame({"a": 1}, {"a": ("a", "b")}, {"a": 0})
    with pytest.raises(ValueError, match="priority"):
        TurnBasedParityGame({"a": 1}, {"a": ("a",)}, {})


def test_choice_anchors():
    """Each owner steers between an odd and an even absorbing node."""
    game = TurnBasedParityGame(
        owner={"win": 1, "lose": 1, "p": 1, "a": 2},
        succ={
            "win": ("win",),
            "lose": ("lose",),
            "p": ("win", "lose"),
            "a": ("win", "lose"),
        },
        priority={"win": 1, "lose": 2, "p": 0, "a": 0},
    )
    sol = solve_turn_based(game)
    assert sol.win == {"win": 1, "lose": 2, "p": 1, "a": 2}
    assert sol.strategy[PROTAGONIST]["p"] == "win"
    assert sol.strategy[ANTAGONIST]["a"] == "lose"
    assert sol.region(PROTAGONIST) == {"win", "p"}


def test_cycle_parity_decides():
    game = TurnBasedParityGame(
        owner={"a": 1, "b": 2},
        succ={"a": ("b",), "b": ("a",)},
        priority={"a": 1, "b": 2},
    )
    sol = solve_turn_based(game)
    assert sol.region(ANTAGONIST) == {"a", "b"}


def test_attractor_chain_and_choice():
    game = TurnBasedParityGame(
        owner={"a": 2, "b": 1, "t": 1, "x": 1},
        succ={"a": ("b", "x"), "b": ("t",), "t": ("t",), "x": ("x",)},
        priority={"a": 0, "b": 0, "t": 1, "x": 0},
    )
    region = set(game.nodes())
    attracted, strategy = attractor(game, region, {"t"}, PROTAGONIST)
    # the antagonist at a can escape to x, so only b and t are attracted
    assert attracted == {"b", "t"}
    assert strategy == {"b": "t"}
    attracted2, _ = attractor(game, region, {"t"}, ANTAGONIST)
    assert attracted2 == {"b", "t", "a"}


def _lasso_winner(choice, priority, start):
    seen = {}
    path = []
    cur = start
    while cur not in seen:
        seen[cur] = len(path)
        path.append(cur)
        cur = choice[cur]
    cycle = path[seen[cur]:]
    top = max(priority[v] for v in cycle)
    return PROTAGONIST if top % 2 == 1 else ANTAGONIST


def test_regions_and_strategies_against_full_enumeration():
    """The solver's strategy beats every positional reply on tiny games.

    Fixing the solver's strategy for one player and enumerating all
    positional strategies of the other, every play started inside the
    player's claimed region must fall to that player. Runs both sides,
    which independently confirms the two regions partition the nodes.
    """
    rng = random.Random(500)
    for trial in range(60):
        n = rng.randint(1, 5)
        nodes = [f"n{i}" for i in range(n)]
        owner = {v: rng.choice((PROTAGONIST, ANTAGONIST)) for v in nodes}
        succ = {
            v: tuple(rng.sample(nodes, rng.randint(1, min(2, n)))) for v in nodes
        }
        priority = {v: rng.randint(0, 3) for v in nodes}
        game = TurnBasedParityGame(owner=owner, succ=succ, priority=priority)
        sol = solve_turn_based(game)
        assert set(sol.win) == set(nodes)
        for player in (PROTAGONIST, ANTAGONIST):
            mine = sol.strategy[player]
            region = sol.region(player)
            for own_node in region:
                if owner[own_node] == player:
                    assert mine[own_node] in succ[own_node]
            other_nodes = [v for v in nodes if owner[v] != player]
            for combo in itertools.product(*(succ[v] for v in other_nodes)):
                choice = dict(zip(other_nodes, combo))
                for v in nodes:
                    if owner[v] == player:
                        choice[v] = mine.get(v, succ[v][0])
                for start in region:
                    assert _lasso_winner(choice, priority, start) == player, (
                        trial,
                        start,
                        choice,
                    )
