"""The averaging property, its bid recipe, and the five arithmetic identities."""

import itertools

import pytest

from bidgames.averages import (
    RecipeUndefined,
    allowed_moves,
    average_at,
    base_bid,
    check_average,
    complement_map,
    concede_only,
    enumerate_average_maps,
    recipe_summary,
    strategy_bid,
)
from bidgames.budgets import (
    TOP,
    Budget,
    add_levels,
    flip_threshold,
    sub_levels,
    succ,
    value_level,
)
from bidgames.games import make_game
from bidgames.parity import solve_frugal_parity
from conftest import corpus, literal_map

FIXA_TRUE = {"t": "2", "v0": "5", "v1": "4*", "v2": "3*"}
FIXA_OTHER = {"t": "2", "v0": "4", "v1": "3*", "v2": "3"}


def test_midpoint_on_the_solved_map(fixa):
    tmap = literal_map(FIXA_TRUE)
    for v in fixa.vertices:
        assert average_at(fixa, tmap, v) == tmap[v]
    assert check_average(fixa, tmap) == []


def test_two_maps_share_the_property(fixa):
    """The averaging property does not pin the map down."""
    assert check_average(fixa, literal_map(FIXA_TRUE)) == []
    assert check_average(fixa, literal_map(FIXA_OTHER)) == []


def test_average_violations_reported(fixa):
    wrong = literal_map(dict(FIXA_TRUE, v1="4"))
    problems = check_average(fixa, wrong)
    assert problems and all("midpoint" in p or "sink" in p for p in problems)
    bad_sink = literal_map(dict(FIXA_TRUE, t="3"))
    assert any("sink" in p for p in check_average(fixa, bad_sink))
    assert check_average(fixa, {"v0": Budget(0)})  # missing entries


def test_midpoint_counts_top_as_one_past_the_pot():
    g = make_game(k=2, vertices={"a": 1}, sinks={"s": Budget(0)},
                  edges=[("a", "a"), ("a", "s")])
    tmap = {"s": Budget(0), "a": TOP}
    # extremes are top (level 6 -> magnitude 3) and 0: midpoint level 3
    assert average_at(g, tmap, "a") == Budget(3)


def test_allowed_moves_fixa(fixa):
    tmap = literal_map(FIXA_TRUE)
    assert allowed_moves(fixa, tmap, "v0") == ("v0", "v1")
    assert allowed_moves(fixa, tmap, "v1") == ("v2",)
    assert allowed_moves(fixa, tmap, "v2") == ("t",)


def test_base_bids_fixa(fixa):
    tmap = literal_map(FIXA_TRUE)
    assert str(base_bid(fixa, tmap, "v0")) == "0"
    assert str(base_bid(fixa, tmap, "v1")) == "0*"
    assert str(base_bid(fixa, tmap, "v2")) == "1*"
    assert str(strategy_bid(fixa, tmap, "v2", Budget(7))) == "1*"
    assert str(strategy_bid(fixa, tmap, "v2", Budget(8))) == "2"


def test_recipe_undefined_cases():
    g = make_game(k=1, vertices={"a": 1}, sinks={"s": Budget(1)},
                  edges=[("a", "s"), ("a", "a")])
    shared = {"s": Budget(1), "a": Budget(1)}
    assert concede_only(g, shared, "a")
    with pytest.raises(RecipeUndefined):
        base_bid(g, shared, "a")
    assert strategy_bid(g, shared, "a", Budget(2)) == Budget(0)
    topped = {"s": Budget(1), "a": TOP}
    with pytest.raises(RecipeUndefined):
        base_bid(g, topped, "a")
    summary = recipe_summary(g, topped)
    assert summary["a"]["bid"] is None


def test_complement_map_is_pointwise_flip(fixa):
    tmap = literal_map(FIXA_TRUE)
    comp = complement_map(fixa, tmap)
    assert comp == {v: flip_threshold(t, fixa.k) for v, t in tmap.items()}
    assert complement_map(fixa, comp) == tmap


def test_enumeration_matches_brute_filter():
    for game in corpus(411, 40, max_vertices=3, max_k=2):
        vs = sorted(game.vertices)
        values = [Budget(level) for level in range(2 * game.k + 2)] + [TOP]
        brute = []
        for combo in itertools.product(values, repeat=len(vs)):
            cand = {s: game.frugal[s] for s in game.sinks}
            cand.update(dict(zip(vs, combo)))
            if not check_average(game, cand):
                brute.append(cand)
        assert list(enumerate_average_maps(game)) == brute


def _identity_checks(game, tmap, v):
    """The five arithmetic facts tying the bid recipe to the extremes."""
    k = game.k
    values = [tmap[u] for u in game.neighbors(v)]
    hi = max(values, key=lambda x: value_level(x, k))
    lo = min(values, key=lambda x: value_level(x, k))
    t = tmap[v]
    if isinstance(t, Budget) and not concede_only(game, tmap, v):
        try:
            bid = base_bid(game, tmap, v)
        except RecipeUndefined:
            return 0
        # (1)/(2): winning and paying the bid lands on the low extreme,
        # bumped to its successor when the low extreme is marked
        landed = sub_levels(t, bid)
        if isinstance(lo, Budget):
            assert landed == (succ(lo) if lo.advantage else lo), (v, tmap)
        # (3): losing a raised round still leaves the marked high magnitude
        gained = add_levels(t, succ(bid))
        assert gained.level == value_level(hi, k) // 2 * 2 + 1, (v, tmap)
        # (4): the same gap survives shifting both sides up one level
        assert sub_levels(succ(t), succ(bid)).level == landed.level, (v, tmap)
        # (5): one level above (3) when both sides gain a level
        high_line = add_levels(succ(t), succ(succ(bid)))
        assert high_line.level == gained.level + 2, (v, tmap)
        return 1
    return 0


def test_identities_on_fixa_maps(fixa):
    for raw in (FIXA_TRUE, FIXA_OTHER):
        tmap = literal_map(raw)
        checked = sum(_identity_checks(fixa, tmap, v) for v in fixa.vertices)
        assert checked == 3


def test_identities_on_generated_average_maps():
    checked = 0
    for game in corpus(412, 60, max_vertices=4, max_k=3):
        for tmap in enumerate_average_maps(game):
            for v in game.vertices:
                checked += _identity_checks(game, tmap, v)
    assert checked > 200


def test_invariant_preserving_moves_on_average_maps():
    """Winning at the base bid can always keep the budget at the map.

    From any vertex valued below top, paying the bid out of the exact map
    value still covers some allowed neighbor's value, and every allowed
    neighbor is covered after paying from one level above the map value.
    """
    for game in corpus(413, 40, max_vertices=4, max_k=3):
        for tmap in enumerate_average_maps(game):
            for v in game.vertices:
                t = tmap[v]
                if not isinstance(t, Budget) or concede_only(game, tmap, v):
                    continue
                try:
                    bid = base_bid(game, tmap, v)
                except RecipeUndefined:
                    continue
                landed = sub_levels(t, bid)
                moves = allowed_moves(game, tmap, v)
                assert moves, (v, tmap)
                best = min(value_level(tmap[u], game.k) for u in moves)
                assert landed.level >= best
                worst = max(value_level(tmap[u], game.k) for u in moves)
                assert landed.level + 1 >= worst


def test_solver_output_always_averages():
    for game in corpus(414, 60):
        tmap, _ = solve_frugal_parity(game)
        assert check_average(game, tmap) == []
