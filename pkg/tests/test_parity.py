"""The descent solver for full parity objectives: traces, duals, bounds."""

import pytest

from bidgames.averages import complement_map
from bidgames.budgets import TOP, Budget, value_level
from bidgames.games import dualize, make_game, normalize_objective, shift_priorities
from bidgames.oracle import oracle_thresholds
from bidgames.parity import (
    DescentTrace,
    bounded_threshold,
    solve_cobuchi,
    solve_frugal_parity,
)
from bidgames.reachability import IterationTrace
from conftest import corpus, literal_map


def test_fixb_descent_computed_trace(fixb):
    """Three descent rounds, then a fixed point at zero everywhere.

    The round-0 survive value at v0 is 3 (not 2*): with the revisit of t
    forbidden outright, v0's only move goes to v2, and the brute-force
    oracle on the survive subgame confirms that 2* loses there while 3
    wins. The remaining survive values are 3* and 4*.
    """
    tmap, trace = solve_frugal_parity(fixb)
    assert tmap == {vid: Budget(0) for vid in fixb.all_ids}
    assert isinstance(trace, DescentTrace)
    assert trace.high_set == ("t",)
    assert not trace.dualized
    assert len(trace.rounds) == 3
    r0, r1, r2 = trace.rounds
    assert r0.forbid == {"t": TOP}
    assert r0.survive == literal_map({"v0": "3", "v1": "3*", "v2": "4*"})
    assert r0.revisit == literal_map({"t": "3*"})
    assert r1.forbid == literal_map({"t": "3*"})
    assert r1.survive == literal_map({"v0": "0", "v1": "0*", "v2": "1*"})
    assert r1.revisit == literal_map({"t": "0*"})
    assert r2.forbid == literal_map({"t": "0*"})
    assert r2.survive == literal_map({"v0": "0", "v1": "0", "v2": "0"})
    assert r2.revisit == literal_map({"t": "0"})
    assert trace.final == tmap


def test_fixb_oracle_agreement(fixb):
    tmap, _ = solve_frugal_parity(fixb)
    assert tmap == oracle_thresholds(fixb)


def test_solve_cobuchi_matches_parity_dispatch(fixb):
    direct, trace = solve_cobuchi(fixb)
    routed, _ = solve_frugal_parity(fixb)
    assert direct == routed
    assert isinstance(trace, DescentTrace)


def test_bounded_visits_anchors(fixb):
    """Thresholds for at most i paid visits to the high vertex.

    Values follow the descent rounds: with zero visits allowed the high
    vertex is priced top and the rest matches round 0's survive map; each
    extra allowed visit advances one round; from two visits on, the maps
    sit at the true thresholds (all zero).
    """
    assert bounded_threshold(fixb, 0) == literal_map(
        {"t": "top", "v0": "3", "v1": "3*", "v2": "4*"}
    )
    assert bounded_threshold(fixb, 1) == literal_map(
        {"t": "0*", "v0": "0", "v1": "0*", "v2": "1*"}
    )
    final = literal_map({"t": "0", "v0": "0", "v1": "0", "v2": "0"})
    assert bounded_threshold(fixb, 2) == final
    assert bounded_threshold(fixb, 3) == final


def test_bounded_visits_monotone(fixb):
    previous = None
    for visits in range(4):
        tmap = bounded_threshold(fixb, visits)
        if previous is not None:
            for vid, value in tmap.items():
                assert value_level(value, fixb.k) <= value_level(
                    previous[vid], fixb.k
                )
        previous = tmap


def test_bounded_visits_domain(fixb, zugzwang):
    with pytest.raises(ValueError, match="visit bound"):
        bounded_threshold(fixb, -1)
    with pytest.raises(ValueError, match="even"):
        bounded_threshold(zugzwang, 0)


def test_dispatch_shapes(fixa, fixb):
    _, reach_trace = solve_frugal_parity(fixa)
    assert isinstance(reach_trace, IterationTrace)
    _, cobuchi_trace = solve_frugal_parity(fixb)
    assert isinstance(cobuchi_trace, DescentTrace)
    assert not cobuchi_trace.dualized
    safety = normalize_objective(fixa, "safety")
    _, safety_trace = solve_frugal_parity(safety)
    assert isinstance(safety_trace, IterationTrace)
    buchi = make_game(k=2, vertices={"a": 1, "b": 0}, sinks={},
                      edges=[("a", "b"), ("b", "a"), ("a", "a")])
    _, buchi_trace = solve_frugal_parity(buchi)
    assert isinstance(buchi_trace, DescentTrace)
    assert buchi_trace.dualized


def test_buchi_matches_oracle():
    buchi = make_game(k=2, vertices={"a": 1, "b": 0}, sinks={},
                      edges=[("a", "b"), ("b", "a"), ("a", "a")])
    tmap, _ = solve_frugal_parity(buchi)
    assert tmap == oracle_thresholds(buchi)


def test_priority_shift_invariance():
    for game in corpus(431, 40, max_vertices=4, max_k=3):
        base, _ = solve_frugal_parity(game)
        shifted, _ = solve_frugal_parity(shift_priorities(game, 2))
        assert shifted == base


def test_dual_game_solves_to_the_complement():
    """Determinacy in map form: the dual side's thresholds are the flips."""
    for game in corpus(432, 40, max_vertices=4, max_k=3):
        tmap, _ = solve_frugal_parity(game)
        dual_map, _ = solve_frugal_parity(dualize(game))
        assert dual_map == complement_map(game, tmap)


def test_zugzwang_thresholds(zugzwang):
    tmap, _ = solve_frugal_parity(zugzwang)
    assert tmap == {vid: Budget(2) for vid in zugzwang.all_ids}
    assert tmap == oracle_thresholds(zugzwang)
