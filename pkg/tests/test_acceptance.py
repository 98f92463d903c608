"""End-to-end acceptance: the headline behaviors, one test per criterion.

Every expected value in this file was either computed by an independent
route inside this repository (brute-force oracle, exhaustive enumeration,
bounded solvers) or is part of the externally supplied reference data the
suite was asked to match. One entry of that reference data disagrees with
every independent computation we can run; criterion 3 therefore stays red
on purpose and its docstring explains exactly why. Weakening that test
would hide a real discrepancy.
"""

import random
import time

import pytest

from bidgames.averages import check_average, enumerate_average_maps
from bidgames.budgets import (
    TOP,
    Budget,
    flip_threshold,
    format_value,
    opponent_budget,
    value_level,
)
from bidgames.certify import certify, extract_strategy
from bidgames.engine import prepare
from bidgames.games import normalize_objective
from bidgames.generate import random_game
from bidgames.oracle import oracle_thresholds
from bidgames.parity import DescentTrace, solve_frugal_parity
from bidgames.reachability import (
    IterationTrace,
    solve_frugal_reachability,
    solve_frugal_safety,
)
from conftest import lit, literal_map
from test_averages import _identity_checks
from test_engine import play_certified_vs_random

CORPUS_SEED = 20260814
CORPUS_SIZE = 200

_truth_cache: dict[int, dict] = {}


@pytest.fixture(scope="module")
def corpus_games():
    rng = random.Random(CORPUS_SEED)
    return [random_game(rng) for _ in range(CORPUS_SIZE)]


def oracle_truth(index: int, game) -> dict:
    if index not in _truth_cache:
        _truth_cache[index] = oracle_thresholds(game)
    return _truth_cache[index]


def test_criterion_1_bundled_reachability_thresholds(fixa):
    started = time.perf_counter()
    tmap, _ = solve_frugal_parity(fixa)
    elapsed = time.perf_counter() - started
    assert tmap == literal_map({"v0": "5", "v1": "4*", "v2": "3*", "t": "2"})
    assert elapsed < 1.0


def test_criterion_2_averaging_is_ambiguous_certification_is_not(fixa):
    started = time.perf_counter()
    true_map = literal_map({"v0": "5", "v1": "4*", "v2": "3*", "t": "2"})
    low_map = literal_map({"v0": "4", "v1": "3*", "v2": "3", "t": "2"})
    assert check_average(fixa, true_map) == []
    assert check_average(fixa, low_map) == []
    assert certify(fixa, low_map).describe() == "RejectedUpper at v0"
    assert certify(fixa, true_map).verified
    assert time.perf_counter() - started < 1.0


def test_criterion_3_bundled_cobuchi_descent_matches_its_reference_table(fixb):
    """The descent on the bundled co-Buchi example versus its reference table.

    The reference table supplied with this acceptance list reads, survive
    rows over (v0, v1, v2) and revisit values at t:

        round 0: survive 2*, 3*, 4*   revisit 3*
        round 1: survive 0,  0*, 1*   revisit 0*
        round 2: survive 0,  0,  0    revisit 0
        final: 0 everywhere

    The computed descent agrees everywhere except the first survive value
    at v0, where this suite computes 3. Three independent routes confirm
    3: the safety solver on the derived game where entering t is fatal,
    the brute-force oracle on that game's explicit configuration graph,
    and the bounded-visit solver asked for a play that never visits t.
    Holding 2* at v0, player 1 cannot keep the token away from t forever,
    so the reference value 2* understates the requirement. This test is
    expected to fail until the reference table itself is corrected.
    """
    _, trace = solve_frugal_parity(fixb)
    assert isinstance(trace, DescentTrace)
    assert sorted(trace.high_set) == ["t"]

    def fmt(values):
        return {vid: format_value(val) for vid, val in sorted(values.items())}

    computed = {
        "rounds": [
            {"survive": fmt(r.survive), "revisit": fmt(r.revisit)}
            for r in trace.rounds
        ],
        "final": fmt(trace.final),
    }
    reference = {
        "rounds": [
            {
                "survive": {"v0": "2*", "v1": "3*", "v2": "4*"},
                "revisit": {"t": "3*"},
            },
            {
                "survive": {"v0": "0", "v1": "0*", "v2": "1*"},
                "revisit": {"t": "0*"},
            },
            {
                "survive": {"v0": "0", "v1": "0", "v2": "0"},
                "revisit": {"t": "0"},
            },
        ],
        "final": {"t": "0", "v0": "0", "v1": "0", "v2": "0"},
    }
    assert computed == reference, (
        "the computed descent disagrees with the reference table at the first "
        "survive row: avoiding t forever from v0 needs 3, not 2*; the safety "
        "solver, the brute-force oracle and the bounded-visit solver all "
        "independently compute 3 for that position"
    )


def test_criterion_4_solver_matches_the_oracle_on_random_games(corpus_games):
    """Solver versus brute force on 200 random games.

    The oracle builds the explicit configuration graph twice, revealing
    the bid components in both orders, and insists the two constructions
    agree before answering.
    """
    started = time.perf_counter()
    sinkless = 0
    for index, game in enumerate(corpus_games):
        truth = oracle_truth(index, game)
        solved, _ = solve_frugal_parity(game)
        assert solved == truth, f"game {index} disagrees with the oracle"
        sinkless += not game.sinks
    assert sinkless > 0, "the corpus must exercise games without sinks"
    assert time.perf_counter() - started < 300.0


def test_criterion_5_certification_accepts_exactly_the_truth(corpus_games):
    """Verified if and only if the candidate is the oracle's map."""
    mutants = 0
    for index, game in enumerate(corpus_games):
        solved, _ = solve_frugal_parity(game)
        assert certify(game, solved).verified
        truth = oracle_truth(index, game)
        for candidate in enumerate_average_maps(game):
            report = certify(game, candidate)
            assert report.verified == (candidate == truth), (index, candidate)
            mutants += candidate != truth
    assert mutants > 200, "the corpus must provide plenty of wrong candidates"


def test_criterion_6_invariant_suites(corpus_games, fixa, fixb, zugzwang):
    # arithmetic identities on every generated map with the averaging property
    identity_checks = 0
    for game in corpus_games:
        for tmap in enumerate_average_maps(game):
            for vertex in game.vertices:
                identity_checks += _identity_checks(game, tmap, vertex)
    assert identity_checks > 500

    # advantage flip is an involution and complements split the pot, k <= 8
    for k in range(9):
        finite = [Budget(level) for level in range(2 * k + 2)]
        assert flip_threshold(Budget(0), k) == TOP
        assert flip_threshold(TOP, k) == Budget(0)
        for threshold in finite + [TOP]:
            flipped = flip_threshold(threshold, k)
            assert flip_threshold(flipped, k) == threshold
            for budget in finite:
                mine = budget.level >= value_level(threshold, k)
                other = opponent_budget(budget, k)
                theirs = other.level >= value_level(flipped, k)
                assert mine != theirs
                assert budget.level + other.level == 2 * k + 1

    # certified play never dips below threshold: 1000 random plays per
    # fixture, horizon 200; spare never shrinks and restarts stay <= k
    # (asserted inside the engine on every step), and each round keeps
    # the two budgets splitting the pot
    plan = {
        "fixa": (fixa, [(1, "v0", lit("5")), (1, "v1", lit("4*")),
                        (2, "v0", lit("4*")), (2, "v2", lit("3"))]),
        "fixb": (fixb, [(1, "v0", Budget(0)), (1, "v1", Budget(0)),
                        (1, "v2", Budget(0)), (1, "t", Budget(0))]),
        "zugzwang": (zugzwang, [(1, "v0", lit("1")), (1, "v2", lit("1")),
                                (2, "v0", Budget(0)), (2, "v1", Budget(0))]),
    }
    rng = random.Random(614)
    for game, cases in plan.values():
        ready = prepare(game)
        for engine_side, start, budget in cases:
            for _ in range(250):
                play_certified_vs_random(
                    game, rng, engine_side, start, budget,
                    horizon=200, prepared=ready,
                )


def test_criterion_7_complexity_shapes(corpus_games):
    assert __debug__, "the invariant assertions must be active"
    for game in corpus_games[:60]:
        bound = len(game.all_ids) * (2 * game.k + 2)
        for kind, solver in (
            ("reachability", solve_frugal_reachability),
            ("safety", solve_frugal_safety),
        ):
            flat = normalize_objective(game, kind)
            _, trace = solver(flat)
            assert isinstance(trace, IterationTrace)
            assert trace.sweeps <= bound

        solved, _ = solve_frugal_parity(game)
        report = certify(game, solved)
        assert report.verified
        size_cap = 3 * len(game.all_ids) + 2 * len(game.edges) * (
            game.max_degree() + 2
        )
        for half in (report.upper, report.lower):
            assert half.node_count <= size_cap
            assert half.edge_count <= size_cap
        for side in (1, 2):
            table = extract_strategy(report, side=side)
            assert len(table) <= 2 * len(game.all_ids)
