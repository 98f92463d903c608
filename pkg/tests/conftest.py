"""Shared fixtures: bundled games, a zugzwang arena, corpus helpers."""

import pathlib
import random

import pytest

from bidgames.budgets import Budget, parse_value
from bidgames.games import load_game, make_game
from bidgames.generate import random_game

ROOT = pathlib.Path(__file__).resolve().parent.parent

FIXA_THRESHOLDS = {"t": "2", "v0": "5", "v1": "4*", "v2": "3*"}


def lit(text):
    """Budget literal shorthand."""
    return parse_value(text)


def literal_map(pairs):
    return {vid: parse_value(text) for vid, text in pairs.items()}


def corpus(seed, count, **kwargs):
    """A reproducible list of random games."""
    rng = random.Random(seed)
    return [random_game(rng, **kwargs) for _ in range(count)]


@pytest.fixture(scope="session")
def fixa():
    """Reachability: k=5, cycle over v0/v1/v2, sink t requiring 2."""
    return load_game(str(ROOT / "games" / "fixa.game"))


@pytest.fixture(scope="session")
def fixb():
    """Co-Buchi: k=5, player 1 must eventually stop revisiting t."""
    return load_game(str(ROOT / "games" / "fixb.game"))


@pytest.fixture(scope="session")
def zugzwang():
    """k=1 arena whose only winning line holds the advantage back.

    At ⟨v0, 1*⟩ the gap-halving bid loops forever through even priorities;
    the winning play bids the unmarked base while keeping the mark in hand,
    forcing the opponent to either hand over the round or take a poisoned
    tie. Exercises the holdback branch of the certificate construction.
    """
    return make_game(
        k=1,
        vertices={"v0": 3, "v1": 1, "v2": 1},
        sinks={"s0": Budget(2), "s1": Budget(2)},
        edges=[
            ("v0", "v2"),
            ("v1", "s0"),
            ("v1", "v0"),
            ("v1", "v2"),
            ("v2", "s1"),
            ("v2", "v0"),
            ("v2", "v1"),
        ],
    )
