"""Arena model: validation, objective rewriting, duals, serialization."""

import json

import pytest

from bidgames.budgets import TOP, Budget, parse_value
from bidgames.games import (
    GameFormatError,
    dualize,
    dumps_canonical,
    game_from_dict,
    game_to_dict,
    load_threshold_map,
    make_game,
    save_game,
    shift_priorities,
    threshold_map_from_dict,
    threshold_map_to_dict,
)
from conftest import literal_map


def tiny():
    return make_game(
        k=2,
        vertices={"a": 1, "b": 2},
        sinks={"s": Budget(2)},
        edges=[("a", "b"), ("b", "a"), ("b", "s")],
    )


def test_structure_queries(fixa):
    assert fixa.all_ids == ("v0", "v1", "v2", "t")
    assert fixa.is_sink("t") and not fixa.is_sink("v0")
    assert fixa.neighbors("v0") == ("v0", "v1")
    assert fixa.max_degree() == 2
    assert fixa.frugal["t"] == Budget(4)


def test_sink_with_outgoing_edge_rejected():
    with pytest.raises(GameFormatError, match="sink"):
        make_game(k=1, vertices={"a": 1}, sinks={"s": Budget(0)},
                  edges=[("a", "s"), ("s", "a")])


def test_unknown_edge_endpoint_rejected():
    with pytest.raises(GameFormatError, match="unknown"):
        make_game(k=1, vertices={"a": 1}, sinks={}, edges=[("a", "zz")])


def test_vertex_without_moves_rejected():
    with pytest.raises(GameFormatError, match="outgoing"):
        make_game(k=1, vertices={"a": 1, "b": 1}, sinks={}, edges=[("a", "a")])


def test_duplicate_id_rejected():
    with pytest.raises(GameFormatError):
        make_game(k=1, vertices={"a": 1}, sinks={"a": Budget(0)},
                  edges=[("a", "a")])


def test_oversized_frugal_rejected():
    with pytest.raises(GameFormatError):
        make_game(k=1, vertices={"a": 1}, sinks={"s": Budget(9)},
                  edges=[("a", "s"), ("a", "a")])


def test_objective_rewrites():
    base = {
        "schema": 1,
        "k": 2,
        "vertices": [{"id": "a"}, {"id": "b"}],
        "sinks": [{"id": "s", "frugal": "1"}],
        "edges": [["a", "b"], ["b", "a"], ["b", "s"]],
    }
    reach = game_from_dict(dict(base, objective={"kind": "reachability"}))
    assert set(reach.priority.values()) == {2}
    safe = game_from_dict(dict(base, objective={"kind": "safety"}))
    assert set(safe.priority.values()) == {1}
    buchi = game_from_dict(dict(base, objective={"kind": "buchi", "accepting": ["a"]}))
    assert buchi.priority == {"a": 1, "b": 0}
    cob = game_from_dict(dict(base, objective={"kind": "cobuchi", "accepting": ["a"]}))
    assert cob.priority == {"a": 2, "b": 1}


def test_sink_frugal_defaults():
    base = {
        "schema": 1,
        "k": 2,
        "vertices": [{"id": "a"}],
        "sinks": [{"id": "s"}],
        "edges": [["a", "s"], ["a", "a"]],
    }
    reach = game_from_dict(dict(base, objective={"kind": "reachability"}))
    assert reach.frugal["s"] == Budget(0)
    safe = game_from_dict(dict(base, objective={"kind": "safety"}))
    assert safe.frugal["s"] is TOP
    with pytest.raises(GameFormatError, match="frugal required"):
        game_from_dict(dict(base, objective={"kind": "buchi", "accepting": ["a"]}))


def test_priority_required_without_objective():
    doc = {
        "schema": 1,
        "k": 1,
        "vertices": [{"id": "a"}],
        "sinks": [],
        "edges": [["a", "a"]],
    }
    with pytest.raises(GameFormatError, match="priority required"):
        game_from_dict(doc)


def test_schema_and_kind_gates():
    with pytest.raises(GameFormatError, match="schema"):
        game_from_dict({"schema": 2, "k": 1})
    with pytest.raises(GameFormatError, match="objective kind"):
        game_from_dict({"schema": 1, "k": 1, "objective": {"kind": "parity3"}})
    with pytest.raises(GameFormatError, match="k must be"):
        game_from_dict({"schema": 1, "k": -1})


def test_dualize_shape():
    g = tiny()
    d = dualize(g)
    assert d.priority == {"a": 2, "b": 3}
    assert d.frugal["s"] == Budget(2 * g.k + 2 - 2)
    dd = dualize(d)
    assert dd.priority == {"a": 3, "b": 4}
    assert dd.frugal == g.frugal
    assert shift_priorities(dd, -2).priority == g.priority


def test_dualize_flips_extreme_frugal():
    g = make_game(k=1, vertices={"a": 1}, sinks={"s": Budget(0)},
                  edges=[("a", "s"), ("a", "a")])
    assert dualize(g).frugal["s"] is TOP
    assert dualize(dualize(g)).frugal["s"] == Budget(0)


def test_serialization_roundtrip(fixa, fixb):
    for game in (fixa, fixb):
        doc = game_to_dict(game)
        again = game_from_dict(doc)
        assert again == game
        assert dumps_canonical(game_to_dict(again)) == dumps_canonical(doc)


def test_canonical_dump_is_stable():
    text = dumps_canonical(game_to_dict(tiny()))
    reparsed = game_from_dict(json.loads(text))
    assert dumps_canonical(game_to_dict(reparsed)) == text
    assert text.endswith("\n")


def test_save_load_roundtrip(tmp_path, fixa):
    path = tmp_path / "copy.game"
    save_game(fixa, str(path))
    from bidgames.games import load_game

    assert load_game(str(path)) == fixa


def test_threshold_map_parsing(fixa):
    nested = {"schema": 1, "thresholds": {"v0": "5", "v1": "4*", "v2": "3*", "t": "2"}}
    flat = {"v0": "5", "v1": "4*", "v2": "3*", "t": "2"}
    want = literal_map(flat)
    assert threshold_map_from_dict(nested, fixa) == want
    assert threshold_map_from_dict(flat, fixa) == want
    missing_sink = {"v0": "5", "v1": "4*", "v2": "3*"}
    assert threshold_map_from_dict(missing_sink, fixa)["t"] == Budget(4)


def test_threshold_map_rejections(fixa):
    with pytest.raises(GameFormatError):
        threshold_map_from_dict({"v0": "5", "v1": "4*"}, fixa)
    with pytest.raises(GameFormatError):
        threshold_map_from_dict(
            {"v0": "9", "v1": "4*", "v2": "3*", "t": "2"}, fixa
        )
    with pytest.raises(GameFormatError):
        threshold_map_from_dict(
            {"v0": "5", "v1": "4*", "v2": "3*", "t": "2", "zz": "0"}, fixa
        )


def test_threshold_map_file_roundtrip(tmp_path, fixa):
    tmap = literal_map({"v0": "5", "v1": "4*", "v2": "3*", "t": "2"})
    path = tmp_path / "map.json"
    path.write_text(json.dumps(threshold_map_to_dict(tmap)))
    assert load_threshold_map(str(path), fixa) == tmap
    doc = threshold_map_to_dict({"v": TOP, "w": parse_value("3*")})
    assert doc["thresholds"] == {"v": "top", "w": "3*"}
