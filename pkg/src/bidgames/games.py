"""Graph games with bidding: model, validation, objectives, (de)serialization.

A game is a finite directed graph split into regular vertices and absorbing
sinks, a total budget pot k, a priority per regular vertex, and a frugal
requirement per sink. Player 1 wins a play that reaches a sink s while
holding at least frugal(s); an infinite play is won by player 1 iff the
maximum priority seen infinitely often is odd.

Named objectives (reachability, safety, buchi, cobuchi) are convenience
surface syntax; normalize_objective() rewrites them into priorities and
frugal requirements so every solver only ever sees the general form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .budgets import (
    TOP,
    Budget,
    BudgetError,
    Value,
    fits,
    flip_threshold,
    format_value,
    parse_value,
)

SCHEMA_VERSION = 1

OBJECTIVE_KINDS = (
    "reachability",
    "frugal-reachability",
    "safety",
    "frugal-safety",
    "buchi",
    "cobuchi",
    "parity",
    "frugal-parity",
)


class GameFormatError(ValueError):
    """A structurally invalid game, with one message per problem."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


@dataclass(frozen=True)
class BiddingGame:
    k: int
    vertices: tuple[str, ...]
    sinks: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    priority: Mapping[str, int]
    frugal: Mapping[str, Value]
    _succ: Mapping[str, tuple[str, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        problems = _validate(self)
        if problems:
            raise GameFormatError(problems)
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for src, dst in self.edges:
            out[src].append(dst)
        frozen = {v: tuple(sorted(set(targets))) for v, targets in out.items()}
        object.__setattr__(self, "priority", MappingProxyType(dict(self.priority)))
        object.__setattr__(self, "frugal", MappingProxyType(dict(self.frugal)))
        object.__setattr__(self, "_succ", MappingProxyType(frozen))

    @property
    def all_ids(self) -> tuple[str, ...]:
        return self.vertices + self.sinks

    def is_sink(self, vid: str) -> bool:
        return vid in self.frugal

    def neighbors(self, vid: str) -> tuple[str, ...]:
        return self._succ[vid]

    def max_degree(self) -> int:
        return max((len(self._succ[v]) for v in self.vertices), default=0)


def _validate(g: BiddingGame) -> list[str]:
    problems: list[str] = []
    if not isinstance(g.k, int) or g.k < 0:
        problems.append(f"k must be a non-negative integer, got {g.k!r}")
        return problems
    ids = list(g.vertices) + list(g.sinks)
    if not ids:
        problems.append("game has no vertices")
        return problems
    for vid in ids:
        if not isinstance(vid, str) or not vid:
            problems.append(f"vertex ids must be non-empty strings, got {vid!r}")
            return problems
    if len(set(ids)) != len(ids):
        problems.append("vertex and sink ids must be pairwise distinct")
    if tuple(sorted(g.vertices)) != g.vertices or tuple(sorted(g.sinks)) != g.sinks:
        problems.append("vertices and sinks must be listed in sorted order")
    known = set(ids)
    sinks = set(g.sinks)
    seen_edges = set()
    for edge in g.edges:
        src, dst = edge
        if src not in known or dst not in known:
            problems.append(f"edge {src}->{dst} mentions an unknown id")
            continue
        if src in sinks:
            problems.append(f"sink {src} must not have outgoing edges")
        if edge in seen_edges:
            problems.append(f"duplicate edge {src}->{dst}")
        seen_edges.add(edge)
    with_out = {src for src, _ in g.edges}
    for v in g.vertices:
        if v not in with_out:
            problems.append(f"vertex {v} has no outgoing edge")
    if set(g.priority) != set(g.vertices):
        problems.append("priority must be defined exactly on the non-sink vertices")
    else:
        for v, p in g.priority.items():
            if not isinstance(p, int) or p < 0:
                problems.append(f"priority of {v} must be a non-negative integer")
    if set(g.frugal) != sinks:
        problems.append("frugal must be defined exactly on the sinks")
    else:
        for s, val in g.frugal.items():
            if not isinstance(val, (Budget, type(TOP))):
                problems.append(f"frugal at {s} is not a budget value")
            elif not fits(val, g.k):
                problems.append(f"frugal at {s} ({format_value(val)}) exceeds pot k={g.k}")
    return problems


def make_game(
    k: int,
    vertices: dict[str, int],
    sinks: dict[str, Value],
    edges: list[tuple[str, str]],
) -> BiddingGame:
    """Convenience constructor that sorts and tuples the pieces."""
    return BiddingGame(
        k=k,
        vertices=tuple(sorted(vertices)),
        sinks=tuple(sorted(sinks)),
        edges=tuple(sorted(set((a, b) for a, b in edges))),
        priority=dict(vertices),
        frugal=dict(sinks),
    )


def dualize(game: BiddingGame) -> BiddingGame:
    """Swap the players' roles.

    Priorities shift by one so odd and even trade places, and each sink's
    frugal requirement flips to the opposing player's threshold there.
    """
    return make_game(
        k=game.k,
        vertices={v: game.priority[v] + 1 for v in game.vertices},
        sinks={s: flip_threshold(game.frugal[s], game.k) for s in game.sinks},
        edges=list(game.edges),
    )


def shift_priorities(game: BiddingGame, amount: int) -> BiddingGame:
    """Uniformly shift all priorities (parity-preserving for even amounts)."""
    return make_game(
        k=game.k,
        vertices={v: game.priority[v] + amount for v in game.vertices},
        sinks=dict(game.frugal),
        edges=list(game.edges),
    )


def normalize_objective(
    game: BiddingGame, kind: str = "frugal-parity", accepting: tuple[str, ...] = ()
) -> BiddingGame:
    """Rewrite a named objective into plain priorities and frugal values.

    reachability: every priority becomes 2 (infinite play loses), sink
    requirements are kept as given. safety: every priority becomes 1
    (infinite play wins), sink requirements kept. buchi with accepting set
    F: priorities 1 on F and 0 elsewhere. cobuchi with F: 2 on F and 1
    elsewhere. parity and frugal-parity pass through unchanged, which makes
    the rewrite idempotent.
    """
    if kind not in OBJECTIVE_KINDS:
        raise GameFormatError([f"unknown objective kind {kind!r}"])
    if kind in ("parity", "frugal-parity"):
        if accepting:
            raise GameFormatError([f"objective {kind} takes no accepting set"])
        return game
    if kind in ("reachability", "frugal-reachability", "safety", "frugal-safety"):
        if accepting:
            raise GameFormatError([f"objective {kind} takes no accepting set"])
        flat = 2 if kind in ("reachability", "frugal-reachability") else 1
        return make_game(
            k=game.k,
            vertices={v: flat for v in game.vertices},
            sinks=dict(game.frugal),
            edges=list(game.edges),
        )
    members = set(accepting)
    unknown = members - set(game.vertices)
    if unknown:
        raise GameFormatError(
            [f"accepting set mentions non-vertices: {sorted(unknown)}"]
        )
    if kind == "buchi":
        prio = {v: 1 if v in members else 0 for v in game.vertices}
    else:
        prio = {v: 2 if v in members else 1 for v in game.vertices}
    return make_game(
        k=game.k, vertices=prio, sinks=dict(game.frugal), edges=list(game.edges)
    )


def _default_frugal(kind: str) -> Value | None:
    if kind in ("reachability", "frugal-reachability"):
        return Budget(0)
    if kind in ("safety", "frugal-safety"):
        return TOP
    return None


def game_from_dict(data: dict) -> BiddingGame:
    """Build and normalize a game from its JSON form."""
    if not isinstance(data, dict):
        raise GameFormatError(["game document must be a JSON object"])
    schema = data.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise GameFormatError([f"unsupported schema {schema!r}"])
    problems: list[str] = []
    k = data.get("k")
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise GameFormatError([f"k must be a non-negative integer, got {k!r}"])

    objective = data.get("objective") or {}
    if not isinstance(objective, dict):
        raise GameFormatError(["objective must be an object"])
    kind = objective.get("kind", "frugal-parity")
    accepting = tuple(objective.get("accepting", ()))
    if kind not in OBJECTIVE_KINDS:
        raise GameFormatError([f"unknown objective kind {kind!r}"])
    overwritten = kind in (
        "reachability",
        "frugal-reachability",
        "safety",
        "frugal-safety",
        "buchi",
        "cobuchi",
    )

    vertices: dict[str, int] = {}
    for entry in data.get("vertices", []):
        if not isinstance(entry, dict) or "id" not in entry:
            problems.append(f"bad vertex entry {entry!r}")
            continue
        vid = entry["id"]
        prio = entry.get("priority")
        if prio is None:
            if not overwritten:
                problems.append(f"vertex {vid}: priority required for objective {kind}")
                prio = 0
            else:
                prio = 0
        vertices[vid] = prio

    sink_default = _default_frugal(kind)
    sinks: dict[str, Value] = {}
    for entry in data.get("sinks", []):
        if not isinstance(entry, dict) or "id" not in entry:
            problems.append(f"bad sink entry {entry!r}")
            continue
        sid = entry["id"]
        literal = entry.get("frugal")
        if literal is None:
            if sink_default is None:
                problems.append(f"sink {sid}: frugal required for objective {kind}")
                continue
            sinks[sid] = sink_default
        else:
            try:
                sinks[sid] = parse_value(literal)
            except BudgetError as exc:
                problems.append(f"sink {sid}: {exc}")

    edges: list[tuple[str, str]] = []
    for entry in data.get("edges", []):
        if (
            not isinstance(entry, (list, tuple))
            or len(entry) != 2
            or not all(isinstance(x, str) for x in entry)
        ):
            problems.append(f"bad edge entry {entry!r}")
            continue
        edges.append((entry[0], entry[1]))

    if problems:
        raise GameFormatError(problems)
    base = make_game(k=k, vertices=vertices, sinks=sinks, edges=edges)
    return normalize_objective(base, kind, accepting)


def game_to_dict(game: BiddingGame) -> dict:
    """Canonical JSON form of a normalized game."""
    return {
        "schema": SCHEMA_VERSION,
        "k": game.k,
        "vertices": [
            {"id": v, "priority": game.priority[v]} for v in game.vertices
        ],
        "sinks": [
            {"id": s, "frugal": format_value(game.frugal[s])} for s in game.sinks
        ],
        "edges": [[a, b] for a, b in game.edges],
        "objective": {"kind": "frugal-parity"},
    }


def dumps_canonical(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def load_game(path: str) -> BiddingGame:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except json.JSONDecodeError as exc:
        raise GameFormatError([f"invalid JSON in {path}: {exc}"]) from exc
    except OSError as exc:
        raise GameFormatError([f"cannot read {path}: {exc}"]) from exc
    return game_from_dict(data)


def save_game(game: BiddingGame, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps_canonical(game_to_dict(game)))


# threshold maps: vertex id -> Value, covering every id of a game

ThresholdMap = dict[str, Value]


def threshold_map_from_dict(data: dict, game: BiddingGame) -> ThresholdMap:
    """Parse a candidate threshold map; sinks default to their frugal value."""
    if not isinstance(data, dict):
        raise GameFormatError(["threshold map must be a JSON object"])
    body = data.get("thresholds", data)
    if "schema" in body:
        body = {key: val for key, val in body.items() if key != "schema"}
    problems: list[str] = []
    tmap: ThresholdMap = {}
    for vid, literal in body.items():
        if vid not in game.all_ids:
            problems.append(f"threshold for unknown vertex {vid!r}")
            continue
        try:
            value = parse_value(literal)
        except BudgetError as exc:
            problems.append(f"{vid}: {exc}")
            continue
        if not fits(value, game.k):
            problems.append(f"{vid}: {literal} exceeds pot k={game.k}")
            continue
        tmap[vid] = value
    for s in game.sinks:
        tmap.setdefault(s, game.frugal[s])
    missing = [v for v in game.all_ids if v not in tmap]
    if missing:
        problems.append(f"threshold map missing entries for {missing}")
    if problems:
        raise GameFormatError(problems)
    return tmap


def threshold_map_to_dict(tmap: ThresholdMap) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "thresholds": {vid: format_value(val) for vid, val in sorted(tmap.items())},
    }


def load_threshold_map(path: str, game: BiddingGame) -> ThresholdMap:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except json.JSONDecodeError as exc:
        raise GameFormatError([f"invalid JSON in {path}: {exc}"]) from exc
    except OSError as exc:
        raise GameFormatError([f"cannot read {path}: {exc}"]) from exc
    return threshold_map_from_dict(data, game)
