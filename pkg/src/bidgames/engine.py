"""Live play: round resolution, engine strategies, interactive sessions.

A session tracks one play of a bidding game between two sides, either of
which may be driven by the engine. Each round both sides commit a bid and
an intended move; the higher bid wins, pays itself to the loser, and moves
the token. A magnitude tie goes against the advantage holder when the
holder's bid is unmarked, and the holder keeps the advantage; winning with
a marked bid pays the advantage away. All of this is plain arithmetic on
budget levels.

The engine plays from the certificate of the solved thresholds whenever
its budget reaches its side's threshold at the start vertex. Certified
play keeps a cursor into the certificate: the tag, exact threshold or one
level above it, whose advantage mark matches the live budget. The cursor
is recomputed from scratch every round, which makes the bookkeeping
robust against opponents who overpay: any outcome the certificate did not
model leaves the engine with strictly more budget above its tag (a
restart, in the sense that the surplus strictly grows), and the surplus
never shrinks. Below threshold no winning strategy exists, so the engine
falls back to a best-effort heuristic and says so.

Player 2's engine runs the identical machinery on the role-swapped game
with the complemented map; a bid is a bid in either coordinate system.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .averages import allowed_moves
from .budgets import (
    Budget,
    Value,
    add_levels,
    format_value,
    opponent_budget,
    sub_levels,
    succ,
    value_level,
)
from .certify import CertReport, CertificateGame, certify, config_node, winning_action
from .games import BiddingGame
from .parity import solve_frugal_parity
from .turnbased import TurnBasedSolution

DEFAULT_HORIZON = 200

CERTIFIED = "certified"
HEURISTIC = "heuristic"


class IllegalBid(ValueError):
    """A rejected action half, with the reason it was rejected."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class ActionHalf:
    """One side's commitment for a round: a bid and the move if it wins."""

    bid: Budget
    move: str


@dataclass(frozen=True)
class RoundRecord:
    round: int
    vertex: str
    p1_budget: Budget
    bids: tuple[Budget, Budget]
    winner: int
    advantage_used: bool
    next_vertex: str

    def to_dict(self) -> dict:
        return {
            "round": self.round,
            "vertex": self.vertex,
            "p1_budget": format_value(self.p1_budget),
            "bids": {
                "p1": format_value(self.bids[0]),
                "p2": format_value(self.bids[1]),
            },
            "winner": self.winner,
            "advantage_used": self.advantage_used,
            "next_vertex": self.next_vertex,
        }


@dataclass(frozen=True)
class Outcome:
    winner: int
    reason: str  # "sink" or "horizon"
    provisional: bool

    def to_dict(self) -> dict:
        return {
            "winner": self.winner,
            "reason": self.reason,
            "provisional": self.provisional,
        }


@dataclass
class EngineBrain:
    """One engine-driven side: its coordinate system and strategy source."""

    side: int
    source: str
    tmap: dict[str, Value]
    spare: int | None = None
    restarts: int = 0

    @property
    def label(self) -> str:
        if self.source == CERTIFIED:
            return CERTIFIED
        return f"{HEURISTIC} (best effort)"


@dataclass
class Session:
    game: BiddingGame
    human_side: int | None
    vertex: str
    p1_budget: Budget
    horizon: int
    thresholds: dict[str, Value]
    report: CertReport
    brains: dict[int, EngineBrain]
    rounds: list[RoundRecord] = field(default_factory=list)
    outcome: Outcome | None = None
    pending: dict[int, ActionHalf] = field(default_factory=dict)

    def budget_of(self, side: int) -> Budget:
        if side == 1:
            return self.p1_budget
        return opponent_budget(self.p1_budget, self.game.k)

    @property
    def over(self) -> bool:
        return self.outcome is not None


def _agreeing_tag(tmap: dict[str, Value], vertex: str, budget: Budget) -> Budget:
    """The unique certificate tag matching the live budget's advantage mark.

    Exactly one of the threshold value and its successor carries each mark,
    and certified play keeps the live budget at or above that tag.
    """
    value = tmap[vertex]
    assert isinstance(value, Budget), (
        f"certified play reached {vertex} where no budget wins"
    )
    tag = value if value.advantage == budget.advantage else succ(value)
    assert budget.level >= tag.level, (
        f"live budget {budget} at {vertex} fell below its tag {tag}"
    )
    return tag


def _spare_at(tmap: dict[str, Value], vertex: str, budget: Budget) -> int:
    tag = _agreeing_tag(tmap, vertex, budget)
    gap = budget.level - tag.level
    assert gap % 2 == 0, "mark-matched budgets differ by whole magnitudes"
    return gap // 2


def prepare(game: BiddingGame) -> tuple[dict[str, Value], CertReport]:
    """Solve and certify once; reusable across sessions on the same game."""
    tmap, _ = solve_frugal_parity(game)
    report = certify(game, tmap)
    assert report.verified, f"solver output failed certification: {report.describe()}"
    return tmap, report


def new_session(
    game: BiddingGame,
    human_side: int | None,
    start: str,
    p1_budget: Budget,
    horizon: int = DEFAULT_HORIZON,
    prepared: tuple[dict[str, Value], CertReport] | None = None,
) -> Session:
    """Solve and certify the game, then open a play from the given start."""
    if human_side not in (None, 1, 2):
        raise ValueError(f"human side must be 1, 2 or None, got {human_side!r}")
    if start not in game.all_ids:
        raise ValueError(f"unknown start vertex {start!r}")
    if p1_budget.level > 2 * game.k + 1:
        raise ValueError(f"player 1 budget {p1_budget} exceeds the pot k={game.k}")
    if horizon < 1:
        raise ValueError(f"horizon must be positive, got {horizon}")
    tmap, report = prepared if prepared is not None else prepare(game)
    assert report.verified
    assert report.lower is not None
    session = Session(
        game=game,
        human_side=human_side,
        vertex=start,
        p1_budget=p1_budget,
        horizon=horizon,
        thresholds=tmap,
        report=report,
        brains={},
    )
    for side in (1, 2):
        if side == human_side:
            continue
        own_map = side_tables(session, side)[0]
        budget = session.budget_of(side)
        certified = (
            not game.is_sink(start)
            and budget.level >= value_level(own_map[start], game.k)
        )
        brain = EngineBrain(
            side=side,
            source=CERTIFIED if certified else HEURISTIC,
            tmap=dict(own_map),
        )
        if certified:
            brain.spare = _spare_at(own_map, start, budget)
        session.brains[side] = brain
    if game.is_sink(start):
        session.outcome = _sink_outcome(session, start)
    else:
        _commit_engine_actions(session)
    return session


def _sink_outcome(session: Session, sink: str) -> Outcome:
    needed = value_level(session.game.frugal[sink], session.game.k)
    winner = 1 if session.p1_budget.level >= needed else 2
    return Outcome(winner=winner, reason="sink", provisional=False)


def _horizon_outcome(session: Session) -> Outcome:
    """Provisional scoring of a truncated play by its tail priorities.

    If the current configuration already occurred at the start of an
    earlier round, the rounds since then form a loop whose maximum
    priority scores the play; otherwise the later half of the play is
    used as the observed tail.
    """
    starts = [(r.vertex, r.p1_budget.level) for r in session.rounds]
    current = (session.vertex, session.p1_budget.level)
    if current in starts:
        tail = session.rounds[starts.index(current) :]
    else:
        tail = session.rounds[len(session.rounds) // 2 :]
    top = max(session.game.priority[r.vertex] for r in tail)
    return Outcome(winner=1 if top % 2 == 1 else 2, reason="horizon", provisional=True)


def check_half(session: Session, side: int, half: ActionHalf) -> str | None:
    """The reason an action half is illegal at the current round, if any."""
    budget = session.budget_of(side)
    if half.bid.level > budget.level:
        return f"bid {half.bid} exceeds the available budget {budget}"
    if half.bid.advantage and not budget.advantage:
        return f"bid {half.bid} claims the advantage, but budget {budget} lacks it"
    if half.move not in session.game.neighbors(session.vertex):
        return f"move {half.move!r} is not an edge out of {session.vertex!r}"
    return None


def side_tables(
    session: Session, side: int
) -> tuple[dict[str, Value], CertificateGame, TurnBasedSolution]:
    """A side's own-coordinate threshold map and certificate half."""
    report = session.report
    if side == 1:
        assert report.upper is not None and report.upper_solution is not None
        return session.thresholds, report.upper, report.upper_solution
    assert report.lower is not None and report.lower_solution is not None
    return report.lower.tmap, report.lower, report.lower_solution


def certified_action(session: Session, side: int) -> ActionHalf | None:
    """The certificate's action for a side, if its budget supports one.

    None when the side's live budget is below its threshold at the current
    vertex; there is no winning strategy to read off then.
    """
    if session.over or session.game.is_sink(session.vertex):
        return None
    own_map, cert, solution = side_tables(session, side)
    vertex = session.vertex
    budget = session.budget_of(side)
    if budget.level < value_level(own_map[vertex], session.game.k):
        return None
    tag = _agreeing_tag(own_map, vertex, budget)
    bid, move = winning_action(cert, solution, config_node(vertex, tag))
    if move is None:
        move = min(allowed_moves(cert.game, own_map, vertex))
    return ActionHalf(bid=bid, move=move)


def engine_action(session: Session, side: int) -> ActionHalf:
    """The engine's committed half for the current round, from state alone."""
    brain = session.brains[side]
    vertex = session.vertex
    if brain.source == CERTIFIED:
        half = certified_action(session, side)
        assert half is not None, "certified engine lost its strategy"
    else:
        k = session.game.k
        move = min(
            session.game.neighbors(vertex),
            key=lambda u: (value_level(brain.tmap[u], k), u),
        )
        half = ActionHalf(bid=Budget(0), move=move)
    reason = check_half(session, side, half)
    assert reason is None, f"engine produced an illegal half: {reason}"
    return half


def _commit_engine_actions(session: Session) -> None:
    session.pending = {
        side: engine_action(session, side)
        for side in session.brains
    }


def apply_bids(
    game: BiddingGame,
    vertex: str,
    p1_budget: Budget,
    half1: ActionHalf,
    half2: ActionHalf,
) -> tuple[int, Budget, str, bool]:
    """Resolve one bidding round: winner, new P1 budget, next vertex, mark use.

    The higher level wins outright. Equal levels can only be two unmarked
    bids of the same magnitude; the advantage holder loses that tie but
    keeps the advantage, which level arithmetic performs by itself.
    """
    b1, b2 = half1.bid, half2.bid
    assert not (b1.advantage and b2.advantage), "both bids claim the advantage"
    if b1.level > b2.level or (b1.level == b2.level and not p1_budget.advantage):
        return 1, sub_levels(p1_budget, b1), half1.move, b1.advantage
    return 2, add_levels(p1_budget, b2), half2.move, b2.advantage


def step(session: Session, human_half: ActionHalf | None = None) -> RoundRecord:
    """Play one round; engine halves were committed before the call."""
    if session.over:
        raise ValueError("session is over")
    if session.human_side is None:
        if human_half is not None:
            raise ValueError("no human side in this session")
    elif human_half is None:
        raise ValueError("the human half is required")
    halves: dict[int, ActionHalf] = dict(session.pending)
    if session.human_side is not None:
        assert human_half is not None
        reason = check_half(session, session.human_side, human_half)
        if reason is not None:
            raise IllegalBid(reason)
        halves[session.human_side] = human_half

    vertex = session.vertex
    before = session.p1_budget
    winner, after, next_vertex, advantage_used = apply_bids(
        session.game, vertex, before, halves[1], halves[2]
    )
    k = session.game.k
    assert after.level + opponent_budget(after, k).level == 2 * k + 1, (
        "the budgets must still split the pot"
    )
    record = RoundRecord(
        round=len(session.rounds) + 1,
        vertex=vertex,
        p1_budget=before,
        bids=(halves[1].bid, halves[2].bid),
        winner=winner,
        advantage_used=advantage_used,
        next_vertex=next_vertex,
    )
    session.rounds.append(record)
    session.vertex = next_vertex
    session.p1_budget = after
    session.pending = {}

    if session.game.is_sink(next_vertex):
        session.outcome = _sink_outcome(session, next_vertex)
    else:
        for side, brain in session.brains.items():
            if brain.source != CERTIFIED:
                continue
            spare = _spare_at(brain.tmap, next_vertex, session.budget_of(side))
            assert brain.spare is not None and spare >= brain.spare, (
                f"spare fell from {brain.spare} to {spare}"
            )
            if spare > brain.spare:
                brain.restarts += 1
                assert brain.restarts <= k, "more restarts than the pot allows"
            brain.spare = spare
        if len(session.rounds) >= session.horizon:
            session.outcome = _horizon_outcome(session)
        else:
            _commit_engine_actions(session)
    return record


def run_to_outcome(session: Session) -> Outcome:
    """Drive an engine-vs-engine session to its end."""
    if session.human_side is not None:
        raise ValueError("only sessions without a human side can self-run")
    while not session.over:
        step(session)
    assert session.outcome is not None
    return session.outcome
