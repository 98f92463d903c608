"""Certification of candidate threshold maps.

A candidate map T is tested in two one-sided halves. Each half compiles
the bidding game and the map into a small turn-based parity game and asks
a standard solver whether that half's protagonist wins from every node.

The half for player 1 runs on the game as given. Positions track the
current vertex together with a coarse view of player 1's budget relative
to the map: exactly T(v), exactly one level above, or anything higher
(the "top" tag, absorbing and winning, because a budget that far ahead
can be resynchronized with the map at a profit; the play engine's restart
rule does exactly that). At an exact-tag position the protagonist commits
to a move the recipe allows. The antagonist then either concedes the
bidding round, sending the token along the committed edge while
collecting the recipe bid, or wins the round at the least cost that beats
the bid, one level above it, and sends the token anywhere. Responses the
antagonist cannot afford out of the remaining pot are omitted.

One level above the tag the recipe bid is one level above the base, and
arithmetic collapses the alternatives: a raise overshoots every
neighbor's tags and lands in the absorbing top region, so raising is
outright surrender and the position reduces to direct edges along the
conceded outcome. When the extra level is the advantage itself the
protagonist gains a second genuine option, modeled by a "holdback"
branch: bid the unmarked base while keeping the advantage in hand. The
opponent must then concede the round for one level less than usual, or
take the poisoned tie, collecting the base bid but being forced to move
the token herself with the protagonist's advantage intact. Omitting this
branch makes certification incomplete: there are games whose exact
threshold map is rejected because squeezing the opponent with a
tie-losing bid is the only way to win certain budgets.

Sinks are absorbing wins since a tagged budget there meets the frugal
requirement by construction.

The half for player 2 is the same construction run on the role-swapped
game with the pointwise-complement map. Player 1 winning everywhere in
the first half certifies that every map value is sufficient, so the map
bounds the true thresholds from above. Player 2 winning everywhere in the
second half certifies that no smaller budget would do, so the map also
bounds the thresholds from below. Both halves together pin the candidate
to the exact threshold map, and a failing half names a vertex at which
the candidate is refuted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .averages import (
    allowed_moves,
    base_bid,
    check_average,
    complement_map,
    concede_only,
    strategy_bid,
)
from .budgets import (
    TOP,
    Budget,
    TopValue,
    Value,
    add_levels,
    opponent_budget,
    sub_levels,
    succ,
    value_level,
)
from .games import BiddingGame, ThresholdMap, dualize
from .turnbased import (
    ANTAGONIST,
    PROTAGONIST,
    Node,
    TurnBasedParityGame,
    TurnBasedSolution,
    solve_turn_based,
)

VERIFIED = "Verified"
REJECTED_AVERAGE = "RejectedAverage"
REJECTED_UPPER = "RejectedUpper"
REJECTED_LOWER = "RejectedLower"

# Absorbing positions carry some odd priority so they count as protagonist
# wins; the exact value is immaterial because they are self-loops.
ABSORBING_PRIORITY = 1


def config_node(vid: str, value: Value) -> Node:
    """Position: token on vid, protagonist's budget tagged with value."""
    return ("config", vid, value)


def proposal_node(vid: str, target: str, value: Budget) -> Node:
    """Position after the protagonist committed to moving to target."""
    return ("proposal", vid, target, value)


def holdback_node(vid: str, value: Budget) -> Node:
    """Position after the protagonist bid the base while keeping the mark."""
    return ("holdback", vid, value)


def holdmove_node(vid: str, value: Budget) -> Node:
    """Move choice after the opponent conceded against a held-back bid."""
    return ("holdmove", vid, value)


@dataclass
class CertificateGame:
    """One half's parity game plus the recipe data used to build it.

    `bids` records the mark-adjusted recipe bid per tagged position;
    `actions` annotates every protagonist choice edge with the bid it
    commits to and the vertex moved to if that bid wins the round (None
    when the bid can never win, as with a held-back bid whose ties all
    go to the opponent).
    """

    side: int
    game: BiddingGame
    tmap: ThresholdMap
    parity: TurnBasedParityGame
    bids: dict[tuple[str, Budget], Budget]
    actions: dict[tuple[Node, Node], tuple[Budget, str | None]]
    size_bound: int

    @property
    def node_count(self) -> int:
        return len(self.parity.owner)

    @property
    def edge_count(self) -> int:
        return sum(len(targets) for targets in self.parity.succ.values())


def build_certificate_game(
    game: BiddingGame, tmap: ThresholdMap, side: int = 1
) -> CertificateGame:
    """Compile one half's parity game for a map with the averaging property.

    The caller picks the half: side 1 passes the game and map as they are,
    side 2 passes the role-swapped game and the complemented map. Budgets
    are never materialized beyond the two tags per vertex; everything the
    antagonist could gain by overpaying only pushes the protagonist's tag
    upward, so overshoots collapse into the absorbing top tag.
    """
    assert not check_average(game, tmap), "certificates need an averaging map"
    k = game.k
    pot_level = 2 * k + 1
    owner: dict[Node, int] = {}
    succs: dict[Node, tuple[Node, ...]] = {}
    priority: dict[Node, int] = {}
    bids: dict[tuple[str, Budget], Budget] = {}
    actions: dict[tuple[Node, Node], tuple[Budget, str | None]] = {}

    def add_absorbing(node: Node) -> None:
        owner[node] = ANTAGONIST
        succs[node] = (node,)
        priority[node] = ABSORBING_PRIORITY

    def tags(vid: str) -> list[Budget]:
        value = tmap[vid]
        if isinstance(value, TopValue):
            return []
        out = [value]
        if value.level + 1 <= pot_level:
            out.append(succ(value))
        return out

    for vid in game.all_ids:
        add_absorbing(config_node(vid, TOP))
    for s in game.sinks:
        for tag in tags(s):
            add_absorbing(config_node(s, tag))

    def landing(w: str, landed: Budget) -> Node:
        tw = tmap[w]
        assert isinstance(tw, Budget) and landed >= tw, (
            f"bidding outcome at {w} lands on {landed}, below the map value {tw}"
        )
        if landed == tw or (tw.level + 1 <= pot_level and landed == succ(tw)):
            return config_node(w, landed)
        return config_node(w, TOP)

    for v in game.vertices:
        moves = allowed_moves(game, tmap, v)
        degenerate_vertex = concede_only(game, tmap, v)
        value = tmap[v]
        for tag in tags(v):
            bid = strategy_bid(game, tmap, v, tag)
            bids[(v, tag)] = bid
            node = config_node(v, tag)
            owner[node] = PROTAGONIST
            priority[node] = game.priority[v]
            outs: list[Node] = []
            if tag == value or degenerate_vertex:
                # Exact tag, or a vertex whose neighbors all share one
                # marked value. Full proposal nodes: the antagonist picks
                # between conceding and the cheapest winning raise.
                #
                # Holding the advantage at a degenerate vertex, the
                # protagonist cannot win the bidding at all (the zero bid
                # forfeits every tie), so there is no concede branch, and
                # the antagonist's cheapest winning response is the tying
                # zero bid rather than a raise.
                degenerate = degenerate_vertex and tag.advantage
                pay = Budget(0) if degenerate else succ(bid)
                affordable = opponent_budget(tag, k) >= pay
                for target in moves:
                    prop = proposal_node(v, target, tag)
                    owner[prop] = ANTAGONIST
                    priority[prop] = 0
                    pouts: list[Node] = []
                    if not degenerate:
                        conceded = landing(target, sub_levels(tag, bid))
                        assert conceded[2] is not TOP, (
                            f"concede at {v} must land on a tagged budget at {target}"
                        )
                        pouts.append(conceded)
                    if affordable:
                        landed = add_levels(tag, pay)
                        for w in game.neighbors(v):
                            out = landing(w, landed)
                            if out not in pouts:
                                pouts.append(out)
                    assert pouts, f"response position at {v} has no outcome"
                    succs[prop] = tuple(pouts)
                    outs.append(prop)
                    actions[(node, prop)] = (bid, target)
            else:
                # One level above the exact tag with a defined base bid.
                # Any affordable raise against the recipe bid overshoots
                # every neighbor's tags, so raising only hands the
                # protagonist the absorbing top region and the proposal
                # reduces to the conceded outcome: direct edges.
                base = base_bid(game, tmap, v)
                assert bid == succ(base) and base.advantage != tag.advantage, (
                    f"the recipe bid one level above the tag at {v} must be "
                    "the base bid adjusted by the off-mark level"
                )
                raise_pay = succ(bid)
                if opponent_budget(tag, k) >= raise_pay:
                    landed = add_levels(tag, raise_pay)
                    assert all(
                        landing(w, landed) == config_node(w, TOP)
                        for w in game.neighbors(v)
                    ), f"a raise one level above the tag at {v} must overshoot"
                for target in moves:
                    out = landing(target, sub_levels(tag, bid))
                    assert out[2] is not TOP, (
                        f"concede at {v} must land on a tagged budget at {target}"
                    )
                    if out not in outs:
                        outs.append(out)
                        actions[(node, out)] = (bid, target)
                if tag.advantage and opponent_budget(tag, k) >= base:
                    # The extra level is the advantage itself, and the
                    # opponent can afford to tie the unmarked base. Bidding
                    # the base while keeping the mark in hand poisons the
                    # tie: the opponent either concedes a level cheaper
                    # than against the recipe bid, or wins the tie, pays
                    # the base, and must move the token herself, leaving
                    # the protagonist's budget exactly on the marked
                    # maximum neighbor value.
                    hold = holdback_node(v, tag)
                    owner[hold] = ANTAGONIST
                    priority[hold] = 0
                    houts: list[Node] = []
                    if base.level > 0:
                        choice = holdmove_node(v, tag)
                        owner[choice] = PROTAGONIST
                        priority[choice] = 0
                        couts: list[Node] = []
                        for target in moves:
                            out = landing(target, sub_levels(tag, base))
                            if out not in couts:
                                couts.append(out)
                                actions[(choice, out)] = (base, target)
                        succs[choice] = tuple(couts)
                        houts.append(choice)
                    landed = add_levels(tag, base)
                    assert landed.advantage, (
                        f"a taken tie at {v} must land on a marked budget"
                    )
                    for w in game.neighbors(v):
                        out = landing(w, landed)
                        if out not in houts:
                            houts.append(out)
                    succs[hold] = tuple(houts)
                    outs.append(hold)
                    actions[(node, hold)] = (base, None)
                elif tag.advantage and base.level > 0:
                    # The opponent can never match the unmarked base, so
                    # the held-back bid wins every round outright, paying
                    # one level less than the recipe bid.
                    for target in moves:
                        out = landing(target, sub_levels(tag, base))
                        if out not in outs:
                            outs.append(out)
                            actions[(node, out)] = (base, target)
            assert outs, f"no allowed move at {v}"
            succs[node] = tuple(outs)

    parity = TurnBasedParityGame(owner=owner, succ=succs, priority=priority)
    bound = 3 * len(game.all_ids) + 2 * len(game.edges) * (game.max_degree() + 2)
    cert = CertificateGame(
        side=side,
        game=game,
        tmap=tmap,
        parity=parity,
        bids=bids,
        actions=actions,
        size_bound=bound,
    )
    assert cert.node_count <= bound, (
        f"certificate has {cert.node_count} nodes, bound is {bound}"
    )
    assert cert.edge_count <= bound, (
        f"certificate has {cert.edge_count} edges, bound is {bound}"
    )
    return cert


@dataclass
class CertReport:
    """Outcome of certifying one candidate map."""

    verdict: str
    counterexample: str | None = None
    problems: list[str] = field(default_factory=list)
    upper: CertificateGame | None = None
    lower: CertificateGame | None = None
    upper_solution: TurnBasedSolution | None = None
    lower_solution: TurnBasedSolution | None = None

    @property
    def verified(self) -> bool:
        return self.verdict == VERIFIED

    def describe(self) -> str:
        if self.verdict == REJECTED_AVERAGE:
            return f"{self.verdict}: " + "; ".join(self.problems)
        if self.counterexample is not None:
            return f"{self.verdict} at {self.counterexample}"
        return self.verdict


def _losing_vertex(
    cert: CertificateGame, solution: TurnBasedSolution
) -> str | None:
    losing = {
        node[1]
        for node, winner in solution.win.items()
        if winner != PROTAGONIST
    }
    return min(losing) if losing else None


def certify(game: BiddingGame, tmap: ThresholdMap) -> CertReport:
    """Decide whether a candidate map equals the game's thresholds.

    Stage one is the local averaging check. Stage two solves the player 1
    half; a losing node shows some value cannot be enough, so the map is
    rejected as an upper bound. Stage three solves the player 2 half on
    the role-swapped game; a losing node there shows some value is more
    than needed, so the map is rejected as a lower bound. Surviving all
    three stages is a proof, not a heuristic: the map then equals the
    threshold map exactly.
    """
    problems = check_average(game, tmap)
    if problems:
        return CertReport(verdict=REJECTED_AVERAGE, problems=problems)
    upper = build_certificate_game(game, tmap, side=1)
    upper_solution = solve_turn_based(upper.parity)
    bad = _losing_vertex(upper, upper_solution)
    if bad is not None:
        return CertReport(
            verdict=REJECTED_UPPER,
            counterexample=bad,
            upper=upper,
            upper_solution=upper_solution,
        )
    swapped = dualize(game)
    flipped = complement_map(game, tmap)
    mirrored = check_average(swapped, flipped)
    assert not mirrored, f"complement of an averaging map must average: {mirrored}"
    lower = build_certificate_game(swapped, flipped, side=2)
    lower_solution = solve_turn_based(lower.parity)
    bad = _losing_vertex(lower, lower_solution)
    if bad is not None:
        return CertReport(
            verdict=REJECTED_LOWER,
            counterexample=bad,
            upper=upper,
            lower=lower,
            upper_solution=upper_solution,
            lower_solution=lower_solution,
        )
    return CertReport(
        verdict=VERIFIED,
        upper=upper,
        lower=lower,
        upper_solution=upper_solution,
        lower_solution=lower_solution,
    )


def winning_action(
    cert: CertificateGame, solution: TurnBasedSolution, node: Node
) -> tuple[Budget, str | None]:
    """The bid and on-win move the certificate commits to at a config node.

    The move is None only for a held-back bid the protagonist can never
    win a round with; no move is ever needed then.
    """
    choice = solution.strategy[PROTAGONIST].get(node)
    assert choice is not None, f"no winning choice recorded at {node}"
    bid, move = cert.actions[(node, choice)]
    if move is None and choice[0] == "holdback":
        inner = solution.strategy[PROTAGONIST].get(holdmove_node(*choice[1:]))
        if inner is not None:
            move = cert.actions[(holdmove_node(*choice[1:]), inner)][1]
    return bid, move


def extract_strategy(report: CertReport, side: int = 1) -> dict[Node, str]:
    """The winning move table of one half of a verified certificate.

    Maps each non-absorbing config node to the vertex the protagonist
    moves to when its committed bid wins the round. Absorbing positions
    need no entry, so the table stays linear in the game graph regardless
    of the pot size. Entries whose bid can never win a round fall back to
    the first allowed vertex, keeping the table total.
    """
    if not report.verified:
        raise ValueError(f"no strategy from a certificate that is {report.verdict}")
    cert = report.upper if side == 1 else report.lower
    solution = report.upper_solution if side == 1 else report.lower_solution
    assert cert is not None and solution is not None
    table: dict[Node, str] = {}
    for node, player in cert.parity.owner.items():
        if player != PROTAGONIST or node[0] != "config":
            continue
        bid, move = winning_action(cert, solution, node)
        if move is None:
            move = min(allowed_moves(cert.game, cert.tmap, node[1]))
        table[node] = move
    assert len(table) <= cert.node_count, "strategy table exceeds the game size"
    return table


class CandidateRejected(ValueError):
    """A supplied candidate map failed certification, so no answer is given."""

    def __init__(self, report: CertReport):
        super().__init__(f"candidate not certified: {report.describe()}")
        self.report = report


def decide_threshold(
    game: BiddingGame,
    vertex: str,
    level: Value,
    candidate: ThresholdMap | None = None,
) -> bool:
    """Is the threshold at this vertex at least the given value?

    Without a candidate the thresholds are computed and then certified as
    a self-check. With a candidate the answer is read off the candidate,
    but only after certification passes; a rejected candidate raises
    instead of silently answering from bad data.
    """
    if vertex not in game.all_ids:
        raise ValueError(f"unknown vertex {vertex!r}")
    if candidate is None:
        from .parity import solve_frugal_parity

        tmap, _ = solve_frugal_parity(game)
        report = certify(game, tmap)
        assert report.verified, (
            f"solver output failed certification: {report.describe()}"
        )
    else:
        report = certify(game, candidate)
        if not report.verified:
            raise CandidateRejected(report)
        tmap = candidate
    return value_level(tmap[vertex], game.k) >= value_level(level, game.k)
