"""Discrete-bidding graph games: threshold solvers, certificates, play engine."""

from .budgets import (
    TOP,
    Budget,
    BudgetError,
    TopValue,
    Value,
    flip_threshold,
    format_value,
    opponent_budget,
    parse_value,
    value_level,
)
from .games import (
    BiddingGame,
    GameFormatError,
    ThresholdMap,
    dualize,
    game_from_dict,
    game_to_dict,
    load_game,
    load_threshold_map,
    make_game,
    normalize_objective,
    save_game,
    threshold_map_to_dict,
)
from .averages import average_at, check_average, complement_map
from .reachability import IterationTrace, solve_frugal_reachability, solve_frugal_safety
from .parity import DescentTrace, bounded_threshold, solve_cobuchi, solve_frugal_parity
from .oracle import OracleCapExceeded, oracle_thresholds, oracle_value
from .certify import (
    VERIFIED,
    CandidateRejected,
    CertReport,
    certify,
    decide_threshold,
    extract_strategy,
)
from .engine import (
    ActionHalf,
    IllegalBid,
    Outcome,
    RoundRecord,
    Session,
    new_session,
    prepare,
    run_to_outcome,
    step,
)

__all__ = [
    "TOP",
    "Budget",
    "BudgetError",
    "TopValue",
    "Value",
    "flip_threshold",
    "format_value",
    "opponent_budget",
    "parse_value",
    "value_level",
    "BiddingGame",
    "GameFormatError",
    "ThresholdMap",
    "dualize",
    "game_from_dict",
    "game_to_dict",
    "load_game",
    "load_threshold_map",
    "make_game",
    "normalize_objective",
    "save_game",
    "threshold_map_to_dict",
    "average_at",
    "check_average",
    "complement_map",
    "IterationTrace",
    "solve_frugal_reachability",
    "solve_frugal_safety",
    "DescentTrace",
    "bounded_threshold",
    "solve_cobuchi",
    "solve_frugal_parity",
    "OracleCapExceeded",
    "oracle_thresholds",
    "oracle_value",
    "VERIFIED",
    "CandidateRejected",
    "CertReport",
    "certify",
    "decide_threshold",
    "extract_strategy",
    "ActionHalf",
    "IllegalBid",
    "Outcome",
    "RoundRecord",
    "Session",
    "new_session",
    "prepare",
    "run_to_outcome",
    "step",
]
