"""Discrete budgets with an advantage marker.

Budgets are drawn from the chain 0 < 0* < 1 < 1* < 2 < ... where a starred
value means the owner additionally holds the tie-breaking advantage. We
encode a budget as a single non-negative integer, its *level*:

    level = 2 * magnitude + (1 if advantage else 0)

so the chain order is exactly the integer order on levels, and the budget
arithmetic used throughout (paying a winning bid, absorbing the opponent's
winning bid, splitting totals) becomes plain addition and subtraction of
levels. A separate sentinel TOP sits above every budget and stands for
"no finite budget suffices".
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass


class BudgetError(ValueError):
    """Out-of-domain budget arithmetic or an unparsable budget literal."""


@functools.total_ordering
@dataclass(frozen=True)
class Budget:
    level: int

    def __post_init__(self) -> None:
        if not isinstance(self.level, int) or isinstance(self.level, bool):
            raise BudgetError(f"budget level must be an int, got {self.level!r}")
        if self.level < 0:
            raise BudgetError(f"budget level must be non-negative, got {self.level}")

    @classmethod
    def of(cls, magnitude: int, advantage: bool = False) -> "Budget":
        if magnitude < 0:
            raise BudgetError(f"magnitude must be non-negative, got {magnitude}")
        return cls(2 * magnitude + (1 if advantage else 0))

    @property
    def magnitude(self) -> int:
        return self.level // 2

    @property
    def advantage(self) -> bool:
        return self.level % 2 == 1

    def __lt__(self, other: object) -> bool:
        if isinstance(other, Budget):
            return self.level < other.level
        if isinstance(other, TopValue):
            return True
        return NotImplemented

    def __str__(self) -> str:
        return f"{self.magnitude}*" if self.advantage else str(self.magnitude)

    def __repr__(self) -> str:
        return f"Budget({self})"


class TopValue:
    """Sentinel strictly greater than every Budget. Compare, don't compute."""

    _instance: "TopValue | None" = None

    def __new__(cls) -> "TopValue":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TopValue)

    def __hash__(self) -> int:
        return hash("TopValue")

    def __lt__(self, other: object) -> bool:
        if isinstance(other, (Budget, TopValue)):
            return False
        return NotImplemented

    def __le__(self, other: object) -> bool:
        if isinstance(other, TopValue):
            return True
        if isinstance(other, Budget):
            return False
        return NotImplemented

    def __gt__(self, other: object) -> bool:
        if isinstance(other, Budget):
            return True
        if isinstance(other, TopValue):
            return False
        return NotImplemented

    def __ge__(self, other: object) -> bool:
        if isinstance(other, (Budget, TopValue)):
            return True
        return NotImplemented

    def __str__(self) -> str:
        return "top"

    def __repr__(self) -> str:
        return "TOP"


TOP = TopValue()

# A threshold entry is either a concrete budget or the unwinnable sentinel.
Value = Budget | TopValue

_LITERAL = re.compile(r"^(\d+)(\*?)$")


def parse_value(text: str) -> Value:
    """Parse '3', '3*' or 'top'."""
    if not isinstance(text, str):
        raise BudgetError(f"budget literal must be a string, got {text!r}")
    stripped = text.strip()
    if stripped == "top":
        return TOP
    match = _LITERAL.match(stripped)
    if match is None:
        raise BudgetError(f"bad budget literal {text!r}")
    return Budget.of(int(match.group(1)), match.group(2) == "*")


def format_value(value: Value) -> str:
    if not isinstance(value, (Budget, TopValue)):
        raise BudgetError(f"not a budget value: {value!r}")
    return str(value)


def max_budget(k: int) -> Budget:
    """The greatest budget available when the total pot is k, namely k*."""
    return Budget.of(k, True)


def top_level(k: int) -> int:
    """The level reserved for TOP: one past k*."""
    return 2 * k + 2


def value_level(value: Value, k: int) -> int:
    """Level of a value with TOP mapped to its reserved slot above k*."""
    if isinstance(value, TopValue):
        return top_level(k)
    return value.level


def fits(value: Value, k: int) -> bool:
    """True when the value is expressible with pot k (TOP always fits)."""
    if isinstance(value, TopValue):
        return True
    return value.level <= 2 * k + 1


def succ(value: Budget) -> Budget:
    if not isinstance(value, Budget):
        raise BudgetError(f"succ needs a concrete budget, got {value!r}")
    return Budget(value.level + 1)


def pred(value: Budget) -> Budget:
    if not isinstance(value, Budget):
        raise BudgetError(f"pred needs a concrete budget, got {value!r}")
    if value.level == 0:
        raise BudgetError("0 has no predecessor")
    return Budget(value.level - 1)


def add_levels(x: Budget, y: Budget) -> Budget:
    """Budget gained when absorbing the opponent's winning bid.

    At most one operand may carry the advantage; a carry happens naturally
    in level arithmetic (1 plus 1* is 2*).
    """
    if x.advantage and y.advantage:
        raise BudgetError(f"cannot add two advantage-marked budgets: {x}, {y}")
    return Budget(x.level + y.level)


def sub_levels(x: Budget, y: Budget) -> Budget:
    """Budget left after paying a winning bid of y out of x.

    The payer can only spend an advantage it holds, and never more budget
    than it has.
    """
    if y.advantage and not x.advantage:
        raise BudgetError(f"cannot pay advantage out of unmarked budget: {x} minus {y}")
    if y.level > x.level:
        raise BudgetError(f"bid exceeds budget: {x} minus {y}")
    return Budget(x.level - y.level)


def opponent_budget(budget: Budget, k: int) -> Budget:
    """The other player's budget when one player holds this one out of pot k.

    The two sides always split k plus one advantage, so levels sum to 2k+1.
    """
    if budget.level > 2 * k + 1:
        raise BudgetError(f"budget {budget} does not fit pot k={k}")
    return Budget(2 * k + 1 - budget.level)


def flip_threshold(value: Value, k: int) -> Value:
    """The opponent's threshold at a vertex whose threshold is this value.

    The opponent starts winning exactly where this player stops: flip(0) is
    TOP, flip(TOP) is 0, and otherwise the flip reflects the level chain one
    step off-center (level 2k+2 minus level). It is an involution.
    """
    if isinstance(value, TopValue):
        return Budget(0)
    if not fits(value, k):
        raise BudgetError(f"value {value} does not fit pot k={k}")
    if value.level == 0:
        return TOP
    return Budget(2 * k + 2 - value.level)
