"""The k-bit counter cycle: 2^k states, increment and decrement edges.

Ordinary steps cost 1; the two overflow transitions (2^k-1 -> 0 and
0 -> 2^k-1) cost 2^(k-1). The single root decision (go up or go down)
makes this the smallest graph on which cost-ordered and size-ordered
search diverge exponentially.
"""

from __future__ import annotations

from fractions import Fraction

from ..engine import EdgeLabel
from ..evaluators import ZERO_BUNDLE, HeuristicBundle
from .base import ProblemModel


class CounterProblem(ProblemModel):
    """Reach ``goal`` from 0 on the k-bit counter."""

    def __init__(self, k: int, goal: int, heuristics: HeuristicBundle = ZERO_BUNDLE):
        if k < 2:
            raise ValueError(f"k must be >= 2, got {k}")
        self.k = k
        self.size = 1 << k
        if not 0 <= goal < self.size:
            raise ValueError(f"goal must lie in [0, {self.size - 1}], got {goal}")
        self.goal = goal
        self.step_cost = 1
        self.wrap_cost = 1 << (k - 1)
        self.heuristics = heuristics
        self._inc = EdgeLabel("inc", self.step_cost)
        self._dec = EdgeLabel("dec", self.step_cost)
        self._inc_wrap = EdgeLabel("inc", self.wrap_cost)
        self._dec_wrap = EdgeLabel("dec", self.wrap_cost)

    def initial_state(self) -> int:
        return 0

    def is_goal(self, state: int) -> bool:
        return state == self.goal

    def children(self, state: int):
        return counter_children(state, self)

    def edge_costs(self) -> frozenset[int]:
        return frozenset((self.step_cost, self.wrap_cost))

    def describe(self) -> str:
        return f"counter(k={self.k},goal={self.goal})"


def counter_children(state: int, instance: CounterProblem):
    """Both outgoing edges of a counter state, increment first."""
    last = instance.size - 1
    inc = instance._inc_wrap if state == last else instance._inc
    dec = instance._dec_wrap if state == 0 else instance._dec
    return [
        (inc, (state + 1) & last),
        (dec, (state - 1) & last),
    ]


def counter_solution_costs(k: int):
    """Costs of the two minimal plans for the goal 2^k - 2.

    Returns (incrementing_cost, wrapping_cost, (normalized_inc,
    normalized_dec)) where normalization divides by the overflow cost.
    With eps = 2^(1-k) the normalized pair is exactly (2(1-eps), 1+eps).
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    inc_cost = (1 << k) - 2
    wrap_cost = (1 << (k - 1)) + 1
    c_max = 1 << (k - 1)
    return inc_cost, wrap_cost, (Fraction(inc_cost, c_max), Fraction(wrap_cost, c_max))
