"""Uniform branching tree with two action-cost classes and planted goals.

Every interior node has x high-cost children (labels h1..hx) and y
low-cost children (l1..ly). Goals are pseudorandomly planted action
sequences so that discovery-effort predictions can be measured on real
runs rather than argued about. States are encoded as byte strings of
child indices, which keeps memory flat on deep cost-plateau floods.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..engine import EdgeLabel
from ..evaluators import ZERO_BUNDLE, HeuristicBundle
from .base import ProblemModel


def _round_half_up(value: Fraction) -> int:
    return int(value + Fraction(1, 2)) if value >= 0 else -int(-value + Fraction(1, 2))


@dataclass(frozen=True)
class SolutionSpec:
    """How goals are planted: how many, at what cost, with what mix.

    ``normalized_cost`` is the target solution cost divided by c_high.
    The planting depth solves depth * (mix + (1-mix) * eps) = cost for a
    solution whose fraction ``mix_ratio`` of actions is high-cost, then
    rounds half-up to an integer; the high-action count rounds the same
    way. All planted solutions share that depth, so none is a prefix of
    another.
    """

    normalized_cost: Fraction
    count: int = 1
    mix_ratio: Fraction = Fraction(1, 2)
    seed: int = 0
    max_depth: Optional[int] = None


class TreeProblem(ProblemModel):
    def __init__(self, x: int, y: int, c_high: int, c_low: int,
                 solution_spec: SolutionSpec,
                 heuristics: HeuristicBundle = ZERO_BUNDLE):
        if x <= 1 or y <= 1:
            raise ValueError("both branch counts must exceed 1")
        if not 0 < c_low < c_high:
            raise ValueError("need 0 < c_low < c_high")
        self.x = x
        self.y = y
        self.c_high = c_high
        self.c_low = c_low
        self.epsilon = Fraction(c_low, c_high)
        self.solution_spec = solution_spec
        self.heuristics = heuristics

        self.solution_depth = planted_depth(
            solution_spec.normalized_cost, solution_spec.mix_ratio, self.epsilon)
        self.n_high = _round_half_up(solution_spec.mix_ratio * self.solution_depth)
        self.n_low = self.solution_depth - self.n_high
        if self.n_low < 0:
            raise ValueError("mix ratio and depth leave no room for low actions")

        if solution_spec.max_depth is not None:
            self.max_depth = solution_spec.max_depth
        else:
            # Deep enough that a cost-ordered flood of the planted cost is
            # never cut off by the depth limit.
            planted_cost = self.n_high * c_high + self.n_low * c_low
            self.max_depth = max(self.solution_depth, planted_cost // c_low + 1)
        if self.max_depth < self.solution_depth:
            raise ValueError("max_depth must cover the planted solutions")

        self._edges = tuple(
            [(EdgeLabel(f"h{i + 1}", c_high), i) for i in range(x)]
            + [(EdgeLabel(f"l{j + 1}", c_low), x + j) for j in range(y)]
        )
        self.solutions = frozenset(self._plant())

    def _plant(self) -> set[bytes]:
        rng = random.Random(self.solution_spec.seed)
        d, nh = self.solution_depth, self.n_high
        planted: set[bytes] = set()
        while len(planted) < self.solution_spec.count:
            positions = set(rng.sample(range(d), nh)) if nh else set()
            seq = bytes(
                rng.randrange(self.x) if i in positions
                else self.x + rng.randrange(self.y)
                for i in range(d)
            )
            planted.add(seq)
        return planted

    def initial_state(self) -> bytes:
        return b""

    def is_goal(self, state: bytes) -> bool:
        return state in self.solutions

    def children(self, state: bytes):
        return tree_children(state, self)

    def edge_costs(self) -> frozenset[int]:
        return frozenset((self.c_low, self.c_high))

    def describe(self) -> str:
        s = self.solution_spec
        return (f"tree(x={self.x},y={self.y},c_high={self.c_high},c_low={self.c_low},"
                f"C={s.normalized_cost},mix={s.mix_ratio},count={s.count},"
                f"seed={s.seed},max_depth={self.max_depth})")


def tree_children(state: bytes, instance: TreeProblem):
    """All x+y child edges, high-cost labels first; leaves have none."""
    if len(state) >= instance.max_depth:
        return []
    return [(edge, state + bytes((idx,))) for edge, idx in instance._edges]


def planted_depth(normalized_cost: Fraction, mix_ratio: Fraction,
                  epsilon: Fraction) -> int:
    """Depth at which solutions of the given normalized cost and mix live.

    Solves d * (mix + (1 - mix) * eps) = cost exactly, then rounds
    half-up; for a 50/50 mix this is d = 2C / (1 + eps).
    """
    mix = Fraction(mix_ratio)
    d = Fraction(normalized_cost) / (mix + (1 - mix) * Fraction(epsilon))
    return _round_half_up(d)


@dataclass(frozen=True)
class TreePredictions:
    cost_based_bound: int
    size_based_bound: int
    depth_exact: Fraction
    depth: int


def tree_predictions(x: int, y: int, epsilon: Fraction, normalized_cost) -> TreePredictions:
    """Closed-form effort bounds for the two orderings on the tree.

    A cost-ordered search may visit on the order of (x + y^(1/eps))^C
    nodes before covering all candidate solutions of normalized cost C;
    a size-ordered one visits at most (x + y)^d with d = 2C / (1 + eps)
    for evenly mixed solutions. Exact big-integer arithmetic; requires
    1/eps and C integral.
    """
    eps = Fraction(epsilon)
    C = Fraction(normalized_cost)
    inv = 1 / eps
    if inv.denominator != 1 or C.denominator != 1:
        raise ValueError("exact bounds need integral 1/epsilon and integral cost")
    d_exact = 2 * C / (1 + eps)
    d = _round_half_up(d_exact)
    return TreePredictions(
        cost_based_bound=(x + y ** int(inv)) ** int(C),
        size_based_bound=(x + y) ** d,
        depth_exact=d_exact,
        depth=d,
    )


def eps_threshold(b) -> Fraction:
    """Largest cost ratio at which the size ordering provably wins.

    Computes (1 - log_b 2) / (1 + log_b 2); exact for b a power of two
    (for b = 4 this is 1/3), a float otherwise.
    """
    b = int(b)
    if b < 2:
        raise ValueError("branching factor must be >= 2")
    j = b.bit_length() - 1
    if 1 << j == b:
        return Fraction(j - 1, j + 1)
    log = math.log(2, b)
    return (1 - log) / (1 + log)
