"""Common contract for implicitly represented search domains.

A model never materializes its graph; it answers three questions about a
state (children, goal membership, heuristic values) and the engine does
the rest. States must be hashable and totally ordered so runs are
deterministic and report output can be sorted canonically.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Iterable, Sequence

from ..engine import EdgeLabel
from ..evaluators import ZERO_BUNDLE, HeuristicBundle


class CapExceeded(Exception):
    """Raised when an exhaustive enumeration would pass its state cap."""


class ProblemModel(ABC):
    """Implicit-graph contract: initial state, child generator, goal test."""

    heuristics: HeuristicBundle = ZERO_BUNDLE

    @abstractmethod
    def initial_state(self):
        ...

    @abstractmethod
    def is_goal(self, state) -> bool:
        ...

    @abstractmethod
    def children(self, state) -> list[tuple[EdgeLabel, object]]:
        """Outgoing edges of a state, in the domain's canonical order."""

    @abstractmethod
    def edge_costs(self) -> frozenset[int]:
        """Distinct action costs occurring anywhere in the instance."""

    @abstractmethod
    def describe(self) -> str:
        """Stable identity string; equal iff the instances are equal."""

    @property
    def max_edge_cost(self) -> int:
        return max(self.edge_costs())

    @property
    def min_edge_cost(self) -> int:
        return min(self.edge_costs())


def replay(model: ProblemModel, plan: Sequence[str]):
    """Walk a plan's action names through the model from the initial state.

    Returns (end_state, total_cost, size). Raises ValueError when a step
    names no edge of the current state, so any reported plan can be
    independently validated.
    """
    state = model.initial_state()
    cost = 0
    for step, name in enumerate(plan):
        for edge, nxt in model.children(state):
            if edge.name == name:
                state = nxt
                cost += edge.cost
                break
        else:
            raise ValueError(f"step {step}: no edge named {name!r} from {state!r}")
    return state, cost, len(plan)


def count_reachable(model: ProblemModel, cap: int = 1_000_000) -> int:
    """Count distinct states reachable from the initial state.

    Plain breadth-first enumeration; raises CapExceeded once more than
    ``cap`` states have been seen.
    """
    seen = {model.initial_state()}
    frontier = [model.initial_state()]
    while frontier:
        nxt = []
        for state in frontier:
            for _, child in model.children(state):
                if child not in seen:
                    seen.add(child)
                    if len(seen) > cap:
                        raise CapExceeded(f"more than {cap} reachable states")
                    nxt.append(child)
        frontier = nxt
    return len(seen)


def iter_reachable(model: ProblemModel, cap: int = 1_000_000) -> Iterable:
    """Yield every reachable state once (breadth-first order)."""
    seen = {model.initial_state()}
    frontier = [model.initial_state()]
    yield model.initial_state()
    while frontier:
        nxt = []
        for state in frontier:
            for _, child in model.children(state):
                if child not in seen:
                    seen.add(child)
                    if len(seen) > cap:
                        raise CapExceeded(f"more than {cap} reachable states")
                    nxt.append(child)
                    yield child
        frontier = nxt
