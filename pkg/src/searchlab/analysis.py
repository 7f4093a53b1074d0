"""Ground-truth oracles and instrumentation for search-effort studies.

Everything here is exhaustive and exact: a lexicographic uniform-cost /
breadth-first oracle for reference optima, the cost-optimal footprint of
an instance under a consistent admissible heuristic, expansion-set
comparison between proof-completing runs, and the closed-form worst-case
effort bound.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .domains.base import CapExceeded, ProblemModel
from .engine import RunResult, SearchNode, TERMINATION_PROVED


class InadmissibleHeuristic(Exception):
    """Raised when a supposedly admissible heuristic fails validation."""


@dataclass(frozen=True)
class OracleSolution:
    optimal_cost: int
    optimal_size_among_cheapest: int
    smallest_size: int
    plan: tuple[str, ...]


def oracle_solve(model: ProblemModel, cap: int = 1_000_000) -> Optional[OracleSolution]:
    """Exhaustive reference optimum of an instance.

    Uniform-cost search ordered lexicographically by (cost, size) yields
    the optimal cost and the fewest steps among cost-optimal plans;
    breadth-first search yields the smallest plan outright. Returns None
    for unsolvable instances, raises CapExceeded past ``cap`` states.
    """
    start = model.initial_state()
    best: dict = {start: (0, 0)}
    parent: dict = {start: None}
    heap = [(0, 0, start)]
    goal_state = None
    while heap:
        cost, size, state = heapq.heappop(heap)
        if (cost, size) > best[state]:
            continue
        if model.is_goal(state):
            goal_state = state
            break
        for edge, child in model.children(state):
            cand = (cost + edge.cost, size + 1)
            if child not in best:
                if len(best) >= cap:
                    raise CapExceeded(f"more than {cap} states enumerated")
                best[child] = cand
                parent[child] = (state, edge.name)
                heapq.heappush(heap, (*cand, child))
            elif cand < best[child]:
                best[child] = cand
                parent[child] = (state, edge.name)
                heapq.heappush(heap, (*cand, child))
    if goal_state is None:
        return None

    names = []
    cursor = goal_state
    while parent[cursor] is not None:
        prev, name = parent[cursor]
        names.append(name)
        cursor = prev
    names.reverse()

    return OracleSolution(
        optimal_cost=best[goal_state][0],
        optimal_size_among_cheapest=best[goal_state][1],
        smallest_size=_bfs_smallest(model, cap),
        plan=tuple(names),
    )


def _bfs_smallest(model: ProblemModel, cap: int) -> int:
    start = model.initial_state()
    if model.is_goal(start):
        return 0
    seen = {start}
    frontier = [start]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for state in frontier:
            for _, child in model.children(state):
                if child in seen:
                    continue
                if model.is_goal(child):
                    return depth
                seen.add(child)
                if len(seen) > cap:
                    raise CapExceeded(f"more than {cap} states enumerated")
                nxt.append(child)
        frontier = nxt
    raise AssertionError("unreachable: solvability established by caller")


@dataclass(frozen=True)
class FootprintReport:
    """States below / at the optimal-cost altitude of an instance.

    Exhausting ``strict_set`` (plus the boundary up to the incumbent) is
    what an optimality proof by search consists of; boundary states are
    kept separate because tie-breaking legitimately varies whether they
    get expanded.
    """

    f_star: int
    strict_set: frozenset
    boundary_set: frozenset

    @property
    def strict_size(self) -> int:
        return len(self.strict_set)

    @property
    def boundary_size(self) -> int:
        return len(self.boundary_set)


def compute_footprint(model: ProblemModel, h: Optional[Callable] = None,
                      cap: int = 1_000_000) -> FootprintReport:
    """Classify every reachable state by its best f_c against f*.

    ``h`` defaults to the model's admissible cost heuristic. Consistency
    (h(u) <= c(u,v) + h(v) on every edge) and goal-zero are checked
    during the sweep and InadmissibleHeuristic is raised on violation,
    since the footprint equivalence argument depends on both.
    """
    if h is None:
        h = model.heuristics.h_c_admissible
    start = model.initial_state()
    dist = {start: 0}
    heap = [(0, start)]
    f_star = math.inf
    while heap:
        g, state = heapq.heappop(heap)
        if g > dist[state]:
            continue
        if model.is_goal(state):
            if h(state) != 0:
                raise InadmissibleHeuristic(f"h != 0 on goal state {state!r}")
            f_star = min(f_star, g)
        hu = h(state)
        for edge, child in model.children(state):
            if hu > edge.cost + h(child):
                raise InadmissibleHeuristic(
                    f"h inconsistent on edge {edge.name!r} from {state!r}")
            ng = g + edge.cost
            if child not in dist:
                if len(dist) >= cap:
                    raise CapExceeded(f"more than {cap} states enumerated")
                dist[child] = ng
                heapq.heappush(heap, (ng, child))
            elif ng < dist[child]:
                dist[child] = ng
                heapq.heappush(heap, (ng, child))
    if f_star is math.inf:
        raise ValueError("instance is unsolvable; footprint undefined")

    strict = frozenset(s for s, g in dist.items() if g + h(s) < f_star)
    boundary = frozenset(s for s, g in dist.items() if g + h(s) == f_star)
    return FootprintReport(f_star=f_star, strict_set=strict, boundary_set=boundary)


@dataclass(frozen=True)
class CompareReport:
    equal_states: bool
    only_a: tuple
    only_b: tuple


def expansion_set_compare(run_a: RunResult, run_b: RunResult) -> CompareReport:
    """Symmetric difference of the state sets two proof runs expanded.

    Both runs must have completed a proof on the same instance and have
    recorded their expansions; expansion order is deliberately ignored.
    """
    if run_a.model_key != run_b.model_key:
        raise ValueError("runs come from different instances; sets not comparable")
    for run, tag in ((run_a, "A"), (run_b, "B")):
        if run.metrics.termination != TERMINATION_PROVED:
            raise ValueError(f"run {tag} did not complete an optimality proof")
        if run.expansion_order is None:
            raise ValueError(f"run {tag} did not record its expansions")
    set_a, set_b = run_a.expanded_states, run_b.expanded_states
    return CompareReport(
        equal_states=set_a == set_b,
        only_a=tuple(sorted(set_a - set_b)),
        only_b=tuple(sorted(set_b - set_a)),
    )


def worst_case_bound(b: int, d: int, min_grad, max_grad) -> int:
    """Worst-case node count b^(d * max_grad / min_grad), floored exactly.

    The shallowest possible g-gradient stretches the effective depth of a
    uniform b-ary search tree; a vanishing min_grad makes the bound
    meaningless and is rejected.
    """
    min_grad = Fraction(min_grad)
    max_grad = Fraction(max_grad)
    if min_grad <= 0:
        raise ValueError("min_grad must be positive")
    exponent = Fraction(d) * max_grad / min_grad
    return b ** (exponent.numerator // exponent.denominator)


@dataclass(frozen=True)
class ErrorRecord:
    """Evaluation gap of a node against a reference solution."""

    e_c: int
    e_s: int
    reference_cost: int
    reference_size: int


def heuristic_error(node: SearchNode, reference, bundle) -> ErrorRecord:
    """e_c = f_c(x) - f_c(n) and e_s likewise, for reference solution x.

    ``reference`` needs .cost and .size attributes (an IncumbentRecord or
    an oracle result adapter). Nonnegative e_c certifies the node still
    looked at least as promising as the reference when x is optimal and
    the heuristic admissible.
    """
    e_c = reference.cost - (node.g_cost + bundle.h_c(node.state))
    e_s = reference.size - (node.g_size + bundle.h_s(node.state))
    return ErrorRecord(e_c=e_c, e_s=e_s,
                       reference_cost=reference.cost, reference_size=reference.size)
