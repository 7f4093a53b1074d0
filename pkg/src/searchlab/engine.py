"""Best-first branch-and-bound over implicitly represented graphs.

The engine pops the open-list minimum, applies three tests in a fixed
order (prune against the incumbent bound, goal test, duplicate test) and
only then expands. Solutions are reported the moment they are popped, so
a run can be interrupted after any incumbent and still hold a valid,
strictly improving plan sequence. Exhausting the open list under an
admissible pruning heuristic constitutes an optimality proof for the
last incumbent.

Pruning always uses the model's admissible cost heuristic, independently
of whichever evaluation function orders the open list; size-ordered and
inadmissibly-guided searches therefore still bound and prove correctly.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .evaluators import EvaluatorConfig, dual_open_select, make_key_fn


@dataclass(frozen=True)
class EdgeLabel:
    """A named action with a strictly positive integer cost."""

    name: str
    cost: int

    def __post_init__(self):
        if self.cost < 1:
            raise ValueError(f"edge {self.name!r}: cost must be >= 1, got {self.cost}")


class SearchNode:
    """A path, stored as a parent chain.

    The root carries g_cost = g_size = 0 and no parent or action; every
    child adds one edge, so following parent links reaches the root in
    exactly g_size steps.
    """

    __slots__ = ("parent", "action", "state", "g_cost", "g_size")

    def __init__(self, state, parent: Optional["SearchNode"] = None,
                 action: Optional[EdgeLabel] = None):
        if (parent is None) != (action is None):
            raise ValueError("parent and action must be given together")
        self.state = state
        self.parent = parent
        self.action = action
        if parent is None:
            self.g_cost = 0
            self.g_size = 0
        else:
            self.g_cost = parent.g_cost + action.cost
            self.g_size = parent.g_size + 1

    def plan(self) -> tuple[str, ...]:
        """Action names from the root to this node."""
        names = []
        node = self
        while node.parent is not None:
            names.append(node.action.name)
            node = node.parent
        names.reverse()
        return tuple(names)

    def __repr__(self):
        return f"SearchNode(state={self.state!r}, g_cost={self.g_cost}, g_size={self.g_size})"


class ClosedMap:
    """Best known g_cost per expanded state, with a generation stamp."""

    __slots__ = ("_table", "_stamp")

    def __init__(self):
        self._table: dict = {}
        self._stamp = 0

    def get(self, state):
        """(g_cost, stamp) for a previously recorded state, else None."""
        return self._table.get(state)

    def record(self, state, g_cost: int) -> None:
        self._stamp += 1
        self._table[state] = (g_cost, self._stamp)

    def states(self):
        return self._table.keys()

    def __contains__(self, state):
        return state in self._table

    def __len__(self):
        return len(self._table)


@dataclass(frozen=True)
class IncumbentRecord:
    """One reported solution of an anytime run."""

    plan: tuple[str, ...]
    cost: int
    size: int
    expansions_at_discovery: int
    wall_time_at_discovery: float


@dataclass
class RunMetrics:
    expansions: int = 0
    generations: int = 0
    re_expansions: int = 0
    duplicates_dropped: int = 0
    pruned_by_bound: int = 0
    peak_open: int = 0
    peak_closed: int = 0
    wall_time: float = 0.0
    termination: str = ""
    anytime_profile: list = field(default_factory=list)

    def deterministic_dict(self) -> dict:
        """Metrics without wall-clock fields; equal across identical runs."""
        return {
            "expansions": self.expansions,
            "generations": self.generations,
            "re_expansions": self.re_expansions,
            "duplicates_dropped": self.duplicates_dropped,
            "pruned_by_bound": self.pruned_by_bound,
            "peak_open": self.peak_open,
            "peak_closed": self.peak_closed,
            "termination": self.termination,
        }


@dataclass(frozen=True)
class Budget:
    """Stopping rules for a run.

    At least one finite limit must be given unless prove_optimality is
    set, in which case the run may go to open-list exhaustion.
    ``stop_after_incumbents`` ends the run (termination "budget") once
    that many solutions have been reported; sweeps use it to measure
    pure discovery effort.
    """

    max_expansions: Optional[int] = None
    max_seconds: Optional[float] = None
    prove_optimality: bool = False
    stop_after_incumbents: Optional[int] = None

    def validate(self) -> None:
        limits = (self.max_expansions, self.max_seconds, self.stop_after_incumbents)
        if not self.prove_optimality and all(v is None for v in limits):
            raise ValueError("budget needs a finite limit or prove_optimality")


TERMINATION_PROVED = "proved"
TERMINATION_BUDGET = "budget"
TERMINATION_UNSOLVABLE = "exhausted-unsolvable"


@dataclass
class RunResult:
    incumbents: list[IncumbentRecord]
    metrics: RunMetrics
    model_key: str
    expansion_order: Optional[tuple] = None

    @property
    def expanded_states(self) -> Optional[frozenset]:
        if self.expansion_order is None:
            return None
        return frozenset(self.expansion_order)

    @property
    def best(self) -> Optional[IncumbentRecord]:
        return self.incumbents[-1] if self.incumbents else None


def bound_test(node: SearchNode, h_admissible: Callable, incumbent_cost) -> bool:
    """True when the node cannot beat the incumbent and must be pruned.

    ``h_admissible`` must be a lower bound on cost-to-go; otherwise the
    optimality proof on exhaustion is void. An infinite incumbent keeps
    everything.
    """
    return node.g_cost + h_admissible(node.state) >= incumbent_cost


def duplicate_test(node: SearchNode, closed: ClosedMap,
                   reopen_policy: str = "reopen") -> bool:
    """True when the node's state was already expanded at least as cheaply.

    A strictly cheaper re-found path is kept and recorded under either
    policy; the engine counts its subsequent expansion as a re-expansion.
    Deferred reopening is not implemented.
    """
    if reopen_policy not in ("reopen", "ignore"):
        raise ValueError(f"unknown reopen policy: {reopen_policy!r}")
    prev = closed.get(node.state)
    if prev is not None and prev[0] <= node.g_cost:
        return True
    closed.record(node.state, node.g_cost)
    return False


def expand(node: SearchNode, model) -> list[SearchNode]:
    """Children of a node, one per edge, in the domain's canonical order."""
    return [SearchNode(s2, node, edge) for edge, s2 in model.children(node.state)]


def validate_model(model) -> None:
    """Reject degenerate instances before searching."""
    costs = model.edge_costs()
    if not costs:
        raise ValueError("model declares no action costs")
    bad = [c for c in costs if c < 1]
    if bad:
        raise ValueError(f"zero or negative edge costs are not allowed: {sorted(bad)}")


def _build_key_fns(config: EvaluatorConfig, model):
    c_max = max(model.edge_costs())
    return [
        make_key_fn(kind, model.heuristics, weight=config.weight,
                    delayed=config.delayed, tie_break=config.tie_break,
                    c_max=c_max, hybrid_mix=config.hybrid_mix)
        for kind in config.list_kinds()
    ]


def run_search(model, config: Optional[EvaluatorConfig] = None,
               budget: Optional[Budget] = None, *,
               on_incumbent: Optional[Callable[[IncumbentRecord], None]] = None,
               record_expansions: bool = True,
               initial_bound: Optional[int] = None) -> RunResult:
    """Run best-first branch-and-bound to a proof or a budget.

    Incumbents are strictly improving in cost (the bound test uses >=).
    Termination reasons: "proved" when the open list is exhausted with at
    least one incumbent, "exhausted-unsolvable" when it is exhausted with
    none, "budget" when a limit fired first.

    ``initial_bound`` preseeds the pruning bound with a known exclusive
    upper bound on solution cost (fixed-footprint studies: pass one more
    than the known optimum so the anti-ordered search prunes everything
    above the optimal altitude from the start). It must genuinely bound
    an optimal solution or the proof outcome is void.
    """
    config = config or EvaluatorConfig()
    budget = budget or Budget(prove_optimality=True)
    budget.validate()
    validate_model(model)

    key_fns = _build_key_fns(config, model)
    dual = len(key_fns) > 1
    h_adm = model.heuristics.h_c_admissible
    is_goal = model.is_goal
    children = model.children
    max_expansions = budget.max_expansions
    deadline = None
    lifo = config.tie_break != "fifo"

    metrics = RunMetrics()
    incumbents: list[IncumbentRecord] = []
    incumbent_cost = math.inf if initial_bound is None else initial_bound
    closed = ClosedMap()
    order: Optional[list] = [] if record_expansions else None

    open_lists: list[list] = [[] for _ in key_fns]
    serial = 0
    open_count = 0
    t0 = time.perf_counter()
    if budget.max_seconds is not None:
        deadline = t0 + budget.max_seconds

    root = SearchNode(model.initial_state())
    for li, key_fn in enumerate(key_fns):
        f, sec = key_fn(root)
        serial += 1
        heapq.heappush(open_lists[li], (f, sec, -serial if lifo else serial, root))
        open_count += 1
    metrics.peak_open = open_count

    expansions = 0
    termination = None

    while open_count:
        if deadline is not None and time.perf_counter() > deadline:
            termination = TERMINATION_BUDGET
            break
        if dual:
            li = dual_open_select(expansions)
            if not open_lists[li]:
                li = 1 - li
        else:
            li = 0
        node = heapq.heappop(open_lists[li])[3]
        open_count -= 1

        # Test order: bound, goal, duplicate. Goal nodes are never expanded.
        if node.g_cost + h_adm(node.state) >= incumbent_cost:
            metrics.pruned_by_bound += 1
            continue
        if is_goal(node.state):
            incumbent_cost = node.g_cost
            record = IncumbentRecord(
                plan=node.plan(), cost=node.g_cost, size=node.g_size,
                expansions_at_discovery=expansions,
                wall_time_at_discovery=time.perf_counter() - t0)
            incumbents.append(record)
            if on_incumbent is not None:
                on_incumbent(record)
            if (budget.stop_after_incumbents is not None
                    and len(incumbents) >= budget.stop_after_incumbents):
                termination = TERMINATION_BUDGET
                break
            continue
        prev = closed.get(node.state)
        if prev is not None and prev[0] <= node.g_cost:
            metrics.duplicates_dropped += 1
            continue
        if max_expansions is not None and expansions >= max_expansions:
            termination = TERMINATION_BUDGET
            break
        closed.record(node.state, node.g_cost)
        if prev is not None:
            metrics.re_expansions += 1
        expansions += 1
        if order is not None:
            order.append(node.state)

        for edge, child_state in children(node.state):
            child = SearchNode(child_state, node, edge)
            metrics.generations += 1
            for li2, key_fn in enumerate(key_fns):
                f, sec = key_fn(child)
                serial += 1
                heapq.heappush(open_lists[li2],
                               (f, sec, -serial if lifo else serial, child))
                open_count += 1
        if open_count > metrics.peak_open:
            metrics.peak_open = open_count

    if termination is None:
        termination = TERMINATION_PROVED if incumbents else TERMINATION_UNSOLVABLE

    metrics.expansions = expansions
    metrics.peak_closed = len(closed)
    metrics.termination = termination
    metrics.wall_time = time.perf_counter() - t0
    metrics.anytime_profile = list(incumbents)
    return RunResult(
        incumbents=incumbents,
        metrics=metrics,
        model_key=model.describe(),
        expansion_order=tuple(order) if order is not None else None,
    )
