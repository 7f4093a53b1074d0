import copy
import random

import pytest

from searchlab import EdgeLabel, HeuristicBundle, ProblemModel, zero_heuristic


class GraphProblem(ProblemModel):
    """Explicit labeled graph for tests.

    ``edges`` maps state -> list of (action_name, cost, successor).
    """

    def __init__(self, edges, initial, goals, heuristics=None, name="graph"):
        self.edges = edges
        self.initial = initial
        self.goals = frozenset(goals)
        self.name = name
        if heuristics is not None:
            self.heuristics = heuristics

    def initial_state(self):
        return self.initial

    def is_goal(self, state):
        return state in self.goals

    def children(self, state):
        return [(EdgeLabel(name, cost), dst)
                for name, cost, dst in self.edges.get(state, ())]

    def edge_costs(self):
        return frozenset(cost for outs in self.edges.values()
                         for _, cost, _ in outs)

    def describe(self):
        return self.name


def make_chain(costs, perfect_h=True, name="chain"):
    """Linear chain s0 -> s1 -> ... with the given edge costs.

    With ``perfect_h`` the cost heuristic is the exact suffix sum (and
    the size heuristics count remaining edges), so f is flat at f* along
    the whole path.
    """
    n = len(costs)
    edges = {i: [(f"e{i}", costs[i], i + 1)] for i in range(n)}
    edges[n] = []
    if perfect_h:
        suffix = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            suffix[i] = suffix[i + 1] + costs[i]
        h_c = lambda s: suffix[s]
        h_s = lambda s: n - s
        bundle = HeuristicBundle(h_c=h_c, h_s=h_s, h_s_hat=h_s, h_c_admissible=h_c)
    else:
        bundle = HeuristicBundle()
    return GraphProblem(edges, 0, {n}, heuristics=bundle,
                        name=f"{name}({','.join(map(str, costs))})")


def make_diamond():
    """Two paths to a shared state T: costly-short found first under a
    size ordering, cheaper one second, forcing a re-expansion of T."""
    edges = {
        "S": [("a", 1, "A"), ("b", 3, "B")],
        "A": [("c", 4, "T")],
        "B": [("d", 1, "T")],
        "T": [("e", 1, "G")],
        "G": [],
    }
    return GraphProblem(edges, "S", {"G"}, name="diamond")


def make_uniform_cycle(n=8, cost=2):
    """A ring with uniform edge costs; size and cost orderings coincide."""
    edges = {
        i: [("cw", cost, (i + 1) % n), ("ccw", cost, (i - 1) % n)]
        for i in range(n)
    }
    return GraphProblem(edges, 0, {n // 2}, name=f"ring({n},{cost})")


def make_random_graph(seed, n_states=30, scale=1):
    """Seeded random digraph with mixed costs; used for order-invariance
    checks under positive cost scaling."""
    rng = random.Random(seed)
    edges = {}
    for s in range(n_states):
        outs = []
        for j in range(rng.randint(1, 3)):
            dst = rng.randrange(n_states)
            cost = rng.randint(1, 9) * scale
            outs.append((f"s{s}e{j}", cost, dst))
        edges[s] = outs
    goals = {n_states - 1}
    return GraphProblem(edges, 0, goals, name=f"random({seed},x{scale})")


def with_heuristics(model, bundle):
    """Shallow copy of a model with a different heuristic bundle."""
    clone = copy.copy(model)
    clone.heuristics = bundle
    return clone


@pytest.fixture
def diamond():
    return make_diamond()


@pytest.fixture
def chain10():
    return make_chain([3, 1, 4, 1, 5, 9, 2, 6, 5, 3])
