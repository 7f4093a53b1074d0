import math

import pytest

from searchlab import (Budget, ClosedMap, CounterProblem, EdgeLabel,
                       EvaluatorConfig, HeuristicBundle, SearchNode,
                       bound_test, duplicate_test, expand, make_swap,
                       oracle_solve, replay, run_search, zero_heuristic)
from conftest import (GraphProblem, make_chain, make_diamond,
                      make_uniform_cycle, with_heuristics)
from reference import astar_expanded_states, counter_discovery_counts


def test_edge_label_rejects_nonpositive_cost():
    with pytest.raises(ValueError):
        EdgeLabel("free", 0)
    with pytest.raises(ValueError):
        EdgeLabel("refund", -3)


def test_root_node_invariants():
    root = SearchNode(0)
    assert root.parent is None and root.action is None
    assert root.g_cost == 0 and root.g_size == 0
    assert root.plan() == ()


def test_child_accumulation_and_parent_chain():
    root = SearchNode(0)
    a = SearchNode(1, root, EdgeLabel("x", 5))
    b = SearchNode(2, a, EdgeLabel("y", 2))
    assert b.g_cost == 7 and b.g_size == 2
    assert b.plan() == ("x", "y")
    # parent links reach the root in exactly g_size steps
    steps, node = 0, b
    while node.parent is not None:
        node = node.parent
        steps += 1
    assert steps == b.g_size and node is root


def test_node_requires_action_with_parent():
    root = SearchNode(0)
    with pytest.raises(ValueError):
        SearchNode(1, root, None)


class TestBoundTest:
    def test_boundary_equality_prunes(self):
        node = SearchNode("s")
        node.g_cost = 5
        assert bound_test(node, lambda s: 5, 10) is True

    def test_below_bound_keeps(self):
        node = SearchNode("s")
        node.g_cost = 5
        assert bound_test(node, lambda s: 4, 10) is False

    def test_infinite_incumbent_never_prunes(self):
        node = SearchNode("s")
        node.g_cost = 10 ** 9
        assert bound_test(node, lambda s: 10 ** 9, math.inf) is False

    def test_swap_extra_flight_pruned_under_incumbent(self):
        # One useless empty flight puts g + admissible-h at the incumbent.
        model = make_swap(2)
        root = SearchNode(model.initial_state())
        fly = next(child for child in expand(root, model)
                   if child.action.name.startswith("fly"))
        assert fly.g_cost == 10000
        h = model.heuristics.h_c_admissible
        assert bound_test(fly, h, 20004) is True
        assert bound_test(fly, h, math.inf) is False


class TestDuplicateTest:
    def test_unseen_state_is_recorded_and_kept(self):
        closed = ClosedMap()
        node = SearchNode("v")
        assert duplicate_test(node, closed) is False
        assert closed.get("v")[0] == 0

    def test_worse_path_dropped(self):
        closed = ClosedMap()
        closed.record("v", 7)
        node = SearchNode("v", SearchNode("u"), EdgeLabel("e", 9))
        assert duplicate_test(node, closed) is True

    def test_cheaper_path_kept_and_reexpanded(self):
        model = make_diamond()
        result = run_search(model, EvaluatorConfig(kind="size"),
                            Budget(prove_optimality=True))
        # exhaustive oracle fixes the optimum of the diamond
        oracle = oracle_solve(model)
        assert oracle.optimal_cost == 5
        assert result.best.cost == 5
        assert result.metrics.re_expansions == 1

    def test_unknown_policy_rejected(self):
        with pytest.raises(ValueError):
            duplicate_test(SearchNode("v"), ClosedMap(), reopen_policy="defer")


class TestExpand:
    def test_counter_state_zero(self):
        model = CounterProblem(k=4, goal=14)
        children = expand(SearchNode(0), model)
        assert [(c.state, c.action.name, c.action.cost) for c in children] == [
            (1, "inc", 1), (15, "dec", 8)]

    def test_children_follow_node_invariants(self):
        model = CounterProblem(k=4, goal=14)
        node = expand(SearchNode(0), model)[1]
        grand = expand(node, model)
        assert all(g.g_cost == node.g_cost + g.action.cost for g in grand)
        assert all(g.g_size == 2 for g in grand)


class TestRunSearch:
    def test_counter_size_ordering_discovers_wrap_solution(self):
        model = CounterProblem(k=4, goal=14)
        result = run_search(model, EvaluatorConfig(kind="size"),
                            Budget(prove_optimality=True))
        best = result.best
        assert (best.cost, best.size) == (9, 2)
        assert result.metrics.termination == "proved"
        # frozen from the independent reference run
        assert counter_discovery_counts(4, 14) == (10, 4)
        assert result.incumbents[0].expansions_at_discovery == 4

    def test_counter_cost_ordering_floods_before_discovery(self):
        model = CounterProblem(k=4, goal=14)
        result = run_search(model, EvaluatorConfig(kind="cost"),
                            Budget(prove_optimality=True))
        assert result.incumbents[0].expansions_at_discovery == 10
        assert result.incumbents[0].expansions_at_discovery >= 9
        assert result.best.cost == 9

    def test_goal_at_initial_state(self):
        model = CounterProblem(k=4, goal=0)
        result = run_search(model, EvaluatorConfig(), Budget(prove_optimality=True))
        assert len(result.incumbents) == 1
        best = result.best
        assert (best.plan, best.cost, best.size) == ((), 0, 0)
        assert best.expansions_at_discovery == 0
        assert result.metrics.termination == "proved"

    def test_unsolvable_instance_exhausts(self):
        model = GraphProblem({"a": [("x", 1, "b")], "b": []}, "a", set(),
                             name="deadend")
        result = run_search(model, EvaluatorConfig(), Budget(prove_optimality=True))
        assert result.incumbents == []
        assert result.metrics.termination == "exhausted-unsolvable"

    def test_zero_expansion_budget(self):
        model = CounterProblem(k=4, goal=14)
        result = run_search(model, EvaluatorConfig(), Budget(max_expansions=0))
        assert result.incumbents == []
        assert result.metrics.termination == "budget"
        assert result.metrics.expansions == 0

    def test_budget_requires_some_limit(self):
        with pytest.raises(ValueError):
            Budget().validate()
        Budget(max_expansions=5).validate()
        Budget(prove_optimality=True).validate()

    def test_time_budget_fires(self):
        model = CounterProblem(k=16, goal=1 << 15)
        result = run_search(model, EvaluatorConfig(kind="cost"),
                            Budget(max_seconds=0.02))
        assert result.metrics.termination == "budget"

    def test_stop_after_first_incumbent(self):
        model = CounterProblem(k=6, goal=60)
        result = run_search(model, EvaluatorConfig(kind="size"),
                            Budget(stop_after_incumbents=1))
        assert len(result.incumbents) == 1
        assert result.metrics.termination == "budget"

    def test_incumbents_strictly_improve(self):
        # size ordering on this goal finds the long cheap plan second
        model = CounterProblem(k=6, goal=44)
        result = run_search(model, EvaluatorConfig(kind="size"),
                            Budget(prove_optimality=True))
        costs = [rec.cost for rec in result.incumbents]
        assert len(costs) >= 2
        assert all(a > b for a, b in zip(costs, costs[1:]))
        assert result.best.cost == oracle_solve(model).optimal_cost

    def test_incumbent_plans_replay_exactly(self):
        cases = [
            (CounterProblem(k=6, goal=44), EvaluatorConfig(kind="size")),
            (make_swap(2), EvaluatorConfig(kind="cost")),
            (make_swap(3), EvaluatorConfig(kind="negated_cost")),
        ]
        for model, config in cases:
            result = run_search(model, config, Budget(prove_optimality=True))
            assert result.incumbents
            for rec in result.incumbents:
                end, cost, size = replay(model, rec.plan)
                assert model.is_goal(end)
                assert (cost, size) == (rec.cost, rec.size)

    def test_no_reexpansion_with_consistent_cost_evaluator(self):
        swap = make_swap(2)
        h = swap.heuristics.h_c_admissible
        consistent = with_heuristics(swap, HeuristicBundle(
            h_c=h, h_c_admissible=h))
        result = run_search(consistent, EvaluatorConfig(kind="cost"),
                            Budget(prove_optimality=True))
        assert result.metrics.re_expansions == 0

    def test_determinism(self):
        model = make_swap(3)
        config = EvaluatorConfig(kind="hybrid")
        budget = Budget(prove_optimality=True)
        a = run_search(model, config, budget)
        b = run_search(model, config, budget)
        strip = lambda recs: [(r.plan, r.cost, r.size, r.expansions_at_discovery)
                              for r in recs]
        assert strip(a.incumbents) == strip(b.incumbents)
        assert a.metrics.deterministic_dict() == b.metrics.deterministic_dict()
        assert a.expansion_order == b.expansion_order

    def test_matches_classical_astar_expansion_set(self):
        swap = make_swap(2)
        h = swap.heuristics.h_c_admissible
        model = with_heuristics(swap, HeuristicBundle(h_c=h, h_c_admissible=h))
        result = run_search(model, EvaluatorConfig(kind="cost"),
                            Budget(prove_optimality=True))
        assert result.expanded_states == astar_expanded_states(model, h)

        counter = CounterProblem(k=6, goal=44)
        result = run_search(counter, EvaluatorConfig(kind="cost"),
                            Budget(prove_optimality=True))
        assert result.expanded_states == astar_expanded_states(
            counter, zero_heuristic)

    def test_metrics_bookkeeping(self):
        model = make_uniform_cycle()
        result = run_search(model, EvaluatorConfig(kind="cost"),
                            Budget(prove_optimality=True))
        m = result.metrics
        assert m.expansions == len(result.expansion_order)
        assert m.generations == 2 * m.expansions
        assert m.peak_closed == len(set(result.expansion_order))
        assert m.peak_open >= 1
        assert m.anytime_profile == result.incumbents

    def test_zero_cost_edge_rejected_at_validation(self):
        model = GraphProblem({"a": [("x", 1, "b")], "b": []}, "a", {"b"})
        model.edge_costs = lambda: frozenset({0, 1})
        with pytest.raises(ValueError, match="zero or negative"):
            run_search(model, EvaluatorConfig(), Budget(max_expansions=1))

    def test_record_expansions_off(self):
        model = CounterProblem(k=4, goal=3)
        result = run_search(model, EvaluatorConfig(), Budget(prove_optimality=True),
                            record_expansions=False)
        assert result.expansion_order is None
        assert result.expanded_states is None

    def test_streaming_callback_sees_incumbents_in_order(self):
        model = CounterProblem(k=6, goal=44)
        seen = []
        result = run_search(model, EvaluatorConfig(kind="size"),
                            Budget(prove_optimality=True),
                            on_incumbent=seen.append)
        assert seen == result.incumbents
