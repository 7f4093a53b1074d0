from fractions import Fraction

import pytest

from searchlab import (Budget, EvaluatorConfig, SolutionSpec, TreeProblem,
                       count_reachable, epsilon_of, eps_threshold,
                       oracle_solve, planted_depth, run_search, tree_children,
                       tree_predictions)


def _tree(c_high=4, c_low=1, cost=2, **kwargs):
    spec = SolutionSpec(normalized_cost=Fraction(cost), **kwargs)
    return TreeProblem(x=2, y=2, c_high=c_high, c_low=c_low, solution_spec=spec)


def test_four_children_with_high_labels_first():
    model = _tree()
    kids = tree_children(b"", model)
    assert [(e.name, e.cost) for e, _ in kids] == [
        ("h1", 4), ("h2", 4), ("l1", 1), ("l2", 1)]


def test_epsilon_of_costs_four_one():
    eps, _ = epsilon_of(_tree())
    assert eps == Fraction(1, 4)


def test_leaves_have_no_children():
    model = _tree(cost=1, max_depth=2)
    leaf = b"\x00\x03"
    assert model.children(leaf) == []
    assert count_reachable(model) == 1 + 4 + 16


def test_planted_solutions_deterministic_under_seed_replay():
    a = _tree(seed=42, count=3)
    b = _tree(seed=42, count=3)
    c = _tree(seed=43, count=3)
    assert a.solutions == b.solutions
    assert a.solutions != c.solutions


def test_planted_solutions_form_an_antichain():
    model = _tree(seed=7, count=4)
    for sol in model.solutions:
        assert len(sol) == model.solution_depth
        assert not model.is_goal(sol[:-1])
        assert model.is_goal(sol)


def test_planted_composition_matches_mix():
    model = _tree(c_high=5, cost=3, seed=0)
    assert model.solution_depth == 5
    assert (model.n_high, model.n_low) == (3, 2)
    for sol in model.solutions:
        highs = sum(1 for b in sol if b < model.x)
        assert highs == model.n_high


def test_planted_depth_formula():
    assert planted_depth(Fraction(10), Fraction(1, 2), Fraction(1, 4)) == 16
    assert planted_depth(Fraction(3), Fraction(1, 2), Fraction(1, 5)) == 5
    assert planted_depth(Fraction(3), Fraction(1, 2), Fraction(1, 2)) == 4
    # half-way depths round up: 2C/(1+eps) = 8/3 lands on 3
    assert planted_depth(Fraction(2), Fraction(1, 2), Fraction(1, 2)) == 3


def test_eps_threshold():
    assert eps_threshold(4) == Fraction(1, 3)
    assert eps_threshold(2) == 0
    assert eps_threshold(8) == Fraction(1, 2)
    with pytest.raises(ValueError):
        eps_threshold(1)


def test_predictions_arithmetic_and_rounding():
    pred = tree_predictions(2, 2, Fraction(1, 2), 2)
    assert pred.cost_based_bound == (2 + 4) ** 2 == 36
    assert pred.depth_exact == Fraction(8, 3)
    assert pred.depth == 3
    assert pred.size_based_bound == 4 ** 3 == 64
    # rounding rule against a brute-force run on the same instance
    model = _tree(c_high=2, c_low=1, cost=2, seed=1)
    assert model.solution_depth == pred.depth
    assert oracle_solve(model).smallest_size == pred.depth


def test_predictions_require_integral_inputs():
    with pytest.raises(ValueError):
        tree_predictions(2, 2, Fraction(2, 5), 2)
    with pytest.raises(ValueError):
        tree_predictions(2, 2, Fraction(1, 2), Fraction(5, 2))


def test_prediction_d_example():
    pred = tree_predictions(3, 3, Fraction(1, 4), 10)
    assert pred.depth_exact == Fraction(2 * 10, 1) / Fraction(5, 4) == 16
    assert pred.size_based_bound == 6 ** 16


def test_size_bound_covers_measured_discovery():
    model = _tree(c_high=2, c_low=1, cost=2, seed=1)
    result = run_search(model, EvaluatorConfig(kind="size"),
                        Budget(stop_after_incumbents=1))
    assert result.incumbents[0].expansions_at_discovery <= 4 ** model.solution_depth


def test_max_depth_must_cover_planted_solutions():
    with pytest.raises(ValueError):
        _tree(cost=3, c_high=5, max_depth=3)


def test_parameter_validation():
    with pytest.raises(ValueError):
        TreeProblem(x=1, y=2, c_high=4, c_low=1,
                    solution_spec=SolutionSpec(normalized_cost=Fraction(1)))
    with pytest.raises(ValueError):
        TreeProblem(x=2, y=2, c_high=4, c_low=4,
                    solution_spec=SolutionSpec(normalized_cost=Fraction(1)))
