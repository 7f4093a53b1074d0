"""Best-first branch-and-bound laboratory.

A small engine for anytime search over implicit graphs, a family of
interchangeable evaluation functions (cost-, size-, and hybrid-ordered),
three benchmark domains with extreme action-cost variance, and the
oracles and instrumentation needed to measure discovery effort against
proof effort.
"""

from .analysis import (CompareReport, ErrorRecord, FootprintReport,
                       InadmissibleHeuristic, OracleSolution,
                       compute_footprint, expansion_set_compare,
                       heuristic_error, oracle_solve, worst_case_bound)
from .domains import (CapExceeded, CounterProblem, ProblemModel, SolutionSpec,
                      TravelProblem, TreeProblem, count_reachable,
                      counter_children, counter_solution_costs, eps_threshold,
                      make_rendezvous, make_swap, planted_depth, replay,
                      travel_children, travel_heuristics, tree_children,
                      tree_predictions)
from .engine import (Budget, ClosedMap, EdgeLabel, IncumbentRecord, RunMetrics,
                     RunResult, SearchNode, bound_test, duplicate_test, expand,
                     run_search)
from .evaluators import (EvaluatorConfig, HeuristicBundle, ZERO_BUNDLE,
                         dual_open_select, epsilon_of, eval_cost, eval_delayed,
                         eval_hybrid, eval_negated_cost, eval_size,
                         eval_size_cost_sensitive, zero_heuristic)
from .harness import (ConfigError, ScoreTable, SweepReport, ipc_score,
                      parse_config, parse_evaluator, run_experiment, summarize,
                      sweep_goals)

__version__ = "0.1.0"
