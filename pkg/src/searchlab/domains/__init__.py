from .base import CapExceeded, ProblemModel, count_reachable, iter_reachable, replay
from .counter import CounterProblem, counter_children, counter_solution_costs
from .travel import (HValues, TravelProblem, make_rendezvous, make_swap,
                     travel_children, travel_heuristics)
from .tree import (SolutionSpec, TreePredictions, TreeProblem, eps_threshold,
                   planted_depth, tree_children, tree_predictions)

__all__ = [
    "CapExceeded", "ProblemModel", "count_reachable", "iter_reachable", "replay",
    "CounterProblem", "counter_children", "counter_solution_costs",
    "TravelProblem", "HValues", "make_rendezvous", "make_swap",
    "travel_children", "travel_heuristics",
    "TreeProblem", "SolutionSpec", "TreePredictions", "eps_threshold",
    "planted_depth", "tree_children", "tree_predictions",
]
