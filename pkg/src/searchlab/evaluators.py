"""Evaluation functions that order the open list.

Every evaluator maps a search node to a rational key; the engine expands
nodes in ascending key order. Five orderings are provided (cost, size,
cost-sensitive size, a normalized hybrid, and negated cost), plus two
orthogonal modifiers: delayed evaluation (the heuristic is taken at the
parent's state) and dual open lists (two orderings expanded alternately).

All arithmetic is exact: integer g-values, integer heuristics, and
``fractions.Fraction`` for weights and mixing coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

Heuristic = Callable[[object], int]

#: Evaluator kinds, internal names.
KINDS = ("cost", "size", "size_cost_sensitive", "hybrid", "negated_cost")

#: Tie-break rules for equal primary keys.
TIE_BREAKS = ("default", "cost_secondary", "size_secondary", "fifo")

# Short names accepted in config files and on the command line.
KIND_ALIASES = {
    "cost": "cost",
    "size": "size",
    "size-cs": "size_cost_sensitive",
    "size_cost_sensitive": "size_cost_sensitive",
    "hybrid": "hybrid",
    "neg-cost": "negated_cost",
    "negated_cost": "negated_cost",
}

TIE_BREAK_ALIASES = {
    "default": "default",
    "cost": "cost_secondary",
    "cost_secondary": "cost_secondary",
    "size": "size_secondary",
    "size_secondary": "size_secondary",
    "fifo": "fifo",
}


def zero_heuristic(state) -> int:
    """The blind heuristic; turns cost ordering into Dijkstra order."""
    return 0


@dataclass(frozen=True)
class HeuristicBundle:
    """The four per-state estimates a problem model carries.

    h_c estimates cost-to-go, h_s estimates steps to the nearest solution,
    h_s_hat estimates steps along the cheapest completion, and
    h_c_admissible is a guaranteed lower bound on cost-to-go used only for
    branch-and-bound pruning. All members must return 0 on goal states.
    """

    h_c: Heuristic = zero_heuristic
    h_s: Heuristic = zero_heuristic
    h_s_hat: Heuristic = zero_heuristic
    h_c_admissible: Heuristic = zero_heuristic


ZERO_BUNDLE = HeuristicBundle()


@dataclass(frozen=True)
class EvaluatorConfig:
    """Which ordering the engine searches under.

    ``kind`` picks the primary evaluation function. ``weight`` multiplies
    the heuristic term (weighted-A* convention, g is never scaled).
    ``delayed`` replaces the heuristic argument with the parent's state.
    ``dual_lists`` enables a second open list ordered by ``dual_kind``
    (defaults to ``kind``); expansions alternate between the lists.
    ``hybrid_mix`` is meaningful only when a hybrid ordering is in play.
    """

    kind: str = "cost"
    weight: Fraction = Fraction(1)
    delayed: bool = False
    dual_lists: bool = False
    dual_kind: Optional[str] = None
    tie_break: str = "default"
    hybrid_mix: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown evaluator kind: {self.kind!r}")
        if self.tie_break not in TIE_BREAKS:
            raise ValueError(f"unknown tie_break: {self.tie_break!r}")
        weight = Fraction(self.weight)
        if weight < 1:
            raise ValueError(f"weight must be >= 1, got {weight}")
        object.__setattr__(self, "weight", weight)
        if self.dual_kind is not None and self.dual_kind not in KINDS:
            raise ValueError(f"unknown dual evaluator kind: {self.dual_kind!r}")
        if self.dual_kind is not None and not self.dual_lists:
            raise ValueError("dual_kind given but dual_lists is off")
        kinds_in_play = {self.kind}
        if self.dual_lists:
            kinds_in_play.add(self.dual_kind or self.kind)
        if self.hybrid_mix is not None:
            if "hybrid" not in kinds_in_play:
                raise ValueError("hybrid_mix is defined only for hybrid evaluators")
            mix = Fraction(self.hybrid_mix)
            if not 0 <= mix <= 1:
                raise ValueError(f"hybrid_mix must lie in [0, 1], got {mix}")
            object.__setattr__(self, "hybrid_mix", mix)

    def list_kinds(self) -> tuple[str, ...]:
        """Evaluator kind per open list (one entry unless dual_lists)."""
        if self.dual_lists:
            return (self.kind, self.dual_kind or self.kind)
        return (self.kind,)


DEFAULT_HYBRID_MIX = Fraction(1, 2)


def _h_state(node, delayed: bool):
    # Delayed evaluation reads the parent's state; the root has no parent
    # and degenerates to its own state.
    if delayed and node.parent is not None:
        return node.parent.state
    return node.state


def eval_cost(node, bundle: HeuristicBundle, weight=1, delayed: bool = False):
    """Cost-through ordering: g_cost plus weighted cost-to-go estimate."""
    return node.g_cost + weight * bundle.h_c(_h_state(node, delayed))


def eval_size(node, bundle: HeuristicBundle, weight=1, delayed: bool = False):
    """Plain size ordering: g_size plus weighted distance-to-go estimate."""
    return node.g_size + weight * bundle.h_s(_h_state(node, delayed))


def eval_size_cost_sensitive(node, bundle: HeuristicBundle, weight=1,
                             delayed: bool = False):
    """Size ordering steered by the length of the cheapest completion."""
    return node.g_size + weight * bundle.h_s_hat(_h_state(node, delayed))


def eval_hybrid(node, bundle: HeuristicBundle, c_max: int, weight=1,
                mix: Fraction = DEFAULT_HYBRID_MIX, delayed: bool = False):
    """Blend of normalized cost and cost-sensitive size orderings.

    The cost term is divided by the instance's maximum edge cost so both
    terms are dimension-comparable; ``mix`` weights the cost term.
    """
    s = _h_state(node, delayed)
    cost_term = Fraction(node.g_cost + weight * bundle.h_c(s), c_max)
    size_term = node.g_size + weight * bundle.h_s_hat(s)
    return mix * cost_term + (1 - mix) * size_term


def eval_negated_cost(node, bundle: HeuristicBundle, weight=1,
                      delayed: bool = False):
    """Anti-order of eval_cost; expands the most expensive frontier first.

    Intended for footprint studies where the total work is fixed by the
    pruning bound and only the visiting order changes.
    """
    return -(node.g_cost + weight * bundle.h_c(_h_state(node, delayed)))


def eval_delayed(node, bundle: HeuristicBundle, base: str, **kwargs):
    """Apply a base evaluator with the heuristic taken at the parent."""
    fn = _BASE_EVALS[base]
    return fn(node, bundle, delayed=True, **kwargs)


_BASE_EVALS = {
    "cost": eval_cost,
    "size": eval_size,
    "size_cost_sensitive": eval_size_cost_sensitive,
    "hybrid": eval_hybrid,
    "negated_cost": eval_negated_cost,
}


def dual_open_select(step_counter: int) -> int:
    """Which of two open lists supplies the next expansion: 0,1,0,1,..."""
    return step_counter & 1


def epsilon_of(model) -> tuple[Fraction, dict[int, Fraction]]:
    """Cost-variance ratio of an instance and its normalized cost table.

    Returns (min cost / max cost, {cost: cost / max cost}). Equals 1
    exactly when all action costs are uniform.
    """
    costs = sorted(model.edge_costs())
    if not costs:
        raise ValueError("model declares no action costs")
    c_min, c_max = costs[0], costs[-1]
    table = {c: Fraction(c, c_max) for c in costs}
    return Fraction(c_min, c_max), table


# ---------------------------------------------------------------------------
# Key-function assembly used by the engine. A key function maps a node to
# (primary, secondary); the engine appends the insertion serial itself.
# ---------------------------------------------------------------------------

def _base_key_fn(kind: str, bundle: HeuristicBundle, weight: Fraction,
                 delayed: bool, c_max: Optional[int],
                 mix: Optional[Fraction]):
    """Build node -> (f, weighted-h-term) for one evaluator kind."""
    w = int(weight) if weight.denominator == 1 else weight

    if kind == "hybrid":
        if c_max is None:
            raise ValueError("hybrid evaluator needs the instance c_max")
        m = DEFAULT_HYBRID_MIX if mix is None else mix
        h_c, h_hat = bundle.h_c, bundle.h_s_hat

        def key(node):
            s = _h_state(node, delayed)
            hterm = m * Fraction(w * h_c(s), c_max) + (1 - m) * (w * h_hat(s))
            f = m * Fraction(node.g_cost, c_max) + (1 - m) * node.g_size + hterm
            return f, hterm

        return key

    if kind == "cost":
        h, g_attr, negate = bundle.h_c, "g_cost", False
    elif kind == "size":
        h, g_attr, negate = bundle.h_s, "g_size", False
    elif kind == "size_cost_sensitive":
        h, g_attr, negate = bundle.h_s_hat, "g_size", False
    elif kind == "negated_cost":
        h, g_attr, negate = bundle.h_c, "g_cost", True
    else:
        raise ValueError(f"unknown evaluator kind: {kind!r}")

    # Fast path keeps the hot loop on plain ints.
    if h is zero_heuristic and not negate:
        if g_attr == "g_cost":
            return lambda node: (node.g_cost, 0)
        return lambda node: (node.g_size, 0)

    def key(node):
        hterm = w * h(_h_state(node, delayed))
        g = node.g_cost if g_attr == "g_cost" else node.g_size
        f = g + hterm
        if negate:
            return -f, hterm
        return f, hterm

    return key


def make_key_fn(kind: str, bundle: HeuristicBundle, *, weight: Fraction,
                delayed: bool, tie_break: str, c_max: Optional[int] = None,
                hybrid_mix: Optional[Fraction] = None):
    """Build the full open-list key for one list: node -> (f, secondary).

    The default tie-break orders equal-f nodes by their weighted heuristic
    term; cost/size secondaries order them by plain f_c or f_s; fifo leaves
    resolution entirely to insertion order.
    """
    base = _base_key_fn(kind, bundle, weight, delayed, c_max, hybrid_mix)
    if tie_break == "default":
        return base
    if tie_break == "fifo":
        return lambda node: (base(node)[0], 0)
    if tie_break == "cost_secondary":
        h_c = bundle.h_c
        return lambda node: (base(node)[0], node.g_cost + h_c(node.state))
    if tie_break == "size_secondary":
        h_s = bundle.h_s
        return lambda node: (base(node)[0], node.g_size + h_s(node.state))
    raise ValueError(f"unknown tie_break: {tie_break!r}")
