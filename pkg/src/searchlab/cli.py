"""Command-line front end.

Subcommands: run, sweep, score, oracle, footprint, compare, count-states.
Exit codes: 0 success, 1 invalid config or cap exceeded, 2 budget ran out
before any solution was found, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import (InadmissibleHeuristic, compute_footprint,
                       expansion_set_compare, oracle_solve)
from .domains import CapExceeded, count_reachable
from .harness import (ConfigError, ScoreTable, ipc_score, parse_budget,
                      parse_config, parse_evaluator, run_experiment,
                      summarize, sweep_goals)
from .engine import Budget, run_search

EXIT_OK = 0
EXIT_INVALID_CONFIG = 1
EXIT_NO_SOLUTION = 2
EXIT_INVARIANT = 3


def _add_common(parser):
    parser.add_argument("--config", type=Path, help="JSON config file")
    parser.add_argument("--out", type=Path, help="output directory")
    parser.add_argument("--seed", type=int, help="override config seed")
    parser.add_argument("--max-expansions", type=int, help="override expansion budget")
    parser.add_argument("--max-seconds", type=float, help="override time budget")
    parser.add_argument("--prove", action="store_true",
                        help="run to open-list exhaustion (optimality proof)")
    parser.add_argument("--cap", type=int, default=1_000_000,
                        help="state cap for exhaustive commands")


def _load_config(args, need_config=True) -> dict:
    if args.config is None:
        if need_config:
            raise ConfigError("--config: required for this command")
        return {}
    try:
        with open(args.config, encoding="utf-8") as handle:
            config = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"--config: cannot read {args.config}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"--config: invalid JSON in {args.config}: {exc}") from None
    if not isinstance(config, dict):
        raise ConfigError("--config: top level must be a JSON object")
    if args.seed is not None:
        config["seed"] = args.seed
    budget = dict(config.get("budget") or {})
    if args.max_expansions is not None:
        budget["max_expansions"] = args.max_expansions
    if args.max_seconds is not None:
        budget["max_seconds"] = args.max_seconds
    if args.prove:
        budget["prove_optimality"] = True
    if budget:
        config["budget"] = budget
    return config


def _emit(obj, args) -> None:
    text = json.dumps(obj, indent=2, default=str)
    print(text)
    if args.out is not None and getattr(args, "report_name", None):
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / args.report_name).write_text(text + "\n", encoding="utf-8")


def cmd_run(args) -> int:
    config = _load_config(args)
    result = run_experiment(config, out_dir=args.out)
    run = result.run
    best = run.best
    print(f"termination: {run.metrics.termination}")
    print(f"expansions:  {run.metrics.expansions}")
    if best is not None:
        print(f"best cost:   {best.cost} (size {best.size}, "
              f"found at expansion {best.expansions_at_discovery})")
    else:
        print("best cost:   none found")
    if result.out_path is not None:
        print(f"results:     {result.out_path}")
    if best is None and run.metrics.termination == "budget":
        return EXIT_NO_SOLUTION
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.k is None:
        raise ConfigError("--k: required for sweep")
    evaluators = tuple(args.evaluators.split(","))
    if len(evaluators) != 2:
        raise ConfigError("--evaluators: expected two comma-separated evaluators")
    for spec in evaluators:
        parse_evaluator(spec)
    report = sweep_goals(args.k, evaluators)
    summary = {
        "k": report.k,
        "evaluators": list(report.evaluators),
        "ratio2_goal": report.ratio2_goal,
        "ratio2_fraction": str(report.ratio2_fraction),
        "lead_goal": report.lead_goal,
        "lead_fraction": str(report.lead_fraction),
    }
    print(json.dumps(summary, indent=2))
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / f"sweep-k{report.k}.csv").write_text(report.to_csv(),
                                                         encoding="utf-8")
        (args.out / f"crossover-k{report.k}.json").write_text(
            json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_score(args) -> int:
    try:
        found = json.loads(Path(args.found).read_text(encoding="utf-8"))
        best = json.loads(Path(args.best_known).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"score inputs: {exc}") from None
    table = ipc_score(found, best)
    args.report_name = "score.json"
    _emit(_score_dict(table), args)
    return EXIT_OK


def _score_dict(table: ScoreTable) -> dict:
    return {
        "rows": [
            {"problem": r.problem, "best_known": r.best_known, "found": r.found,
             "ratio": str(r.ratio), "new_best": r.new_best}
            for r in table.rows
        ],
        "aggregate_percent": float(table.aggregate),
    }


def cmd_oracle(args) -> int:
    config = _load_config(args)
    parsed_model = parse_config({**config, "budget": {"prove_optimality": True}}).model
    solution = oracle_solve(parsed_model, cap=args.cap)
    args.report_name = "oracle.json"
    if solution is None:
        _emit({"solvable": False}, args)
    else:
        _emit({
            "solvable": True,
            "optimal_cost": solution.optimal_cost,
            "optimal_size_among_cheapest": solution.optimal_size_among_cheapest,
            "smallest_size": solution.smallest_size,
            "plan": list(solution.plan),
        }, args)
    return EXIT_OK


def cmd_footprint(args) -> int:
    config = _load_config(args)
    model = parse_config({**config, "budget": {"prove_optimality": True}}).model
    report = compute_footprint(model, cap=args.cap)
    args.report_name = "footprint.json"
    payload = {
        "f_star": report.f_star,
        "strict_size": report.strict_size,
        "boundary_size": report.boundary_size,
    }
    if args.full:
        payload["strict"] = sorted(repr(s) for s in report.strict_set)
        payload["boundary"] = sorted(repr(s) for s in report.boundary_set)
    _emit(payload, args)
    return EXIT_OK


def cmd_compare(args) -> int:
    config = _load_config(args)
    if "evaluator_a" not in config or "evaluator_b" not in config:
        raise ConfigError("config: compare needs evaluator_a and evaluator_b keys")
    base = {k: v for k, v in config.items()
            if k in ("domain", "domain_params", "seed")}
    model = parse_config({**base, "budget": {"prove_optimality": True}}).model
    budget = Budget(prove_optimality=True)
    runs = []
    for key in ("evaluator_a", "evaluator_b"):
        evaluator = parse_evaluator(config[key], key=key)
        runs.append(run_search(model, evaluator, budget, record_expansions=True))
    report = expansion_set_compare(runs[0], runs[1])
    args.report_name = "compare.json"
    _emit({
        "equal_states": report.equal_states,
        "only_a": [repr(s) for s in report.only_a],
        "only_b": [repr(s) for s in report.only_b],
        "expansions_a": runs[0].metrics.expansions,
        "expansions_b": runs[1].metrics.expansions,
    }, args)
    return EXIT_OK


def cmd_count_states(args) -> int:
    config = _load_config(args)
    model = parse_config({**config, "budget": {"prove_optimality": True}}).model
    count = count_reachable(model, cap=args.cap)
    args.report_name = "count-states.json"
    _emit({"reachable": count}, args)
    return EXIT_OK


def cmd_summarize(args) -> int:
    text, warnings = summarize(args.results)
    print(text, end="")
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "summary.csv").write_text(text, encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="searchlab",
        description="Best-first branch-and-bound laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="execute one configured search run")
    _add_common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="discovery-effort sweep over counter goals")
    _add_common(p)
    p.add_argument("--k", type=int, help="counter bit width")
    p.add_argument("--evaluators", default="cost,size",
                   help="two comma-separated evaluators (default cost,size)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("score", help="quality score of found costs vs best known")
    _add_common(p)
    p.add_argument("--found", required=True, type=Path,
                   help="JSON file mapping problem -> found cost (null = unsolved)")
    p.add_argument("--best-known", required=True, type=Path,
                   help="JSON file mapping problem -> best known cost")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("oracle", help="exhaustive reference optimum of an instance")
    _add_common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("footprint", help="cost-optimal footprint of an instance")
    _add_common(p)
    p.add_argument("--full", action="store_true", help="include full state listings")
    p.set_defaults(func=cmd_footprint)

    p = sub.add_parser("compare", help="expansion-set equality of two proof runs")
    _add_common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("count-states", help="count reachable states of an instance")
    _add_common(p)
    p.set_defaults(func=cmd_count_states)

    p = sub.add_parser("summarize", help="fold run files into a CSV summary")
    _add_common(p)
    p.add_argument("results", nargs="*", type=Path, help="run-*.jsonl files")
    p.set_defaults(func=cmd_summarize)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_CONFIG
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_CONFIG
    except InadmissibleHeuristic as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (AssertionError, RuntimeError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
