"""Experiment orchestration: configs, runs, sweeps, scoring, summaries.

Run output is streamed as JSON lines, one incumbent per line as it is
discovered plus one final metrics object, so killing a run still leaves
a usable, replayable record. Serialized records carry no wall-clock
fields; identical config and seed therefore produce byte-identical
files. Summaries are CSV with a fixed header for external tooling.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .domains import (CounterProblem, SolutionSpec, TreeProblem,
                      make_rendezvous, make_swap)
from .engine import Budget, EvaluatorConfig, RunResult, run_search
from .evaluators import KIND_ALIASES, TIE_BREAK_ALIASES

DOMAINS = ("counter", "tree", "travel-rendezvous", "travel-swap")

_KIND_TO_ALIAS = {
    "cost": "cost",
    "size": "size",
    "size_cost_sensitive": "size-cs",
    "hybrid": "hybrid",
    "negated_cost": "neg-cost",
}

_TIE_TO_ALIAS = {
    "default": "default",
    "cost_secondary": "cost",
    "size_secondary": "size",
    "fifo": "fifo",
}


class ConfigError(Exception):
    """Invalid configuration; the message names the offending key."""


def _fraction(value, key: str) -> Fraction:
    try:
        if isinstance(value, float):
            return Fraction(str(value))
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ConfigError(f"{key}: not a valid rational: {value!r}") from None


def _require(params: dict, key: str, context: str):
    if key not in params:
        raise ConfigError(f"{context}.{key}: missing required key")
    return params[key]


def _int(value, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key}: expected an integer, got {value!r}")
    return value


def build_model(domain: str, params: dict, default_seed: int = 0):
    """Instantiate a benchmark instance from its config keys."""
    params = dict(params or {})
    if domain == "counter":
        return CounterProblem(
            k=_int(_require(params, "k", "domain_params"), "domain_params.k"),
            goal=_int(_require(params, "goal", "domain_params"), "domain_params.goal"),
        )
    if domain == "tree":
        sol = params.get("solution", {})
        spec = SolutionSpec(
            normalized_cost=_fraction(
                _require(sol, "normalized_cost", "domain_params.solution"),
                "domain_params.solution.normalized_cost"),
            count=sol.get("count", 1),
            mix_ratio=_fraction(sol.get("mix_ratio", "1/2"),
                                "domain_params.solution.mix_ratio"),
            seed=sol.get("seed", default_seed),
            max_depth=sol.get("max_depth"),
        )
        return TreeProblem(
            x=_int(_require(params, "x", "domain_params"), "domain_params.x"),
            y=_int(_require(params, "y", "domain_params"), "domain_params.y"),
            c_high=_int(_require(params, "c_high", "domain_params"), "domain_params.c_high"),
            c_low=_int(_require(params, "c_low", "domain_params"), "domain_params.c_low"),
            solution_spec=spec,
        )
    if domain == "travel-rendezvous":
        k = params.get("k", params.get("passengers", 1))
        return make_rendezvous(
            k=_int(k, "domain_params.k"),
            planes=params.get("planes", 4),
            origins=tuple(params.get("origins", (1, 3))),
            diagonal_cost=params.get("diagonal_cost", 7000),
            exterior_cost=params.get("exterior_cost", 10000),
        )
    if domain == "travel-swap":
        return make_swap(
            n_cities=_int(_require(params, "n_cities", "domain_params"),
                          "domain_params.n_cities"),
            fly_cost=params.get("fly_cost", 10000),
        )
    raise ConfigError(f"domain: unknown domain {domain!r} (choose from {DOMAINS})")


def parse_evaluator(value, key: str = "evaluator") -> EvaluatorConfig:
    """Accept 'cost', 'cost+size-cs', or a dict of evaluator keys."""
    if isinstance(value, str):
        value = {"evaluator": value}
    if not isinstance(value, dict):
        raise ConfigError(f"{key}: expected a string or object, got {value!r}")

    spec = value.get("evaluator", "cost")
    dual = value.get("dual")
    if isinstance(spec, str) and "+" in spec:
        dual, spec = spec, spec.split("+", 1)[0]
    kind = KIND_ALIASES.get(spec)
    if kind is None:
        raise ConfigError(f"{key}.evaluator: unknown evaluator {spec!r}")

    dual_lists = dual is not None
    dual_kind = None
    if dual_lists:
        parts = str(dual).split("+")
        if len(parts) != 2:
            raise ConfigError(f"{key}.dual: expected '<evalA>+<evalB>', got {dual!r}")
        a, b = (KIND_ALIASES.get(p) for p in parts)
        if a is None or b is None:
            raise ConfigError(f"{key}.dual: unknown evaluator in {dual!r}")
        kind, dual_kind = a, b

    tie = TIE_BREAK_ALIASES.get(value.get("tiebreak", "default"))
    if tie is None:
        raise ConfigError(f"{key}.tiebreak: unknown tie-break {value.get('tiebreak')!r}")

    mix = value.get("hybrid_mix")
    try:
        return EvaluatorConfig(
            kind=kind,
            weight=_fraction(value.get("weight", 1), f"{key}.weight"),
            delayed=bool(value.get("delayed", False)),
            dual_lists=dual_lists,
            dual_kind=dual_kind,
            tie_break=tie,
            hybrid_mix=None if mix is None else _fraction(mix, f"{key}.hybrid_mix"),
        )
    except ValueError as exc:
        raise ConfigError(f"{key}: {exc}") from None


def evaluator_to_dict(config: EvaluatorConfig) -> dict:
    dual = None
    if config.dual_lists:
        dual = (f"{_KIND_TO_ALIAS[config.kind]}"
                f"+{_KIND_TO_ALIAS[config.dual_kind or config.kind]}")
    return {
        "evaluator": _KIND_TO_ALIAS[config.kind],
        "weight": str(config.weight),
        "delayed": config.delayed,
        "dual": dual,
        "tiebreak": _TIE_TO_ALIAS[config.tie_break],
        "hybrid_mix": None if config.hybrid_mix is None else str(config.hybrid_mix),
    }


def parse_budget(value: Optional[dict]) -> Budget:
    value = value or {}
    if not isinstance(value, dict):
        raise ConfigError(f"budget: expected an object, got {value!r}")
    budget = Budget(
        max_expansions=value.get("max_expansions"),
        max_seconds=value.get("max_seconds"),
        prove_optimality=bool(value.get("prove_optimality", False)),
        stop_after_incumbents=value.get("stop_after_incumbents"),
    )
    try:
        budget.validate()
    except ValueError as exc:
        raise ConfigError(f"budget: {exc}") from None
    return budget


@dataclass(frozen=True)
class ParsedConfig:
    model: object
    evaluator: EvaluatorConfig
    budget: Budget
    seed: int
    normalized: dict
    config_hash: str


def parse_config(config: dict) -> ParsedConfig:
    """Validate a full run config and produce its canonical form."""
    if not isinstance(config, dict):
        raise ConfigError("config: expected a JSON object")
    domain = config.get("domain")
    if domain not in DOMAINS:
        raise ConfigError(f"domain: unknown domain {domain!r} (choose from {DOMAINS})")
    seed = config.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError(f"seed: expected an integer, got {seed!r}")
    model = build_model(domain, config.get("domain_params", {}), default_seed=seed)
    evaluator = parse_evaluator(config.get("evaluator", "cost"))
    budget = parse_budget(config.get("budget"))

    normalized = {
        "domain": domain,
        "model": model.describe(),
        "evaluator": evaluator_to_dict(evaluator),
        "budget": {
            "max_expansions": budget.max_expansions,
            "max_seconds": budget.max_seconds,
            "prove_optimality": budget.prove_optimality,
            "stop_after_incumbents": budget.stop_after_incumbents,
        },
        "seed": seed,
    }
    digest = hashlib.sha256(_canonical_json(normalized).encode()).hexdigest()[:12]
    return ParsedConfig(model=model, evaluator=evaluator, budget=budget,
                        seed=seed, normalized=normalized, config_hash=digest)


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class ExperimentResult:
    run: RunResult
    out_path: Optional[Path]
    config_hash: str


def run_experiment(config: dict, out_dir: Optional[Path] = None,
                   record_expansions: bool = False) -> ExperimentResult:
    """Execute one configured run, streaming results as JSON lines.

    The output file is named run-<config_hash>.jsonl; each incumbent is
    written and flushed the moment it is found.
    """
    parsed = parse_config(config)
    out_path = None
    handle = None
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        out_path = out_dir / f"run-{parsed.config_hash}.jsonl"
        handle = out_path.open("w", encoding="utf-8")

    def stream(record):
        if handle is None:
            return
        line = _canonical_json({
            "type": "incumbent",
            "cost": record.cost,
            "size": record.size,
            "expansions": record.expansions_at_discovery,
            "plan": list(record.plan),
        })
        handle.write(line + "\n")
        handle.flush()

    try:
        result = run_search(parsed.model, parsed.evaluator, parsed.budget,
                            on_incumbent=stream,
                            record_expansions=record_expansions)
        if handle is not None:
            best = result.best
            summary = {
                "type": "metrics",
                "config_hash": parsed.config_hash,
                "config": parsed.normalized,
                "best_cost": best.cost if best else None,
                "best_size": best.size if best else None,
                **result.metrics.deterministic_dict(),
            }
            handle.write(_canonical_json(summary) + "\n")
    finally:
        if handle is not None:
            handle.close()
    return ExperimentResult(run=result, out_path=out_path,
                            config_hash=parsed.config_hash)


# ---------------------------------------------------------------------------
# Quality scoring
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProblemScore:
    problem: str
    best_known: int
    found: Optional[int]
    ratio: Fraction
    new_best: bool


@dataclass(frozen=True)
class ScoreTable:
    rows: tuple[ProblemScore, ...]
    aggregate: Fraction

    @property
    def aggregate_percent(self) -> float:
        return float(self.aggregate)


def ipc_score(found: dict, best_known: dict) -> ScoreTable:
    """Per-problem quality ratios best/found, aggregated as a percentage.

    Unsolved problems (found is None) contribute 0. A run that beats the
    reference is flagged as a new best and the ratio is taken against the
    better value, so ratios always land in (0, 1].
    """
    rows = []
    for problem in sorted(found):
        if problem not in best_known:
            raise ValueError(f"no best-known cost for problem {problem!r}")
        best = best_known[problem]
        if best <= 0:
            raise ValueError(f"best-known cost must be positive for {problem!r}")
        cost = found[problem]
        if cost is None:
            rows.append(ProblemScore(problem, best, None, Fraction(0), False))
            continue
        new_best = cost < best
        effective = min(cost, best)
        rows.append(ProblemScore(problem, effective, cost,
                                 Fraction(effective, cost), new_best))
    n = len(rows)
    aggregate = Fraction(0) if n == 0 else 100 * sum(r.ratio for r in rows) / n
    return ScoreTable(rows=tuple(rows), aggregate=aggregate)


# ---------------------------------------------------------------------------
# Counter goal sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    goal: int
    discovery: tuple[int, ...]


@dataclass(frozen=True)
class SweepReport:
    """Discovery effort per goal for a pair of evaluators, plus the two
    measured crossover points of the curves.

    ``ratio2_goal`` is the largest goal at which the second evaluator
    still needs at least 1.95x the expansions of the first (the edge of
    the factor-two regime). ``lead_goal`` is the first goal at which the
    second evaluator needs no more expansions than the first (the lead
    change).
    """

    k: int
    evaluators: tuple[str, str]
    rows: tuple[SweepRow, ...]
    ratio2_goal: Optional[int]
    lead_goal: Optional[int]

    @property
    def ratio2_fraction(self) -> Optional[Fraction]:
        return None if self.ratio2_goal is None else Fraction(self.ratio2_goal, 1 << self.k)

    @property
    def lead_fraction(self) -> Optional[Fraction]:
        return None if self.lead_goal is None else Fraction(self.lead_goal, 1 << self.k)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        a, b = self.evaluators
        writer.writerow(["goal", f"{a}_discovery", f"{b}_discovery"])
        for row in self.rows:
            writer.writerow([row.goal, *row.discovery])
        return buf.getvalue()


def sweep_goals(k: int, evaluators: tuple[str, str] = ("cost", "size"),
                goals=None) -> SweepReport:
    """Measure discovery expansions for every goal of a k-bit counter.

    Each run stops at its first incumbent; only the discovery phase is
    being compared. Goals 0 and 1 are excluded from crossover estimation
    (discovery there is immediate for both orderings).
    """
    if k > 16:
        raise ValueError("sweeps above k=16 are not exhaustive-run material")
    configs = [parse_evaluator(e) for e in evaluators]
    budget = Budget(stop_after_incumbents=1)
    rows = []
    for goal in (range(1 << k) if goals is None else goals):
        model = CounterProblem(k=k, goal=goal)
        counts = []
        for config in configs:
            result = run_search(model, config, budget, record_expansions=False)
            counts.append(result.incumbents[0].expansions_at_discovery)
        rows.append(SweepRow(goal=goal, discovery=tuple(counts)))

    ratio2 = [r.goal for r in rows
              if r.goal >= 2 and r.discovery[1] >= Fraction(39, 20) * r.discovery[0]]
    lead = [r.goal for r in rows
            if r.goal >= 2 and r.discovery[1] <= r.discovery[0]]
    return SweepReport(
        k=k,
        evaluators=tuple(evaluators),
        rows=tuple(rows),
        ratio2_goal=max(ratio2) if ratio2 else None,
        lead_goal=min(lead) if lead else None,
    )


# ---------------------------------------------------------------------------
# Result-file summaries
# ---------------------------------------------------------------------------

SUMMARY_HEADER = ("domain", "model", "evaluator", "config_hash", "seed",
                  "discovery_expansions", "proof_expansions", "best_cost",
                  "termination")


def summarize(paths) -> tuple[str, list[str]]:
    """Fold run files into one CSV table, one row per run.

    Rows are sorted by (domain, config hash). Files that cannot be parsed
    are skipped and reported in the warnings list.
    """
    entries = []
    warnings = []
    for path in paths:
        path = Path(path)
        try:
            incumbents = []
            metrics = None
            with path.open(encoding="utf-8") as handle:
                for line in handle:
                    line = line.strip()
                    if not line:
                        continue
                    obj = json.loads(line)
                    if obj.get("type") == "incumbent":
                        incumbents.append(obj)
                    elif obj.get("type") == "metrics":
                        metrics = obj
            if metrics is None:
                raise ValueError("no metrics record")
            config = metrics["config"]
            evaluator = config["evaluator"]
            dual = evaluator.get("dual")
            eval_str = dual or evaluator["evaluator"]
            if evaluator.get("weight") not in (None, "1"):
                eval_str += f" w={evaluator['weight']}"
            if evaluator.get("delayed"):
                eval_str += " delayed"
            if evaluator.get("tiebreak", "default") != "default":
                eval_str += f" tb={evaluator['tiebreak']}"
            proved = metrics["termination"] == "proved"
            entries.append((
                config["domain"],
                config["model"],
                eval_str,
                metrics["config_hash"],
                config["seed"],
                incumbents[0]["expansions"] if incumbents else "",
                metrics["expansions"] if proved else "",
                metrics["best_cost"] if metrics["best_cost"] is not None else "",
                metrics["termination"],
            ))
        except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
            warnings.append(f"{path}: skipped ({exc})")
    entries.sort(key=lambda row: (row[0], row[3]))

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(SUMMARY_HEADER)
    writer.writerows(entries)
    return buf.getvalue(), warnings
