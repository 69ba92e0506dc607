"""Command-line front end.

Three subcommands: ``solve`` runs one solver on one instance file,
``bench`` sweeps a parameter grid with every configured solver and emits
one row per run, ``verify`` checks an instance's structural properties
and prints verdicts.

Exit codes: 0 success, 2 unreadable or malformed input, 3 a cap was
exceeded (brute force, or exhaustive verification without --sample),
4 invalid or missing epsilon.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
import time
from dataclasses import dataclass
from typing import Optional

from .core import Assignment, CapExceededError, KSubFunction
from .instances import (
    InstanceFormatError,
    InstanceSpec,
    gen_coverage,
    gen_explicit_matroid,
    gen_modular,
    gen_partition_matroid,
    parse_instance,
)
from .matroids import UniformMatroid, check_matroid_axioms, rank
from .solvers import (
    DEFAULT_BRUTE_CAP,
    brute_force_solve,
    greedy_solve,
    threshold_decreasing_solve,
)
from .verify import (
    DEFAULT_PAIR_BUDGET,
    verify_k_submodular,
    verify_monotone,
    verify_orthant_pairwise,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_EPSILON = 4

SOLVER_NAMES = ("threshold", "greedy", "brute")
BENCH_COLUMNS = (
    "instance", "solver", "n", "k", "r", "epsilon", "value", "opt",
    "ratio", "eo_calls", "io_calls", "rounds", "elapsed", "error",
)


@dataclass
class BenchRow:
    """One sweep measurement: a single solver run on a single instance.

    ``opt`` and ``ratio`` are filled only when the instance fits the
    brute-force cap and the optimum is positive; ``rounds`` counts the
    threshold solver's executed outer rounds (0 for the others).  A
    nonempty ``error`` means the run failed and the measurement columns
    are absent.
    """

    instance: str
    solver: str
    n: int
    k: int
    r: Optional[int] = None
    epsilon: Optional[float] = None
    value: Optional[float] = None
    opt: Optional[float] = None
    ratio: Optional[float] = None
    eo_calls: Optional[int] = None
    io_calls: Optional[int] = None
    rounds: Optional[int] = None
    elapsed: Optional[float] = None
    error: str = ""


def _fail(message: str, code: int) -> int:
    print(f"ksubmax: {message}", file=sys.stderr)
    return code


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _cell(value, column: str) -> str:
    if value is None:
        return ""
    if column == "elapsed":
        return f"{value:.6f}"
    return str(value)


def _emit_rows(rows: list[BenchRow], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps([dataclasses.asdict(r) for r in rows], indent=2))
        return
    cells = [list(BENCH_COLUMNS)]
    cells += [[_cell(getattr(r, c), c) for c in BENCH_COLUMNS] for r in rows]
    if fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerows(cells)
        return
    widths = [max(len(line[j]) for line in cells) for j in range(len(BENCH_COLUMNS))]
    for line in cells:
        print("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip())


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def cmd_solve(args) -> int:
    try:
        spec = parse_instance(_read_text(args.instance))
    except OSError as err:
        return _fail(f"cannot read {args.instance}: {err}", EXIT_PARSE)
    except InstanceFormatError as err:
        return _fail(f"{args.instance}: {err}", EXIT_PARSE)

    f, m = spec.function, spec.matroid
    extra = {}
    if args.solver == "threshold":
        if args.epsilon is None:
            return _fail("the threshold solver requires --epsilon", EXIT_EPSILON)
        if not 0.0 < args.epsilon < 1.0:
            return _fail(
                f"epsilon must lie strictly between 0 and 1, got {args.epsilon}",
                EXIT_EPSILON,
            )
        rep = threshold_decreasing_solve(f, m, args.epsilon, order_seed=args.seed)
        value, assignment, elapsed = rep.value, rep.assignment, rep.elapsed
        eo, io, n_rounds = rep.counters.eo_calls, rep.counters.io_calls, len(rep.rounds)
        extra["rounds_detail"] = [[w, added] for w, added in rep.rounds]
    elif args.solver == "greedy":
        rep = greedy_solve(f, m)
        value, assignment, elapsed = rep.value, rep.assignment, rep.elapsed
        eo, io, n_rounds = rep.counters.eo_calls, rep.counters.io_calls, 0
    else:
        start = time.perf_counter()
        try:
            res = brute_force_solve(f, m, cap=args.cap)
        except CapExceededError as err:
            return _fail(str(err), EXIT_CAP)
        elapsed = time.perf_counter() - start
        value, assignment = res.value, res.assignment
        eo = io = n_rounds = None
        extra["max_opt_support_size"] = res.max_opt_support_size

    doc = {
        "solver": args.solver,
        "n": spec.n,
        "k": spec.k,
        "value": value,
        "assignment": list(assignment.labels),
        "support": sorted(assignment.support()),
        "eo_calls": eo,
        "io_calls": io,
        "rounds": n_rounds,
        "elapsed": elapsed,
        **extra,
    }
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        columns = ["solver", "n", "k", "value", "eo_calls", "io_calls",
                   "rounds", "elapsed", "assignment"]
        writer.writerow(columns)
        writer.writerow(
            [_cell(doc[c], c) for c in columns[:-1]]
            + [" ".join(str(v) for v in doc["assignment"])]
        )
    else:
        for key, val in doc.items():
            if key in ("assignment", "support"):
                val = "[" + ", ".join(str(v) for v in val) + "]"
            elif key == "elapsed":
                val = f"{val:.6f}s"
            print(f"{key}: {val}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def _check_config(doc) -> Optional[str]:
    """Return an error message for a malformed bench config, else None."""
    if not isinstance(doc, dict):
        return "top level: expected an object"
    grid = doc.get("grid")
    if not isinstance(grid, list):
        return "grid: expected a list of sweep entries"
    solvers = doc.get("solvers", ["threshold", "greedy"])
    if not isinstance(solvers, list) or any(s not in SOLVER_NAMES for s in solvers):
        return f"solvers: expected a list drawn from {SOLVER_NAMES}"
    epsilons = doc.get("epsilons", [])
    if "threshold" in solvers and not epsilons:
        return "epsilons: required when the threshold solver is configured"
    for eps in epsilons:
        if not isinstance(eps, (int, float)) or not 0.0 < eps < 1.0:
            return f"epsilons: every entry must lie in (0, 1), got {eps!r}"
    for idx, entry in enumerate(grid):
        where = f"grid[{idx}]"
        if not isinstance(entry, dict):
            return f"{where}: expected an object"
        for key in ("family", "n", "k", "matroid", "seeds"):
            if key not in entry:
                return f"{where}: missing required field '{key}'"
        if entry["family"] not in ("modular", "coverage"):
            return f"{where}.family: unknown family {entry['family']!r}"
        if entry["matroid"] not in ("uniform", "partition", "explicit"):
            return f"{where}.matroid: unknown matroid family {entry['matroid']!r}"
        if entry["matroid"] == "uniform" and "budget" not in entry:
            return f"{where}: uniform matroid needs a 'budget' field"
        if not isinstance(entry["seeds"], list) or not all(
            isinstance(s, int) for s in entry["seeds"]
        ):
            return f"{where}.seeds: expected a list of integers"
    return None


def _build_instance(entry: dict, seed: int) -> tuple[str, InstanceSpec]:
    family, n, k = entry["family"], entry["n"], entry["k"]
    if family == "modular":
        fn: KSubFunction = gen_modular(
            n, k,
            value_range=tuple(entry.get("value_range", (-2.0, 4.0))),
            monotone=entry.get("monotone", True),
            seed=seed,
        )
    else:
        fn = gen_coverage(
            n, k,
            universe_size=entry.get("universe_size", 2 * n),
            density=entry.get("density", 0.25),
            seed=seed,
        )
    mt = entry["matroid"]
    if mt == "uniform":
        m = UniformMatroid(n, entry["budget"])
    elif mt == "partition":
        m = gen_partition_matroid(n, seed=seed + 1)
    else:
        m = gen_explicit_matroid(n, seed=seed + 1)
    instance_id = f"{family}-{mt}-n{n}-k{k}-s{seed}"
    return instance_id, InstanceSpec(n=n, k=k, function=fn, matroid=m)


def _bench_one(
    spec: InstanceSpec, solver: str, epsilon: Optional[float], seed: int, cap: int
) -> dict:
    f, m = spec.function, spec.matroid
    if solver == "threshold":
        rep = threshold_decreasing_solve(f, m, epsilon, order_seed=seed)
        return {
            "value": rep.value,
            "eo_calls": rep.counters.eo_calls,
            "io_calls": rep.counters.io_calls,
            "rounds": len(rep.rounds),
            "elapsed": rep.elapsed,
        }
    if solver == "greedy":
        rep = greedy_solve(f, m)
        return {
            "value": rep.value,
            "eo_calls": rep.counters.eo_calls,
            "io_calls": rep.counters.io_calls,
            "rounds": 0,
            "elapsed": rep.elapsed,
        }
    start = time.perf_counter()
    res = brute_force_solve(f, m, cap=cap)
    return {"value": res.value, "elapsed": time.perf_counter() - start}


def run_bench(config: dict, cap: int) -> list[BenchRow]:
    """Materialize every grid instance and run every configured solver.

    Rows appear in deterministic config order: grid entry, then seed, then
    solver, then epsilon (threshold only).  Failures are captured in the
    row's ``error`` field and never abort the sweep.
    """
    solvers = config.get("solvers", ["threshold", "greedy"])
    epsilons = config.get("epsilons", [])
    cap = config.get("cap", cap)
    rows: list[BenchRow] = []
    for entry in config["grid"]:
        n, k = entry["n"], entry["k"]
        for seed in entry["seeds"]:
            try:
                instance_id, spec = _build_instance(entry, seed)
            except (ValueError, TypeError) as err:
                rows.append(BenchRow(
                    instance=f"{entry['family']}-{entry['matroid']}-n{n}-k{k}-s{seed}",
                    solver="", n=n, k=k, error=f"instance generation failed: {err}",
                ))
                continue
            r = rank(spec.matroid)
            opt = None
            if (k + 1) ** n <= cap:
                opt = brute_force_solve(spec.function, spec.matroid, cap=cap).value
            for solver in solvers:
                for epsilon in (epsilons if solver == "threshold" else [None]):
                    row = BenchRow(
                        instance=instance_id, solver=solver, n=n, k=k,
                        r=r, epsilon=epsilon,
                    )
                    try:
                        measured = _bench_one(spec, solver, epsilon, seed, cap)
                    except CapExceededError as err:
                        row.error = str(err)
                        rows.append(row)
                        continue
                    for key, val in measured.items():
                        setattr(row, key, val)
                    row.opt = opt
                    if opt is not None and opt > 0:
                        row.ratio = row.value / opt
                    rows.append(row)
    return rows


def cmd_bench(args) -> int:
    try:
        text = _read_text(args.config)
    except OSError as err:
        return _fail(f"cannot read {args.config}: {err}", EXIT_PARSE)
    try:
        config = json.loads(text)
    except json.JSONDecodeError as err:
        return _fail(
            f"{args.config}: line {err.lineno} column {err.colno}: {err.msg}",
            EXIT_PARSE,
        )
    problem = _check_config(config)
    if problem is not None:
        return _fail(f"{args.config}: {problem}", EXIT_PARSE)
    rows = run_bench(config, cap=args.cap)
    _emit_rows(rows, args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _plain(obj):
    """Render counterexample payloads with JSON-friendly primitives."""
    if isinstance(obj, Assignment):
        return list(obj.labels)
    if isinstance(obj, frozenset):
        return sorted(obj)
    if isinstance(obj, tuple):
        return [_plain(v) for v in obj]
    return obj


def _print_verdict(label: str, verdict) -> None:
    mode = "exhaustive" if verdict.exhaustive else "sampled"
    word = "holds" if verdict.holds else "fails"
    print(f"{label}: {word} [{mode}, {verdict.checked} checks]")
    if verdict.counterexample is not None:
        print(f"  counterexample: {_plain(verdict.counterexample)}")


def _verification_cost(n: int, k: int) -> int:
    """Largest exhaustive enumeration any verifier would attempt."""
    n_assignments = (k + 1) ** n
    joint_pairs = n_assignments * (n_assignments + 1) // 2
    ordered_pairs = (2 * k + 1) ** n
    return max(joint_pairs, ordered_pairs, 2 ** n)


def cmd_verify(args) -> int:
    try:
        spec = parse_instance(_read_text(args.instance))
    except OSError as err:
        return _fail(f"cannot read {args.instance}: {err}", EXIT_PARSE)
    except InstanceFormatError as err:
        return _fail(f"{args.instance}: {err}", EXIT_PARSE)

    budget = DEFAULT_PAIR_BUDGET
    if args.sample is not None:
        budget = args.sample
    elif _verification_cost(spec.n, spec.k) > budget:
        return _fail(
            f"instance needs {_verification_cost(spec.n, spec.k)} checks for "
            f"exhaustive verification (budget {budget}); pass --sample N to "
            "verify on N random checks instead",
            EXIT_CAP,
        )

    f, m = spec.function, spec.matroid
    joint = verify_k_submodular(f, pair_budget=budget, seed=args.seed or 0)
    split = verify_orthant_pairwise(f, pair_budget=budget, seed=args.seed or 0)
    mono = verify_monotone(f, pair_budget=budget, seed=args.seed or 0)
    axioms = check_matroid_axioms(m, budget=budget, seed=args.seed or 0)

    _print_verdict("k-submodularity (lattice inequality)", joint)
    _print_verdict("k-submodularity (orthant + pairwise)", split)
    agree = joint.holds == split.holds
    print(f"characterizations agree: {'yes' if agree else 'NO'}")
    _print_verdict("monotone", mono)
    _print_verdict("matroid axioms", axioms)
    print(f"rank: {rank(m)}")

    total = (spec.k + 1) ** spec.n
    if total <= args.cap:
        res = brute_force_solve(f, m, cap=args.cap)
        print(f"OPT: {res.value}")
        print(f"optimal assignment: {list(res.assignment.labels)}")
        print(f"max optimal support size: {res.max_opt_support_size}")
    else:
        print(f"OPT: skipped ((k+1)^n = {total} exceeds cap {args.cap})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ksubmax",
        description="Maximize k-submodular functions under a matroid constraint.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run one solver on one instance file")
    p_solve.add_argument("instance", help="path to a JSON instance file")
    p_solve.add_argument("--solver", choices=SOLVER_NAMES, default="threshold")
    p_solve.add_argument("--epsilon", type=float, default=None,
                         help="threshold decay rate in (0, 1); required for threshold")
    p_solve.add_argument("--seed", type=int, default=None,
                         help="shuffle the candidate visiting order")
    p_solve.add_argument("--format", choices=("json", "csv", "human"), default="human")
    p_solve.add_argument("--cap", type=int, default=DEFAULT_BRUTE_CAP,
                         help="brute-force assignment budget")
    p_solve.set_defaults(func=cmd_solve)

    p_bench = sub.add_parser("bench", help="sweep a parameter grid")
    p_bench.add_argument("config", help="path to a JSON sweep config")
    p_bench.add_argument("--format", choices=("json", "csv", "human"), default="csv")
    p_bench.add_argument("--cap", type=int, default=DEFAULT_BRUTE_CAP,
                         help="brute-force budget for the opt column")
    p_bench.set_defaults(func=cmd_bench)

    p_verify = sub.add_parser("verify", help="check instance properties")
    p_verify.add_argument("instance", help="path to a JSON instance file")
    p_verify.add_argument("--sample", type=int, default=None,
                          help="verify on N random checks instead of exhaustively")
    p_verify.add_argument("--seed", type=int, default=None,
                          help="seed for sampled verification")
    p_verify.add_argument("--cap", type=int, default=DEFAULT_BRUTE_CAP,
                          help="brute-force assignment budget for the OPT report")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
