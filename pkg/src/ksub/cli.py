"""Command-line surface.

Subcommands: solve, generate, validate, check, bench. Exit codes:
0 success / all checks passed, 1 check or validation failure, 2 input error,
3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from ksub import checks
from ksub.algorithms import (
    count_bound,
    exact_bruteforce,
    knapsack_greedy,
    unconstrained_greedy,
)
from ksub.core import (
    DegenerateInputError,
    MalformedInputError,
    PreconditionError,
    SizeLimitError,
)
from ksub.gen import GENERATED_FAMILIES, generate_instance
from ksub.io import load_instance, report_row, save_instance, write_csv
from ksub.oracles import VALIDATORS

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_CAP = 3

ALGORITHMS = ("unconstrained_greedy", "knapsack_greedy", "exact")


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    print(text, end="" if text.endswith("\n") else "\n")


def cmd_solve(args) -> int:
    inst, oracle = load_instance(args.instance)
    algorithm = args.algorithm.replace("-", "_")
    if algorithm == "unconstrained_greedy":
        report = unconstrained_greedy(oracle)
    elif algorithm == "knapsack_greedy":
        report = knapsack_greedy(oracle, inst)
    elif algorithm == "exact":
        report = exact_bruteforce(oracle, inst)
    else:
        raise MalformedInputError(f"unknown algorithm {args.algorithm!r}")
    if args.with_opt and algorithm != "exact":
        report = report.with_optimum(exact_bruteforce(oracle, inst).value)
    _emit(json.dumps(report.to_json_dict(), indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_generate(args) -> int:
    inst, oracle = generate_instance(
        args.seed, args.n, args.k, args.family, args.cost_max, args.budget_fraction
    )
    if args.output:
        save_instance(args.output, inst, oracle)
    else:
        from ksub.io import instance_to_json

        print(json.dumps(instance_to_json(inst, oracle), indent=2, sort_keys=True))
    return EXIT_OK


def cmd_validate(args) -> int:
    inst, oracle = load_instance(args.instance)
    verdict = VALIDATORS[args.mode](oracle)
    print(json.dumps(verdict.to_json(), indent=2))
    return EXIT_OK if verdict.passed else EXIT_FAIL


def cmd_check(args) -> int:
    if args.trials < 1:
        raise MalformedInputError("--trials must be >= 1")
    oracle = None
    inst = None
    if args.instance:
        inst, oracle = load_instance(args.instance)
    if args.checker == "wolsey":
        if oracle is not None:
            raise MalformedInputError("--instance does not apply to the wolsey checker")
        summary = checks.run_wolsey_trials(args.seed, args.trials)
    elif args.checker == "lemma1":
        if oracle is not None:
            summary = checks.lemma1_exhaustive(oracle)
        else:
            summary = checks.run_lemma1_trials(args.seed, args.trials)
    else:
        summary = checks.run_eq2_trials(args.seed, args.trials, oracle=oracle, inst=inst)
    print(json.dumps(summary, indent=2))
    return EXIT_OK if checks.all_passed(summary) else EXIT_FAIL


def _parse_range(spec: str) -> tuple[int, int]:
    parts = spec.split(":")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise MalformedInputError(f"bad range {spec!r}, want 'lo:hi' or a single integer")
    if lo < 1 or hi < lo:
        raise MalformedInputError(f"bad range {spec!r}")
    return lo, hi


def cmd_bench(args) -> int:
    import random

    n_lo, n_hi = _parse_range(args.n_range)
    k_lo, k_hi = _parse_range(args.k_range)
    rng = random.Random(args.seed)
    rows = []
    ratios = []
    max_evals = 0
    max_bound = 0
    for idx in range(args.count):
        n = rng.randint(n_lo, n_hi)
        k = rng.randint(k_lo, k_hi)
        sub_seed = rng.randrange(2**31)
        inst, oracle = generate_instance(
            sub_seed, n, k, args.family, args.cost_max, args.budget_fraction
        )
        greedy = knapsack_greedy(oracle, inst)
        opt = exact_bruteforce(oracle, inst)
        report = greedy.with_optimum(opt.value)
        rows.append(report_row(f"{args.family}-{idx}-s{sub_seed}", inst, report))
        if report.ratio is not None:
            ratios.append(report.ratio)
        max_evals = max(max_evals, greedy.evaluations)
        max_bound = max(max_bound, count_bound(n, k))
    if ratios:
        summary = (
            f"summary: min_ratio={repr(min(ratios))} "
            f"mean_ratio={repr(sum(ratios) / len(ratios))} "
            f"max_evaluations={max_evals} max_count_bound={max_bound}"
        )
    else:
        summary = f"summary: no defined ratios; max_evaluations={max_evals} max_count_bound={max_bound}"
    _emit(write_csv(rows, [summary]), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ksub",
        description="Monotone k-submodular maximization under a knapsack constraint",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run an algorithm on an instance file")
    p.add_argument("instance")
    p.add_argument("--algorithm", required=True)
    p.add_argument("--with-opt", action="store_true", help="also compute the exact optimum")
    p.add_argument("--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", help="emit a seeded random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--family", default="coverage", choices=GENERATED_FAMILIES)
    p.add_argument("--cost-max", type=int, default=10)
    p.add_argument("--budget-fraction", type=float, default=0.5)
    p.add_argument("--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("validate", help="run an exhaustive structural validator")
    p.add_argument("instance")
    p.add_argument("--mode", required=True, choices=sorted(VALIDATORS))
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", help="run an inequality checker on seeded inputs")
    p.add_argument("--checker", required=True, choices=("lemma1", "wolsey", "eq2"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--instance", help="run the checker over this instance instead")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bench", help="generate instances, solve, compare to the optimum")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--n-range", default="4:8")
    p.add_argument("--k-range", default="2:3")
    p.add_argument("--family", default="coverage", choices=GENERATED_FAMILIES)
    p.add_argument("--cost-max", type=int, default=10)
    p.add_argument("--budget-fraction", type=float, default=0.5)
    p.add_argument("--output")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
              file=sys.stderr)
        return EXIT_INPUT
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (MalformedInputError, PreconditionError, DegenerateInputError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def console_main() -> None:  # pragma: no cover
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    console_main()
