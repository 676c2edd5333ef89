"""Seeded randomized drivers for the inequality checkers.

Each driver returns a summary dict with the pass count and, on failure, the
first failing witness; they back the `ksub check` subcommand and the
acceptance suite.
"""

from __future__ import annotations

import random
from typing import Optional

from ksub.core import Assignment, EvalCounter, check_enumeration_cap
from ksub.gen import generate_instance, random_assignment
from ksub.algorithms import exact_bruteforce
from ksub.oracles import Oracle
from ksub.properties import (
    Eq2Scenario,
    WolseyInput,
    check_eq2,
    check_lemma1,
    check_wolsey,
    greedy_reorder,
)


def _summary(checker: str, trials: int, passed: int, first_failure=None, **extra) -> dict:
    out = {
        "checker": checker,
        "trials": trials,
        "passed": passed,
        "failed": trials - passed,
        "first_failure": first_failure,
    }
    out.update(extra)
    return out


def run_wolsey_trials(seed: int, trials: int) -> dict:
    """P, D uniform in [1, 20]; rho uniform in [0, 1] with rho[0] > 0."""
    rng = random.Random(seed)
    passed = 0
    first = None
    for t in range(trials):
        P = rng.randint(1, 20)
        D = rng.randint(1, 20)
        rho = [rng.random() for _ in range(P)]
        while rho[0] <= 0.0:  # probability-zero guard
            rho[0] = rng.random()
        if check_wolsey(WolseyInput(P, D, rho)):
            passed += 1
        elif first is None:
            first = {"trial": t, "P": P, "D": D, "rho": rho}
    return _summary("wolsey", trials, passed, first)


def _pairs_json(S: Assignment) -> list:
    return [list(p) for p in S.pairs]


def run_lemma1_trials(seed: int, trials: int, oracle: Optional[Oracle] = None) -> dict:
    """Random nested pairs S within S' over generated coverage and
    separable-sum instances (n <= 8, k <= 3), or over a fixed oracle."""
    rng = random.Random(seed)
    passed = 0
    first = None
    evals = EvalCounter()
    current = oracle
    for t in range(trials):
        if oracle is None and t % 50 == 0:
            family = "coverage" if (t // 50) % 2 == 0 else "separable_sum"
            _, current = generate_instance(
                rng.randrange(2**31), rng.randint(2, 8), rng.randint(1, 3), family
            )
        sprime = random_assignment(rng, current.n, current.k, 0.6)
        S = Assignment(p for p in sprime.pairs if rng.random() < 0.5)
        if check_lemma1(current, S, sprime, evals):
            passed += 1
        elif first is None:
            first = {"trial": t, "S": _pairs_json(S), "Sprime": _pairs_json(sprime)}
    return _summary("lemma1", trials, passed, first, evaluations=evals.count)


def lemma1_exhaustive(oracle: Oracle) -> dict:
    """Check every nested pair S within S' of a small oracle."""
    check_enumeration_cap(oracle.n, oracle.k)
    n, k = oracle.n, oracle.k
    evals = EvalCounter()
    trials = 0
    passed = 0
    first = None

    def assignments():
        p = k + 1
        for code in range(p**n):
            pairs = []
            cc = code
            for a in range(1, n + 1):
                d = cc % p
                cc //= p
                if d:
                    pairs.append((a, d))
            yield Assignment(pairs)

    for sprime in assignments():
        pairs = sprime.pairs
        for mask in range(1 << len(pairs)):
            S = Assignment(p for idx, p in enumerate(pairs) if mask >> idx & 1)
            trials += 1
            if check_lemma1(oracle, S, sprime, evals):
                passed += 1
            elif first is None:
                first = {"S": _pairs_json(S), "Sprime": _pairs_json(sprime)}
    return _summary("lemma1", trials, passed, first, evaluations=evals.count)


def _draw_Z(rng: random.Random, n: int, k: int, forbidden: set[int]) -> Assignment:
    pairs = []
    for a in range(1, n + 1):
        if a not in forbidden and rng.random() < 0.5:
            pairs.append((a, rng.randint(1, k)))
    return Assignment(pairs)


def _scenarios_for(oracle, ordered, rng, count, results, evals):
    """Append up to `count` (passed, detail) results for one reordered set."""
    for _ in range(count):
        j = rng.randint(4, len(ordered))
        forbidden = {a for a, _ in ordered[:3]} | {ordered[j - 1][0]}
        Z = _draw_Z(rng, oracle.n, oracle.k, forbidden)
        scenario = Eq2Scenario(oracle, ordered, j, Z)
        ok = check_eq2(scenario, evals)
        results.append((ok, {"j": j, "Z": _pairs_json(Z), "T": [list(p) for p in ordered]}))


def run_eq2_trials(
    seed: int,
    trials: int,
    oracle: Optional[Oracle] = None,
    inst=None,
    scenarios_per_set: int = 8,
    max_attempts: int = 100000,
) -> dict:
    """Scenarios built from exact optima with support size >= 4, plus an
    equal-sized population built from arbitrary reordered sets (the bound
    only uses the reorder property, so both must pass); reported separately.
    """
    rng = random.Random(seed)
    evals = EvalCounter()
    optimal: list = []
    arbitrary: list = []
    attempts = 0
    while len(optimal) < trials and attempts < max_attempts:
        attempts += 1
        if oracle is None:
            cur_inst, cur_oracle = generate_instance(
                rng.randrange(2**31),
                rng.randint(5, 8),
                rng.randint(2, 3),
                "coverage",
                cost_max=3,
                budget_fraction=0.8,
            )
        else:
            cur_inst, cur_oracle = inst, oracle
        opt = exact_bruteforce(cur_oracle, cur_inst, evals)
        if len(opt.solution) < 4:
            if oracle is not None:
                break  # fixed oracle cannot provide |T| >= 4
            continue
        ordered = tuple(greedy_reorder(cur_oracle, opt.solution, evals))
        _scenarios_for(
            cur_oracle, ordered, rng,
            min(scenarios_per_set, trials - len(optimal)), optimal, evals,
        )
        while len(arbitrary) < len(optimal):
            T = random_assignment(rng, cur_oracle.n, cur_oracle.k, 0.7)
            if len(T) < 4:
                continue
            ordered_arb = tuple(greedy_reorder(cur_oracle, T, evals))
            _scenarios_for(
                cur_oracle, ordered_arb, rng,
                min(scenarios_per_set, len(optimal) - len(arbitrary)), arbitrary, evals,
            )
    passed = sum(1 for ok, _ in optimal if ok)
    arb_passed = sum(1 for ok, _ in arbitrary if ok)
    first = next((d for ok, d in optimal + arbitrary if not ok), None)
    return _summary(
        "eq2",
        len(optimal),
        passed,
        first,
        arbitrary_trials=len(arbitrary),
        arbitrary_passed=arb_passed,
        evaluations=evals.count,
    )


def all_passed(summary: dict) -> bool:
    ok = summary["passed"] == summary["trials"]
    if "arbitrary_trials" in summary:
        ok = ok and summary["arbitrary_passed"] == summary["arbitrary_trials"]
    return ok
