"""The two greedy algorithms and the exhaustive exact solver.

unconstrained_greedy  - one pass over the items, each gets the dimension of
                        maximum marginal gain.
knapsack_greedy       - best feasible assignment of size 1 or 2, then a
                        density-greedy completion of every feasible size-3
                        seed; returns the overall best.
exact_bruteforce      - enumerates every feasible assignment (ground truth
                        for the acceptance tests; capped).
count_bound           - closed-form worst-case evaluation count of
                        knapsack_greedy, bounded by 1 * n^5 * k^4.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from ksub import backend
from ksub.core import (
    Assignment,
    EvalCounter,
    Instance,
    MalformedInputError,
    SolveReport,
    check_enumeration_cap,
)
from ksub.oracles import Oracle


@dataclass
class TraceStep:
    """One step of a density completion.

    The recorded density sequence is informational only; no monotonicity of
    the densities across steps is asserted anywhere.
    """

    step: int
    item: int
    dim: int
    density: float
    gain: float
    accepted: bool
    cumulative_cost: int


GreedyTrace = list[TraceStep]


def _check_match(oracle: Oracle, inst: Instance) -> None:
    if oracle.n != inst.n or oracle.k != inst.k:
        raise MalformedInputError(
            f"oracle is over n={oracle.n}, k={oracle.k} but instance has "
            f"n={inst.n}, k={inst.k}"
        )


def unconstrained_greedy(oracle: Oracle, counter: Optional[EvalCounter] = None) -> SolveReport:
    """Greedy without constraint; uses at most 1 + n*k <= 2*n*k evaluations.

    Items are processed in increasing id order; dimension ties go to the
    lowest index.
    """
    vec, value, evals = backend.active().unconstrained_greedy(oracle.payload())
    if counter is not None:
        counter.add(evals)
    return SolveReport("unconstrained_greedy", Assignment.from_vector(vec), value, evals)


def knapsack_greedy(oracle: Oracle, inst: Instance, counter: Optional[EvalCounter] = None) -> SolveReport:
    """Greedy for the knapsack-constrained problem.

    Phase 1 enumerates all feasible assignments of size 1 or 2 (value ties:
    lexicographically smallest canonical form; empty result only if nothing
    nonempty is feasible). Phase 2 runs a density completion from every
    feasible size-3 seed and keeps a completion only on strict improvement,
    earlier seeds winning exact ties. The result always fits the budget.
    """
    _check_match(oracle, inst)
    vec, value, evals = backend.active().knapsack_greedy(
        oracle.payload(), inst.cost_vector(), inst.budget
    )
    if counter is not None:
        counter.add(evals)
    return SolveReport("knapsack_greedy", Assignment.from_vector(vec), value, evals)


def density_completion(
    oracle: Oracle,
    seed: Assignment,
    inst: Instance,
    counter: Optional[EvalCounter] = None,
) -> tuple[Assignment, float, GreedyTrace]:
    """One density-greedy completion starting from `seed`, with a full trace.

    At each step the remaining (item, dimension) pair of maximum gain/cost is
    selected (ties: lowest item, then lowest dimension), added iff it fits
    the budget, and the item is removed from the candidate pool either way.
    """
    _check_match(oracle, inst)
    oracle._check(seed)
    vec, value, evals, rows = backend.active().density_completion(
        oracle.payload(), seed.to_vector(inst.n), inst.cost_vector(), inst.budget
    )
    if counter is not None:
        counter.add(evals)
    trace = [TraceStep(*row) for row in rows]
    return Assignment.from_vector(vec), value, trace


def exact_bruteforce(oracle: Oracle, inst: Instance, counter: Optional[EvalCounter] = None) -> SolveReport:
    """Enumerate every feasible assignment and return a maximizer.

    Value ties go to the lexicographically smallest canonical form. Raises
    SizeLimitError when (k+1)**n exceeds the enumeration cap.
    """
    _check_match(oracle, inst)
    check_enumeration_cap(inst.n, inst.k)
    vec, value, evals = backend.active().bruteforce(
        oracle.payload(), inst.cost_vector(), inst.budget
    )
    if counter is not None:
        counter.add(evals)
    return SolveReport("exact", Assignment.from_vector(vec), value, evals)


def count_bound(n: int, k: int) -> int:
    """Worst-case evaluation count of knapsack_greedy.

    Phase 1 evaluates each candidate set once: n*k singletons plus
    C(n,2)*k^2 pairs. Phase 2 runs at most C(n,3)*k^3 seeds; a seed costs
    one evaluation for the seed itself, at most two per marginal gain over
    the shrinking candidate pool (2*k*(n-3)(n-2)/2 in total), and one for
    the completed solution. The bound satisfies count_bound(n, k) <=
    C * n^5 * k^4 with C = 1.
    """
    if n < 1 or k < 1:
        raise MalformedInputError("count_bound requires n >= 1 and k >= 1")
    phase1 = n * k + comb(n, 2) * k * k
    if n < 3:
        return phase1
    per_seed = 2 + k * (n - 3) * (n - 2)
    return phase1 + comb(n, 3) * k**3 * per_seed


COUNT_BOUND_CONSTANT = 1
