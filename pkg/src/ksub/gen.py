"""Seeded random instance and oracle generation.

Determinism contract: the same seed produces the same instance within this
implementation (the draw order below is part of the contract); byte-identical
output across different implementations of the PRNG is not promised.
"""

from __future__ import annotations

import math
import random

from ksub.core import Assignment, Instance, MalformedInputError
from ksub.oracles import CoverageOracle, Oracle, SeparableSumOracle, TabularOracle

GENERATED_FAMILIES = ("coverage", "separable_sum")


def generate_instance(
    seed: int,
    n: int,
    k: int,
    family: str = "coverage",
    cost_max: int = 10,
    budget_fraction: float = 0.5,
) -> tuple[Instance, Oracle]:
    """Draw a random instance of the given oracle family.

    Coverage: a universe of 2n unit-weight elements; each (item, dimension)
    pair covers every element independently with probability 1/2. Separable
    sum: masses uniform in [0, 1], each dimension capped at a uniform
    fraction in [0.25, 0.75] of its total mass. Costs are uniform integers
    in [1, cost_max]; budget = max(1, floor(budget_fraction * total cost)).
    """
    if n < 1 or k < 1:
        raise MalformedInputError("n and k must be >= 1")
    if cost_max < 1:
        raise MalformedInputError("cost_max must be >= 1")
    if not 0 < budget_fraction <= 1:
        raise MalformedInputError("budget_fraction must be in (0, 1]")
    if family not in GENERATED_FAMILIES:
        raise MalformedInputError(
            f"unknown family {family!r}; choose from {GENERATED_FAMILIES}"
        )
    rng = random.Random(seed)
    costs = {a: rng.randint(1, cost_max) for a in range(1, n + 1)}
    budget = max(1, math.floor(budget_fraction * sum(costs.values())))
    inst = Instance(n, k, costs, budget)

    if family == "coverage":
        m = 2 * n
        element_ids = [f"e{j}" for j in range(1, m + 1)]
        covers = {}
        for a in range(1, n + 1):
            for i in range(1, k + 1):
                covers[(a, i)] = {
                    element_ids[j] for j in range(m) if rng.random() < 0.5
                }
        oracle = CoverageOracle(n, k, element_ids, [1.0] * m, covers)
    else:
        masses = []
        caps = []
        for _ in range(k):
            row = [rng.uniform(0.0, 1.0) for _ in range(n)]
            masses.append(row)
            caps.append(rng.uniform(0.25, 0.75) * sum(row))
        oracle = SeparableSumOracle(n, k, masses, caps)
    return inst, oracle


def random_assignment(rng: random.Random, n: int, k: int, p_assign: float = 0.5) -> Assignment:
    """Each item independently: unassigned with prob 1 - p_assign, else a
    uniform dimension."""
    pairs = []
    for a in range(1, n + 1):
        if rng.random() < p_assign:
            pairs.append((a, rng.randint(1, k)))
    return Assignment(pairs)


def random_monotone_tabular(seed: int, n: int, k: int, decimals: int = 3) -> TabularOracle:
    """A random monotone (not necessarily k-submodular) tabular oracle.

    Draws a random nonnegative value per assignment and takes the running
    maximum over all preceding assignments, which forces monotonicity.
    Values are rounded to a coarse grid so genuine inequality violations sit
    far above the numeric tolerance.
    """
    rng = random.Random(seed)
    p = k + 1
    total = p**n
    raw = [round(rng.random(), decimals) for _ in range(total)]
    raw[0] = 0.0
    values = [0.0] * total
    pw = [p**a for a in range(n)]
    for code in range(total):
        best = raw[code]
        cc = code
        for a in range(n):
            d = cc % p
            cc //= p
            if d:
                pred = values[code - d * pw[a]]
                if pred > best:
                    best = pred
        values[code] = best
    return TabularOracle(n, k, values)
