"""Executable checkers for the structural inequalities the approximation
guarantees rest on: the telescoping marginal-gain bound, Wolsey's ratio
inequality, and the size-3-prefix gain bound used by the knapsack analysis.

Each checker returns a bare bool; drivers that run them over seeded random
inputs live in ksub.checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from ksub.core import (
    EPS,
    Assignment,
    DegenerateInputError,
    EvalCounter,
    MalformedInputError,
    PreconditionError,
    precedes,
)
from ksub.oracles import Oracle


def check_lemma1(
    oracle: Oracle,
    S: Assignment,
    Sprime: Assignment,
    counter: Optional[EvalCounter] = None,
) -> bool:
    """Telescoping bound: f(S') - f(S) <= sum of single-pair gains at S.

    Holds for every orthant-submodular oracle; returns False when the
    oracle is not (detection, not an error).
    """
    if not precedes(S, Sprime):
        raise PreconditionError("S must be a subset of S'")
    f_s = oracle.evaluate(S, counter)
    f_sp = oracle.evaluate(Sprime, counter)
    gains = 0.0
    for a, i in Sprime:
        if (a, i) not in S:
            gains += oracle.evaluate(S.with_pair(a, i), counter) - f_s
    return f_sp - f_s <= gains + EPS


@dataclass
class WolseyInput:
    """P, D positive integers; rho nonnegative reals of length P, rho[0] > 0."""

    P: int
    D: int
    rho: list[float]

    def __post_init__(self):
        if self.P < 1 or self.D < 1:
            raise MalformedInputError("P and D must be positive integers")
        if len(self.rho) != self.P:
            raise MalformedInputError("rho must have exactly P entries")
        if any(r < 0 for r in self.rho):
            raise MalformedInputError("rho entries must be nonnegative")
        if not self.rho[0] > 0:
            raise MalformedInputError("rho[0] must be strictly positive")


def check_wolsey(inp: WolseyInput) -> bool:
    """Both displayed inequalities of Wolsey's ratio bound.

    sum(rho) / min_t(prefix_t + D*rho_t) >= 1 - (1 - 1/D)^P >= 1 - e^(-P/D),
    each checked to absolute tolerance EPS.
    """
    prefix = 0.0
    denom = math.inf
    for r in inp.rho:
        denom = min(denom, prefix + inp.D * r)
        prefix += r
    if denom <= 0:
        raise DegenerateInputError("denominator min_t(prefix + D*rho_t) is not positive")
    lhs = prefix / denom
    mid = 1.0 - (1.0 - 1.0 / inp.D) ** inp.P
    low = 1.0 - math.exp(-inp.P / inp.D)
    return lhs >= mid - EPS and mid >= low - EPS


def greedy_reorder(
    oracle: Oracle, T: Assignment, counter: Optional[EvalCounter] = None
) -> list[tuple[int, int]]:
    """Order T's pairs so every prefix maximizes f among the available pairs.

    Ties go to the canonically smallest (item, dimension) pair. For monotone
    oracles the prefix values are nondecreasing.
    """
    remaining = list(T.pairs)
    ordered: list[tuple[int, int]] = []
    prefix = Assignment()
    while remaining:
        best_pair = None
        best_v = -math.inf
        for pair in remaining:  # canonical order, strict > keeps the first
            v = oracle.evaluate(prefix.with_pair(*pair), counter)
            if v > best_v:
                best_v = v
                best_pair = pair
        ordered.append(best_pair)
        remaining.remove(best_pair)
        prefix = prefix.with_pair(*best_pair)
    return ordered


@dataclass
class Eq2Scenario:
    """Inputs for the size-3-prefix gain bound.

    ordered_pairs is T after the greedy reorder; Y is its first three pairs;
    j (1-based, >= 4) selects the pair whose gain is bounded; Z is any
    assignment over items disjoint from Y's items and from item a_j.
    """

    oracle: Oracle
    ordered_pairs: tuple[tuple[int, int], ...]
    j: int
    Z: Assignment

    def __post_init__(self):
        if len(self.ordered_pairs) < 4:
            raise PreconditionError("need |T| >= 4")
        if not 4 <= self.j <= len(self.ordered_pairs):
            raise PreconditionError(f"j must be in [4, {len(self.ordered_pairs)}]")
        forbidden = {a for a, _ in self.ordered_pairs[:3]}
        forbidden.add(self.ordered_pairs[self.j - 1][0])
        if self.Z.support() & forbidden:
            raise PreconditionError("Z overlaps the first three items or item a_j")


def build_eq2_scenario(
    oracle: Oracle,
    T: Assignment,
    j: int,
    Z: Assignment,
    counter: Optional[EvalCounter] = None,
) -> Eq2Scenario:
    """Greedily reorder T and package a scenario."""
    ordered = tuple(greedy_reorder(oracle, T, counter))
    return Eq2Scenario(oracle, ordered, j, Z)


def check_eq2(scenario: Eq2Scenario, counter: Optional[EvalCounter] = None) -> bool:
    """f(Y u Z u {(a_j, i_j)}) - f(Y u Z) <= f(Y)/3 + EPS."""
    oracle = scenario.oracle
    Y = Assignment(scenario.ordered_pairs[:3])
    pj = scenario.ordered_pairs[scenario.j - 1]
    yz = Y.union(scenario.Z)
    lhs = oracle.evaluate(yz.with_pair(*pj), counter) - oracle.evaluate(yz, counter)
    rhs = oracle.evaluate(Y, counter) / 3.0
    return lhs <= rhs + EPS
