"""Core domain types: assignments over k dimensions, instances with knapsack
data, the lattice operations, and evaluation-count accounting.

An assignment maps each chosen item to exactly one of k dimensions; it is
stored as a canonically ordered tuple of (item, dimension) pairs, so every
algorithm in this package is deterministic and serialized output is
reproducible byte-for-byte.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

DEFAULT_ENUM_CAP = 10**6

EPS = 1e-9


class KsubError(Exception):
    """Base class for package errors."""


class MalformedInputError(KsubError, ValueError):
    """Input violates a documented invariant (bad ids, costs, payloads...)."""


class PreconditionError(KsubError, ValueError):
    """An operation was called outside its stated precondition."""


class SizeLimitError(KsubError, RuntimeError):
    """Exhaustive enumeration would exceed the configured cap."""


class DegenerateInputError(KsubError, ValueError):
    """Numerically degenerate input (e.g. zero denominator)."""


def enumeration_cap() -> int:
    """Maximum (k+1)**n allowed for exhaustive enumeration.

    Overridable through the KSUB_EVAL_CAP environment variable (unsafe:
    runtime and memory grow linearly, pairwise checks quadratically).
    """
    raw = os.environ.get("KSUB_EVAL_CAP")
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise MalformedInputError(f"KSUB_EVAL_CAP is not an integer: {raw!r}") from exc
    if cap < 1:
        raise MalformedInputError("KSUB_EVAL_CAP must be >= 1")
    return cap


def check_enumeration_cap(n: int, k: int) -> int:
    """Return (k+1)**n or raise SizeLimitError if it exceeds the cap."""
    total = (k + 1) ** n
    cap = enumeration_cap()
    if total > cap:
        raise SizeLimitError(
            f"(k+1)^n = {total} exceeds the enumeration cap {cap} "
            f"(set KSUB_EVAL_CAP to override)"
        )
    return total


class Assignment:
    """An immutable set of (item, dimension) pairs with pairwise distinct items.

    Items and dimensions are 1-based integers. Pairs are kept sorted by
    (item, dimension), which is the canonical order used for iteration,
    serialization and lexicographic tie-breaking.
    """

    __slots__ = ("_pairs",)

    def __init__(self, pairs: Iterable[tuple[int, int]] = ()):
        pairs = tuple(sorted((int(a), int(i)) for a, i in pairs))
        seen = set()
        for a, i in pairs:
            if a < 1:
                raise MalformedInputError(f"item id must be >= 1, got {a}")
            if i < 1:
                raise MalformedInputError(f"dimension must be >= 1, got {i}")
            if a in seen:
                raise MalformedInputError(f"item {a} assigned more than once")
            seen.add(a)
        self._pairs = pairs

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return self._pairs

    def support(self) -> frozenset[int]:
        """U(S): the set of items included."""
        return frozenset(a for a, _ in self._pairs)

    def dimension_of(self, item: int) -> Optional[int]:
        for a, i in self._pairs:
            if a == item:
                return i
        return None

    def with_pair(self, item: int, dim: int) -> "Assignment":
        if any(a == item for a, _ in self._pairs):
            raise PreconditionError(f"item {item} already assigned")
        return Assignment(self._pairs + ((item, dim),))

    def union(self, other: "Assignment") -> "Assignment":
        """Disjoint union; raises if the two share an item."""
        return Assignment(self._pairs + other.pairs)

    def to_vector(self, n: int) -> list[int]:
        """Dense representation: vec[a-1] = dimension of item a, 0 if unassigned."""
        vec = [0] * n
        for a, i in self._pairs:
            if a > n:
                raise MalformedInputError(f"item {a} outside ground set of size {n}")
            vec[a - 1] = i
        return vec

    @classmethod
    def from_vector(cls, vec: Iterable[int]) -> "Assignment":
        return cls((a, int(d)) for a, d in enumerate(vec, start=1) if d)

    def __len__(self) -> int:
        return len(self._pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._pairs)

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return pair in self._pairs

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Assignment) and self._pairs == other._pairs

    def __hash__(self) -> int:
        return hash(self._pairs)

    def __lt__(self, other: "Assignment") -> bool:
        # Canonical lexicographic order on pair tuples; a prefix sorts first.
        return self._pairs < other.pairs

    def __repr__(self) -> str:
        inner = ", ".join(f"({a},{i})" for a, i in self._pairs)
        return f"Assignment({{{inner}}})"


EMPTY = Assignment()


def join(x: Assignment, y: Assignment, k: int) -> Assignment:
    """Coordinatewise lattice join.

    Item a lands in dimension i of the result iff a appears in dimension i
    in x or y and in no other dimension across both; items assigned to two
    different dimensions are dropped.
    """
    for s in (x, y):
        for a, i in s:
            if i > k:
                raise MalformedInputError(f"dimension {i} out of range [1,{k}]")
    dims: dict[int, set[int]] = {}
    for s in (x, y):
        for a, i in s:
            dims.setdefault(a, set()).add(i)
    return Assignment((a, ds.pop()) for a, ds in dims.items() if len(ds) == 1)


def meet(x: Assignment, y: Assignment) -> Assignment:
    """Coordinatewise lattice meet: pairs present in both x and y."""
    return Assignment(set(x.pairs) & set(y.pairs))


def precedes(x: Assignment, y: Assignment) -> bool:
    """Partial order: every pair of x is a pair of y."""
    return set(x.pairs) <= set(y.pairs)


@dataclass(frozen=True)
class Instance:
    """Ground set size, dimension count, positive integer item costs, budget."""

    n: int
    k: int
    costs: dict[int, int]
    budget: int

    def __post_init__(self):
        if self.n < 0:
            raise MalformedInputError(f"n must be >= 0, got {self.n}")
        if self.k < 1:
            raise MalformedInputError(f"k must be >= 1, got {self.k}")
        if set(self.costs) != set(range(1, self.n + 1)):
            raise MalformedInputError("costs must cover exactly items 1..n")
        for a, c in self.costs.items():
            if not isinstance(c, int) or isinstance(c, bool) or c < 1:
                raise MalformedInputError(
                    f"cost of item {a} must be a positive integer, got {c!r}"
                )
        if not isinstance(self.budget, int) or self.budget < 1:
            raise MalformedInputError(f"budget must be a positive integer, got {self.budget!r}")

    def cost_vector(self) -> list[int]:
        return [self.costs[a] for a in range(1, self.n + 1)]

    def total_cost(self) -> int:
        return sum(self.costs.values())


def cost(S: Assignment, inst: Instance) -> int:
    """Total cost of the items in S."""
    total = 0
    for a in S.support():
        try:
            total += inst.costs[a]
        except KeyError:
            raise MalformedInputError(f"unknown item id {a}") from None
    return total


class EvalCounter:
    """Counts oracle evaluations; per-task local with an associative merge."""

    __slots__ = ("count",)

    def __init__(self, count: int = 0):
        self.count = count

    def add(self, n: int = 1) -> None:
        if n < 0:
            raise ValueError("cannot decrease an evaluation count")
        self.count += n

    def merge(self, other: "EvalCounter") -> None:
        self.count += other.count

    def __repr__(self) -> str:
        return f"EvalCounter({self.count})"


@dataclass
class SolveReport:
    """Result of one algorithm run."""

    algorithm: str
    solution: Assignment
    value: float
    evaluations: int
    optimum: Optional[float] = None
    ratio: Optional[float] = None

    def with_optimum(self, optimum: float) -> "SolveReport":
        ratio = self.value / optimum if optimum > 0 else None
        return SolveReport(
            self.algorithm, self.solution, self.value, self.evaluations, optimum, ratio
        )

    def to_json_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "solution": [list(p) for p in self.solution.pairs],
            "value": self.value,
            "evaluations": self.evaluations,
            "optimum": self.optimum,
            "ratio": self.ratio,
        }
