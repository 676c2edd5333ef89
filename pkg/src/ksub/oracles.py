"""Evaluatable monotone k-submodular function families and exhaustive
validators for monotonicity, orthant submodularity and the lattice
(join/meet) inequality.

Three concrete families are shipped:

  * coverage       - weighted set coverage; each (item, dimension) pair
                     covers a subset of a weighted element universe.
  * separable_sum  - per dimension, a capped sum of item masses
                     (budget-additive), summed over dimensions.
  * tabular        - an explicit value table over all (k+1)^n assignments;
                     normalized so the empty assignment maps to 0.

Coverage and separable_sum are monotone and orthant submodular by
construction. Tabular oracles can encode anything and are what the
validators and counterexample fixtures are for.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ksub import backend
from ksub.core import (
    EPS,
    Assignment,
    EvalCounter,
    MalformedInputError,
    PreconditionError,
    check_enumeration_cap,
)


class Oracle:
    """Base class: an evaluatable function f with f(empty) = 0."""

    family = "abstract"

    def __init__(self, n: int, k: int):
        if n < 0:
            raise MalformedInputError(f"n must be >= 0, got {n}")
        if k < 1:
            raise MalformedInputError(f"k must be >= 1, got {k}")
        self.n = n
        self.k = k
        self._evaluators: dict[str, object] = {}

    def payload(self) -> tuple:
        raise NotImplementedError

    def _evaluator(self):
        key = backend.name()
        ev = self._evaluators.get(key)
        if ev is None:
            ev = backend.active().make_evaluator(self.payload())
            self._evaluators[key] = ev
        return ev

    def _check(self, S: Assignment) -> None:
        for a, i in S:
            if a > self.n:
                raise MalformedInputError(f"item {a} outside ground set [1,{self.n}]")
            if i > self.k:
                raise MalformedInputError(f"dimension {i} outside [1,{self.k}]")

    def evaluate(self, S: Assignment, counter: Optional[EvalCounter] = None) -> float:
        """f(S); counts one evaluation."""
        self._check(S)
        if counter is not None:
            counter.add(1)
        return self._evaluator()(S.to_vector(self.n))

    def marginal_gain(
        self, S: Assignment, item: int, dim: int, counter: Optional[EvalCounter] = None
    ) -> float:
        """f(S + {(item, dim)}) - f(S); counts two evaluations."""
        if item in S.support():
            raise PreconditionError(f"item {item} already in the assignment")
        return self.evaluate(S.with_pair(item, dim), counter) - self.evaluate(S, counter)

    def to_json(self) -> dict:
        raise NotImplementedError


def _as_weight(w) -> float:
    # Weights may arrive as decimal strings in JSON fixtures.
    v = float(w)
    if v < 0:
        raise MalformedInputError(f"weight must be nonnegative, got {w!r}")
    return v


class CoverageOracle(Oracle):
    """f(S) = total weight of the elements covered by the pairs of S."""

    family = "coverage"

    def __init__(self, n, k, element_ids, weights, covers):
        """covers maps (item, dim) to an iterable of element ids; pairs
        without an entry cover nothing."""
        super().__init__(n, k)
        if len(element_ids) != len(set(element_ids)):
            raise MalformedInputError("duplicate element ids")
        if len(weights) != len(element_ids):
            raise MalformedInputError("weights and element ids differ in length")
        self.element_ids = list(element_ids)
        self.weights = [_as_weight(w) for w in weights]
        index = {e: idx for idx, e in enumerate(self.element_ids)}
        self.covers = {}
        masks = [0] * (n * k)
        for (a, i), elems in covers.items():
            if not (1 <= a <= n and 1 <= i <= k):
                raise MalformedInputError(f"covers key ({a},{i}) out of range")
            elems = list(elems)
            for e in elems:
                if e not in index:
                    raise MalformedInputError(f"covered element {e!r} not in universe")
            self.covers[(a, i)] = set(elems)
            m = 0
            for e in elems:
                m |= 1 << index[e]
            masks[(a - 1) * k + (i - 1)] = m
        self._masks = masks

    def total_weight(self) -> float:
        return sum(self.weights)

    def payload(self) -> tuple:
        return ("coverage", self.n, self.k, self._masks, self.weights)

    def to_json(self) -> dict:
        return {
            "type": "coverage",
            "elements": [
                {"id": e, "weight": w} for e, w in zip(self.element_ids, self.weights)
            ],
            "covers": {
                f"{a},{i}": sorted(self.covers[(a, i)])
                for (a, i) in sorted(self.covers)
            },
        }

    @classmethod
    def from_json(cls, n, k, obj) -> "CoverageOracle":
        elements = obj.get("elements", [])
        ids = [e["id"] for e in elements]
        weights = [e.get("weight", 1.0) for e in elements]
        covers = {}
        for key, elems in obj.get("covers", {}).items():
            try:
                a_s, i_s = key.split(",")
                pair = (int(a_s), int(i_s))
            except ValueError as exc:
                raise MalformedInputError(f"bad covers key {key!r}, want 'item,dim'") from exc
            covers[pair] = elems
        return cls(n, k, ids, weights, covers)


class SeparableSumOracle(Oracle):
    """f(S) = sum over dimensions of min(cap_i, sum of masses in X_i)."""

    family = "separable_sum"

    def __init__(self, n, k, masses, caps):
        """masses[i-1][a-1] is the mass of item a in dimension i."""
        super().__init__(n, k)
        if len(masses) != k or any(len(row) != n for row in masses):
            raise MalformedInputError("masses must be k rows of n values")
        if len(caps) != k:
            raise MalformedInputError("caps must have k values")
        self.masses = [[_as_weight(m) for m in row] for row in masses]
        self.caps = [_as_weight(c) for c in caps]

    def payload(self) -> tuple:
        return ("separable", self.n, self.k, self.masses, self.caps)

    def to_json(self) -> dict:
        return {"type": "separable_sum", "masses": self.masses, "caps": self.caps}

    @classmethod
    def from_json(cls, n, k, obj) -> "SeparableSumOracle":
        return cls(n, k, obj.get("masses", []), obj.get("caps", []))


class TabularOracle(Oracle):
    """An explicit value table over every assignment.

    Codes are base-(k+1) numbers where item a contributes digit
    vec[a] * (k+1)**(a-1); digit 0 means unassigned. The table is normalized
    at load by subtracting the empty assignment's value; the original offset
    is kept in .offset.
    """

    family = "tabular"

    def __init__(self, n, k, values):
        """values: sequence of (k+1)**n reals indexed by code."""
        super().__init__(n, k)
        total = (k + 1) ** n
        values = [float(v) for v in values]
        if len(values) != total:
            raise MalformedInputError(
                f"tabular oracle needs {total} values, got {len(values)}"
            )
        self.offset = values[0]
        self.values = [v - self.offset for v in values]

    def payload(self) -> tuple:
        return ("tabular", self.n, self.k, self.values)

    def value_of_code(self, code: int) -> float:
        return self.values[code]

    def code_of(self, S: Assignment) -> int:
        vec = S.to_vector(self.n)
        code = 0
        for a in range(self.n - 1, -1, -1):
            code = code * (self.k + 1) + vec[a]
        return code

    def _key(self, code: int) -> str:
        # Digit string with item 1 leftmost.
        p = self.k + 1
        out = []
        for _ in range(self.n):
            out.append(str(code % p))
            code //= p
        return "".join(out)

    def to_json(self) -> dict:
        return {
            "type": "tabular",
            "values": {self._key(c): v for c, v in enumerate(self.values)},
        }

    @classmethod
    def from_json(cls, n, k, obj) -> "TabularOracle":
        table = obj.get("values", {})
        total = (k + 1) ** n
        values = [None] * total
        for key, v in table.items():
            if len(key) != n or any(ch not in "0123456789" for ch in key):
                raise MalformedInputError(f"bad tabular key {key!r}")
            digits = [int(ch) for ch in key]
            if any(d > k for d in digits):
                raise MalformedInputError(f"tabular key {key!r} has digit > k")
            code = 0
            for d in reversed(digits):
                code = code * (k + 1) + d
            values[code] = float(v)
        if any(v is None for v in values):
            raise MalformedInputError("tabular value table is incomplete")
        return cls(n, k, values)


ORACLE_TYPES = {
    "coverage": CoverageOracle,
    "separable_sum": SeparableSumOracle,
    "tabular": TabularOracle,
}


def oracle_from_json(n: int, k: int, obj: dict) -> Oracle:
    kind = obj.get("type")
    cls = ORACLE_TYPES.get(kind)
    if cls is None:
        raise MalformedInputError(f"unknown oracle type {kind!r}")
    return cls.from_json(n, k, obj)


# --------------------------------------------------------------------------
# Validators


@dataclass
class Witness:
    """A minimal counterexample: the assignments and both inequality sides."""

    inequality: str
    x: Assignment
    y: Assignment
    lhs: float
    rhs: float
    item: Optional[int] = None
    dim: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "inequality": self.inequality,
            "x": [list(p) for p in self.x.pairs],
            "y": [list(p) for p in self.y.pairs],
            "lhs": self.lhs,
            "rhs": self.rhs,
            "item": self.item,
            "dim": self.dim,
        }


@dataclass
class ValidationVerdict:
    passed: bool
    witness: Optional[Witness] = None

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "witness": self.witness.to_json() if self.witness else None,
        }


def assignment_from_code(code: int, n: int, k: int) -> Assignment:
    p = k + 1
    pairs = []
    for a in range(1, n + 1):
        d = code % p
        code //= p
        if d:
            pairs.append((a, d))
    return Assignment(pairs)


def _table(oracle: Oracle, counter: Optional[EvalCounter]):
    check_enumeration_cap(oracle.n, oracle.k)
    table, evals = backend.active().value_table(oracle.payload())
    if counter is not None:
        counter.add(evals)
    return table


def validate_monotone(oracle: Oracle, counter: Optional[EvalCounter] = None) -> ValidationVerdict:
    """Exhaustively check that every marginal gain is >= -EPS."""
    table = _table(oracle, counter)
    hit = backend.active().monotone_violation(table, oracle.n, oracle.k, EPS)
    if hit is None:
        return ValidationVerdict(True)
    x, item, dim, gain = hit
    xa = assignment_from_code(x, oracle.n, oracle.k)
    return ValidationVerdict(
        False,
        Witness("monotone: marginal gain >= 0", xa, xa.with_pair(item, dim), gain, 0.0, item, dim),
    )


def validate_orthant_submodular(
    oracle: Oracle, counter: Optional[EvalCounter] = None
) -> ValidationVerdict:
    """Exhaustively check nonincreasing marginal gains along the partial order."""
    table = _table(oracle, counter)
    hit = backend.active().orthant_violation(table, oracle.n, oracle.k, EPS)
    if hit is None:
        return ValidationVerdict(True)
    x, y, item, dim, gain_x, gain_y = hit
    return ValidationVerdict(
        False,
        Witness(
            "orthant submodular: gain(x,a,i) >= gain(y,a,i) for x preceding y",
            assignment_from_code(x, oracle.n, oracle.k),
            assignment_from_code(y, oracle.n, oracle.k),
            gain_x,
            gain_y,
            item,
            dim,
        ),
    )


def validate_lattice_ksubmodular(
    oracle: Oracle, counter: Optional[EvalCounter] = None
) -> ValidationVerdict:
    """Exhaustively check f(x)+f(y) >= f(join)+f(meet) over all pairs."""
    table = _table(oracle, counter)
    hit = backend.active().lattice_violation(table, oracle.n, oracle.k, EPS)
    if hit is None:
        return ValidationVerdict(True)
    x, y, _, _, lhs, rhs = hit
    return ValidationVerdict(
        False,
        Witness(
            "k-submodular: f(x)+f(y) >= f(join)+f(meet)",
            assignment_from_code(x, oracle.n, oracle.k),
            assignment_from_code(y, oracle.n, oracle.k),
            lhs,
            rhs,
        ),
    )


VALIDATORS = {
    "monotone": validate_monotone,
    "orthant": validate_orthant_submodular,
    "lattice": validate_lattice_ksubmodular,
}
