"""Pure-Python kernels: oracle evaluation, greedy loops, exhaustive search
and exhaustive property checks.

This module is the reference implementation of the kernel contract; the
compiled module ksub._speedups mirrors it loop for loop so that both
backends produce bit-identical results (same IEEE operations in the same
order, same tie-breaking). Keep the two in sync.

Kernel payloads are plain tuples produced by the oracle classes:

    ("coverage", n, k, masks, weights)    masks[(a-1)*k + (i-1)] is an int
                                          bitmask over the element universe
    ("separable", n, k, masses, caps)     masses[i-1][a-1], caps[i-1]
    ("tabular", n, k, values)             values[code], item 1 is the least
                                          significant base-(k+1) digit

Assignment vectors are lists vec[a-1] = dimension of item a (0 = unassigned).
"""

from __future__ import annotations

import itertools
from math import inf

NAME = "pure"


def make_evaluator(payload):
    """Return a callable vec -> f(vec) for the given payload."""
    kind = payload[0]
    if kind == "coverage":
        _, n, k, masks, weights = payload

        def value(vec):
            m = 0
            for a in range(n):
                d = vec[a]
                if d:
                    m |= masks[a * k + d - 1]
            total = 0.0
            while m:
                lsb = m & -m
                total += weights[lsb.bit_length() - 1]
                m ^= lsb
            return total

        return value
    if kind == "separable":
        _, n, k, masses, caps = payload

        def value(vec):
            sums = [0.0] * k
            for a in range(n):
                d = vec[a]
                if d:
                    sums[d - 1] += masses[d - 1][a]
            total = 0.0
            for i in range(k):
                total += sums[i] if sums[i] < caps[i] else caps[i]
            return total

        return value
    if kind == "tabular":
        _, n, k, values = payload
        p = k + 1

        def value(vec):
            code = 0
            for a in range(n - 1, -1, -1):
                code = code * p + vec[a]
            return values[code]

        return value
    raise ValueError(f"unknown payload kind {kind!r}")


def _cmp_vec(x, y, n):
    """Lexicographic comparison of the canonical pair lists of two vectors.

    A proper prefix sorts before its extensions; otherwise the first
    differing (item, dimension) pair decides.
    """
    ia = 0
    ib = 0
    while True:
        while ia < n and x[ia] == 0:
            ia += 1
        while ib < n and y[ib] == 0:
            ib += 1
        if ia == n and ib == n:
            return 0
        if ia == n:
            return -1
        if ib == n:
            return 1
        if ia != ib:
            return -1 if ia < ib else 1
        if x[ia] != y[ia]:
            return -1 if x[ia] < y[ia] else 1
        ia += 1
        ib += 1


def unconstrained_greedy(payload):
    """Process items in id order, give each the best dimension (ties: lowest).

    Returns (vec, value, evals); evals = 1 + n*k.
    """
    n, k = payload[1], payload[2]
    if n == 0:
        return [], 0.0, 0
    value = make_evaluator(payload)
    vec = [0] * n
    evals = 0
    base = value(vec)
    evals += 1
    for a in range(n):
        best_i = 1
        best_v = -inf
        for i in range(1, k + 1):
            vec[a] = i
            v = value(vec)
            evals += 1
            vec[a] = 0
            if v > best_v:
                best_v = v
                best_i = i
        vec[a] = best_i
        base = best_v
    return vec, base, evals


def _complete(value, vec, n, k, costs, budget, trace):
    """Density completion from the partial assignment in vec (in place).

    Each step picks the remaining item/dimension pair of maximum marginal
    gain per unit cost (ties: lowest item, then lowest dimension), adds it
    iff it fits the budget, and removes the item from the candidate set
    either way. Returns (final value, evals used).
    """
    evals = 0
    base = value(vec)
    evals += 1
    cum = 0
    alive = [False] * n
    remaining = 0
    for a in range(n):
        if vec[a]:
            cum += costs[a]
        else:
            alive[a] = True
            remaining += 1
    step = 0
    while remaining > 0:
        step += 1
        best_theta = -inf
        best_a = -1
        best_i = 0
        best_gain = 0.0
        best_v = 0.0
        for a in range(n):
            if not alive[a]:
                continue
            for i in range(1, k + 1):
                vec[a] = i
                v = value(vec)
                evals += 1
                vec[a] = 0
                gain = v - base
                theta = gain / costs[a]
                if theta > best_theta:
                    best_theta = theta
                    best_a = a
                    best_i = i
                    best_gain = gain
                    best_v = v
        accepted = cum + costs[best_a] <= budget
        if accepted:
            vec[best_a] = best_i
            base = best_v
            cum += costs[best_a]
        alive[best_a] = False
        remaining -= 1
        if trace is not None:
            trace.append((step, best_a + 1, best_i, best_theta, best_gain, accepted, cum))
    return base, evals


def density_completion(payload, seed_vec, costs, budget):
    """Run one density completion; returns (vec, value, evals, trace rows)."""
    n, k = payload[1], payload[2]
    value = make_evaluator(payload)
    vec = list(seed_vec)
    trace = []
    final, evals = _complete(value, vec, n, k, costs, budget, trace)
    return vec, final, evals, trace


def knapsack_greedy(payload, costs, budget):
    """Size-1/2 enumeration plus density completion from every size-3 seed.

    Phase 1 takes the best feasible assignment of size 1 or 2 (value ties:
    lexicographically smallest canonical form). Phase 2 completes every
    feasible size-3 seed greedily by density and keeps a completion only if
    it is strictly better. Returns (vec, value, evals).
    """
    n, k = payload[1], payload[2]
    value = make_evaluator(payload)
    evals = 0
    best = None
    best_val = -inf
    vec = [0] * n

    for a in range(n):
        if costs[a] > budget:
            continue
        for i in range(1, k + 1):
            vec[a] = i
            v = value(vec)
            evals += 1
            if best is None or v > best_val or (v == best_val and _cmp_vec(vec, best, n) < 0):
                best = list(vec)
                best_val = v
            vec[a] = 0

    for a in range(n):
        for b in range(a + 1, n):
            if costs[a] + costs[b] > budget:
                continue
            for i in range(1, k + 1):
                vec[a] = i
                for j in range(1, k + 1):
                    vec[b] = j
                    v = value(vec)
                    evals += 1
                    if best is None or v > best_val or (
                        v == best_val and _cmp_vec(vec, best, n) < 0
                    ):
                        best = list(vec)
                        best_val = v
                    vec[b] = 0
                vec[a] = 0

    if n >= 3:
        for a, b, c in itertools.combinations(range(n), 3):
            if costs[a] + costs[b] + costs[c] > budget:
                continue
            for ia in range(1, k + 1):
                for ib in range(1, k + 1):
                    for ic in range(1, k + 1):
                        svec = [0] * n
                        svec[a] = ia
                        svec[b] = ib
                        svec[c] = ic
                        final, ev = _complete(value, svec, n, k, costs, budget, None)
                        evals += ev
                        if best is None or final > best_val:
                            best = svec
                            best_val = final

    if best is None:
        return [0] * n, 0.0, evals
    return best, best_val, evals


def bruteforce(payload, costs, budget):
    """Evaluate every feasible assignment; return the maximum.

    Value ties go to the lexicographically smallest canonical form. evals
    equals the number of feasible assignments (the empty one included).
    """
    n, k = payload[1], payload[2]
    p = k + 1
    value = make_evaluator(payload)
    vec = [0] * n
    best = None
    best_val = -inf
    evals = 0
    for code in range(p**n):
        cc = code
        total = 0
        for a in range(n):
            d = cc % p
            cc //= p
            vec[a] = d
            if d:
                total += costs[a]
        if total > budget:
            continue
        v = value(vec)
        evals += 1
        if best is None or v > best_val or (v == best_val and _cmp_vec(vec, best, n) < 0):
            best = list(vec)
            best_val = v
    if best is None:
        return [0] * n, 0.0, evals
    return best, best_val, evals


def value_table(payload):
    """f over all (k+1)**n assignments, indexed by base-(k+1) code."""
    n, k = payload[1], payload[2]
    p = k + 1
    value = make_evaluator(payload)
    vec = [0] * n
    out = []
    for code in range(p**n):
        cc = code
        for a in range(n):
            vec[a] = cc % p
            cc //= p
        out.append(value(vec))
    return out, p**n


def _powers(n, k):
    p = k + 1
    return [p**a for a in range(n)]


def monotone_violation(table, n, k, eps):
    """First (x, item, dim) with a marginal below -eps, or None.

    Enumeration order: x ascending by code, then item, then dimension.
    """
    p = k + 1
    pw = _powers(n, k)
    for x in range(p**n):
        cc = x
        fx = table[x]
        for a in range(n):
            d = cc % p
            cc //= p
            if d:
                continue
            for i in range(1, k + 1):
                fy = table[x + i * pw[a]]
                if fy - fx < -eps:
                    return (x, a + 1, i, fy - fx)
    return None


def _supersets(x, free_items, pw, k):
    """Yield codes y >= x obtained by assigning any digits to the free items.

    Mixed-radix counting with the smallest item as the fastest digit, so
    codes come out in ascending order. Includes y = x itself.
    """
    m = len(free_items)
    counters = [0] * m
    y = x
    while True:
        yield y
        pos = 0
        while pos < m:
            if counters[pos] < k:
                counters[pos] += 1
                y += pw[free_items[pos]]
                break
            y -= k * pw[free_items[pos]]
            counters[pos] = 0
            pos += 1
        if pos == m:
            return


def orthant_violation(table, n, k, eps):
    """First violation of nonincreasing marginals along the partial order.

    Checks gain(x, a, i) >= gain(y, a, i) - eps for every x preceding y with
    item a unassigned in y. Enumeration order: x ascending, then item, then
    dimension, then y ascending. Returns (x, y, item, dim, gain_x, gain_y)
    or None.
    """
    p = k + 1
    pw = _powers(n, k)
    for x in range(p**n):
        cc = x
        free = []
        for a in range(n):
            if cc % p == 0:
                free.append(a)
            cc //= p
        for a in free:
            others = [b for b in free if b != a]
            for i in range(1, k + 1):
                dxa = table[x + i * pw[a]] - table[x]
                for y in _supersets(x, others, pw, k):
                    dya = table[y + i * pw[a]] - table[y]
                    if dxa < dya - eps:
                        return (x, y, a + 1, i, dxa, dya)
    return None


def lattice_violation(table, n, k, eps):
    """First pair violating f(x)+f(y) >= f(join)+f(meet) - eps, or None.

    Enumeration order: x ascending, then y ascending. Returns
    (x, y, join, meet, lhs, rhs).
    """
    p = k + 1
    pw = _powers(n, k)
    total = p**n
    digits = [[0] * n for _ in range(total)]
    for code in range(total):
        cc = code
        row = digits[code]
        for a in range(n):
            row[a] = cc % p
            cc //= p
    for x in range(total):
        fx = table[x]
        dx = digits[x]
        for y in range(total):
            dy = digits[y]
            jcode = 0
            mcode = 0
            for a in range(n):
                da = dx[a]
                db = dy[a]
                if da == db:
                    jcode += da * pw[a]
                    mcode += da * pw[a]
                elif da == 0:
                    jcode += db * pw[a]
                elif db == 0:
                    jcode += da * pw[a]
            lhs = fx + table[y]
            rhs = table[jcode] + table[mcode]
            if lhs < rhs - eps:
                return (x, y, jcode, mcode, lhs, rhs)
    return None
