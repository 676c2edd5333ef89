"""Compiled kernels; semantics mirror ksub._pykernels loop for loop.

Both backends perform the same IEEE double operations in the same order and
use the same tie-breaking, so results are bit-identical. Keep in sync with
the pure module when changing anything here.
"""

import numpy as np

from libc.stdint cimport int8_t, int64_t, uint64_t

cdef double NEG_INF = float("-inf")

NAME = "compiled"


cdef class Evaluator:
    cdef public int n, k

    cdef double value(self, int8_t[::1] vec):
        raise NotImplementedError

    def __call__(self, vec):
        cdef int8_t[::1] v = np.asarray(vec, dtype=np.int8)
        return self.value(v)


cdef class CoverageEval(Evaluator):
    cdef uint64_t[:, ::1] masks
    cdef double[::1] weights
    cdef uint64_t[::1] scratch
    cdef int chunks, m

    def __init__(self, int n, int k, masks_py, weights):
        cdef int idx, c
        self.n = n
        self.k = k
        self.m = len(weights)
        self.chunks = max(1, (self.m + 63) // 64)
        arr = np.zeros((max(1, n * k), self.chunks), dtype=np.uint64)
        for idx in range(n * k):
            mask = masks_py[idx]
            for c in range(self.chunks):
                arr[idx, c] = (mask >> (64 * c)) & 0xFFFFFFFFFFFFFFFF
        self.masks = arr
        self.weights = np.ascontiguousarray(weights, dtype=np.float64)
        self.scratch = np.zeros(self.chunks, dtype=np.uint64)

    cdef double value(self, int8_t[::1] vec):
        cdef int a, c, e, d, row
        cdef double total = 0.0
        for c in range(self.chunks):
            self.scratch[c] = 0
        for a in range(self.n):
            d = vec[a]
            if d:
                row = a * self.k + d - 1
                for c in range(self.chunks):
                    self.scratch[c] |= self.masks[row, c]
        for e in range(self.m):
            if (self.scratch[e >> 6] >> (e & 63)) & 1:
                total += self.weights[e]
        return total


cdef class SeparableEval(Evaluator):
    cdef double[:, ::1] masses
    cdef double[::1] caps
    cdef double[::1] sums

    def __init__(self, int n, int k, masses, caps):
        self.n = n
        self.k = k
        self.masses = np.ascontiguousarray(masses, dtype=np.float64).reshape(k, max(1, n))
        self.caps = np.ascontiguousarray(caps, dtype=np.float64)
        self.sums = np.zeros(k, dtype=np.float64)

    cdef double value(self, int8_t[::1] vec):
        cdef int a, i, d
        cdef double total = 0.0
        for i in range(self.k):
            self.sums[i] = 0.0
        for a in range(self.n):
            d = vec[a]
            if d:
                self.sums[d - 1] += self.masses[d - 1, a]
        for i in range(self.k):
            total += self.sums[i] if self.sums[i] < self.caps[i] else self.caps[i]
        return total


cdef class TabularEval(Evaluator):
    cdef double[::1] values
    cdef int64_t[::1] pw

    def __init__(self, int n, int k, values):
        self.n = n
        self.k = k
        self.values = np.ascontiguousarray(values, dtype=np.float64)
        self.pw = np.array([(k + 1) ** a for a in range(max(1, n))], dtype=np.int64)

    cdef double value(self, int8_t[::1] vec):
        cdef int a
        cdef int64_t code = 0
        for a in range(self.n):
            code += vec[a] * self.pw[a]
        return self.values[code]


def make_evaluator(payload):
    kind = payload[0]
    if kind == "coverage":
        return CoverageEval(payload[1], payload[2], payload[3], payload[4])
    if kind == "separable":
        masses = np.asarray(payload[3], dtype=np.float64)
        return SeparableEval(payload[1], payload[2], masses, payload[4])
    if kind == "tabular":
        return TabularEval(payload[1], payload[2], payload[3])
    raise ValueError(f"unknown payload kind {kind!r}")


cdef int cmp_vec(int8_t[::1] x, int8_t[::1] y, int n):
    cdef int ia = 0, ib = 0
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
    cdef Evaluator ev = make_evaluator(payload)
    cdef int n = ev.n, k = ev.k
    cdef int a, i, best_i
    cdef double base, v, best_v
    cdef long evals = 0
    if n == 0:
        return [], 0.0, 0
    vec_arr = np.zeros(n, dtype=np.int8)
    cdef int8_t[::1] vec = vec_arr
    base = ev.value(vec)
    evals += 1
    for a in range(n):
        best_i = 1
        best_v = NEG_INF
        for i in range(1, k + 1):
            vec[a] = <int8_t> i
            v = ev.value(vec)
            evals += 1
            vec[a] = 0
            if v > best_v:
                best_v = v
                best_i = i
        vec[a] = <int8_t> best_i
        base = best_v
    return [int(d) for d in vec_arr], base, evals


cdef double _complete(Evaluator ev, int8_t[::1] vec, int64_t[::1] costs,
                      int64_t budget, long* p_evals, list trace):
    cdef int n = ev.n, k = ev.k
    cdef int a, i, best_a, best_i, remaining = 0, step = 0
    cdef int64_t cum = 0
    cdef double base, v, gain, theta, best_theta, best_gain, best_v
    cdef bint accepted
    alive_arr = np.zeros(n, dtype=np.int8)
    cdef int8_t[::1] alive = alive_arr
    base = ev.value(vec)
    p_evals[0] += 1
    for a in range(n):
        if vec[a]:
            cum += costs[a]
        else:
            alive[a] = 1
            remaining += 1
    while remaining > 0:
        step += 1
        best_theta = NEG_INF
        best_a = -1
        best_i = 0
        best_gain = 0.0
        best_v = 0.0
        for a in range(n):
            if not alive[a]:
                continue
            for i in range(1, k + 1):
                vec[a] = <int8_t> i
                v = ev.value(vec)
                p_evals[0] += 1
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
            vec[best_a] = <int8_t> best_i
            base = best_v
            cum += costs[best_a]
        alive[best_a] = 0
        remaining -= 1
        if trace is not None:
            trace.append((step, best_a + 1, best_i, best_theta, best_gain,
                          bool(accepted), int(cum)))
    return base


def density_completion(payload, seed_vec, costs, budget):
    cdef Evaluator ev = make_evaluator(payload)
    cdef int64_t[::1] c = np.asarray(costs, dtype=np.int64)
    vec_arr = np.asarray(seed_vec, dtype=np.int8).copy()
    cdef int8_t[::1] vec = vec_arr
    cdef long evals = 0
    trace = []
    cdef double final = _complete(ev, vec, c, budget, &evals, trace)
    return [int(d) for d in vec_arr], final, evals, trace


def knapsack_greedy(payload, costs, budget):
    cdef Evaluator ev = make_evaluator(payload)
    cdef int n = ev.n, k = ev.k
    cdef int64_t[::1] c = np.asarray(costs, dtype=np.int64)
    cdef int64_t B = budget
    cdef long evals = 0
    cdef int a, b, cc, ia, ib, ic, i, j
    cdef double v, final, best_val = NEG_INF
    vec_arr = np.zeros(n, dtype=np.int8)
    cdef int8_t[::1] vec = vec_arr
    best_arr = None
    cdef int8_t[::1] best = vec_arr  # placeholder until best_arr is set

    for a in range(n):
        if c[a] > B:
            continue
        for i in range(1, k + 1):
            vec[a] = <int8_t> i
            v = ev.value(vec)
            evals += 1
            if best_arr is None or v > best_val or (v == best_val and cmp_vec(vec, best, n) < 0):
                best_arr = vec_arr.copy()
                best = best_arr
                best_val = v
            vec[a] = 0

    for a in range(n):
        for b in range(a + 1, n):
            if c[a] + c[b] > B:
                continue
            for i in range(1, k + 1):
                vec[a] = <int8_t> i
                for j in range(1, k + 1):
                    vec[b] = <int8_t> j
                    v = ev.value(vec)
                    evals += 1
                    if best_arr is None or v > best_val or (
                        v == best_val and cmp_vec(vec, best, n) < 0
                    ):
                        best_arr = vec_arr.copy()
                        best = best_arr
                        best_val = v
                    vec[b] = 0
                vec[a] = 0

    cdef int8_t[::1] svec
    if n >= 3:
        for a in range(n):
            for b in range(a + 1, n):
                for cc in range(b + 1, n):
                    if c[a] + c[b] + c[cc] > B:
                        continue
                    for ia in range(1, k + 1):
                        for ib in range(1, k + 1):
                            for ic in range(1, k + 1):
                                svec_arr = np.zeros(n, dtype=np.int8)
                                svec = svec_arr
                                svec[a] = <int8_t> ia
                                svec[b] = <int8_t> ib
                                svec[cc] = <int8_t> ic
                                final = _complete(ev, svec, c, B, &evals, None)
                                if best_arr is None or final > best_val:
                                    best_arr = svec_arr
                                    best = best_arr
                                    best_val = final

    if best_arr is None:
        return [0] * n, 0.0, evals
    return [int(d) for d in best_arr], best_val, evals


def bruteforce(payload, costs, budget):
    cdef Evaluator ev = make_evaluator(payload)
    cdef int n = ev.n, k = ev.k
    cdef int p = k + 1
    cdef int64_t[::1] c = np.asarray(costs, dtype=np.int64)
    cdef int64_t B = budget
    cdef long evals = 0
    cdef int64_t code, ccode, total_codes = 1
    cdef int64_t total
    cdef int a, d
    cdef double v, best_val = NEG_INF
    for a in range(n):
        total_codes *= p
    vec_arr = np.zeros(n, dtype=np.int8)
    cdef int8_t[::1] vec = vec_arr
    best_arr = None
    cdef int8_t[::1] best = vec_arr
    for code in range(total_codes):
        ccode = code
        total = 0
        for a in range(n):
            d = <int> (ccode % p)
            ccode //= p
            vec[a] = <int8_t> d
            if d:
                total += c[a]
        if total > B:
            continue
        v = ev.value(vec)
        evals += 1
        if best_arr is None or v > best_val or (v == best_val and cmp_vec(vec, best, n) < 0):
            best_arr = vec_arr.copy()
            best = best_arr
            best_val = v
    if best_arr is None:
        return [0] * n, 0.0, evals
    return [int(d) for d in best_arr], best_val, evals


def value_table(payload):
    cdef Evaluator ev = make_evaluator(payload)
    cdef int n = ev.n, k = ev.k
    cdef int p = k + 1
    cdef int64_t code, ccode, total_codes = 1
    cdef int a
    for a in range(n):
        total_codes *= p
    vec_arr = np.zeros(n, dtype=np.int8)
    cdef int8_t[::1] vec = vec_arr
    out_arr = np.empty(total_codes, dtype=np.float64)
    cdef double[::1] out = out_arr
    for code in range(total_codes):
        ccode = code
        for a in range(n):
            vec[a] = <int8_t> (ccode % p)
            ccode //= p
        out[code] = ev.value(vec)
    return out_arr, int(total_codes)


def monotone_violation(table, int n, int k, double eps):
    cdef double[::1] t = np.ascontiguousarray(table, dtype=np.float64)
    cdef int p = k + 1
    cdef int64_t[::1] pw = np.array([p ** a for a in range(max(1, n))], dtype=np.int64)
    cdef int64_t x, total = 1
    cdef int64_t ccode
    cdef int a, i, d
    cdef double fx, fy
    for a in range(n):
        total *= p
    for x in range(total):
        ccode = x
        fx = t[x]
        for a in range(n):
            d = <int> (ccode % p)
            ccode //= p
            if d:
                continue
            for i in range(1, k + 1):
                fy = t[x + i * pw[a]]
                if fy - fx < -eps:
                    return (int(x), a + 1, i, fy - fx)
    return None


def orthant_violation(table, int n, int k, double eps):
    cdef double[::1] t = np.ascontiguousarray(table, dtype=np.float64)
    cdef int p = k + 1
    cdef int64_t[::1] pw = np.array([p ** a for a in range(max(1, n))], dtype=np.int64)
    cdef int64_t x, y, total = 1
    cdef int64_t ccode
    cdef int a, b, i, idx, m, pos, nfree
    cdef double dxa, dya
    free_arr = np.zeros(max(1, n), dtype=np.int32)
    others_arr = np.zeros(max(1, n), dtype=np.int32)
    counters_arr = np.zeros(max(1, n), dtype=np.int32)
    cdef int[::1] free = free_arr
    cdef int[::1] others = others_arr
    cdef int[::1] counters = counters_arr
    for a in range(n):
        total *= p
    for x in range(total):
        ccode = x
        nfree = 0
        for a in range(n):
            if ccode % p == 0:
                free[nfree] = a
                nfree += 1
            ccode //= p
        for idx in range(nfree):
            a = free[idx]
            m = 0
            for b in range(nfree):
                if free[b] != a:
                    others[m] = free[b]
                    m += 1
            for i in range(1, k + 1):
                dxa = t[x + i * pw[a]] - t[x]
                for pos in range(m):
                    counters[pos] = 0
                y = x
                while True:
                    dya = t[y + i * pw[a]] - t[y]
                    if dxa < dya - eps:
                        return (int(x), int(y), a + 1, i, dxa, dya)
                    pos = 0
                    while pos < m:
                        if counters[pos] < k:
                            counters[pos] += 1
                            y += pw[others[pos]]
                            break
                        y -= k * pw[others[pos]]
                        counters[pos] = 0
                        pos += 1
                    if pos == m:
                        break
    return None


def lattice_violation(table, int n, int k, double eps):
    cdef double[::1] t = np.ascontiguousarray(table, dtype=np.float64)
    cdef int p = k + 1
    cdef int64_t[::1] pw = np.array([p ** a for a in range(max(1, n))], dtype=np.int64)
    cdef int64_t x, y, jcode, mcode, total = 1
    cdef int64_t ccode
    cdef int a, da, db
    cdef double lhs, rhs, fx
    for a in range(n):
        total *= p
    digits_arr = np.zeros((total, max(1, n)), dtype=np.int8)
    cdef int8_t[:, ::1] digits = digits_arr
    for x in range(total):
        ccode = x
        for a in range(n):
            digits[x, a] = <int8_t> (ccode % p)
            ccode //= p
    for x in range(total):
        fx = t[x]
        for y in range(total):
            jcode = 0
            mcode = 0
            for a in range(n):
                da = digits[x, a]
                db = digits[y, a]
                if da == db:
                    jcode += da * pw[a]
                    mcode += da * pw[a]
                elif da == 0:
                    jcode += db * pw[a]
                elif db == 0:
                    jcode += da * pw[a]
            lhs = fx + t[y]
            rhs = t[jcode] + t[mcode]
            if lhs < rhs - eps:
                return (int(x), int(y), int(jcode), int(mcode), lhs, rhs)
    return None
