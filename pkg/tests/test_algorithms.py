import pytest

from ksub.algorithms import (
    COUNT_BOUND_CONSTANT,
    count_bound,
    density_completion,
    exact_bruteforce,
    knapsack_greedy,
    unconstrained_greedy,
)
from ksub.core import (
    Assignment,
    EvalCounter,
    Instance,
    MalformedInputError,
    SizeLimitError,
    cost,
)
from ksub.gen import generate_instance
from ksub.oracles import CoverageOracle


def A(*pairs):
    return Assignment(pairs)


class TestUnconstrainedGreedy:
    def test_oracle_w(self, oracle_w):
        c = EvalCounter()
        r = unconstrained_greedy(oracle_w, c)
        assert r.solution == A((1, 1), (2, 2))
        assert r.value == 3.0
        assert c.count == r.evaluations <= 2 * 2 * 2

    def test_empty_ground_set(self):
        o = CoverageOracle(0, 2, [], [], {})
        r = unconstrained_greedy(o)
        assert r.solution == A() and r.value == 0.0 and r.evaluations == 0

    def test_zero_oracle_tie_break(self, zero_oracle):
        r = unconstrained_greedy(zero_oracle)
        assert r.solution == A((1, 1), (2, 1))

    def test_eval_budget(self):
        for n, k in [(4, 2), (6, 3)]:
            _, oracle = generate_instance(7, n, k)
            assert unconstrained_greedy(oracle).evaluations <= 2 * n * k


class TestKnapsackGreedy:
    def test_oracle_w_b3(self, oracle_w, inst_w):
        r = knapsack_greedy(oracle_w, inst_w)
        assert r.solution == A((1, 1), (2, 2)) and r.value == 3.0

    def test_oracle_w_b1(self, oracle_w):
        inst = Instance(2, 2, {1: 1, 2: 2}, 1)
        r = knapsack_greedy(oracle_w, inst)
        assert r.solution == A((1, 1)) and r.value == 2.0

    def test_zero_oracle_tie_is_first_singleton(self, zero_oracle):
        inst = Instance(2, 2, {1: 1, 2: 2}, 3)
        r = knapsack_greedy(zero_oracle, inst)
        assert r.value == 0.0
        assert r.solution == A((1, 1))

    def test_nothing_feasible_returns_empty(self, oracle_w):
        inst = Instance(2, 2, {1: 5, 2: 7}, 2)
        r = knapsack_greedy(oracle_w, inst)
        assert r.solution == A() and r.value == 0.0

    def test_mismatched_instance_rejected(self, oracle_w):
        with pytest.raises(MalformedInputError):
            knapsack_greedy(oracle_w, Instance(3, 2, {1: 1, 2: 1, 3: 1}, 2))

    @pytest.mark.parametrize("seed", range(8))
    def test_feasible_and_bounded(self, seed):
        inst, oracle = generate_instance(seed, 7, 2, "coverage", 5, 0.4)
        c = EvalCounter()
        r = knapsack_greedy(oracle, inst, c)
        assert cost(r.solution, inst) <= inst.budget
        assert c.count == r.evaluations <= count_bound(inst.n, inst.k)

    def test_deterministic(self):
        inst, oracle = generate_instance(3, 6, 3, "separable_sum")
        r1 = knapsack_greedy(oracle, inst)
        r2 = knapsack_greedy(oracle, inst)
        assert (r1.solution, r1.value, r1.evaluations) == (r2.solution, r2.value, r2.evaluations)


class TestDensityCompletion:
    def test_monotone_improvement_and_trace(self):
        inst, oracle = generate_instance(11, 6, 2, "coverage", 4, 0.6)
        seed = A((1, 1), (2, 2), (3, 1))
        sol, value, trace = density_completion(oracle, seed, inst)
        assert {a for a, _ in seed} <= sol.support()
        assert cost(sol, inst) <= inst.budget
        assert len(trace) == inst.n - 3  # one step per remaining candidate
        for step in trace:
            assert step.gain >= -1e-9  # monotone oracle: gains nonnegative
            assert step.cumulative_cost <= inst.budget

    def test_rejected_item_not_retried(self):
        # item 3 has a huge cost; it must be skipped and never re-picked
        o = CoverageOracle(
            3, 1, ["x", "y"], [10.0, 1.0],
            {(1, 1): {"y"}, (2, 1): set(), (3, 1): {"x"}},
        )
        inst = Instance(3, 1, {1: 1, 2: 1, 3: 50}, 3)
        sol, value, trace = density_completion(oracle=o, seed=A(), inst=inst)
        assert 3 not in sol.support()
        rejected = [t for t in trace if not t.accepted]
        assert [t.item for t in rejected] == [3]


class TestExactBruteforce:
    def test_oracle_w(self, oracle_w, inst_w):
        c = EvalCounter()
        r = exact_bruteforce(oracle_w, inst_w, c)
        assert r.value == 3.0
        assert c.count == 9  # all 9 assignments of 2 items are feasible

    def test_budget_one(self, oracle_w):
        r = exact_bruteforce(oracle_w, Instance(2, 2, {1: 1, 2: 2}, 1))
        assert r.value == 2.0 and r.solution == A((1, 1))

    def test_empty_ground_set(self):
        o = CoverageOracle(0, 1, [], [], {})
        r = exact_bruteforce(o, Instance(0, 1, {}, 1))
        assert r.value == 0.0 and r.solution == A()

    def test_zero_oracle_prefers_empty(self, zero_oracle):
        r = exact_bruteforce(zero_oracle, Instance(2, 2, {1: 1, 2: 1}, 2))
        assert r.solution == A()

    def test_cap(self, monkeypatch, oracle_w, inst_w):
        monkeypatch.setenv("KSUB_EVAL_CAP", "8")
        with pytest.raises(SizeLimitError):
            exact_bruteforce(oracle_w, inst_w)


class TestCountBound:
    def test_n3_k1_single_seed(self):
        # phase1 = 3 + 3; exactly one size-3 seed costing per_seed = 2
        assert count_bound(3, 1) == 6 + 1 * 1 * 2

    def test_dominates_big_oh(self):
        for n in range(1, 40):
            for k in range(1, 12):
                assert count_bound(n, k) <= COUNT_BOUND_CONSTANT * n**5 * k**4

    def test_ceiling_on_observed_runs(self):
        for seed in range(5):
            inst, oracle = generate_instance(seed, 5, 2, "coverage")
            r = knapsack_greedy(oracle, inst)
            assert r.evaluations <= count_bound(5, 2)

    def test_invalid_args(self):
        with pytest.raises(MalformedInputError):
            count_bound(0, 1)


class TestOptimality:
    def test_small_support_recovery(self):
        # optimum supported on <= 2 items must be found exactly in phase 1
        hits = 0
        for seed in range(20):
            inst, oracle = generate_instance(seed, 5, 2, "coverage", 8, 0.3)
            opt = exact_bruteforce(oracle, inst)
            if len(opt.solution) <= 2:
                hits += 1
                assert knapsack_greedy(oracle, inst).value == opt.value
        assert hits > 0
