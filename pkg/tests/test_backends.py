"""Parity between the compiled and pure-Python kernel backends.

Both must produce bit-identical values, identical solutions, identical
evaluation counts and identical violation witnesses."""

import itertools

import pytest

from ksub import backend
from ksub.gen import generate_instance, random_monotone_tabular

pytestmark = pytest.mark.skipif(
    "compiled" not in backend.available(), reason="compiled backend not built"
)


@pytest.fixture(autouse=True)
def restore_backend():
    yield
    backend.set_backend("compiled" if "compiled" in backend.available() else "pure")


def both(fn):
    out = []
    for name in ("pure", "compiled"):
        mod = backend.get(name)
        out.append(fn(mod))
    assert out[0] == out[1]
    return out[0]


@pytest.mark.parametrize("family", ["coverage", "separable_sum"])
@pytest.mark.parametrize("seed", range(4))
def test_algorithms_agree(family, seed):
    inst, oracle = generate_instance(seed, 6, 3, family, 5, 0.5)
    payload = oracle.payload()
    costs = inst.cost_vector()
    both(lambda m: m.unconstrained_greedy(payload))
    both(lambda m: m.knapsack_greedy(payload, costs, inst.budget))
    both(lambda m: m.bruteforce(payload, costs, inst.budget))
    both(lambda m: m.density_completion(payload, [1, 2, 0, 0, 3, 0], costs, inst.budget))


def test_value_table_agrees():
    _, oracle = generate_instance(9, 5, 2, "coverage")
    payload = oracle.payload()
    t_pure, e_pure = backend.get("pure").value_table(payload)
    t_comp, e_comp = backend.get("compiled").value_table(payload)
    assert e_pure == e_comp
    assert list(t_pure) == list(t_comp)


@pytest.mark.parametrize("seed", range(6))
def test_violation_finders_agree(seed):
    oracle = random_monotone_tabular(seed, 3, 2)
    table = oracle.values
    n, k = 3, 2
    for fn in ("monotone_violation", "orthant_violation", "lattice_violation"):
        both(lambda m, fn=fn: getattr(m, fn)(table, n, k, 1e-9))


def test_evaluator_values_agree():
    _, oracle = generate_instance(2, 4, 3, "separable_sum")
    payload = oracle.payload()
    ev_p = backend.get("pure").make_evaluator(payload)
    ev_c = backend.get("compiled").make_evaluator(payload)
    for vec in itertools.product(range(4), repeat=4):
        assert ev_p(list(vec)) == ev_c(list(vec))


def test_full_reports_match_through_api():
    from ksub.algorithms import exact_bruteforce, knapsack_greedy

    inst, oracle = generate_instance(21, 6, 2, "coverage")
    results = {}
    for name in ("pure", "compiled"):
        backend.set_backend(name)
        oracle._evaluators.clear()
        g = knapsack_greedy(oracle, inst)
        e = exact_bruteforce(oracle, inst)
        results[name] = (g.solution, g.value, g.evaluations, e.solution, e.value)
    assert results["pure"] == results["compiled"]
