"""Maximization of monotone k-submodular functions under a knapsack
constraint: greedy algorithms, an exact solver, structural validators and
inequality checkers, all in the value-oracle model with evaluation counting.
"""

from ksub.core import (
    EPS,
    Assignment,
    DegenerateInputError,
    EvalCounter,
    Instance,
    KsubError,
    MalformedInputError,
    PreconditionError,
    SizeLimitError,
    SolveReport,
    cost,
    enumeration_cap,
    join,
    meet,
    precedes,
)
from ksub.oracles import (
    CoverageOracle,
    Oracle,
    SeparableSumOracle,
    TabularOracle,
    ValidationVerdict,
    Witness,
    oracle_from_json,
    validate_lattice_ksubmodular,
    validate_monotone,
    validate_orthant_submodular,
)
from ksub.algorithms import (
    GreedyTrace,
    TraceStep,
    count_bound,
    density_completion,
    exact_bruteforce,
    knapsack_greedy,
    unconstrained_greedy,
)
from ksub.properties import (
    Eq2Scenario,
    WolseyInput,
    build_eq2_scenario,
    check_eq2,
    check_lemma1,
    check_wolsey,
    greedy_reorder,
)
from ksub.gen import generate_instance, random_assignment, random_monotone_tabular
from ksub import backend

__version__ = "0.1.0"
