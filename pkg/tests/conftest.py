import pytest

from ksub.core import Instance
from ksub.oracles import CoverageOracle, TabularOracle


@pytest.fixture
def oracle_w():
    """Coverage oracle over 2 items, 2 dimensions, 3 unit-weight elements."""
    return CoverageOracle(
        2, 2,
        ["e1", "e2", "e3"], [1.0, 1.0, 1.0],
        {
            (1, 1): {"e1", "e2"},
            (1, 2): {"e1"},
            (2, 1): {"e2"},
            (2, 2): {"e2", "e3"},
        },
    )


@pytest.fixture
def inst_w():
    return Instance(2, 2, {1: 1, 2: 2}, 3)


@pytest.fixture
def supermodular_tabular():
    """n=2, k=1 counterexample: f(both) = 3 > 1 + 1, monotone but not
    submodular. Codes: 0 empty, 1 {(1,1)}, 2 {(2,1)}, 3 both."""
    return TabularOracle(2, 1, [0.0, 1.0, 1.0, 3.0])


@pytest.fixture
def zero_oracle():
    """f identically zero (coverage with an empty universe)."""
    return CoverageOracle(2, 2, [], [], {})
