import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

from influcast import WeightedGraph

# the worked five-node example: a leaf hanging off a hub above a 4-cycle
F_EDGES = [
    (0, 1, Fraction(1, 2)),
    (1, 3, Fraction(1, 3)),
    (1, 4, Fraction(1, 2)),
    (2, 3, Fraction(1, 3)),
    (2, 4, Fraction(1, 3)),
]


@pytest.fixture
def graph_f():
    """Exact-arithmetic version; rationals survive every pure-Python path."""
    return WeightedGraph(5, F_EDGES)


@pytest.fixture
def graph_f_float():
    return WeightedGraph(5, [(u, v, float(w)) for u, v, w in F_EDGES])
