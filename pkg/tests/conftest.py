import math

import pytest

from spectral_operad.dsl import parse_tree
from spectral_operad.graphs import SimpleGraph

WORKED = "((a,b,c;K),(d,e;K),((f,g;K),(h,i;K);K);1-2,2-3)"
K4_BINARY = "((a,b;K),(c,d;K);K)"

# the five-vertex example graph and its spectra
SMALL_EDGES = [(0, 2), (0, 3), (1, 2), (1, 4), (2, 3), (2, 4)]
SMALL_ADJ = sorted([(1 + math.sqrt(17)) / 2, (1 - math.sqrt(17)) / 2, -1.0, -1.0, 1.0])
SMALL_LAP = [0.0, 1.0, 3.0, 3.0, 5.0]


@pytest.fixture
def worked():
    return parse_tree(WORKED)


@pytest.fixture
def k4_tree():
    return parse_tree(K4_BINARY)


@pytest.fixture
def small_graph():
    return SimpleGraph(5, SMALL_EDGES)
