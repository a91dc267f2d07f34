import pytest

from gbskit.graph import GbsGraph, bs_graph
from gbskit.words import parse_path_word


def theta(first=(2, 3), second=(5, 7)):
    return GbsGraph.build(["u", "v"], [("e1", "u", "v", *first), ("e2", "u", "v", *second)])


GRAPHS = {
    "bs23": bs_graph(2, 3),
    "bs12": bs_graph(1, 2),
    "f2xz": GbsGraph.build(["a"], [("t1", "a", "a", 1, 1), ("t2", "a", "a", 1, 1)]),
    "theta": theta(),
    "theta12": theta((1, 2), (5, 7)),
    "klein": bs_graph(1, -1),
    "z": GbsGraph(("a",)),
    # three vertices, a loop off the base, and a non-tree edge between leaves
    "path3": GbsGraph.build(
        ["u", "v", "w"],
        [("e", "u", "v", 2, 3), ("f", "v", "w", -2, 5),
         ("s", "w", "w", 4, 6), ("x", "u", "w", 3, 2)]),
}

# the four graphs named in the acceptance criteria
CORE = ["bs23", "bs12", "f2xz", "theta"]


@pytest.fixture(params=sorted(GRAPHS))
def any_graph(request):
    return GRAPHS[request.param]


@pytest.fixture
def bs23():
    return GRAPHS["bs23"]


@pytest.fixture
def bs12():
    return GRAPHS["bs12"]


@pytest.fixture
def f2xz():
    return GRAPHS["f2xz"]


@pytest.fixture
def zgraph():
    return GRAPHS["z"]


def P(text, g):
    return parse_path_word(text, g)
