import pytest

from dtn_graph.families import hub_fan_problem, path_problem, random_problem, star_problem
from dtn_graph.graph import WeightedGraph, build_boundary_problem

RANDOM_SEEDS = list(range(50))


def random_small(seed):
    """Random problem with at most 14 closure vertices."""
    n_int = 3 + seed % 5
    n_bd = 2 + (seed * 7) % 6
    p = 0.35 + 0.1 * (seed % 4)
    return random_problem(n_int, n_bd, edge_prob=p, weight_range=(0.5, 2.0), seed=seed)


def two_paths():
    """Disjoint union of two P6 problems: the tilde graph has two components."""
    edges = []
    interior = []
    for tag in "ab":
        vs = [f"{tag}{i}" for i in range(1, 7)]
        edges += [(x, y, 1.0) for x, y in zip(vs, vs[1:])]
        interior += vs[1:-1]
    return build_boundary_problem(WeightedGraph(edges=edges), interior)


@pytest.fixture
def p6():
    return path_problem(6)


@pytest.fixture
def star5():
    return star_problem(5)


@pytest.fixture
def g3():
    return hub_fan_problem(3)


def fixture_problems():
    """Named deterministic fixtures shared by several test modules."""
    out = {
        "P6": path_problem(6),
        "P10": path_problem(10),
        "star3": star_problem(3),
        "star5": star_problem(5),
        "G1": hub_fan_problem(1),
        "G2": hub_fan_problem(2),
    }
    for s in (1, 2, 3):
        out[f"rand{s}"] = random_small(s)
    return out
