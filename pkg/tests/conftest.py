import pytest
import numpy as np

from walkstream.core.generators import generate_graph
from walkstream.core.graph import Graph


@pytest.fixture
def single_edge():
    return Graph.from_edges(2, [(0, 1)])


@pytest.fixture
def path3():
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def triangle():
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def star5():
    # center 0, leaves 1..4
    return generate_graph('star', 5)


@pytest.fixture
def two_triangles():
    return generate_graph('disjoint-union', 3, components=2, base='complete')


@pytest.fixture
def cycle6():
    return generate_graph('cycle', 6)


@pytest.fixture
def chorded_square():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])


@pytest.fixture
def cubic8():
    return generate_graph('random-regular', 8, d=3, seed=42)


@pytest.fixture
def small_graphs(single_edge, path3, triangle, star5, two_triangles, cycle6, chorded_square, cubic8):
    return {
        'single_edge': single_edge,
        'path3': path3,
        'triangle': triangle,
        'star5': star5,
        'two_triangles': two_triangles,
        'cycle6': cycle6,
        'chorded_square': chorded_square,
        'cubic8': cubic8,
    }


@pytest.fixture
def rng():
    return np.random.default_rng(42)
