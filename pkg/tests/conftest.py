import networkx as nx
import pytest

from zonotile.instances import complete_graph, cube, graphic, hexagon, octagon


def connected_graphs(max_vertices: int = 5):
    """Connected simple graphs on 2..max_vertices vertices, one per isomorphism class."""
    out = []
    for G in nx.graph_atlas_g():
        if 2 <= G.number_of_nodes() <= max_vertices and nx.is_connected(G):
            out.append(G)
    return out


GRAPHS = connected_graphs()


def graph_generators(G):
    return graphic(G.number_of_nodes(), G.edges())


@pytest.fixture
def hex_Z():
    return hexagon()


@pytest.fixture
def oct_Z():
    return octagon()


@pytest.fixture(params=[2, 3])
def cube_Z(request):
    return cube(request.param)


@pytest.fixture
def k4_Z():
    return complete_graph(4)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
