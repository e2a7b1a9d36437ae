import pydot
import pytest

from gallai_lab.dot import to_dot
from gallai_lab.errors import InvalidPath
from gallai_lab.generators import path_graph, spider_graph
from gallai_lab.paths import enumerate_longest_paths


def parse(src):
    (graph,) = pydot.graph_from_dot_data(src)
    return graph


def nodes(graph):
    return [n for n in graph.get_nodes() if n.get_name() not in ("node", "edge", "graph")]


def test_plain_p3():
    g = parse(to_dot(path_graph(3)))
    assert len(nodes(g)) == 3
    assert len(g.get_edges()) == 2
    assert all(e.get("color") is None for e in g.get_edges())


def test_highlighted_p3():
    p3 = path_graph(3)
    (path,) = enumerate_longest_paths(p3).paths
    edges = parse(to_dot(p3, [path])).get_edges()
    assert len(edges) == 2 and all(e.get("color") for e in edges)


def test_distinct_colours_per_path():
    g = spider_graph(3, 2)
    paths = enumerate_longest_paths(g).paths
    edges = parse(to_dot(g, paths)).get_edges()
    colours = {e.get("label"): e.get("color") for e in edges if e.get("color")}
    assert len(set(colours.values())) == 3


def test_deterministic():
    g = spider_graph(4, 2)
    paths = enumerate_longest_paths(g).paths[:3]
    assert to_dot(g, paths) == to_dot(g, paths)


def test_invalid_highlight():
    with pytest.raises(InvalidPath):
        to_dot(path_graph(3), [(0, 2)])
