import networkx as nx
import pytest
from hypothesis import given

from gallai_lab.errors import Graph6Error, InvalidByte, MalformedHeader, OrderTooLarge, TruncatedBody
from gallai_lab.generators import GeneratorSpec, generate, path_graph
from gallai_lab.graph import Graph
from gallai_lab.graph6 import parse_graph6, to_graph6
from gallai_lab.rng import XorShift64Star

from .conftest import graphs


def reference_encode(g: Graph) -> str:
    """Written from the format description, string-of-bits style."""
    bits = "".join(
        "1" if g.has_edge(i, j) else "0" for j in range(1, g.order) for i in range(j)
    )
    bits += "0" * (-len(bits) % 6)
    body = "".join(chr(int(bits[k:k + 6], 2) + 63) for k in range(0, len(bits), 6))
    return chr(g.order + 63) + body


def test_empty_five_vertex_graph():
    g = parse_graph6("D??")
    assert g.order == 5 and g.size == 0
    assert reference_encode(g) == "D??"


def test_single_vertex():
    g = parse_graph6("@")
    assert g.order == 1 and g.size == 0
    assert to_graph6(Graph.from_edges(1, [])) == "@"


def test_path3():
    line = to_graph6(path_graph(3))
    assert line == reference_encode(path_graph(3)) == "Bg"
    # the "3-byte line" of the format includes its newline
    assert len((line + "\n").encode()) == 3
    assert parse_graph6(line).edges == ((0, 1), (1, 2))


def test_header_and_newline_accepted():
    assert parse_graph6(">>graph6<<Bg\n") == path_graph(3)


@pytest.mark.parametrize("text, error", [
    ("", MalformedHeader),
    ("~??", MalformedHeader),        # long form rejected
    (" ", MalformedHeader),
    ("D?", TruncatedBody),           # order 5 needs 2 body bytes
    ("D? ", InvalidByte),
    ("D???", Graph6Error),           # trailing byte
    ("BH", Graph6Error),             # nonzero padding bit
])
def test_malformed(text, error):
    with pytest.raises(error):
        parse_graph6(text)


def test_order_too_large():
    with pytest.raises(OrderTooLarge):
        to_graph6(Graph.from_edges(63, []))


@given(graphs(max_order=20))
def test_round_trip_and_reference(g):
    line = to_graph6(g)
    assert line == reference_encode(g)
    assert parse_graph6(line) == g


def test_matches_networkx_on_random_graphs():
    rng = XorShift64Star(11)
    for _ in range(200):
        n = 1 + rng.below(20)
        g = Graph.from_edges(n, [(i, j) for j in range(n) for i in range(j) if rng.chance(1, 3)])
        ours = to_graph6(g)
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(g.edges)
        theirs = nx.to_graph6_bytes(h, header=False).decode().strip()
        assert ours == theirs
        assert to_graph6(parse_graph6(theirs)) == theirs


def test_generator_outputs_round_trip():
    specs = [GeneratorSpec("path", {"order": n}) for n in range(1, 21)]
    specs += [GeneratorSpec("cycle", {"order": n}) for n in range(3, 21)]
    specs += [GeneratorSpec("complete", {"order": n}) for n in range(1, 21)]
    specs += [GeneratorSpec("random_tree", {"order": n}, seed=n) for n in range(1, 21)]
    specs += [GeneratorSpec("random_connected", {"order": n, "p_num": 1, "p_den": 3}, seed=n)
              for n in range(1, 21)]
    for spec in specs:
        g = generate(spec)
        assert parse_graph6(to_graph6(g)) == g
