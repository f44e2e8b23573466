import math

import networkx as nx
import pytest
from hypothesis import given, settings

from eigenind.graphcore import (Graph, GeneratorError, GraphFormatError, analyze_structure, encode_graph6,
                                format_edge_list, generate_named, odd_girth, parse_edge_list, parse_graph6,
                                parse_named, read_graph, two_coloring)

from conftest import small_graphs, to_nx


def test_parse_k5():
    g = parse_graph6("D~{")
    assert g.n == 5 and g.m == 10
    assert g == generate_named("complete", [5])


def test_parse_k2():
    g = parse_graph6("A_")
    assert g.n == 2 and g.edges() == [(0, 1)]


def test_encode_small():
    assert encode_graph6(generate_named("complete", [2])) == "A_"
    assert encode_graph6(Graph.from_edges(1, [])) == "@"


def test_petersen_roundtrip():
    g = generate_named("petersen")
    code = encode_graph6(g)
    # header byte + ceil(45 / 6) data bytes
    assert len(code) == 1 + math.ceil(45 / 6) == 9
    h = parse_graph6(code)
    assert h == g
    assert h.n == 10 and h.m == 15
    assert all(h.degree(v) == 3 for v in range(10))


def test_graph6_matches_networkx():
    # networkx writes the same standard layout
    g = generate_named("petersen")
    theirs = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert encode_graph6(g) == theirs


@pytest.mark.parametrize("text, offset", [("D~\x10", 2), ("D~", 2), ("D~{{", 3), ("", 0)])
def test_parse_errors_report_offset(text, offset):
    with pytest.raises(GraphFormatError) as exc:
        parse_graph6(text)
    assert exc.value.offset == offset


def test_long_form_rejected():
    with pytest.raises(GraphFormatError):
        parse_graph6("~?@?")
    with pytest.raises(GraphFormatError):
        encode_graph6(generate_named("cycle", [63]))


@settings(max_examples=200, deadline=None)
@given(small_graphs(max_n=12))
def test_graph6_roundtrip(g):
    assert parse_graph6(encode_graph6(g)) == g


@settings(max_examples=100, deadline=None)
@given(small_graphs(max_n=9))
def test_edge_list_roundtrip_and_degree_sum(g):
    assert parse_edge_list(format_edge_list(g)) == g
    assert sum(g.degree(v) for v in range(g.n)) == 2 * g.m


def test_edge_list_errors():
    with pytest.raises(GraphFormatError):
        parse_edge_list("3 2\n0 1\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("3 1\n0 5\n")
    with pytest.raises(GraphFormatError):
        parse_edge_list("3 1\n0 x\n")


def test_read_graph_detects_format(tmp_path):
    (tmp_path / "p.el").write_text("3 2\n0 1\n1 2\n")
    (tmp_path / "k.g6").write_text("D~{\n")
    assert read_graph(tmp_path / "p.el").m == 2
    assert read_graph(tmp_path / "k.g6").m == 10


@pytest.mark.parametrize("spec, n, m", [
    ("complete 4", 4, 6), ("k4", 4, 6), ("prism 3", 6, 9), ("prism_6", 12, 18), ("petersen", 10, 15),
    ("moebius_kantor", 16, 24), ("dodecahedron", 20, 30), ("k33", 6, 9), ("hypercube 3", 8, 12),
    ("q4", 16, 32), ("cycle 7", 7, 7), ("complete_bipartite 2 3", 5, 6),
])
def test_named_generators(spec, n, m):
    g = parse_named(spec)
    assert (g.n, g.m) == (n, m)


def test_cubic_corpus_is_cubic(corpus):
    assert len(corpus) == 8
    for g in corpus:
        st = analyze_structure(g)
        assert st.is_regular and st.d == 3 and st.is_connected


def test_named_networkx_isomorphic():
    assert nx.is_isomorphic(to_nx(generate_named("petersen")), nx.petersen_graph())
    assert nx.is_isomorphic(to_nx(generate_named("dodecahedron")), nx.dodecahedral_graph())
    assert nx.is_isomorphic(to_nx(generate_named("moebius_kantor")), nx.moebius_kantor_graph())


@pytest.mark.parametrize("bad", [("nonsense", []), ("cycle", [2]), ("cycle", []), ("petersen", [3])])
def test_generator_errors(bad):
    with pytest.raises(GeneratorError):
        generate_named(*bad)


def test_structure_k4():
    st = analyze_structure(generate_named("complete", [4]))
    assert st.is_regular and st.d == 3 and st.is_connected
    assert not st.is_bipartite and st.odd_girth == 3


def test_structure_cube():
    st = analyze_structure(generate_named("hypercube", [3]))
    assert st.d == 3 and st.is_bipartite and st.odd_girth is None


def _odd_girth_by_cycles(g):
    lengths = [len(c) for c in nx.simple_cycles(to_nx(g)) if len(c) % 2 == 1]
    return min(lengths) if lengths else None


def test_petersen_odd_girth_by_enumeration():
    g = generate_named("petersen")
    assert analyze_structure(g).odd_girth == 5 == _odd_girth_by_cycles(g)


@settings(max_examples=150, deadline=None)
@given(small_graphs(max_n=8))
def test_odd_girth_matches_cycle_enumeration(g):
    og = odd_girth(g)
    assert og == _odd_girth_by_cycles(g)
    assert (og is None) == (two_coloring(g) is not None)
    if og is not None:
        assert og % 2 == 1 and og >= 3


def test_graph_rejects_bad_adjacency():
    with pytest.raises(ValueError):
        Graph(2, ((1,), ()))
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
