from itertools import combinations

import pytest
from hypothesis import given, settings

from eigenind.graphcore import Graph, generate_named, parse_edge_list, parse_named
from eigenind.symmetry import automorphism_group, cherries, is_automorphism, is_vertex_transitive, orbit

from conftest import all_automorphisms, small_graphs


def test_k4():
    r = automorphism_group(generate_named("complete", [4]))
    assert r.aut_order == 24
    assert r.vertex_transitive and r.arc_transitive and r.cherry_transitive


def test_petersen():
    g = generate_named("petersen")
    r = automorphism_group(g)
    assert r.aut_order == 120 == len(all_automorphisms(g))
    assert r.vertex_transitive and r.arc_transitive and r.cherry_transitive
    # orbit-stabiliser: |orbit(0)| * |Stab(0)| = |Aut|
    stab = [p for p in all_automorphisms(g) if p[0] == 0]
    assert len(orbit(r.generators, 0, lambda p, v: p[v])) * len(stab) == r.aut_order


def test_prism3_not_cherry_transitive():
    g = generate_named("prism", [3])
    r = automorphism_group(g)
    assert r.aut_order == 12
    assert r.vertex_transitive and not r.arc_transitive and not r.cherry_transitive
    # stabiliser of vertex 0 never swaps the triangle pair with a triangle-square pair
    auts = all_automorphisms(g)
    tri = frozenset(u for u in g.neighbors[0] if u < 3)
    assert all(frozenset(p[u] for u in tri) == tri for p in auts if p[0] == 0)


def test_cycle5_vertex_transitive():
    assert is_vertex_transitive(generate_named("cycle", [5]))


def test_path_not_vertex_transitive():
    assert is_vertex_transitive(parse_edge_list("3 2\n0 1\n1 2\n")) is False


def test_moebius_kantor():
    r = automorphism_group(generate_named("moebius_kantor"))
    assert r.vertex_transitive
    assert r.aut_order == 96


@pytest.mark.parametrize("spec, order, arc, cherry", [
    ("k33", 72, True, True), ("hypercube 3", 48, True, True), ("dodecahedron", 120, True, True),
    ("prism 6", 24, False, False), ("hypercube 4", 384, True, True),
])
def test_corpus_orders(spec, order, arc, cherry):
    r = automorphism_group(parse_named(spec))
    assert (r.aut_order, r.arc_transitive, r.cherry_transitive) == (order, arc, cherry)


def test_generators_are_automorphisms(corpus):
    for g in corpus:
        r = automorphism_group(g)
        for p in r.generators:
            assert is_automorphism(g, p)
            assert all(g.has_edge(p[u], p[v]) == g.has_edge(u, v) for u, v in combinations(range(g.n), 2))


def test_budget_exhaustion_is_unknown():
    r = automorphism_group(generate_named("petersen"), budget=1)
    assert r.aut_order is None and r.vertex_transitive is None and not r.known


def _flags_by_brute_force(g: Graph):
    auts = all_automorphisms(g)
    vt = len({p[0] for p in auts}) == g.n
    arcs = [(u, v) for u in range(g.n) for v in g.neighbors[u]]
    at = vt and bool(arcs) and len({(p[arcs[0][0]], p[arcs[0][1]]) for p in auts}) == len(arcs)
    ch = cherries(g)
    ct = vt and bool(ch) and len({(p[ch[0][0]], frozenset(p[u] for u in ch[0][1])) for p in auts}) == len(ch)
    return len(auts), vt, at, ct


@settings(max_examples=120, deadline=None)
@given(small_graphs(max_n=7))
def test_against_brute_force(g):
    r = automorphism_group(g)
    order, vt, at, ct = _flags_by_brute_force(g)
    assert r.aut_order == order
    assert (r.vertex_transitive, r.arc_transitive, r.cherry_transitive) == (vt, at, ct)
    if r.cherry_transitive or r.arc_transitive:
        assert r.vertex_transitive


@pytest.mark.parametrize("spec", ["cycle 8", "complete_bipartite 2 4", "prism 5", "complete 6"])
def test_named_against_brute_force(spec):
    g = parse_named(spec)
    r = automorphism_group(g)
    order, vt, at, ct = _flags_by_brute_force(g)
    assert (r.aut_order, r.vertex_transitive, r.arc_transitive, r.cherry_transitive) == (order, vt, at, ct)
