import pytest
from hypothesis import given, strategies as st

from minorlab.containment import min_vertex_cover
from minorlab.graph import (
    Graph,
    GraphError,
    claw_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    star_graph,
    subdivide_edge,
)
from minorlab.minor_theory import (
    ForbiddenFamily,
    beta,
    beta_report,
    check_mainlb_edge,
    classify_edges,
    is_path_or_claw_family,
    is_star_subdivision_family,
    replace_edge_with_paths,
    uniform_subdivision_escape,
    vc_claw,
    vc_path,
)
from minorlab.containment import is_subgraph

from conftest import graphs


def two_triangles_joined():
    # triangles 0-1-2 and 3-4-5 with the 3-path 2-6-7-3
    return Graph.from_edges(8, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
                                (2, 6), (6, 7), (7, 3)])


def test_classify_examples():
    assert len(classify_edges(cycle_graph(5)).internal) == 5
    assert len(classify_edges(path_graph(6)).external) == 6
    c = classify_edges(claw_graph(2, 2, 2))
    assert len(c.external) == 6 and not c.internal


def test_beta_examples():
    assert beta(cycle_graph(3)) == 3
    assert beta(complete_graph(4)) == 6
    assert beta(two_triangles_joined()) == 9
    assert beta(Graph.empty(0)) == 0
    assert classify_edges(path_graph(1)).label((0, 1)) == "external"


def test_beta_report_json():
    rep = beta_report(cycle_graph(3)).to_json()
    assert rep == {"beta": 3, "internal_edges": [[0, 1], [0, 2], [1, 2]], "external_edges": []}


@given(graphs())
def test_internal_plus_external_is_m(G):
    c = classify_edges(G)
    assert len(c.internal) + len(c.external) == G.m
    for p in c.dangling_paths:
        assert G.degree(p[0]) == 1
        assert all(G.degree(v) == 2 for v in p[1:-1])


def test_replace_edge_examples():
    T = replace_edge_with_paths(cycle_graph(3), (0, 1), 1, 1)
    assert T.n == 5 and T.m == 4 and T.is_connected() and beta(T) == 0
    K = replace_edge_with_paths(complete_graph(4), (0, 1), 2, 3)
    assert K.n == 9 and beta(K) == 5
    with pytest.raises(GraphError):
        replace_edge_with_paths(path_graph(2), (0, 2), 1, 1)
    with pytest.raises(GraphError):
        replace_edge_with_paths(path_graph(2), (0, 1), 0, 1)


@given(graphs(min_n=2), st.data())
def test_single_steps_never_lower_beta(H, data):
    b = beta(H)
    assert beta(H.add_vertices(1)) >= b
    non_edges = [(u, v) for u in range(H.n) for v in range(u + 1, H.n) if not H.has_edge(u, v)]
    if non_edges:
        assert beta(H.add_edge(*data.draw(st.sampled_from(non_edges)))) >= b
    if H.m:
        assert beta(subdivide_edge(H, data.draw(st.sampled_from(H.edges())))) >= b


@given(graphs(min_n=3), st.integers(1, 3), st.integers(1, 3))
def test_internal_replacement_lowers_beta(G, p, q):
    c = classify_edges(G)
    for e in c.internal:
        assert beta(replace_edge_with_paths(G, e, p, q)) < len(c.internal)


def test_star_family_examples():
    assert is_star_subdivision_family(path_graph(4))
    assert not is_star_subdivision_family(cycle_graph(4))
    assert is_star_subdivision_family(claw_graph(1, 2, 3).disjoint_union(path_graph(4)))


@given(graphs(max_n=8))
def test_star_family_iff_beta_zero(H):
    assert is_star_subdivision_family(H) == (beta(H) == 0)


def test_path_or_claw_examples():
    assert is_path_or_claw_family(claw_graph(2, 2, 2))
    assert not is_path_or_claw_family(star_graph(4))
    assert not is_path_or_claw_family(cycle_graph(3))


def test_escape_subdivision():
    k, S = uniform_subdivision_escape(cycle_graph(3))
    assert k == 1 and is_subgraph(cycle_graph(3), S) is None
    assert uniform_subdivision_escape(path_graph(3)) is None


def test_vc_formulas():
    assert vc_path(5) == 3
    assert vc_claw(2, 2, 2) == 3
    assert vc_claw(1, 1, 1) == 1
    with pytest.raises(ValueError):
        vc_path(0)
    with pytest.raises(ValueError):
        vc_claw(0, 1, 1)


@pytest.mark.parametrize("k", range(1, 11))
def test_vc_path_matches_search(k):
    assert vc_path(k) == len(min_vertex_cover(path_graph(k)))


def test_mainlb_edge_examples():
    fam = ForbiddenFamily(S=(cycle_graph(3),))
    assert check_mainlb_edge(fam, cycle_graph(3), (0, 1), 4).suitable
    fam = ForbiddenFamily(S=(complete_graph(4),))
    assert check_mainlb_edge(fam, complete_graph(4), (0, 1), 3).suitable
    fam = ForbiddenFamily(B=(path_graph(2),))
    v = check_mainlb_edge(fam, path_graph(3), (1, 2), 2)
    assert not v.suitable and v.failing == (1, 1)
    assert v.to_json() == {"suitable": False, "lmax": 2, "failing": [1, 1]}


def test_mainlb_edge_refuses_large_lmax():
    from minorlab.config import CapExceeded
    with pytest.raises(CapExceeded):
        check_mainlb_edge(ForbiddenFamily(S=(cycle_graph(3),)), cycle_graph(3), (0, 1), 10)


def test_forbidden_family_dedupes():
    fam = ForbiddenFamily(S=(cycle_graph(3), cycle_graph(3).relabel([2, 0, 1])))
    assert len(fam.S) == 1
