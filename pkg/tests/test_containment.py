import itertools
import random

import pytest
from hypothesis import given, strategies as st

from minorlab.config import CapExceeded, Limits
from minorlab.containment import (
    all_minimum_vertex_covers,
    enumerate_subdivisions,
    is_minor,
    is_minor_by_closure,
    is_subgraph,
    is_topological_minor,
    is_vertex_cover,
    min_vertex_cover,
    verify_witness,
)
from minorlab.graph import (
    Graph,
    claw_graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    random_gnm,
    star_graph,
)
from minorlab.canonical import canonical_form

from conftest import graphs


def brute_subgraph(H, G):
    # every injective map, no pruning
    for phi in itertools.permutations(range(G.n), H.n):
        if all(G.has_edge(phi[u], phi[v]) for u, v in H.edges()):
            return phi
    return None


def brute_cover(G):
    for k in range(G.n + 1):
        for C in itertools.combinations(range(G.n), k):
            if is_vertex_cover(G, C):
                return k
    return 0


def test_subgraph_examples():
    assert is_subgraph(cycle_graph(3), cycle_graph(5)) is None
    w = is_subgraph(star_graph(3), complete_graph(4))
    assert w is not None and w.verify(star_graph(3), complete_graph(4))


def test_five_path_against_all_maps(rng):
    H = path_graph(5)
    for _ in range(25):
        G = random_gnm(8, rng.randint(5, 16), rng)
        w = is_subgraph(H, G)
        b = brute_subgraph(H, G)
        assert (w is None) == (b is None)
        if w is not None:
            # lexicographically smallest map
            assert tuple(w.vertex_map) == tuple(b)


@given(graphs(max_n=4), graphs(max_n=6))
def test_induced_implies_plain(H, G):
    wi = is_subgraph(H, G, induced=True)
    if wi is not None:
        assert wi.verify(H, G)
        assert is_subgraph(H, G) is not None


def test_minor_examples():
    w = is_minor(cycle_graph(3), cycle_graph(5))
    assert w is not None and w.verify(cycle_graph(3), cycle_graph(5))
    assert is_minor(complete_graph(4), cycle_graph(9)) is None


def test_k33_minor_strategies_agree(rng):
    H = complete_bipartite(3, 3)
    hosts = [petersen_graph().remove_vertex(0).remove_vertex(1)]
    hosts += [random_gnm(7, rng.randint(9, 16), rng) for _ in range(6)]
    for G in hosts:
        a = is_minor(H, G) is not None
        b = is_minor_by_closure(H, G)
        assert a == b


def test_topological_examples():
    for k in range(3, 9):
        w = is_topological_minor(cycle_graph(3), cycle_graph(k))
        assert w is not None and w.verify(cycle_graph(3), cycle_graph(k))
        assert is_topological_minor(star_graph(3), cycle_graph(k)) is None


@given(graphs(max_n=4), graphs(max_n=6))
def test_topological_equals_subdivision_search(H, G):
    t = is_topological_minor(H, G) is not None
    extra = max(G.n - H.n, 0)
    s = H.n <= G.n and any(is_subgraph(S, G) is not None for S in enumerate_subdivisions(H, extra)
                           if S.n <= G.n)
    assert t == s


@given(graphs(max_n=5), graphs(max_n=7))
def test_containment_chain(H, G):
    s = is_subgraph(H, G)
    t = is_topological_minor(H, G)
    m = is_minor(H, G)
    if s is not None:
        assert s.verify(H, G) and t is not None
    if t is not None:
        assert t.verify(H, G) and m is not None
    if m is not None:
        assert m.verify(H, G)


def test_enumerate_subdivisions_examples():
    assert len(list(enumerate_subdivisions(path_graph(1), 2))) == 3
    assert len(list(enumerate_subdivisions(cycle_graph(3), 1))) == 2
    got = {canonical_form(g) for g in enumerate_subdivisions(star_graph(3), 2)}
    want = {canonical_form(claw_graph(*d)) for d in [(1, 1, 1), (2, 1, 1), (3, 1, 1), (2, 2, 1)]}
    assert got == want


def test_vertex_cover_examples():
    assert len(min_vertex_cover(star_graph(6))) == 1
    assert len(min_vertex_cover(path_graph(5))) == 3
    assert len(min_vertex_cover(cycle_graph(4))) == brute_cover(cycle_graph(4)) == 2


@given(graphs(max_n=10))
def test_vertex_cover_matches_exhaustive(G):
    C = min_vertex_cover(G)
    assert is_vertex_cover(G, C)
    assert len(C) == brute_cover(G)
    assert all(len(c) == len(C) and is_vertex_cover(G, c) for c in all_minimum_vertex_covers(G))


def test_vertex_cover_size_twelve(rng):
    for _ in range(5):
        G = random_gnm(12, rng.randint(10, 30), rng)
        assert len(min_vertex_cover(G)) == brute_cover(G)


def test_caps_refuse():
    big = path_graph(20)
    with pytest.raises(CapExceeded):
        is_minor(cycle_graph(3), big)
    with pytest.raises(CapExceeded):
        is_subgraph(path_graph(20), big)
    # the subgraph cap is on the pattern only
    assert is_subgraph(path_graph(3), big) is not None
    assert is_minor(path_graph(2), path_graph(15), limits=Limits(max_vertices=16)) is not None


def test_env_cap(monkeypatch):
    monkeypatch.setenv("MINORLAB_MAX_VERTICES", "5")
    with pytest.raises(CapExceeded):
        is_minor(cycle_graph(3), cycle_graph(6))
    monkeypatch.setenv("MINORLAB_MAX_VERTICES", "many")
    with pytest.raises(CapExceeded):
        is_minor(cycle_graph(3), cycle_graph(4))


def test_forged_witness_rejected():
    w = is_subgraph(path_graph(2), path_graph(3))
    from dataclasses import replace
    bad = replace(w, vertex_map=(0, 2, 1))
    assert not verify_witness(bad, path_graph(2), path_graph(3))
