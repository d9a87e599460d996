"""Reading and writing graphs: the edge-list text format, graph6, builtins."""
from __future__ import annotations

import os

import networkx as nx

from .graph import (
    Graph,
    GraphError,
    claw_graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    star_graph,
)


def parse_text(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``, or a graph6 string."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphError("empty graph description")
    head = lines[0].split()
    if len(head) == 1 and not head[0].isdigit():
        return from_graph6(head[0])
    try:
        n, m = int(head[0]), int(head[1])
        edges = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except (ValueError, IndexError) as exc:
        raise GraphError(f"cannot parse graph header {lines[0]!r}") from exc
    if len(edges) != m or any(len(e) != 2 for e in edges):
        raise GraphError(f"expected {m} edge lines of the form 'u v'")
    G = Graph.from_edges(n, edges)
    if G.m != m:
        raise GraphError("duplicate edges in edge list")
    return G


def format_text(G: Graph) -> str:
    out = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(out) + "\n"


def from_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    try:
        nxg = nx.from_graph6_bytes(s.encode("ascii"))
    except Exception as exc:  # networkx raises several types here
        raise GraphError(f"invalid graph6 string {s!r}") from exc
    return Graph.from_edges(nxg.number_of_nodes(), nxg.edges())


def to_graph6(G: Graph) -> str:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(G.n))
    nxg.add_edges_from(G.edges())
    return nx.to_graph6_bytes(nxg, header=False).decode("ascii").strip()


def to_networkx(G: Graph) -> nx.Graph:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(G.n))
    nxg.add_edges_from(G.edges())
    return nxg


def _ints(arg: str, count: int | None = None) -> list[int]:
    vals = [int(x) for x in arg.split(",") if x]
    if count is not None and len(vals) != count:
        raise GraphError(f"expected {count} comma-separated integers, got {arg!r}")
    return vals


def builtin(name: str) -> Graph:
    """Named graphs: kpath:N (N edges), cycle:N, claw:a,b,c, clique:N, biclique:s,t,
    star:t, empty:n, petersen, and the shorthands c3..c9, k3..k9."""
    kind, _, arg = name.partition(":")
    kind = kind.lower()
    try:
        if kind == "kpath":
            return path_graph(_ints(arg, 1)[0])
        if kind == "cycle":
            return cycle_graph(_ints(arg, 1)[0])
        if kind == "claw":
            return claw_graph(*(_ints(arg, 3) if arg else [1, 1, 1]))
        if kind == "clique":
            return complete_graph(_ints(arg, 1)[0])
        if kind == "biclique":
            return complete_bipartite(*_ints(arg, 2))
        if kind == "star":
            return star_graph(_ints(arg, 1)[0])
        if kind == "empty":
            return Graph.empty(_ints(arg, 1)[0])
        if kind == "petersen":
            return petersen_graph()
        if len(kind) >= 2 and kind[0] in "ck" and kind[1:].isdigit() and not arg:
            k = int(kind[1:])
            return cycle_graph(k) if kind[0] == "c" else complete_graph(k)
    except ValueError as exc:
        raise GraphError(f"bad builtin graph {name!r}: {exc}") from exc
    raise GraphError(f"unknown builtin graph {name!r}")


def load_graph(spec: str) -> Graph:
    """Load from ``builtin:...``, a file path, or an inline graph6 string."""
    if spec.startswith("builtin:"):
        return builtin(spec[len("builtin:"):])
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            return parse_text(fh.read())
    try:
        return from_graph6(spec)
    except GraphError:
        raise GraphError(f"no such graph file or builtin: {spec!r}") from None


def all_graphs(max_n: int, min_n: int = 0) -> list[Graph]:
    """One graph per isomorphism class on min_n..max_n vertices (networkx atlas, max_n <= 7)."""
    if max_n > 7:
        raise GraphError("the graph atlas stops at 7 vertices")
    out = []
    for g in nx.graph_atlas_g():
        k = g.number_of_nodes()
        if min_n <= k <= max_n:
            out.append(Graph.from_edges(k, g.edges()))
    return out
