"""Simple undirected graphs stored as rows of neighbour bitmasks.

Vertices are ``0..n-1``. Row ``u`` is an int whose bit ``v`` is set iff
``{u, v}`` is an edge. Graphs are immutable; every operation returns a new
graph.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Malformed graph, bad vertex index or non-edge where an edge is required."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> list[int]:
    """Indices of set bits of ``mask`` in increasing order."""
    return list(_bits(mask))


def pair_index(u: int, v: int, n: int) -> int:
    """Position of the unordered pair {u, v} in the row-major upper triangle."""
    if u > v:
        u, v = v, u
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def index_pair(i: int, n: int) -> Edge:
    """Inverse of :func:`pair_index`."""
    u = 0
    row = n - 1
    while i >= row:
        i -= row
        u += 1
        row -= 1
    return u, u + 1 + i


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.rows) != self.n:
            raise GraphError("row count does not match vertex count")
        full = (1 << self.n) - 1
        for u, r in enumerate(self.rows):
            if r & ~full or (r >> u) & 1:
                raise GraphError(f"bad adjacency row for vertex {u}")
            for v in _bits(r):
                if not (self.rows[v] >> u) & 1:
                    raise GraphError("adjacency is not symmetric")

    # construction -------------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        rows = [0] * n
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Graph":
        """Inverse of :meth:`edge_mask`."""
        return cls.from_edges(n, (index_pair(i, n) for i in _bits(mask)))

    # queries ------------------------------------------------------------

    @property
    def m(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def neighbors(self, v: int) -> list[int]:
        return bits(self.rows[v])

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u] >> (u + 1) << (u + 1))]

    def edge_mask(self) -> int:
        """Edge set as an int over pair indices (see :func:`pair_index`)."""
        out = 0
        for u, v in self.edges():
            out |= 1 << pair_index(u, v, self.n)
        return out

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for s in range(self.n):
            if (seen >> s) & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.rows[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(bits(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def reach(self, start: int, allowed: int) -> int:
        """Vertices reachable from ``start`` inside the vertex mask ``allowed``."""
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.rows[v]
            frontier = nxt & allowed & ~comp
            comp |= frontier
        return comp

    def is_path_graph(self) -> bool:
        """True for a path with at least one edge."""
        return self.n >= 2 and self.m == self.n - 1 and max(self.degrees()) <= 2 and self.is_connected()

    # derived graphs -----------------------------------------------------

    def add_edge(self, u: int, v: int) -> "Graph":
        return Graph.from_edges(self.n, self.edges() + [(u, v)])

    def remove_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise GraphError(f"({u}, {v}) is not an edge")
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def add_vertices(self, k: int = 1) -> "Graph":
        return Graph(self.n + k, self.rows + (0,) * k)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced on ``vertices``; vertex ``vertices[i]`` becomes ``i``."""
        pos = {v: i for i, v in enumerate(vertices)}
        edges = [(pos[u], pos[v]) for u, v in self.edges() if u in pos and v in pos]
        return Graph.from_edges(len(vertices), edges)

    def remove_vertex(self, v: int) -> "Graph":
        return self.induced([u for u in range(self.n) if u != v])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex ``u`` is renamed ``perm[u]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~r & ~(1 << u) for u, r in enumerate(self.rows)))

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        edges = self.edges() + [(u + shift, v + shift) for u, v in other.edges()]
        return Graph.from_edges(self.n + other.n, edges)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def check_edge(G: Graph, e: Sequence[int]) -> Edge:
    u, v = int(e[0]), int(e[1])
    if not (0 <= u < G.n and 0 <= v < G.n) or not G.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge of the graph")
    return (u, v) if u < v else (v, u)


def subdivide_edge(G: Graph, e: Sequence[int]) -> Graph:
    """Replace edge ``e`` by a 2-edge path through the new vertex ``G.n``."""
    u, v = check_edge(G, e)
    w = G.n
    edges = [f for f in G.edges() if f != (u, v)] + [(u, w), (w, v)]
    return Graph.from_edges(G.n + 1, edges)


def contract_edge(G: Graph, e: Sequence[int]) -> Graph:
    """Merge the endpoints of ``e``; the merged vertex keeps the smaller label.

    Vertices above the larger endpoint shift down by one.
    """
    u, v = check_edge(G, e)

    def lab(x: int) -> int:
        if x == v:
            x = u
        return x - 1 if x > v else x

    edges = set()
    for a, b in G.edges():
        a2, b2 = lab(a), lab(b)
        if a2 != b2:
            edges.add((min(a2, b2), max(a2, b2)))
    return Graph.from_edges(G.n - 1, sorted(edges))


def delete_pendant_vertices(H: Graph) -> tuple[Graph, list[int]]:
    """Drop every degree-one vertex that is not half of an isolated edge.

    Returns the smaller graph together with the list of kept original vertices
    (kept vertex ``i`` of the result is ``kept[i]`` of ``H``).
    """
    deg = H.degrees()
    kept = []
    for v in range(H.n):
        if deg[v] == 1:
            (w,) = H.neighbors(v)
            if deg[w] != 1:
                continue
        kept.append(v)
    return H.induced(kept), kept


# builders -----------------------------------------------------------------

def path_graph(k: int) -> Graph:
    """Path with ``k`` edges (``k + 1`` vertices)."""
    if k < 0:
        raise GraphError("path length must be non-negative")
    return Graph.from_edges(k + 1, [(i, i + 1) for i in range(k)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(s: int, t: int) -> Graph:
    return Graph.from_edges(s + t, [(i, s + j) for i in range(s) for j in range(t)])


def star_graph(t: int) -> Graph:
    """K_{1,t} with centre 0."""
    return Graph.from_edges(t + 1, [(0, i) for i in range(1, t + 1)])


def spider(legs: Sequence[int]) -> Graph:
    """Centre 0 with pendant paths of the given edge lengths (a subdivided star)."""
    edges = []
    nxt = 1
    for length in legs:
        if length < 1:
            raise GraphError("spider legs need at least one edge")
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def claw_graph(d1: int = 1, d2: int = 1, d3: int = 1) -> Graph:
    """Claw whose three edges are subdivided into paths of lengths d1, d2, d3."""
    return spider([d1, d2, d3])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_gnm(n: int, m: int, rng: random.Random) -> Graph:
    pairs = list(combinations(range(n), 2))
    return Graph.from_edges(n, rng.sample(pairs, min(m, len(pairs))))
