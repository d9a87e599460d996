"""Internal/external edges, the beta invariant and related structural checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .canonical import canonical_form, canonical_graph
from .config import Limits, current_limits, require
from .containment import is_subgraph, is_topological_minor, subdivide_edges
from .graph import Edge, Graph, GraphError, check_edge


class ClassificationMismatch(AssertionError):
    """The two characterisations of external edges disagree (a bug, never expected)."""


@dataclass(frozen=True)
class EdgeClassification:
    internal: tuple[Edge, ...]
    external: tuple[Edge, ...]
    dangling_paths: tuple[tuple[int, ...], ...]

    def label(self, e: Sequence[int]) -> str:
        key = (min(e), max(e))
        if key in self.internal:
            return "internal"
        if key in self.external:
            return "external"
        raise GraphError(f"{tuple(e)} is not an edge")


@dataclass(frozen=True)
class BetaReport:
    beta: int
    internal_edges: tuple[Edge, ...]
    external_edges: tuple[Edge, ...]

    def to_json(self) -> dict:
        return {
            "beta": self.beta,
            "internal_edges": [list(e) for e in self.internal_edges],
            "external_edges": [list(e) for e in self.external_edges],
        }


def _bridge_scan(G: Graph) -> dict[Edge, tuple[bool, bool]]:
    """Bridges of G via DFS low-links; for each bridge (u, v) with u < v, whether
    the u side and the v side of G - uv hold a vertex of degree at least 3."""
    deg = G.degrees()
    heavy = [1 if d >= 3 else 0 for d in deg]
    disc = [-1] * G.n
    low = [0] * G.n
    sub = [0] * G.n  # heavy vertices in the DFS subtree
    out: dict[Edge, tuple[bool, bool]] = {}
    clock = 0
    for root in range(G.n):
        if disc[root] >= 0:
            continue
        tree_edges = []
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(G.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            w = next(it, None)
            if w is None:
                stack.pop()
                sub[v] += heavy[v]
                if parent >= 0:
                    low[parent] = min(low[parent], low[v])
                    sub[parent] += sub[v]
                    tree_edges.append((parent, v))
                continue
            if w == parent:
                continue
            if disc[w] >= 0:
                low[v] = min(low[v], disc[w])
            else:
                disc[w] = low[w] = clock
                clock += 1
                stack.append((w, v, iter(G.neighbors(w))))
        total = sub[root]
        for parent, child in tree_edges:
            if low[child] > disc[parent]:
                child_side = sub[child] > 0
                parent_side = total - sub[child] > 0
                if parent < child:
                    out[(parent, child)] = (parent_side, child_side)
                else:
                    out[(child, parent)] = (child_side, parent_side)
    return out


def bridges(G: Graph) -> list[Edge]:
    return sorted(_bridge_scan(G))


def dangling_paths(G: Graph) -> list[tuple[int, ...]]:
    """Walks from each degree-one vertex through degree-two vertices, ending at
    the first vertex whose degree is not two."""
    deg = G.degrees()
    out = []
    for s in range(G.n):
        if deg[s] != 1:
            continue
        walk = [s]
        prev, cur = -1, s
        while True:
            ahead = [w for w in G.neighbors(cur) if w != prev]
            if not ahead:
                break
            nxt = ahead[0]
            walk.append(nxt)
            if deg[nxt] != 2:
                break
            prev, cur = cur, nxt
        out.append(tuple(walk))
    return out


def classify_edges(G: Graph) -> EdgeClassification:
    scan = _bridge_scan(G)
    internal = []
    external = []
    for e in G.edges():
        sides = scan.get(e)
        (internal if sides is None or all(sides) else external).append(e)

    paths = dangling_paths(G)
    on_paths = {(min(a, b), max(a, b)) for p in paths for a, b in zip(p, p[1:])}
    if on_paths != set(external):
        raise ClassificationMismatch(
            f"bridge analysis gives external {sorted(external)}, dangling paths give {sorted(on_paths)}")
    return EdgeClassification(tuple(internal), tuple(external), tuple(paths))


def beta(G: Graph) -> int:
    return len(classify_edges(G).internal)


def beta_report(G: Graph) -> BetaReport:
    c = classify_edges(G)
    return BetaReport(len(c.internal), c.internal, c.external)


def replace_edge_with_paths(G: Graph, e: Sequence[int], p: int, q: int) -> Graph:
    """Delete edge (u, v) and hang a fresh p-edge path at u and a q-edge path at v."""
    u, v = check_edge(G, e)
    if p < 1 or q < 1:
        raise GraphError("path lengths must be at least 1")
    edges = [f for f in G.edges() if f != (u, v)]
    nxt = G.n
    for root, length in ((u, p), (v, q)):
        prev = root
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def _components(H: Graph) -> Iterable[Graph]:
    for comp in H.components():
        yield H.induced(comp)


def is_star_subdivision_family(H: Graph) -> bool:
    for C in _components(H):
        if C.m != C.n - 1:
            return False
        if sum(1 for d in C.degrees() if d >= 3) > 1:
            return False
    return True


def uniform_subdivision_escape(H: Graph, max_per_edge: int = 6) -> Optional[tuple[int, Graph]]:
    """Smallest k <= max_per_edge such that subdividing every edge of H k times
    gives a graph without H as a subgraph, with that graph; None if no such k."""
    for k in range(1, max_per_edge + 1):
        S = subdivide_edges(H, [k] * H.m)
        if is_subgraph(H, S) is None:
            return k, S
    return None


def is_path_or_claw_family(H: Graph) -> bool:
    for C in _components(H):
        if C.m != C.n - 1:
            return False
        degs = C.degrees()
        if max(degs, default=0) > 3 or degs.count(3) > 1:
            return False
    return True


def vc_path(k: int) -> int:
    """Vertex cover number of the path with k edges."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return math.ceil(k / 2)


def vc_claw(d1: int, d2: int, d3: int) -> int:
    """Vertex cover number of a claw with branches subdivided to lengths d1, d2, d3."""
    ds = (d1, d2, d3)
    if min(ds) < 1:
        raise ValueError("branch lengths must be at least 1")
    if all(d % 2 == 0 for d in ds):
        return sum(ds) // 2
    return 1 + sum(math.ceil((d - 1) / 2) for d in ds)


# edge suitability for the lower-bound construction -------------------------

@dataclass(frozen=True)
class ForbiddenFamily:
    """Forbidden topological minors ``S`` and forbidden subgraphs ``B``.

    Members are stored canonically labelled and deduplicated.
    """

    S: tuple[Graph, ...] = ()
    B: tuple[Graph, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "S", _dedupe(self.S))
        object.__setattr__(self, "B", _dedupe(self.B))


def _dedupe(graphs: Iterable[Graph]) -> tuple[Graph, ...]:
    seen = {}
    for g in graphs:
        seen.setdefault(canonical_form(g), canonical_graph(g))
    return tuple(seen[k] for k in sorted(seen))


@dataclass(frozen=True)
class EdgeVerdict:
    suitable: bool
    lmax: int
    failing: Optional[tuple[int, int]] = None

    def to_json(self) -> dict:
        return {"suitable": self.suitable, "lmax": self.lmax,
                "failing": list(self.failing) if self.failing else None}


def check_mainlb_edge(family: ForbiddenFamily, G: Graph, e: Sequence[int], lmax: int,
                      limits: Limits | None = None) -> EdgeVerdict:
    """Test every replacement of ``e`` by paths of lengths 1..lmax against the family.

    Suitability only holds up to ``lmax``; this is a bounded experiment.
    """
    check_edge(G, e)
    if lmax < 1:
        raise ValueError("lmax must be at least 1")
    lim = current_limits(limits)
    if family.S:
        require(G.n + 2 * lmax, lim.max_vertices, "largest replacement graph")
    for H in family.B:
        require(H.n, lim.max_vertices, "forbidden subgraph")
    for p in range(1, lmax + 1):
        for q in range(1, lmax + 1):
            R = replace_edge_with_paths(G, e, p, q)
            if any(is_topological_minor(S, R, lim) for S in family.S):
                return EdgeVerdict(False, lmax, (p, q))
            if any(is_subgraph(B, R, limits=lim) for B in family.B):
                return EdgeVerdict(False, lmax, (p, q))
    return EdgeVerdict(True, lmax)
