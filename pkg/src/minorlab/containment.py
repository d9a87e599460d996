"""Subgraph, minor and topological-minor containment, plus vertex covers.

All searches are exact and exponential; callers are expected to stay at
desk-scale sizes. Caps live in :mod:`minorlab.config`.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .canonical import canonical_form, canonical_graph
from .config import Limits, current_limits, require
from .graph import Graph, bits, contract_edge

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))


@dataclass(frozen=True)
class ContainmentWitness:
    """Certificate that H sits inside G.

    ``vertex_map[h]`` is the G-vertex used for h (for minors, the smallest vertex
    of its branch set). ``branch_sets`` is filled for minors and ``paths`` (one per
    edge of ``H.edges()``) for topological minors.
    """

    kind: str
    vertex_map: tuple[int, ...]
    branch_sets: Optional[tuple[tuple[int, ...], ...]] = None
    paths: Optional[tuple[tuple[int, ...], ...]] = None

    def verify(self, H: Graph, G: Graph) -> bool:
        return verify_witness(self, H, G)

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "vertex_map": list(self.vertex_map)}
        if self.branch_sets is not None:
            out["branch_sets"] = [list(b) for b in self.branch_sets]
        if self.paths is not None:
            out["paths"] = [list(p) for p in self.paths]
        return out


def verify_witness(w: ContainmentWitness, H: Graph, G: Graph) -> bool:
    """Replay ``w`` against ``G``; True iff it certifies the claimed containment."""
    phi = w.vertex_map
    if len(phi) != H.n or any(not 0 <= x < G.n for x in phi):
        return False
    if w.kind in ("subgraph", "induced"):
        if len(set(phi)) != H.n:
            return False
        for a, b in combinations(range(H.n), 2):
            he, ge = H.has_edge(a, b), G.has_edge(phi[a], phi[b])
            if he and not ge:
                return False
            if w.kind == "induced" and ge and not he:
                return False
        return True
    if w.kind == "minor":
        sets = w.branch_sets
        if sets is None or len(sets) != H.n:
            return False
        masks = []
        for s in sets:
            if not s:
                return False
            mask = sum(1 << v for v in s)
            if G.reach(s[0], mask) != mask:
                return False
            masks.append(mask)
        if sum(m.bit_count() for m in masks) != bin(_or(masks)).count("1"):
            return False
        for a, b in H.edges():
            if not any(G.rows[v] & masks[b] for v in sets[a]):
                return False
        return True
    if w.kind == "topological-minor":
        if len(set(phi)) != H.n or w.paths is None or len(w.paths) != H.m:
            return False
        branch = set(phi)
        inner_seen: set[int] = set()
        for (a, b), p in zip(H.edges(), w.paths):
            if len(p) < 2 or {p[0], p[-1]} != {phi[a], phi[b]}:
                return False
            if any(not G.has_edge(x, y) for x, y in zip(p, p[1:])):
                return False
            inner = p[1:-1]
            if len(set(inner)) != len(inner) or branch & set(inner) or inner_seen & set(inner):
                return False
            inner_seen |= set(inner)
        return True
    return False


def _or(masks: Sequence[int]) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


# subgraphs ------------------------------------------------------------------

def _subgraph_map(H: Graph, G: Graph, induced: bool) -> Optional[list[int]]:
    """Lexicographically smallest injective edge-preserving map, or None."""
    k, n = H.n, G.n
    if k > n or H.m > G.m:
        return None
    gdeg = G.degrees()
    ok = []
    for h in range(k):
        d = H.degree(h)
        ok.append(sum(1 << c for c in range(n) if gdeg[c] >= d))
    before = [(1 << h) - 1 for h in range(k)]
    earlier_nb = [bits(H.rows[h] & before[h]) for h in range(k)]
    earlier_non = [bits(~H.rows[h] & before[h]) for h in range(k)] if induced else None
    rows = G.rows
    phi = [0] * k

    def rec(h: int, used: int) -> bool:
        if h == k:
            return True
        cand = ok[h] & ~used
        for j in earlier_nb[h]:
            cand &= rows[phi[j]]
        if induced:
            for j in earlier_non[h]:
                cand &= ~rows[phi[j]]
        while cand:
            low = cand & -cand
            cand ^= low
            phi[h] = low.bit_length() - 1
            if rec(h + 1, used | low):
                return True
        return False

    return phi if rec(0, 0) else None


def is_subgraph(H: Graph, G: Graph, induced: bool = False,
                limits: Limits | None = None) -> Optional[ContainmentWitness]:
    """Witness for H as a (possibly induced) subgraph of G, else None.

    The cap applies to the pattern: the search is polynomial in ``G`` for a
    fixed pattern size.
    """
    require(H.n, current_limits(limits).max_vertices, "pattern graph")
    phi = _subgraph_map(H, G, induced)
    if phi is None:
        return None
    return ContainmentWitness("induced" if induced else "subgraph", tuple(phi))


# minors: connected partitions -------------------------------------------------

@lru_cache(maxsize=4096)
def _connected_sets_by_min(G: Graph) -> tuple[tuple[int, ...], ...]:
    """All vertex sets inducing a connected subgraph, grouped by least vertex,
    each group ordered by size then value."""
    groups: list[list[int]] = [[] for _ in range(G.n)]
    for mask in range(1, 1 << G.n):
        low = (mask & -mask).bit_length() - 1
        if G.reach(low, mask) == mask:
            groups[low].append(mask)
    return tuple(tuple(sorted(g, key=lambda m: (m.bit_count(), m))) for g in groups)


def connected_partitions(G: Graph) -> Iterator[list[int]]:
    """Partitions of V(G) into blocks that each induce a connected subgraph.

    Blocks are listed by least vertex; the all-singletons partition comes first.
    """
    groups = _connected_sets_by_min(G)
    blocks: list[int] = []

    def rec(remaining: int) -> Iterator[list[int]]:
        if not remaining:
            yield list(blocks)
            return
        v = (remaining & -remaining).bit_length() - 1
        for s in groups[v]:
            if s & ~remaining:
                continue
            blocks.append(s)
            yield from rec(remaining & ~s)
            blocks.pop()

    yield from rec((1 << G.n) - 1)


def quotient(G: Graph, blocks: Sequence[int]) -> Graph:
    owner = [0] * G.n
    for i, b in enumerate(blocks):
        for v in bits(b):
            owner[v] = i
    edges = {(min(owner[u], owner[v]), max(owner[u], owner[v]))
             for u, v in G.edges() if owner[u] != owner[v]}
    return Graph.from_edges(len(blocks), sorted(edges))


def _minor_by_partitions(H: Graph, G: Graph) -> Optional[ContainmentWitness]:
    if H.n > G.n or H.m > G.m:
        return None
    tried: set[tuple[int, ...]] = set()
    for blocks in connected_partitions(G):
        if len(blocks) < H.n:
            continue
        Q = quotient(G, blocks)
        if Q.m < H.m or Q.rows in tried:
            continue
        tried.add(Q.rows)
        phi = _subgraph_map(H, Q, False)
        if phi is not None:
            sets = tuple(tuple(bits(blocks[q])) for q in phi)
            return ContainmentWitness("minor", tuple(s[0] for s in sets), branch_sets=sets)
    return None


# minors: deletion / contraction closure -------------------------------------

_CLOSURE: dict[bytes, frozenset[bytes]] = {}


def one_step_minors(G: Graph) -> list[Graph]:
    """Every graph obtained by one edge deletion, isolated-vertex deletion or contraction."""
    out = []
    for u, v in G.edges():
        out.append(G.remove_edge(u, v))
        out.append(contract_edge(G, (u, v)))
    for v in range(G.n):
        if G.rows[v] == 0:
            out.append(G.remove_vertex(v))
    return out


def minor_closure(G: Graph) -> frozenset[bytes]:
    """Canonical forms of all minors of G (G included)."""
    key = canonical_form(G)
    hit = _CLOSURE.get(key)
    if hit is not None:
        return hit
    out = {key}
    seen: set[bytes] = set()
    for child in one_step_minors(canonical_graph(G)):
        ck = canonical_form(child)
        if ck in seen or ck in out:
            continue
        seen.add(ck)
        out |= minor_closure(child)
    result = frozenset(out)
    _CLOSURE[key] = result
    return result


def is_minor_by_closure(H: Graph, G: Graph, limits: Limits | None = None) -> bool:
    require(G.n, current_limits(limits).max_closure_vertices, "host graph for the closure oracle")
    if H.n > G.n or H.m > G.m:
        return False
    return canonical_form(H) in minor_closure(G)


def is_minor(H: Graph, G: Graph, limits: Limits | None = None,
             strategy: str = "partitions") -> Optional[ContainmentWitness]:
    """Branch-set witness for H as a minor of G, else None.

    ``strategy="closure"`` answers through the deletion/contraction closure and
    then rebuilds a witness with the partition search.
    """
    lim = current_limits(limits)
    require(G.n, lim.max_vertices, "host graph")
    if strategy == "partitions":
        return _minor_by_partitions(H, G)
    if strategy == "closure":
        if not is_minor_by_closure(H, G, lim):
            return None
        w = _minor_by_partitions(H, G)
        if w is None:
            raise AssertionError("minor strategies disagree")
        return w
    raise ValueError(f"unknown minor strategy {strategy!r}")


# topological minors -----------------------------------------------------------

def _simple_paths(G: Graph, a: int, b: int, free: int) -> Iterator[list[int]]:
    """Simple a-b paths whose inner vertices lie in ``free``; direct edge first."""
    rows = G.rows
    if (rows[a] >> b) & 1:
        yield [a, b]
    path = [a]

    def rec(v: int, used: int) -> Iterator[list[int]]:
        for w in bits(rows[v] & free & ~used):
            if (rows[w] >> b) & 1:
                yield path + [w, b]
            # keep extending only if b is still reachable through free vertices
            if G.reach(w, (free & ~used & ~(1 << w)) | (1 << w) | (1 << b)) >> b & 1:
                path.append(w)
                yield from rec(w, used | (1 << w))
                path.pop()

    yield from rec(a, 1 << a)


def _route(G: Graph, pairs: list[tuple[int, int]], free: int) -> Optional[list[list[int]]]:
    paths: list[list[int]] = []

    def routable(i: int, free_now: int) -> bool:
        for a, b in pairs[i:]:
            if not (G.reach(a, free_now | (1 << a) | (1 << b)) >> b) & 1:
                return False
        return True

    def rec(i: int, free_now: int) -> bool:
        if i == len(pairs):
            return True
        if not routable(i, free_now):
            return False
        a, b = pairs[i]
        for p in _simple_paths(G, a, b, free_now):
            inner = sum(1 << x for x in p[1:-1])
            paths.append(p)
            if rec(i + 1, free_now & ~inner):
                return True
            paths.pop()
        return False

    return paths if rec(0, free) else None


def is_topological_minor(H: Graph, G: Graph, limits: Limits | None = None) -> Optional[ContainmentWitness]:
    """Witness that a subdivision of H is a subgraph of G, else None.

    Branch maps are tried in lexicographic order, so the returned branch map is
    the smallest one that admits a routing.
    """
    require(G.n, current_limits(limits).max_vertices, "host graph")
    k, n = H.n, G.n
    if k > n or H.m > G.m:
        return None
    hdeg, gdeg = H.degrees(), G.degrees()
    if not _degree_dominated(hdeg, gdeg):
        return None
    full = (1 << n) - 1
    h_edges = H.edges()
    phi = [0] * k
    before = [(1 << h) - 1 for h in range(k)]
    earlier_nb = [bits(H.rows[h] & before[h]) for h in range(k)]
    found: list = [None]

    def rec(h: int, used: int) -> bool:
        if h == k:
            pairs = [(phi[a], phi[b]) for a, b in h_edges]
            routed = _route(G, pairs, full & ~used)
            if routed is None:
                return False
            found[0] = routed
            return True
        for c in range(n):
            if (used >> c) & 1 or gdeg[c] < hdeg[h]:
                continue
            used2 = used | (1 << c)
            free = full & ~used2
            if any(not (G.reach(phi[j], free | (1 << phi[j]) | (1 << c)) >> c) & 1 for j in earlier_nb[h]):
                continue
            phi[h] = c
            if rec(h + 1, used2):
                return True
        return False

    if not rec(0, 0):
        return None
    return ContainmentWitness("topological-minor", tuple(phi),
                              paths=tuple(tuple(p) for p in found[0]))


def _degree_dominated(hdeg: list[int], gdeg: list[int]) -> bool:
    hs, gs = sorted(hdeg, reverse=True), sorted(gdeg, reverse=True)
    return all(a <= b for a, b in zip(hs, gs))


def subdivide_edges(H: Graph, counts: Sequence[int]) -> Graph:
    """Subdivide the i-th edge of ``H.edges()`` ``counts[i]`` times."""
    edges = []
    nxt = H.n
    for (u, v), c in zip(H.edges(), counts):
        prev = u
        for _ in range(c):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    return Graph.from_edges(nxt, edges)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_subdivisions(H: Graph, max_extra: int) -> Iterator[Graph]:
    """Subdivisions of H with at most ``max_extra`` new vertices, one per
    isomorphism class, in order of the number of new vertices."""
    seen: set[bytes] = set()
    for total in range(max_extra + 1):
        for counts in _compositions(total, H.m):
            S = subdivide_edges(H, counts)
            key = canonical_form(S)
            if key not in seen:
                seen.add(key)
                yield S


# vertex covers -------------------------------------------------------------------

def _matching_bound(rows: list[int]) -> int:
    used = 0
    size = 0
    for u, r in enumerate(rows):
        if (used >> u) & 1:
            continue
        free = r & ~used
        if free:
            w = (free & -free).bit_length() - 1
            used |= (1 << u) | (1 << w)
            size += 1
    return size


def min_vertex_cover(G: Graph) -> tuple[int, ...]:
    """A minimum vertex cover by branch and bound (branch on v or on N(v))."""
    best: list = [None]
    init = [v for v in range(G.n) if G.rows[v]]
    best[0] = init

    def remove(rows: list[int], mask: int) -> list[int]:
        return [0 if (mask >> u) & 1 else r & ~mask for u, r in enumerate(rows)]

    def rec(rows: list[int], chosen: list[int]) -> None:
        rows = list(rows)
        chosen = list(chosen)
        # a degree-one vertex can always be covered through its neighbour
        changed = True
        while changed:
            changed = False
            for u, r in enumerate(rows):
                if r and r & (r - 1) == 0:
                    w = r.bit_length() - 1
                    chosen.append(w)
                    rows = remove(rows, 1 << w)
                    changed = True
                    break
        if len(chosen) >= len(best[0]):
            return
        degs = [r.bit_count() for r in rows]
        top = max(degs) if degs else 0
        if top == 0:
            best[0] = chosen
            return
        if len(chosen) + _matching_bound(rows) >= len(best[0]):
            return
        v = degs.index(top)
        rec(remove(rows, 1 << v), chosen + [v])
        nb = rows[v]
        rec(remove(rows, nb), chosen + bits(nb))

    rec(list(G.rows), [])
    return tuple(sorted(best[0]))


def vertex_cover_number(G: Graph) -> int:
    return len(min_vertex_cover(G))


def is_vertex_cover(G: Graph, cover) -> bool:
    mask = sum(1 << v for v in cover)
    return all((mask >> u) & 1 or (mask >> v) & 1 for u, v in G.edges())


def all_minimum_vertex_covers(G: Graph) -> list[tuple[int, ...]]:
    """Every minimum vertex cover, in lexicographic order."""
    size = vertex_cover_number(G)
    touched = [v for v in range(G.n) if G.rows[v]]
    return [c for c in combinations(touched, size) if is_vertex_cover(G, c)]
