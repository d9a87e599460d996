"""Canonical labelling and isomorphism testing.

The labelling splits a graph into connected components, then into
co-components (components of the complement), and handles the remaining
pieces by individualisation-refinement, keeping the leaf with the largest
adjacency code. Paths and cycles are walked directly. Aimed at graphs with a
few dozen vertices at most.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .graph import Graph, bits


def _code(rows: tuple[int, ...], order: list[int]) -> int:
    code = 0
    for i, u in enumerate(order):
        r = rows[u]
        for v in order[i + 1:]:
            code = (code << 1) | ((r >> v) & 1)
    return code


def _split(rows: tuple[int, ...], verts: int, complement: bool) -> list[int]:
    """Components of the subgraph induced on ``verts`` (or of its complement)."""
    comps = []
    left = verts
    while left:
        s = left & -left
        comp = s
        frontier = s
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= (~rows[v] & ~(1 << v)) if complement else rows[v]
            frontier = nxt & verts & ~comp
            comp |= frontier
        comps.append(comp)
        left &= ~comp
    return comps


def _walk(rows: tuple[int, ...], verts: int) -> list[int]:
    # connected, max degree <= 2 inside verts: a path or a cycle
    vs = bits(verts)
    start = vs[0]
    for v in vs:
        if (rows[v] & verts).bit_count() <= 1:
            start = v
            break
    order = [start]
    prev, cur = -1, start
    while True:
        nxt = [w for w in bits(rows[cur] & verts) if w != prev and w != start]
        if not nxt or len(order) == len(vs):
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


def _refine(adj: list[list[int]], colors: list[int]) -> list[int]:
    k = len(colors)
    ncol = max(colors) + 1
    while True:
        sigs = []
        for v in range(k):
            counts = [0] * ncol
            for w in adj[v]:
                counts[colors[w]] += 1
            sigs.append((colors[v], tuple(counts)))
        uniq = sorted(set(sigs))
        if len(uniq) == ncol:
            return colors
        rank = {s: i for i, s in enumerate(uniq)}
        colors = [rank[s] for s in sigs]
        ncol = len(uniq)


def _ir_order(rows: tuple[int, ...], verts: int) -> list[int]:
    vs = bits(verts)
    local = {v: i for i, v in enumerate(vs)}
    adj = [[local[w] for w in bits(rows[v] & verts)] for v in vs]
    lrows = tuple(sum(1 << w for w in a) for a in adj)
    best: list = [None, None]

    def search(colors: list[int]) -> None:
        colors = _refine(adj, colors)
        ncol = max(colors) + 1
        if ncol == len(colors):
            order = sorted(range(len(colors)), key=colors.__getitem__)
            code = _code(lrows, order)
            if best[0] is None or code > best[0]:
                best[0], best[1] = code, order
            return
        sizes = [0] * ncol
        for c in colors:
            sizes[c] += 1
        target = next(c for c in range(ncol) if sizes[c] > 1)
        for v in range(len(colors)):
            if colors[v] != target:
                continue
            split = [2 * c + (1 if c == target and u != v else 0) for u, c in enumerate(colors)]
            rank = {c: i for i, c in enumerate(sorted(set(split)))}
            search([rank[c] for c in split])

    search([0] * len(vs))
    return [vs[i] for i in best[1]]


def _order(rows: tuple[int, ...], verts: int) -> list[int]:
    size = verts.bit_count()
    if size <= 1:
        return bits(verts)
    for complement in (False, True):
        parts = _split(rows, verts, complement)
        if len(parts) > 1:
            keyed = []
            for p in parts:
                o = _order(rows, p)
                keyed.append((len(o), _code(rows, o), o))
            keyed.sort(key=lambda t: (t[0], t[1]))
            return [v for _, _, o in keyed for v in o]
        if not complement and all((rows[v] & verts).bit_count() <= 2 for v in bits(verts)):
            return _walk(rows, verts)
    return _ir_order(rows, verts)


@lru_cache(maxsize=200_000)
def canonical_labeling(G: Graph) -> tuple[int, ...]:
    """``order[i]`` is the vertex of ``G`` placed at canonical position ``i``."""
    return tuple(_order(G.rows, (1 << G.n) - 1))


@lru_cache(maxsize=200_000)
def canonical_form(G: Graph) -> bytes:
    """Isomorphism-invariant byte string: vertex count plus upper-triangle bits."""
    order = list(canonical_labeling(G))
    nbits = G.n * (G.n - 1) // 2
    code = _code(G.rows, order)
    return G.n.to_bytes(2, "big") + code.to_bytes((nbits + 7) // 8, "big")


def canonical_hex(G: Graph) -> str:
    return canonical_form(G).hex()


def canonical_graph(G: Graph) -> Graph:
    order = canonical_labeling(G)
    perm = [0] * G.n
    for i, v in enumerate(order):
        perm[v] = i
    return G.relabel(perm)


def is_isomorphic(G1: Graph, G2: Graph) -> bool:
    if G1.n != G2.n or G1.m != G2.m or sorted(G1.degrees()) != sorted(G2.degrees()):
        return False
    return canonical_form(G1) == canonical_form(G2)


def find_isomorphism(G1: Graph, G2: Graph) -> Optional[list[int]]:
    """A map ``phi`` with ``phi[u]`` in G2 for each u in G1 preserving edges, or None."""
    if not is_isomorphic(G1, G2):
        return None
    o1, o2 = canonical_labeling(G1), canonical_labeling(G2)
    phi = [0] * G1.n
    for a, b in zip(o1, o2):
        phi[a] = b
    return phi
