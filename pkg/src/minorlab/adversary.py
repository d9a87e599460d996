"""Adversary lower-bound quantities for explicit relation families.

A family describes a relation R between graphs X on one side of a property and
graphs Y on the other. From R we count

* ``m``   the least number of related y over x in X (``m_prime`` dually),
* ``l[x, i]`` the number of related y that differ from x at pair i (``l'`` dually),
* ``l_max`` the largest ``l[x, i] * l'[y, i]`` over related (x, y) differing at i,
* ``v``   the largest ``min(l[x, i] / m, l'[y, i] / m')`` over the same triples,

and report ``sqrt(m m' / l_max)`` (quantum) and ``1 / v`` (randomized).

Two evaluation routes exist. :func:`quantities_explicit` scans labelled sets.
:func:`quantities_symmetric` exploits isomorphism covariance: it only visits
one graph per orbit, and maps every related graph back to its orbit
representative to look up l-values.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from .canonical import canonical_form, canonical_graph, find_isomorphism
from .graph import Graph, bits, check_edge, cycle_graph, index_pair, pair_index


class AdversaryError(ValueError):
    """Degenerate instance (empty X, Y or R) or unsupported size."""


@dataclass(frozen=True)
class AdversaryQuantities:
    m: int
    m_prime: int
    l_max: int
    v: Fraction

    @property
    def quantum_bound_squared(self) -> Fraction:
        return Fraction(self.m * self.m_prime, self.l_max)

    @property
    def quantum_bound(self) -> float:
        return math.sqrt(self.m * self.m_prime / self.l_max)

    @property
    def classical_bound(self) -> float:
        return float(1 / self.v)

    def to_json(self, family: str | None = None, n: int | None = None) -> dict:
        out = {
            "m": self.m,
            "m_prime": self.m_prime,
            "l_max": self.l_max,
            "v": str(self.v),
            "quantum_bound": self.quantum_bound,
            "classical_bound": self.classical_bound,
        }
        if family is not None:
            out["family"] = family
        if n is not None:
            out["n"] = n
        return out


def index_map(n: int) -> list[tuple[int, int]]:
    """Bit position -> vertex pair (positions are 0-based, row-major upper triangle)."""
    return [index_pair(i, n) for i in range(n * (n - 1) // 2)]


Orbit = Callable[[Graph], tuple[int, Sequence[int]]]


@dataclass(frozen=True)
class RelationFamily:
    """A relation between two isomorphism-closed sets of graphs.

    ``y_orbit(y)`` returns ``(j, perm)`` with ``y.relabel(perm)`` equal to
    ``y_representatives(n)[j]``. ``relates`` is the pair predicate used by
    explicit enumeration. ``swap`` marks relations given by the 2-edge swap,
    which enables the compiled labelled scan.
    """

    name: str
    x_representatives: Callable[[int], list[Graph]]
    y_representatives: Callable[[int], list[Graph]]
    related_y: Callable[[Graph], Iterator[Graph]]
    related_x: Callable[[Graph], Iterator[Graph]]
    y_orbit: Orbit
    relates: Callable[[Graph, Graph], bool]
    n: Optional[int] = None
    swap: bool = False
    params: dict = field(default_factory=dict)

    def index_map(self, n: int | None = None) -> list[tuple[int, int]]:
        return index_map(self._size(n))

    def _size(self, n: int | None) -> int:
        if n is None:
            n = self.n
        if n is None:
            raise AdversaryError(f"family {self.name} needs an explicit size")
        return n


# explicit enumeration -------------------------------------------------------

def _finish(m: int, mp: int, lmax: int, v: Fraction) -> AdversaryQuantities:
    if m <= 0 or mp <= 0 or lmax <= 0:
        raise AdversaryError("relation is empty for some x or y; no bound")
    return AdversaryQuantities(m, mp, lmax, v)


def _masks(items: Iterable) -> list[int]:
    return [g.edge_mask() if isinstance(g, Graph) else int(g) for g in items]


def quantities_explicit(X: Iterable, Y: Iterable, R: Callable[[object, object], bool]) -> AdversaryQuantities:
    """Scan every pair of the labelled sets ``X`` and ``Y``.

    Elements are Graphs or int bit strings; ``R`` receives the original elements.
    Differences are measured on edge masks, so all graphs must share a vertex count.
    """
    X, Y = list(X), list(Y)
    if not X or not Y:
        raise AdversaryError("X and Y must be non-empty")
    xm, ym = _masks(X), _masks(Y)
    pairs = [(a, b) for a in range(len(X)) for b in range(len(Y)) if R(X[a], Y[b])]
    if not pairs:
        raise AdversaryError("R is empty")

    degx = [0] * len(X)
    degy = [0] * len(Y)
    lx = [Counter() for _ in X]
    ly = [Counter() for _ in Y]
    for a, b in pairs:
        degx[a] += 1
        degy[b] += 1
        for i in bits(xm[a] ^ ym[b]):
            lx[a][i] += 1
            ly[b][i] += 1
    m, mp = min(degx), min(degy)
    if m == 0 or mp == 0:
        raise AdversaryError("some x or y has no related partner")

    lmax = 0
    v = Fraction(0)
    for a, b in pairs:
        for i in bits(xm[a] ^ ym[b]):
            p, q = lx[a][i], ly[b][i]
            lmax = max(lmax, p * q)
            v = max(v, min(Fraction(p, m), Fraction(q, mp)))
    return _finish(m, mp, lmax, v)


def labelled_orbit(G: Graph) -> np.ndarray:
    """Sorted edge masks of all relabellings of ``G`` (n <= 11)."""
    from ._switch_kernel import orbit
    return orbit(G.n, G.edges())


def labelled_sets(family: RelationFamily, n: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    n = family._size(n)
    xs, ys = family.x_representatives(n), family.y_representatives(n)
    if not xs or not ys:
        raise AdversaryError(f"family {family.name} has no representatives at n={n}")
    X = np.unique(np.concatenate([labelled_orbit(g) for g in xs]))
    Y = np.unique(np.concatenate([labelled_orbit(g) for g in ys]))
    return X, Y


def quantities_explicit_family(family: RelationFamily, n: int | None = None) -> AdversaryQuantities:
    """Full labelled enumeration of a family; swap relations use the compiled scan."""
    n = family._size(n)
    X, Y = labelled_sets(family, n)
    if family.swap:
        from ._switch_kernel import switch_quantities
        m, mp, lmax, vn, vd = switch_quantities(X, Y, n, family.params.get("cycle_path", False))
        return _finish(m, mp, lmax, Fraction(vn, vd))
    gx = [Graph.from_mask(n, int(x)) for x in X]
    gy = [Graph.from_mask(n, int(y)) for y in Y]
    return quantities_explicit(gx, gy, family.relates)


# symmetry-reduced counting ------------------------------------------------------

def _diff(a: Graph, b: Graph) -> list[int]:
    return bits(a.edge_mask() ^ b.edge_mask())


def quantities_symmetric(family: RelationFamily, n: int | None = None) -> AdversaryQuantities:
    n = family._size(n)
    xs, ys = family.x_representatives(n), family.y_representatives(n)
    if not xs or not ys:
        raise AdversaryError(f"family {family.name} has no representatives at n={n}")

    # l' tables, one per Y representative
    lp: list[Counter] = []
    mp = None
    for y0 in ys:
        table: Counter = Counter()
        cnt = 0
        for x in family.related_x(y0):
            cnt += 1
            table.update(_diff(x, y0))
        lp.append(table)
        mp = cnt if mp is None else min(mp, cnt)

    work = []
    m = None
    for x0 in xs:
        related = []
        lx: Counter = Counter()
        for y in family.related_y(x0):
            d = _diff(x0, y)
            lx.update(d)
            related.append((y, d))
        work.append((lx, related))
        m = len(related) if m is None else min(m, len(related))
    if not m or not mp:
        raise AdversaryError("some representative has no related partner")

    lmax = 0
    v = Fraction(0)
    for lx, related in work:
        for y, d in related:
            j, perm = family.y_orbit(y)
            table = lp[j]
            for i in d:
                u, w = index_pair(i, n)
                a = lx[i]
                b = table[pair_index(perm[u], perm[w], n)]
                lmax = max(lmax, a * b)
                v = max(v, min(Fraction(a, m), Fraction(b, mp)))
    return _finish(m, mp, lmax, v)


# 2-edge swap --------------------------------------------------------------

def two_edge_swaps(g: Graph) -> Iterator[Graph]:
    """Graphs obtained by replacing edges ab, cd (with a, b, c, d spanning only
    those two edges) by ac, bd or by ad, bc."""
    rows = g.rows
    edges = g.edges()
    for k, (a, b) in enumerate(edges):
        for c, d in edges[k + 1:]:
            if len({a, b, c, d}) < 4:
                continue
            quad = (1 << a) | (1 << b) | (1 << c) | (1 << d)
            if rows[a] & quad != 1 << b or rows[b] & quad != 1 << a:
                continue
            if rows[c] & quad != 1 << d or rows[d] & quad != 1 << c:
                continue
            for (p, q), (r, s) in (((a, c), (b, d)), ((a, d), (b, c))):
                new = list(rows)
                new[a] &= ~(1 << b)
                new[b] &= ~(1 << a)
                new[c] &= ~(1 << d)
                new[d] &= ~(1 << c)
                new[p] |= 1 << q
                new[q] |= 1 << p
                new[r] |= 1 << s
                new[s] |= 1 << r
                yield Graph(g.n, tuple(new))


def _swap_related(g: Graph, h: Graph) -> bool:
    if g.m != h.m:
        return False
    only_g = g.edge_mask() & ~h.edge_mask()
    only_h = h.edge_mask() & ~g.edge_mask()
    if bin(only_g).count("1") != 2 or bin(only_h).count("1") != 2:
        return False
    n = g.n
    (a, b), (c, d) = (index_pair(i, n) for i in bits(only_g))
    if len({a, b, c, d}) < 4:
        return False
    added = {index_pair(i, n) for i in bits(only_h)}
    return any(added == {tuple(sorted(p)), tuple(sorted(q))}
               for p, q in (((a, c), (b, d)), ((a, d), (b, c))))


# forest family: Hamiltonian path vs cycle + path ------------------------------------

def _max2_parts(g: Graph) -> Optional[list[tuple[bool, int, list[int]]]]:
    """Components of a max-degree-2 graph as (is_cycle, size, vertices in walk order)."""
    rows = g.rows
    if any(r.bit_count() > 2 for r in rows):
        return None
    seen = 0
    parts = []
    # paths first, walked from their smaller endpoint
    for s in range(g.n):
        if (seen >> s) & 1 or rows[s].bit_count() == 2:
            continue
        walk = [s]
        seen |= 1 << s
        prev, cur = -1, s
        while True:
            nxt = [w for w in bits(rows[cur]) if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            walk.append(cur)
            seen |= 1 << cur
        parts.append((False, len(walk), walk))
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        first = min(bits(rows[s]))
        walk = [s]
        seen |= 1 << s
        prev, cur = s, first
        while cur != s:
            walk.append(cur)
            seen |= 1 << cur
            nxt = [w for w in bits(rows[cur]) if w != prev]
            prev, cur = cur, nxt[0]
        parts.append((True, len(walk), walk))
    return parts


def is_hamiltonian_path(g: Graph) -> bool:
    parts = _max2_parts(g)
    return parts is not None and len(parts) == 1 and not parts[0][0]


def cycle_path_split(g: Graph) -> Optional[tuple[int, int]]:
    """(cycle size, path size) if g is one cycle plus one path, else None."""
    parts = _max2_parts(g)
    if parts is None or len(parts) != 2:
        return None
    cyc = [p for p in parts if p[0]]
    pth = [p for p in parts if not p[0]]
    if len(cyc) != 1 or len(pth) != 1:
        return None
    return cyc[0][1], pth[0][1]


def forest_splits(n: int) -> list[tuple[int, int]]:
    return [(c, n - c) for c in range(3, n) if 3 * c > n and 3 * (n - c) > n]


def cycle_plus_path(c: int, p: int) -> Graph:
    edges = cycle_graph(c).edges() + [(c + i, c + i + 1) for i in range(p - 1)]
    return Graph.from_edges(c + p, edges)


def family_forest(n: int | None = None) -> RelationFamily:
    """Hamiltonian paths (forests) against one cycle plus one path, both parts > n/3."""
    if n is not None and n < 9:
        raise AdversaryError("the forest family needs n >= 9")

    def in_y(g: Graph) -> bool:
        s = cycle_path_split(g)
        return s is not None and 3 * s[0] > g.n and 3 * s[1] > g.n

    def xreps(k: int) -> list[Graph]:
        return [Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])] if k >= 9 else []

    def yreps(k: int) -> list[Graph]:
        return [cycle_plus_path(c, p) for c, p in forest_splits(k)] if k >= 9 else []

    def related_y(x: Graph) -> Iterator[Graph]:
        return (y for y in two_edge_swaps(x) if in_y(y))

    def related_x(y: Graph) -> Iterator[Graph]:
        return (x for x in two_edge_swaps(y) if is_hamiltonian_path(x))

    def y_orbit(y: Graph):
        parts = _max2_parts(y)
        cyc = next(p for p in parts if p[0])
        pth = next(p for p in parts if not p[0])
        c = cyc[1]
        perm = [0] * y.n
        for i, w in enumerate(cyc[2] + pth[2]):
            perm[w] = i
        return forest_splits(y.n).index((c, y.n - c)), perm

    def relates(x: Graph, y: Graph) -> bool:
        return is_hamiltonian_path(x) and in_y(y) and _swap_related(x, y)

    return RelationFamily("forest", xreps, yreps, related_y, related_x, y_orbit, relates,
                          n=n, swap=True, params={"cycle_path": True})


# subgraph family: empty graph vs one K_d ----------------------------------------

def family_subgraphlb(n: int | None, d: int) -> RelationFamily:
    """The empty graph against every placement of a single K_d; all pairs related."""
    if d < 2:
        raise AdversaryError("d must be at least 2")
    if n is not None and n < d:
        raise AdversaryError(f"need n >= d, got n={n}, d={d}")

    def clique_on(k: int, S: Sequence[int]) -> Graph:
        return Graph.from_edges(k, combinations(S, 2))

    def xreps(k: int) -> list[Graph]:
        return [Graph.empty(k)] if k >= d else []

    def yreps(k: int) -> list[Graph]:
        return [clique_on(k, range(d))] if k >= d else []

    def related_y(x: Graph) -> Iterator[Graph]:
        return (clique_on(x.n, S) for S in combinations(range(x.n), d))

    def related_x(y: Graph) -> Iterator[Graph]:
        yield Graph.empty(y.n)

    def y_orbit(y: Graph):
        S = [u for u in range(y.n) if y.rows[u]]
        rest = [u for u in range(y.n) if not y.rows[u]]
        perm = [0] * y.n
        for i, u in enumerate(S + rest):
            perm[u] = i
        return 0, perm

    def relates(x: Graph, y: Graph) -> bool:
        return True

    return RelationFamily(f"subgraphlb-d{d}", xreps, yreps, related_y, related_x, y_orbit,
                          relates, n=n, params={"d": d})


def family_single_pair(n: int | None = None) -> RelationFamily:
    """Empty graph against the complete graph: one related pair at every size."""

    def xreps(k):
        return [Graph.empty(k)] if k >= 2 else []

    def yreps(k):
        return [Graph.from_edges(k, combinations(range(k), 2))] if k >= 2 else []

    return RelationFamily(
        "single-pair", xreps, yreps,
        related_y=lambda x: iter(yreps(x.n)),
        related_x=lambda y: iter(xreps(y.n)),
        y_orbit=lambda y: (0, list(range(y.n))),
        relates=lambda x, y: True,
        n=n)


# the general construction around an edge of G ---------------------------------------

def _hang_paths(G: Graph, e: tuple[int, int], a: int, b: int) -> Graph:
    u, v = e
    edges = [f for f in G.edges() if f != e]
    nxt = G.n
    for root, length in ((u, a), (v, b)):
        prev = root
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def _subdivide_plus_path(G: Graph, e: tuple[int, int], s: int, p: int) -> Graph:
    u, v = e
    edges = [f for f in G.edges() if f != e]
    chain = [u] + list(range(G.n, G.n + s)) + [v]
    edges += list(zip(chain, chain[1:]))
    start = G.n + s
    edges += [(start + i, start + i + 1) for i in range(p - 1)]
    return Graph.from_edges(G.n + s + p, edges)


def mainlb_representatives(G: Graph, e: Sequence[int], n: int) -> tuple[list[Graph], list[Graph]]:
    """Canonical X and Y representatives (deduplicated, in canonical-form order)."""
    e = check_edge(G, e)
    k = G.n
    extra = n - k
    xs: dict[bytes, Graph] = {}
    ys: dict[bytes, Graph] = {}
    if extra < 0:
        return [], []
    for a in range(extra + 1):
        b = extra - a
        if 3 * a >= n and 3 * b >= n:
            g = _hang_paths(G, e, a, b)
            xs.setdefault(canonical_form(g), canonical_graph(g))
    for s in range(extra + 1):
        p = extra - s
        if 3 * (k + s) > n and 3 * p > n:
            g = _subdivide_plus_path(G, e, s, p)
            ys.setdefault(canonical_form(g), canonical_graph(g))
    return [xs[f] for f in sorted(xs)], [ys[f] for f in sorted(ys)]


def _signature(g: Graph) -> tuple:
    return g.m, tuple(sorted(g.degrees()))


def family_mainlb(G: Graph, e: Sequence[int], n: int | None = None) -> RelationFamily:
    """G minus e with pendant paths at both ends of e, against G with e subdivided
    plus a disjoint path; the relation is the 2-edge swap between the two sets."""
    e = check_edge(G, e)
    if n is not None:
        xs, ys = mainlb_representatives(G, e, n)
        if not xs or not ys:
            raise AdversaryError(f"n={n} is too small for a graph on {G.n} vertices")

    cache: dict[int, tuple] = {}

    def tables(k: int):
        if k not in cache:
            xs, ys = mainlb_representatives(G, e, k)
            xf = {canonical_form(g) for g in xs}
            yf = {canonical_form(g): j for j, g in enumerate(ys)}
            cache[k] = (xs, ys, xf, yf, {_signature(g) for g in xs}, {_signature(g) for g in ys})
        return cache[k]

    def in_x(g: Graph) -> bool:
        _, _, xf, _, xsig, _ = tables(g.n)
        return _signature(g) in xsig and canonical_form(g) in xf

    def in_y(g: Graph) -> bool:
        _, _, _, yf, _, ysig = tables(g.n)
        return _signature(g) in ysig and canonical_form(g) in yf

    def related_y(x: Graph) -> Iterator[Graph]:
        return (y for y in two_edge_swaps(x) if in_y(y))

    def related_x(y: Graph) -> Iterator[Graph]:
        return (x for x in two_edge_swaps(y) if in_x(x))

    def y_orbit(y: Graph):
        _, ys, _, yf, _, _ = tables(y.n)
        j = yf[canonical_form(y)]
        return j, find_isomorphism(y, ys[j])

    def relates(x: Graph, y: Graph) -> bool:
        return in_x(x) and in_y(y) and _swap_related(x, y)

    return RelationFamily(
        "mainlb", lambda k: tables(k)[0], lambda k: tables(k)[1],
        related_y, related_x, y_orbit, relates, n=n, swap=True,
        params={"G": G.edges(), "G_n": G.n, "edge": list(e)})


# scaling -----------------------------------------------------------------------

@dataclass(frozen=True)
class ScalingFit:
    slope: float
    residual: float  # standard error of the slope
    n_values: tuple[int, ...]
    bounds: tuple[float, ...]

    def to_json(self) -> dict:
        return {"slope": self.slope, "residual": self.residual,
                "n_values": list(self.n_values), "bounds": list(self.bounds)}


def scaling_fit(family: RelationFamily, n_values: Sequence[int],
                method: Callable[[RelationFamily, int], AdversaryQuantities] = quantities_symmetric) -> ScalingFit:
    """Least-squares slope of log(quantum bound) against log(n)."""
    ns = [int(k) for k in n_values]
    if len(ns) < 4:
        raise AdversaryError("scaling_fit needs at least 4 sizes")
    bounds = [method(family, k).quantum_bound for k in ns]
    xs = np.log(np.array(ns, dtype=float))
    ys = np.log(np.array(bounds))
    slope, icept = np.polyfit(xs, ys, 1)
    res = ys - (slope * xs + icept)
    spread = float(np.sum((xs - xs.mean()) ** 2))
    stderr = math.sqrt(float(np.sum(res ** 2)) / (len(xs) - 2) / spread)
    return ScalingFit(float(slope), stderr, tuple(ns), tuple(bounds))


FAMILIES = ("forest", "subgraphlb", "mainlb", "single-pair")


def build_family(name: str, *, n: int | None = None, d: int = 3,
                 G: Graph | None = None, edge: Sequence[int] | None = None) -> RelationFamily:
    if name == "forest":
        return family_forest(n)
    if name == "subgraphlb":
        return family_subgraphlb(n, d)
    if name == "single-pair":
        return family_single_pair(n)
    if name == "mainlb":
        if G is None:
            raise AdversaryError("mainlb needs a graph G")
        return family_mainlb(G, edge if edge is not None else G.edges()[0], n)
    raise AdversaryError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
