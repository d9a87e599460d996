"""Classical reference for the walk-based subgraph detectors.

Adjacency is only available through :class:`OracleGraph`, which counts
probes. The pipelines pay for a full probe sweep (the classical stand-in for
quantum counting and search) and then run the same marked-state predicates a
walk would evaluate: a stored tuple of vertices with complete neighbour
lists, optionally second-neighbour colour flags, optionally the path checks.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .canonical import find_isomorphism
from .containment import is_vertex_cover
from .graph import Graph, GraphError, cycle_graph, delete_pendant_vertices, path_graph
from .walk_cost import path_positions

MODES = ("basic", "dangling", "paths", "fourcycle")


class DetectorError(ValueError):
    """Mode and pattern do not fit, or a predicate's precondition is violated."""


# oracle access ----------------------------------------------------------------

class OracleGraph:
    """A hidden graph that can only be read one pair at a time."""

    def __init__(self, hidden: Graph):
        self._hidden = hidden
        self._count = 0
        self._log: dict[tuple[int, int], bool] = {}
        self._lock = threading.Lock()

    @property
    def n(self) -> int:
        return self._hidden.n

    @property
    def probe_count(self) -> int:
        return self._count

    def probe(self, u: int, v: int) -> bool:
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise GraphError(f"bad probe ({u}, {v})")
        key = (u, v) if u < v else (v, u)
        answer = self._hidden.has_edge(u, v)
        with self._lock:
            self._count += 1
            self._log[key] = answer
        return answer

    def recorded(self, u: int, v: int) -> Optional[bool]:
        """Answer of an earlier probe of {u, v}, or None if it was never probed."""
        return self._log.get((u, v) if u < v else (v, u))


class ProbeCache:
    """Forwards each pair to the oracle once and remembers the answer."""

    def __init__(self, oracle: OracleGraph):
        self.oracle = oracle
        self._known: dict[tuple[int, int], bool] = {}

    @property
    def n(self) -> int:
        return self.oracle.n

    def probe(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        ans = self._known.get(key)
        if ans is None:
            ans = self._known[key] = self.oracle.probe(u, v)
        return ans


def probe_neighbors(G, v: int) -> list[int]:
    return [w for w in range(G.n) if w != v and G.probe(v, w)]


def sweep(G) -> list[frozenset[int]]:
    """Neighbour sets of every vertex from probing all pairs once."""
    nbrs: list[set[int]] = [set() for _ in range(G.n)]
    for u, v in combinations(range(G.n), 2):
        if G.probe(u, v):
            nbrs[u].add(v)
            nbrs[v].add(u)
    return [frozenset(s) for s in nbrs]


# degree buckets -----------------------------------------------------------------

def bucket_keys(n: int) -> list[int]:
    """q = 2, 4, 8, ... as long as the interval [q/2, 2q] can hold a degree <= n - 1."""
    out = []
    q = 2
    while q // 2 <= max(n - 1, 1):
        out.append(q)
        q *= 2
    return out


def bucket_interval(q: int) -> tuple[int, int]:
    return q // 2, 2 * q


def bucket_key(d: int) -> int:
    """The smallest bucket whose interval holds degree d >= 1."""
    if d < 1:
        raise ValueError("isolated vertices belong to no bucket")
    q = 2
    while 2 * q < d:
        q *= 2
    return q


def degree_buckets(G, nbrs: Optional[Sequence[frozenset]] = None) -> dict[int, list[int]]:
    """Overlapping buckets q -> vertices whose degree lies in [q/2, 2q]."""
    if nbrs is None:
        nbrs = sweep(G)
    out = {}
    for q in bucket_keys(G.n):
        lo, hi = bucket_interval(q)
        out[q] = [v for v in range(G.n) if lo <= len(nbrs[v]) <= hi]
    return out


# stored state and colours -----------------------------------------------------------

@dataclass(frozen=True)
class ColorAssignment:
    labels: tuple[int, ...]  # labels[v] in 1..num_labels
    num_labels: int

    @classmethod
    def draw(cls, n: int, num_labels: int, rng: np.random.Generator) -> "ColorAssignment":
        return cls(tuple(int(x) for x in rng.integers(1, num_labels + 1, size=n)), num_labels)


@dataclass
class TupleState:
    n: int
    vertices: tuple[int, ...]
    neighbors: dict[int, frozenset[int]]
    # flags[s][(x, j)] = smallest neighbour of x with label j, for x adjacent to s
    flags: Optional[dict[int, dict[tuple[int, int], int]]] = None

    def require_complete(self):
        for v in self.vertices:
            if v not in self.neighbors:
                raise DetectorError(f"no neighbour list stored for vertex {v}")


def build_state(G, vertices: Sequence[int], colors: Optional[ColorAssignment] = None,
                nbrs: Optional[Sequence[frozenset]] = None) -> TupleState:
    """Store ``vertices`` with their neighbour lists (and colour flags when given).

    With ``nbrs`` (a finished sweep) no probes are spent.
    """
    def N(v):
        return nbrs[v] if nbrs is not None else frozenset(probe_neighbors(G, v))

    vertices = tuple(vertices)
    neighbors = {v: N(v) for v in vertices}
    flags = None
    if colors is not None:
        flags = {}
        for s in vertices:
            table = {}
            for x in sorted(neighbors[s]):
                for y in sorted(N(x)):
                    table.setdefault((x, colors.labels[y]), y)
            flags[s] = table
    return TupleState(G.n, vertices, neighbors, flags)


# patterns -------------------------------------------------------------------------

@dataclass(frozen=True)
class Pattern:
    """What a mode stores and recognises for a pattern H.

    ``core`` is the part found through stored neighbour lists, ``kept[i]`` the
    H vertex of core vertex i; each leaf is (H vertex, H attach vertex) and
    gets label ``j + 1`` by position. ``covers`` are the admissible stored
    sets (core vertex tuples); ``free_edges`` allows core edges between two
    unstored vertices, checked with a probe (the 3-path check).
    """

    H: Graph
    core: Graph
    kept: tuple[int, ...]
    leaves: tuple[tuple[int, int], ...]
    covers: tuple[tuple[int, ...], ...]
    free_edges: bool = False

    @property
    def ell(self) -> int:
        return len(self.leaves)

    @property
    def slots(self) -> int:
        return min(len(c) for c in self.covers)


def minimal_covers(H: Graph, must: int = 0) -> list[tuple[int, ...]]:
    """Inclusion-minimal vertex covers of H that contain the vertex set ``must``
    (a bitmask), ordered by size and then lexicographically."""
    found: list[int] = []
    for size in range(H.n + 1):
        for C in combinations(range(H.n), size):
            mask = sum(1 << v for v in C)
            if mask & must != must or any(f & mask == f for f in found):
                continue
            if is_vertex_cover(H, C):
                found.append(mask)
    return [tuple(v for v in range(H.n) if (f >> v) & 1) for f in found]


@lru_cache(maxsize=256)
def basic_pattern(H: Graph) -> Pattern:
    covers = tuple(c for c in minimal_covers(H) if c) or ((),)
    return Pattern(H, H, tuple(range(H.n)), (), covers)


@lru_cache(maxsize=256)
def dangling_pattern(H: Graph) -> Pattern:
    core, kept = delete_pendant_vertices(H)
    kept_set = set(kept)
    leaves = tuple((v, H.neighbors(v)[0]) for v in range(H.n) if v not in kept_set)
    if not leaves:
        return basic_pattern(H)
    index = {v: i for i, v in enumerate(kept)}
    # a core vertex that only carries leaves has to be stored itself
    must = 0
    for _, a in leaves:
        if core.degree(index[a]) == 0:
            must |= 1 << index[a]
    covers = minimal_covers(core, must)
    return Pattern(H, core, tuple(kept), leaves, tuple(covers))


@lru_cache(maxsize=64)
def path_pattern(k: int) -> Pattern:
    """k-path w_0..w_k with w_0, w_k as leaves and w_1..w_{k-1} the core."""
    if k <= 6 or k == 8:
        return dangling_pattern(path_graph(k))
    H = path_graph(k)
    core = path_graph(k - 2)
    kept = tuple(range(1, k))
    stored = tuple(p - 1 for p in path_positions(k))
    return Pattern(H, core, kept, ((0, 1), (k, k - 1)), (stored,), free_edges=True)


def color_rounds(H: Graph, target_confidence: float, ell: Optional[int] = None) -> int:
    """Smallest r with 1 - (1 - (ell+1)^-|V(H)|)^r >= target_confidence."""
    if not 0 < target_confidence < 1:
        raise ValueError("target confidence must lie strictly between 0 and 1")
    if ell is None:
        ell = dangling_pattern(H).ell
    if ell == 0:
        return 1
    p = (ell + 1) ** (-H.n)

    def reached(r):
        return -math.expm1(r * math.log1p(-p)) >= target_confidence

    r = max(1, math.ceil(math.log1p(-target_confidence) / math.log1p(-p)))
    while not reached(r):
        r += 1
    while r > 1 and reached(r - 1):
        r -= 1
    return r


# predicates -------------------------------------------------------------------------

def _embeddings(state: TupleState, pat: Pattern, probe: Optional[Callable[[int, int], bool]],
                core_ok: Optional[Callable[[int], bool]] = None) -> Iterator[tuple[int, list[int]]]:
    """Core embeddings certified by the stored state, as (cover index, map).

    Order: covers in order, cover images in lexicographic order of the
    assignment, then the remaining core vertices in increasing candidate order.
    """
    core = pat.core
    stored = sorted(state.vertices)
    rows = [set(core.neighbors(v)) for v in range(core.n)]
    for ci, cover in enumerate(pat.covers):
        if len(cover) > len(stored):
            continue
        cset = set(cover)
        rest = [v for v in range(core.n) if v not in cset]
        for img in permutations(stored, len(cover)):
            if core_ok is not None and not all(core_ok(x) for x in img):
                continue
            phi = [-1] * core.n
            for c, x in zip(cover, img):
                phi[c] = x
            if any(phi[b] not in state.neighbors[phi[a]]
                   for a in cover for b in rows[a] if b in cset):
                continue
            used = set(img)
            yield from ((ci, list(m)) for m in _extend(state, rows, cset, rest, 0, phi, used,
                                                        probe, core_ok, pat.free_edges))


def _extend(state, rows, cset, rest, i, phi, used, probe, core_ok, free_edges):
    if i == len(rest):
        yield tuple(phi)
        return
    w = rest[i]
    anchors = [phi[a] for a in rows[w] if a in cset]
    if anchors:
        cand = set(state.neighbors[anchors[0]])
        for x in anchors[1:]:
            cand &= state.neighbors[x]
    else:
        cand = set(range(state.n))
    loose = [phi[a] for a in rows[w] if a not in cset and phi[a] >= 0]
    if loose and not free_edges:
        raise DetectorError("pattern has an edge between two unstored vertices")
    for x in sorted(cand - used):
        if core_ok is not None and not core_ok(x):
            continue
        if loose and not all(probe(x, y) for y in loose):
            continue
        phi[w] = x
        used.add(x)
        yield from _extend(state, rows, cset, rest, i + 1, phi, used, probe, core_ok, free_edges)
        used.discard(x)
        phi[w] = -1


def _leaf_image(state: TupleState, x: int, j: int) -> Optional[int]:
    """Smallest neighbour of x with label j, read from stored lists or flags."""
    if x in state.neighbors:
        raise AssertionError("stored vertices are handled by the caller")
    if state.flags is None:
        raise DetectorError("colour flags are missing from the state")
    for s in sorted(state.vertices):
        if x in state.neighbors[s]:
            return state.flags[s].get((x, j))
    raise DetectorError(f"vertex {x} is not adjacent to any stored vertex")


def _full_map(pat: Pattern, phi_core: Sequence[int], leaf_imgs: Sequence[int]) -> list[int]:
    out = [-1] * pat.H.n
    for i, v in enumerate(pat.kept):
        out[v] = phi_core[i]
    for (leaf, _), y in zip(pat.leaves, leaf_imgs):
        out[leaf] = y
    return out


def _recognise(state: TupleState, pat: Pattern, colors: Optional[ColorAssignment],
               probe=None) -> Optional[list[int]]:
    state.require_complete()
    if pat.ell and colors is None:
        raise DetectorError("a pattern with leaves needs a colour assignment")
    top = pat.ell + 1
    core_ok = (lambda x: colors.labels[x] == top) if pat.ell else None
    index = {v: i for i, v in enumerate(pat.kept)}
    for _, phi in _embeddings(state, pat, probe, core_ok):
        imgs = []
        for j, (_, a) in enumerate(pat.leaves, start=1):
            x = phi[index[a]]
            if x in state.neighbors:
                y = next((y for y in sorted(state.neighbors[x]) if colors.labels[y] == j), None)
            else:
                y = _leaf_image(state, x, j)
            if y is None:
                break
            imgs.append(y)
        else:
            return _full_map(pat, phi, imgs)
    return None


def marked_predicate(state: TupleState, H: Graph) -> Optional[list[int]]:
    """A copy of H whose cover lies in the stored vertices, certified by the
    stored neighbour lists alone (no probes). Returns the map H -> G."""
    if H.m == 0:
        return list(range(H.n)) if H.n <= state.n else None
    return _recognise(state, basic_pattern(H), None)


def marked_predicate_dangling(state: TupleState, H: Graph, colors: ColorAssignment) -> Optional[list[int]]:
    """Like :func:`marked_predicate` for H with its pendant vertices removed;
    each pendant vertex is found as a (second) neighbour carrying its label."""
    pat = dangling_pattern(H)
    if pat.ell and colors.num_labels != pat.ell + 1:
        raise DetectorError(f"expected {pat.ell + 1} labels, got {colors.num_labels}")
    return _recognise(state, pat, colors if pat.ell else None)


def marked_predicate_paths(state: TupleState, k: int, colors: ColorAssignment, G) -> Optional[list[int]]:
    """k-path recognition from the stored positions; gaps of three are closed
    with the 3-path check, which probes ``G``."""
    pat = path_pattern(k)
    return _recognise(state, pat, colors if pat.ell else None, probe=G.probe)


def check_3path(u: int, v: int, state: TupleState, G) -> bool:
    """Is some stored neighbour of u adjacent to some stored neighbour of v?

    Neighbours equal to u or v are skipped, so a hit is a simple path u-a-b-v.
    """
    for a in sorted(state.neighbors[u]):
        if a == v:
            continue
        for b in sorted(state.neighbors[v]):
            if b == u or b == a:
                continue
            if G.probe(a, b):
                return True
    return False


def _two_neighbours(v: int, state: TupleState, G) -> Optional[tuple[int, int, int]]:
    nb = sorted(state.neighbors[v])
    for w in range(state.n):
        if w == v:
            continue
        hits = []
        for a in nb:
            if a != w and G.probe(w, a):
                hits.append(a)
                if len(hits) == 2:
                    return w, hits[0], hits[1]
    return None


def check_adjacent_to_two(v: int, state: TupleState, G) -> bool:
    """Is some vertex other than v adjacent to two stored neighbours of v?"""
    return _two_neighbours(v, state, G) is not None


# pipelines --------------------------------------------------------------------------

@dataclass
class DetectionResult:
    found: bool
    witness: Optional[list[int]]
    probes: int
    rounds: int
    mode: str
    gated: bool = False
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"found": self.found, "witness": self.witness, "probes": self.probes,
                "rounds": self.rounds, "mode": self.mode, "gated": self.gated}


def replay(witness: Sequence[int], H: Graph, oracle: OracleGraph) -> bool:
    """Check a witness using only answers the oracle has already given."""
    if len(witness) != H.n or len(set(witness)) != H.n:
        return False
    if any(not 0 <= x < oracle.n for x in witness):
        return False
    return all(oracle.recorded(witness[u], witness[v]) is True for u, v in H.edges())


def _tuples(nbrs: Sequence[frozenset], size: int) -> list[tuple[int, ...]]:
    """Stored tuples in bucket order: by the sorted vector of bucket keys, then lexicographically."""
    active = [v for v in range(len(nbrs)) if nbrs[v]]
    combos = list(combinations(active, size))
    combos.sort(key=lambda S: (tuple(sorted(bucket_key(len(nbrs[v])) for v in S)), S))
    return combos


def _as_path(H: Graph) -> tuple[int, list[int]]:
    k = H.m
    if not H.is_path_graph() or H.n != k + 1:
        raise DetectorError("paths mode needs H to be a path")
    iso = find_isomorphism(H, path_graph(k))
    return k, iso


def _check_mode(H: Graph, mode: str):
    if mode not in MODES:
        raise DetectorError(f"unknown mode {mode!r}; choose from {', '.join(MODES)}")
    if mode == "paths":
        _as_path(H)
    if mode == "fourcycle" and find_isomorphism(H, cycle_graph(4)) is None:
        raise DetectorError("fourcycle mode needs H = C_4")


def gate_threshold(mode: str, n: int, c: float) -> float:
    if mode == "fourcycle":
        return c * n ** 1.5
    return 2 * c * n


def detect_subgraph(G: OracleGraph, H: Graph, mode: str = "basic", *, seed: int = 0,
                    confidence: float = 0.9, c: float = 1.0,
                    rng: Optional[np.random.Generator] = None) -> DetectionResult:
    """Decide "more than the gate's edge count, or contains H" with a witness when found."""
    _check_mode(H, mode)
    if rng is None:
        rng = np.random.default_rng(seed)
    n = G.n
    if H.n > n:
        return DetectionResult(False, None, G.probe_count, 0, mode, notes=["pattern larger than host"])
    if H.m == 0:
        return DetectionResult(True, list(range(H.n)), G.probe_count, 0, mode)

    cache = ProbeCache(G)
    nbrs = sweep(cache)
    m = sum(len(s) for s in nbrs) // 2
    if m > gate_threshold(mode, n, c):
        return DetectionResult(True, None, G.probe_count, 0, mode, gated=True,
                               notes=[f"{m} edges exceed the gate"])

    if mode == "fourcycle":
        return _detect_fourcycle(G, cache, nbrs, H)
    if mode == "basic":
        pat = basic_pattern(H)
        to_H = None
    elif mode == "dangling":
        pat = dangling_pattern(H)
        to_H = None
    else:
        k, iso = _as_path(H)
        pat = path_pattern(k)
        to_H = iso

    def finish(phi, rounds):
        if phi is not None and to_H is not None:
            phi = [phi[to_H[u]] for u in range(H.n)]
        return DetectionResult(phi is not None, phi, G.probe_count, rounds, mode)

    if pat.ell == 0:
        for S in _tuples(nbrs, pat.slots):
            phi = _recognise(build_state(cache, S, nbrs=nbrs), pat, None, cache.probe)
            if phi is not None:
                return finish(phi, 1)
        return finish(None, 1)

    table = _core_table(cache, nbrs, pat)
    rounds = color_rounds(pat.H, confidence, pat.ell)
    A = np.zeros((n, n), dtype=np.int32)
    for v in range(n):
        A[v, list(nbrs[v])] = 1
    for r in range(1, rounds + 1):
        labels = rng.integers(1, pat.ell + 2, size=n)
        phi = _first_colored(table, pat, labels, A)
        if phi is not None:
            return finish(phi, r)
    return finish(None, rounds)


def _core_table(cache, nbrs, pat: Pattern) -> np.ndarray:
    """Every certified core embedding, in the order the predicates visit them."""
    rows = []
    for S in _tuples(nbrs, pat.slots):
        state = build_state(cache, S, nbrs=nbrs)
        rows.extend(phi for _, phi in _embeddings(state, pat, cache.probe))
    if not rows:
        return np.zeros((0, pat.core.n), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def _first_colored(table: np.ndarray, pat: Pattern, labels: np.ndarray, A: np.ndarray) -> Optional[list[int]]:
    if table.shape[0] == 0:
        return None
    top = pat.ell + 1
    ok = (labels[table] == top).all(axis=1)
    onehot = (labels[:, None] == np.arange(1, pat.ell + 1)[None, :]).astype(np.int32)
    has = (A @ onehot) > 0
    index = {v: i for i, v in enumerate(pat.kept)}
    for j, (_, a) in enumerate(pat.leaves):
        ok &= has[table[:, index[a]], j]
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    phi = [int(x) for x in table[hits[0]]]
    imgs = []
    for j, (_, a) in enumerate(pat.leaves, start=1):
        x = phi[index[a]]
        imgs.append(int(np.flatnonzero((A[x] > 0) & (labels == j))[0]))
    return _full_map(pat, phi, imgs)


def _detect_fourcycle(G: OracleGraph, cache: ProbeCache, nbrs, H: Graph) -> DetectionResult:
    iso = find_isomorphism(H, cycle_graph(4))
    for (v,) in _tuples(nbrs, 1):
        state = build_state(cache, (v,), nbrs=nbrs)
        hit = _two_neighbours(v, state, cache)
        if hit is not None:
            w, a, b = hit
            phi = [v, a, w, b]  # around cycle_graph(4): 0-1-2-3-0
            return DetectionResult(True, [phi[iso[u]] for u in range(H.n)], G.probe_count, 1, "fourcycle")
    return DetectionResult(False, None, G.probe_count, 1, "fourcycle")
