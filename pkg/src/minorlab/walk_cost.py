"""Query-cost model for quantum-walk subgraph detection.

Costs are evaluated as plain floating-point formulas. Polylog factors and
O-constants are dropped; only the polynomial growth is meant to be read off,
which :func:`fit_exponent` does by a log-log least-squares fit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Optional, Sequence

import numpy as np

from .containment import vertex_cover_number
from .graph import Graph, complete_bipartite, cycle_graph, delete_pendant_vertices, path_graph


class PlanError(ValueError):
    """Inputs for which no plan is defined."""


@dataclass(frozen=True)
class DegreeBucket:
    q: float      # degree scale: vertices with degree in [q/2, 2q]
    t: float      # number of such vertices
    k: int        # stored tuple length
    alpha: int    # walk steps per move

    def to_json(self) -> dict:
        return {"q": self.q, "t": self.t, "k": self.k, "alpha": self.alpha}


@dataclass(frozen=True)
class WalkPlan:
    name: str
    n: float
    buckets: tuple[DegreeBucket, ...]
    vc_target: int
    checking: str
    sparsity_bound: float

    def to_json(self) -> dict:
        return {"name": self.name, "n": self.n, "vc_target": self.vc_target,
                "checking": self.checking, "sparsity_bound": self.sparsity_bound,
                "buckets": [b.to_json() for b in self.buckets]}


@dataclass(frozen=True)
class CostBreakdown:
    S: float
    U: float
    C: float
    delta: float
    eps: float
    total: float
    plan: Optional[WalkPlan] = None
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        out = {"S": self.S, "U": self.U, "C": self.C, "delta": self.delta,
               "eps": self.eps, "total": self.total}
        if self.plan is not None:
            out["plan"] = self.plan.to_json()
        if self.notes:
            out["notes"] = list(self.notes)
        return out


# spectral gaps ---------------------------------------------------------------

def hamming_gap(N: int, K: int) -> Fraction:
    """Gap of the walk on [N]^K that resamples one uniformly chosen coordinate."""
    if N < 2 or K < 1:
        raise ValueError("need N >= 2 and K >= 1")
    return Fraction(1, K)


def _second_gap(P: np.ndarray) -> float:
    ev = np.sort(np.linalg.eigvalsh(P))[::-1]
    return float(1.0 - ev[1])


def hamming_gap_numeric(N: int, K: int, max_states: int = 200) -> float:
    """Same gap from an explicit eigendecomposition (N**K states at most ``max_states``).

    One step picks a coordinate uniformly and replaces its symbol by a uniform
    symbol of [N] (possibly the same one), so each coordinate moves by the
    complete graph with loops.
    """
    if N < 2 or K < 1:
        raise ValueError("need N >= 2 and K >= 1")
    size = N ** K
    if size > max_states:
        raise ValueError(f"{size} states exceeds the cap of {max_states}")
    states = list(product(range(N), repeat=K))
    index = {s: i for i, s in enumerate(states)}
    P = np.zeros((size, size))
    for s in states:
        i = index[s]
        for c in range(K):
            for a in range(N):
                t = s[:c] + (a,) + s[c + 1:]
                P[i, index[t]] += 1.0 / (K * N)
    return _second_gap(P)


def johnson_gap(N: int, K: int) -> Fraction:
    """1 minus the second eigenvalue of the simple random walk on J(N, K)."""
    if not 1 <= K < N:
        raise ValueError("need 1 <= K < N")
    return Fraction(N, K * (N - K))


def johnson_gap_numeric(N: int, K: int, max_states: int = 2000) -> float:
    from itertools import combinations

    states = list(combinations(range(N), K))
    if len(states) > max_states:
        raise ValueError("too many states")
    index = {s: i for i, s in enumerate(states)}
    deg = K * (N - K)
    P = np.zeros((len(states), len(states)))
    for s in states:
        i = index[s]
        inside = set(s)
        for out_v in s:
            for in_v in range(N):
                if in_v in inside:
                    continue
                t = tuple(sorted((inside - {out_v}) | {in_v}))
                P[i, index[t]] += 1.0 / deg
    return _second_gap(P)


def product_gap(buckets: Sequence[DegreeBucket]) -> float:
    if not buckets:
        raise ValueError("no buckets")
    for b in buckets:
        if b.k < 1 or b.alpha < 1:
            raise ValueError("bucket sizes and step counts must be positive")
    return 1.0 - max((1.0 - 1.0 / b.k) ** b.alpha for b in buckets)


def mnrs_cost(S: float, U: float, C: float, delta: float, eps: float) -> float:
    if not (0 < delta <= 1) or not (0 < eps <= 1):
        raise ValueError(f"delta and eps must lie in (0, 1], got {delta}, {eps}")
    return S + (U / math.sqrt(delta) + C) / math.sqrt(eps)


# plans -------------------------------------------------------------------------

def effective_cover(H: Graph, dangling: bool) -> int:
    """Stored-vertex count for H (after pendant deletion when ``dangling``)."""
    if H.m == 0:
        raise PlanError("the pattern has no edges; detection is trivial")
    core = delete_pendant_vertices(H)[0] if dangling else H
    vc = vertex_cover_number(core)
    if vc == 0:
        # only a single centre survives (stars and short paths): store one vertex
        if not dangling:
            raise PlanError("vertex cover of an edgeless pattern is empty")
        vc = 1
    return vc


def _buckets(vc: int, n: float, t: Optional[Sequence[float]], mbar: float) -> list[DegreeBucket]:
    ts = sorted(float(x) for x in (t if t is not None else [n] * vc))
    if len(ts) != vc:
        raise PlanError(f"expected {vc} bucket counts, got {len(ts)}")
    if ts[0] < 1:
        raise PlanError("bucket counts must be at least 1")
    k1 = math.sqrt(ts[0]) * n ** (0.5 - 1.0 / (vc + 1))
    out = []
    for ti in ts:
        ratio = math.sqrt(ti / ts[0])
        out.append(DegreeBucket(q=mbar / ti, t=ti, k=math.ceil(k1 * ratio), alpha=math.ceil(ratio)))
    return out


def _eps(buckets: Sequence[DegreeBucket]) -> float:
    return math.prod(min(1.0, b.k / b.t) for b in buckets)


def _breakdown(name, n, buckets, vc, S, U, C, mbar, checking="0", notes=()) -> CostBreakdown:
    delta = product_gap(buckets)
    eps = _eps(buckets)
    plan = WalkPlan(name, n, tuple(buckets), vc, checking, mbar)
    return CostBreakdown(S, U, C, delta, eps, mnrs_cost(S, U, C, delta, eps), plan, tuple(notes))


def plan_vcbasic(H: Graph, n: float, t: Optional[Sequence[float]] = None, c: float = 1.0,
                 vc: Optional[int] = None) -> CostBreakdown:
    """Store one vertex per cover vertex of H, with neighbour lists."""
    vc = effective_cover(H, dangling=False) if vc is None else vc
    mbar = c * n
    bs = _buckets(vc, n, t, mbar)
    S = sum(b.k * n / math.sqrt(b.t) for b in bs)
    U = sum(b.alpha * n / math.sqrt(b.t) for b in bs)
    return _breakdown("vcbasic", n, bs, vc, S, U, 0.0, mbar)


def _dangling_terms(bs, n, c_dom: float) -> tuple[float, float, float, float]:
    base_S = sum(b.k * n / math.sqrt(b.t) for b in bs)
    base_U = sum(b.alpha * n / math.sqrt(b.t) for b in bs)
    extra_S = sum(b.k * math.sqrt(n * b.q) for b in bs)
    extra_U = sum(b.alpha * math.sqrt(n * b.q) for b in bs)
    # with t_i q_i <= c n the second-neighbour terms are within sqrt(c) of the base terms
    bound = math.sqrt(c_dom) * (1 + 1e-9)
    if extra_S > bound * base_S or extra_U > bound * base_U:
        raise AssertionError("second-neighbour surcharge is not dominated")
    return base_S, base_U, extra_S, extra_U


def plan_vcdangling(H: Graph, n: float, t: Optional[Sequence[float]] = None, c: float = 1.0) -> CostBreakdown:
    """Store a cover of H with pendant vertices removed; the pendant vertices are
    recognised through colour-coded second-neighbour flags."""
    vc = effective_cover(H, dangling=True)
    mbar = c * n
    bs = _buckets(vc, n, t, mbar)
    bS, bU, xS, xU = _dangling_terms(bs, n, c)
    return _breakdown("vcdangling", n, bs, vc, bS + xS, bU + xU, 0.0, mbar)


def path_exponent(k: int) -> Fraction:
    """Exponent of the k-path upper bound from the summary table."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k <= 4:
        return Fraction(1)
    if k <= 7:
        return Fraction(7, 6)
    if k <= 10:
        return Fraction(5, 4)
    return Fraction(3, 2) - Fraction(1, math.ceil(k / 2) - 1)


def path_exponent_alt(k: int) -> Fraction:
    """The other reading of the k > 10 exponent, 3/2 - 1/(ceil(k/2)+1); reported, never used."""
    return Fraction(3, 2) - Fraction(1, math.ceil(k / 2) + 1)


def path_positions(k: int) -> list[int]:
    """Stored positions along the core path w_1..w_{k-1} of a k-path (k = 7 or k >= 9)."""
    if k == 8 or k < 7:
        raise PlanError("the stored-position scheme covers k = 7 and k >= 9")
    return [p for p in (2, 5, 8) if p <= k - 1] + list(range(10, k, 2))


def plan_paths(k: int, n: float, t: Optional[Sequence[float]] = None, c: float = 1.0) -> CostBreakdown:
    if k < 1:
        raise PlanError("k must be at least 1")
    if k <= 6 or k == 8:
        out = plan_vcdangling(path_graph(k), n, t, c)
        return CostBreakdown(out.S, out.U, out.C, out.delta, out.eps, out.total,
                             WalkPlan(f"paths(k={k})/vcdangling", n, out.plan.buckets,
                                      out.plan.vc_target, "0", out.plan.sparsity_bound))
    ell = len(path_positions(k))
    mbar = c * n
    bs = _buckets(ell, n, t, mbar)
    bS, bU, xS, xU = _dangling_terms(bs, n, c)
    b = bs
    if k == 7:
        C = math.sqrt(b[0].k * b[0].q * b[1].k * b[1].q)
        checking = "sqrt(k1 q1 k2 q2)"
    else:
        C = math.sqrt(b[1].k * b[1].q) * (math.sqrt(b[0].k * b[0].q) + math.sqrt(b[2].k * b[2].q))
        checking = "sqrt(k2 q2) (sqrt(k1 q1) + sqrt(k3 q3))"
    notes = []
    if k > 10:
        notes.append(f"k={k}: exponent 3/2 - 1/(ceil(k/2)-1) = {float(path_exponent(k)):.6f}; "
                     f"the variant 3/2 - 1/(ceil(k/2)+1) = {float(path_exponent_alt(k)):.6f} is not used")
    out = _breakdown(f"paths(k={k})", n, bs, ell, bS + xS, bU + xU, C, mbar, checking, notes)
    if C / math.sqrt(out.eps) > out.total:
        raise AssertionError("checking term exceeds the total")
    return out


def plan_pseudosparse(H: Graph, n: float, mbar: float, t: Optional[Sequence[float]] = None) -> CostBreakdown:
    """The dangling plan on graphs with at most ``mbar`` edges: setup and update
    scale with sqrt(n * mbar) in place of n."""
    if mbar < n:
        raise PlanError("the edge budget must be at least n")
    vc = effective_cover(H, dangling=True)
    bs = _buckets(vc, n, t, mbar)
    scale = math.sqrt(n * mbar) / n
    # same shape as the dangling plan with its second-neighbour terms at budget n
    base_S = sum(b.k * n / math.sqrt(b.t) for b in bs)
    base_U = sum(b.alpha * n / math.sqrt(b.t) for b in bs)
    S = 2 * base_S * scale
    U = 2 * base_U * scale
    return _breakdown("pseudosparse", n, bs, vc, S, U, 0.0, mbar)


def plan_fourcycle(n: float, mbar: Optional[float] = None) -> CostBreakdown:
    """Grover search for a vertex with a second neighbour hit twice, worst case
    over degree scales q with q t <= mbar."""
    mbar = n ** 1.5 if mbar is None else mbar
    worst = None
    t = 1.0
    while t <= n:
        q = min(mbar / t, n)
        if q >= 1:
            find = n / math.sqrt(t)
            check = math.sqrt(n * q)
            S = U = find + check
            cost = mnrs_cost(S, U, check, 1.0, 1.0 / t)
            if worst is None or cost > worst[0]:
                bucket = DegreeBucket(q=q, t=t, k=1, alpha=1)
                worst = (cost, S, U, check, t, bucket)
        t *= 2
    cost, S, U, check, t, bucket = worst
    plan = WalkPlan("fourcycle", n, (bucket,), 1, "sqrt(n q)", mbar)
    return CostBreakdown(S, U, check, 1.0, 1.0 / t, cost, plan)


# thresholds and the sparse pipeline --------------------------------------------

def edge_threshold(kind: str, n: float, *, s: int = 2, t: int = 2, l: int = 2, c_param: float = 1.0) -> float:
    """Edge count above which the target subgraph is forced."""
    if kind == "kst":
        if not 1 <= s <= t or c_param <= 0:
            raise ValueError("kst needs 1 <= s <= t and c_param > 0")
        return c_param * n ** (2 - 1 / s)
    if kind in ("bs", "bondy-simonovits"):
        if l < 1:
            raise ValueError("bondy-simonovits needs l >= 1")
        return 100 * l * n ** (1 + 1 / l)
    raise ValueError(f"unknown threshold kind {kind!r}")


def bipartite_exponent(d: int) -> Fraction:
    return 2 - Fraction(1, d) - Fraction(2, d + 2)


def evencycle_exponent(l: int) -> Fraction:
    return Fraction(3, 2) - Fraction(l - 1, 2 * l * (l + 1))


def search_all_cost(N: float, K: int) -> float:
    """Queries to find every marked item among N when K are marked."""
    return math.sqrt(N * K) if K > 0 else math.sqrt(N)


def sparse_pipeline_cost(n: float, c: float) -> float:
    """Count edges against c n, then read every edge with a search over all pairs."""
    if c <= 0:
        raise ValueError("c must be positive")
    pairs = n * (n - 1) / 2
    detect = math.sqrt(n * n / (c * n))
    extract = math.sqrt(pairs * 2 * c * n)
    return detect + extract


# exponent fits ---------------------------------------------------------------------

DEFAULT_SIZES = tuple(2 ** j for j in range(10, 25))


@dataclass(frozen=True)
class Fit:
    slope: float
    residual: float  # standard error of the slope

    def to_json(self) -> dict:
        return {"slope": self.slope, "residual": self.residual}


def fit_exponent(cost: Callable[[float], float], n_values: Sequence[float] = DEFAULT_SIZES) -> Fit:
    ns = np.asarray(list(n_values), dtype=float)
    if len(ns) < 5 or np.log10(ns.max() / ns.min()) < 3:
        raise ValueError("need at least 5 sizes spanning 3 decades")
    ys = np.log([float(cost(x)) for x in ns])
    xs = np.log(ns)
    slope, icept = np.polyfit(xs, ys, 1)
    res = ys - (slope * xs + icept)
    spread = float(np.sum((xs - xs.mean()) ** 2))
    stderr = math.sqrt(float(np.sum(res ** 2)) / (len(xs) - 2) / spread)
    return Fit(float(slope), stderr)


@dataclass(frozen=True)
class ExponentRow:
    problem: str
    predicted: Fraction
    fit: Fit


def exponent_table(sizes: Sequence[float] = DEFAULT_SIZES) -> list[ExponentRow]:
    rows = []

    def add(name, predicted, fn):
        rows.append(ExponentRow(name, Fraction(predicted), fit_exponent(fn, sizes)))

    add("triangle (vcbasic, vc=2)", Fraction(7, 6), lambda n: plan_vcbasic(cycle_graph(3), n).total)
    add("vcbasic vc=3 (C_6)", Fraction(5, 4), lambda n: plan_vcbasic(cycle_graph(6), n).total)
    for k in range(1, 15):
        add(f"{k}-path", path_exponent(k), lambda n, k=k: plan_paths(k, n).total)
    add("C_4 (fourcycle)", Fraction(5, 4), lambda n: plan_fourcycle(n).total)
    for d in (4, 6, 8):
        s = d // 2
        add(f"bipartite d={d} (K_{s},{s})", bipartite_exponent(d),
            lambda n, s=s: plan_pseudosparse(complete_bipartite(s, s), n, n ** (2 - 1 / s)).total)
    for l in (2, 3, 4, 5):
        add(f"C_{2 * l} (even cycle)", evencycle_exponent(l),
            lambda n, l=l: plan_pseudosparse(cycle_graph(2 * l), n, edge_threshold("bs", n, l=l)).total)
    add("sparse pipeline", Fraction(3, 2), lambda n: sparse_pipeline_cost(n, 1.0))
    return rows
