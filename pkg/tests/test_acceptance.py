"""Acceptance criteria 1-8, each at its stated tolerance.

Run ``pytest tests/test_acceptance.py`` (one PASS/FAIL line per criterion is
printed in the terminal summary) or ``python3 tests/test_acceptance.py``.
"""
import math
import random
import sys
import time
from itertools import combinations
from math import comb

import pytest

from minorlab.adversary import (
    family_forest,
    family_subgraphlb,
    quantities_explicit_family,
    quantities_symmetric,
    scaling_fit,
)
from minorlab.containment import (
    enumerate_subdivisions,
    is_minor,
    is_minor_by_closure,
    is_subgraph,
    is_topological_minor,
    min_vertex_cover,
)
from minorlab.detector import OracleGraph, detect_subgraph, replay
from minorlab.graph import (
    Graph,
    claw_graph,
    cycle_graph,
    path_graph,
    random_gnm,
    star_graph,
    subdivide_edge,
)
from minorlab.io import all_graphs
from minorlab.minor_theory import (
    beta,
    classify_edges,
    is_star_subdivision_family,
    replace_edge_with_paths,
    uniform_subdivision_escape,
    vc_claw,
    vc_path,
)
from minorlab.walk_cost import (
    bipartite_exponent,
    edge_threshold,
    evencycle_exponent,
    fit_exponent,
    hamming_gap_numeric,
    johnson_gap,
    johnson_gap_numeric,
    path_exponent,
    plan_fourcycle,
    plan_paths,
    plan_pseudosparse,
    plan_vcbasic,
    sparse_pipeline_cost,
)

try:
    from conftest import ACCEPTANCE
except ImportError:  # run as a script
    ACCEPTANCE = {}


def record(k, ok, detail):
    ACCEPTANCE[k] = (ok, detail)
    return ok, detail


# 1 --------------------------------------------------------------------------------------

def criterion_1():
    t0 = time.time()
    graphs = all_graphs(7)
    monotone_bad = 0
    strict_bad = 0
    for H in graphs:
        b = beta(H)
        steps = [H.add_vertices(1)]
        steps += [H.add_edge(u, v) for u, v in combinations(range(H.n), 2) if not H.has_edge(u, v)]
        steps += [subdivide_edge(H, e) for e in H.edges()]
        monotone_bad += sum(beta(G) < b for G in steps)
        for e in classify_edges(H).internal:
            for p in (1, 2, 3):
                for q in (1, 2, 3):
                    strict_bad += beta(replace_edge_with_paths(H, e, p, q)) >= b
    dt = time.time() - t0
    ok = monotone_bad == 0 and strict_bad == 0 and dt < 300
    return record(1, ok, f"{len(graphs)} graphs, monotonicity violations {monotone_bad}, "
                         f"strict-decrease violations {strict_bad}, {dt:.1f}s")


# 2 ----------------------------------------------------------------------------------------

def criterion_2():
    bad = 0
    graphs = all_graphs(6)
    for H in graphs:
        b = beta(H)
        if (b == 0) != is_star_subdivision_family(H):
            bad += 1
        if b == 0:
            for S in enumerate_subdivisions(H, H.n):
                bad += is_subgraph(H, S) is None
        else:
            esc = uniform_subdivision_escape(H, 6)
            bad += esc is None or is_subgraph(H, esc[1]) is not None
    return record(2, bad == 0, f"{len(graphs)} graphs, violations {bad}")


# 3 -------------------------------------------------------------------------------------------

def criterion_3():
    rng = random.Random(20240601)
    chain_bad = 0
    strategy_bad = 0
    for _ in range(10_000):
        nh = rng.randint(1, 5)
        ng = rng.randint(1, 7)
        H = random_gnm(nh, rng.randint(0, comb(nh, 2)), rng)
        G = random_gnm(ng, rng.randint(0, comb(ng, 2)), rng)
        s = is_subgraph(H, G) is not None
        t = is_topological_minor(H, G) is not None
        m = is_minor(H, G) is not None
        chain_bad += (s and not t) or (t and not m)
        strategy_bad += m != is_minor_by_closure(H, G)
    ok = chain_bad == 0 and strategy_bad == 0
    return record(3, ok, f"10000 pairs, chain violations {chain_bad}, minor strategy disagreements {strategy_bad}")


# 4 ----------------------------------------------------------------------------------------

def criterion_4():
    bad = sum(vc_path(k) != len(min_vertex_cover(path_graph(k))) for k in range(1, 11))
    cases = 0
    for d in [(a, b, c) for a in range(1, 5) for b in range(1, 5) for c in range(1, 5)]:
        cases += 1
        bad += vc_claw(*d) != len(min_vertex_cover(claw_graph(*d)))
    return record(4, bad == 0 and cases == 64, f"10 paths + {cases} claws, mismatches {bad}")


# 5 ------------------------------------------------------------------------------------------

def criterion_5():
    t0 = time.time()
    notes = []
    bad = 0
    for n in (9, 10, 11):
        fam = family_forest(n)
        e, s = quantities_explicit_family(fam, n), quantities_symmetric(fam, n)
        same = (e.m, e.m_prime, e.l_max) == (s.m, s.m_prime, s.l_max)
        bad += not same
        notes.append(f"forest n={n} {'=' if same else '!='} ({s.m},{s.m_prime},{s.l_max})")
    for n, d in ((6, 3), (7, 3), (7, 4)):
        fam = family_subgraphlb(n, d)
        e, s = quantities_explicit_family(fam, n), quantities_symmetric(fam, n)
        bad += (e.m, e.m_prime, e.l_max) != (s.m, s.m_prime, s.l_max)
    forest = scaling_fit(family_forest(), [12, 18, 27, 40, 60]).slope
    sub = scaling_fit(family_subgraphlb(None, 3), [8, 16, 32, 64]).slope
    dt = time.time() - t0
    ok = bad == 0 and abs(forest - 1.5) <= 0.15 and abs(sub - 1.0) <= 0.1 and dt < 600
    notes.append(f"forest slope {forest:.4f}, subgraphlb slope {sub:.4f}, {dt:.0f}s")
    return record(5, ok, "; ".join(notes))


# 6 ---------------------------------------------------------------------------------------------

def criterion_6():
    worst = 0.0
    cases = 0
    for N in range(2, 201):
        for K in range(1, 8):
            if N ** K > 200:
                break
            cases += 1
            worst = max(worst, abs(hamming_gap_numeric(N, K) - 1 / K))
    j = abs(johnson_gap_numeric(6, 2) - float(johnson_gap(6, 2)))
    ok = worst <= 1e-9 and j <= 1e-9
    return record(6, ok, f"{cases} Hamming cases, max error {worst:.2e}; J(6,2) error {j:.2e}")


# 7 ---------------------------------------------------------------------------------------------

def exponent_rows():
    rows = [("vcbasic vc=2", 7 / 6, lambda n: plan_vcbasic(cycle_graph(3), n).total)]
    for k in list(range(1, 11)) + [14]:
        rows.append((f"{k}-path", float(path_exponent(k)), lambda n, k=k: plan_paths(k, n).total))
    rows += [
        ("C_4 fourcycle", 1.25, lambda n: plan_fourcycle(n).total),
        ("C_4 bipartite bound", float(bipartite_exponent(4)),
         lambda n: plan_pseudosparse(cycle_graph(4), n, edge_threshold("kst", n)).total),
        ("C_6 even cycles", float(evencycle_exponent(3)),
         lambda n: plan_pseudosparse(cycle_graph(6), n, edge_threshold("bs", n, l=3)).total),
        ("sparse pipeline", 1.5, lambda n: sparse_pipeline_cost(n, 1.0)),
    ]
    return rows


def criterion_7():
    sizes = [2 ** j for j in range(10, 25)]
    expected_paths = {1: 1, 2: 1, 3: 1, 4: 1, 5: 7 / 6, 6: 7 / 6, 7: 7 / 6, 8: 5 / 4,
                      9: 5 / 4, 10: 5 / 4, 14: 4 / 3}
    fails = []
    for name, target, fn in exponent_rows():
        if name.endswith("-path"):
            assert target == pytest.approx(expected_paths[int(name.split("-")[0])])
        slope = fit_exponent(fn, sizes).slope
        if abs(slope - target) > 0.01:
            fails.append(f"{name} fitted {slope:.4f} vs {target:.4f}")
    detail = f"{len(exponent_rows())} rows; " + ("all within 0.01" if not fails else "out of tolerance: " + ", ".join(fails))
    return record(7, not fails, detail)


# 8 ------------------------------------------------------------------------------------------------

PATTERNS = {"C3": cycle_graph(3), "C4": cycle_graph(4), "5-path": path_graph(5), "claw": star_graph(3)}


def criterion_8():
    t0 = time.time()
    rng = random.Random(8)
    names = list(PATTERNS)
    basic_bad = 0
    replay_bad = 0
    sound_bad = 0
    colored_trials = 0
    colored_hits = 0
    for i in range(500):
        name = names[i % 4]
        H = PATTERNS[name]
        n = rng.randint(8, 32)
        G = random_gnm(n, rng.randint(n // 2, n + n // 4), rng)
        planted = i % 8 < 4
        if planted:
            perm = rng.sample(range(n), H.n)
            for u, v in H.edges():
                if not G.has_edge(perm[u], perm[v]):
                    G = G.add_edge(perm[u], perm[v])
        truth = is_subgraph(H, G) is not None
        modes = ["basic", "dangling"] + (["paths"] if H.is_path_graph() else [])
        modes += ["fourcycle"] if name == "C4" else []
        for mode in modes:
            o = OracleGraph(G)
            r = detect_subgraph(o, H, mode, seed=i, confidence=0.9)
            if r.found and not r.gated and not replay(r.witness, H, o):
                replay_bad += 1
            if r.gated:
                continue
            if mode == "basic":
                basic_bad += r.found != truth
            elif r.found and not truth:
                sound_bad += 1
            elif truth and mode in ("dangling", "paths"):
                colored_trials += 1
                colored_hits += r.found
    rate = colored_hits / colored_trials
    slack = 3 * math.sqrt(0.9 * 0.1 / colored_trials)
    dt = time.time() - t0
    ok = basic_bad == 0 and replay_bad == 0 and sound_bad == 0 and rate >= 0.9 - slack and dt < 600
    return record(8, ok, f"500 instances, basic mismatches {basic_bad}, unsound {sound_bad}, "
                         f"bad witnesses {replay_bad}, colour-coded success {colored_hits}/{colored_trials} "
                         f"(need >= {0.9 - slack:.3f}), {dt:.0f}s")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("k", range(1, 9))
def test_criterion(k):
    ok, detail = CRITERIA[k - 1]()
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


if __name__ == "__main__":
    status = 0
    for k, fn in enumerate(CRITERIA, start=1):
        ok, detail = fn()
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)
        status |= not ok
    sys.exit(status)
