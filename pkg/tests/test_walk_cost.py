import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from minorlab.graph import Graph, complete_bipartite, cycle_graph, path_graph, star_graph
from minorlab.walk_cost import (
    DEFAULT_SIZES,
    DegreeBucket,
    PlanError,
    bipartite_exponent,
    edge_threshold,
    evencycle_exponent,
    exponent_table,
    fit_exponent,
    hamming_gap,
    hamming_gap_numeric,
    johnson_gap,
    johnson_gap_numeric,
    mnrs_cost,
    path_exponent,
    path_positions,
    plan_fourcycle,
    plan_paths,
    plan_pseudosparse,
    plan_vcbasic,
    plan_vcdangling,
    product_gap,
    search_all_cost,
    sparse_pipeline_cost,
)


def test_hamming_examples():
    assert hamming_gap(7, 1) == 1
    assert abs(hamming_gap_numeric(5, 3) - 1 / 3) < 1e-9
    assert abs(hamming_gap_numeric(4, 2) - 1 / 2) < 1e-9
    with pytest.raises(ValueError):
        hamming_gap_numeric(6, 3)


def test_johnson_examples():
    assert johnson_gap(10, 3) == Fraction(10, 21)
    assert johnson_gap(5, 1) == Fraction(5, 4)
    assert abs(johnson_gap_numeric(6, 2) - float(johnson_gap(6, 2))) < 1e-9
    with pytest.raises(ValueError):
        johnson_gap(3, 3)


def test_product_gap_examples():
    assert product_gap([DegreeBucket(1, 5, 7, 1)]) == pytest.approx(1 / 7)
    g = product_gap([DegreeBucket(1, 5, 10, 1), DegreeBucket(1, 5, 100, 10)])
    assert g == pytest.approx(1 - max(0.9, 0.99 ** 10)) and abs(g - 0.0956) < 1e-3


@given(st.lists(st.tuples(st.integers(4, 500), st.integers(1, 50)), min_size=1, max_size=4))
def test_product_gap_near_alpha_over_k(pairs):
    r = Fraction(pairs[0][1], pairs[0][0])
    bs = []
    for k, _ in pairs:
        a = max(1, round(r * k))
        if Fraction(a, k) != r:
            return
        bs.append(DegreeBucket(1, 1, k, a))
    ratio = min(b.alpha / b.k for b in bs)
    if ratio > 1:
        return
    g = product_gap(bs)
    # 1 - (1-1/k)^a lies between (1 - 1/e) a/k and a/k
    assert ratio / 2 <= g <= ratio + 1e-12


def test_mnrs_examples():
    assert mnrs_cost(3, 4, 5, 1, 1) == 12
    K, k, t = 5, 3, 300
    assert mnrs_cost(0, 1, 0, 1 / K, k / t) == pytest.approx(math.sqrt(t / k) * math.sqrt(K))
    assert mnrs_cost(0, 1, 0, 1, 1 / 400) == pytest.approx(20)
    with pytest.raises(ValueError):
        mnrs_cost(1, 1, 1, 0, 1)


def test_vcbasic_plan_shape():
    n = 2.0 ** 16
    out = plan_vcbasic(cycle_graph(3), n)
    assert out.C == 0
    assert out.total == pytest.approx(out.S + (out.U / math.sqrt(out.delta) + out.C) / math.sqrt(out.eps))
    b1, b2 = out.plan.buckets
    assert b1.k == math.ceil(math.sqrt(n) * n ** (0.5 - 1 / 3))
    assert b1.alpha == 1
    one = plan_vcbasic(star_graph(3), n, t=[1])
    assert one.eps == 1.0
    with pytest.raises(PlanError):
        plan_vcbasic(Graph.empty(3), n)


def test_choice_of_values_ratios():
    n = 2.0 ** 20
    t = [2.0 ** 10, 2.0 ** 14, 2.0 ** 18]
    out = plan_vcbasic(cycle_graph(6), n, t=t)
    b = out.plan.buckets
    k1 = math.sqrt(t[0]) * n ** (0.5 - 1 / 4)
    assert k1 <= b[0].k <= 2 * k1
    for bi in b[1:]:
        want = math.sqrt(bi.t / b[0].t)
        assert want <= bi.alpha / b[0].alpha <= 2 * want
        assert want / 2 <= bi.k / b[0].k <= 2 * want


def test_dangling_plan_examples():
    n = 2.0 ** 18
    assert plan_vcdangling(path_graph(5), n).plan.vc_target == 2
    assert plan_vcdangling(star_graph(3), n).plan.vc_target == 1
    two_edges = path_graph(1).disjoint_union(path_graph(1))
    assert plan_vcdangling(two_edges, n).plan.vc_target == 2
    assert fit_exponent(lambda x: plan_vcdangling(path_graph(5), x).total).slope == pytest.approx(7 / 6, abs=0.01)
    assert fit_exponent(lambda x: plan_vcdangling(star_graph(3), x).total).slope == pytest.approx(1.0, abs=0.01)


@pytest.mark.parametrize("k,expected", [(7, 7 / 6), (10, 5 / 4), (14, 3 / 2 - 1 / 6)])
def test_path_plan_exponents(k, expected):
    assert fit_exponent(lambda n: plan_paths(k, n).total).slope == pytest.approx(expected, abs=0.01)


def test_path_plans_misc():
    assert path_positions(7) == [2, 5]
    assert path_positions(10) == [2, 5, 8]
    assert path_positions(13) == [2, 5, 8, 10, 12]
    with pytest.raises(PlanError):
        path_positions(8)
    assert plan_paths(12, 2.0 ** 12).notes
    with pytest.raises(PlanError):
        plan_paths(0, 100.0)


def test_path_exponents_monotone_within_tolerance():
    fits = [fit_exponent(lambda n, k=k: plan_paths(k, n).total).slope for k in range(1, 15)]
    assert all(b >= a - 0.01 for a, b in zip(fits, fits[1:]))
    assert [path_exponent(k) for k in (4, 5, 8, 11)] == [1, Fraction(7, 6), Fraction(5, 4), Fraction(13, 10)]


def test_checking_dominated_at_optimum():
    for k in (7, 9, 10, 12):
        out = plan_paths(k, 2.0 ** 20)
        assert out.C / math.sqrt(out.eps) <= out.total


def test_pseudosparse_examples():
    n = 2.0 ** 16
    a = plan_pseudosparse(path_graph(5), n, n).total
    b = plan_vcdangling(path_graph(5), n).total
    assert 0.25 <= a / b <= 4
    s = fit_exponent(lambda x: plan_pseudosparse(cycle_graph(4), x, x ** 1.5).total).slope
    assert s == pytest.approx(1.5 * 0.5 + 1 - 1 / 3, abs=0.01)
    s = fit_exponent(lambda x: plan_pseudosparse(cycle_graph(6), x, 300 * x ** (4 / 3)).total).slope
    assert s == pytest.approx(1.5 - 2 / 24, abs=0.01)
    with pytest.raises(PlanError):
        plan_pseudosparse(cycle_graph(4), n, n / 2)


def test_fourcycle_plan():
    sparse = fit_exponent(lambda n: plan_fourcycle(n, n).total).slope
    assert sparse == pytest.approx(1.0, abs=0.01)
    out = plan_fourcycle(2.0 ** 16)
    b = out.plan.buckets[0]
    assert out.C == pytest.approx(math.sqrt(2.0 ** 16 * b.q))


def test_thresholds():
    assert edge_threshold("bs", 16, l=2) == 12800
    assert edge_threshold("kst", 400.0) == pytest.approx(8000.0)
    assert bipartite_exponent(4) == Fraction(17, 12)
    assert evencycle_exponent(3) == Fraction(17, 12)
    with pytest.raises(ValueError):
        edge_threshold("kst", 10, s=3, t=2)
    with pytest.raises(ValueError):
        edge_threshold("nope", 10)


def test_sparse_pipeline():
    assert fit_exponent(lambda n: sparse_pipeline_cost(n, 1.0)).slope == pytest.approx(1.5, abs=0.01)
    n = 1e6
    pairs = n * (n - 1) / 2
    e1 = math.sqrt(pairs * 2 * n)
    e2 = math.sqrt(pairs * 4 * n)
    assert e2 / e1 <= math.sqrt(2) + 1e-12
    assert search_all_cost(100, 0) == 10
    with pytest.raises(ValueError):
        sparse_pipeline_cost(10, 0)


def test_fit_examples():
    assert fit_exponent(lambda n: 7.0).slope == pytest.approx(0.0, abs=1e-12)
    f = fit_exponent(lambda n: n ** 1.5)
    assert f.slope == pytest.approx(1.5, abs=1e-12) and f.residual < 1e-9
    assert fit_exponent(lambda n: plan_vcbasic(cycle_graph(6), n).total).slope == pytest.approx(1.25, abs=0.01)
    with pytest.raises(ValueError):
        fit_exponent(lambda n: n, [10, 100, 1000])


def test_table_has_expected_rows():
    rows = {r.problem: r for r in exponent_table()}
    assert rows["7-path"].predicted == Fraction(7, 6)
    assert "C_4 (fourcycle)" in rows and "sparse pipeline" in rows
    assert len(DEFAULT_SIZES) == 15
