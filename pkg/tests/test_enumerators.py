"""Enumerator tests: worked object lists, refinements, oracle equivalence."""

import pytest

from qlab import catalog, combinatorics as comb
from qlab.series import ZetaPolynomial


def zcell(series, n, m):
    c = series.coefficient(n)
    if isinstance(c, ZetaPolynomial):
        return c.coefficient(m)
    return c if m == 0 else 0


def test_pod_worked_example():
    objs = sorted(str(o) for o in comb.enumerate_pod(6))
    assert objs == ["2+2+2", "3+2+1", "3~+2+1", "4+2", "5+1", "5~+1", "6"]
    assert comb.pod_refinement(6) == {0: 3, 1: 3, 2: 1}
    assert comb.enumerate_pod(0) == []


def test_pev_worked_example():
    objs = sorted(str(o) for o in comb.enumerate_pev(6))
    assert objs == ["2+2+2", "2~+2+2", "3+2+1", "3+2~+1", "4+2", "4~+2",
                    "5+1", "6"]
    assert comb.pev_refinement(6) == {1: 2, 2: 4, 3: 2}
    assert [str(o) for o in comb.enumerate_pev(1)] == ["1"]


def test_pod1_worked_example():
    objs = sorted(str(o) for o in comb.enumerate_pod1(9))
    assert objs == ["5+2+2", "5~+2+2", "7+2", "7~+2"]
    assert [str(o) for o in comb.enumerate_pod1(2)] == ["2"]
    assert comb.enumerate_pod1(1) == []


def test_vod_worked_example():
    objs = sorted(str(o) for o in comb.enumerate_vod(2))
    assert objs == ["- | 0 | 1+1", "- | 2 | -", "1 | 0 | 1", "1+1 | 0 | -",
                    "1~ | 0 | 1", "1~+1 | 0 | -"]
    assert comb.vod_rank_refinement(2) == {-2: 1, -1: 1, 0: 2, 1: 1, 2: 1}
    assert len(comb.enumerate_vod(0)) == 1


def test_refinement_partitions_the_count():
    for n in range(11):
        assert sum(comb.vod_rank_refinement(n).values()) == len(comb.enumerate_vod(n))
        assert sum(comb.pod_refinement(n).values()) == len(comb.enumerate_pod(n))
        assert sum(comb.pev_refinement(n).values()) == len(comb.enumerate_pev(n))


def test_classical_counts():
    assert comb.classical_count("partitions", 4) == 5
    assert comb.rank_counts(4) == {3: 1, 1: 1, 0: 1, -1: 1, -3: 1}
    assert comb.rank_counts(0) == {0: 1}
    assert comb.m2_rank_counts(0) == {0: 1}
    with pytest.raises(KeyError):
        comb.classical_count("nope", 3)
    with pytest.raises(KeyError):
        comb.enumerate_family("nope", 3)


def test_distinct_rank_parity_matches_sigma():
    sigma = catalog.series("sigma", 20)
    for n in range(21):
        assert comb.distinct_parts_rank_parity(n) == sigma.coefficient(n)


def test_oracle_equivalence_small():
    bound = 14
    pod = catalog.series("pod", bound)
    pev = catalog.series("pev", bound)
    pod1 = catalog.series("pod1", bound)
    vod = catalog.series("vod", bound)
    p = catalog.series("p", bound)
    pbar = catalog.series("pbar", bound)
    u = catalog.series("u", bound)
    v = catalog.series("v", bound)
    for n in range(bound + 1):
        assert len(comb.enumerate_pod(n)) == pod.coefficient(n)
        assert len(comb.enumerate_pev(n)) == pev.coefficient(n)
        assert len(comb.enumerate_pod1(n)) == pod1.coefficient(n)
        assert len(comb.enumerate_vod(n)) == vod.coefficient(n)
        assert comb.classical_count("partitions", n) == p.coefficient(n)
        assert comb.classical_count("overpartitions", n) == pbar.coefficient(n)
        assert comb.classical_count("unimodal", n) == u.coefficient(n)
        assert comb.classical_count("concave", n) == v.coefficient(n)


def test_refined_oracle_equivalence_small():
    bound = 12
    pod2 = catalog.series("pod2", bound)
    pev2 = catalog.series("pev2", bound)
    vod2 = catalog.series("vod2", bound)
    r = catalog.series("r", bound)
    r2 = catalog.series("r2", bound)
    for n in range(bound + 1):
        pr = comb.pod_refinement(n)
        er = comb.pev_refinement(n)
        vr = comb.vod_rank_refinement(n)
        rr = comb.rank_counts(n)
        mr = comb.m2_rank_counts(n)
        for m in range(-n - 1, n + 2):
            assert zcell(pod2, n, m) == pr.get(m, 0)
            assert zcell(pev2, n, m) == er.get(m, 0)
            assert zcell(vod2, n, m) == vr.get(m, 0)
            assert zcell(r, n, m) == rr.get(m, 0)
            assert zcell(r2, n, m) == mr.get(m, 0)


def test_vod_rank_symmetry_empirical():
    # observed symmetry of the table; checked, not asserted as a theorem
    for n in range(15):
        counts = comb.vod_rank_refinement(n)
        assert all(counts[m] == counts.get(-m, 0) for m in counts)


def test_g_relation_small():
    p = catalog.coefficient_table("p", 60)
    pev = catalog.coefficient_table("pev", 60)
    g = catalog.coefficient_table("g", 60)
    assert g[0] == 0 and g[1] == 1
    for n in range(1, 61):
        pev_prev = pev[n - 1] if n > 1 else 1  # the empty object at n=0
        assert g[n] + pev_prev == 2 * p[n - 1]


def test_monotonicity_small():
    pod = catalog.coefficient_table("pod", 80)
    pev = catalog.coefficient_table("pev", 80)
    for n in range(79):
        assert pod[n + 1] >= pod[n]
        assert pev[n + 1] >= pev[n]


def test_formatting():
    op = comb.enumerate_pev(6)
    assert any("~" in str(o) for o in op)
    cc = comb.enumerate_vod(2)
    assert all("|" in str(c) for c in cc)
    assert str(comb.Overpartition(())) == "0"
