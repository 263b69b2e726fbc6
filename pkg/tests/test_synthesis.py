from dataclasses import replace
from fractions import Fraction

import pytest

from geonet import generators as gen
from geonet.economics import CostParams
from geonet.geodetics import classify
from geonet.graph import degree_summary, distance_profile, vertex_connectivity
from geonet.synthesis import RankedCandidate, SynthesisQuery, dominates, pareto_front, synthesize

TABLE2_QUERY = SynthesisQuery(n_min=10, n_max=25, d_max=5, k_max=3, geodeticity_max=1)


def _cand(label, chi, P, A):
    return RankedCandidate(family=label, params=(), label=label, n=10, m=15, channels=15, d=2, k_class="regular(3)",
                           max_channel_degree=3, connectivity=3, geodetic_K=1, geodetic_label="geodetic",
                           A=A, chi=chi, P=P, hierarchy_levels=2)


def test_d1_gives_complete_graphs_only():
    res = synthesize(SynthesisQuery(n_min=3, n_max=9, d_max=1))
    assert res.candidates
    assert all(c.m == c.n * (c.n - 1) // 2 for c in res.candidates)
    assert {c.n for c in res.candidates if c.family == "complete"} == set(range(3, 10))


def test_table2_query_returns_homeomorphs():
    res = synthesize(TABLE2_QUERY)
    homeo = sorted((c for c in res.candidates if c.family == "petersen_homeomorph"), key=lambda c: c.params)
    assert [c.params for c in homeo] == [(0,), (1,), (2,), (3,)]
    assert [Fraction(c.A).limit_denominator(100) for c in homeo] == [Fraction(1, k) for k in (2, 3, 4, 5)]
    assert [round(c.P, 4) for c in homeo] == [0.9911, 0.995, 0.9968, 0.9978]
    assert all(a.A > b.A and a.P < b.P for a, b in zip(homeo, homeo[1:]))


def test_no_match_is_empty():
    res = synthesize(SynthesisQuery(n_min=11, n_max=11, d_max=2, k_max=3, geodeticity_max=1))
    assert res.candidates == []


@pytest.mark.parametrize(
    "q",
    [TABLE2_QUERY, SynthesisQuery(n_min=6, n_max=16, d_max=3, k_max=4, geodeticity_max=2),
     SynthesisQuery(n_min=4, n_max=12, d_max=4)],
)
def test_filters_are_sound(q):
    res = synthesize(q)
    index = {g.label: g for g in _rebuild(q)}
    for c in res.candidates:
        g = index[c.label]
        prof = distance_profile(g)
        assert q.n_min <= g.n <= q.n_max and prof.diameter <= q.d_max
        if q.k_max is not None:
            assert degree_summary(g).max_deg <= q.k_max
        if q.geodeticity_max:
            assert classify(prof).K <= q.geodeticity_max
            assert vertex_connectivity(g) >= 2


def _rebuild(q):
    from geonet.synthesis import catalog

    return list(catalog(q.n_min, q.n_max))


def test_ranking_total_order_and_front_consistency():
    res = synthesize(SynthesisQuery(n_min=6, n_max=14, d_max=4))
    ranks = [c.rank for c in res.candidates]
    assert ranks == list(range(1, len(ranks) + 1))
    pos = {c.label: c.rank for c in res.candidates}
    for c in res.candidates:
        for other in res.candidates:
            if dominates(c, other):
                assert pos[c.label] < pos[other.label]
                assert c.label in other.dominated_by
    assert set(res.front) == {c.label for c in res.candidates if not c.dominated_by}


@pytest.mark.parametrize("policy", ["lexicographic", "weighted"])
@pytest.mark.parametrize("factor", [0.25, 10.0])
def test_cost_scaling_invariance(policy, factor):
    base = SynthesisQuery(n_min=8, n_max=16, d_max=4, policy=policy)
    scaled = replace(base, cost_params=CostParams().scaled_structure_costs(factor))
    a, b = synthesize(base), synthesize(scaled)
    assert [c.label for c in a.candidates] == [c.label for c in b.candidates]
    assert a.front == b.front
    for x, y in zip(a.candidates, b.candidates):
        assert y.chi == pytest.approx(x.chi / factor)


def test_pareto_examples():
    one = _cand("a", 1.0, 0.9, 0.5)
    assert pareto_front([one]) == [one]
    better = _cand("b", 2.0, 0.95, 0.4)
    assert pareto_front([one, better]) == [better]


def test_pareto_table2_homeomorphs():
    res = synthesize(TABLE2_QUERY)
    homeo = [c for c in res.candidates if c.family == "petersen_homeomorph"]
    # chi falls while P rises and A falls, so no homeomorph dominates another
    front = pareto_front(homeo)
    expected = [c for c in homeo if not any(dominates(o, c) for o in homeo)]
    assert front == expected == homeo


def test_deterministic():
    a = synthesize(TABLE2_QUERY).as_dict()
    b = synthesize(TABLE2_QUERY).as_dict()
    assert a == b


def test_query_from_dict_and_files(tmp_path):
    p = tmp_path / "c5.txt"
    p.write_text("5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n")
    q = SynthesisQuery.from_dict({"n_range": [5, 5], "d_max": 2, "geodeticity_max": 1, "files": [str(p)],
                                  "cost_params": {"C_CT": 2.0}})
    res = synthesize(q)
    labels = [c.label for c in res.candidates]
    assert any(l.startswith("from_file") for l in labels) and "ring(5)" in labels
    assert q.cost_params.C_CT == 2.0


@pytest.mark.parametrize("bad", [dict(n_min=5, n_max=4, d_max=2), dict(n_min=4, n_max=5, d_max=0),
                                 dict(n_min=4, n_max=5, d_max=2, policy="best")])
def test_query_validation(bad):
    with pytest.raises(ValueError):
        SynthesisQuery(**bad)
