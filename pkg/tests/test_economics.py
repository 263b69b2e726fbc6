import networkx as nx
import pytest
from fractions import Fraction
from hypothesis import given
from hypothesis import strategies as st

from geonet import generators as gen
from geonet.economics import (
    CostParams,
    additional_relative_cost,
    busy_probability,
    chordal_ring_vr_lower_bound,
    effectiveness,
    fig7_curve,
    flow_density,
    max_additional_relative_cost,
    network_cost,
    saturation_flow_density,
    structure_cost,
)

UNIT = CostParams()


def _nx(g):
    return nx.Graph(list(g.edges))


def vcs_oracle(g):
    """Mean geodesic length from networkx distances."""
    d = dict(nx.all_pairs_shortest_path_length(_nx(g)))
    return Fraction(sum(d[s][t] for s in d for t in d), g.n * (g.n - 1))


def vr_max_oracle(g):
    """Worst per-channel load from networkx edge betweenness (unordered pairs)."""
    eb = nx.edge_betweenness_centrality(_nx(g), normalized=False)
    return 2 * max(eb.values()) / g.multiplicity / (g.n * (g.n - 1))


@pytest.mark.parametrize("n", [3, 8, 17])
def test_network_cost_closed_forms(n):
    p = CostParams(C1=2.0, C2=3.0)
    assert network_cost(n, n, p) == pytest.approx(n * (p.C1 + p.C2))
    assert network_cost(n, n * (n - 1) // 2, p) == pytest.approx(n * (p.C1 + (n - 1) / 2 * p.C2))
    assert network_cost(10, 15) == 25


def test_additional_relative_cost():
    assert additional_relative_cost(12, 0, 0.7) == 0
    n, delta = 11, 0.7
    assert additional_relative_cost(n, n * (n - 3) // 2, delta) == pytest.approx(delta * (n - 3) / 2)
    assert additional_relative_cost(10, 5, 1.0) == 0.5
    assert max_additional_relative_cost(n, delta) == pytest.approx(delta * (n - 3) / 2)


@pytest.mark.parametrize("g, want", [(gen.bus(10), 21), (gen.complete(4), 22), (gen.double_ring(9), 63)],
                         ids=["bus", "K4", "double_ring"])
def test_structure_cost(g, want):
    assert structure_cost(g) == want


def test_structure_cost_biregular_uses_mean_degree():
    g = gen.petersen_homeomorph(1)
    # n*k*C_C with k = 2m/n equals 2m
    assert structure_cost(g) == pytest.approx(15 + 40 + 20)


@pytest.mark.parametrize("n", [3, 6, 11])
def test_bus_and_complete_k0(n):
    assert effectiveness(gen.bus(n)).k0 == 1.0
    rep = effectiveness(gen.complete(n))
    assert rep.k0 == pytest.approx(n) and rep.V_CS == 1.0


@pytest.mark.parametrize("n", [4, 10, 16])
def test_double_ring_vr(n):
    rep = effectiveness(gen.double_ring(n))
    assert rep.V_R == pytest.approx(n / (8 * (n - 1)))
    assert rep.V_R_max == pytest.approx(n / (8 * (n - 1)))


@pytest.mark.parametrize("n", [5, 9, 13])
def test_double_ring_vr_odd(n):
    assert effectiveness(gen.double_ring(n)).V_R == pytest.approx((n + 1) / (8 * n))


@pytest.mark.parametrize("n", [4, 6, 12, 20])
def test_ring_vcs_identity(n):
    assert effectiveness(gen.ring(n)).V_CS == pytest.approx(n * n / (4 * (n - 1)))


@pytest.mark.parametrize("g", [gen.petersen(), gen.chordal_ring(16, 5), gen.petersen_homeomorph(2), gen.ring(9),
                               gen.double_ring(7), gen.wagner_ring()], ids=lambda g: g.label)
def test_crossing_rates_against_networkx(g):
    rep = effectiveness(g)
    assert rep.V_CS == pytest.approx(float(vcs_oracle(g)))
    assert rep.V_R == pytest.approx(float(vcs_oracle(g)) / g.channels)
    assert rep.V_R_max == pytest.approx(vr_max_oracle(g))
    assert rep.V_R_max >= rep.V_R - 1e-15


def test_chordal_lower_bound_value():
    assert chordal_ring_vr_lower_bound(16, 5) == pytest.approx(4 / 45)


@pytest.mark.parametrize("n", [12, 16, 24, 32])
def test_chordal_ring_worst_channel_above_bound(n):
    assert effectiveness(gen.chordal_ring(n, 5)).V_R_max >= chordal_ring_vr_lower_bound(n, 5)


def test_chordal_bound_monotone_in_c():
    vals = [chordal_ring_vr_lower_bound(40, c) for c in range(3, 38, 2)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_k0_min_witness():
    rep = effectiveness(gen.complete(6))
    assert rep.k0_binding == "processor"
    rep = effectiveness(gen.ring(20))
    assert rep.k0_binding == "channel"
    assert rep.k0 == pytest.approx(min(1 / (rep.V_PC * 1.0), 1 / (rep.V_R * 1.0)))
    assert rep.chi == pytest.approx(rep.k0 / rep.C_R) and rep.chi > 0


@given(st.floats(0.01, 100), st.floats(0.01, 100), st.floats(0.01, 100))
def test_saturation_relations(visits, service, rate):
    busy = busy_probability(rate, service)
    assert flow_density(rate, visits) == pytest.approx(saturation_flow_density(visits, service, busy))
    # at saturation the flow density is bounded by 1/(V*S)
    assert saturation_flow_density(visits, service) == pytest.approx(1 / (visits * service))


def test_k0_equals_saturation_bound():
    g = gen.petersen()
    rep = effectiveness(g)
    V, S = rep.V_R, 1.0
    assert rep.k0 == pytest.approx(saturation_flow_density(V, S))


@pytest.mark.parametrize("n", [6, 13, 30])
def test_fig7_bus_and_complete(n):
    rows, _ = fig7_curve(families=(("bus",), ("complete",)), n_range=[n])
    chi = {r.family: r.chi for r in rows}
    assert chi["bus"] == pytest.approx(1 / (2 * n + 1))
    assert chi["complete"] == pytest.approx(n / (n + n * (n - 1) + n * (n - 1) / 2))


def test_fig7_double_ring_values():
    rows, _ = fig7_curve(families=(("double_ring",),), n_range=[4, 8])
    # n=4: k0 = min(4, 6) = 4, C_R = 28; n=8: k0 = min(8, 7) = 7, C_R = 56
    assert [r.chi for r in rows] == pytest.approx([1 / 7, 1 / 8])


def test_fig7_skips_and_order():
    rows, skipped = fig7_curve(n_range=range(4, 12))
    assert {(s["family"], s["n"]) for s in skipped} >= {("chordal_ring", 9), ("chordal_ring", 4)}
    fams = [r.family for r in rows]
    assert fams == sorted(fams, key=["bus", "complete", "double_ring", "chordal_ring"].index)
    for fam in set(fams):
        ns = [r.n for r in rows if r.family == fam]
        assert ns == sorted(ns)


def test_cost_params_validation():
    with pytest.raises(ValueError):
        CostParams(C_C=0)
    assert CostParams(C1=2, C2=3).delta == 1.5
