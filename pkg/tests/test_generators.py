import pytest

from geonet import generators as gen
from geonet.errors import BadFamilyParam, FormatError
from geonet.generators import FamilySpec, find_geodetic_subdivision, generate
from geonet.geodetics import classify
from geonet.graph import degree_summary, distance_profile
from geonet.io import format_edge_list, parse_edge_list


def test_petersen_signature():
    g = gen.petersen()
    assert (g.n, g.m) == (10, 15)
    assert degree_summary(g).describe() == "regular(3)"
    assert distance_profile(g).diameter == 2


@pytest.mark.parametrize("t", range(4))
def test_petersen_homeomorph_signature(t):
    g = gen.petersen_homeomorph(t)
    assert (g.n, g.m) == (10 + 5 * t, 15 + 5 * t)
    assert g.m - g.n == 5
    prof = distance_profile(g)
    assert prof.diameter == 2 + t
    assert classify(prof).K == 1


def test_ring3_is_triangle():
    g = gen.ring(3)
    assert g.m == 3 and distance_profile(g).diameter == 1


def test_chordal_ring_16_5():
    g = gen.chordal_ring(16, 5)
    assert g.m == 24  # 16 ring edges + 8 matching chords
    assert degree_summary(g).describe() == "regular(3)"


@pytest.mark.parametrize("n, c", [(15, 5), (16, 4), (16, 1), (16, 15), (2, 1)])
def test_chordal_ring_bad_params(n, c):
    with pytest.raises(BadFamilyParam):
        gen.chordal_ring(n, c)


@pytest.mark.parametrize(
    "spec, n, channels, degree",
    [
        (FamilySpec("bus", (9,)), 9, 1, 1),
        (FamilySpec("complete", (9,)), 9, 36, 8),
        (FamilySpec("double_ring", (9,)), 9, 18, 4),
        (FamilySpec("chordal_ring", (12, 5)), 12, 18, 3),
    ],
)
def test_family_channel_signatures(spec, n, channels, degree):
    g = generate(spec)
    assert g.n == n and g.channels == channels
    assert degree_summary(g).describe() == f"regular({degree})"


@pytest.mark.parametrize("bad", [FamilySpec("ring", (2,)), FamilySpec("petersen_homeomorph", (4,)),
                                 FamilySpec("nope", ()), FamilySpec("ring", ())])
def test_generate_rejects(bad):
    with pytest.raises(BadFamilyParam):
        generate(bad)


def test_family_spec_parse():
    assert FamilySpec.parse("chordal_ring:16,5") == FamilySpec("chordal_ring", (16, 5))
    assert FamilySpec.parse("petersen") == FamilySpec("petersen", ())


def test_reconstruction_candidates():
    w = distance_profile(gen.wagner_ring())
    assert (classify(w).label, w.diameter) == ("bigeodetic", 2)
    c16 = gen.chorded_ring16()
    p16 = distance_profile(c16)
    assert (c16.n, c16.m, classify(p16).label, p16.diameter) == (16, 24, "bigeodetic", 4)
    assert degree_summary(c16).describe() == "regular(3)"
    # GP(8,3) has diameter 4 but some pairs carry 6 geodesics
    mk = distance_profile(gen.moebius_kantor_candidate())
    assert mk.diameter == 4 and classify(mk).K == 6


def test_subdivision_preserves_excess():
    g = gen.petersen()
    h = gen.subdivide(g, [(0, 1), (5, 7)], 3)
    assert h.m - h.n == g.m - g.n


def test_find_subdivision_petersen():
    h = find_geodetic_subdivision(gen.petersen(), 1)
    prof = distance_profile(h)
    assert h.n == 15 and prof.diameter == 3 and classify(prof).K == 1


def test_find_subdivision_identity():
    g = gen.petersen()
    assert find_geodetic_subdivision(g, 0) is g


def _k3_oracle():
    """Every nonempty edge subset of K3 with its 1-fold subdivision's multiplicity."""
    import itertools

    k3 = gen.complete(3)
    out = {}
    for size in range(1, 4):
        for sub in itertools.combinations(k3.edges, size):
            out[sub] = classify(distance_profile(gen.subdivide(k3, sub, 1))).K
    return out


def test_find_subdivision_triangle():
    table = _k3_oracle()
    # all three edges gives C6, which is bigeodetic; single edges give C4
    assert table[((0, 1), (0, 2), (1, 2))] == 2
    assert all(k == 2 for sub, k in table.items() if len(sub) == 1)
    h = find_geodetic_subdivision(gen.complete(3), 1)
    assert h is not None and h.n == 5 and classify(distance_profile(h)).K == 1


def test_find_subdivision_budget_exhausted():
    assert find_geodetic_subdivision(gen.complete(3), 1, budget=1) is None


def test_edge_list_roundtrip():
    for g in [gen.petersen(), gen.chordal_ring(12, 5), gen.double_ring(5)]:
        back = parse_edge_list(format_edge_list(g))
        assert back.edges == g.edges and back.n == g.n and back.multiplicity == g.multiplicity


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 2\n0 1\n1 x\n", 3),
        ("3 3\n0 1\n1 2\n", 1),
        ("# only comments\n", 1),
        ("3 2\n0 1\n1 2 0\n", 3),
        ("3 2\n0 1\n1 1\n", 3),
    ],
)
def test_edge_list_errors(text, line):
    with pytest.raises(FormatError) as info:
        parse_edge_list(text)
    assert info.value.line == line


def test_from_file(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("# triangle\n3 3\n0 1 # first\n1 2\n\n0 2\n")
    g = generate(FamilySpec("from_file", (str(p),)))
    assert g.m == 3 and g.family == "from_file"
