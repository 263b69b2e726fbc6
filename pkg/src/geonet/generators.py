"""Topology families and named instances.

Every constructor returns a validated :class:`~geonet.graph.Graph` tagged with
its family name and parameters.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BadFamilyParam
from .graph import Graph, build_graph, bus_topology

FAMILIES = (
    "bus",
    "complete",
    "ring",
    "double_ring",
    "chordal_ring",
    "petersen",
    "petersen_homeomorph",
    "wagner_ring",
    "moebius_kantor_candidate",
    "chorded_ring16",
    "from_file",
)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple = ()

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse ``name`` or ``name:p1,p2`` (e.g. ``chordal_ring:16,5``)."""
        name, _, rest = text.partition(":")
        name = name.strip()
        if name == "from_file":
            return cls(name, (rest,))
        params = tuple(int(p) for p in rest.split(",") if p.strip()) if rest else ()
        return cls(name, params)


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise BadFamilyParam(msg)


def bus(n: int) -> Graph:
    _check(n >= 2, f"bus needs n >= 2, got {n}")
    return bus_topology(n)


def complete(n: int) -> Graph:
    _check(n >= 2, f"complete graph needs n >= 2, got {n}")
    return build_graph(n, itertools.combinations(range(n), 2), family="complete", params=(n,))


def _cycle_edges(n: int):
    return [(i, (i + 1) % n) for i in range(n)]


def ring(n: int) -> Graph:
    _check(n >= 3, f"ring needs n >= 3, got {n}")
    return build_graph(n, _cycle_edges(n), family="ring", params=(n,))


def double_ring(n: int) -> Graph:
    _check(n >= 3, f"double ring needs n >= 3, got {n}")
    return build_graph(n, _cycle_edges(n), multiplicity=2, family="double_ring", params=(n,))


def chordal_ring(n: int, c: int) -> Graph:
    """Cycle plus chords joining each odd vertex i to (i + c) mod n.

    ``c = 1`` and ``c = n - 1`` would repeat ring edges, so ``3 <= c <= n - 3``.
    """
    _check(n >= 4 and n % 2 == 0, f"chordal ring needs even n >= 4, got {n}")
    _check(c % 2 == 1, f"chord length must be odd, got {c}")
    _check(3 <= c <= n - 3, f"chord length must lie in 3..{n - 3} for n={n}, got {c}")
    edges = _cycle_edges(n) + [(i, (i + c) % n) for i in range(1, n, 2)]
    return build_graph(n, edges, family="chordal_ring", params=(n, c))


_PETERSEN_OUTER = [(i, (i + 1) % 5) for i in range(5)]
_PETERSEN_SPOKES = [(i, i + 5) for i in range(5)]
_PETERSEN_INNER = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]


def petersen() -> Graph:
    return build_graph(10, _PETERSEN_OUTER + _PETERSEN_SPOKES + _PETERSEN_INNER, family="petersen")


def subdivide(g: Graph, edges, t: int, family=None, params=()) -> Graph:
    """Replace each listed edge by a path with ``t`` new interior vertices.

    New vertices are numbered from ``g.n`` upward in the order the edges are
    listed.
    """
    targets = {tuple(sorted(e)) for e in edges}
    missing = targets - set(g.edges)
    if missing:
        raise BadFamilyParam(f"edges {sorted(missing)} are not in the graph")
    out = [e for e in g.edges if e not in targets]
    nxt = g.n
    for u, v in (tuple(sorted(e)) for e in edges):
        prev = u
        for _ in range(t):
            out.append((prev, nxt))
            prev = nxt
            nxt += 1
        out.append((prev, v))
    return build_graph(nxt, out, multiplicity=g.multiplicity, family=family or g.family, params=params)


def petersen_homeomorph(t: int) -> Graph:
    """Petersen graph with each of its 5 spokes subdivided ``t`` times."""
    _check(0 <= t <= 3, f"subdivision depth must be in 0..3, got {t}")
    return subdivide(petersen(), _PETERSEN_SPOKES, t, family="petersen_homeomorph", params=(t,))


def wagner_ring() -> Graph:
    """C8 plus its four diameters."""
    edges = _cycle_edges(8) + [(i, i + 4) for i in range(4)]
    return build_graph(8, edges, family="wagner_ring")


def moebius_kantor_candidate() -> Graph:
    """Generalized Petersen graph GP(8, 3)."""
    edges = _cycle_edges(8)
    edges += [(i, 8 + i) for i in range(8)]
    edges += [(8 + i, 8 + (i + 3) % 8) for i in range(8)]
    return build_graph(16, edges, family="moebius_kantor_candidate")


# chord offset by vertex index mod 4
_RING16_OFFSETS = (5, 11, 8, 8)


def chorded_ring16() -> Graph:
    """16-cycle with a perfect matching of chords; 3-regular, bigeodetic, d = 4.

    Vertices congruent to 0 and 1 mod 4 carry chords of length 5; the others
    carry diameters.
    """
    edges = set(_cycle_edges(16))
    for i in range(16):
        j = (i + _RING16_OFFSETS[i % 4]) % 16
        edges.add((min(i, j), max(i, j)))
    return build_graph(16, sorted(edges), family="chorded_ring16")


def from_file(path) -> Graph:
    from .io import read_edge_list

    return read_edge_list(path)


_BUILDERS = {
    "bus": (bus, 1),
    "complete": (complete, 1),
    "ring": (ring, 1),
    "double_ring": (double_ring, 1),
    "chordal_ring": (chordal_ring, 2),
    "petersen": (petersen, 0),
    "petersen_homeomorph": (petersen_homeomorph, 1),
    "wagner_ring": (wagner_ring, 0),
    "moebius_kantor_candidate": (moebius_kantor_candidate, 0),
    "chorded_ring16": (chorded_ring16, 0),
    "from_file": (from_file, 1),
}


def generate(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    try:
        builder, arity = _BUILDERS[spec.family]
    except KeyError:
        raise BadFamilyParam(f"unknown family {spec.family!r}; choose from {', '.join(FAMILIES)}") from None
    if len(spec.params) != arity:
        raise BadFamilyParam(f"{spec.family} takes {arity} parameter(s), got {len(spec.params)}")
    return builder(*spec.params)


# ---------------------------------------------------------------------------


def _perfect_matchings(edges, n):
    """Perfect matchings as sorted edge tuples, in lexicographic order."""
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append((u, v))
        adj[v].append((u, v))

    def rec(free: frozenset, chosen):
        if not free:
            yield tuple(sorted(chosen))
            return
        v = min(free)
        for e in sorted(adj[v]):
            w = e[0] if e[1] == v else e[1]
            if w in free:
                yield from rec(free - {v, w}, chosen + [e])

    if n % 2:
        return []
    return sorted(rec(frozenset(range(n)), []))


def candidate_subsets(g: Graph):
    """Edge subsets to try: perfect matchings first, then all others by size descending."""
    matchings = _perfect_matchings(g.edges, g.n)
    yield from matchings
    tried = set(matchings)
    for size in range(g.m, 0, -1):
        for subset in itertools.combinations(g.edges, size):
            if subset not in tried:
                yield subset


def find_geodetic_subdivision(base: Graph, t: int, budget: int = 10_000) -> Graph | None:
    """First edge subset whose ``t``-fold subdivision keeps ``base`` geodetic.

    Returns ``None`` when no candidate within ``budget`` subsets passes.
    """
    from .geodetics import classify
    from .graph import distance_profile

    if t == 0:
        return base
    if t < 0:
        raise BadFamilyParam(f"subdivision depth must be non-negative, got {t}")
    for count, subset in enumerate(candidate_subsets(base)):
        if count >= budget:
            break
        h = subdivide(base, subset, t, family=f"{base.family or 'graph'}_subdivided", params=(t, subset))
        if classify(distance_profile(h)).K == 1:
            return h
    return None
