"""Geodesic-multiplicity classification and its exhaustive oracle."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BusNotClassifiable
from .graph import DistanceProfile, Graph

_LABELS = {1: "geodetic", 2: "bigeodetic"}


@dataclass(frozen=True)
class GeodeticClass:
    K: int
    label: str
    histogram: dict[int, int]
    witness: tuple[int, int] | None

    def is_geodetic(self) -> bool:
        return self.K == 1


def label_for(K: int) -> str:
    return _LABELS.get(K, f"{K}-geodetic")


def classify(profile: DistanceProfile) -> GeodeticClass:
    """Maximum geodesic multiplicity over vertex pairs.

    The witness is the lexicographically smallest unordered pair attaining it;
    the histogram counts unordered pairs per multiplicity.
    """
    if profile.bus:
        raise BusNotClassifiable("geodeticity is undefined for the shared bus topology")
    n = profile.n
    iu, ju = np.triu_indices(n, 1)
    counts = profile.sigma[iu, ju]
    if counts.size == 0:
        return GeodeticClass(K=1, label="geodetic", histogram={}, witness=None)
    K = int(counts.max())
    values, freq = np.unique(counts, return_counts=True)
    first = int(np.flatnonzero(counts == K)[0])
    return GeodeticClass(
        K=K,
        label=label_for(K),
        histogram={int(v): int(f) for v, f in zip(values, freq)},
        witness=(int(iu[first]), int(ju[first])),
    )


def brute_force_geodesic_count(g: Graph, s: int, t: int) -> int:
    """Number of shortest s-t paths, found by enumerating simple paths.

    Path lengths are tried in increasing order; the first length with any
    simple s-t path is the distance and its path count is returned. Exponential,
    intended for graphs of a dozen vertices.
    """
    g.require_simple("geodesic enumeration")
    if s == t:
        return 1
    adj = g.adjacency()
    on_path = [False] * g.n

    def walk(v: int, left: int) -> int:
        if left == 0:
            return int(v == t)
        if v == t:
            return 0
        on_path[v] = True
        total = 0
        for w in adj[v]:
            if not on_path[w]:
                total += walk(w, left - 1)
        on_path[v] = False
        return total

    for length in range(1, g.n):
        found = walk(s, length)
        if found:
            return found
    return 0
