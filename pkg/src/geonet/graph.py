"""Graph representation and exact distance, geodesic and connectivity measures."""
from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .errors import BadVertex, BusNotClassifiable, Disconnected, DuplicateEdge, LoopRejected


@dataclass(frozen=True)
class Graph:
    """Simple undirected connected graph on vertices ``0..n-1``.

    ``multiplicity`` is a uniform parallel-channel count used only for
    capacity and cost accounting; distances ignore it. ``bus`` marks the
    shared-medium topology, which has no edges but puts every node one
    channel away from every other.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    multiplicity: int = 1
    family: str | None = None
    params: tuple = ()
    bus: bool = False

    @property
    def m(self) -> int:
        """Structural edge count."""
        return len(self.edges)

    @property
    def channels(self) -> int:
        """Channel count m_n (a bus is one shared channel)."""
        return 1 if self.bus else self.multiplicity * self.m

    @property
    def label(self) -> str:
        if self.family is None:
            return f"graph(n={self.n})"
        if not self.params:
            return self.family
        return f"{self.family}({','.join(str(p) for p in self.params)})"

    @cached_property
    def edge_array(self) -> np.ndarray:
        return np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj:
            nbrs.sort()
        return adj

    def require_simple(self, what: str) -> None:
        if self.bus:
            raise BusNotClassifiable(f"{what} is undefined for the shared bus topology")


def build_graph(n, edge_list, multiplicity=1, family=None, params=()) -> Graph:
    """Validate an edge list and return a connected simple :class:`Graph`."""
    if n < 1:
        raise BadVertex(f"vertex count must be positive, got {n}")
    if multiplicity < 1:
        raise ValueError(f"multiplicity must be a positive integer, got {multiplicity}")
    seen: set[tuple[int, int]] = set()
    for u, v in edge_list:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise BadVertex(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise LoopRejected(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdge(f"edge {key} listed twice")
        seen.add(key)
    edges = tuple(sorted(seen))
    if not _connected(n, edges):
        raise Disconnected(f"graph on {n} vertices with {len(edges)} edges is not connected")
    return Graph(n=n, edges=edges, multiplicity=int(multiplicity), family=family, params=tuple(params))


def bus_topology(n: int) -> Graph:
    return Graph(n=n, edges=(), multiplicity=1, family="bus", params=(n,), bus=True)


def _connected(n, edges) -> bool:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DistanceProfile:
    n: int
    dist: np.ndarray
    sigma: np.ndarray
    diameter: int
    radius: int
    centers: tuple[int, ...]
    eccentricity: tuple[int, ...]
    reach: dict[int, float]
    bus: bool = False

    def reach_counts(self) -> dict[int, int]:
        """Ordered-pair counts per distance (``reach[l] * n``)."""
        counts = Counter(self.dist[~np.eye(self.n, dtype=bool)].tolist())
        return {int(l): counts[l] for l in sorted(counts)}


def distance_profile(g: Graph, backend: str | None = None) -> DistanceProfile:
    """All-pairs hop distances and geodesic counts by breadth-first search."""
    n = g.n
    if g.bus:
        dist = np.ones((n, n), dtype=np.int64)
        np.fill_diagonal(dist, 0)
        sigma = np.ones((n, n), dtype=np.int64)
    else:
        dist, sigma = kernels.bfs_counts(n, g.edge_array, backend=backend)
    if n == 1:
        ecc = np.zeros(1, dtype=np.int64)
    else:
        ecc = dist.max(axis=1)
    d, r = int(ecc.max()), int(ecc.min())
    centers = tuple(int(i) for i in np.flatnonzero(ecc == r))
    offdiag = dist[~np.eye(n, dtype=bool)]
    counts = np.bincount(offdiag, minlength=d + 1) if offdiag.size else np.zeros(1, dtype=np.int64)
    reach = {l: counts[l] / n for l in range(1, d + 1)}
    return DistanceProfile(
        n=n,
        dist=dist,
        sigma=sigma,
        diameter=d,
        radius=r,
        centers=centers,
        eccentricity=tuple(int(x) for x in ecc),
        reach=reach,
        bus=g.bus,
    )


def hierarchy_layers(g: Graph, profile: DistanceProfile | None = None) -> list[list[int]]:
    """Breadth-first layers rooted at the first center vertex."""
    profile = profile or distance_profile(g)
    root = profile.centers[0]
    row = profile.dist[root]
    return [np.flatnonzero(row == l).tolist() for l in range(int(row.max()) + 1)]


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeSummary:
    degrees: tuple[int, ...]
    min_deg: int
    max_deg: int
    classification: str
    k: int | None = None
    n0: int = 0
    n1: int = 0

    def describe(self) -> str:
        if self.classification == "regular":
            return f"regular({self.k})"
        if self.classification == "biregular":
            return f"biregular({self.k},{self.k + 1};n0={self.n0},n1={self.n1})"
        return "irregular"


def degree_summary(g: Graph) -> DegreeSummary:
    """Channel degrees and the regular/biregular/irregular classification.

    For a biregular graph ``n0`` counts vertices of the lower degree ``k`` and
    ``n1`` those of degree ``k + 1``.
    """
    if g.bus:
        degrees = [1] * g.n
    else:
        struct = [0] * g.n
        for u, v in g.edges:
            struct[u] += 1
            struct[v] += 1
        degrees = [d * g.multiplicity for d in struct]
    values = sorted(set(degrees))
    lo, hi = values[0], values[-1]
    if len(values) == 1:
        return DegreeSummary(tuple(degrees), lo, hi, "regular", k=lo, n0=g.n, n1=0)
    if len(values) == 2 and hi - lo == 1:
        n1 = degrees.count(hi)
        return DegreeSummary(tuple(degrees), lo, hi, "biregular", k=lo, n0=g.n - n1, n1=n1)
    return DegreeSummary(tuple(degrees), lo, hi, "irregular")


@dataclass(frozen=True)
class BiregularSplit:
    k: int
    n0: int
    n1: int
    ceiling_bound: int


def biregular_split(n: int, m: int) -> BiregularSplit:
    """Solve ``n0*k + n1*(k+1) = 2m`` with ``n0 + n1 = n``.

    ``k`` is ``floor(2m/n)`` so that both counts are non-negative; the
    ceiling ``ceil(2m/n)`` bound on the minimum degree is returned alongside.
    """
    if n < 2 or m < n - 1:
        raise ValueError(f"need n >= 2 and m >= n - 1, got n={n}, m={m}")
    k = (2 * m) // n
    n1 = 2 * m - n * k
    return BiregularSplit(k=k, n0=n - n1, n1=n1, ceiling_bound=math.ceil(2 * m / n))


# ---------------------------------------------------------------------------


def _local_connectivity(adj: list[list[int]], s: int, t: int, cap: int) -> int:
    """Maximum number of internally vertex-disjoint s-t paths (at most ``cap``).

    Unit-capacity max flow on the split graph: vertex x becomes x_in = 2x and
    x_out = 2x + 1 joined by an arc of capacity 1 (unbounded for s and t).
    """
    n = len(adj)
    flow: dict[tuple[int, int], int] = {}

    def cap_of(a: int, b: int) -> int:
        if a // 2 == b // 2:
            if a % 2 == 0 and b == a + 1:
                return n if a // 2 in (s, t) else 1
            return 0
        if a % 2 == 1 and b % 2 == 0 and (b // 2) in adj_set[a // 2]:
            return 1
        return 0

    adj_set = [set(a) for a in adj]

    def neighbours(x: int):
        v = x // 2
        if x % 2 == 0:
            yield x + 1
            for w in adj[v]:
                yield 2 * w + 1  # reverse of w_out -> v_in
        else:
            yield x - 1
            for w in adj[v]:
                yield 2 * w

    source, sink = 2 * s + 1, 2 * t
    total = 0
    while total < cap:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            x = queue.popleft()
            for y in neighbours(x):
                if y in parent:
                    continue
                residual = cap_of(x, y) - flow.get((x, y), 0) + flow.get((y, x), 0)
                if residual > 0:
                    parent[y] = x
                    queue.append(y)
        if sink not in parent:
            break
        y = sink
        while parent[y] is not None:
            x = parent[y]
            back = flow.get((y, x), 0)
            if back > 0:
                flow[(y, x)] = back - 1
            else:
                flow[(x, y)] = flow.get((x, y), 0) + 1
            y = x
        total += 1
    return total


def vertex_connectivity(g: Graph) -> int:
    """Size of a minimum vertex cut (``n - 1`` for complete graphs).

    Uses the Esfahanian-Hakimi reduction: with v of minimum degree, only pairs
    (v, u) for u not adjacent to v and non-adjacent pairs of neighbours of v
    need a max-flow evaluation.
    """
    g.require_simple("vertex connectivity")
    n = g.n
    if g.m == n * (n - 1) // 2:
        return n - 1
    adj = g.adjacency()
    adj_set = [set(a) for a in adj]
    v = min(range(n), key=lambda x: (len(adj[x]), x))
    best = len(adj[v])
    for u in range(n):
        if u != v and u not in adj_set[v]:
            best = min(best, _local_connectivity(adj, v, u, best))
    nbrs = adj[v]
    for i, x in enumerate(nbrs):
        for y in nbrs[i + 1 :]:
            if y not in adj_set[x]:
                best = min(best, _local_connectivity(adj, x, y, best))
    return best
