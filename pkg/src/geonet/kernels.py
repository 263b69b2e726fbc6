"""Hot numeric kernels, each with a numba and a pure-numpy implementation.

All public functions take an optional ``backend`` argument ("numba" or
"numpy"); ``None`` selects the process default from :mod:`geonet._accel`.
Both implementations of a kernel return identical results for identical
inputs, which the test suite checks directly.

Graphs are passed as an ``(m, 2)`` int64 edge array plus the vertex count.
"""
from __future__ import annotations

import numpy as np

from ._accel import njit, resolve

# Geodesic counts above this are treated as overflow of the int64 accumulator.
SIGMA_LIMIT = 2**62


def csr_from_edges(n: int, edges: np.ndarray):
    """Symmetric CSR adjacency with a parallel array of edge ids."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    m = edges.shape[0]
    src = np.concatenate([edges[:, 0], edges[:, 1]])
    dst = np.concatenate([edges[:, 1], edges[:, 0]])
    eid = np.concatenate([np.arange(m), np.arange(m)]).astype(np.int64)
    order = np.lexsort((dst, src))
    src, dst, eid = src[order], dst[order], eid[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    np.cumsum(indptr, out=indptr)
    return indptr, dst.astype(np.int64), eid


# ---------------------------------------------------------------------------
# all-pairs BFS with geodesic counting


@njit
def _bfs_counts_nb(n, indptr, indices):
    dist = np.full((n, n), -1, dtype=np.int64)
    sigma = np.zeros((n, n), dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        dist[s, s] = 0
        sigma[s, s] = 1
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[s, u]
            for p in range(indptr[u], indptr[u + 1]):
                v = indices[p]
                if dist[s, v] < 0:
                    dist[s, v] = du + 1
                    queue[tail] = v
                    tail += 1
                if dist[s, v] == du + 1:
                    sigma[s, v] += sigma[s, u]
                    if sigma[s, v] > SIGMA_LIMIT:
                        raise OverflowError("geodesic count exceeds int64 range")
    return dist, sigma


def _bfs_counts_np(n, edges):
    adj = np.zeros((n, n), dtype=np.int64)
    adj[edges[:, 0], edges[:, 1]] = 1
    adj[edges[:, 1], edges[:, 0]] = 1
    dist = np.full((n, n), -1, dtype=np.int64)
    sigma = np.zeros((n, n), dtype=np.int64)
    np.fill_diagonal(dist, 0)
    np.fill_diagonal(sigma, 1)
    frontier = np.eye(n, dtype=np.int64)
    level = 0
    while frontier.any():
        level += 1
        # float shadow of the product catches int64 wraparound
        if (frontier.astype(np.float64) @ adj.astype(np.float64)).max(initial=0) > SIGMA_LIMIT:
            raise OverflowError("geodesic count exceeds int64 range")
        cand = frontier @ adj
        new = (dist < 0) & (cand > 0)
        dist[new] = level
        sigma[new] = cand[new]
        frontier = np.where(new, cand, 0)
    return dist, sigma


def bfs_counts(n: int, edges: np.ndarray, backend: str | None = None):
    """Hop distances and geodesic counts for every ordered vertex pair.

    Returns ``(dist, sigma)`` as ``(n, n)`` int64 arrays; unreachable pairs
    have ``dist == -1`` and ``sigma == 0``.
    """
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if resolve(backend) == "numba":
        indptr, indices, _ = csr_from_edges(n, edges)
        return _bfs_counts_nb(n, indptr, indices)
    return _bfs_counts_np(n, edges)


# ---------------------------------------------------------------------------
# per-edge geodesic traffic


@njit
def _edge_loads_nb(dist, sigma, edges):
    n = dist.shape[0]
    m = edges.shape[0]
    load = np.zeros(m, dtype=np.float64)
    for e in range(m):
        for o in range(2):
            if o == 0:
                u = edges[e, 0]
                v = edges[e, 1]
            else:
                u = edges[e, 1]
                v = edges[e, 0]
            acc = 0.0
            for s in range(n):
                dsu = dist[s, u]
                ssu = sigma[s, u]
                for t in range(n):
                    if s != t and dsu + 1 + dist[v, t] == dist[s, t]:
                        acc += ssu * sigma[v, t] / sigma[s, t]
            load[e] += acc
    return load


def _edge_loads_np(dist, sigma, edges):
    n = dist.shape[0]
    load = np.zeros(edges.shape[0], dtype=np.float64)
    off = ~np.eye(n, dtype=bool)
    sig = sigma.astype(np.float64)
    for e, (a, b) in enumerate(edges):
        for u, v in ((a, b), (b, a)):
            on_path = (dist[:, u][:, None] + 1 + dist[v, :][None, :] == dist) & off
            frac = np.outer(sig[:, u], sig[v, :]) / sig
            load[e] += frac[on_path].sum()
    return load


def edge_loads(dist, sigma, edges, backend: str | None = None) -> np.ndarray:
    """Expected number of ordered-pair messages crossing each edge.

    Every ordered pair (s, t) sends one message split evenly over its
    ``sigma[s, t]`` geodesics. The loads sum to ``dist.sum()``.
    """
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    dist = np.ascontiguousarray(dist, dtype=np.int64)
    sigma = np.ascontiguousarray(sigma, dtype=np.int64)
    if resolve(backend) == "numba":
        return _edge_loads_nb(dist, sigma, edges)
    return _edge_loads_np(dist, sigma, edges)


# ---------------------------------------------------------------------------
# pairwise disconnection counting over sampled failure states (union-find)


@njit
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit
def _disconnect_counts_nb(n, edges, indptr, indices, eids, edge_fail, node_fail, use_nodes):
    trials = edge_fail.shape[0]
    m = edges.shape[0]
    counts = np.zeros((n, n), dtype=np.int64)
    parent = np.empty(n, dtype=np.int64)
    mark = np.zeros(n, dtype=np.int64)
    stamp = 0
    for t in range(trials):
        for i in range(n):
            parent[i] = i
        for e in range(m):
            if edge_fail[t, e]:
                continue
            u = edges[e, 0]
            v = edges[e, 1]
            if use_nodes and (node_fail[t, u] or node_fail[t, v]):
                continue
            ru = _find(parent, u)
            rv = _find(parent, v)
            if ru != rv:
                parent[ru] = rv
        if not use_nodes:
            for i in range(n):
                ri = _find(parent, i)
                for j in range(i + 1, n):
                    if ri != _find(parent, j):
                        counts[i, j] += 1
            continue
        # endpoints of the pair are revived: a dead endpoint reaches the
        # components of its live neighbours over live channels
        for i in range(n):
            stamp += 1
            if node_fail[t, i]:
                for p in range(indptr[i], indptr[i + 1]):
                    w = indices[p]
                    if not edge_fail[t, eids[p]] and not node_fail[t, w]:
                        mark[_find(parent, w)] = stamp
            else:
                mark[_find(parent, i)] = stamp
            for j in range(i + 1, n):
                hit = False
                if node_fail[t, j]:
                    for p in range(indptr[j], indptr[j + 1]):
                        w = indices[p]
                        if edge_fail[t, eids[p]]:
                            continue
                        if w == i:
                            hit = True
                            break
                        if not node_fail[t, w] and mark[_find(parent, w)] == stamp:
                            hit = True
                            break
                else:
                    if mark[_find(parent, j)] == stamp:
                        hit = True
                    else:
                        for p in range(indptr[j], indptr[j + 1]):
                            if indices[p] == i and not edge_fail[t, eids[p]]:
                                hit = True
                                break
                if not hit:
                    counts[i, j] += 1
    return counts


def _propagate_labels(n, edges, usable):
    """Component labels per trial by min-label propagation along usable edges."""
    trials = usable.shape[0]
    labels = np.tile(np.arange(n, dtype=np.int64), (trials, 1))
    changed = True
    while changed:
        changed = False
        for e, (a, b) in enumerate(edges):
            low = np.minimum(labels[:, a], labels[:, b])
            upd = usable[:, e] & ((labels[:, a] != low) | (labels[:, b] != low))
            if upd.any():
                labels[upd, a] = low[upd]
                labels[upd, b] = low[upd]
                changed = True
    return labels


def _disconnect_counts_np(n, edges, edge_fail, node_fail, use_nodes):
    counts = np.zeros((n, n), dtype=np.int64)
    iu, ju = np.triu_indices(n, 1)
    alive_e = ~edge_fail
    if not use_nodes:
        labels = _propagate_labels(n, edges, alive_e)
        counts[iu, ju] = (labels[:, iu] != labels[:, ju]).sum(axis=0)
        return counts
    alive_v = ~node_fail
    usable = alive_e & alive_v[:, edges[:, 0]] & alive_v[:, edges[:, 1]]
    labels = _propagate_labels(n, edges, usable)
    trials = edge_fail.shape[0]
    rows = np.arange(trials)
    # reach[t, x, c]: vertex x, if revived, joins component label c
    reach = np.zeros((trials, n, n), dtype=bool)
    reach[rows[:, None], np.arange(n)[None, :], labels] = alive_v
    direct = np.zeros((trials, n, n), dtype=bool)
    for e, (a, b) in enumerate(edges):
        ok = alive_e[:, e]
        direct[:, a, b] |= ok
        direct[:, b, a] |= ok
        sel = ok & node_fail[:, a] & alive_v[:, b]
        reach[rows[sel], a, labels[sel, b]] = True
        sel = ok & node_fail[:, b] & alive_v[:, a]
        reach[rows[sel], b, labels[sel, a]] = True
    for i, j in zip(iu, ju):
        joined = direct[:, i, j] | (reach[:, i, :] & reach[:, j, :]).any(axis=1)
        counts[i, j] = int((~joined).sum())
    return counts


def disconnect_counts(n, edges, edge_fail, node_fail=None, backend: str | None = None):
    """Count, per unordered pair ``i < j``, the failure states separating i and j.

    ``edge_fail`` is a ``(trials, m)`` boolean array of failed channels and
    ``node_fail`` an optional ``(trials, n)`` array of failed nodes. The two
    vertices of the pair under test are always treated as working. Only the
    upper triangle of the returned ``(n, n)`` array is filled.
    """
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    edge_fail = np.ascontiguousarray(edge_fail, dtype=np.bool_)
    use_nodes = node_fail is not None and bool(np.any(node_fail))
    if node_fail is None:
        node_fail = np.zeros((edge_fail.shape[0], n), dtype=np.bool_)
    node_fail = np.ascontiguousarray(node_fail, dtype=np.bool_)
    if resolve(backend) == "numba":
        indptr, indices, eids = csr_from_edges(n, edges)
        return _disconnect_counts_nb(n, edges, indptr, indices, eids, edge_fail, node_fail, use_nodes)
    return _disconnect_counts_np(n, edges, edge_fail, node_fail, use_nodes)


# ---------------------------------------------------------------------------
# exact pairwise disconnection probability by state enumeration (BFS based)


@njit
def _exact_q_nb(n, m, indptr, indices, eids, q1, q2, use_nodes):
    qmat = np.zeros((n, n), dtype=np.float64)
    # probability of an edge state depends only on its failure count
    epow = np.empty(m + 1, dtype=np.float64)
    for k in range(m + 1):
        epow[k] = q2**k * (1.0 - q2) ** (m - k)
    npow = np.empty(n + 1, dtype=np.float64)
    for k in range(n + 1):
        npow[k] = q1**k * (1.0 - q1) ** (n - k) if use_nodes else (1.0 if k == 0 else 0.0)
    n_node_states = 1 << n if use_nodes else 1
    visited = np.zeros(n, dtype=np.int64)
    touched = np.zeros(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    stamp = 0
    for es in range(1 << m):
        kf = 0
        x = es
        while x:
            x &= x - 1
            kf += 1
        pe = epow[kf]
        if pe == 0.0:
            continue
        for ns in range(n_node_states):
            kn = 0
            x = ns
            while x:
                x &= x - 1
                kn += 1
            w = pe * npow[kn]
            if w == 0.0:
                continue
            for s in range(n):
                stamp += 1
                visited[s] = stamp
                touched[s] = stamp
                head = 0
                tail = 1
                queue[0] = s
                while head < tail:
                    u = queue[head]
                    head += 1
                    for p in range(indptr[u], indptr[u + 1]):
                        if (es >> eids[p]) & 1:
                            continue
                        v = indices[p]
                        touched[v] = stamp
                        if visited[v] != stamp and not ((ns >> v) & 1):
                            visited[v] = stamp
                            queue[tail] = v
                            tail += 1
                for t in range(s + 1, n):
                    if touched[t] != stamp:
                        qmat[s, t] += w
    return qmat


def _exact_q_np(n, edges, q1, q2, use_nodes, chunk=1 << 14):
    m = edges.shape[0]
    qmat = np.zeros((n, n), dtype=np.float64)
    nbits = m + (n if use_nodes else 0)
    total = 1 << nbits
    shifts = np.arange(nbits, dtype=np.int64)
    for start in range(0, total, chunk):
        states = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = ((states[:, None] >> shifts[None, :]) & 1).astype(bool)
        efail = bits[:, :m]
        nfail = bits[:, m:] if use_nodes else np.zeros((len(states), n), dtype=bool)
        kf = efail.sum(axis=1)
        w = q2**kf * (1.0 - q2) ** (m - kf)
        if use_nodes:
            kn = nfail.sum(axis=1)
            w = w * q1**kn * (1.0 - q1) ** (n - kn)
        # reach[b, s, v]: v touched from source s through working intermediates
        visited = np.broadcast_to(np.eye(n, dtype=bool), (len(states), n, n)).copy()
        touched = visited.copy()
        alive_e = ~efail
        while True:
            grown = touched.copy()
            for e, (a, b) in enumerate(edges):
                ok = alive_e[:, e][:, None]
                grown[:, :, b] |= visited[:, :, a] & ok
                grown[:, :, a] |= visited[:, :, b] & ok
            new_visited = visited | (grown & ~nfail[:, None, :])
            if np.array_equal(grown, touched) and np.array_equal(new_visited, visited):
                break
            touched, visited = grown, new_visited
        qmat += np.einsum("b,bst->st", w, (~touched).astype(np.float64))
    return np.triu(qmat, 1)


def exact_q_matrix(n, edges, q1: float, q2: float, backend: str | None = None) -> np.ndarray:
    """Exact pairwise disconnection probabilities by enumerating failure states.

    Channels fail independently with probability ``q2`` and nodes with
    probability ``q1``; the two endpoints of a pair always count as working.
    Only the upper triangle of the returned array is filled.
    """
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    use_nodes = q1 > 0.0
    if resolve(backend) == "numba":
        indptr, indices, eids = csr_from_edges(n, edges)
        return _exact_q_nb(n, edges.shape[0], indptr, indices, eids, float(q1), float(q2), use_nodes)
    return _exact_q_np(n, edges, float(q1), float(q2), use_nodes)
