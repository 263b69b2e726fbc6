"""Pairwise failure probability: asymptotic model, Monte Carlo and exact enumeration."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import generators, kernels
from .errors import GateFailed, InstanceTooLarge
from .geodetics import classify
from .graph import Graph, distance_profile

DEFAULT_TRIALS = 100_000
DEFAULT_SEED = 42
# fixed so that results do not depend on how trials are scheduled
CHUNK = 10_000

EXACT_MAX_EDGES = 20
EXACT_MAX_NODES = 20
EXACT_MAX_NODES_WITH_NODE_FAILURES = 12
EXACT_MAX_STATE_BITS = 26


@dataclass(frozen=True)
class FailureParams:
    q1: float = 0.0
    q2: float | None = None  # None means 1/m of the graph under test
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not 0.0 <= self.q1 <= 1.0:
            raise ValueError(f"q1 must lie in [0, 1], got {self.q1}")
        if self.q2 is not None and not 0.0 <= self.q2 <= 1.0:
            raise ValueError(f"q2 must lie in [0, 1], got {self.q2}")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")

    def channel_q(self, g: Graph) -> float:
        return 1.0 / g.channels if self.q2 is None else self.q2


@dataclass(frozen=True)
class ReliabilityReport:
    Q_asymptotic: float | None
    Q_pairwise: float
    P: float
    method: str
    stderr: float | None
    pair: tuple[int, int] | None
    q1: float
    q2: float
    trials: int | None = None
    seed: int | None = None
    segments_coincide: bool = False

    def as_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# asymptotic model


def asymptotic_segment(n: int, l: int) -> str:
    """Which piece of the model applies at ``l`` extra channels."""
    if l == 0:
        return "ring"
    if 5 * l < n:
        return "sparse"
    if 2 * l < n:
        return "plateau"
    return "dense"


def asymptotic_q2(n: int, l: int, q2: float) -> float:
    """Order-of-magnitude failure probability of an [n, n + l]-network.

    All hidden constants are 1. Pieces: ``(n q2 / 2)^2`` at ``l = 0``;
    ``2 (n q2 / 6 l)^2`` for ``0 < l < n/5``, never below the plateau;
    ``2 q2^2`` for ``n/5 <= l < n/2``; ``2 q2^(i+1)`` with
    ``i = floor(2 l / n)`` capped at ``n - 3`` beyond that.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if l < 0:
        raise ValueError(f"l must be non-negative, got {l}")
    plateau = 2.0 * q2**2
    seg = asymptotic_segment(n, l)
    if seg == "ring":
        return (n * q2 / 2.0) ** 2
    if seg == "sparse":
        return max(2.0 * (n * q2 / (6.0 * l)) ** 2, plateau)
    if seg == "plateau":
        return plateau
    i = min((2 * l) // n, n - 3)
    return 2.0 * q2 ** (i + 1)


def plateau_coincides(n: int, l: int) -> bool:
    """True where the dense piece with i = 1 repeats the plateau value."""
    return asymptotic_segment(n, l) == "dense" and min((2 * l) // n, n - 3) == 1


def fig8_curve(n: int, q2: float, l_max: int) -> list[tuple[int, float]]:
    if l_max > (n - 3) * n / 2:
        raise ValueError(f"l_max must not exceed (n-3)*n/2 = {(n - 3) * n / 2}")
    return [(l, asymptotic_q2(n, l, q2)) for l in range(l_max + 1)]


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Table2Row:
    t: int
    d: int
    n: int
    m: int
    P: float
    A_over_delta: Fraction
    geodetic: bool


def table2_row(t: int) -> Table2Row:
    """Diameter, size, reliability and relative cost of the t-th Petersen homeomorph."""
    g = generators.petersen_homeomorph(t)
    prof = distance_profile(g)
    cls = classify(prof)
    if cls.K != 1 or prof.diameter != 2 + t:
        raise GateFailed(f"{g.label}: K={cls.K}, d={prof.diameter}; expected geodetic with d={2 + t}")
    l = g.m - g.n
    Q = asymptotic_q2(g.n, l, 1.0 / g.m)
    return Table2Row(t=t, d=prof.diameter, n=g.n, m=g.m, P=1.0 - Q, A_over_delta=Fraction(l, g.n), geodetic=True)


def truncate4(x: float) -> float:
    """Cut to four decimals (no rounding), the convention of the published table."""
    return math.floor(x * 10_000 + 1e-9) / 10_000


# ---------------------------------------------------------------------------


def _check_simple(g: Graph) -> None:
    g.require_simple("pairwise reliability")


def _max_pair(mat: np.ndarray) -> tuple[float, tuple[int, int]]:
    n = mat.shape[0]
    iu, ju = np.triu_indices(n, 1)
    vals = mat[iu, ju]
    k = int(np.argmax(vals))
    return float(vals[k]), (int(iu[k]), int(ju[k]))


def sample_failures(g: Graph, q1: float, q2: float, trials: int, seed: int):
    """Yield ``(edge_fail, node_fail)`` chunks; chunk c draws from ``default_rng([seed, c])``."""
    for c, start in enumerate(range(0, trials, CHUNK)):
        size = min(CHUNK, trials - start)
        rng = np.random.default_rng([seed, c])
        edge_fail = rng.random((size, g.m)) < q2
        node_fail = rng.random((size, g.n)) < q1 if q1 > 0 else None
        yield edge_fail, node_fail


def monte_carlo_counts(g: Graph, q1: float, q2: float, trials: int, seed: int, backend=None) -> np.ndarray:
    counts = np.zeros((g.n, g.n), dtype=np.int64)
    for edge_fail, node_fail in sample_failures(g, q1, q2, trials, seed):
        counts += kernels.disconnect_counts(g.n, g.edge_array, edge_fail, node_fail, backend=backend)
    return counts


def monte_carlo_reliability(g: Graph, fp: FailureParams = FailureParams(), backend=None) -> ReliabilityReport:
    """Estimate ``Q = max_{i != j} Q_ij`` by sampling independent failures.

    Parallel channels fail independently, so a link of multiplicity k is cut
    with probability ``q2**k``. The standard error is the binomial one at the
    maximizing pair, evaluated at the add-one smoothed proportion
    ``(x + 1) / (trials + 2)`` so that it stays positive when no trial
    disconnects the pair.
    """
    _check_simple(g)
    q2 = fp.channel_q(g)
    counts = monte_carlo_counts(g, fp.q1, q2**g.multiplicity, fp.trials, fp.seed, backend=backend)
    Q, pair = _max_pair(counts / fp.trials)
    smoothed = (counts[pair] + 1) / (fp.trials + 2)
    stderr = math.sqrt(smoothed * (1.0 - smoothed) / fp.trials)
    return ReliabilityReport(
        Q_asymptotic=_asymptotic_for(g, q2),
        Q_pairwise=Q,
        P=1.0 - Q,
        method="monte_carlo",
        stderr=stderr,
        pair=pair,
        q1=fp.q1,
        q2=q2,
        trials=fp.trials,
        seed=fp.seed,
        segments_coincide=plateau_coincides(g.n, g.channels - g.n) if g.n >= 3 else False,
    )


def exact_q_matrix(g: Graph, q1: float, q2: float, backend=None) -> np.ndarray:
    _check_simple(g)
    if g.m > EXACT_MAX_EDGES or g.n > EXACT_MAX_NODES:
        raise InstanceTooLarge(f"exact enumeration needs m <= {EXACT_MAX_EDGES} and n <= {EXACT_MAX_NODES}")
    if q1 > 0 and (g.n > EXACT_MAX_NODES_WITH_NODE_FAILURES or g.m + g.n > EXACT_MAX_STATE_BITS):
        raise InstanceTooLarge(
            f"node failures need n <= {EXACT_MAX_NODES_WITH_NODE_FAILURES} and m + n <= {EXACT_MAX_STATE_BITS}"
        )
    return kernels.exact_q_matrix(g.n, g.edge_array, q1, q2**g.multiplicity, backend=backend)


def exact_pairwise_q(g: Graph, q1: float, q2: float, backend=None) -> float:
    """Exact ``max_{i != j} Q_ij`` by enumerating every failure state."""
    return _max_pair(exact_q_matrix(g, q1, q2, backend=backend))[0]


def exact_reliability(g: Graph, fp: FailureParams = FailureParams(), backend=None) -> ReliabilityReport:
    q2 = fp.channel_q(g)
    Q, pair = _max_pair(exact_q_matrix(g, fp.q1, q2, backend=backend))
    return ReliabilityReport(
        Q_asymptotic=_asymptotic_for(g, q2),
        Q_pairwise=Q,
        P=1.0 - Q,
        method="exact",
        stderr=None,
        pair=pair,
        q1=fp.q1,
        q2=q2,
        segments_coincide=plateau_coincides(g.n, g.channels - g.n) if g.n >= 3 else False,
    )


def asymptotic_reliability(g: Graph, q2: float | None = None) -> ReliabilityReport:
    """Model-only report with ``l = m_n - n`` and ``q2 = 1/m_n`` by default."""
    q2 = 1.0 / g.channels if q2 is None else q2
    Q = _asymptotic_for(g, q2)
    if Q is None:
        raise ValueError(f"asymptotic model needs n >= 3 and m_n >= n, got n={g.n}, m_n={g.channels}")
    Q = min(Q, 1.0)
    l = g.channels - g.n
    return ReliabilityReport(
        Q_asymptotic=Q,
        Q_pairwise=Q,
        P=1.0 - Q,
        method="asymptotic",
        stderr=None,
        pair=None,
        q1=0.0,
        q2=q2,
        segments_coincide=plateau_coincides(g.n, l),
    )


def _asymptotic_for(g: Graph, q2: float) -> float | None:
    l = g.channels - g.n
    if g.n < 3 or l < 0:
        return None
    return asymptotic_q2(g.n, l, q2)
