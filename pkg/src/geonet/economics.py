"""Network cost, structure cost and saturation cost-effectiveness."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import generators, kernels
from .errors import BadFamilyParam
from .graph import DistanceProfile, Graph, degree_summary, distance_profile


@dataclass(frozen=True)
class CostParams:
    """Cost and service-time inputs; every default is 1."""

    C1: float = 1.0  # node
    C2: float = 1.0  # transmission channel
    C_CP: float = 1.0  # processors at a node
    C_C: float = 1.0  # attaching one channel at a node
    C_CT: float = 1.0  # one inter-node channel
    S_PC: float = 1.0  # processor time per message
    S_P: float = 1.0  # channel occupancy per message

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not value > 0:
                raise ValueError(f"{name} must be strictly positive, got {value}")

    @property
    def delta(self) -> float:
        return self.C2 / self.C1

    def scaled_structure_costs(self, factor: float) -> "CostParams":
        return replace(self, C_CP=self.C_CP * factor, C_C=self.C_C * factor, C_CT=self.C_CT * factor)


def network_cost(n: int, m: int, p: CostParams = CostParams()) -> float:
    """Cost of an [n, m]-network: ``n*C1 + m*C2``."""
    if n < 2 or m < 1:
        raise ValueError(f"need n >= 2 and m >= 1, got n={n}, m={m}")
    return n * p.C1 + m * p.C2


def additional_relative_cost(n: int, l: int, delta: float) -> float:
    """Excess cost ``delta * l / n`` of ``l = m - n`` channels beyond a ring."""
    if l < 0:
        raise ValueError(f"l = m - n must be non-negative, got {l}")
    return delta * l / n


def max_additional_relative_cost(n: int, delta: float) -> float:
    """Value for the complete graph, the upper end of the regular range."""
    return delta * (n - 3) / 2


def mean_channel_degree(g: Graph) -> float:
    """Channel degree used in the structure cost: exact when regular, 2*m_n/n otherwise."""
    if g.bus:
        return 1.0
    ds = degree_summary(g)
    if ds.classification == "regular":
        return float(ds.k)
    return 2.0 * g.channels / g.n


def structure_cost(g: Graph, p: CostParams = CostParams()) -> float:
    """``n*C_CP + n*k*C_C + m_n*C_CT``."""
    k = mean_channel_degree(g)
    return g.n * p.C_CP + g.n * k * p.C_C + g.channels * p.C_CT


# ---------------------------------------------------------------------------
# saturation relations between busy probability, rate and flow density


def busy_probability(rate: float, service_time: float) -> float:
    return rate * service_time


def flow_density(rate: float, visits: float) -> float:
    return rate / visits


def saturation_flow_density(visits: float, service_time: float, busy: float = 1.0) -> float:
    """Flow density ``busy / (visits * service_time)``; ``busy -> 1`` at saturation."""
    return busy / (visits * service_time)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EffectivenessReport:
    family: str | None
    n: int
    channels: int
    V_PC: float
    V_CS: float
    V_R: float
    V_R_max: float
    k0: float
    k0_binding: str
    k0_max: float
    C_R: float
    chi: float
    closed_form_k0: float | None = None
    closed_form_vr_max: float | None = None
    closed_form_vr_max_is_lower_bound: bool = False
    params: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return asdict(self)


def table1_k0(family: str, n: int, S_P: float = 1.0, c: int | None = None) -> float | None:
    """Large-n flow density from the closed-form table, or ``None``."""
    if family == "bus":
        return 1.0 / S_P
    if family == "complete":
        return n / S_P
    if family == "double_ring":
        return 8.0 / S_P
    if family == "chordal_ring" and c is not None:
        return 2.0 * (c + 1) / S_P
    return None


def table1_vr_max(family: str, n: int, S_P: float = 1.0, c: int | None = None) -> float | None:
    """Closed-form worst-channel crossing rate times ``S_P`` (lower bound for chordal rings)."""
    if family == "bus":
        return S_P
    if family == "complete":
        return 2.0 * S_P / (n * (n - 1))
    if family == "double_ring":
        return n * S_P / (8.0 * (n - 1)) if n % 2 == 0 else S_P * (n + 1) / (8.0 * n)
    if family == "chordal_ring" and c is not None:
        return S_P * chordal_ring_vr_lower_bound(n, c)
    return None


def chordal_ring_vr_lower_bound(n: int, c: int) -> float:
    """Per-unit-``S_P`` lower bound ``n / (2 (c+1) (n-1))`` on the worst channel rate."""
    if n % 2 or c % 2 == 0:
        raise ValueError(f"need even n and odd c, got n={n}, c={c}")
    return n / (2.0 * (c + 1) * (n - 1))


def crossing_rates(g: Graph, profile: DistanceProfile, backend: str | None = None) -> tuple[float, float, float]:
    """Return ``(V_CS, V_R, V_R_max)`` for a topology.

    ``V_R`` spreads the mean geodesic length over all channels; ``V_R_max`` is
    the load on the busiest channel when each pair splits its message evenly
    over its geodesics.
    """
    n = g.n
    pairs = n * (n - 1)
    V_CS = sum(l * r for l, r in profile.reach.items()) * n / pairs
    V_R = V_CS / g.channels
    if g.bus:
        return V_CS, V_R, V_R
    loads = kernels.edge_loads(profile.dist, profile.sigma, g.edge_array, backend=backend)
    V_R_max = float(loads.max()) / g.multiplicity / pairs
    return V_CS, V_R, V_R_max


def effectiveness(g: Graph, p: CostParams = CostParams(), profile: DistanceProfile | None = None) -> EffectivenessReport:
    profile = profile or distance_profile(g)
    n = g.n
    V_PC = 1.0 / n
    V_CS, V_R, V_R_max = crossing_rates(g, profile)
    proc = 1.0 / (V_PC * p.S_PC)
    chan = 1.0 / (V_R * p.S_P)
    k0 = min(proc, chan)
    k0_max = min(proc, 1.0 / (V_R_max * p.S_P))
    C_R = structure_cost(g, p)
    family = g.family
    c = g.params[1] if family == "chordal_ring" else None
    cf_k0 = table1_k0(family, n, p.S_P, c) if family else None
    cf_vr = table1_vr_max(family, n, p.S_P, c) if family else None
    return EffectivenessReport(
        family=family,
        n=n,
        channels=g.channels,
        V_PC=V_PC,
        V_CS=V_CS,
        V_R=V_R,
        V_R_max=V_R_max,
        k0=k0,
        k0_binding="processor" if proc <= chan else "channel",
        k0_max=k0_max,
        C_R=C_R,
        chi=k0 / C_R,
        closed_form_k0=cf_k0,
        closed_form_vr_max=cf_vr,
        closed_form_vr_max_is_lower_bound=family == "chordal_ring",
        params=asdict(p),
    )


# ---------------------------------------------------------------------------

FIG7_FAMILIES = (("bus",), ("complete",), ("double_ring",), ("chordal_ring", 5))


@dataclass(frozen=True)
class CurveRow:
    family: str
    n: int
    chi: float
    k0: float
    C_R: float


def fig7_curve(families=FIG7_FAMILIES, n_range=range(4, 65), p: CostParams = CostParams()):
    """Cost-effectiveness per (family, n); returns ``(rows, skipped)``.

    ``families`` holds templates ``(name, *extra)`` instantiated as
    ``name(n, *extra)``. Rows come out in family order, then ascending n.
    """
    rows: list[CurveRow] = []
    skipped: list[dict] = []
    for template in families:
        name, extra = template[0], tuple(template[1:])
        for n in sorted(n_range):
            try:
                g = generators.generate(generators.FamilySpec(name, (n, *extra)))
            except BadFamilyParam as exc:
                skipped.append({"family": name, "n": n, "reason": str(exc)})
                continue
            rep = effectiveness(g, p)
            rows.append(CurveRow(name, n, rep.chi, rep.k0, rep.C_R))
    return rows, skipped
