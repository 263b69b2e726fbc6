"""Constraint-driven selection and ranking of catalog topologies."""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field

from . import generators
from .economics import CostParams, additional_relative_cost, effectiveness
from .errors import BadFamilyParam
from .geodetics import classify
from .graph import Graph, degree_summary, distance_profile, hierarchy_layers, vertex_connectivity
from .io import read_edge_list
from .reliability import FailureParams, asymptotic_reliability

log = logging.getLogger(__name__)

POLICIES = ("lexicographic", "weighted")


@dataclass(frozen=True)
class SynthesisQuery:
    n_min: int
    n_max: int
    d_max: int
    k_max: int | None = None
    geodeticity_max: int = 0  # 0 leaves geodeticity unconstrained
    delta: float = 1.0
    cost_params: CostParams = field(default_factory=CostParams)
    failure_params: FailureParams = field(default_factory=FailureParams)
    policy: str = "lexicographic"
    weights: dict = field(default_factory=lambda: {"P": 1.0, "chi": 1.0, "A": 1.0})
    files: tuple[str, ...] = ()

    def __post_init__(self):
        if self.n_min > self.n_max:
            raise ValueError(f"empty n range [{self.n_min}, {self.n_max}]")
        if self.d_max < 1:
            raise ValueError(f"d_max must be at least 1, got {self.d_max}")
        if self.geodeticity_max < 0:
            raise ValueError("geodeticity_max must be non-negative")
        if self.policy not in POLICIES:
            raise ValueError(f"policy must be one of {POLICIES}, got {self.policy!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "SynthesisQuery":
        data = dict(data)
        if "n_range" in data:
            data["n_min"], data["n_max"] = data.pop("n_range")
        if "cost_params" in data:
            data["cost_params"] = CostParams(**data["cost_params"])
        if "failure_params" in data:
            data["failure_params"] = FailureParams(**data["failure_params"])
        if "files" in data:
            data["files"] = tuple(data["files"])
        return cls(**data)

    def echo(self) -> dict:
        out = asdict(self)
        out["n_range"] = [out.pop("n_min"), out.pop("n_max")]
        return out


@dataclass
class RankedCandidate:
    family: str
    params: tuple
    label: str
    n: int
    m: int
    channels: int
    d: int
    k_class: str
    max_channel_degree: int
    connectivity: int
    geodetic_K: int
    geodetic_label: str
    A: float
    chi: float
    P: float
    hierarchy_levels: int
    flexibility: int = 0
    rank: int = 0
    dominated_by: list[str] = field(default_factory=list)

    @property
    def key(self) -> tuple:
        return (self.family, self.n, self.params)


def catalog(n_min: int, n_max: int):
    """Every catalog family instance with ``n_min <= n <= n_max``."""
    fixed = [generators.wagner_ring, generators.moebius_kantor_candidate, generators.chorded_ring16]
    fixed += [lambda t=t: generators.petersen_homeomorph(t) for t in range(4)]
    for make in fixed:
        g = make()
        if n_min <= g.n <= n_max:
            yield g
    for n in range(max(n_min, 2), n_max + 1):
        specs = [("complete", (n,)), ("ring", (n,)), ("double_ring", (n,))]
        specs += [("chordal_ring", (n, c)) for c in range(3, n - 2, 2)]
        for name, params in specs:
            try:
                yield generators.generate(generators.FamilySpec(name, params))
            except BadFamilyParam as exc:
                log.debug("skip %s%s: %s", name, params, exc)


def _score(g: Graph, q: SynthesisQuery, skipped: list) -> RankedCandidate | None:
    prof = distance_profile(g)
    ds = degree_summary(g)
    why = None
    if prof.diameter > q.d_max:
        why = f"diameter {prof.diameter} > {q.d_max}"
    elif q.k_max is not None and ds.max_deg > q.k_max:
        why = f"channel degree {ds.max_deg} > {q.k_max}"
    cls = classify(prof)
    kappa = vertex_connectivity(g)
    if why is None and q.geodeticity_max and cls.K > q.geodeticity_max:
        why = f"geodesic multiplicity {cls.K} > {q.geodeticity_max}"
    if why is None and q.geodeticity_max and kappa < 2:
        why = f"not a block (vertex connectivity {kappa})"
    if why is not None:
        skipped.append({"candidate": g.label, "reason": why})
        return None
    eff = effectiveness(g, q.cost_params, profile=prof)
    rel = asymptotic_reliability(g)
    return RankedCandidate(
        family=g.family or "graph",
        params=g.params,
        label=g.label,
        n=g.n,
        m=g.m,
        channels=g.channels,
        d=prof.diameter,
        k_class=ds.describe(),
        max_channel_degree=ds.max_deg,
        connectivity=kappa,
        geodetic_K=cls.K,
        geodetic_label=cls.label,
        A=additional_relative_cost(g.n, g.channels - g.n, q.delta),
        chi=float(eff.chi),
        P=rel.P,
        hierarchy_levels=len(hierarchy_layers(g, prof)) - 1,
    )


def dominates(a: RankedCandidate, b: RankedCandidate) -> bool:
    ge = a.chi >= b.chi and a.P >= b.P and a.A <= b.A
    gt = a.chi > b.chi or a.P > b.P or a.A < b.A
    return ge and gt


def pareto_front(candidates: list[RankedCandidate]) -> list[RankedCandidate]:
    """Candidates no other candidate dominates in (chi, P, -A); input order kept."""
    return [c for c in candidates if not any(dominates(o, c) for o in candidates if o is not c)]


def _sort_key(c: RankedCandidate, q: SynthesisQuery, chi_scale: float):
    tie = (c.family, c.n, str(c.params))
    if q.policy == "lexicographic":
        return (-c.P, -c.chi, c.A) + tie
    w = q.weights
    # chi normalized by the best candidate, so rescaling costs changes nothing
    score = w.get("P", 1.0) * c.P + w.get("chi", 1.0) * c.chi / chi_scale - w.get("A", 1.0) * c.A
    return (-score,) + tie


@dataclass
class SynthesisResult:
    query: SynthesisQuery
    candidates: list[RankedCandidate]
    front: list[str]
    skipped: list[dict]

    def as_dict(self) -> dict:
        return {
            "policy": self.query.policy,
            "query": self.query.echo(),
            "candidates": [asdict(c) for c in self.candidates],
            "pareto_front": self.front,
            "skipped": self.skipped,
        }


def synthesize(q: SynthesisQuery) -> SynthesisResult:
    skipped: list[dict] = []
    graphs = list(catalog(q.n_min, q.n_max))
    for path in q.files:
        g = read_edge_list(path)
        if q.n_min <= g.n <= q.n_max:
            graphs.append(g)
        else:
            skipped.append({"candidate": g.label, "reason": f"n={g.n} outside range"})
    scored = [c for c in (_score(g, q, skipped) for g in graphs) if c is not None]
    for c in scored:
        c.flexibility = sum(1 for o in scored if o is not c and (o.n, o.d) == (c.n, c.d))
    chi_scale = max((c.chi for c in scored), default=1.0)
    scored.sort(key=lambda c: _sort_key(c, q, chi_scale))
    for rank, c in enumerate(scored, start=1):
        c.rank = rank
        c.dominated_by = [o.label for o in scored if dominates(o, c)]
    front = [c.label for c in pareto_front(scored)]
    return SynthesisResult(query=q, candidates=scored, front=front, skipped=skipped)
