"""``geonet`` command line interface.

Exit codes: 0 success, 1 validation or claim failure, 2 usage error. Every
failure writes a one-line JSON object ``{"error": ..., "message": ...}`` to
stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, fields
from pathlib import Path

from . import economics, generators, reliability
from .economics import CostParams
from .errors import GeonetError
from .geodetics import classify, label_for
from .graph import Graph, degree_summary, distance_profile, hierarchy_layers, vertex_connectivity
from .io import dumps_json, export_dot, fmt_prob, fmt_sci, format_edge_list, read_config, to_csv
from .reliability import FailureParams
from .synthesis import SynthesisQuery, synthesize

TABLE2_REFERENCE = {0: (2, 10, 0.9911, "1/2"), 1: (3, 15, 0.9950, "1/3"), 2: (4, 20, 0.9968, "1/4"), 3: (5, 25, 0.9977, "1/5")}

COST_KEYS = [f.name for f in fields(CostParams)]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _topology(arg: str) -> Graph:
    """A file path if it exists, else a family spec such as ``chordal_ring:16,5``."""
    if Path(arg).is_file():
        return generators.from_file(arg)
    return generators.generate(generators.FamilySpec.parse(arg))


def _cost_params(args) -> CostParams:
    values: dict[str, float] = {}
    if getattr(args, "config", None):
        for key, raw in read_config(args.config).items():
            if key in COST_KEYS:
                values[key] = float(raw)
    for key in COST_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    return CostParams(**values)


def _failure_defaults(args) -> dict:
    out: dict = {}
    if getattr(args, "config", None):
        conf = read_config(args.config)
        for key, cast in (("q1", float), ("q2", float), ("trials", int), ("seed", int)):
            if key in conf:
                out[key] = cast(conf[key])
    for key in ("q1", "q2", "trials", "seed"):
        v = getattr(args, key, None)
        if v is not None:
            out[key] = v
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------


def cmd_generate(args) -> int:
    spec = generators.FamilySpec(args.family, tuple(int(p) for p in args.params))
    g = generators.generate(spec)
    text = export_dot(g) if args.format == "dot" else format_edge_list(g)
    _emit(text, args.out)
    return 0


def analysis_dict(g: Graph) -> dict:
    prof = distance_profile(g)
    ds = degree_summary(g)
    out = {
        "topology": g.label,
        "n": g.n,
        "m": g.m,
        "channels": g.channels,
        "multiplicity": g.multiplicity,
        "diameter": prof.diameter,
        "radius": prof.radius,
        "centers": list(prof.centers),
        "reach": {str(l): r for l, r in prof.reach.items()},
        "degrees": {"classification": ds.describe(), "min": ds.min_deg, "max": ds.max_deg},
    }
    if not g.bus:
        cls = classify(prof)
        out["geodetic"] = {
            "K": cls.K,
            "label": cls.label,
            "histogram": {str(k): v for k, v in cls.histogram.items()},
            "witness": list(cls.witness) if cls.witness else None,
        }
        out["vertex_connectivity"] = vertex_connectivity(g)
        out["hierarchy_layers"] = hierarchy_layers(g, prof)
    return out


def cmd_analyze(args) -> int:
    g = _topology(args.topology)
    data = analysis_dict(g)
    if args.format == "text":
        lines = [f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in data.items()]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(dumps_json(data), args.out)
    return 0


def cmd_economics(args) -> int:
    g = _topology(args.topology)
    p = _cost_params(args)
    delta = args.delta if args.delta is not None else p.delta
    rep = economics.effectiveness(g, p)
    l = g.channels - g.n
    data = {
        "topology": g.label,
        "network_cost": economics.network_cost(g.n, g.channels, p),
        "additional_relative_cost": economics.additional_relative_cost(g.n, l, delta) if l >= 0 else None,
        "delta": delta,
        "effectiveness": {k: v for k, v in rep.as_dict().items() if k != "params"},
        "chi_sci": fmt_sci(rep.chi),
        "params": asdict(p),
    }
    _emit(dumps_json(data), args.out)
    return 0


def cmd_reliability(args) -> int:
    g = _topology(args.topology)
    fp = FailureParams(**_failure_defaults(args))
    if args.exact:
        rep = reliability.exact_reliability(g, fp)
    elif args.asymptotic:
        rep = reliability.asymptotic_reliability(g, fp.q2)
    else:
        rep = reliability.monte_carlo_reliability(g, fp)
    data = rep.as_dict()
    data["topology"] = g.label
    data["P_4dp"] = fmt_prob(rep.P)
    data["seed"] = fp.seed
    data["trials"] = fp.trials
    _emit(dumps_json(data), args.out)
    return 0


def cmd_curves(args) -> int:
    if args.which == "fig7":
        p = _cost_params(args)
        rows, skipped = economics.fig7_curve(n_range=range(args.n_min, args.n_max + 1), p=p)
        meta = dict(asdict(p))
        meta["skipped"] = len(skipped)
        body = [(r.family, r.n, fmt_sci(r.chi), f"{r.k0:.6g}", f"{r.C_R:.6g}") for r in rows]
        _emit(to_csv(["family", "n", "chi", "k0", "C_R"], body, meta), args.out)
    else:
        q2 = args.q2 if args.q2 is not None else 1.0 / (args.n + args.n // 2)
        l_max = args.l_max if args.l_max is not None else args.n
        rows = reliability.fig8_curve(args.n, q2, l_max)
        meta = {"n": args.n, "q2": q2, "l_max": l_max}
        _emit(to_csv(["l", "Q"], [(l, f"{q:.6e}") for l, q in rows], meta), args.out)
    return 0


def cmd_table2(args) -> int:
    ok = True
    lines = ["t d n P A/delta check"]
    data = []
    for t in range(4):
        row = reliability.table2_row(t)
        shown = reliability.truncate4(row.P)
        want = TABLE2_REFERENCE[t]
        good = (row.d, row.n) == want[:2] and abs(shown - want[2]) <= 5e-5 and str(row.A_over_delta) == want[3]
        ok &= good
        lines.append(f"{t} {row.d} {row.n} {shown:.4f} {row.A_over_delta} {'PASS' if good else 'FAIL'}")
        data.append({"t": t, "d": row.d, "n": row.n, "m": row.m, "P": f"{shown:.4f}", "P_exact": row.P,
                     "A_over_delta": str(row.A_over_delta), "pass": good})
    if args.format == "json":
        _emit(dumps_json({"rows": data, "q2": "1/m", "pass": ok}), args.out)
    else:
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def cmd_synthesize(args) -> int:
    raw = args.query
    text = Path(raw).read_text() if Path(raw).is_file() else raw
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"query is neither a file nor valid JSON: {exc}") from None
    q = SynthesisQuery.from_dict(data)
    res = synthesize(q)
    out = res.as_dict()
    for c in out["candidates"]:
        c["P"] = fmt_prob(c["P"])
        c["chi"] = fmt_sci(c["chi"])
    _emit(dumps_json(out), args.out)
    return 0


def cmd_verify(args) -> int:
    g = generators.from_file(args.file)
    prof = distance_profile(g)
    cls = classify(prof)
    limit = {"geodetic": 1, "bigeodetic": 2}[args.claim]
    reasons = []
    if cls.K > limit:
        i, j = cls.witness
        reasons.append(f"pair ({i},{j}) has {cls.K} geodesics")
    if args.d is not None and prof.diameter != args.d:
        reasons.append(f"diameter is {prof.diameter}, claimed {args.d}")
    result = {"file": args.file, "claim": args.claim, "K": cls.K, "class": label_for(cls.K),
              "diameter": prof.diameter, "ok": not reasons, "reason": "; ".join(reasons) or None}
    sys.stdout.write(dumps_json(result))
    return 0 if not reasons else 1


# ---------------------------------------------------------------------------


def _add_costs(p) -> None:
    for key in COST_KEYS:
        p.add_argument(f"--{key}", type=float, default=None)
    p.add_argument("--config", help="key=value file with default parameters")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="geonet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="emit a family instance as an edge list or DOT")
    p.add_argument("family", choices=[f for f in generators.FAMILIES if f != "from_file"])
    p.add_argument("params", nargs="*")
    p.add_argument("--format", choices=["edgelist", "dot"], default="edgelist")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="distance profile, degrees, geodeticity, connectivity")
    p.add_argument("topology")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("economics", help="cost model and effectiveness report")
    p.add_argument("topology")
    p.add_argument("--delta", type=float)
    _add_costs(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_economics)

    p = sub.add_parser("reliability", help="pairwise failure probability")
    p.add_argument("topology")
    p.add_argument("--q1", type=float)
    p.add_argument("--q2", type=float)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--asymptotic", action="store_true")
    p.add_argument("--config")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reliability)

    p = sub.add_parser("curves", help="CSV for the effectiveness or reliability curves")
    p.add_argument("which", choices=["fig7", "fig8"])
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=64)
    p.add_argument("--n", type=int, default=30)
    p.add_argument("--q2", type=float)
    p.add_argument("--l-max", type=int)
    _add_costs(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("table2", help="Petersen homeomorph reliability/cost table with checks")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("synthesize", help="rank catalog topologies for a JSON query")
    p.add_argument("--query", required=True, help="JSON text or path to a JSON file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("verify", help="check a geodeticity claim for an edge-list file")
    p.add_argument("file")
    p.add_argument("--claim", choices=["geodetic", "bigeodetic"], required=True)
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        return _fail("usage", str(exc), 2)
    except (GeonetError, ValueError, OSError) as exc:
        return _fail(type(exc).__name__, str(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
