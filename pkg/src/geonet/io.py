"""Serialization: edge-list text, DOT, JSON and CSV helpers, key=value config."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .errors import FormatError, GraphError
from .graph import Graph, build_graph


def parse_edge_list(text: str, family: str | None = "from_file", params=()) -> Graph:
    """Parse the shared edge-list format.

    The first data line is ``n m`` (optionally ``n m multiplicity``), followed
    by ``m`` lines ``u v`` with 0-based vertices. ``#`` starts a comment.
    """
    header = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            values = [int(tok) for tok in tokens]
        except ValueError:
            raise FormatError(f"expected integers, got {line!r}", lineno) from None
        if header is None:
            if len(values) not in (2, 3):
                raise FormatError("header must be 'n m' or 'n m multiplicity'", lineno)
            header = (values, lineno)
            continue
        if len(values) != 2:
            raise FormatError(f"edge line needs exactly two vertices, got {len(values)}", lineno)
        pairs.append((values[0], values[1]))
        last = lineno
    if header is None:
        raise FormatError("empty edge list", 1)
    (n, m, *rest), hline = header
    if len(pairs) != m:
        raise FormatError(f"header declares {m} edges but {len(pairs)} were given", hline)
    try:
        return build_graph(n, pairs, multiplicity=rest[0] if rest else 1, family=family, params=params)
    except GraphError as exc:
        raise FormatError(str(exc), last if pairs else hline) from exc


def read_edge_list(path) -> Graph:
    path = Path(path)
    return parse_edge_list(path.read_text(), family="from_file", params=(str(path),))


def format_edge_list(g: Graph) -> str:
    g.require_simple("edge-list export")
    head = f"{g.n} {g.m}" if g.multiplicity == 1 else f"{g.n} {g.m} {g.multiplicity}"
    lines = [f"# {g.label}", head]
    lines += [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def export_dot(g: Graph) -> str:
    """Undirected DOT text with sorted edges; multiplicity becomes an attribute."""
    g.require_simple("DOT export")
    name = "".join(ch if ch.isalnum() else "_" for ch in g.label).strip("_") or "G"
    out = [f"graph {name} {{"]
    out += [f"  {v};" for v in range(g.n)]
    attr = f" [multiplicity={g.multiplicity}]" if g.multiplicity != 1 else ""
    out += [f"  {u} -- {v}{attr};" for u, v in sorted(g.edges)]
    out.append("}")
    return "\n".join(out) + "\n"


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def dumps_json(obj) -> str:
    return json.dumps(_plain(obj), indent=2, sort_keys=True) + "\n"


def to_csv(header: list[str], rows, meta: dict | None = None) -> str:
    """CSV text with optional leading ``# key=value`` parameter lines."""
    buf = io.StringIO()
    for key in sorted(meta or {}):
        buf.write(f"# {key}={meta[key]}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def read_config(path) -> dict[str, str]:
    """Read a ``key=value`` config file (``#`` comments, blank lines ignored)."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FormatError(f"expected key=value, got {line!r}", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        out[key] = value
    return out


def fmt_prob(x: float) -> str:
    return f"{x:.4f}"


def fmt_sci(x: float) -> str:
    return f"{x:.5e}"
