"""JSON interchange (exact rationals as "p/q" strings) plus DOT and CSV
exports.  JSON is the only parseable format; serialize -> parse is the
identity on instances and graphs."""
from __future__ import annotations

import json
from typing import Optional

from .graphs import ReebGraph
from .plcore import (
    PLFunction,
    Scalar,
    SimplicialComplex,
    format_scalar,
    parse_scalar,
)


def instance_to_dict(cx: SimplicialComplex, f: PLFunction) -> dict:
    return {
        "vertices": [
            {"id": v, "value": format_scalar(f.values[v])}
            for v in sorted(cx.vertices)
        ],
        "simplices": [list(s) for s in cx.simplices if len(s) > 1],
    }


def instance_from_dict(data: dict) -> tuple[SimplicialComplex, PLFunction]:
    try:
        values = {int(v["id"]): parse_scalar(v["value"]) for v in data["vertices"]}
        simplices = [tuple(s) for s in data["simplices"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed instance: {exc}") from exc
    simplices += [(v,) for v in values]
    cx = SimplicialComplex.from_simplices(simplices)
    if set(cx.vertices) - set(values):
        raise ValueError("simplices reference vertices without values")
    return cx, PLFunction(cx, values)


def graph_to_dict(g: ReebGraph) -> dict:
    return {
        "nodes": [
            {"id": n, "value": format_scalar(g.node_values[n])}
            for n in sorted(g.node_values)
        ],
        "edges": [[lo, hi] for lo, hi in g.edges],
    }


def graph_from_dict(data: dict) -> ReebGraph:
    try:
        values = {int(n["id"]): parse_scalar(n["value"]) for n in data["nodes"]}
        edges = [(e[0], e[1]) for e in data["edges"]]
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed graph: {exc}") from exc
    return ReebGraph(node_values=values, edges=edges)


def load_json(path: str) -> dict:
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(
                f"{path}: parse error at line {exc.lineno} column {exc.colno}"
            ) from exc


def dump_json(data: dict, path: Optional[str]) -> str:
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def graph_to_dot(g: ReebGraph, name: str = "reeb") -> str:
    lines = [f"graph {name} {{"]
    for n in sorted(g.node_values):
        lines.append(
            f'  n{n} [label="{n}: {format_scalar(g.node_values[n])}"];'
        )
    for lo, hi in g.edges:
        lines.append(f"  n{lo} -- n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def correspondence_to_csv(rows: list[tuple]) -> str:
    """Rows (p, q, d_f, d_g) of a correspondence sample as CSV text."""
    out = ["p,q,d_f,d_g,defect"]
    for p, q, df, dg in rows:
        out.append(
            f"{p},{q},{format_scalar(df)},{format_scalar(dg)},"
            f"{format_scalar(abs(df - dg))}"
        )
    return "\n".join(out) + "\n"
