"""Command-line interface.

Exit codes: 0 success, 1 axiom/certification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import generators, serialize
from .editdist import (
    build_homotopy_zigzag,
    coupling,
    coupling_bound,
    point_distance,
    product_coupling,
    zigzag_cost,
    zigzag_from_coupling,
)
from .graphs import GraphPoint, ReebGraph, point_on_edge
from .maps import verify_reeb_quotient
from .metrics import d_f, distortion, plgraphmap_from_cellmap
from .plcore import format_scalar, parse_scalar
from .reeb import compute_reeb

USAGE_ERROR = 2
AXIOM_ERROR = 1


def _load_instance(path: str):
    return serialize.instance_from_dict(serialize.load_json(path))


def _parse_point(g: ReebGraph, text: str) -> GraphPoint:
    if text.startswith("n"):
        node = int(text[1:])
        if node not in g.node_values:
            raise ValueError(f"no node {node}")
        return GraphPoint(node=node)
    if text.startswith("e") and "@" in text:
        e_str, val = text[1:].split("@", 1)
        return point_on_edge(g, int(e_str), parse_scalar(val))
    raise ValueError(f"point syntax: n<id> or e<edge>@<value>, got {text!r}")


def cmd_generate(args) -> int:
    if args.kind == "cylinder":
        cx, f, g = generators.cylinder(args.n)
    elif args.kind == "circle":
        cx, f = generators.circle(args.n)
        g = None
    elif args.kind == "path":
        cx, f = generators.path(args.n)
        g = None
    elif args.kind == "point":
        cx, f = generators.point(parse_scalar(args.value))
        g = None
    else:  # random
        cx, f, g = generators.random_instance(
            args.seed, args.nverts, second_function=args.second_output is not None
        )
    out = serialize.dump_json(serialize.instance_to_dict(cx, f), args.output)
    if not args.output:
        sys.stdout.write(out)
    if args.second_output:
        if g is None:
            print(f"generator {args.kind} has a single function", file=sys.stderr)
            return USAGE_ERROR
        serialize.dump_json(serialize.instance_to_dict(cx, g), args.second_output)
    return 0


def cmd_reeb(args) -> int:
    cx, f = _load_instance(args.instance)
    graph, p = compute_reeb(cx, f)
    if args.certify:
        cert = verify_reeb_quotient(p)
        print(cert.summary())
        if not cert.ok:
            return AXIOM_ERROR
    text = (
        serialize.graph_to_dot(graph)
        if args.dot
        else serialize.dump_json(serialize.graph_to_dict(graph), args.output)
    )
    if not args.output or args.dot:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    cx, f = _load_instance(args.instance)
    _, p = compute_reeb(cx, f)
    cert = verify_reeb_quotient(p)
    print(cert.summary())
    return 0 if cert.ok else AXIOM_ERROR


def cmd_metric(args) -> int:
    g = serialize.graph_from_dict(serialize.load_json(args.graph))
    x = _parse_point(g, args.x)
    y = _parse_point(g, args.y)
    print(format_scalar(d_f(g, x, y)))
    return 0


def cmd_distortion(args) -> int:
    cx, f, g = generators.cylinder(args.n)
    phi, psi = _cylinder_candidates(cx, f, g)
    report = distortion(phi, psi, density=args.density)
    print(f"distortion D = {format_scalar(report.distortion)}")
    print(f"defect f->g = {format_scalar(report.defect_fg)}")
    print(f"defect g->f = {format_scalar(report.defect_gf)}")
    print(f"bound = {format_scalar(report.bound)}")
    print(f"tight = {report.tight}")
    if args.csv:
        from .metrics import correspondence_table

        rows = correspondence_table(phi, psi, density=args.density)
        with open(args.csv, "w") as fh:
            fh.write("p1,q1,p2,q2,d_f,d_g,defect\n")
            for p1, q1, p2, q2, df_v, dg_v in rows:
                fh.write(
                    f"{_fmt_point(p1)},{_fmt_point(q1)},{_fmt_point(p2)},"
                    f"{_fmt_point(q2)},{format_scalar(df_v)},"
                    f"{format_scalar(dg_v)},{format_scalar(abs(df_v - dg_v))}\n"
                )
    return 0


def _fmt_point(p: GraphPoint) -> str:
    if p.is_node:
        return f"n{p.node}"
    return f"e{p.edge}@{format_scalar(p.t)}"


def _cylinder_candidates(cx, f, g):
    """The example map pair for the cylinder: project the circle-like f-graph
    onto the path-like g-graph along values, and section back through the
    upper arc."""
    from .category import induced_map
    from .graphs import minimalize
    from .maps import MonotonePL

    rf, pf = compute_reeb(cx, f)
    rg, pg = compute_reeb(cx, g)
    mf = minimalize(rf)
    mg = minimalize(rg)
    phi = _value_projection(mf.graph, mg.graph)
    psi = _upper_section(mg.graph, mf.graph)
    return phi, psi


def _value_projection(src: ReebGraph, dst: ReebGraph):
    """Value-preserving map of a graph onto a path graph with the same range."""
    from .metrics import PLGraphMap

    def at(t) -> GraphPoint:
        for e, (lo, hi) in enumerate(dst.edges):
            if dst.value(lo) <= t <= dst.value(hi):
                return point_on_edge(dst, e, t)
        raise ValueError(f"value {t} outside target range")

    vertex_images = {n: at(src.value(n)) for n in src.nodes}
    node_vals = sorted(set(dst.node_values.values()))
    edge_paths = {}
    for e, (lo, hi) in enumerate(src.edges):
        a, b = src.value(lo), src.value(hi)
        us = sorted({a, b} | {w for w in node_vals if a < w < b})
        # interior midpoints disambiguate parallel target edges
        us = sorted(set(us) | {(u0 + u1) / 2 for u0, u1 in zip(us, us[1:])})
        edge_paths[e] = [(u, at(u)) for u in us]
    return PLGraphMap(src, dst, vertex_images, edge_paths)


def _upper_section(src: ReebGraph, dst: ReebGraph):
    """Section of a path graph into a graph along one monotone edge path."""
    from .metrics import PLGraphMap

    lo_n = min(dst.nodes, key=dst.value)
    hi_n = max(dst.nodes, key=dst.value)
    # walk a monotone path lo_n -> hi_n through increasing edges
    path_cells = []
    node = lo_n
    while node != hi_n:
        e = min(dst.up_edges(node))
        path_cells.append(e)
        node = dst.edges[e][1]

    def at(t) -> GraphPoint:
        for e in path_cells:
            lo, hi = dst.edges[e]
            if dst.value(lo) <= t <= dst.value(hi):
                return point_on_edge(dst, e, t)
        raise ValueError(f"value {t} outside section range")

    vertex_images = {n: at(src.value(n)) for n in src.nodes}
    node_vals = sorted(set(dst.node_values.values()))
    edge_paths = {}
    for e, (lo, hi) in enumerate(src.edges):
        a, b = src.value(lo), src.value(hi)
        us = sorted({a, b} | {w for w in node_vals if a < w < b})
        # interior midpoints disambiguate parallel target edges
        us = sorted(set(us) | {(u0 + u1) / 2 for u0, u1 in zip(us, us[1:])})
        edge_paths[e] = [(u, at(u)) for u in us]
    return PLGraphMap(src, dst, vertex_images, edge_paths)


def cmd_bound(args) -> int:
    if args.point is not None:
        g = serialize.graph_from_dict(serialize.load_json(args.graph))
        print(format_scalar(point_distance(g, parse_scalar(args.point))))
        return 0
    if args.second is None:
        print("bound needs a second instance or --point", file=sys.stderr)
        return USAGE_ERROR
    cx_f, f = _load_instance(args.graph)
    cx_g, g = _load_instance(args.second)
    if cx_f.simplices != cx_g.simplices:
        print("coupling bound needs two functions on one complex", file=sys.stderr)
        return USAGE_ERROR
    _, pf = compute_reeb(cx_f, f)
    _, pg = compute_reeb(cx_f, g)
    c = coupling(pf, pg)
    print(format_scalar(coupling_bound(c)))
    return 0


def cmd_zigzag(args) -> int:
    cx_f, f = _load_instance(args.instance_f)
    cx_g, g = _load_instance(args.instance_g)
    if cx_f.simplices != cx_g.simplices:
        print("zigzag needs two functions on one complex", file=sys.stderr)
        return USAGE_ERROR
    _, pf = compute_reeb(cx_f, f)
    _, pg = compute_reeb(cx_f, g)
    c = coupling(pf, pg)
    z = zigzag_from_coupling(c)
    if args.certify:
        z.validate()
        print("zigzag certified")
    print(format_scalar(zigzag_cost(z)))
    return 0


def cmd_homotopy(args) -> int:
    cx_f, f = _load_instance(args.instance_f)
    cx_g, g = _load_instance(args.instance_g)
    if cx_f.simplices != cx_g.simplices:
        print("homotopy needs two functions on one complex", file=sys.stderr)
        return USAGE_ERROR
    z, cost = build_homotopy_zigzag(cx_f, f, g)
    if args.certify:
        z.validate()
    norm = max(abs(f.values[v] - g.values[v]) for v in cx_f.vertices)
    print(f"cost = {format_scalar(cost)}")
    ok = cost <= norm
    print(f"cost <= ||f-g||: {'OK' if ok else 'VIOLATED'}")
    if args.output:
        witness = {
            "lambdas": [format_scalar(t) for t in _lambdas_of(z)],
            "graphs": [serialize.graph_to_dict(r) for r in z.graphs],
            "cost": format_scalar(cost),
        }
        serialize.dump_json(witness, args.output)
    return 0 if ok else AXIOM_ERROR


def _lambdas_of(z):
    # graph count determines the schedule length; values are recoverable from
    # the graphs themselves only indirectly, so report stage indices' spans
    return [Fraction(i, max(1, len(z.graphs) - 1)) for i in range(len(z.graphs))]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="reebedit",
        description="Exact Reeb graphs, certified edit-distance bounds, and "
        "functional-distortion evaluation.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit an example instance as JSON")
    p.add_argument("kind", choices=["cylinder", "circle", "path", "point", "random"])
    p.add_argument("-n", type=int, default=8, help="resolution parameter")
    p.add_argument("--value", default="0", help="value for the point generator")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--nverts", type=int, default=8)
    p.add_argument("-o", "--output")
    p.add_argument("--second-output", help="write the second function (cylinder/random)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reeb", help="compute the Reeb graph of an instance")
    p.add_argument("instance")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--certify", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reeb)

    p = sub.add_parser("verify", help="verify the Reeb quotient axioms")
    p.add_argument("instance")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("metric", help="intrinsic d_f distance between points")
    p.add_argument("graph")
    p.add_argument("x", help="n<id> or e<edge>@<value>")
    p.add_argument("y")
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser(
        "distortion", help="functional-distortion report for the cylinder pair"
    )
    p.add_argument("-n", type=int, default=8)
    p.add_argument("--density", type=int, default=1)
    p.add_argument("--csv", help="write the correspondence table as CSV")
    p.set_defaults(func=cmd_distortion)

    p = sub.add_parser("bound", help="certified coupling bound")
    p.add_argument("graph", help="instance JSON (or graph JSON with --point)")
    p.add_argument("second", nargs="?", help="second instance on the same complex")
    p.add_argument("--point", help="distance to the one-point graph at this value")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("zigzag", help="one-space zigzag cost of a coupling")
    p.add_argument("instance_f")
    p.add_argument("instance_g")
    p.add_argument("--certify", action="store_true")
    p.set_defaults(func=cmd_zigzag)

    p = sub.add_parser("homotopy", help="straight-line homotopy zigzag bound")
    p.add_argument("instance_f")
    p.add_argument("instance_g")
    p.add_argument("--certify", action="store_true")
    p.add_argument("-o", "--output", help="write the zigzag witness JSON")
    p.set_defaults(func=cmd_homotopy)

    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if "certif" in str(exc) or "axiom" in str(exc) or "violation" in str(exc):
            return AXIOM_ERROR
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
