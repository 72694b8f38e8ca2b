"""Reeb graph extraction for PL functions on simplicial complexes.

The quotient identifying points within connected components of level sets
is computed by a sweep over the distinct vertex values: components of each
vertex-value level become nodes, components over each open gap (sampled at
the midpoint, where the component structure is constant) become edges.
Every simplex crossing a gap reaches both bounding levels, which pins down
the edge endpoints.
"""
from __future__ import annotations

from .graphs import GraphComplex, ReebGraph, complexify
from .maps import Cell, CellMap, Slot, cellmap_from_hosting
from .plcore import PLFunction, Simplex, SimplicialComplex, level_components


def compute_reeb(
    complex: SimplicialComplex, f: PLFunction
) -> tuple[ReebGraph, CellMap]:
    """Reeb graph of (complex, f) plus the certified quotient map onto it."""
    if not complex.is_connected():
        raise ValueError("Reeb graphs are computed for connected complexes")
    crit = sorted({f(v) for v in complex.vertices})
    node_values: dict[int, object] = {}
    node_of: list[dict[Simplex, int]] = []  # per level: simplex -> node id
    next_node = 0
    for t in crit:
        table: dict[Simplex, int] = {}
        for comp in level_components(complex, f, t):
            for s in comp:
                table[s] = next_node
            node_values[next_node] = t
            next_node += 1
        node_of.append(table)

    edges: list[tuple[int, int]] = []
    edge_of: list[dict[Simplex, int]] = []  # per gap: simplex -> edge id
    for k in range(len(crit) - 1):
        mid = (crit[k] + crit[k + 1]) / 2
        table: dict[Simplex, int] = {}
        for comp in level_components(complex, f, mid):
            # every simplex meeting the gap midpoint spans the whole gap,
            # so it appears in both bounding level tables
            lo_nodes = {node_of[k][s] for s in comp}
            hi_nodes = {node_of[k + 1][s] for s in comp}
            if len(lo_nodes) != 1 or len(hi_nodes) != 1:
                raise AssertionError(
                    f"gap component attaches ambiguously: {lo_nodes} / {hi_nodes}"
                )
            eid = len(edges)
            edges.append((lo_nodes.pop(), hi_nodes.pop()))
            for s in comp:
                table[s] = eid
        edge_of.append(table)

    graph = ReebGraph(node_values, edges)
    level_index = {t: k for k, t in enumerate(crit)}

    m = CellMap(complex, dict(f.values), graph, {})
    assignment: dict[Simplex, dict[Slot, Cell]] = {}
    for s in complex.simplices:
        per: dict[Slot, Cell] = {}
        for slot in m.slots_of(s):
            kind, i = slot
            # map levels coincide with crit: vertex values are the node
            # values and vice versa
            if kind == "L":
                per[slot] = ("n", node_of[i][s])
            else:
                per[slot] = ("e", edge_of[i][s])
        assignment[s] = per
    m.assignment = assignment
    return graph, m


def reeb_of_graph(graph: ReebGraph) -> tuple[ReebGraph, CellMap]:
    """Reeb graph of a graph under its own value function.

    The source is the complexified graph, so the returned map can be
    post-composed with maps out of `graph`'s complexification.
    """
    gc = complexify(graph)
    f = PLFunction(gc.complex, gc.values)
    rg, m = compute_reeb(gc.complex, f)
    m.source_graph = gc
    return rg, m


def graph_identity_map(graph: ReebGraph) -> CellMap:
    """The identity quotient of a graph, as a map from its complexification."""
    gc = complexify(graph)
    host: dict[Simplex, Cell] = {}
    for s in gc.complex.simplices:
        host[s] = gc.host[s]
    return cellmap_from_hosting(gc.complex, dict(gc.values), graph, host, gc)
