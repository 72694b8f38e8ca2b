from fractions import Fraction

import pytest

from reebedit.generators import circle, cylinder, path, point, random_instance
from reebedit.graphs import ReebGraph, graph_isomorphic, minimalize
from reebedit.maps import verify_reeb_quotient
from reebedit.plcore import PLFunction, SimplicialComplex
from reebedit.reeb import compute_reeb, graph_identity_map, reeb_of_graph

F = Fraction


# -- an independent oracle ----------------------------------------------------
#
# A from-scratch sweep: nodes are the connected components of each critical
# level, edges the components of each gap midpoint level, glued by simplex
# membership.  It shares no code with compute_reeb (own DSU, own adjacency).


def _dsu_find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _components(simplices, live):
    parent = {s: s for s in live}
    live_set = set(live)
    for s in live:
        for i in range(len(s)):
            f = s[:i] + s[i + 1 :]
            if f in live_set:
                ra, rb = _dsu_find(parent, s), _dsu_find(parent, f)
                if ra != rb:
                    parent[ra] = rb
    comp = {}
    for s in live:
        comp.setdefault(_dsu_find(parent, s), set()).add(s)
    return list(comp.values())


def naive_reeb(cx: SimplicialComplex, f: PLFunction) -> ReebGraph:
    crit = sorted({f(v) for v in cx.vertices})
    node_values = {}
    node_of_level = []
    nid = 0
    for t in crit:
        live = [s for s in cx.simplices if f.range_of(s)[0] <= t <= f.range_of(s)[1]]
        table = {}
        for comp in _components(cx.simplices, live):
            for s in comp:
                table[s] = nid
            node_values[nid] = t
            nid += 1
        node_of_level.append(table)
    edges = []
    for k in range(len(crit) - 1):
        mid = (crit[k] + crit[k + 1]) / 2
        live = [
            s for s in cx.simplices if f.range_of(s)[0] <= mid <= f.range_of(s)[1]
        ]
        for comp in _components(cx.simplices, live):
            s = next(iter(comp))
            # a simplex spanning the gap meets both adjacent critical levels
            edges.append((node_of_level[k][s], node_of_level[k + 1][s]))
    return ReebGraph(node_values, edges)


@pytest.mark.parametrize("seed", range(25))
def test_compute_reeb_matches_naive_sweep(seed):
    cx, f, _ = random_instance(seed, nverts=7)
    got, _ = compute_reeb(cx, f)
    want = naive_reeb(cx, f)
    assert graph_isomorphic(minimalize(got).graph, minimalize(want).graph)


@pytest.mark.parametrize("seed", range(15))
def test_compute_reeb_subdivision_invariant(seed):
    from reebedit.plcore import barycentric_subdivision

    cx, f, _ = random_instance(seed, nverts=6)
    r1, _ = compute_reeb(cx, f)
    sd, f2, _ = barycentric_subdivision(cx, f)
    r2, _ = compute_reeb(sd, f2)
    assert graph_isomorphic(minimalize(r1).graph, minimalize(r2).graph)


def test_reeb_of_point_and_path():
    cx, f = point(F(3))
    r, p = compute_reeb(cx, f)
    assert r.nodes == [0] and r.value(0) == F(3) and not r.edges
    assert verify_reeb_quotient(p).ok

    cx, f = path(5)
    r, p = compute_reeb(cx, f)
    assert r.betti1() == 0
    assert r.value_range() == (f.min(), f.max())
    assert verify_reeb_quotient(p).ok


def test_reeb_of_circle_has_one_loop():
    cx, f = circle(6)
    r, p = compute_reeb(cx, f)
    assert r.betti1() == 1
    assert verify_reeb_quotient(p).ok


def test_reeb_of_cylinder_functions():
    cx, f, g = cylinder(8)
    rf, pf = compute_reeb(cx, f)
    assert rf.betti1() == 1
    assert rf.value_range() == (F(-1), F(1))
    assert verify_reeb_quotient(pf).ok
    rg, pg = compute_reeb(cx, g)
    assert rg.betti1() == 0
    assert all(rg.degree(n) <= 2 for n in rg.nodes)
    assert rg.value_range() == (F(-1), F(1))
    assert verify_reeb_quotient(pg).ok


def test_compute_reeb_rejects_disconnected():
    cx = SimplicialComplex.from_simplices([(0, 1), (2, 3)])
    f = PLFunction(cx, {i: F(i) for i in range(4)})
    with pytest.raises(ValueError):
        compute_reeb(cx, f)


def test_reeb_of_graph_is_minimal_and_certified():
    g = ReebGraph({0: F(0), 1: F(1), 2: F(2)}, [(0, 1), (1, 2)])
    r, p = reeb_of_graph(g)
    assert verify_reeb_quotient(p).ok
    assert graph_isomorphic(minimalize(r).graph, minimalize(g).graph) is not None


def test_graph_identity_map_certified():
    g = ReebGraph({0: F(-1), 1: F(1)}, [(0, 1), (0, 1)])
    m = graph_identity_map(g)
    assert verify_reeb_quotient(m).ok
