from fractions import Fraction
from itertools import combinations

import pytest

from reebedit.generators import cylinder, random_instance
from reebedit.graphs import GraphPoint, ReebGraph, minimalize, point_on_edge
from reebedit.metrics import (
    PLGraphMap,
    d_f,
    d_matrix,
    distortion,
    fd_upper_bound,
    plgraphmap_from_cellmap,
    sample_points,
)
from reebedit.reeb import compute_reeb

F = Fraction


# -- brute-force oracle for d_f ------------------------------------------------
#
# d_f(x, y) is the least length b - a of a value interval [a, b] whose
# preimage has x and y in one component.  Candidate endpoints can be
# restricted to node values and the two point values, so a full scan over
# (a, b) pairs with an ad-hoc connectivity check is an exact oracle.


def _connected_in_band(g: ReebGraph, x: GraphPoint, y: GraphPoint, a, b) -> bool:
    parent = {}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    def union(j, k):
        rj, rk = find(j), find(k)
        if rj != rk:
            parent[rj] = rk

    for n, v in g.node_values.items():
        if a <= v <= b:
            parent[("n", n)] = ("n", n)
    for e, (lo, hi) in enumerate(g.edges):
        vl, vh = g.value(lo), g.value(hi)
        if vl <= b and vh >= a:  # the edge meets the band in one subsegment
            key = ("e", e)
            parent[key] = key
            if vl >= a:
                union(key, ("n", lo))
            if vh <= b:
                union(key, ("n", hi))

    def key_of(p: GraphPoint):
        if p.is_node:
            k = ("n", p.node)
        else:
            k = ("e", p.edge)
        return k if k in parent else None

    kx, ky = key_of(x), key_of(y)
    if kx is None or ky is None:
        return False
    if not (a <= x.value(g) <= b and a <= y.value(g) <= b):
        return False
    return find(kx) == find(ky)


def d_f_oracle(g: ReebGraph, x: GraphPoint, y: GraphPoint):
    vx, vy = x.value(g), y.value(g)
    cand = sorted(set(g.node_values.values()) | {vx, vy})
    best = None
    for a in cand:
        if a > min(vx, vy):
            continue
        for b in cand:
            if b < max(vx, vy):
                continue
            if _connected_in_band(g, x, y, a, b):
                if best is None or b - a < best:
                    best = b - a
    assert best is not None, "points must be connectable in a connected graph"
    return best


def _graph_and_points(seed: int):
    cx, f, _ = random_instance(seed, nverts=6)
    r, _ = compute_reeb(cx, f)
    return r, sample_points(r, density=2)


@pytest.mark.parametrize("seed", range(10))
def test_d_matrix_matches_brute_force(seed):
    r, pts = _graph_and_points(seed)
    m = d_matrix(r, pts)
    for i, j in combinations(range(len(pts)), 2):
        assert m[(i, j)] == d_f_oracle(r, pts[i], pts[j]), (seed, pts[i], pts[j])


@pytest.mark.parametrize("seed", range(5))
def test_d_f_metric_axioms_on_samples(seed):
    r, pts = _graph_and_points(seed)
    pts = pts[:8]
    for x in pts:
        assert d_f(r, x, x) >= abs(F(0))
        for y in pts:
            assert d_f(r, x, y) == d_f(r, y, x)
            assert d_f(r, x, y) >= abs(x.value(r) - y.value(r))
            for z in pts:
                assert d_f(r, x, z) <= d_f(r, x, y) + d_f(r, y, z)


def test_d_f_on_a_circle():
    g = ReebGraph({0: F(-1), 1: F(1)}, [(0, 1), (0, 1)])
    x = point_on_edge(g, 0, F(0))
    y = point_on_edge(g, 1, F(0))
    # same value, but joining them needs to reach a node: interval length 1
    assert d_f(g, x, y) == F(1)
    assert d_f(g, x, x) == F(0)
    assert d_f(g, GraphPoint(node=0), GraphPoint(node=1)) == F(2)


def test_sample_points_include_nodes_and_refine():
    g = ReebGraph({0: F(0), 1: F(1)}, [(0, 1)])
    pts1 = sample_points(g, density=1)
    assert GraphPoint(node=0) in pts1 and GraphPoint(node=1) in pts1
    pts3 = sample_points(g, density=3)
    assert len(pts3) > len(pts1)


def _identity_plmap(g: ReebGraph) -> PLGraphMap:
    vertex_images = {n: GraphPoint(node=n) for n in g.nodes}
    edge_paths = {}
    for e, (lo, hi) in enumerate(g.edges):
        a, b = g.value(lo), g.value(hi)
        mid = (a + b) / 2
        edge_paths[e] = [
            (a, GraphPoint(node=lo)),
            (mid, point_on_edge(g, e, mid)),
            (b, GraphPoint(node=hi)),
        ]
    return PLGraphMap(g, g, vertex_images, edge_paths)


def test_identity_map_zero_distortion_and_tight():
    # on a graph whose sample values are closed under preimages (all edges
    # span the same range), the identity certificate is tight
    r = ReebGraph({0: F(-1), 1: F(1)}, [(0, 1), (0, 1)])
    phi = _identity_plmap(r)
    rep = distortion(phi, phi)
    assert rep.distortion == F(0)
    assert rep.defect_fg == F(0) and rep.defect_gf == F(0)
    assert rep.tight
    assert rep.bound == F(0)


def test_identity_map_zero_distortion_on_random_graph():
    # the sampled maximum is exact here even when the linearity certificate
    # is too conservative to say so (tight may be False on loops whose
    # d-slices kink between sample values)
    cx, f, _ = random_instance(1, nverts=6)
    r, _ = compute_reeb(cx, f)
    phi = _identity_plmap(r)
    rep = distortion(phi, phi)
    assert rep.distortion == F(0)
    assert rep.defect_fg == F(0) and rep.defect_gf == F(0)
    assert rep.bound == F(0)


def test_plgraphmap_value_defect():
    g = ReebGraph({0: F(0), 1: F(1)}, [(0, 1)])
    h = ReebGraph({0: F(0), 1: F(2)}, [(0, 1)])
    vertex_images = {0: GraphPoint(node=0), 1: GraphPoint(node=1)}
    mid_img = point_on_edge(h, 0, F(1))
    edge_paths = {0: [(F(0), GraphPoint(node=0)), (F(1, 2), mid_img),
                      (F(1), GraphPoint(node=1))]}
    phi = PLGraphMap(g, h, vertex_images, edge_paths)
    # worst value change: g-value 1 maps to h-value 2
    assert phi.value_defect() == F(1)


def test_plgraphmap_from_cellmap_agrees_with_quotient():
    cx, f, _ = random_instance(8, nverts=5)
    r, p = compute_reeb(cx, f)
    from reebedit.reeb import graph_identity_map

    ident = graph_identity_map(r)
    phi = plgraphmap_from_cellmap(ident)
    assert phi.value_defect() == F(0)
    for n in r.nodes:
        assert phi(GraphPoint(node=n)) == GraphPoint(node=n)


def _cylinder_report(n: int, density: int = 1):
    from reebedit.cli import _cylinder_candidates

    cx, f, g = cylinder(n)
    phi, psi = _cylinder_candidates(cx, f, g)
    return distortion(phi, psi, density=density)


def test_cylinder_distortion_half_and_tight():
    rep = _cylinder_report(8)
    assert rep.distortion == F(1, 2)
    assert rep.defect_fg == F(0)
    assert rep.defect_gf == F(0)
    assert rep.tight
    assert rep.bound == F(1, 2)


def test_fd_upper_bound_picks_tight_candidate():
    from reebedit.cli import _cylinder_candidates

    cx, f, g = cylinder(8)
    phi, psi = _cylinder_candidates(cx, f, g)
    bound, reports = fd_upper_bound([(phi, psi)])
    assert bound == F(1, 2)
    assert all(r.tight for r in reports)


def test_fd_upper_bound_requires_candidates():
    with pytest.raises(ValueError):
        fd_upper_bound([])
