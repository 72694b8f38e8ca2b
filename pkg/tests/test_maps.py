from fractions import Fraction

import pytest

from reebedit.generators import cylinder, random_instance
from reebedit.graphs import GraphPoint, ReebGraph, complexify, graph_isomorphic, minimalize
from reebedit.maps import (
    CellMap,
    MonotonePL,
    cellmap_from_hosting,
    compose,
    normalize_cell,
    subdivide_at_levels,
    verify_reeb_quotient,
)
from reebedit.plcore import PLFunction, SimplicialComplex
from reebedit.reeb import compute_reeb, graph_identity_map, reeb_of_graph

F = Fraction


def test_normalize_cell_snaps_endpoints():
    g = ReebGraph({0: F(0), 1: F(2)}, [(0, 1)])
    assert normalize_cell(g, ("e", 0), F(0)) == ("n", 0)
    assert normalize_cell(g, ("e", 0), F(2)) == ("n", 1)
    assert normalize_cell(g, ("e", 0), F(1)) == ("e", 0)
    assert normalize_cell(g, ("n", 0), F(0)) == ("n", 0)


def test_slots_and_cells_of_quotient():
    cx, f, _ = random_instance(3, nverts=6)
    r, p = compute_reeb(cx, f)
    for s in cx.simplices:
        lo, hi = p.simplex_range(s)
        slots = p.slots_of(s)
        assert slots, f"simplex {s} has no slots"
        # every level and gap within the simplex range is covered
        for slot in slots:
            kind, i = slot
            if kind == "L":
                assert lo <= p.levels[i] <= hi
            else:
                assert lo <= p.levels[i] and p.levels[i + 1] <= hi
        # cell_at agrees with the slot assignment at level values
        t = (lo + hi) / 2
        cell = p.cell_at(s, t)
        assert cell[0] in ("n", "e")


def test_vertex_image_values_match():
    cx, f, _ = random_instance(4, nverts=6)
    r, p = compute_reeb(cx, f)
    for v in cx.vertices:
        gp = p.vertex_image(v)
        assert gp.value(r) == f(v) == p.h[v]


@pytest.mark.parametrize("seed", range(10))
def test_compute_reeb_output_is_certified(seed):
    cx, f, _ = random_instance(seed, nverts=7)
    _, p = compute_reeb(cx, f)
    cert = verify_reeb_quotient(p)
    assert cert.ok, cert.summary()
    assert cert.checked  # names of the axioms actually verified
    assert not cert.violations


def test_verifier_rejects_disconnected_fiber():
    # two disjoint arcs over the same edge: surjective but fibers split
    cx = SimplicialComplex.from_simplices([(0, 1), (2, 3), (1, 2)])
    h = {0: F(0), 1: F(1), 2: F(0), 3: F(1)}
    target = ReebGraph({0: F(0), 1: F(1)}, [(0, 1)])
    host = {s: ("e", 0) for s in cx.simplices}
    host[(0,)] = ("n", 0)
    host[(2,)] = ("n", 0)
    host[(1,)] = ("n", 1)
    host[(3,)] = ("n", 1)
    # edge (1,2) folds: h goes 1 -> 0 -> 1?  No: h(1)=1, h(2)=0, monotone.
    m = cellmap_from_hosting(cx, h, target, host)
    cert = verify_reeb_quotient(m)
    # preimage of any interior level is two points: not connected
    assert not cert.ok
    assert cert.violations


def test_verifier_rejects_non_surjective():
    cx = SimplicialComplex.from_simplices([(0, 1)])
    h = {0: F(0), 1: F(1)}
    target = ReebGraph({0: F(0), 1: F(1), 2: F(0), 3: F(1)}, [(0, 1), (2, 3)])
    host = {(0,): ("n", 0), (1,): ("n", 1), (0, 1): ("e", 0)}
    m = cellmap_from_hosting(cx, h, target, host)
    cert = verify_reeb_quotient(m)
    assert not cert.ok


def test_subdivide_at_levels_slices_exactly():
    cx = SimplicialComplex.from_simplices([(0, 1, 2)])
    h = {0: F(0), 1: F(2), 2: F(4)}
    g = PLFunction(cx, {0: F(1), 1: F(0), 2: F(3)})
    sub, new_h, extras, host = subdivide_at_levels(cx, h, {F(1), F(3)}, [g.values])
    # every new simplex lies within one elementary interval of the cuts
    for s in sub.simplices:
        lo = min(new_h[v] for v in s)
        hi = max(new_h[v] for v in s)
        assert not any(lo < c < hi for c in (F(1), F(3)))
        assert host[s] in cx.simplices
    # the secondary function is interpolated linearly: check one cut vertex
    for v in sub.vertices:
        if v not in h and new_h[v] == F(1):
            # v sits at h = 1 on an old simplex; g must interpolate there
            assert F(0) <= extras[0][v] <= F(3)
    assert set(new_h[v] for v in sub.vertices) >= {F(1), F(3)}


@pytest.mark.parametrize("seed", range(10))
def test_compose_with_graph_quotient_is_certified(seed):
    cx, f, _ = random_instance(seed, nverts=6)
    r, q = compute_reeb(cx, f)
    _, p = reeb_of_graph(r)  # r (as a space) -> its minimal Reeb graph
    comp = compose(p, q)
    cert = verify_reeb_quotient(comp)
    assert cert.ok, cert.summary()
    assert comp.source.simplices == q.source.simplices
    # values are preserved through the composite
    for v in cx.vertices:
        assert comp.h[v] == q.h[v]


def test_compose_with_identity_is_unchanged_on_values():
    cx, f, _ = random_instance(11, nverts=5)
    r, q = compute_reeb(cx, f)
    ident = graph_identity_map(r)
    comp = compose(ident, q)
    assert verify_reeb_quotient(comp).ok
    assert comp.h == q.h
    assert graph_isomorphic(
        minimalize(comp.target).graph, minimalize(r).graph
    )


def test_monotone_pl_evaluation_and_preimage():
    m = MonotonePL(((F(0), F(0)), (F(1), F(2)), (F(2), F(2)), (F(3), F(5))))
    assert m(F(1, 2)) == F(1)
    assert m(F(-5)) == F(0)  # constant extension
    assert m(F(10)) == F(5)
    assert m(F(3, 2)) == F(2)  # plateau
    assert m.image == (F(0), F(5))
    # transversal value: single point
    assert m.preimage(F(1)) == (F(1, 2), F(1, 2))
    # plateau value: closed interval
    assert m.preimage(F(2)) == (F(1), F(2))
    with pytest.raises(ValueError):
        m.preimage(F(6))


def test_monotone_pl_rejects_decreasing():
    with pytest.raises(ValueError):
        MonotonePL(((F(0), F(1)), (F(1), F(0))))
    with pytest.raises(ValueError):
        MonotonePL.from_pairs([(F(0), F(0)), (F(0), F(1))])


def test_monotone_pl_identity():
    m = MonotonePL.identity(F(-1), F(1))
    assert m(F(1, 3)) == F(1, 3)
