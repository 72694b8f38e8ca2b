"""Combinatorial representations of piecewise-linear quotient maps.

A CellMap records where every simplex of a source complex goes in a target
graph, stratified by the value levels it crosses.  Levels are the sorted
union of the vertex values (pulled back through the map) and the target
node values; a simplex is assigned one graph cell per level it meets and
one per open gap between consecutive levels it spans.  All verification
(surjectivity, connected fibers, face compatibility) happens on this
finite data.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .geometry import LinearForm, polytope_vertices, pulling_triangulation
from .graphs import GraphComplex, GraphPoint, ReebGraph, point_on_edge
from .plcore import Scalar, Simplex, SimplicialComplex, UnionFind

# a cell of a graph: ("n", node_id) or ("e", edge_id)
Cell = tuple[str, int]
# a slot: ("L", i) = level i, ("G", i) = open gap (level i, level i+1)
Slot = tuple[str, int]


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: str

    def __str__(self) -> str:
        return f"[{self.axiom}] {self.witness}"


@dataclass(frozen=True)
class Certificate:
    ok: bool
    checked: tuple[str, ...]
    violations: tuple[Violation, ...] = ()

    def summary(self) -> str:
        if self.ok:
            return "certified: " + ", ".join(self.checked)
        return "FAILED:\n" + "\n".join(str(v) for v in self.violations)


class CellMap:
    """A PL map from a simplicial complex onto a Reeb graph.

    h maps source vertices to their values under the composite
    value-function of the target (i.e. the pullback of the graph's value
    function), extended linearly over simplices.  assignment[simplex][slot]
    names the graph cell containing the image of the part of the simplex
    lying at that level / gap.
    """

    def __init__(
        self,
        source: SimplicialComplex,
        h: dict[int, Scalar],
        target: ReebGraph,
        assignment: dict[Simplex, dict[Slot, Cell]],
        source_graph: Optional[GraphComplex] = None,
    ):
        self.source = source
        self.h = dict(h)
        self.target = target
        self.assignment = assignment
        self.source_graph = source_graph
        lv = set(h.values()) | {target.value(n) for n in target.nodes}
        self.levels: list[Scalar] = sorted(lv)

    # -- level / slot bookkeeping -------------------------------------

    def level_index(self, t: Scalar) -> Optional[int]:
        i = bisect_left(self.levels, t)
        if i < len(self.levels) and self.levels[i] == t:
            return i
        return None

    def slot_of(self, t: Scalar) -> Slot:
        i = bisect_left(self.levels, t)
        if i < len(self.levels) and self.levels[i] == t:
            return ("L", i)
        return ("G", i - 1)

    def simplex_range(self, s: Simplex) -> tuple[Scalar, Scalar]:
        vals = [self.h[v] for v in s]
        return min(vals), max(vals)

    def slots_of(self, s: Simplex) -> list[Slot]:
        lo, hi = self.simplex_range(s)
        i = bisect_left(self.levels, lo)
        out: list[Slot] = []
        while i < len(self.levels) and self.levels[i] <= hi:
            out.append(("L", i))
            if i + 1 < len(self.levels) and self.levels[i + 1] <= hi:
                out.append(("G", i))
            i += 1
        return out

    # -- cell lookup ---------------------------------------------------

    def cell_at(self, s: Simplex, t: Scalar) -> Cell:
        """Graph cell containing the image of (the part of) s at value t."""
        lo, hi = self.simplex_range(s)
        if not lo <= t <= hi:
            raise ValueError(f"simplex {s} does not meet value {t}")
        return self.assignment[s][self.slot_of(t)]

    def cell_on(self, s: Simplex, a: Scalar, b: Scalar) -> Cell:
        """The single edge cell covering the image of s over open (a, b)."""
        cells = set()
        for slot in self.slots_of(s):
            kind, i = slot
            if kind == "L":
                if a < self.levels[i] < b:
                    cells.add(self.assignment[s][slot])
            else:
                if self.levels[i] < b and self.levels[i + 1] > a:
                    cells.add(self.assignment[s][slot])
        if len(cells) != 1:
            raise ValueError(
                f"image of {s} over ({a},{b}) is not a single cell: {cells}"
            )
        (c,) = cells
        if c[0] != "e":
            raise ValueError(f"image of {s} over ({a},{b}) is a node: {c}")
        return c

    def point_of_cell(self, cell: Cell, t: Scalar) -> GraphPoint:
        if cell[0] == "n":
            return GraphPoint(node=cell[1])
        return point_on_edge(self.target, cell[1], t)

    def vertex_image(self, v: int) -> GraphPoint:
        t = self.h[v]
        return self.point_of_cell(self.cell_at((v,), t), t)

    def point_image(self, s: Simplex, t: Scalar) -> GraphPoint:
        return self.point_of_cell(self.cell_at(s, t), t)

    # -- graph-source helpers (for maps out of complexified graphs) ----

    def value_at_graph_point(self, gp: GraphPoint) -> Scalar:
        """h extended to points of the source graph (source_graph required)."""
        gc = self._graph()
        if gp.is_node:
            return self.h[gc.node_vertex[gp.node]]
        half = gc.half_containing(gp.edge, gp.t)
        a, b = half
        va, vb = gc.values[a], gc.values[b]
        ha, hb = self.h[a], self.h[b]
        return ha + (hb - ha) * (gp.t - va) / (vb - va)

    def cell_at_graph_point(self, gp: GraphPoint) -> Cell:
        gc = self._graph()
        if gp.is_node:
            v = gc.node_vertex[gp.node]
            return self.cell_at((v,), self.h[v])
        half = gc.half_containing(gp.edge, gp.t)
        return self.cell_at(half, self.value_at_graph_point(gp))

    def image_point(self, gp: GraphPoint) -> GraphPoint:
        t = self.value_at_graph_point(gp)
        return self.point_of_cell(self.cell_at_graph_point(gp), t)

    def _graph(self) -> GraphComplex:
        if self.source_graph is None:
            raise ValueError("map source is not a graph")
        return self.source_graph


def normalize_cell(target: ReebGraph, cell: Cell, t: Scalar) -> Cell:
    """Snap an edge cell to a node when t sits at an endpoint value."""
    if cell[0] == "e":
        lo, hi = target.edges[cell[1]]
        if target.value(lo) == t:
            return ("n", lo)
        if target.value(hi) == t:
            return ("n", hi)
    return cell


def cellmap_from_hosting(
    source: SimplicialComplex,
    h: dict[int, Scalar],
    target: ReebGraph,
    host: dict[Simplex, Cell],
    source_graph: Optional[GraphComplex] = None,
) -> CellMap:
    """Build a CellMap when every simplex lands inside a single cell."""
    m = CellMap(source, h, target, {}, source_graph)
    assignment: dict[Simplex, dict[Slot, Cell]] = {}
    for s in source.simplices:
        cell = host[s]
        per: dict[Slot, Cell] = {}
        for slot in m.slots_of(s):
            kind, i = slot
            if kind == "L":
                per[slot] = normalize_cell(target, cell, m.levels[i])
            else:
                if cell[0] != "e":
                    raise ValueError(f"simplex {s} spans a gap inside node {cell}")
                per[slot] = cell
        assignment[s] = per
    m.assignment = assignment
    return m


# -- verification -------------------------------------------------------


def verify_reeb_quotient(m: CellMap) -> Certificate:
    """Check that a CellMap is a well-formed surjection with connected
    fibers over every node, every edge-over-a-gap, and every edge interior
    point at a level.  Returns a certificate with explicit witnesses on
    failure."""
    bad: list[Violation] = []
    g = m.target

    def node_val(n: int) -> Scalar:
        return g.value(n)

    # structural well-formedness
    if not m.source.is_connected():
        bad.append(Violation("connected-source", "source complex is disconnected"))
    if not g.is_connected():
        bad.append(Violation("connected-target", "target graph is disconnected"))
    for s in m.source.simplices:
        slots = m.slots_of(s)
        got = set(m.assignment.get(s, {}))
        if got != set(slots):
            bad.append(
                Violation("slots", f"simplex {s}: have {sorted(got)}, need {slots}")
            )
            continue
        for slot in slots:
            kind, i = slot
            cell = m.assignment[s][slot]
            if kind == "L":
                t = m.levels[i]
                if cell[0] == "n":
                    if node_val(cell[1]) != t:
                        bad.append(
                            Violation("level-cell", f"{s}@{t}: node {cell[1]} off-level")
                        )
                else:
                    lo, hi = g.edges[cell[1]]
                    if not node_val(lo) < t < node_val(hi):
                        bad.append(
                            Violation(
                                "level-cell",
                                f"{s}@{t}: edge {cell[1]} does not cross (unnormalized?)",
                            )
                        )
            else:
                if cell[0] != "e":
                    bad.append(Violation("gap-cell", f"{s} gap {i}: node {cell}"))
                    continue
                lo, hi = g.edges[cell[1]]
                if not (
                    node_val(lo) <= m.levels[i] and node_val(hi) >= m.levels[i + 1]
                ):
                    bad.append(
                        Violation("gap-cell", f"{s} gap {i}: edge {cell[1]} too short")
                    )
        # gap <-> neighboring level incidence
        for slot in slots:
            kind, i = slot
            if kind != "G":
                continue
            cell = m.assignment[s][slot]
            if cell[0] != "e":
                continue
            for li in (i, i + 1):
                lslot = ("L", li)
                if lslot not in m.assignment[s]:
                    continue
                want = normalize_cell(g, cell, m.levels[li])
                if m.assignment[s][lslot] != want:
                    bad.append(
                        Violation(
                            "incidence",
                            f"{s}: gap {i} cell {cell} vs level {li} "
                            f"cell {m.assignment[s][lslot]}",
                        )
                    )
        # face compatibility
        for f in m.source.facets_of(s):
            for slot in m.slots_of(f):
                if m.assignment[f].get(slot) != m.assignment[s].get(slot):
                    bad.append(
                        Violation(
                            "face",
                            f"face {f} of {s} disagrees at slot {slot}: "
                            f"{m.assignment[f].get(slot)} vs {m.assignment[s].get(slot)}",
                        )
                    )
    if bad:
        return Certificate(False, (), tuple(bad))

    # surjectivity and connected fibers, stratum by stratum
    checked = ("well-formed", "surjective", "connected-fibers")

    def fiber_support(pred) -> list[Simplex]:
        return [s for s in m.source.simplices if pred(s)]

    def connected(support: list[Simplex]) -> bool:
        if not support:
            return False
        uf = UnionFind(support)
        idx = set(support)
        for s in support:
            for f in m.source.facets_of(s):
                if f in idx:
                    uf.union(s, f)
        return len(uf.groups()) == 1

    for n in g.nodes:
        t = node_val(n)
        li = m.level_index(t)
        sup = fiber_support(
            lambda s: ("L", li) in m.assignment[s]
            and m.assignment[s][("L", li)] == ("n", n)
        )
        if not sup:
            bad.append(Violation("surjective", f"node {n} (value {t}) not hit"))
        elif not connected(sup):
            bad.append(Violation("fiber", f"fiber over node {n} disconnected"))

    for e in range(len(g.edges)):
        lo, hi = g.edges[e]
        a, b = node_val(lo), node_val(hi)
        ia, ib = m.level_index(a), m.level_index(b)
        for i in range(ia, ib):
            # gap (levels[i], levels[i+1]) inside the edge span
            sup = fiber_support(
                lambda s: m.assignment[s].get(("G", i)) == ("e", e)
            )
            if not sup:
                bad.append(
                    Violation(
                        "surjective",
                        f"edge {e} not hit over ({m.levels[i]},{m.levels[i+1]})",
                    )
                )
            elif not connected(sup):
                bad.append(
                    Violation(
                        "fiber",
                        f"fiber over edge {e}, gap ({m.levels[i]},{m.levels[i+1]}) "
                        "disconnected",
                    )
                )
            if i > ia:
                # interior level of the edge
                sup = fiber_support(
                    lambda s: m.assignment[s].get(("L", i)) == ("e", e)
                )
                if not sup:
                    bad.append(
                        Violation(
                            "surjective", f"edge {e} not hit at level {m.levels[i]}"
                        )
                    )
                elif not connected(sup):
                    bad.append(
                        Violation(
                            "fiber",
                            f"fiber over edge {e} at level {m.levels[i]} disconnected",
                        )
                    )
    if bad:
        return Certificate(False, (), tuple(bad))
    return Certificate(True, checked)


# -- subdivision and restriction -----------------------------------------


def subdivide_at_levels(
    complex: SimplicialComplex,
    h: dict[int, Scalar],
    cuts: set[Scalar],
    extra: Optional[list[dict[int, Scalar]]] = None,
) -> tuple[SimplicialComplex, dict[int, Scalar], list[dict[int, Scalar]], dict]:
    """Slice a complex along the hyperplanes {h = c} for c in cuts.

    Returns (new complex, new h, interpolated extras, host) where host maps
    each new simplex to the smallest old simplex containing it.  Slab
    pieces are triangulated by a pulling triangulation with a global vertex
    order, so neighboring simplices agree on shared faces.
    """
    extra = extra or []
    new_h = dict(h)
    new_extra = [dict(d) for d in extra]
    next_id = max(complex.vertices) + 1
    cut_vertex: dict[tuple, int] = {}

    def vertex_on_edge(u: int, w: int, c: Scalar) -> int:
        nonlocal next_id
        key = (min(u, w), max(u, w), c)
        if key in cut_vertex:
            return cut_vertex[key]
        vid = next_id
        next_id += 1
        cut_vertex[key] = vid
        lam = (c - h[u]) / (h[w] - h[u])
        new_h[vid] = c
        for d, nd in zip(extra, new_extra):
            nd[vid] = d[u] + lam * (d[w] - d[u])
        return vid

    all_cuts = sorted(cuts)
    new_simplices: list[tuple] = []
    host: dict[Simplex, Simplex] = {}
    for s in complex.maximal_simplices():
        vals = [h[v] for v in s]
        lo, hi = min(vals), max(vals)
        inner = [c for c in all_cuts if lo < c < hi]
        if not inner:
            new_simplices.append(s)
            for face in _faces_of(s):
                host.setdefault(face, face)
            continue
        # barycentric coordinates on s; constraints x >= 0, sum = 1
        d = len(s)
        verts: dict[int, tuple] = {}
        coords: dict[int, tuple] = {}
        for j, v in enumerate(s):
            e = [Fraction(0)] * d
            e[j] = Fraction(1)
            coords[v] = tuple(e)
        hs = [h[v] for v in s]
        bounds = [lo] + inner + [hi]
        for k in range(len(bounds) - 1):
            a, b = bounds[k], bounds[k + 1]
            eqs: list[LinearForm] = [
                (tuple(Fraction(1) for _ in range(d)), Fraction(1))
            ]
            ineqs: list[LinearForm] = []
            for j in range(d):
                e = [Fraction(0)] * d
                e[j] = Fraction(-1)
                ineqs.append((tuple(e), Fraction(0)))
            ineqs.append((tuple(-x for x in hs), -a))
            ineqs.append((tuple(hs), b))
            pts = polytope_vertices(d, eqs, ineqs)
            slab_verts: dict[int, tuple] = {}
            for p in pts:
                supp = [j for j in range(d) if p[j] != 0]
                if len(supp) == 1:
                    vid = s[supp[0]]
                else:
                    hval = sum((p[j] * hs[j] for j in range(d)), Fraction(0))
                    # cut vertex: lies on an edge of s at a cut value
                    (j0, j1) = supp
                    vid = vertex_on_edge(s[j0], s[j1], hval)
                slab_verts[vid] = p
            for simp in pulling_triangulation(slab_verts, ineqs):
                new_simplices.append(tuple(sorted(simp)))
    sliced = SimplicialComplex.from_simplices(new_simplices)
    # host: smallest old simplex whose vertex set's extension covers the piece
    vert_host: dict[int, int] = {}
    for v in complex.vertices:
        vert_host[v] = v
    edge_of_cut: dict[int, tuple] = {}
    for (u, w, _c), vid in cut_vertex.items():
        edge_of_cut[vid] = (u, w)
    for piece in sliced.simplices:
        old_vs: set[int] = set()
        for v in piece:
            if v in edge_of_cut:
                old_vs.update(edge_of_cut[v])
            else:
                old_vs.add(v)
        host[piece] = tuple(sorted(old_vs))
    return sliced, new_h, new_extra, host


def _faces_of(s: Simplex):
    from itertools import combinations as _comb

    for k in range(1, len(s) + 1):
        for f in _comb(s, k):
            yield f


def restrict_cellmap(
    m: CellMap,
    sliced: SimplicialComplex,
    new_h: dict[int, Scalar],
    host: dict[Simplex, Simplex],
) -> CellMap:
    """Re-express a CellMap on a subdivision of its source.

    host[piece] must be an old simplex containing the piece, and new_h must
    restrict/interpolate the old h.  The piece's slots refine the host's,
    so every lookup lands in a single cell.
    """
    out = CellMap(sliced, new_h, m.target, {}, None)
    assignment: dict[Simplex, dict[Slot, Cell]] = {}
    for piece in sliced.simplices:
        hs = host[piece]
        per: dict[Slot, Cell] = {}
        for slot in out.slots_of(piece):
            kind, i = slot
            if kind == "L":
                t = out.levels[i]
                per[slot] = normalize_cell(m.target, m.cell_at(hs, t), t)
            else:
                per[slot] = m.cell_on(hs, out.levels[i], out.levels[i + 1])
        assignment[piece] = per
    out.assignment = assignment
    return out


# -- composition ---------------------------------------------------------


def _sweep(q: CellMap, p: CellMap, s: Simplex) -> tuple[list[Scalar], list[Scalar]]:
    """Sample the composite value u -> value_p(image of s-fiber at u) on a
    grid of u-values fine enough that it is linear between samples.

    Returns (grid, phi values).  Requires p's source to be q's target.
    """
    lo, hi = q.simplex_range(s)
    grid: list[Scalar] = []
    phivals: list[Scalar] = []
    i = bisect_left(q.levels, lo)
    gridset: set[Scalar] = set()
    while i < len(q.levels) and q.levels[i] <= hi:
        gridset.add(q.levels[i])
        if i + 1 < len(q.levels) and q.levels[i + 1] <= hi:
            a, b = q.levels[i], q.levels[i + 1]
            cell = q.assignment[s][("G", i)]
            el, eh = q.target.edges[cell[1]]
            mid = (q.target.value(el) + q.target.value(eh)) / 2
            if a < mid < b:
                gridset.add(mid)
        i += 1
    grid = sorted(gridset)
    for u in grid:
        cell = q.cell_at(s, u)
        phivals.append(p.value_at_graph_point(q.point_of_cell(cell, u)))
    return grid, phivals


def _fold_values(grid: list[Scalar], phi: list[Scalar]) -> set[Scalar]:
    """u-values at strict interior extrema of a sampled PL function."""
    folds: set[Scalar] = set()
    n = len(grid)
    for i in range(1, n - 1):
        left = next((phi[j] for j in range(i - 1, -1, -1) if phi[j] != phi[i]), None)
        right = next((phi[j] for j in range(i + 1, n) if phi[j] != phi[i]), None)
        if left is None or right is None:
            continue
        if (left < phi[i] and right < phi[i]) or (left > phi[i] and right > phi[i]):
            folds.add(grid[i])
    return folds


def _preimage_of_value(
    grid: list[Scalar], phi: list[Scalar], t: Scalar
) -> tuple[Scalar, Scalar]:
    """First and last u (in list order) where a sampled PL function equals
    t.  phi must be weakly increasing along the list; the grid itself may
    run in either direction (a reversed decreasing sweep)."""
    first = last = None
    for i in range(len(grid)):
        if phi[i] == t:
            if first is None:
                first = grid[i]
            last = grid[i]
        elif i + 1 < len(grid) and phi[i] < t < phi[i + 1]:
            u = grid[i] + (t - phi[i]) * (grid[i + 1] - grid[i]) / (
                phi[i + 1] - phi[i]
            )
            if first is None:
                first = u
            last = u
    if first is None:
        raise ValueError(f"value {t} not attained")
    return first, last


def compose(p: CellMap, q: CellMap) -> CellMap:
    """Composite p ∘ q where q maps into the graph that p maps out of.

    If the fiberwise value sweep folds (is non-monotone) on some simplex,
    the source is first sliced at the fold values so every piece sweeps
    monotonely; the composite is then read off pointwise.
    """
    if p.source_graph is None:
        raise ValueError("p must have a graph source")
    if p.source_graph.graph is not q.target and not _same_graph(
        p.source_graph.graph, q.target
    ):
        raise ValueError("codomain of q is not the domain of p")

    folds: set[Scalar] = set()
    for s in q.source.maximal_simplices():
        grid, phi = _sweep(q, p, s)
        folds |= _fold_values(grid, phi)
    qq = q
    if folds:
        sliced, nh, _, host = subdivide_at_levels(q.source, q.h, folds)
        qq = restrict_cellmap(q, sliced, nh, host)

    # composite vertex values
    ch: dict[int, Scalar] = {}
    for v in qq.source.vertices:
        ch[v] = p.value_at_graph_point(qq.vertex_image(v))

    out = CellMap(
        qq.source, ch, p.target, {}, None if folds else q.source_graph
    )
    assignment: dict[Simplex, dict[Slot, Cell]] = {}
    for s in qq.source.simplices:
        grid, phi = _sweep(qq, p, s)
        if phi and phi[0] > phi[-1]:
            grid = grid[::-1]
            phi = phi[::-1]
        per: dict[Slot, Cell] = {}
        for slot in out.slots_of(s):
            kind, i = slot
            if kind == "L":
                t = out.levels[i]
                ua, ub = _preimage_of_value(grid, phi, t)
                u = (ua + ub) / 2
                ypt = qq.point_of_cell(qq.cell_at(s, u), u)
                per[slot] = normalize_cell(p.target, p.cell_at_graph_point(ypt), t)
            else:
                a, b = out.levels[i], out.levels[i + 1]
                ua = _preimage_of_value(grid, phi, a)[1]
                ub = _preimage_of_value(grid, phi, b)[0]
                u = (ua + ub) / 2
                ypt = qq.point_of_cell(qq.cell_at(s, u), u)
                cell = p.cell_at_graph_point(ypt)
                if cell[0] != "e":
                    raise ValueError(
                        f"composite of {s} over gap ({a},{b}) landed on node {cell}"
                    )
                per[slot] = cell
        assignment[s] = per
    out.assignment = assignment
    return out


def _same_graph(a: ReebGraph, b: ReebGraph) -> bool:
    return a.node_values == b.node_values and a.edges == b.edges


# -- monotone reparametrizations ------------------------------------------


@dataclass(frozen=True)
class MonotonePL:
    """A weakly increasing PL function of one variable given by breakpoint
    pairs (u, value); constant extension outside the breakpoint range."""

    breakpoints: tuple[tuple[Scalar, Scalar], ...]

    def __post_init__(self):
        us = [u for u, _ in self.breakpoints]
        vs = [v for _, v in self.breakpoints]
        if not self.breakpoints:
            raise ValueError("need at least one breakpoint")
        if any(a >= b for a, b in zip(us, us[1:])):
            raise ValueError("breakpoint positions must strictly increase")
        if any(a > b for a, b in zip(vs, vs[1:])):
            raise ValueError("breakpoint values must weakly increase")

    @classmethod
    def from_pairs(cls, pairs) -> "MonotonePL":
        by_u: dict[Scalar, Scalar] = {}
        for u, v in pairs:
            if u in by_u and by_u[u] != v:
                raise ValueError(f"conflicting values at {u}: {by_u[u]} vs {v}")
            by_u[u] = v
        return cls(tuple(sorted(by_u.items())))

    @classmethod
    def identity(cls, lo: Scalar, hi: Scalar) -> "MonotonePL":
        if lo == hi:
            return cls(((lo, lo),))
        return cls(((lo, lo), (hi, hi)))

    def __call__(self, u: Scalar) -> Scalar:
        bp = self.breakpoints
        if u <= bp[0][0]:
            return bp[0][1]
        if u >= bp[-1][0]:
            return bp[-1][1]
        i = bisect_left([x for x, _ in bp], u)
        if bp[i][0] == u:
            return bp[i][1]
        (u0, v0), (u1, v1) = bp[i - 1], bp[i]
        return v0 + (v1 - v0) * (u - u0) / (u1 - u0)

    @property
    def image(self) -> tuple[Scalar, Scalar]:
        return self.breakpoints[0][1], self.breakpoints[-1][1]

    def preimage(self, t: Scalar) -> tuple[Scalar, Scalar]:
        """The closed interval {u : self(u) == t} within the breakpoint
        range (a single point when the value is attained transversally)."""
        lo_v, hi_v = self.image
        if not lo_v <= t <= hi_v:
            raise ValueError("value not attained")
        grid = [u for u, _ in self.breakpoints]
        vals = [v for _, v in self.breakpoints]
        first = last = None
        for k in range(len(grid)):
            if vals[k] == t and first is None:
                first = grid[k]
            if vals[k] == t:
                last = grid[k]
            if k + 1 < len(grid) and vals[k] < t < vals[k + 1]:
                u = grid[k] + (t - vals[k]) * (grid[k + 1] - grid[k]) / (
                    vals[k + 1] - vals[k]
                )
                return u, u
        assert first is not None and last is not None
        return first, last
