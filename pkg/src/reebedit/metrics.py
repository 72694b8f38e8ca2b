"""The intrinsic interval metric on Reeb graphs and functional-distortion
bounds.

d_f(x, y) is the least length b - a of a value interval [a, b] such that x
and y lie in one connected component of the preimage of [a, b].  The
component structure only changes at node values, so the optimum is attained
with a and b drawn from node values and the two point values; we sweep b
upward for each candidate a, recording first-connection events for all
requested pairs at once.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .graphs import GraphPoint, ReebGraph, point_on_edge
from .maps import CellMap
from .plcore import Scalar, UnionFind

ZERO = Fraction(0)


def _point_value(g: ReebGraph, p: GraphPoint) -> Scalar:
    return p.value(g)


def d_matrix(
    g: ReebGraph, points: Sequence[GraphPoint]
) -> dict[tuple[int, int], Scalar]:
    """All pairwise d_f distances between the given points, exactly.

    Returns {(i, j): distance} for i < j.  Runs one incremental union-find
    sweep per candidate lower endpoint; pairs are charged when their
    components first merge, so total pair work is near-linear.
    """
    n = len(points)
    vals = [_point_value(g, p) for p in points]
    candidates = sorted(set(g.node_values.values()) | set(vals))
    best: dict[tuple[int, int], Scalar] = {}

    def carrier(p: GraphPoint):
        return ("n", p.node) if p.is_node else ("e", p.edge)

    for a in candidates:
        # entry thresholds for this sweep
        items: list[tuple[Scalar, int, tuple]] = []  # (threshold, order, item)
        for node, v in g.node_values.items():
            if v >= a:
                items.append((v, 0, ("n", node)))
        for e, (lo, hi) in enumerate(g.edges):
            if g.value(hi) >= a:
                items.append((max(a, g.value(lo)), 1, ("e", e)))
        for i in range(n):
            if vals[i] >= a:
                items.append((vals[i], 2, ("p", i)))
        items.sort(key=lambda x: (x[0], x[1]))

        uf = UnionFind()
        present: set[tuple] = set()
        members: dict[tuple, list[int]] = {}

        def root_members(item) -> list[int]:
            return members.setdefault(uf.find(item), [])

        def join(x, y, b: Scalar):
            rx, ry = uf.find(x), uf.find(y)
            if rx == ry:
                return
            mx = members.pop(rx, [])
            my = members.pop(ry, [])
            if len(mx) > len(my):
                mx, my = my, mx
            d = b - a
            for i in mx:
                for j in my:
                    key = (i, j) if i < j else (j, i)
                    if key not in best or d < best[key]:
                        best[key] = d
            uf.union(x, y)
            members[uf.find(x)] = my + mx

        for b, _, item in items:
            uf.add(item)
            present.add(item)
            kind = item[0]
            if kind == "n":
                node = item[1]
                for e in g.edges_at(node):
                    if ("e", e) in present:
                        join(item, ("e", e), b)
            elif kind == "e":
                lo, hi = g.edges[item[1]]
                for node in (lo, hi):
                    if ("n", node) in present:
                        join(item, ("n", node), b)
            else:
                i = item[1]
                members.setdefault(uf.find(item), []).append(i)
                c = carrier(points[i])
                if c in present:
                    join(item, c, b)
                # coincident points on the same carrier entered earlier are
                # joined through the carrier; identical points give d = 0
    for i in range(n):
        for j in range(i + 1, n):
            if points[i] == points[j]:
                best[(i, j)] = ZERO
    return best


def d_f(g: ReebGraph, x: GraphPoint, y: GraphPoint) -> Scalar:
    """Least interval length over which x and y are connected."""
    if x == y:
        return ZERO
    m = d_matrix(g, [x, y])
    if (0, 1) not in m:
        raise ValueError("points are not connected in the graph")
    return m[(0, 1)]


# -- PL maps between Reeb graphs -------------------------------------------


@dataclass
class PLGraphMap:
    """A continuous PL map between Reeb graphs.

    Unlike quotient-map representations, these need not commute with the
    value functions.  Each source edge carries a traversal path: pairs
    (u, point) with u the intrinsic source value, consecutive points lying
    on a common closed target edge (equal nodes are allowed; distinct nodes
    must be bridged by an interior point so that parallel edges are
    unambiguous).
    """

    source: ReebGraph
    target: ReebGraph
    vertex_images: dict[int, GraphPoint]
    edge_paths: dict[int, list[tuple[Scalar, GraphPoint]]]

    def __call__(self, p: GraphPoint) -> GraphPoint:
        if p.is_node:
            return self.vertex_images[p.node]
        path = self.edge_paths[p.edge]
        for k in range(len(path) - 1):
            u0, q0 = path[k]
            u1, q1 = path[k + 1]
            if u0 <= p.t <= u1:
                if p.t == u0:
                    return q0
                if p.t == u1:
                    return q1
                if q0 == q1:
                    return q0
                e = _common_edge(self.target, q0, q1)
                v0 = q0.value(self.target)
                v1 = q1.value(self.target)
                v = v0 + (v1 - v0) * (p.t - u0) / (u1 - u0)
                return point_on_edge(self.target, e, v)
        raise ValueError(f"{p} outside edge path range")

    def value_defect(self) -> Scalar:
        """sup |f̃(x) − g̃(φ(x))| over the source graph, exactly.

        The defect is linear between path breakpoints, so the maximum is
        attained at breakpoints and nodes.
        """
        worst = ZERO
        for node, img in self.vertex_images.items():
            worst = max(worst, abs(self.source.value(node) - img.value(self.target)))
        for path in self.edge_paths.values():
            for u, q in path:
                worst = max(worst, abs(u - q.value(self.target)))
        return worst


def _common_edge(g: ReebGraph, p: GraphPoint, q: GraphPoint) -> int:
    opts_p = {p.edge} if not p.is_node else set(g.edges_at(p.node))
    opts_q = {q.edge} if not q.is_node else set(g.edges_at(q.node))
    common = opts_p & opts_q
    if len(common) != 1:
        raise ValueError(
            f"ambiguous or missing common edge for {p}, {q}: {sorted(common)}"
        )
    return common.pop()


def plgraphmap_from_cellmap(zeta: CellMap) -> PLGraphMap:
    """Convert a quotient-map representation with a graph source into a
    point-level PL map."""
    gc = zeta._graph()
    src = gc.graph
    tgt = zeta.target
    vertex_images = {n: zeta.image_point(GraphPoint(node=n)) for n in src.nodes}
    node_vals = sorted(set(tgt.node_values.values()))
    edge_paths: dict[int, list[tuple[Scalar, GraphPoint]]] = {}
    for e in range(len(src.edges)):
        lo, hi = src.edges[e]
        a, b = src.value(lo), src.value(hi)
        us = {a, b}
        for half in gc.halves(e):
            v0, v1 = half
            h0, h1 = zeta.h[v0], zeta.h[v1]
            u0, u1 = gc.values[v0], gc.values[v1]
            us.add((u0 + u1) / 2)
            if h0 != h1:
                for w in node_vals:
                    if min(h0, h1) <= w <= max(h0, h1):
                        us.add(u0 + (w - h0) * (u1 - u0) / (h1 - h0))
        path = []
        for u in sorted(us):
            pt = point_on_edge(src, e, u)
            path.append((u, zeta.image_point(pt)))
        edge_paths[e] = path
    return PLGraphMap(src, tgt, vertex_images, edge_paths)


# -- distortion -------------------------------------------------------------


def sample_points(g: ReebGraph, density: int) -> list[GraphPoint]:
    """All nodes plus density evenly spaced interior points per edge, plus
    the preimages of every node value interior to an edge's span (needed
    for the tightness certificate)."""
    pts: list[GraphPoint] = [GraphPoint(node=n) for n in sorted(g.nodes)]
    node_vals = sorted(set(g.node_values.values()))
    for e, (lo, hi) in enumerate(g.edges):
        a, b = g.value(lo), g.value(hi)
        ts = set()
        for j in range(1, density + 1):
            ts.add(a + (b - a) * Fraction(j, density + 1))
        for w in node_vals:
            if a < w < b:
                ts.add(w)
        for t in sorted(ts):
            pts.append(GraphPoint(edge=e, t=t))
    return pts


@dataclass(frozen=True)
class DistortionReport:
    distortion: Scalar  # D = max over sampled correspondence pairs
    defect_fg: Scalar  # ‖f̃ − g̃∘φ‖∞
    defect_gf: Scalar  # ‖f̃∘ψ − g̃‖∞
    tight: bool  # sample maximum certified equal to the supremum

    @property
    def bound(self) -> Scalar:
        return max(self.distortion, self.defect_fg, self.defect_gf)


def _map_breakpoints(phi: PLGraphMap) -> list[GraphPoint]:
    """Interior path breakpoints of a PL map, plus the positions where a
    path segment's image value crosses a target node value.  Between
    consecutive returned positions the map is affine and its image stays
    inside one open target cell."""
    node_vals = sorted(set(phi.target.node_values.values()))
    pts: list[GraphPoint] = []
    for e, path in phi.edge_paths.items():
        us = {u for u, _ in path}
        for (u0, q0), (u1, q1) in zip(path, path[1:]):
            v0 = q0.value(phi.target)
            v1 = q1.value(phi.target)
            if v0 == v1 or u0 == u1:
                continue
            for w in node_vals:
                if min(v0, v1) < w < max(v0, v1):
                    us.add(u0 + (w - v0) * (u1 - u0) / (v1 - v0))
        lo, hi = phi.source.edges[e]
        a, b = phi.source.value(lo), phi.source.value(hi)
        pts += [GraphPoint(edge=e, t=u) for u in sorted(us) if a < u < b]
    return pts


def distortion(
    phi: PLGraphMap, psi: PLGraphMap, density: int = 1
) -> DistortionReport:
    """Exact evaluation of the functional-distortion terms for one map pair.

    D is the maximum of ½|d_f(p,p') − d_g(q,q')| over the sampled
    correspondence G(φ,ψ).  The sample is a certificate (tight=True) when
    each pairwise d-function is linear between consecutive samples — checked
    by midpoint evaluation — because coordinatewise-linear functions on a
    product cell attain their extrema at corners.
    """
    gf, gg = phi.source, phi.target
    if psi.source is not gg and psi.source.node_values != gg.node_values:
        raise ValueError("psi must map the target graph of phi back")
    samples_f = sample_points(gf, density)
    samples_g = sample_points(gg, density)
    samples_f = _dedupe(samples_f + _map_breakpoints(phi))
    samples_g = _dedupe(samples_g + _map_breakpoints(psi))

    # correspondence corners: (p, φp) for p in R_f, (ψq, q) for q in R_g
    corners = _dedupe(
        [(p, phi(p)) for p in samples_f] + [(psi(q), q) for q in samples_g]
    )

    # Each branch of the correspondence is a one-parameter family; the gaps
    # between consecutive samples along an edge are its linearity cells.
    gaps_f = _edge_gaps(gf, samples_f)
    gaps_g = _edge_gaps(gg, samples_g)

    all_f = [p for p, _ in corners]
    all_g = [q for _, q in corners]
    for pa, pb, pm in gaps_f:
        all_f += [pa, pb, pm]
        all_g += [phi(pa), phi(pb), phi(pm)]
    for qa, qb, qm in gaps_g:
        all_g += [qa, qb, qm]
        all_f += [psi(qa), psi(qb), psi(qm)]
    idx_f = _index(all_f)
    idx_g = _index(all_g)
    mf = d_matrix(gf, list(idx_f))
    mg = d_matrix(gg, list(idx_g))

    def df(p1: GraphPoint, p2: GraphPoint) -> Scalar:
        return _look(mf, idx_f[p1], idx_f[p2])

    def dg(q1: GraphPoint, q2: GraphPoint) -> Scalar:
        return _look(mg, idx_g[q1], idx_g[q2])

    worst = ZERO
    npairs = len(corners)
    for i in range(npairs):
        p1, q1 = corners[i]
        for j in range(i + 1, npairs):
            p2, q2 = corners[j]
            worst = max(worst, abs(df(p1, p2) - dg(q1, q2)))

    # Tightness: on each gap the candidate set of intervals is constant (the
    # samples include every node-value preimage), so each pairwise d-function
    # restricted to the gap is a minimum of affine functions, hence concave;
    # a concave function passing the midpoint test is linear on the gap, and
    # functions linear across every gap attain their extrema at corners.
    def linear(d, xm, xa, xb, others):
        return all(2 * d(xm, x2) == d(xa, x2) + d(xb, x2) for x2 in others)

    # Slices are tested against corner points only: gap interiors (notably the
    # midpoints themselves) sit on the self-distance kink of d, and product
    # cells are handled corner-wise.
    others_f = _dedupe([p for p, _ in corners])
    others_g = _dedupe([q for _, q in corners])
    tight = True
    for pa, pb, pm in gaps_f:
        if not linear(df, pm, pa, pb, others_f) or not linear(
            dg, phi(pm), phi(pa), phi(pb), others_g
        ):
            tight = False
            break
    if tight:
        for qa, qb, qm in gaps_g:
            if not linear(dg, qm, qa, qb, others_g) or not linear(
                df, psi(qm), psi(qa), psi(qb), others_f
            ):
                tight = False
                break

    return DistortionReport(
        Fraction(worst, 2),
        phi.value_defect(),
        psi.value_defect(),
        tight,
    )


def _dedupe(points: list[GraphPoint]) -> list[GraphPoint]:
    seen = set()
    out = []
    for p in points:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _index(points: list[GraphPoint]) -> dict[GraphPoint, int]:
    out: dict[GraphPoint, int] = {}
    for p in points:
        if p not in out:
            out[p] = len(out)
    return out


def _look(m: dict, i: int, j: int) -> Scalar:
    if i == j:
        return ZERO
    key = (i, j) if i < j else (j, i)
    return m[key]


def _edge_gaps(
    g: ReebGraph, samples: list[GraphPoint]
) -> list[tuple[GraphPoint, GraphPoint, GraphPoint]]:
    """(left sample, right sample, midpoint) triples for the gaps between
    consecutive sample positions along every edge."""
    per_edge: dict[int, set[Scalar]] = {}
    for e, (lo, hi) in enumerate(g.edges):
        per_edge[e] = {g.value(lo), g.value(hi)}
    for p in samples:
        if not p.is_node:
            per_edge[p.edge].add(p.t)
    out = []
    for e, ts in per_edge.items():
        s = sorted(ts)
        for a, b in zip(s, s[1:]):
            out.append(
                (
                    point_on_edge(g, e, a),
                    point_on_edge(g, e, b),
                    GraphPoint(edge=e, t=(a + b) / 2),
                )
            )
    return out


def correspondence_table(
    phi: PLGraphMap, psi: PLGraphMap, density: int = 1
) -> list[tuple[GraphPoint, GraphPoint, GraphPoint, GraphPoint, Scalar, Scalar]]:
    """Rows (p1, q1, p2, q2, d_f(p1,p2), d_g(q1,q2)) over all sampled
    correspondence pairs, for export and inspection."""
    gf, gg = phi.source, phi.target
    samples_f = _dedupe(sample_points(gf, density) + _map_breakpoints(phi))
    samples_g = _dedupe(sample_points(gg, density) + _map_breakpoints(psi))
    corners = _dedupe(
        [(p, phi(p)) for p in samples_f] + [(psi(q), q) for q in samples_g]
    )
    idx_f = _index([p for p, _ in corners])
    idx_g = _index([q for _, q in corners])
    mf = d_matrix(gf, list(idx_f))
    mg = d_matrix(gg, list(idx_g))
    rows = []
    for i, (p1, q1) in enumerate(corners):
        for p2, q2 in corners[i + 1 :]:
            rows.append(
                (
                    p1,
                    q1,
                    p2,
                    q2,
                    _look(mf, idx_f[p1], idx_f[p2]),
                    _look(mg, idx_g[q1], idx_g[q2]),
                )
            )
    return rows


def fd_upper_bound(
    candidates: list[tuple[PLGraphMap, PLGraphMap]], density: int = 1
) -> tuple[Scalar, list[DistortionReport]]:
    """Certified upper bound for the functional distortion distance: the
    best max(D, defects) over the candidate map pairs.  Candidates whose
    sample certificate is not tight are reported but do not contribute."""
    if not candidates:
        raise ValueError("need at least one candidate map pair")
    reports = [distortion(phi, psi, density) for phi, psi in candidates]
    usable = [r.bound for r in reports if r.tight]
    if not usable:
        raise ValueError("no candidate produced a tight certificate")
    return min(usable), reports
