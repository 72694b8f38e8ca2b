"""Exact-arithmetic foundation: scalars, simplicial complexes, PL functions,
subdivision, and level-set connectivity queries.

All values are exact rationals (fractions.Fraction), so equality tests on
levels and breakpoints are exact.  Level sets are never geometrically
realized; connectivity questions are answered on simplex incidence alone,
which suffices because a simplexwise-linear function has convex (hence
connected) level traces inside every simplex.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

Scalar = Fraction

Simplex = tuple[int, ...]


def parse_scalar(x) -> Fraction:
    """Parse a decimal or 'p/q' string (or int/Fraction) into an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floating point input is not accepted; use strings or ints")
    raise TypeError(f"cannot parse scalar from {type(x).__name__}")


def format_scalar(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class UnionFind:
    """Union-find over hashable keys, path halving, union by size."""

    def __init__(self, items: Iterable = ()):  # items optional; keys auto-add
        self._parent: dict = {}
        self._size: dict = {}
        for it in items:
            self.add(it)

    def add(self, x) -> None:
        if x not in self._parent:
            self._parent[x] = x
            self._size[x] = 1

    def find(self, x):
        p = self._parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]
        return True

    def groups(self) -> dict:
        out: dict = {}
        for x in self._parent:
            out.setdefault(self.find(x), []).append(x)
        return out


class SimplicialComplex:
    """Finite abstract simplicial complex over dense integer vertex ids.

    Simplices are stored as sorted vertex tuples of every dimension,
    including the vertices themselves.  The complex is face-closed by
    construction when built through :meth:`from_simplices`.
    """

    MAX_DIM = 3

    def __init__(self, simplices: Iterable[Simplex], check: bool = True):
        simps = {tuple(sorted(s)) for s in simplices}
        if check:
            for s in simps:
                if len(set(s)) != len(s):
                    raise ValueError(f"simplex with repeated vertex: {s}")
                if len(s) - 1 > self.MAX_DIM:
                    raise ValueError(f"simplex dimension above {self.MAX_DIM}: {s}")
        self.simplices: frozenset[Simplex] = frozenset(simps)
        self._facets_cache: Optional[dict[Simplex, list[Simplex]]] = None
        self._cofaces_cache: Optional[dict[Simplex, list[Simplex]]] = None

    @classmethod
    def from_simplices(cls, maximal: Iterable[Simplex]) -> "SimplicialComplex":
        """Build the face closure of the given simplices."""
        closed: set[Simplex] = set()
        for s in maximal:
            s = tuple(sorted(s))
            for k in range(1, len(s) + 1):
                closed.update(combinations(s, k))
        return cls(closed, check=True)

    @property
    def vertices(self) -> list[int]:
        return sorted(v for (v,) in (s for s in self.simplices if len(s) == 1))

    @property
    def dimension(self) -> int:
        return max(len(s) for s in self.simplices) - 1

    def facets_of(self, s: Simplex) -> list[Simplex]:
        """Codimension-1 faces of s that are present in the complex."""
        if self._facets_cache is None:
            self._facets_cache = {}
        got = self._facets_cache.get(s)
        if got is None:
            got = [s[:i] + s[i + 1:] for i in range(len(s))] if len(s) > 1 else []
            got = [f for f in got if f in self.simplices]
            self._facets_cache[s] = got
        return got

    def cofacets_of(self, s: Simplex) -> list[Simplex]:
        if self._cofaces_cache is None:
            cache: dict[Simplex, list[Simplex]] = {t: [] for t in self.simplices}
            for t in self.simplices:
                for f in self.facets_of(t):
                    cache[f].append(t)
            self._cofaces_cache = cache
        return self._cofaces_cache[s]

    def maximal_simplices(self) -> list[Simplex]:
        return sorted(s for s in self.simplices if not self.cofacets_of(s))

    def components(self) -> list[frozenset[Simplex]]:
        uf = UnionFind(self.simplices)
        for s in self.simplices:
            for f in self.facets_of(s):
                uf.union(s, f)
        return [frozenset(g) for g in uf.groups().values()]

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def __contains__(self, s) -> bool:
        return tuple(sorted(s)) in self.simplices

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __hash__(self) -> int:
        return hash(self.simplices)

    def __repr__(self) -> str:
        dims: dict[int, int] = {}
        for s in self.simplices:
            dims[len(s) - 1] = dims.get(len(s) - 1, 0) + 1
        counts = ", ".join(f"{n} of dim {d}" for d, n in sorted(dims.items()))
        return f"SimplicialComplex({counts})"


@dataclass(frozen=True)
class PLFunction:
    """Simplexwise-linear function given by exact values on every vertex."""

    complex: SimplicialComplex
    values: Mapping[int, Fraction]

    def __post_init__(self):
        missing = [v for v in self.complex.vertices if v not in self.values]
        if missing:
            raise ValueError(f"function undefined on vertices {missing}")

    def __call__(self, v: int) -> Fraction:
        return self.values[v]

    def range_of(self, s: Simplex) -> tuple[Fraction, Fraction]:
        vals = [self.values[v] for v in s]
        return min(vals), max(vals)

    def min(self) -> Fraction:
        return min(self.values[v] for v in self.complex.vertices)

    def max(self) -> Fraction:
        return max(self.values[v] for v in self.complex.vertices)

    def critical_values(self) -> list[Fraction]:
        return sorted({self.values[v] for v in self.complex.vertices})


@dataclass
class ValidationReport:
    face_closure_violations: list[Simplex] = field(default_factory=list)
    duplicate_simplices: list[Simplex] = field(default_factory=list)
    component_count: int = 0

    @property
    def valid(self) -> bool:
        return not self.face_closure_violations and not self.duplicate_simplices


def validate_complex(simplices: Sequence[Sequence[int]]) -> ValidationReport:
    """Diagnose a raw simplex list: face closure, duplicates, components.

    Operates on the raw list (before normalization) so duplicates are
    reported rather than silently merged.
    """
    report = ValidationReport()
    normalized = [tuple(sorted(s)) for s in simplices]
    seen: set[Simplex] = set()
    for s in normalized:
        if s in seen:
            report.duplicate_simplices.append(s)
        seen.add(s)
    for s in seen:
        for i in range(len(s)):
            f = s[:i] + s[i + 1:]
            if f and f not in seen:
                report.face_closure_violations.append(f)
    report.face_closure_violations = sorted(set(report.face_closure_violations))
    if seen:
        uf = UnionFind(seen)
        for s in seen:
            for i in range(len(s)):
                f = s[:i] + s[i + 1:]
                if f in seen:
                    uf.union(s, f)
        report.component_count = len(uf.groups())
    return report


def _overlap_components(
    complex: SimplicialComplex,
    f: PLFunction,
    meets,
) -> list[frozenset[Simplex]]:
    """Components of the sub-level structure selected by the `meets` predicate.

    Two selected simplices are joined whenever one is a codim-1 face of the
    other and both are selected; convexity of the trace inside each simplex
    makes this sufficient for pi_0.
    """
    support = [s for s in complex.simplices if meets(s)]
    uf = UnionFind(support)
    sel = set(support)
    for s in support:
        for face in complex.facets_of(s):
            if face in sel:
                uf.union(s, face)
    return [frozenset(g) for g in uf.groups().values()]


def level_components(
    complex: SimplicialComplex, f: PLFunction, t: Fraction
) -> list[frozenset[Simplex]]:
    """Connected components of the level set f^{-1}(t).

    Each component is reported as the set of simplices it meets.  Returns
    the empty list when t lies outside [min f, max f].
    """
    if not complex.simplices:
        return []
    if t < f.min() or t > f.max():
        return []

    def meets(s: Simplex) -> bool:
        lo, hi = f.range_of(s)
        return lo <= t <= hi

    return _overlap_components(complex, f, meets)


def interval_preimage_components(
    complex: SimplicialComplex, f: PLFunction, a: Fraction, b: Fraction
) -> list[frozenset[Simplex]]:
    """Connected components of f^{-1}([a, b]) as sets of simplices."""
    if a > b:
        raise ValueError(f"empty interval: {format_scalar(a)} > {format_scalar(b)}")
    if not complex.simplices:
        return []

    def meets(s: Simplex) -> bool:
        lo, hi = f.range_of(s)
        return lo <= b and hi >= a

    return _overlap_components(complex, f, meets)


def barycentric_subdivision(
    complex: SimplicialComplex, f: Optional[PLFunction] = None
) -> tuple[SimplicialComplex, Optional[PLFunction], dict[Simplex, int]]:
    """One barycentric subdivision; values extend linearly to barycenters.

    Returns the subdivided complex, the subdivided function (if given) and
    the map from original simplices to their barycenter vertex ids.
    """
    bary_id: dict[Simplex, int] = {}
    next_id = 0
    for s in sorted(complex.simplices):
        bary_id[s] = next_id
        next_id += 1

    maximal = [s for s in complex.simplices if not complex.cofacets_of(s)]
    new_simplices: set[Simplex] = set()

    def chains(s: Simplex) -> list[list[Simplex]]:
        # Descending chains of proper faces starting at s.
        out = [[s]]
        if len(s) > 1:
            for face in combinations(s, len(s) - 1):
                for c in chains(face):
                    out.append([s] + c)
        return out

    for s in maximal:
        for chain in chains(s):
            new_simplices.add(tuple(sorted(bary_id[t] for t in chain)))

    sd = SimplicialComplex.from_simplices(new_simplices)
    sdf = None
    if f is not None:
        vals = {
            bary_id[s]: sum((f(v) for v in s), Fraction(0)) / len(s)
            for s in complex.simplices
        }
        sdf = PLFunction(sd, vals)
    return sd, sdf, bary_id
