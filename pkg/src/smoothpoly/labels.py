"""Triangulation labels of simple 3-polytopes, small sphere triangulations,
and a lattice-point lower bound for blow-up pruning.

The label of a simple 3-polytope is the multiset of its facet sizes
(number of edges per facet); dually, the vertex degrees of the boundary
triangulation of the polar polytope.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import ceil
from typing import Iterable, Sequence

from smoothpoly.geometry import LatticePolytope


class LabelError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TriangulationLabel:
    """Multiset of facet sizes, stored as sorted ``(size, multiplicity)`` pairs."""

    counts: tuple

    @classmethod
    def from_sizes(cls, sizes: Iterable[int]) -> "TriangulationLabel":
        c = Counter(sizes)
        return cls(tuple(sorted(c.items())))

    @classmethod
    def parse(cls, text: str) -> "TriangulationLabel":
        """Parse ``"3^2 4^3"``; a bare base means exponent 1."""
        sizes = Counter()
        tokens = text.replace("*", " ").split()
        if not tokens:
            raise LabelError("empty label")
        for tok in tokens:
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", tok)
            if not m:
                raise LabelError(f"bad label token {tok!r}")
            sizes[int(m.group(1))] += int(m.group(2) or 1)
        return cls(tuple(sorted(sizes.items())))

    def render(self) -> str:
        return " ".join(f"{b}^{e}" for b, e in self.counts)

    __str__ = render

    @property
    def sizes(self) -> list:
        return [b for b, e in self.counts for _ in range(e)]

    @property
    def num_facets(self) -> int:
        return sum(e for _, e in self.counts)

    @property
    def num_vertices(self) -> int:
        return 2 * (self.num_facets - 2)

    @property
    def num_edges(self) -> int:
        return sum(b * e for b, e in self.counts) // 2

    def is_consistent(self) -> bool:
        """Handshake and Euler relations of a simple 3-polytope."""
        total = sum(b * e for b, e in self.counts)
        return total % 2 == 0 and total == 3 * self.num_vertices


def label(p: LatticePolytope) -> TriangulationLabel:
    if p.dim != 3 or not p.is_simple():
        raise LabelError("labels are defined for simple 3-polytopes")
    return TriangulationLabel.from_sizes(len(fv) for fv in p.facet_vertices)


def _raise_bases(lab: TriangulationLabel, how_many: int, new_size: int) -> set:
    out = set()
    for chosen in set(combinations(lab.sizes, how_many)):
        rest = Counter(lab.sizes)
        rest.subtract(chosen)
        sizes = list(rest.elements()) + [b + 1 for b in chosen] + [new_size]
        out.add(TriangulationLabel.from_sizes(sizes))
    return out


def vertex_blowup_labels(lab: TriangulationLabel) -> set:
    return _raise_bases(lab, 3, 3)


def edge_blowup_labels(lab: TriangulationLabel) -> set:
    return _raise_bases(lab, 2, 4)


def predicted_blowup_label(p: LatticePolytope, face: Sequence[int]) -> TriangulationLabel:
    """Exact label of a blow-up of ``p`` along ``face`` (vertex indices):
    the facets through a blown-up vertex, or through exactly one endpoint
    of a blown-up edge, gain an edge."""
    sizes = [len(fv) for fv in p.facet_vertices]
    if len(face) == 1:
        raised = p.vertex_facets[face[0]]
        new = 3
    else:
        a, b = (set(p.vertex_facets[i]) for i in face)
        raised = a ^ b
        new = 4
    for j in raised:
        sizes[j] += 1
    return TriangulationLabel.from_sizes(sizes + [new])


# sphere triangulations as rotation systems: rot[v] lists neighbours counterclockwise

def _tetrahedron() -> tuple:
    return ((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1))


def _code(rot: tuple, start: int, first: int, mirror: bool) -> tuple:
    label_of = {start: 0}
    order = [start]
    ref = {start: first}
    code = []
    pos = 0
    while pos < len(order):
        u = order[pos]
        pos += 1
        nb = rot[u]
        if mirror:
            nb = nb[::-1]
        i = nb.index(ref[u])
        seq = nb[i:] + nb[:i]
        for w in seq:
            if w not in label_of:
                label_of[w] = len(order)
                order.append(w)
                ref[w] = u
        code.append(tuple(label_of[w] for w in seq))
    return tuple(code)


def canonical_code(rot: tuple) -> tuple:
    """Minimal breadth-first code over all rooted directed edges and both
    orientations; equal codes iff the triangulations are isomorphic
    (mirror images identified)."""
    return min(_code(rot, v, w, m) for v in range(len(rot)) for w in rot[v] for m in (False, True))


def _splits(rot: tuple):
    """All vertex splittings of a triangulation (inverse edge contraction)."""
    n = len(rot)
    for v in range(n):
        nb = rot[v]
        d = len(nb)
        for i in range(d):
            for j in range(d):
                if i == j:
                    continue
                # v keeps nb[i..j], new vertex x takes nb[j..i]
                keep = [nb[(i + t) % d] for t in range((j - i) % d + 1)]
                give = [nb[(j + t) % d] for t in range((i - j) % d + 1)]
                if len(keep) + 1 < 3 or len(give) + 1 < 3:
                    continue
                x = n
                new = [list(r) for r in rot] + [None]
                new[v] = keep + [x]
                new[x] = give + [v]
                wi, wj = nb[i], nb[j]
                for w in give[1:-1]:
                    new[w] = [x if y == v else y for y in new[w]]
                # counterclockwise, x precedes v around wj and follows v around wi
                r = new[wj]
                k = r.index(v)
                new[wj] = r[:k] + [x] + r[k:]
                r = new[wi]
                k = r.index(v)
                new[wi] = r[:k + 1] + [x] + r[k + 1:]
                yield tuple(tuple(r) for r in new)


@lru_cache(maxsize=None)
def triangulations(n: int) -> tuple:
    """All combinatorial triangulations of the 2-sphere with ``n`` vertices
    (``4 <= n <= 9``) as rotation systems, one per isomorphism class."""
    if n < 4:
        raise LabelError("sphere triangulations need at least 4 vertices")
    if n == 4:
        return (_tetrahedron(),)
    found = {}
    for rot in triangulations(n - 1):
        for new in _splits(rot):
            found.setdefault(canonical_code(new), new)
    return tuple(found[c] for c in sorted(found))


def triangulation_label(rot: tuple) -> TriangulationLabel:
    return TriangulationLabel.from_sizes(len(r) for r in rot)


@lru_cache(maxsize=None)
def realizable_labels(max_facets: int) -> frozenset:
    if max_facets > 9:
        raise LabelError("only triangulations with at most 9 vertices are generated")
    return frozenset(triangulation_label(rot) for n in range(4, max_facets + 1)
                     for rot in triangulations(n))


def is_realizable(lab: TriangulationLabel) -> bool:
    return lab.num_facets >= 4 and lab in realizable_labels(max(4, min(lab.num_facets, 9)))


# lower bound

@dataclass(frozen=True)
class FacetStats:
    """Minimal lattice-point data of smooth polygons with at most
    ``max_points`` points, keyed by number of edges.

    ``non_vertex[n]``: fewest non-vertex points; ``interior[n]``: fewest
    interior points; ``half_credit[n]``: least ``boundary/2 + interior``
    over non-vertex points; ``pair[(n, m)]``: fewest non-vertex points of two
    such polygons glued along an edge of equal length.
    """

    max_points: int
    non_vertex: dict
    interior: dict
    half_credit: dict
    pair: dict

    @classmethod
    def from_polygons(cls, polygons: Iterable[LatticePolytope], max_points: int) -> "FacetStats":
        from fractions import Fraction

        from smoothpoly.lattice import primitive, sub

        nv, inner, half = {}, {}, {}
        edge_best: dict = {}
        for p in polygons:
            n = len(p.vertices)
            pts = p.lattice_points
            boundary = sum(1 for x in pts if any(f.value(x) == 0 for f in p.facets))
            non_vertex = len(pts) - n
            interior = len(pts) - boundary
            nv[n] = min(nv.get(n, non_vertex), non_vertex)
            inner[n] = min(inner.get(n, interior), interior)
            h = Fraction(boundary - n, 2) + interior
            half[n] = min(half.get(n, h), h)
            for a, b in p.edges:
                ell = primitive(sub(p.vertices[a], p.vertices[b]))[1]
                key = (n, ell)
                edge_best[key] = min(edge_best.get(key, non_vertex), non_vertex)
        pair = {}
        for (n, ell), x in edge_best.items():
            for (m, ell2), y in edge_best.items():
                if ell == ell2:
                    v = x + y - (ell - 1)
                    pair[(n, m)] = min(pair.get((n, m), v), v)
        return cls(max_points, nv, inner, half, pair)


@lru_cache(maxsize=None)
def default_facet_stats() -> FacetStats:
    from smoothpoly.enumerate2d import enumerate_smooth_polygons

    polys = [entry.polytope for entry in enumerate_smooth_polygons(12)]
    return FacetStats.from_polygons(polys, 12)


def _adjacency(rot: tuple) -> list:
    return [set(r) for r in rot]


def _matching_estimate(sizes: Sequence[int], adj: list, stats: FacetStats) -> int:
    big = [v for v, s in enumerate(sizes) if s >= 5]
    best = 0
    for r in range(len(big) + 1):
        for chosen in combinations(big, r):
            cs = set(chosen)
            deg = {v: len(adj[v] & cs) for v in chosen}
            if any(d > 1 for d in deg.values()):
                continue
            total = sum(stats.interior[sizes[v]] for v in big if v not in cs)
            done = set()
            for v in chosen:
                if v in done:
                    continue
                partner = next(iter(adj[v] & cs), None)
                if partner is None:
                    total += stats.non_vertex[sizes[v]]
                    done.add(v)
                else:
                    total += stats.pair[(sizes[v], sizes[partner])]
                    done |= {v, partner}
            best = max(best, total)
    return best


def _graph_free_estimate(sizes: Sequence[int], stats: FacetStats) -> int:
    return ceil(sum(stats.half_credit[s] for s in sizes if s >= 5))


def facet_point_lower_bound(lab: TriangulationLabel, stats: FacetStats | None = None,
                            allow_unrealizable: bool = False) -> int:
    """Lower bound on the lattice points of any smooth 3-polytope with label
    ``lab``.

    Counts the ``2(F - 2)`` vertices plus non-vertex points forced on the
    facets with at least five edges, assuming every facet has at most
    ``stats.max_points`` points; otherwise the largest facet alone supplies
    ``stats.max_points + 1`` points. Minimized over all dual triangulations
    with the given degrees. Unrealizable labels raise unless
    ``allow_unrealizable`` is set, in which case the graph-free estimate is
    used.
    """
    if not lab.is_consistent():
        raise LabelError(f"label {lab} violates the simple 3-polytope relations")
    stats = stats or default_facet_stats()
    sizes = lab.sizes
    missing = {s for s in sizes if s >= 5 and s not in stats.non_vertex}
    verts = lab.num_vertices
    big_facet = stats.max_points + 1 + verts - max(sizes)
    if missing:
        # facets of this size need more than stats.max_points points
        return big_facet
    realizable = is_realizable(lab)
    if not realizable and not allow_unrealizable:
        raise LabelError(f"label {lab} is not realizable")
    base = _graph_free_estimate(sizes, stats)
    if not realizable:
        return min(verts + base, big_facet)
    best = None
    for rot in triangulations(lab.num_facets):
        if triangulation_label(rot) != lab:
            continue
        degs = [len(r) for r in rot]
        e2 = _matching_estimate(degs, _adjacency(rot), stats)
        val = verts + max(base, e2)
        best = val if best is None else min(best, val)
    return min(best, big_facet)
