"""Exact convex hulls, face lattices and lattice points in dimension 2 and 3."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from smoothpoly import kernels
from smoothpoly.lattice import LatticeError, Vector, cross, dot, primitive, rank, sub


class GeometryError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class FacetInequality:
    """``normal . x >= offset`` with a primitive inner normal."""

    normal: Vector
    offset: int

    def value(self, p: Sequence[int]) -> int:
        return dot(self.normal, p) - self.offset


def affine_dimension(points: Sequence[Sequence[int]]) -> int:
    if not points:
        return -1
    base = points[0]
    return rank([sub(p, base) for p in points[1:]]) if len(points) > 1 else 0


@dataclass(frozen=True, eq=False)
class LatticePolytope:
    """Full-dimensional lattice polytope with its face lattice.

    Vertices are sorted lexicographically and facets by ``(normal, offset)``.
    ``facet_vertices[j]`` lists the vertex indices on facet ``j`` and
    ``edges`` holds sorted vertex index pairs. Equality compares vertex sets.
    """

    vertices: tuple
    facets: tuple
    facet_vertices: tuple
    edges: tuple

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def __eq__(self, other):
        return isinstance(other, LatticePolytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"LatticePolytope({list(self.vertices)})"

    @classmethod
    def from_vertices_and_facets(cls, vertices: Iterable[Sequence[int]],
                                 facets: Iterable[FacetInequality]) -> "LatticePolytope":
        """Build the face lattice from known extreme points and facet
        inequalities, skipping the hull search."""
        verts = tuple(sorted(set(tuple(v) for v in vertices)))
        facs = tuple(sorted(facets))
        d = len(verts[0])
        fv = tuple(tuple(i for i, v in enumerate(verts) if f.value(v) == 0) for f in facs)
        for f, idx in zip(facs, fv):
            if len(idx) < d:
                raise GeometryError(f"facet {f} touches only {len(idx)} vertices")
        if d == 2:
            edges = tuple(sorted(fv))
        else:
            on = [set() for _ in verts]
            for j, idx in enumerate(fv):
                for i in idx:
                    on[i].add(j)
            edges = tuple(sorted((a, b) for a in range(len(verts)) for b in range(a + 1, len(verts))
                                 if len(on[a] & on[b]) >= 2))
        return cls(verts, facs, fv, edges)

    # incidence helpers

    @cached_property
    def vertex_facets(self) -> tuple:
        out = [[] for _ in self.vertices]
        for j, idx in enumerate(self.facet_vertices):
            for i in idx:
                out[i].append(j)
        return tuple(tuple(x) for x in out)

    @cached_property
    def neighbors(self) -> tuple:
        out = [[] for _ in self.vertices]
        for a, b in self.edges:
            out[a].append(b)
            out[b].append(a)
        return tuple(tuple(sorted(x)) for x in out)

    def edge_directions(self, i: int) -> list:
        """Primitive directions of the edges leaving vertex ``i``."""
        v = self.vertices[i]
        return [primitive(sub(self.vertices[j], v))[0] for j in self.neighbors[i]]

    def facet_cycle(self, j: int) -> tuple:
        """Vertex indices of facet ``j`` in cyclic order, counterclockwise
        as seen from outside the polytope."""
        idx = self.facet_vertices[j]
        if self.dim == 2:
            return idx
        members = set(idx)
        adj = {i: [k for k in self.neighbors[i] if k in members] for i in idx}
        start = idx[0]
        cyc = [start, adj[start][0]]
        while len(cyc) < len(idx):
            a, b = cyc[-2], cyc[-1]
            nxt = adj[b][0] if adj[b][0] != a else adj[b][1]
            cyc.append(nxt)
        pts = [self.vertices[i] for i in cyc]
        turn = cross(sub(pts[1], pts[0]), sub(pts[2], pts[1]))
        if dot(turn, self.facets[j].normal) > 0:  # inner normal: reverse for outside view
            cyc.reverse()
        return tuple(cyc)

    # invariants

    @cached_property
    def lattice_points(self) -> tuple:
        d = self.dim
        lo = tuple(min(v[c] for v in self.vertices) for c in range(d))
        hi = tuple(max(v[c] for v in self.vertices) for c in range(d))
        return tuple(kernels.lattice_points([f.normal for f in self.facets],
                                            [f.offset for f in self.facets], lo, hi))

    @property
    def num_points(self) -> int:
        return len(self.lattice_points)

    @property
    def f_vector(self) -> tuple:
        if self.dim == 2:
            return (len(self.vertices), len(self.edges))
        return (len(self.vertices), len(self.edges), len(self.facets))

    def contains(self, p: Sequence[int]) -> bool:
        return all(f.value(p) >= 0 for f in self.facets)

    def is_simple(self) -> bool:
        d = self.dim
        return all(len(n) == d for n in self.neighbors)

    def facet_polygon(self, j: int) -> "LatticePolytope":
        """Facet ``j`` as a 2-dimensional lattice polygon in lattice
        coordinates of its supporting plane."""
        from smoothpoly.lattice import complete_row, matvec

        if self.dim != 3:
            raise GeometryError("facet polygons exist for 3-polytopes only")
        m = complete_row(self.facets[j].normal)
        pts = [matvec(m, self.vertices[i])[:2] for i in self.facet_vertices[j]]
        return hull(pts)


def hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    """Convex hull of integer points; the points must span the ambient space."""
    pts = sorted(set(tuple(int(c) for c in p) for p in points))
    if not pts:
        raise GeometryError("hull of an empty point set")
    d = len(pts[0])
    if d not in (2, 3) or any(len(p) != d for p in pts):
        raise GeometryError("points must all be 2- or 3-dimensional")
    adim = affine_dimension(pts)
    if adim != d:
        raise GeometryError(f"points span an affine subspace of dimension {adim}, expected {d}")
    planes = kernels.facet_planes(pts, d)
    facets = [FacetInequality(tuple(n), h) for n, h in planes]
    verts = []
    for p in pts:
        normals = [f.normal for f in facets if f.value(p) == 0]
        if len(normals) >= d and rank(normals) == d:
            verts.append(p)
    return LatticePolytope.from_vertices_and_facets(verts, facets)


def lattice_points(p: LatticePolytope) -> list:
    return list(p.lattice_points)


def f_vector(p: LatticePolytope) -> tuple:
    return p.f_vector


def is_simple(p: LatticePolytope) -> bool:
    return p.is_simple()


def edge_lattice_length(p: LatticePolytope, edge: Sequence[int]) -> int:
    """Lattice length of the edge given by a pair of vertex indices or a
    pair of vertex coordinates."""
    a, b = edge
    if not isinstance(a, int):
        try:
            a, b = p.vertices.index(tuple(a)), p.vertices.index(tuple(b))
        except ValueError as exc:
            raise GeometryError("edge endpoints are not vertices") from exc
    key = (min(a, b), max(a, b))
    if key not in set(p.edges):
        raise GeometryError(f"{edge} is not an edge")
    try:
        return primitive(sub(p.vertices[b], p.vertices[a]))[1]
    except LatticeError as exc:
        raise GeometryError("degenerate edge") from exc
