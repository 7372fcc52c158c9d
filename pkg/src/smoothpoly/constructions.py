"""Simplices, Cayley polytopes, blow-ups along vertices and edges, blow-downs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from smoothpoly.fans import is_smooth, normal_fan
from smoothpoly.geometry import FacetInequality, GeometryError, LatticePolytope, hull
from smoothpoly.lattice import add, dot, primitive, solve_integral, sub


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class CayleyRecipe:
    """How a minimal polytope was built.

    ``variant`` is ``"simplex"`` (params ``(k,)``), ``"segments"`` (params
    ``(s, i, j, k)``) or ``"pair"`` (params ``(s, base_fan, P0 vertices,
    P1 vertices, t)``).
    """

    variant: str
    params: tuple

    def as_json(self) -> dict:
        if self.variant == "simplex":
            return {"type": "simplex", "k": self.params[0]}
        if self.variant == "segments":
            s, i, j, k = self.params
            return {"type": "segments", "s": s, "lengths": [i, j, k]}
        s, base, p0, p1, t = self.params
        return {"type": "pair", "s": s, "base_fan": base,
                "P0": [list(v) for v in p0], "P1": [list(v) for v in p1], "t": list(t)}


def k_delta(d: int, k: int) -> LatticePolytope:
    if d not in (2, 3) or k < 1:
        raise ConstructionError("need d in {2, 3} and k >= 1")
    pts = [(0,) * d] + [tuple(k if c == r else 0 for c in range(d)) for r in range(d)]
    return hull(pts)


def cayley_segments(s: int, i: int, j: int, k: int) -> LatticePolytope:
    if min(s, i, j, k) < 1:
        raise ConstructionError("all parameters must be positive")
    return hull([(0, 0, 0), (i, 0, 0), (0, s, 0), (j, s, 0), (0, 0, s), (k, 0, s)])


def segments_smooth(s: int, i: int, j: int, k: int) -> bool:
    return (j - i) % s == 0 and (k - i) % s == 0 and (k - j) % s == 0


def _matched_vertices(p0: LatticePolytope, p1: LatticePolytope) -> list:
    """Pairs of vertices of two polygons with the same normal cone."""
    def cones(p):
        return {frozenset(p.facets[j].normal for j in fs): p.vertices[i]
                for i, fs in enumerate(p.vertex_facets)}

    c0, c1 = cones(p0), cones(p1)
    if set(c0) != set(c1):
        raise ConstructionError("not strictly isomorphic")
    return [(c0[key], c1[key]) for key in sorted(c0, key=lambda s: sorted(s))]


def cayley_pair(p0: LatticePolytope, p1: LatticePolytope, s: int, t: Sequence[int]) -> LatticePolytope:
    if p0.dim != 2 or p1.dim != 2:
        raise ConstructionError("Cayley pair summands must be polygons")
    if normal_fan(p0) != normal_fan(p1):
        raise ConstructionError("not strictly isomorphic")
    if s < 1:
        raise ConstructionError("s must be positive")
    pts = [v + (0,) for v in p0.vertices] + [add(w, t) + (s,) for w in p1.vertices]
    return hull(pts)


def pair_smooth(p0: LatticePolytope, p1: LatticePolytope, s: int, t: Sequence[int]) -> bool:
    """Every connecting edge carries exactly ``s + 1`` lattice points."""
    pairs = _matched_vertices(p0, p1)
    return all(c % s == 0 for v0, v1 in pairs for c in sub(add(v1, t), v0))


# blow-ups

def _face_indices(p: LatticePolytope, face) -> tuple:
    idx = []
    for v in face:
        if isinstance(v, int):
            idx.append(v)
        else:
            try:
                idx.append(p.vertices.index(tuple(v)))
            except ValueError as exc:
                raise ConstructionError(f"{v} is not a vertex") from exc
    idx = tuple(sorted(set(idx)))
    if len(idx) == 2 and idx not in set(p.edges):
        raise ConstructionError(f"{face} is not an edge")
    if len(idx) not in (1, 2) or (len(idx) == 2 and p.dim == 2):
        raise ConstructionError("blow-ups are along vertices or (in 3-D) edges")
    return idx


def exceptional_inequality(p: LatticePolytope, face, k: int) -> FacetInequality:
    """``(sum of normals) . x >= (sum of offsets) + k`` over the facets
    containing ``face``."""
    idx = _face_indices(p, face)
    common = set(p.vertex_facets[idx[0]])
    for i in idx[1:]:
        common &= set(p.vertex_facets[i])
    normal = (0,) * p.dim
    offset = k
    for j in sorted(common):
        normal = add(normal, p.facets[j].normal)
        offset += p.facets[j].offset
    return FacetInequality(normal, offset)


def blow_up_face(p: LatticePolytope, face, k: int) -> LatticePolytope:
    """Cut ``face`` (vertex or edge, as indices or coordinates) at level ``k``."""
    if k < 1:
        raise ConstructionError("blow-up level must be positive")
    idx = _face_indices(p, face)
    cut = exceptional_inequality(p, idx, k)
    if primitive(cut.normal)[1] != 1:
        raise ConstructionError("invalid blow-up level: exceptional normal not primitive")
    inside = set(idx)
    for i, v in enumerate(p.vertices):
        if i not in inside and cut.value(v) <= 0:
            raise ConstructionError("invalid blow-up level")
    new_pts = []
    for a in idx:
        for b in p.neighbors[a]:
            if b in inside:
                continue
            u, length = primitive(sub(p.vertices[b], p.vertices[a]))
            step = dot(cut.normal, u)
            need = -cut.value(p.vertices[a])
            if step <= 0 or need % step or not 0 < need // step < length:
                raise ConstructionError("invalid blow-up level")
            t = need // step
            new_pts.append(tuple(x + t * y for x, y in zip(p.vertices[a], u)))
    verts = [v for i, v in enumerate(p.vertices) if i not in inside] + new_pts
    try:
        q = LatticePolytope.from_vertices_and_facets(verts, list(p.facets) + [cut])
    except GeometryError as exc:
        raise ConstructionError("invalid blow-up level") from exc
    expected = p.dim if len(idx) == 1 else 4
    if len(q.facets) != len(p.facets) + 1 or len(q.vertices) != len(p.vertices) + p.dim - 1 \
            or len(q.facet_vertices[q.facets.index(cut)]) != expected or not is_smooth(q):
        raise ConstructionError("invalid blow-up level")
    return q


def blowups(p: LatticePolytope, max_points: int | None = None) -> list:
    """All valid blow-ups of ``p`` along vertices and edges, as
    ``(face_indices, k, polytope)``; levels run upward until invalid.
    With ``max_points`` only results within that budget are kept."""
    faces = [(i,) for i in range(len(p.vertices))]
    if p.dim == 3:
        faces += list(p.edges)
    out = []
    for face in faces:
        k = 1
        while True:
            try:
                q = blow_up_face(p, face, k)
            except ConstructionError:
                break
            out.append((face, k, q))
            k += 1
    if max_points is not None:
        out = [x for x in out if x[2].num_points <= max_points]
    return out


@dataclass(frozen=True)
class BlowDown:
    polytope: LatticePolytope
    face: tuple  # vertex coordinates of the restored face
    level: int


def _facet_neighbours(p: LatticePolytope, j: int) -> list:
    """Facets adjacent to facet ``j`` in cyclic order."""
    cyc = p.facet_cycle(j)
    if p.dim == 2:
        return [next(g for g in p.vertex_facets[i] if g != j) for i in cyc]
    out = []
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        out.append(next(g for g in set(p.vertex_facets[a]) & set(p.vertex_facets[b]) if g != j))
    return out


def _meet(p: LatticePolytope, facets: Sequence[int]):
    rows = [p.facets[g].normal for g in facets]
    return solve_integral(rows, [p.facets[g].offset for g in facets])


def blow_down_info(p: LatticePolytope, j: int) -> BlowDown | None:
    g = p.facets[j]
    nbrs = _facet_neighbours(p, j)
    options = []
    if p.dim == 2 or len(nbrs) == 3:
        options.append((tuple(nbrs), []))
    elif len(nbrs) == 4:
        a, b, c, d = nbrs
        options += [((a, c), [b, d]), ((b, d), [a, c])]
    for core, sides in options:
        normal = (0,) * p.dim
        for x in core:
            normal = add(normal, p.facets[x].normal)
        if normal != g.normal:
            continue
        k = g.offset - sum(p.facets[x].offset for x in core)
        if k < 1:
            continue
        if sides:
            new = [_meet(p, list(core) + [x]) for x in sides]
        else:
            new = [_meet(p, core)]
        if any(x is None for x in new):
            continue
        kept = [v for i, v in enumerate(p.vertices) if i not in set(p.facet_vertices[j])]
        try:
            q = hull(kept + new)
        except GeometryError:
            continue
        if set(q.facets) != set(p.facets) - {g} or not is_smooth(q):
            continue
        try:
            back = blow_up_face(q, new, k)
        except ConstructionError:
            continue
        if back.vertices == p.vertices:
            return BlowDown(q, tuple(new), k)
    return None


def blow_down(p: LatticePolytope, j: int) -> LatticePolytope | None:
    info = blow_down_info(p, j)
    return info.polytope if info else None


def blow_downs(p: LatticePolytope) -> list:
    return [info for j in range(len(p.facets)) if (info := blow_down_info(p, j))]


def is_minimal(p: LatticePolytope) -> bool:
    return all(blow_down_info(p, j) is None for j in range(len(p.facets)))
