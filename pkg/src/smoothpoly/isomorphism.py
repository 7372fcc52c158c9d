"""Canonical forms and isomorphism tests for smooth lattice polytopes.

A smooth vertex with its ordered edge directions is a lattice frame; the
canonical form is the lexicographically least sorted lattice-point set over
every such frame.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from smoothpoly import kernels
from smoothpoly.geometry import FacetInequality, LatticePolytope
from smoothpoly.lattice import UnimodularAffineMap, det, matvec, transpose


class NotSmoothError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CanonicalForm:
    points: tuple

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __len__(self):
        return len(self.points)


def _vertex_index(p: LatticePolytope, v) -> int:
    if isinstance(v, int):
        return v
    try:
        return p.vertices.index(tuple(v))
    except ValueError as exc:
        raise ValueError(f"{v} is not a vertex") from exc


def vertex_frames(p: LatticePolytope, v) -> list:
    """The ``d!`` maps sending vertex ``v`` to the origin and its ordered
    edge directions to the standard basis."""
    i = _vertex_index(p, v)
    dirs = p.edge_directions(i)
    if len(dirs) != p.dim or abs(det(dirs)) != 1:
        raise NotSmoothError(f"polytope is not smooth at vertex {p.vertices[i]}")
    base = UnimodularAffineMap.from_frame(p.vertices[i], dirs)
    out = []
    for perm in permutations(range(p.dim)):
        m = tuple(base.matrix[k] for k in perm)
        t = tuple(base.translation[k] for k in perm)
        out.append(UnimodularAffineMap(m, t))
    return out


def transform(p: LatticePolytope, m: UnimodularAffineMap) -> LatticePolytope:
    """Image of ``p`` under ``m``, transporting the facet inequalities."""
    inv_t = transpose(m.inverse().matrix)
    facets = []
    for f in p.facets:
        n = matvec(inv_t, f.normal)
        facets.append(FacetInequality(n, f.offset + sum(a * b for a, b in zip(n, m.translation))))
    return LatticePolytope.from_vertices_and_facets([m(v) for v in p.vertices], facets)


def corner_normalizations(p: LatticePolytope, v) -> list:
    return [transform(p, m) for m in vertex_frames(p, v)]


@lru_cache(maxsize=8192)
def _all_frames(p: LatticePolytope) -> tuple:
    return tuple(m for i in range(len(p.vertices)) for m in vertex_frames(p, i))


@lru_cache(maxsize=8192)
def canonical_with_witness(p: LatticePolytope) -> tuple:
    """``(CanonicalForm, map)`` where the map sends ``p`` onto the form."""
    frames = _all_frames(p)
    idx, image = kernels.min_image(list(p.lattice_points),
                                   [(m.matrix, m.translation) for m in frames])
    return CanonicalForm(image), frames[idx]


def canonical_form(p: LatticePolytope) -> CanonicalForm:
    return canonical_with_witness(p)[0]


def are_isomorphic(p: LatticePolytope, q: LatticePolytope) -> bool:
    if p.dim != q.dim:
        return False
    if len(p.vertices) != len(q.vertices) or p.num_points != q.num_points:
        return False
    return canonical_form(p) == canonical_form(q)


def isomorphism(p: LatticePolytope, q: LatticePolytope) -> UnimodularAffineMap | None:
    """A lattice isomorphism sending ``p`` onto ``q``, or None."""
    if not are_isomorphic(p, q):
        return None
    _, mp = canonical_with_witness(p)
    _, mq = canonical_with_witness(q)
    return mp.then(mq.inverse())


def distinct_corner_images(p: LatticePolytope) -> int:
    """Number of distinct polytopes among all corner normalizations."""
    return len({tuple(transform(p, m).vertices) for m in _all_frames(p)})

