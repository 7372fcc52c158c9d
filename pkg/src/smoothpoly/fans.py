"""Complete rational fans in dimension 2 and 3: normal fans, unimodularity,
stellar subdivision and its inverse."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from smoothpoly.geometry import LatticePolytope
from smoothpoly.lattice import Vector, add, det, primitive, rank, solve_rational


class FanError(ValueError):
    pass


@dataclass(frozen=True)
class Cone:
    """Cone spanned by primitive generators, stored sorted. Normal cones at
    non-simple vertices carry more generators than their dimension."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(sorted(tuple(g) for g in self.generators))
        for g in gens:
            if primitive(g)[1] != 1:
                raise FanError(f"generator {g} is not primitive")
        object.__setattr__(self, "generators", gens)

    @cached_property
    def dim(self) -> int:
        return rank(self.generators)

    @property
    def is_simplicial(self) -> bool:
        return self.dim == len(self.generators)

    def is_unimodular(self) -> bool:
        """Generators extend to a lattice basis (full cones: |det| = 1)."""
        if not self.is_simplicial:
            return False
        gens = self.generators
        d = len(gens[0])
        if len(gens) == d:
            return abs(det(gens)) == 1
        # a set of k vectors extends to a basis iff the gcd of its k-minors is 1
        from math import gcd

        g = 0
        for cols in combinations(range(d), len(gens)):
            g = gcd(g, det([[v[c] for c in cols] for v in gens]))
        return g == 1

    def contains_interior(self, p: Sequence) -> bool:
        """True iff ``p`` lies in the relative interior (full cones only)."""
        coeffs = solve_rational([list(col) for col in zip(*self.generators)], list(p))
        return coeffs is not None and all(c > 0 for c in coeffs)


def cone(*gens: Sequence[int]) -> Cone:
    return Cone(tuple(tuple(g) for g in gens))


@dataclass(frozen=True)
class Fan:
    """Fan given by its maximal cones; rays are derived."""

    maximal_cones: tuple

    def __post_init__(self):
        cones = tuple(sorted(self.maximal_cones, key=lambda c: c.generators))
        object.__setattr__(self, "maximal_cones", cones)

    @classmethod
    def from_generators(cls, cones: Iterable[Iterable[Sequence[int]]]) -> "Fan":
        return cls(tuple(Cone(tuple(tuple(g) for g in c)) for c in cones))

    @cached_property
    def rays(self) -> tuple:
        return tuple(sorted({g for c in self.maximal_cones for g in c.generators}))

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def key(self) -> frozenset:
        return frozenset(c.generators for c in self.maximal_cones)

    def __eq__(self, other):
        return isinstance(other, Fan) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def star(self, gens: Iterable[Sequence[int]]) -> list:
        s = set(tuple(g) for g in gens)
        return [c for c in self.maximal_cones if s <= set(c.generators)]

    def is_complete(self) -> bool:
        """Every ridge of a maximal cone is shared by exactly two maximal
        cones and a set of fixed generic directions is each covered exactly
        once."""
        d = self.dim
        if not all(c.is_simplicial for c in self.maximal_cones):
            raise FanError("completeness is only checked for simplicial fans")
        if any(c.dim != d for c in self.maximal_cones):
            return False
        ridges: dict = {}
        for c in self.maximal_cones:
            for r in combinations(c.generators, d - 1):
                ridges[r] = ridges.get(r, 0) + 1
        if any(v != 2 for v in ridges.values()):
            return False
        for probe in _probes(d):
            hits = sum(1 for c in self.maximal_cones if c.contains_interior(probe))
            if hits != 1:
                return False
        return True


def _probes(d: int) -> list:
    base = [(Fraction(1), Fraction(1, 7)), (Fraction(-3, 11), Fraction(1, 13)),
            (Fraction(-1, 5), Fraction(-5, 17)), (Fraction(2, 19), Fraction(-1))]
    if d == 2:
        return base
    return [(x, y, z) for (x, y), z in zip(base + base, [Fraction(1, 23), Fraction(-1, 29)] * 4)]


def normal_fan(p: LatticePolytope) -> Fan:
    """One maximal cone per vertex, spanned by the inner normals of the
    facets through that vertex."""
    return Fan(tuple(Cone(tuple(p.facets[j].normal for j in fs)) for fs in p.vertex_facets))


def is_unimodular(f: Fan) -> bool:
    d = f.dim
    return all(c.dim == d and c.is_unimodular() for c in f.maximal_cones)


def is_smooth(p: LatticePolytope) -> bool:
    """Simple, with primitive edge directions forming a lattice basis at
    every vertex."""
    if not p.is_simple():
        return False
    return all(abs(det(p.edge_directions(i))) == 1 for i in range(len(p.vertices)))


def hirzebruch_fan(r: int) -> Fan:
    if r < 0:
        raise FanError("Hirzebruch parameter must be nonnegative")
    a, b, c, d = (1, 0), (0, 1), (-1, r), (0, -1)
    return Fan.from_generators([(a, b), (b, c), (c, d), (d, a)])


def projective_plane_fan() -> Fan:
    a, b, c = (1, 0), (0, -1), (-1, 1)
    return Fan.from_generators([(a, b), (b, c), (c, a)])


def stellar_subdivide(f: Fan, sigma: Cone) -> Fan:
    """Insert the ray through the sum of the generators of ``sigma``."""
    if not sigma.is_simplicial:
        raise FanError("cone generators are linearly dependent")
    if sigma.dim < 2:
        raise FanError("subdividing at a ray is a no-op")
    star = f.star(sigma.generators)
    if not star:
        raise FanError(f"{sigma.generators} is not a cone of the fan")
    p = primitive(_vsum(sigma.generators))[0]
    out = [c for c in f.maximal_cones if c not in star]
    for tau in star:
        for x in sigma.generators:
            out.append(Cone(tuple(p if g == x else g for g in tau.generators)))
    return Fan(tuple(out))


def _vsum(vs: Iterable[Sequence[int]]) -> Vector:
    it = iter(vs)
    acc = tuple(next(it))
    for v in it:
        acc = add(acc, v)
    return acc


def link_cycle(f: Fan, ray: Sequence[int]) -> list:
    """Rays adjacent to ``ray``, in cyclic order around it (3-D) or as the
    two neighbours (2-D)."""
    ray = tuple(ray)
    star = f.star([ray])
    if f.dim == 2:
        return [g for c in star for g in c.generators if g != ray]
    edges = [tuple(g for g in c.generators if g != ray) for c in star]
    adj: dict = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = min(adj)
    cyc = [start, min(adj[start])]
    while len(cyc) < len(adj):
        prev, cur = cyc[-2], cyc[-1]
        nxt = [x for x in adj[cur] if x != prev]
        cyc.append(nxt[0])
    return cyc


def blowdown_candidates(f: Fan) -> list:
    """Pairs ``(ray, sigma)`` such that removing ``ray`` and restoring
    ``sigma`` gives a complete unimodular fan whose stellar subdivision at
    ``sigma`` is ``f``."""
    out = []
    for ray in f.rays:
        link = link_cycle(f, ray)
        options = []
        if len(link) in (2, 3):
            options.append(tuple(link))
        elif len(link) == 4:
            options.extend([(link[0], link[2]), (link[1], link[3])])
        for gens in options:
            if _vsum(gens) != ray:
                continue
            coarse = _coarsen(f, ray, gens, link)
            if coarse is None:
                continue
            sigma = Cone(gens)
            if stellar_subdivide(coarse, sigma) == f:
                out.append((ray, sigma))
    return out


def _coarsen(f: Fan, ray, gens, link):
    try:
        if len(gens) == f.dim:
            new = [Cone(gens)]
        else:
            others = [x for x in link if x not in gens]
            new = [Cone(tuple(gens) + (o,)) for o in others]
    except FanError:
        return None
    kept = [c for c in f.maximal_cones if ray not in c.generators]
    coarse = Fan(tuple(kept + new))
    if not is_unimodular(coarse) or not coarse.is_complete():
        return None
    return coarse


def self_intersections(f: Fan) -> list:
    """For a 2-D complete unimodular fan, cyclically ordered rays ``u_i`` and
    integers ``a_i`` with ``u_{i-1} + u_{i+1} = a_i u_i``."""
    rays = _cyclic_rays_2d(f)
    n = len(rays)
    out = []
    for i in range(n):
        s = add(rays[i - 1], rays[(i + 1) % n])
        u = rays[i]
        a = s[0] // u[0] if u[0] else s[1] // u[1]
        out.append((u, a))
    return out


def _cyclic_rays_2d(f: Fan) -> list:
    adj: dict = {}
    for c in f.maximal_cones:
        a, b = c.generators
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = min(adj)
    cyc = [start, min(adj[start])]
    while len(cyc) < len(adj):
        prev, cur = cyc[-2], cyc[-1]
        cyc.append(next(x for x in adj[cur] if x != prev))
    return cyc


def surface_class(f: Fan) -> str:
    """Name of a smooth complete 2-D fan: ``P2``, ``F_r``, or a blow-up
    ``Bl_n(P2)`` / ``Bl_n(F_r)`` found by blowing down (-1)-rays."""
    n = len(f.rays)
    if n == 3:
        return "P2"
    if n == 4:
        r = max(abs(a) for _, a in self_intersections(f))
        return f"F_{r}"
    reached = _minimal_models(f)
    if "P2" in reached:
        return f"Bl_{n - 3}(P2)"
    r = min(int(name[2:]) for name in reached)
    return f"Bl_{n - 4}(F_{r})"


def _minimal_models(f: Fan) -> set:
    n = len(f.rays)
    if n == 3:
        return {"P2"}
    names = set()
    if n == 4:
        names.add(surface_class(f))
    for ray, sigma in blowdown_candidates(f):
        coarse = _coarsen(f, ray, sigma.generators, link_cycle(f, ray))
        names |= _minimal_models(coarse)
    return names
