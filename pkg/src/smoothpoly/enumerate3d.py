"""Classification of smooth lattice 3-polytopes with a bounded number of
lattice points.

Every such polytope with at most 16 points is a dilated simplex, a strict
Cayley polytope of three segments or of two polygons, or is reached from one
of those by successive blow-ups. The first three families are enumerated
directly; the last one is the blow-up closure of all of them, seeded also by
strict Cayley polytopes slightly above the point budget.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from smoothpoly.constructions import (
    CayleyRecipe,
    ConstructionError,
    blow_up_face,
    blow_downs,
    blowups,
    cayley_pair,
    cayley_segments,
    is_minimal,
    k_delta,
    pair_smooth,
    segments_smooth,
)
from smoothpoly.enumerate2d import enumerate_smooth_polygons
from smoothpoly.fans import is_smooth, normal_fan, surface_class
from smoothpoly.geometry import LatticePolytope, hull
from smoothpoly.isomorphism import CanonicalForm, canonical_form, transform, vertex_frames
from smoothpoly.labels import (
    TriangulationLabel,
    facet_point_lower_bound,
    is_realizable,
    label,
    predicted_blowup_label,
)
from smoothpoly.lattice import UnimodularAffineMap, matmul, unimodular_inverse

log = logging.getLogger(__name__)

MINIMAL_LABELS = frozenset(TriangulationLabel.parse(t) for t in
                           ("3^4", "3^2 4^3", "4^6", "4^5 5^2", "4^6 6^2"))
MAX_FACETS = 8
MAX_VERTICES = 12


@dataclass(frozen=True)
class Candidate:
    """A polytope produced by one of the constructions."""

    polytope: LatticePolytope
    category: str
    recipe: dict
    base_class: str | None = None

    @property
    def canonical(self) -> CanonicalForm:
        return canonical_form(self.polytope)


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    polytope: LatticePolytope
    canonical: CanonicalForm
    category: str
    recipe: dict
    num_points: int
    f_vector: tuple
    label: TriangulationLabel
    minimal: bool
    parent: str | None
    fiber_description: str

    @property
    def embedding_dim(self) -> int:
        return self.num_points - 1


@dataclass
class Catalog:
    entries: list
    max_points: int
    dim: int = 3
    stats: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def by_id(self, entry_id: str) -> CatalogEntry:
        for e in self.entries:
            if e.id == entry_id:
                return e
        raise KeyError(entry_id)

    def tallies(self) -> dict:
        out: dict = {}
        for e in self.entries:
            out[e.category] = out.get(e.category, 0) + 1
        return out


# category i

def enumerate_category_i(max_points: int = 16) -> list:
    out = []
    k = 1
    while (k + 1) * (k + 2) * (k + 3) // 6 <= max_points:
        out.append(Candidate(k_delta(3, k), "simplex", CayleyRecipe("simplex", (k,)).as_json()))
        k += 1
    return out


# category ii

def segment_parameters(max_points: int) -> list:
    """Smooth parameter tuples ``(s, i, j, k)``, ``i >= j >= k``, whose
    segment Cayley polytope has at most ``max_points`` points."""
    def pts(s, i, j, k):
        return cayley_segments(s, i, j, k).num_points

    out = []
    s = 1
    while pts(s, 1, 1, 1) <= max_points:
        k = 1
        while pts(s, k, k, k) <= max_points:
            j = k
            while pts(s, j, j, k) <= max_points:
                i = j
                while pts(s, i, j, k) <= max_points:
                    if segments_smooth(s, i, j, k):
                        out.append((s, i, j, k))
                    i += 1
                j += 1
            k += 1
        s += 1
    return out


def enumerate_category_ii(max_points: int = 16) -> list:
    return _dedup([Candidate(cayley_segments(*prm), "cayley_segments",
                             CayleyRecipe("segments", prm).as_json())
                   for prm in segment_parameters(max_points)])


# category iii

def _linear_part(m: UnimodularAffineMap) -> tuple:
    return m.matrix


def fan_aligned_copies(p0: LatticePolytope, q: LatticePolytope) -> list:
    """Distinct images of ``q`` under linear lattice maps that carry its
    normal fan onto that of ``p0``, translated to put the least vertex at 0."""
    if len(q.vertices) != len(p0.vertices):
        return []
    fan0 = normal_fan(p0)
    target = unimodular_inverse(_linear_part(vertex_frames(p0, 0)[0]))
    out = {}
    for w in range(len(q.vertices)):
        for frame in vertex_frames(q, w):
            a = matmul(target, _linear_part(frame))
            img = transform(q, UnimodularAffineMap(a, (0, 0)))
            if normal_fan(img) != fan0:
                continue
            shift = tuple(-c for c in img.vertices[0])
            img = transform(img, UnimodularAffineMap(((1, 0), (0, 1)), shift))
            out.setdefault(img.vertices, img)
    return [out[k] for k in sorted(out)]


def _pair_translation(p0: LatticePolytope, p1: LatticePolytope, s: int) -> tuple:
    from smoothpoly.constructions import _matched_vertices

    v0, v1 = _matched_vertices(p0, p1)[0]
    return tuple((a - b) % s for a, b in zip(v0, v1))


def pair_candidates(max_points: int, max_facets: int | None = None) -> list:
    """Smooth ``Cay^s(P0, P1)`` with at most ``max_points`` points.

    ``P0`` runs over polygon classes and ``P1`` over every polygon with the
    same normal fan. A shear ``(x, h) -> (x + h w, h)`` shows the relative
    translation only matters modulo ``s``, and smoothness fixes it there."""
    polys = [e.polytope for e in enumerate_smooth_polygons(max(3, max_points - 3))]
    out = []
    for p0 in polys:
        n0 = p0.num_points
        if n0 + 3 > max_points or (max_facets and len(p0.vertices) + 2 > max_facets):
            continue
        base = surface_class(normal_fan(p0))
        partners = []
        for q in polys:
            if n0 + q.num_points <= max_points:
                partners.extend(fan_aligned_copies(p0, q))
        for p1 in partners:
            s = 1
            # every connecting edge adds s - 1 interior points
            while n0 + p1.num_points + len(p0.vertices) * (s - 1) <= max_points:
                t = _pair_translation(p0, p1, s)
                if pair_smooth(p0, p1, s, t):
                    p = cayley_pair(p0, p1, s, t)
                    if p.num_points <= max_points:
                        recipe = CayleyRecipe("pair", (s, base, p0.vertices, p1.vertices, t)).as_json()
                        out.append(Candidate(p, "cayley_pair", recipe, base))
                s += 1
    return out


def enumerate_category_iii(max_points: int = 16) -> list:
    return _dedup(pair_candidates(max_points))


def category_iii_breakdown(max_points: int = 16) -> dict:
    """Distinct polytopes per base fan class."""
    groups: dict = {}
    for c in pair_candidates(max_points):
        groups.setdefault(c.base_class, {}).setdefault(c.canonical, c)
    return {k: len(v) for k, v in sorted(groups.items())}


def _dedup(cands: Iterable[Candidate]) -> list:
    seen: dict = {}
    for c in cands:
        seen.setdefault(c.canonical, c)
    return [seen[k] for k in sorted(seen, key=lambda k: (len(k), k))]


# category iv

@dataclass(frozen=True)
class Trace:
    root: Candidate
    steps: tuple  # ((face vertex coordinates, level), ...)
    parent: LatticePolytope | None


def cayley_seeds(max_points: int, seed_budget: int) -> list:
    """Strict Cayley polytopes (and simplices) up to ``seed_budget`` points;
    those above ``max_points`` need a blow-up to enter the budget, so they
    must have fewer than the maximal number of facets."""
    cands = (enumerate_category_i(seed_budget) + enumerate_category_ii(seed_budget)
             + _dedup(pair_candidates(seed_budget, MAX_FACETS - 1)))
    out = [c for c in cands
           if c.polytope.num_points <= max_points or len(c.polytope.facets) < MAX_FACETS]
    return _dedup(out)


@lru_cache(maxsize=None)
def _label_bound(lab: TriangulationLabel) -> int:
    if not is_realizable(lab):
        return 10 ** 9
    return facet_point_lower_bound(lab)


def blowup_closure(seeds: list, max_points: int, prune: bool = True) -> dict:
    """Canonical form -> (polytope, trace) for everything reachable from
    ``seeds`` by blow-ups. Nodes above ``max_points`` are still expanded.

    With ``prune`` a blow-up is skipped when its label, known in advance,
    has more than the maximal number of facets or, at exactly that many,
    forces more than ``max_points`` points."""
    seen: dict = {}
    queue = []
    for c in seeds:
        key = c.canonical
        if key not in seen:
            seen[key] = (c.polytope, Trace(c, (), None))
            queue.append(key)
    head = 0
    while head < len(queue):
        key = queue[head]
        head += 1
        p, trace = seen[key]
        faces = [(i,) for i in range(len(p.vertices))] + list(p.edges)
        for face in faces:
            if prune:
                lab = predicted_blowup_label(p, face)
                if lab.num_facets > MAX_FACETS:
                    continue
                if lab.num_facets == MAX_FACETS and _label_bound(lab) > max_points:
                    continue
            k = 1
            while True:
                try:
                    q = blow_up_face(p, face, k)
                except ConstructionError:
                    break
                k += 1
                qk = canonical_form(q)
                if qk in seen:
                    continue
                coords = tuple(p.vertices[i] for i in face)
                seen[qk] = (q, Trace(trace.root, trace.steps + ((coords, k - 1),), p))
                queue.append(qk)
    return seen


def enumerate_category_iv(known: Iterable[Candidate], max_points: int = 16,
                          seed_budget: int | None = None, prune: bool = True) -> list:
    """Blow-ups within budget that are not isomorphic to a known polytope.

    Returns ``(candidate, trace)`` pairs."""
    budget = seed_budget or max_points + 8
    known = list(known)
    known_keys = {c.canonical for c in known}
    seeds = _dedup(known + cayley_seeds(max_points, budget))
    closure = blowup_closure(seeds, max_points, prune)
    out = []
    for key in sorted(closure, key=lambda k: (len(k), k)):
        if len(key) > max_points or key in known_keys:
            continue
        p, trace = closure[key]
        recipe = {"type": "blowup", "root": trace.root.recipe,
                  "steps": [{"face": [list(v) for v in face], "level": lvl}
                            for face, lvl in trace.steps]}
        out.append((Candidate(p, "blowup", recipe), trace))
    return out


# assembling the catalog

def fiber_description(recipe: dict) -> str:
    kind = recipe["type"]
    if kind == "simplex":
        return "P3"
    if kind == "segments":
        return "P2-bundle over P1"
    if kind == "pair":
        return f"P1-bundle over {recipe['base_fan']}"
    steps = recipe["steps"]
    points = sum(1 for s in steps if len(s["face"]) == 1)
    curves = len(steps) - points
    parts = []
    if points:
        parts.append(f"{points} point" + ("s" if points > 1 else ""))
    if curves:
        parts.append(f"{curves} curve" + ("s" if curves > 1 else ""))
    return f"{fiber_description(recipe['root'])} blown up at {' and '.join(parts)}"


def classify_all(max_points: int = 16, seed_budget: int | None = None,
                 prune: bool = True) -> Catalog:
    """All smooth 3-polytopes with at most ``max_points`` lattice points."""
    cat_i = enumerate_category_i(max_points)
    cat_ii = enumerate_category_ii(max_points)
    iii_raw = pair_candidates(max_points)
    cat_iii = _dedup(iii_raw)
    merged: dict = {}
    for c in cat_i + cat_ii + cat_iii:
        merged.setdefault(c.canonical, c)
    cat_iv = enumerate_category_iv(merged.values(), max_points, seed_budget, prune)
    parents = {}
    for c, trace in cat_iv:
        merged[c.canonical] = c
        if trace.parent is not None:
            parents[c.canonical] = canonical_form(trace.parent)

    keys = sorted(merged, key=lambda k: (len(k), k))
    ids = {}
    counter: dict = {}
    for k in keys:
        n = len(k)
        counter[n] = counter.get(n, 0) + 1
        ids[k] = f"smooth3-{n:02d}-{counter[n]:02d}"
    entries = []
    for k in keys:
        c = merged[k]
        p = hull(k.points)
        entries.append(CatalogEntry(
            id=ids[k], polytope=p, canonical=k, category=c.category, recipe=c.recipe,
            num_points=len(k), f_vector=p.f_vector, label=label(p), minimal=is_minimal(p),
            parent=ids.get(parents.get(k)), fiber_description=fiber_description(c.recipe)))

    ii_keys = {c.canonical for c in cat_ii}
    stats = {
        "category_i": len(cat_i),
        "category_ii": len(cat_ii),
        "category_ii_s1_parameters": sum(1 for prm in segment_parameters(max_points) if prm[0] == 1),
        "category_iii": len(cat_iii),
        "category_iii_in_ii": sum(1 for c in cat_iii if c.canonical in ii_keys),
        "category_iv": len(cat_iv),
        "category_iii_by_base": _breakdown(iii_raw),
        "category_iii_duplicates": duplicate_graph(iii_raw),
    }
    return Catalog(entries, max_points, 3, stats)


def _breakdown(cands: list) -> dict:
    groups: dict = {}
    for c in cands:
        groups.setdefault(c.base_class, set()).add(c.canonical)
    return {k: len(v) for k, v in sorted(groups.items())}


def duplicate_graph(cands: list) -> list:
    """Pairs of base fan classes sharing a polytope, with multiplicities,
    plus how many polytopes of each class are prisms ``P x [0, s]``."""
    owners: dict = {}
    for c in cands:
        owners.setdefault(c.canonical, set()).add(c.base_class)
    edges: dict = {}
    for classes in owners.values():
        cl = sorted(classes)
        for a in range(len(cl)):
            for b in range(a + 1, len(cl)):
                edges[(cl[a], cl[b])] = edges.get((cl[a], cl[b]), 0) + 1
    return [[a, b, n] for (a, b), n in sorted(edges.items())]


def prism_count(cands: list, base: str) -> int:
    """Polytopes over ``base`` that are also Cayley polytopes over another
    base fan class."""
    owners: dict = {}
    for c in cands:
        owners.setdefault(c.canonical, set()).add(c.base_class)
    return sum(1 for classes in owners.values() if base in classes and len(classes) > 1)


# verification

@dataclass
class Report:
    violations: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    def fail(self, entry_id: str, check: str, detail: str = "") -> None:
        self.violations.append((entry_id, check, detail))

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list:
        out = []
        for check, n in self.checks.items():
            bad = [v for v in self.violations if v[1] == check]
            out.append(f"{check}: {'ok' if not bad else 'FAIL'} ({n} checked, {len(bad)} violations)")
        for eid, check, detail in self.violations:
            out.append(f"  {eid}: {check} {detail}".rstrip())
        return out


def verify_catalog(entries: list, max_points: int = 16) -> Report:
    """Check every entry against the structural facts of the classification
    and check closure of the set under blow-ups and blow-downs."""
    rep = Report()
    keys = {}
    for e in entries:
        keys.setdefault(canonical_form(e.polytope) if is_smooth(e.polytope) else None, e.id)
    checks = ["smooth", "point budget", "facet and vertex bounds", "simple f-vector",
              "smooth facets", "minimal label", "distinct", "blow-up closure", "blow-down closure"]
    rep.checks = {c: len(entries) for c in checks}
    seen = set()
    for e in entries:
        p = e.polytope
        smooth = is_smooth(p)
        if not smooth:
            rep.fail(e.id, "smooth")
        if p.num_points > max_points:
            rep.fail(e.id, "point budget", f"{p.num_points} points")
        v, ed, f = p.f_vector
        if f > MAX_FACETS or v > MAX_VERTICES:
            rep.fail(e.id, "facet and vertex bounds", f"f-vector {p.f_vector}")
        if 2 * ed != 3 * v or 2 * f != 4 + v:
            rep.fail(e.id, "simple f-vector", f"f-vector {p.f_vector}")
        if not all(is_smooth(p.facet_polygon(j)) for j in range(len(p.facets))):
            rep.fail(e.id, "smooth facets")
        if not smooth:
            continue
        key = canonical_form(p)
        if key in seen:
            rep.fail(e.id, "distinct")
        seen.add(key)
        if is_minimal(p) and label(p) not in MINIMAL_LABELS:
            rep.fail(e.id, "minimal label", label(p).render())
        for face, k, q in blowups(p, max_points):
            if canonical_form(q) not in keys:
                rep.fail(e.id, "blow-up closure", f"level {k} at {[p.vertices[i] for i in face]}")
        for bd in blow_downs(p):
            q = bd.polytope
            if q.num_points <= max_points and canonical_form(q) not in keys:
                rep.fail(e.id, "blow-down closure")
    return rep


def minimality_graph(entries: list) -> list:
    """``(child id, parent id)`` for every blow-down that stays in the catalog."""
    keys = {canonical_form(e.polytope): e.id for e in entries}
    out = []
    for e in entries:
        for bd in blow_downs(e.polytope):
            pid = keys.get(canonical_form(bd.polytope))
            if pid is not None:
                out.append((e.id, pid))
    return sorted(set(out))
