"""Smooth lattice polygons with a bounded number of lattice points.

Minimal smooth polygons are the dilated triangles ``k * Delta_2`` and the
trapezoids over Hirzebruch fans. Every smooth polygon arises from one of them
by corner chops, and chops only lose points, so the classification is the
chop-closure of all minimal seeds up to a larger seed budget, which is raised
until the result stops changing.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

from smoothpoly.constructions import blowups, is_minimal, k_delta
from smoothpoly.fans import normal_fan, surface_class
from smoothpoly.geometry import LatticePolytope, hull
from smoothpoly.isomorphism import CanonicalForm, canonical_form

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolygonEntry:
    polytope: LatticePolytope
    canonical: CanonicalForm
    minimal: bool
    fan_class: str

    @property
    def num_points(self) -> int:
        return len(self.canonical)

    @property
    def num_vertices(self) -> int:
        return len(self.polytope.vertices)


def trapezoid(r: int, h: int, c: int) -> LatticePolytope:
    """Polygon with vertices (0,0), (c,0), (c+rh,h), (0,h); normal fan of F_r."""
    return hull([(0, 0), (c, 0), (c + r * h, h), (0, h)])


def trapezoid_points(r: int, h: int, c: int) -> int:
    return (h + 1) * (c + 1) + r * h * (h + 1) // 2


def minimal_seeds(budget: int) -> list:
    """Minimal smooth polygons with at most ``budget`` lattice points."""
    seeds = []
    k = 1
    while (k + 1) * (k + 2) // 2 <= budget:
        seeds.append(k_delta(2, k))
        k += 1
    for h in range(1, budget):
        for c in range(1, budget):
            if trapezoid_points(0, h, c) > budget:
                break
            r = 0
            while trapezoid_points(r, h, c) <= budget:
                if r > 0 or c >= h:  # F_0 rectangles up to swapping sides
                    seeds.append(trapezoid(r, h, c))
                r += 1
    return seeds


def chop_closure(seeds, max_points: int, keep_above: int) -> dict:
    """Canonical form -> polygon for all polygons reachable from ``seeds`` by
    chops, visiting everything with at most ``keep_above`` points."""
    seen: dict = {}
    stack = []
    for p in seeds:
        key = canonical_form(p)
        if key not in seen:
            seen[key] = p
            stack.append(p)
    while stack:
        p = stack.pop()
        for _, _, q in blowups(p, keep_above):
            key = canonical_form(q)
            if key not in seen:
                seen[key] = q
                stack.append(q)
    return {k: v for k, v in seen.items() if len(k) <= max_points}


@lru_cache(maxsize=None)
def enumerate_smooth_polygons(max_points: int, seed_budget: int | None = None) -> tuple:
    """All smooth polygons with at most ``max_points`` points, one per
    isomorphism class, sorted by point count and canonical form.

    Without ``seed_budget`` the budget starts at ``max_points + 8`` and grows
    by 4 until two consecutive budgets agree.
    """
    if max_points < 3:
        return ()
    if seed_budget is not None:
        found = chop_closure(minimal_seeds(seed_budget), max_points, seed_budget)
    else:
        budget = max_points + 8
        found = chop_closure(minimal_seeds(budget), max_points, budget)
        while True:
            budget += 4
            bigger = chop_closure(minimal_seeds(budget), max_points, budget)
            if bigger.keys() == found.keys():
                break
            log.info("seed budget %d added %d polygons", budget, len(bigger) - len(found))
            found = bigger
    entries = []
    for key in sorted(found, key=lambda k: (len(k), k)):
        p = hull(key.points)
        entries.append(PolygonEntry(p, key, is_minimal(p), surface_class(normal_fan(p))))
    return tuple(entries)
