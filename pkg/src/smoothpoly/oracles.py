"""Slow independent re-computations used to cross-check the main algorithms."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations, permutations
from math import gcd

import networkx as nx

from smoothpoly.geometry import LatticePolytope, hull
from smoothpoly.lattice import det, rank, solve_rational, sub


# smooth polygons by exhaustive boundary walks

def _half(v) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_less(u, w) -> bool:
    """Strict counterclockwise angle order starting from direction (1, 0)."""
    hu, hw = _half(u), _half(w)
    if hu != hw:
        return hu < hw
    return u[0] * w[1] - u[1] * w[0] > 0


def box_polygons(box: int, max_points: int) -> list:
    """All smooth polygons with at most ``max_points`` lattice points that
    have a vertex at the origin with edges along both positive axes and lie
    in ``[0, box]^2``, as vertex lists.

    The boundary is walked counterclockwise from the origin, starting along
    (1, 0) and returning along (0, -1); consecutive edge directions must have
    determinant 1, which is smoothness at every vertex.
    """
    down = (0, -1)
    dirs = [(a, b) for a in range(-box, box + 1) for b in range(-box, box + 1)
            if (a, b) != (0, 0) and gcd(a, b) == 1]
    out = []
    turns: dict = {}

    def walk(pos, u, verts, boundary):
        if u not in turns:
            turns[u] = [w for w in dirs if u[0] * w[1] - u[1] * w[0] == 1 and _angle_less(u, w)]
        for w in turns[u]:
            if w == down:
                if pos[0] == 0 and pos[1] > 0 and boundary + pos[1] - 1 <= max_points:
                    out.append(list(verts))
                continue
            if not _angle_less(w, down):
                continue
            ell = 1
            while True:
                q = (pos[0] + ell * w[0], pos[1] + ell * w[1])
                if not (0 <= q[0] <= box and 0 <= q[1] <= box) or boundary + ell > max_points:
                    break
                verts.append(q)
                walk(q, w, verts, boundary + ell)
                verts.pop()
                ell += 1

    for ell in range(1, box + 1):
        walk((ell, 0), (1, 0), [(0, 0), (ell, 0)], ell + 1)
    result = []
    for verts in out:
        p = hull(verts)
        if p.num_points <= max_points:
            result.append(p)
    return result


def polygon_key(p: LatticePolytope) -> tuple:
    """Complete invariant of a smooth polygon: the cyclic sequence of
    (edge length, a_i) with ``u_{i-1} + u_{i+1} = a_i u_i``, minimized over
    rotations and reversal."""
    cyc = _ccw_vertices(p)
    n = len(cyc)
    dirs, lens = [], []
    for i in range(n):
        d = sub(cyc[(i + 1) % n], cyc[i])
        g = gcd(*d)
        dirs.append((d[0] // g, d[1] // g))
        lens.append(g)
    seq = []
    for i in range(n):
        s = (dirs[i - 1][0] + dirs[(i + 1) % n][0], dirs[i - 1][1] + dirs[(i + 1) % n][1])
        u = dirs[i]
        a = s[0] // u[0] if u[0] else s[1] // u[1]
        seq.append((lens[i], a))
    cands = []
    for s in (seq, seq[::-1]):
        for r in range(n):
            cands.append(tuple(s[r:] + s[:r]))
    return min(cands)


def _ccw_vertices(p: LatticePolytope) -> list:
    verts = list(p.vertices)
    c = (Fraction(sum(v[0] for v in verts), len(verts)), Fraction(sum(v[1] for v in verts), len(verts)))

    def cmp(v, w):
        a, b = (v[0] - c[0], v[1] - c[1]), (w[0] - c[0], w[1] - c[1])
        return -1 if _angle_less(a, b) else 1

    return sorted(verts, key=cmp_to_key(cmp))


def polygon_classes(box: int, max_points: int) -> dict:
    """``polygon_key -> polygon`` over the box search."""
    out = {}
    for p in box_polygons(box, max_points):
        out.setdefault(polygon_key(p), p)
    return out


# isomorphism by vertex matching

def _invariants(p: LatticePolytope) -> tuple:
    return (p.dim, len(p.vertices), p.num_points, p.f_vector)


def brute_force_isomorphic(p: LatticePolytope, q: LatticePolytope) -> bool:
    """Search for an integral unimodular affine map sending the vertices of
    ``p`` onto those of ``q`` by trying every image of an affine basis."""
    if _invariants(p) != _invariants(q):
        return False
    d = p.dim
    basis = _affine_basis(p.vertices)
    qverts = set(q.vertices)
    src = [sub(p.vertices[i], p.vertices[basis[0]]) for i in basis[1:]]
    for images in permutations(q.vertices, d + 1):
        dst = [sub(x, images[0]) for x in images[1:]]
        if abs(det(dst)) != abs(det(src)):
            continue
        m = _solve_linear_map(src, dst)
        if m is None:
            continue
        if any(c.denominator != 1 for row in m for c in row):
            continue
        mi = [[int(c) for c in row] for row in m]
        if abs(det(mi)) != 1:
            continue
        o, o2 = p.vertices[basis[0]], images[0]

        def f(v):
            w = sub(v, o)
            return tuple(sum(mi[r][c] * w[c] for c in range(d)) + o2[r] for r in range(d))

        if {f(v) for v in p.vertices} == qverts:
            return True
    return False


def _affine_basis(points) -> list:
    chosen = [0]
    for i in range(1, len(points)):
        trial = chosen + [i]
        if rank([sub(points[j], points[chosen[0]]) for j in trial[1:]]) == len(trial) - 1:
            chosen = trial
        if len(chosen) == len(points[0]) + 1:
            break
    return chosen


def _solve_linear_map(src, dst):
    """Matrix ``m`` with ``m @ src[k] = dst[k]`` for all k, over Q."""
    d = len(src)
    rows = []
    for r in range(d):
        x = solve_rational(src, [dst[k][r] for k in range(d)])
        if x is None:
            return None
        rows.append(x)
    return rows


# sphere triangulations through edge flips

def _triangulation_graph(n: int) -> nx.Graph:
    """A triangulation with ``n`` vertices: a double pyramid over an (n-2)-gon."""
    g = nx.cycle_graph(n - 2)
    for apex in (n - 2, n - 1):
        g.add_edges_from((apex, i) for i in range(n - 2))
    if n == 4:
        g = nx.complete_graph(4)
    return g


def flip_graph_triangulations(n: int) -> list:
    """Maximal planar graphs on ``n`` vertices up to isomorphism, found by
    breadth-first search over diagonal flips. Uses only graph operations and
    planarity tests."""
    start = _triangulation_graph(n)
    found = [start]
    buckets = {nx.weisfeiler_lehman_graph_hash(start): [start]}
    frontier = [start]
    target_edges = 3 * n - 6
    while frontier:
        nxt = []
        for g in frontier:
            for a, b in list(g.edges()):
                common = sorted(set(g[a]) & set(g[b]))
                for c, d in combinations(common, 2):
                    if g.has_edge(c, d):
                        continue
                    h = g.copy()
                    h.remove_edge(a, b)
                    h.add_edge(c, d)
                    if h.number_of_edges() != target_edges or not nx.check_planarity(h)[0]:
                        continue
                    key = nx.weisfeiler_lehman_graph_hash(h)
                    bucket = buckets.setdefault(key, [])
                    if any(nx.is_isomorphic(h, x) for x in bucket):
                        continue
                    bucket.append(h)
                    found.append(h)
                    nxt.append(h)
        frontier = nxt
    return found


def degree_labels(graphs) -> Counter:
    from smoothpoly.labels import TriangulationLabel

    return Counter(TriangulationLabel.from_sizes(d for _, d in g.degree()) for g in graphs)


# degree-2 binomials of a point configuration

def quadric_binomials(config) -> list:
    """All binomials ``x_a x_b - x_c x_d`` with ``a_a + a_b = a_c + a_d``,
    as pairs of sorted index pairs, by direct search over point sums."""
    n = len(config)
    by_sum: dict = {}
    for i in range(n):
        for j in range(i, n):
            s = tuple(x + y for x, y in zip(config[i], config[j]))
            by_sum.setdefault(s, []).append((i, j))
    return [(a, b) for monos in by_sum.values() for a, b in combinations(monos, 2)]


def quadric_space_dimension(config) -> int:
    """Dimension of the degree-2 part of the toric ideal: number of degree-2
    monomials minus the number of distinct point sums they hit."""
    n = len(config)
    sums = {tuple(x + y for x, y in zip(config[i], config[j])) for i in range(n) for j in range(i, n)}
    return n * (n + 1) // 2 - len(sums)


def kernel_binomials(config, max_degree: int) -> list:
    """Binomials ``x^u - x^v`` of degree at most ``max_degree`` with disjoint
    supports in the toric ideal, by enumerating exponent vectors."""
    n = len(config)
    by_image: dict = {}
    for deg in range(1, max_degree + 1):
        for combo in _compositions(n, deg):
            img = tuple(sum(c * p[k] for c, p in zip(combo, config)) for k in range(len(config[0])))
            by_image.setdefault(img, []).append(combo)
    out = []
    for monos in by_image.values():
        for u, v in combinations(monos, 2):
            if all(a == 0 or b == 0 for a, b in zip(u, v)):
                out.append((u, v))
    return out


def _compositions(n: int, total: int):
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(n - 1, total - first):
            yield (first,) + rest
