"""Toric ideals of lattice point configurations and Gröbner bases of
binomial ideals.

A binomial ``x^u - x^v`` is stored as the pair ``(u, v)`` of exponent
tuples, oriented so that ``u`` is the leading monomial. Monomial orders are
weight matrices compared row by row.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Sequence

from smoothpoly import kernels
from smoothpoly.geometry import LatticePolytope

DEGREE_CAP = 20
SIZE_CAP = 10000


class ResourceCapError(RuntimeError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    """Total monomial order given by a weight matrix on ``nvars`` variables."""

    name: str
    weights: tuple

    @property
    def nvars(self) -> int:
        return len(self.weights[0])

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        for w in self.weights:
            s = sum(wi * (x - y) for wi, x, y in zip(w, a, b))
            if s:
                return 1 if s > 0 else -1
        return 0

    def orient(self, a: tuple, b: tuple) -> tuple:
        return (a, b) if self.compare(a, b) >= 0 else (b, a)


def _unit(n: int, i: int, scale: int = 1) -> tuple:
    return tuple(scale if k == i else 0 for k in range(n))


def lex(n: int, perm: Sequence[int] | None = None) -> MonomialOrder:
    """Lexicographic order with ``x_perm[0] > x_perm[1] > ...``."""
    perm = list(range(n)) if perm is None else list(perm)
    return MonomialOrder("lex", tuple(_unit(n, i) for i in perm))


def degrevlex(n: int, perm: Sequence[int] | None = None) -> MonomialOrder:
    perm = list(range(n)) if perm is None else list(perm)
    rows = [(1,) * n] + [_unit(n, i, -1) for i in reversed(perm[1:])]
    return MonomialOrder("degrevlex", tuple(rows))


def elimination(n_elim: int, inner: MonomialOrder) -> MonomialOrder:
    """Block order: degrevlex on the first ``n_elim`` variables, then
    ``inner`` on the rest. Any monomial involving the first block beats
    every monomial free of it."""
    n = n_elim + inner.nvars
    rows = [(1,) * n_elim + (0,) * inner.nvars]
    rows += [_unit(n, i, -1) for i in reversed(range(1, n_elim))]
    rows += [(0,) * n_elim + tuple(w) for w in inner.weights]
    return MonomialOrder(f"elim({inner.name})", tuple(rows))


def degree(m: Sequence[int]) -> int:
    return sum(m)


def _mask(a: Sequence[int]) -> int:
    m = 0
    for i, e in enumerate(a):
        if e:
            m |= 1 << i
    return m


def _divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def point_config(p: LatticePolytope) -> list:
    """Lattice points translated into the nonnegative orthant, with a
    homogenizing last coordinate 1; ordered lexicographically by point."""
    pts = p.lattice_points
    lo = [min(x[c] for x in pts) for c in range(p.dim)]
    return [tuple(x - m for x, m in zip(pt, lo)) + (1,) for pt in pts]


@dataclass
class GroebnerStats:
    pairs: int = 0
    reductions_to_zero: int = 0
    seconds: float = 0.0
    max_degree: int = 0


@dataclass
class GroebnerBasis:
    order: MonomialOrder
    elements: list
    stats: GroebnerStats = field(default_factory=GroebnerStats)

    def __len__(self):
        return len(self.elements)

    def leading_monomials(self) -> list:
        return [a for a, _ in self.elements]

    def reduce(self, lead: tuple, trail: tuple, prime: bool = False):
        basis = [(a, b, _mask(a)) for a, b in self.elements]
        return kernels.binomial_normal_form(lead, trail, basis, self.order.weights, True, prime)


def _spair(f: tuple, g: tuple) -> tuple:
    (a1, b1), (a2, b2) = f, g
    lcm = tuple(max(x, y) for x, y in zip(a1, a2))
    return (tuple(l - x + y for l, x, y in zip(lcm, a1, b1)),
            tuple(l - x + y for l, x, y in zip(lcm, a2, b2)))


def buchberger(gens: Sequence[tuple], order: MonomialOrder, prime: bool = False,
               degree_of=degree, degree_cap: int = DEGREE_CAP,
               size_cap: int = SIZE_CAP) -> GroebnerBasis:
    """Reduced Gröbner basis of the binomial ideal generated by ``gens``.

    With ``prime`` the ideal is assumed prime and free of monomials, so
    common monomial factors are cancelled during reduction. Pairs are taken
    in order of least lcm degree, ties by index; pairs with coprime leading
    terms and pairs caught by the chain criterion are skipped.
    """
    start = time.perf_counter()
    stats = GroebnerStats()
    w = order.weights
    basis: list = []
    live: list = []
    heap: list = []
    done: set = set()

    def add(f):
        a, b = f
        d = max(degree_of(a), degree_of(b))
        stats.max_degree = max(stats.max_degree, d)
        if d > degree_cap:
            raise ResourceCapError(f"basis degree {d} exceeds cap {degree_cap}")
        if len(basis) >= size_cap:
            raise ResourceCapError(f"basis size exceeds cap {size_cap}")
        idx = len(basis)
        basis.append(f)
        live.append((a, b, _mask(a)))
        for j in range(idx):
            lcm_deg = sum(max(x, y) for x, y in zip(basis[j][0], a))
            heapq.heappush(heap, (lcm_deg, j, idx))

    for a, b in gens:
        nf = kernels.binomial_normal_form(tuple(a), tuple(b), live, w, False, prime)
        if nf is not None:
            add(nf)

    while heap:
        _, i, j = heapq.heappop(heap)
        done.add((i, j))
        stats.pairs += 1
        if live[i][2] & live[j][2] == 0:
            continue
        fi, fj = basis[i], basis[j]
        lcm = tuple(max(x, y) for x, y in zip(fi[0], fj[0]))
        if _chain_skip(i, j, lcm, basis, done):
            continue
        s_lead, s_trail = _spair(fi, fj)
        nf = kernels.binomial_normal_form(s_lead, s_trail, live, w, False, prime)
        if nf is None:
            stats.reductions_to_zero += 1
            continue
        add(nf)

    elements = _reduce_basis(basis, order, prime)
    stats.seconds = time.perf_counter() - start
    return GroebnerBasis(order, elements, stats)


def _chain_skip(i: int, j: int, lcm: tuple, basis: list, done: set) -> bool:
    for k, f in enumerate(basis):
        if k in (i, j):
            continue
        if not _divides(f[0], lcm):
            continue
        if (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done:
            return True
    return False


def _reduce_basis(elements: list, order: MonomialOrder, prime: bool) -> list:
    minimal = []
    for idx, (a, b) in enumerate(elements):
        if any(_divides(c, a) and (c != a or j < idx)
               for j, (c, _) in enumerate(elements) if j != idx):
            continue
        minimal.append((a, b))
    out = []
    for idx, (a, b) in enumerate(minimal):
        others = [(c, d, _mask(c)) for j, (c, d) in enumerate(minimal) if j != idx]
        tail = b
        while True:
            tm = _mask(tail)
            for c, d, m in others:
                if m & ~tm == 0 and _divides(c, tail):
                    tail = tuple(x - y + z for x, y, z in zip(tail, c, d))
                    break
            else:
                break
        out.append((a, tail))
    return sorted(out)


def is_groebner(gb: GroebnerBasis, prime: bool = False) -> bool:
    """Every S-pair reduces to zero (Buchberger's criterion)."""
    els = gb.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            s = _spair(els[i], els[j])
            if gb.reduce(*s, prime=prime) is not None:
                return False
    return True


def toric_ideal(config: Sequence[Sequence[int]], order: MonomialOrder | None = None,
                degree_cap: int = DEGREE_CAP, size_cap: int = SIZE_CAP) -> GroebnerBasis:
    """Reduced Gröbner basis of the toric ideal of ``config`` (nonnegative
    integer vectors), by eliminating ``t`` from ``x_j - t^{a_j}``.

    ``order`` is the order on the ``x`` variables (default degrevlex)."""
    n = len(config)
    if any(c < 0 for a in config for c in a):
        raise ValueError("configuration must be nonnegative")
    d = len(config[0])
    inner = order or degrevlex(n)
    full = elimination(d, inner)
    gens = []
    for j, a in enumerate(config):
        x = tuple(a) + (0,) * n
        xj = (0,) * d + _unit(n, j)
        gens.append(full.orient(x, xj))

    def x_degree(m):
        return sum(m[d:])

    gb = buchberger(gens, full, prime=True, degree_of=x_degree, degree_cap=degree_cap, size_cap=size_cap)
    kept = [(a[d:], b[d:]) for a, b in gb.elements if not any(a[:d]) and not any(b[:d])]
    return GroebnerBasis(inner, sorted(kept), gb.stats)


def reduced_groebner(gens: Sequence[tuple], order: MonomialOrder, prime: bool = False,
                     degree_cap: int = DEGREE_CAP, size_cap: int = SIZE_CAP) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by binomials ``gens``."""
    return buchberger([order.orient(tuple(a), tuple(b)) for a, b in gens], order, prime=prime,
                      degree_cap=degree_cap, size_cap=size_cap)


@dataclass(frozen=True)
class NormalityResult:
    points: int
    degrevlex_size: int
    degrevlex_max_degree: int
    lex_size: int
    quadratic: bool
    squarefree: bool
    seconds: float


def check_polytope(p: LatticePolytope, perm: Sequence[int] | None = None,
                   degree_cap: int = DEGREE_CAP, size_cap: int = SIZE_CAP) -> NormalityResult:
    """Quadratic degrevlex basis and squarefree lex initial ideal of the
    toric ideal of ``p``'s lattice points."""
    start = time.perf_counter()
    config = point_config(p)
    n = len(config)
    drl = toric_ideal(config, degrevlex(n, perm), degree_cap, size_cap)
    lx = reduced_groebner(drl.elements, lex(n, perm), True, degree_cap, size_cap)
    return NormalityResult(
        points=n,
        degrevlex_size=len(drl),
        degrevlex_max_degree=max((degree(a) for a, _ in drl.elements), default=0),
        lex_size=len(lx),
        quadratic=all(degree(a) == 2 for a, _ in drl.elements),
        squarefree=all(max(a) <= 1 for a, _ in lx.elements),
        seconds=time.perf_counter() - start,
    )


def is_quadratic_gb(p: LatticePolytope) -> bool:
    return check_polytope(p).quadratic


def has_squarefree_lex_initial(p: LatticePolytope) -> bool:
    return check_polytope(p).squarefree


ORDER_NAMES = ("default", "reverse", "boundary-first", "vertices-first")


def variable_order(p: LatticePolytope, name: str) -> list:
    """Permutation of the point variables, largest first. ``default`` is the
    lexicographic order of the points."""
    pts = p.lattice_points
    idx = list(range(len(pts)))
    if name == "default":
        return idx
    if name == "reverse":
        return idx[::-1]
    if name == "boundary-first":
        on_boundary = [any(f.value(x) == 0 for f in p.facets) for x in pts]
        return [i for i in idx if on_boundary[i]] + [i for i in idx if not on_boundary[i]]
    if name == "vertices-first":
        verts = set(p.vertices)
        return [i for i in idx if pts[i] in verts] + [i for i in idx if pts[i] not in verts]
    raise ValueError(f"unknown variable order {name!r}")


def check_with_retries(p: LatticePolytope, names: Sequence[str] = ORDER_NAMES) -> dict:
    """``name -> NormalityResult`` for each named order, stopping at the
    first one where both checks pass."""
    out = {}
    for name in names:
        r = check_polytope(p, variable_order(p, name))
        out[name] = r
        if r.quadratic and r.squarefree:
            break
    return out
