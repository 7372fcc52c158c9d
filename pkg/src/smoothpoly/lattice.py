"""Exact integer linear algebra over Z^2 and Z^3.

Vectors are plain tuples of Python ints. Nothing in this package ever
touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple


class LatticeError(ValueError):
    pass


def primitive(v: Sequence[int]) -> tuple[Vector, int]:
    """Split ``v`` as ``g * w`` with ``w`` primitive and ``g > 0``."""
    g = 0
    for c in v:
        g = gcd(g, c)
    if g == 0:
        raise LatticeError("zero has no primitive direction")
    return tuple(c // g for c in v), g


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def add(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def scale(k: int, v: Sequence[int]) -> Vector:
    return tuple(k * a for a in v)


def cross(u: Sequence[int], v: Sequence[int]) -> Vector:
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant (Bareiss fraction-free elimination)."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise LatticeError("determinant of a non-square matrix")
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        return dot(rows[0], cross(rows[1], rows[2]))
    m = [list(r) for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over Q of a list of integer vectors."""
    rows = [[Fraction(c) for c in v] for v in vectors]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def transpose(m: Sequence[Sequence[int]]) -> tuple:
    return tuple(zip(*m))


def matvec(m: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(dot(row, v) for row in m)


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def identity(d: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def is_lattice_basis(vs: Sequence[Sequence[int]]) -> bool:
    """True iff the ``d`` vectors of dimension ``d`` form a basis of Z^d."""
    d = len(vs)
    if any(len(v) != d for v in vs):
        raise LatticeError(f"expected {d} vectors of dimension {d}")
    return abs(det(vs)) == 1


def unimodular_inverse(m: Sequence[Sequence[int]]) -> tuple:
    """Inverse of an integer matrix with determinant +-1 (adjugate formula)."""
    d = len(m)
    dm = det(m)
    if abs(dm) != 1:
        raise LatticeError(f"matrix is not unimodular (det {dm})")
    if d == 1:
        return ((dm,),)
    cof = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(map(list, m)) if k != i]
            cof[i][j] = (-1) ** (i + j) * det(minor)
    # inverse = adj / det, adj = cof^T
    return tuple(tuple(cof[j][i] * dm for j in range(d)) for i in range(d))


def solve_rational(m: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple | None:
    """Solve ``m x = rhs`` over Q for square nonsingular ``m``; None if singular."""
    n = len(m)
    a = [[Fraction(c) for c in row] + [Fraction(r)] for row, r in zip(m, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(a[i][n] / a[i][i] for i in range(n))


def solve_integral(m: Sequence[Sequence[int]], rhs: Sequence[int]) -> Vector | None:
    """Integer solution of ``m x = rhs`` or None if singular / non-integral."""
    x = solve_rational(m, rhs)
    if x is None or any(c.denominator != 1 for c in x):
        return None
    return tuple(int(c) for c in x)


def complete_row(n: Sequence[int]) -> tuple:
    """Unimodular matrix whose last row is the primitive vector ``n``.

    Found by unimodular column reduction of ``n`` to the last unit vector:
    if ``n C = e_d`` then the last row of ``C^-1`` is ``n``.
    """
    d = len(n)
    w, g = primitive(n)
    if g != 1:
        raise LatticeError("row must be primitive")
    v = list(n)
    c = [list(r) for r in identity(d)]

    def colop(j, k, q):  # column j -= q * column k
        v[j] -= q * v[k]
        for r in c:
            r[j] -= q * r[k]

    while sum(1 for x in v if x) > 1:
        k = min((i for i in range(d) if v[i]), key=lambda i: abs(v[i]))
        for j in range(d):
            if j != k and v[j]:
                colop(j, k, v[j] // v[k])
    k = next(i for i in range(d) if v[i])
    if k != d - 1:
        v[k], v[d - 1] = v[d - 1], v[k]
        for r in c:
            r[k], r[d - 1] = r[d - 1], r[k]
    if v[d - 1] == -1:
        v[d - 1] = 1
        for r in c:
            r[d - 1] = -r[d - 1]
    return unimodular_inverse(c)


@dataclass(frozen=True)
class UnimodularAffineMap:
    """Lattice isomorphism ``x -> matrix @ x + translation``.

    Composition reads left to right: ``f.then(g)`` applies ``f`` first.
    """

    matrix: tuple
    translation: Vector

    def __post_init__(self):
        d = len(self.matrix)
        if len(self.translation) != d or any(len(r) != d for r in self.matrix):
            raise LatticeError("matrix and translation dimensions disagree")
        if abs(det(self.matrix)) != 1:
            raise LatticeError("matrix is not unimodular")

    @property
    def dim(self) -> int:
        return len(self.translation)

    @classmethod
    def identity(cls, d: int) -> "UnimodularAffineMap":
        return cls(identity(d), (0,) * d)

    @classmethod
    def from_frame(cls, origin: Sequence[int], directions: Sequence[Sequence[int]]):
        """Map sending ``origin`` to 0 and ``directions[i]`` to ``e_i``."""
        cols = transpose(directions)
        inv = unimodular_inverse(cols)
        return cls(inv, tuple(-c for c in matvec(inv, origin)))

    def apply(self, p: Sequence[int]) -> Vector:
        if len(p) != self.dim:
            raise LatticeError(f"point of dimension {len(p)} for a map on Z^{self.dim}")
        return tuple(a + b for a, b in zip(matvec(self.matrix, p), self.translation))

    __call__ = apply

    def then(self, other: "UnimodularAffineMap") -> "UnimodularAffineMap":
        m = matmul(other.matrix, self.matrix)
        t = add(matvec(other.matrix, self.translation), other.translation)
        return UnimodularAffineMap(m, t)

    def inverse(self) -> "UnimodularAffineMap":
        inv = unimodular_inverse(self.matrix)
        return UnimodularAffineMap(inv, tuple(-c for c in matvec(inv, self.translation)))
