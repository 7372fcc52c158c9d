"""Pure-Python hot kernels.

``_kernels.pyx`` implements the same functions with the same signatures;
``smoothpoly.kernels`` picks whichever is importable.
"""

from math import gcd


def _primitive3(a, b, c):
    g = gcd(gcd(a, b), c)
    return a // g, b // g, c // g


def facet_planes(points, d):
    """Inner facet inequalities ``(normal, offset)`` of a full-dimensional
    point set in dimension 2 or 3, found by brute force over point pairs or
    triples. ``normal . x >= offset`` holds on every point."""
    n = len(points)
    found = []
    seen = set()
    if d == 2:
        for i in range(n):
            px, py = points[i]
            for j in range(i + 1, n):
                qx, qy = points[j]
                a, b = py - qy, qx - px
                g = gcd(a, b)
                if g == 0:
                    continue
                a //= g
                b //= g
                h = a * px + b * py
                lo = hi = h
                for x, y in points:
                    v = a * x + b * y
                    if v < lo:
                        lo = v
                    elif v > hi:
                        hi = v
                    if lo < h < hi:
                        break
                if lo == h and (a, b, h) not in seen:
                    seen.add((a, b, h))
                    found.append(((a, b), h))
                elif hi == h and lo < h and (-a, -b, -h) not in seen:
                    seen.add((-a, -b, -h))
                    found.append(((-a, -b), -h))
        return found
    for i in range(n):
        px, py, pz = points[i]
        for j in range(i + 1, n):
            ux, uy, uz = points[j][0] - px, points[j][1] - py, points[j][2] - pz
            for k in range(j + 1, n):
                vx, vy, vz = points[k][0] - px, points[k][1] - py, points[k][2] - pz
                a = uy * vz - uz * vy
                b = uz * vx - ux * vz
                c = ux * vy - uy * vx
                if a == 0 and b == 0 and c == 0:
                    continue
                a, b, c = _primitive3(a, b, c)
                h = a * px + b * py + c * pz
                if (a, b, c, h) in seen or (-a, -b, -c, -h) in seen:
                    continue
                lo = hi = h
                for x, y, z in points:
                    v = a * x + b * y + c * z
                    if v < lo:
                        lo = v
                    elif v > hi:
                        hi = v
                    if lo < h < hi:
                        break
                if lo == h:
                    seen.add((a, b, c, h))
                    found.append(((a, b, c), h))
                elif hi == h:
                    seen.add((-a, -b, -c, -h))
                    found.append(((-a, -b, -c), -h))
    return found


def _floordiv_bounds(nz, rest, lo, hi):
    # constraint nz * z >= rest; narrows [lo, hi]
    if nz > 0:
        q = -((-rest) // nz)
        if q > lo:
            lo = q
    else:
        q = (-rest) // (-nz)
        if q < hi:
            hi = q
    return lo, hi


def lattice_points(normals, offsets, lo, hi):
    """All integer points in the box ``[lo, hi]`` satisfying every
    ``normal . x >= offset``, in lexicographic order."""
    d = len(lo)
    out = []
    cons = list(zip(normals, offsets))
    if d == 2:
        for x in range(lo[0], hi[0] + 1):
            ylo, yhi = lo[1], hi[1]
            ok = True
            for (a, b), c in cons:
                rest = c - a * x
                if b == 0:
                    if rest > 0:
                        ok = False
                        break
                else:
                    ylo, yhi = _floordiv_bounds(b, rest, ylo, yhi)
            if ok:
                for y in range(ylo, yhi + 1):
                    out.append((x, y))
        return out
    for x in range(lo[0], hi[0] + 1):
        for y in range(lo[1], hi[1] + 1):
            zlo, zhi = lo[2], hi[2]
            ok = True
            for (a, b, c), h in cons:
                rest = h - a * x - b * y
                if c == 0:
                    if rest > 0:
                        ok = False
                        break
                else:
                    zlo, zhi = _floordiv_bounds(c, rest, zlo, zhi)
            if ok:
                for z in range(zlo, zhi + 1):
                    out.append((x, y, z))
    return out


def min_image(points, frames):
    """Lexicographically least sorted image of ``points`` over affine
    ``frames`` given as ``(matrix_rows, translation)``. Returns
    ``(frame_index, image)``."""
    best = None
    best_i = -1
    d = len(points[0])
    for idx, (m, t) in enumerate(frames):
        if d == 3:
            (a, b, c), (e, f, g), (h, i, j) = m
            t0, t1, t2 = t
            img = sorted([(a * x + b * y + c * z + t0,
                           e * x + f * y + g * z + t1,
                           h * x + i * y + j * z + t2) for x, y, z in points])
        else:
            (a, b), (e, f) = m
            t0, t1 = t
            img = sorted([(a * x + b * y + t0, e * x + f * y + t1) for x, y in points])
        if best is None or img < best:
            best = img
            best_i = idx
    return best_i, tuple(best)


def _cmp(a, b, weights):
    for w in weights:
        s = 0
        for wi, ai, bi in zip(w, a, b):
            if ai != bi:
                s += wi * (ai - bi)
        if s:
            return 1 if s > 0 else -1
    return 0


def _mask(a):
    m = 0
    for i, e in enumerate(a):
        if e:
            m |= 1 << i
    return m


def binomial_normal_form(lead, trail, basis, weights, full, saturate):
    """Reduce the binomial ``lead - trail`` modulo ``basis``.

    ``basis`` holds ``(lead, trail, lead_support_mask)`` triples; ``weights``
    is the weight matrix of the monomial order. With ``saturate`` the common
    monomial factor is divided out after each step (valid in prime ideals
    containing no monomials). Returns the oriented ``(lead, trail)`` or None
    when the binomial reduces to zero.
    """
    a, b = lead, trail
    if _cmp(a, b, weights) < 0:
        a, b = b, a
    while True:
        if a == b:
            return None
        if saturate:
            c = [min(x, y) for x, y in zip(a, b)]
            if any(c):
                a = tuple(x - y for x, y in zip(a, c))
                b = tuple(x - y for x, y in zip(b, c))
        am = _mask(a)
        for gl, gt, gm in basis:
            if gm & ~am:
                continue
            for x, y in zip(gl, a):
                if x > y:
                    break
            else:
                a = tuple(x - y + z for x, y, z in zip(a, gl, gt))
                break
        else:
            break
        s = _cmp(a, b, weights)
        if s == 0:
            return None
        if s < 0:
            a, b = b, a
    if full:
        while True:
            bm = _mask(b)
            for gl, gt, gm in basis:
                if gm & ~bm:
                    continue
                for x, y in zip(gl, b):
                    if x > y:
                        break
                else:
                    b = tuple(x - y + z for x, y, z in zip(b, gl, gt))
                    break
            else:
                break
        if a == b:
            return None
    return a, b
