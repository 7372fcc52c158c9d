# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled hot kernels; same signatures and results as ``_kernels_py``."""

from libc.stdlib cimport malloc, free, qsort
from libc.string cimport memcpy


cdef long _gcd(long a, long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef inline long _floordiv(long a, long b):
    # cdivision is off, so this floors like Python
    return a // b


cdef long* _flatten(points, int d, int n) except NULL:
    cdef long* buf = <long*> malloc(max(1, n * d) * sizeof(long))
    if buf == NULL:
        raise MemoryError()
    cdef int i, k
    for i in range(n):
        p = points[i]
        for k in range(d):
            buf[i * d + k] = p[k]
    return buf


def facet_planes(points, d):
    cdef int n = len(points)
    cdef int dd = d
    cdef long* P = _flatten(points, dd, n)
    cdef int i, j, k, m
    cdef long a, b, c, g, h, lo, hi, v
    cdef long ux, uy, uz, vx, vy, vz, px, py, pz
    found = []
    seen = set()
    try:
        if dd == 2:
            for i in range(n):
                px = P[2 * i]
                py = P[2 * i + 1]
                for j in range(i + 1, n):
                    a = py - P[2 * j + 1]
                    b = P[2 * j] - px
                    g = _gcd(a, b)
                    if g == 0:
                        continue
                    a = a // g
                    b = b // g
                    h = a * px + b * py
                    lo = h
                    hi = h
                    for m in range(n):
                        v = a * P[2 * m] + b * P[2 * m + 1]
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
            px = P[3 * i]
            py = P[3 * i + 1]
            pz = P[3 * i + 2]
            for j in range(i + 1, n):
                ux = P[3 * j] - px
                uy = P[3 * j + 1] - py
                uz = P[3 * j + 2] - pz
                for k in range(j + 1, n):
                    vx = P[3 * k] - px
                    vy = P[3 * k + 1] - py
                    vz = P[3 * k + 2] - pz
                    a = uy * vz - uz * vy
                    b = uz * vx - ux * vz
                    c = ux * vy - uy * vx
                    if a == 0 and b == 0 and c == 0:
                        continue
                    g = _gcd(_gcd(a, b), c)
                    a = a // g
                    b = b // g
                    c = c // g
                    h = a * px + b * py + c * pz
                    key = (a, b, c, h)
                    if key in seen or (-a, -b, -c, -h) in seen:
                        continue
                    lo = h
                    hi = h
                    for m in range(n):
                        v = a * P[3 * m] + b * P[3 * m + 1] + c * P[3 * m + 2]
                        if v < lo:
                            lo = v
                        elif v > hi:
                            hi = v
                        if lo < h < hi:
                            break
                    if lo == h:
                        seen.add(key)
                        found.append(((a, b, c), h))
                    elif hi == h:
                        seen.add((-a, -b, -c, -h))
                        found.append(((-a, -b, -c), -h))
        return found
    finally:
        free(P)


def lattice_points(normals, offsets, lo, hi):
    cdef int d = len(lo)
    cdef int nc = len(normals)
    cdef long* N = _flatten(normals, d, nc)
    cdef long* H = <long*> malloc(max(1, nc) * sizeof(long))
    cdef int r
    cdef long x, y, z, rest, clo, chi, q, coef
    cdef bint ok
    for r in range(nc):
        H[r] = offsets[r]
    out = []
    try:
        for x in range(lo[0], hi[0] + 1):
            if d == 2:
                clo = lo[1]
                chi = hi[1]
                ok = True
                for r in range(nc):
                    rest = H[r] - N[2 * r] * x
                    coef = N[2 * r + 1]
                    if coef == 0:
                        if rest > 0:
                            ok = False
                            break
                    elif coef > 0:
                        q = -_floordiv(-rest, coef)
                        if q > clo:
                            clo = q
                    else:
                        q = _floordiv(-rest, -coef)
                        if q < chi:
                            chi = q
                if ok:
                    for y in range(clo, chi + 1):
                        out.append((x, y))
                continue
            for y in range(lo[1], hi[1] + 1):
                clo = lo[2]
                chi = hi[2]
                ok = True
                for r in range(nc):
                    rest = H[r] - N[3 * r] * x - N[3 * r + 1] * y
                    coef = N[3 * r + 2]
                    if coef == 0:
                        if rest > 0:
                            ok = False
                            break
                    elif coef > 0:
                        q = -_floordiv(-rest, coef)
                        if q > clo:
                            clo = q
                    else:
                        q = _floordiv(-rest, -coef)
                        if q < chi:
                            chi = q
                if ok:
                    for z in range(clo, chi + 1):
                        out.append((x, y, z))
        return out
    finally:
        free(N)
        free(H)


cdef int _D = 3


cdef int _cmp_pt(const void* p, const void* q) noexcept nogil:
    cdef const long* a = <const long*> p
    cdef const long* b = <const long*> q
    cdef int k
    for k in range(_D):
        if a[k] < b[k]:
            return -1
        if a[k] > b[k]:
            return 1
    return 0


def min_image(points, frames):
    global _D
    cdef int n = len(points)
    cdef int d = len(points[0])
    cdef long* P = _flatten(points, d, n)
    cdef long* img = <long*> malloc(n * d * sizeof(long))
    cdef long* best = <long*> malloc(n * d * sizeof(long))
    cdef long M[9]
    cdef long T[3]
    cdef int idx = 0, best_i = -1, i, r, c, k
    cdef int cmp
    _D = d
    try:
        for m, t in frames:
            for r in range(d):
                row = m[r]
                for c in range(d):
                    M[r * d + c] = row[c]
                T[r] = t[r]
            for i in range(n):
                for r in range(d):
                    img[i * d + r] = T[r]
                    for c in range(d):
                        img[i * d + r] += M[r * d + c] * P[i * d + c]
            qsort(img, n, d * sizeof(long), _cmp_pt)
            if best_i < 0:
                cmp = -1
            else:
                cmp = 0
                for k in range(n * d):
                    if img[k] != best[k]:
                        cmp = -1 if img[k] < best[k] else 1
                        break
            if cmp < 0:
                memcpy(best, img, n * d * sizeof(long))
                best_i = idx
            idx += 1
        return best_i, tuple(tuple(best[i * d + r] for r in range(d)) for i in range(n))
    finally:
        free(P)
        free(img)
        free(best)


cdef int _cmp_mono(long* a, long* b, long* W, int nrows, int n) noexcept nogil:
    cdef int r, k
    cdef long s
    for r in range(nrows):
        s = 0
        for k in range(n):
            s += W[r * n + k] * (a[k] - b[k])
        if s:
            return 1 if s > 0 else -1
    return 0


cdef bint _eq(long* a, long* b, int n) noexcept nogil:
    cdef int k
    for k in range(n):
        if a[k] != b[k]:
            return False
    return True


cdef int _find_divisor(long* a, long* L, unsigned long long* masks, int nb, int n) noexcept nogil:
    cdef unsigned long long am = 0
    cdef int j, k
    cdef bint ok
    for k in range(n):
        if a[k]:
            am |= (<unsigned long long> 1) << k
    for j in range(nb):
        if masks[j] & ~am:
            continue
        ok = True
        for k in range(n):
            if L[j * n + k] > a[k]:
                ok = False
                break
        if ok:
            return j
    return -1


def binomial_normal_form(lead, trail, basis, weights, full, saturate):
    cdef int n = len(lead)
    if n > 64:
        from smoothpoly._kernels_py import binomial_normal_form as slow
        return slow(lead, trail, basis, weights, full, saturate)
    cdef int nb = len(basis)
    cdef int nrows = len(weights)
    cdef long* A = _flatten((lead, trail), n, 2)
    cdef long* L = <long*> malloc(max(1, nb * n) * sizeof(long))
    cdef long* T = <long*> malloc(max(1, nb * n) * sizeof(long))
    cdef unsigned long long* masks = <unsigned long long*> malloc(max(1, nb) * sizeof(unsigned long long))
    cdef long* W = _flatten(weights, n, nrows)
    cdef long* a = A
    cdef long* b = A + n
    cdef long* tmp
    cdef long cmin
    cdef int j, k, s
    cdef bint sat = saturate
    try:
        for j in range(nb):
            gl, gt, gm = basis[j]
            masks[j] = gm
            for k in range(n):
                L[j * n + k] = gl[k]
                T[j * n + k] = gt[k]
        if _cmp_mono(a, b, W, nrows, n) < 0:
            a, b = b, a
        while True:
            if _eq(a, b, n):
                return None
            if sat:
                for k in range(n):
                    cmin = a[k] if a[k] < b[k] else b[k]
                    a[k] -= cmin
                    b[k] -= cmin
            j = _find_divisor(a, L, masks, nb, n)
            if j < 0:
                break
            for k in range(n):
                a[k] += T[j * n + k] - L[j * n + k]
            s = _cmp_mono(a, b, W, nrows, n)
            if s == 0:
                return None
            if s < 0:
                a, b = b, a
        if full:
            while True:
                j = _find_divisor(b, L, masks, nb, n)
                if j < 0:
                    break
                for k in range(n):
                    b[k] += T[j * n + k] - L[j * n + k]
            if _eq(a, b, n):
                return None
        return tuple(a[k] for k in range(n)), tuple(b[k] for k in range(n))
    finally:
        free(A)
        free(L)
        free(T)
        free(masks)
        free(W)
