import math

import numpy as np
from numba import njit


@njit(cache=True)
def _isqrt(n):
    if n < 0:
        return -1
    r = int(math.sqrt(n))
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


@njit(cache=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _emit(out, n, write, p12, p13, p14, p23, p24, p34):
    g = _gcd(_gcd(_gcd(p12, p13), _gcd(p14, p23)), _gcd(p24, p34))
    if g != 1:
        return n
    if write:
        out[n, 0] = p12
        out[n, 1] = p13
        out[n, 2] = p14
        out[n, 3] = p23
        out[n, 4] = p24
        out[n, 5] = p34
    return n + 1


@njit(cache=True, nogil=True)
def pluecker_slice(h, p12, out, write):
    """Canonical primitive decomposable vectors with leading entry ``p12``.

    Visits tuples in lexicographic order. When ``write`` is false only the
    count is returned and ``out`` is untouched.
    """
    n = 0
    b1 = h - p12 * p12
    if b1 < 0:
        return 0
    lead12 = p12 == 0
    r13 = _isqrt(b1)
    for p13 in range(-r13, r13 + 1):
        if lead12 and p13 < 0:
            continue
        lead13 = lead12 and p13 == 0
        b2 = b1 - p13 * p13
        r14 = _isqrt(b2)
        for p14 in range(-r14, r14 + 1):
            if lead13 and p14 < 0:
                continue
            lead14 = lead13 and p14 == 0
            b3 = b2 - p14 * p14
            r23 = _isqrt(b3)
            for p23 in range(-r23, r23 + 1):
                if lead14 and p23 < 0:
                    continue
                lead23 = lead14 and p23 == 0
                b4 = b3 - p23 * p23
                r24 = _isqrt(b4)
                for p24 in range(-r24, r24 + 1):
                    if lead23 and p24 < 0:
                        continue
                    b5 = b4 - p24 * p24
                    if p12 != 0:
                        num = p13 * p24 - p14 * p23
                        if num % p12 != 0:
                            continue
                        p34 = num // p12
                        if p34 * p34 > b5:
                            continue
                        n = _emit(out, n, write, p12, p13, p14, p23, p24, p34)
                    else:
                        if p13 * p24 != p14 * p23:
                            continue
                        r34 = _isqrt(b5)
                        lo = 1 if (lead23 and p24 == 0) else -r34
                        for p34 in range(lo, r34 + 1):
                            n = _emit(out, n, write, p12, p13, p14, p23, p24, p34)
    return n


@njit(cache=True)
def _sv2(a, b, c, d):
    # closed-form singular values of [[a, b], [c, d]]
    e = 0.5 * (a + d)
    f = 0.5 * (a - d)
    g = 0.5 * (c + b)
    h = 0.5 * (c - b)
    q = math.hypot(e, h)
    r = math.hypot(f, g)
    return q + r, abs(q - r)


@njit(cache=True, nogil=True)
def psi_one_to_many(u, uc, v, out):
    for m in range(v.shape[0]):
        m00 = 0.0
        m01 = 0.0
        m10 = 0.0
        m11 = 0.0
        k00 = 0.0
        k01 = 0.0
        k10 = 0.0
        k11 = 0.0
        for t in range(4):
            v0 = v[m, 0, t]
            v1 = v[m, 1, t]
            m00 += u[0, t] * v0
            m01 += u[0, t] * v1
            m10 += u[1, t] * v0
            m11 += u[1, t] * v1
            k00 += uc[0, t] * v0
            k01 += uc[0, t] * v1
            k10 += uc[1, t] * v0
            k11 += uc[1, t] * v1
        cmax, _ = _sv2(m00, m01, m10, m11)
        _, smin = _sv2(k00, k01, k10, k11)
        ang = math.atan2(smin, cmax)
        if ang > 0.5 * math.pi:
            ang = 0.5 * math.pi
        out[m] = ang


@njit(cache=True, nogil=True)
def count_in_tube(points, z, eps):
    lim = math.sqrt(2.0) * eps
    hits = 0
    for i in range(points.shape[0]):
        xi = math.hypot(points[i, 0] - z[0], points[i, 1] - z[1])
        eta = math.hypot(points[i, 2] - z[2], points[i, 3] - z[3])
        if abs(xi - eta) <= lim:
            hits += 1
    return hits


@njit(cache=True, nogil=True)
def grid_max_dot(m, grid):
    c = np.empty(grid)
    s = np.empty(grid)
    for i in range(grid):
        t = 2.0 * math.pi * i / grid
        c[i] = math.cos(t)
        s[i] = math.sin(t)
    best = -2.0
    bi = 0
    bj = 0
    for i in range(grid):
        r0 = c[i] * m[0, 0] + s[i] * m[1, 0]
        r1 = c[i] * m[0, 1] + s[i] * m[1, 1]
        for j in range(grid):
            d = r0 * c[j] + r1 * s[j]
            if d > best:
                best = d
                bi = i
                bj = j
    return best, bi, bj
