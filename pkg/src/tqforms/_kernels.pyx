# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: box minimum search, spectrum prefilter, isotropy box count."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport llabs

ctypedef long long i64

cdef extern from *:
    """
    static inline long long tq_mulmod(long long a, long long b, long long m) {
        return (long long)((__int128)a * b % m);
    }
    """
    i64 tq_mulmod(i64 a, i64 b, i64 m) nogil

cdef i64 LIMIT = 1LL << 62


cdef inline i64 qf(i64 a, i64 b, i64 c, i64 d, i64 e, i64 f, i64 x, i64 y, i64 z) nogil:
    return a * x * x + b * y * y + c * z * z + 2 * (d * x * y + e * x * z + f * y * z)


def box_min(coeffs, int radius, int inner=0):
    """Least nonzero |F(x)| for inner < max|x_i| <= radius, or 0 if a zero is met.

    Only one of x, -x is visited. Returns (value, witness); value is -1 when
    the shell holds no nonzero value.
    """
    cdef i64 a, b, c, d, e, f
    a, b, c, d, e, f = [int(v) for v in coeffs]
    cdef i64 h = max(llabs(a), llabs(b), llabs(c), llabs(d), llabs(e), llabs(f))
    if h and 9 * h * <i64>radius * radius >= LIMIT // 4:
        raise OverflowError("box too large for 64-bit search")
    cdef i64 best = -1, v, av
    cdef int x, y, z, bx = 0, by = 0, bz = 0
    cdef int found_zero = 0
    with nogil:
        for x in range(0, radius + 1):
            for y in range(-radius, radius + 1):
                if x == 0 and y < 0:
                    continue
                for z in range(-radius, radius + 1):
                    if x == 0 and y == 0 and z <= 0:
                        continue
                    if x <= inner and -inner <= y <= inner and -inner <= z <= inner:
                        continue
                    v = qf(a, b, c, d, e, f, x, y, z)
                    av = v if v >= 0 else -v
                    if av == 0:
                        bx, by, bz = x, y, z
                        found_zero = 1
                        break
                    if best < 0 or av < best:
                        best = av
                        bx, by, bz = x, y, z
                if found_zero:
                    break
            if found_zero:
                break
    if found_zero:
        return 0, (bx, by, bz)
    return best, (bx, by, bz)


cdef inline i64 det3(i64 a, i64 b, i64 c, i64 d, i64 e, i64 f) nogil:
    return a * (b * c - f * f) - d * (d * c - f * e) + e * (d * f - b * e)


cdef inline i64 gcd(i64 x, i64 y) nogil:
    x = llabs(x)
    y = llabs(y)
    while y:
        x, y = y, x % y
    return x


def spectrum_scan(int bound, i64 tau_num, i64 tau_den, int radius=1):
    """Coefficient rows (f11 f22 f33 f12 f13 f23) that may have mu >= tau.

    Rows are restricted to det > 0, indefinite, |f11| <= |f22| <= |f33|,
    f12 >= 0, f13 >= 0, primitive, with no zero and m^3 tau_den >= tau_num det where m
    is the least |F(x)| over the small box.
    """
    cdef int a, b, c, d, e, f, x, y, z
    cdef i64 D, m, v, g
    cdef int zero
    out = []
    for a in range(-bound, bound + 1):
        if a == 0:
            continue
        for b in range(-bound, bound + 1):
            if llabs(b) < llabs(a):
                continue
            for c in range(-bound, bound + 1):
                if llabs(c) < llabs(b):
                    continue
                if <i64>llabs(a) * llabs(a) * llabs(a) * tau_den < tau_num:
                    continue
                for d in range(0, bound + 1):
                    for e in range(0, bound + 1):
                        for f in range(-bound, bound + 1):
                            D = det3(a, b, c, d, e, f)
                            if D <= 0:
                                continue
                            # det > 0: definite means positive definite
                            if a > 0 and <i64>a * b - <i64>d * d > 0:
                                continue
                            m = llabs(a)
                            if m * m * m * tau_den < tau_num * D:
                                continue
                            g = gcd(gcd(gcd(a, b), gcd(c, d)), gcd(e, f))
                            if g != 1:
                                continue
                            zero = 0
                            for x in range(0, radius + 1):
                                for y in range(-radius, radius + 1):
                                    if x == 0 and y < 0:
                                        continue
                                    for z in range(-radius, radius + 1):
                                        if x == 0 and y == 0 and z <= 0:
                                            continue
                                        v = llabs(qf(a, b, c, d, e, f, x, y, z))
                                        if v == 0:
                                            zero = 1
                                            break
                                        if v < m:
                                            m = v
                                    if zero:
                                        break
                                if zero:
                                    break
                            if zero or m * m * m * tau_den < tau_num * D:
                                continue
                            out.append((a, b, c, d, e, f))
    return out


# ---------------------------------------------------------------- isotropy

cdef i64 squarefree(i64 n) nogil:
    cdef i64 sgn = -1 if n < 0 else 1
    cdef i64 m = llabs(n), out = 1, p = 2, k
    while p * p <= m:
        k = 0
        while m % p == 0:
            m //= p
            k += 1
        if k & 1:
            out *= p
        p += 1 if p == 2 else 2
    return sgn * out * m


cdef i64 powmod(i64 base, i64 exp, i64 mod) nogil:
    cdef i64 r = 1
    base %= mod
    if base < 0:
        base += mod
    while exp:
        if exp & 1:
            r = tq_mulmod(r, base, mod)
        base = tq_mulmod(base, base, mod)
        exp >>= 1
    return r


cdef int is_qr_squarefree(i64 x, i64 m) nogil:
    """x is a square modulo the squarefree m > 0."""
    cdef i64 p = 2, r
    m = llabs(m)
    while p * p <= m:
        if m % p == 0:
            m //= p
            r = x % p
            if r < 0:
                r += p
            if p > 2 and r != 0 and powmod(r, (p - 1) // 2, p) != 1:
                return 0
        p += 1 if p == 2 else 2
    if m > 2:
        r = x % m
        if r < 0:
            r += m
        if r != 0 and powmod(r, (m - 1) // 2, m) != 1:
            return 0
    return 1


cdef int legendre_solvable(i64 a, i64 b, i64 c) nogil:
    cdef i64 g
    cdef int changed = 1
    a = squarefree(a)
    b = squarefree(b)
    c = squarefree(c)
    while changed:
        changed = 0
        g = gcd(a, b)
        if g > 1:
            a //= g
            b //= g
            c = squarefree(c * g)
            changed = 1
        g = gcd(a, c)
        if g > 1:
            a //= g
            c //= g
            b = squarefree(b * g)
            changed = 1
        g = gcd(b, c)
        if g > 1:
            b //= g
            c //= g
            a = squarefree(a * g)
            changed = 1
    if (a > 0 and b > 0 and c > 0) or (a < 0 and b < 0 and c < 0):
        return 0
    return (is_qr_squarefree(-b * c, a) and is_qr_squarefree(-c * a, b)
            and is_qr_squarefree(-a * b, c))


cdef int iso_one(i64 a, i64 b, i64 c, i64 d, i64 e, i64 f) nogil:
    """1 if isotropic over Q, 0 if anisotropic, -1 if singular."""
    cdef i64 D = det3(a, b, c, d, e, f)
    cdef i64 t
    cdef int k
    if D == 0:
        return -1
    # bring a nonzero leading 2x2 minor to the front by shears e_i += e_j
    for k in range(12):
        if a != 0 and a * b - d * d != 0:
            break
        if k % 3 == 0:
            # swap x1, x3
            t = a; a = c; c = t
            t = d; d = f; f = t
        elif k % 3 == 1:
            # swap x2, x3
            t = b; b = c; c = t
            t = d; d = e; e = t
        else:
            # x1 -> x1 + x2
            a = a + 2 * d + b
            d = d + b
            e = e + f
    if a == 0 or a * b - d * d == 0:
        return -1
    return legendre_solvable(a, a * (a * b - d * d), (a * b - d * d) * D)


def iso_flags(cnp.ndarray[cnp.int64_t, ndim=2] rows):
    cdef Py_ssize_t n = rows.shape[0], i
    out = np.empty(n, dtype=np.int8)
    cdef signed char[:] o = out
    cdef cnp.int64_t[:, :] r = rows
    with nogil:
        for i in range(n):
            o[i] = iso_one(r[i, 0], r[i, 1], r[i, 2], r[i, 3], r[i, 4], r[i, 5])
    return out


def iso_box(int X):
    """(primitive nonsingular count, isotropic count) over |f_ij| <= X."""
    cdef int a, b, c, d, e, f
    cdef i64 total = 0, iso = 0
    cdef int r
    with nogil:
        for a in range(-X, X + 1):
            for b in range(-X, X + 1):
                for c in range(-X, X + 1):
                    for d in range(-X, X + 1):
                        for e in range(-X, X + 1):
                            for f in range(-X, X + 1):
                                if gcd(gcd(gcd(a, b), gcd(c, d)), gcd(e, f)) != 1:
                                    continue
                                r = iso_one(a, b, c, d, e, f)
                                if r < 0:
                                    continue
                                total += 1
                                iso += r
    return total, iso
