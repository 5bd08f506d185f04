"""Pure-Python (numpy-assisted) versions of the compiled kernels, same signatures."""
from __future__ import annotations

from math import gcd

import numpy as np

LIMIT = 1 << 62


def _check(coeffs, radius):
    h = max(abs(int(v)) for v in coeffs)
    if h and 9 * h * radius * radius >= LIMIT // 4:
        raise OverflowError("box too large for 64-bit search")


def _half_box(radius: int, inner: int = 0) -> np.ndarray:
    r = np.arange(-radius, radius + 1, dtype=np.int64)
    x, y, z = np.meshgrid(np.arange(0, radius + 1, dtype=np.int64), r, r, indexing="ij")
    x, y, z = x.ravel(), y.ravel(), z.ravel()
    keep = (x > 0) | (y > 0) | ((y == 0) & (z > 0))
    if inner:
        keep &= np.maximum(np.maximum(x, np.abs(y)), np.abs(z)) > inner
    return np.stack([x[keep], y[keep], z[keep]], axis=1)


def _values(coeffs, pts: np.ndarray) -> np.ndarray:
    a, b, c, d, e, f = (int(v) for v in coeffs)
    x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
    return a * x * x + b * y * y + c * z * z + 2 * (d * x * y + e * x * z + f * y * z)


def box_min(coeffs, radius: int, inner: int = 0):
    _check(coeffs, radius)
    best, wit = -1, (0, 0, 0)
    # slab by slab in x keeps memory flat and mirrors the compiled visiting order
    r = np.arange(-radius, radius + 1, dtype=np.int64)
    yy, zz = np.meshgrid(r, r, indexing="ij")
    yy, zz = yy.ravel(), zz.ravel()
    for x in range(radius + 1):
        keep = np.ones(len(yy), dtype=bool)
        if x == 0:
            keep &= (yy > 0) | ((yy == 0) & (zz > 0))
        if x <= inner:
            keep &= np.maximum(np.abs(yy), np.abs(zz)) > inner
        if not keep.any():
            continue
        pts = np.stack([np.full(keep.sum(), x, dtype=np.int64), yy[keep], zz[keep]], axis=1)
        vals = np.abs(_values(coeffs, pts))
        zeros = np.flatnonzero(vals == 0)
        if len(zeros):
            return 0, tuple(int(t) for t in pts[zeros[0]])
        i = int(np.argmin(vals))
        if best < 0 or vals[i] < best:
            best, wit = int(vals[i]), tuple(int(t) for t in pts[i])
    return best, wit


def spectrum_scan(bound: int, tau_num: int, tau_den: int, radius: int = 1):
    pts = _half_box(radius)
    px, py, pz = (pts[:, i][None, :] for i in range(3))
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    pos = np.arange(0, bound + 1, dtype=np.int64)
    dd, ee, ff = np.meshgrid(pos, pos, rng, indexing="ij")
    dd, ee, ff = dd.ravel(), ee.ravel(), ff.ravel()
    out = []
    for a in range(-bound, bound + 1):
        if a == 0:
            continue
        for b in range(-bound, bound + 1):
            if abs(b) < abs(a):
                continue
            for c in range(-bound, bound + 1):
                if abs(c) < abs(b):
                    continue
                if abs(a) ** 3 * tau_den < tau_num:
                    continue
                det = a * (b * c - ff * ff) - dd * (dd * c - ff * ee) + ee * (dd * ff - b * ee)
                ok = (det > 0) & (abs(a) ** 3 * tau_den >= tau_num * det)
                if a > 0:
                    ok &= a * b - dd * dd <= 0
                g = np.gcd.reduce([np.full_like(dd, gcd(gcd(a, b), c)), dd, ee, ff])
                ok &= g == 1
                idx = np.flatnonzero(ok)
                if not len(idx):
                    continue
                d_, e_, f_ = dd[idx][:, None], ee[idx][:, None], ff[idx][:, None]
                vals = np.abs(a * px * px + b * py * py + c * pz * pz
                              + 2 * (d_ * px * py + e_ * px * pz + f_ * py * pz))
                m = np.minimum(vals.min(axis=1), abs(a))
                keep = (vals.min(axis=1) > 0) & (m ** 3 * tau_den >= tau_num * det[idx])
                for i in np.flatnonzero(keep):
                    out.append((a, b, c, int(d_[i, 0]), int(e_[i, 0]), int(f_[i, 0])))
    return out


# ---------------------------------------------------------------- isotropy

def _squarefree(n: int) -> int:
    sgn = -1 if n < 0 else 1
    m = abs(n)
    out = 1
    p = 2
    while p * p <= m:
        k = 0
        while m % p == 0:
            m //= p
            k += 1
        if k & 1:
            out *= p
        p += 1 if p == 2 else 2
    return sgn * out * m


def _is_qr_squarefree(x: int, m: int) -> bool:
    m = abs(m)
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if p > 2 and x % p and pow(x % p, (p - 1) // 2, p) != 1:
                return False
        p += 1 if p == 2 else 2
    if m > 2 and x % m and pow(x % m, (m - 1) // 2, m) != 1:
        return False
    return True


def legendre_solvable(a: int, b: int, c: int) -> bool:
    """Whether a x^2 + b y^2 + c z^2 = 0 has a nonzero rational solution."""
    a, b, c = _squarefree(a), _squarefree(b), _squarefree(c)
    changed = True
    while changed:
        changed = False
        for _ in range(3):
            g = gcd(a, b)
            if g > 1:
                a, b, c = a // g, b // g, _squarefree(c * g)
                changed = True
            a, b, c = b, c, a
    if (a > 0 and b > 0 and c > 0) or (a < 0 and b < 0 and c < 0):
        return False
    return (_is_qr_squarefree(-b * c, a) and _is_qr_squarefree(-c * a, b)
            and _is_qr_squarefree(-a * b, c))


def _det(a, b, c, d, e, f):
    return a * (b * c - f * f) - d * (d * c - f * e) + e * (d * f - b * e)


def iso_one(a, b, c, d, e, f) -> int:
    D = _det(a, b, c, d, e, f)
    if D == 0:
        return -1
    for k in range(12):
        if a != 0 and a * b - d * d != 0:
            break
        if k % 3 == 0:
            a, c, d, f = c, a, f, d
        elif k % 3 == 1:
            b, c, d, e = c, b, e, d
        else:
            a, d, e = a + 2 * d + b, d + b, e + f
    if a == 0 or a * b - d * d == 0:
        return -1
    m2 = a * b - d * d
    return 1 if legendre_solvable(a, a * m2, m2 * D) else 0


def iso_flags(rows) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.int64)
    return np.array([iso_one(*(int(v) for v in r)) for r in rows], dtype=np.int8)


def iso_box(X: int):
    total = iso = 0
    rng = range(-X, X + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                g0 = gcd(gcd(a, b), c)
                for d in rng:
                    g1 = gcd(g0, d)
                    for e in rng:
                        g2 = gcd(g1, e)
                        for f in rng:
                            if gcd(g2, f) != 1:
                                continue
                            r = iso_one(a, b, c, d, e, f)
                            if r < 0:
                                continue
                            total += 1
                            iso += r
    return total, iso


__all__ = ["box_min", "spectrum_scan", "iso_flags", "iso_box", "legendre_solvable"]
