"""Minima of forms, local minima of packets and genera, and genus representatives."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Optional

from sympy import nextprime

from . import kernels
from .forms import TernaryForm, content, determinant, signature
from .genus import (GenusSymbol, _factor, class_count, enumerate_genera, factor_rs,
                    genus_of, P_d, root_primes)
from .local import canonical_symbol, is_isotropic_global


class Certificate(str, enum.Enum):
    ISOTROPIC = "Isotropic"
    LOCAL_LOWER_BOUND_MET = "LocalLowerBoundMet"
    JONES_WATSON_EXCLUDED = "JonesWatsonExcluded"
    UPPER_BOUND_ONLY = "UpperBoundOnly"

    @property
    def exact(self) -> bool:
        return self is not Certificate.UPPER_BOUND_ONLY


@dataclass(frozen=True)
class KappaResult:
    value: int
    witness: Optional[tuple[int, int, int]]
    certificate: Certificate
    radius: int = 0

    @property
    def exact(self) -> bool:
        return self.certificate.exact

    def as_dict(self) -> dict:
        out = {"value": self.value, "witness": list(self.witness) if self.witness else None,
               "certificate": self.certificate.value}
        if self.certificate is Certificate.UPPER_BOUND_ONLY:
            out["radius"] = self.radius
        return out


@dataclass(frozen=True)
class LocalMinData:
    packet: object
    kstar: int
    k: int


def _locals(h) -> dict:
    return h.locals


def _root_part(h) -> int:
    det = h.determinant
    r = 1
    for p in root_primes(det):
        while det % p == 0:
            det //= p
            r *= p
    return r


def locally_represented(h, n: int) -> bool:
    """n lies in R_p for every p in the support (n != 0)."""
    return all(c.represents(n) for c in _locals(h).values())


def local_min(h) -> LocalMinData:
    """K(H) and K*(H) for a packet or genus by scanning n = 1, 2, ..."""
    locs = _locals(h)
    k0 = 0 if all(c.isotropic for c in locs.values()) else None
    cap = 2 * _root_part(h)
    for n in range(1, cap + 1):
        if locally_represented(h, n) or locally_represented(h, -n):
            return LocalMinData(h, n, n if k0 is None else 0)
    raise ArithmeticError(f"no locally represented value up to 2 r(H) = {cap}")


@lru_cache(maxsize=1 << 14)
def _genus_kstar(g: GenusSymbol) -> int:
    return local_min(g).kstar


def jones_watson_applies(n: int, d: int) -> bool:
    """Some odd prime q with q not dividing d divides n exactly once."""
    if n == 0:
        raise ValueError("n must be nonzero")
    for q, k in _factor(abs(n)):
        if q != 2 and k == 1 and d % q:
            return True
    return False


# ---------------------------------------------------------------- search caps

@lru_cache(maxsize=None)
def B(q: int) -> int:
    """Largest over invertible a mod q of the least prime p = a (mod q)."""
    need = {a for a in range(1, q + 1) if gcd(a, q) == 1}
    worst = 0
    p = 2
    while need:
        a = p % q
        if a in need:
            need.discard(a)
            worst = p
        p = nextprime(p)
    return worst


def watson_cap(d: int, hard_cap: int = 10 ** 6) -> int:
    r, _ = factor_rs(d)
    return min(2 * r * B(8 * P_d(d)), hard_cap)


# ---------------------------------------------------------------- kappa

def _box_min(coeffs, radius: int, inner: int = 0):
    try:
        return kernels.box_min(coeffs, radius, inner)
    except OverflowError:
        f = TernaryForm.from_coeffs(*coeffs)
        best, wit = -1, (0, 0, 0)
        rng = range(-radius, radius + 1)
        for x in product(range(radius + 1), rng, rng):
            if max(abs(t) for t in x) <= inner or x <= (0, 0, 0) and x[0] == 0 and (x[1], x[2]) <= (0, 0):
                continue
            v = abs(f(x))
            if v == 0:
                return 0, x
            if best < 0 or v < best:
                best, wit = v, x
        return best, wit


def box_search(f: TernaryForm, radius: int) -> tuple[int, tuple[int, int, int]]:
    return _box_min(f.coeffs(), radius)


def kappa(f: TernaryForm, max_radius: int = 64) -> KappaResult:
    """kappa(f) with a certificate of exactness.

    The genus minimum K*(G) bounds kappa from below, so reaching it in the box
    search is a proof. When f is alone in its genus, or K*(G) has a prime
    factor q with q || K*, q not dividing D, every form of the genus represents
    K*(G) and the search is continued up to four times ``max_radius``.
    """
    if determinant(f) == 0:
        raise ValueError("singular form")
    if not signature(f).indefinite:
        raise ValueError("form is not indefinite")
    if content(f) != 1:
        raise ValueError("form is not primitive")
    if is_isotropic_global(f):
        m, w = _box_min(f.coeffs(), 2)
        r = 2
        while m != 0 and r < 4 * max_radius:
            r *= 2
            m, w = _box_min(f.coeffs(), r)
        return KappaResult(0, w if m == 0 else None, Certificate.ISOTROPIC)
    g = genus_of(f)
    low = _genus_kstar(g)
    coeffs = f.coeffs()
    best, wit = -1, None
    r, inner = 1, 0
    while r <= max_radius:
        m, w = _box_min(coeffs, r, inner)
        if m > 0 and (best < 0 or m < best):
            best, wit = m, w
        if best == low:
            return KappaResult(best, wit, Certificate.LOCAL_LOWER_BOUND_MET, r)
        inner, r = r, 2 * r
    forced = class_count(g) == 1 or jones_watson_applies(low, g.determinant)
    if forced:
        while r <= 4 * max_radius:
            m, w = _box_min(coeffs, r, inner)
            if m > 0 and m < best:
                best, wit = m, w
            if best == low:
                return KappaResult(best, wit, Certificate.JONES_WATSON_EXCLUDED, r)
            inner, r = r, 2 * r
    return KappaResult(best, wit, Certificate.UPPER_BOUND_ONLY, inner)


# ---------------------------------------------------------------- representatives

def _candidates(d: int, bound: int, start: int = 1):
    """Forms of determinant d with f11, f22, f12, f13, f23 of height h in [start, bound]
    (increasing h), f33 solved for."""
    for h in range(start, bound + 1):
        rng = sorted(range(-h, h + 1), key=abs)
        for f11, f22, f12, f13, f23 in product(rng, repeat=5):
            # x2 -> -x2 and x3 -> -x3 make f12, f13 >= 0
            if f12 < 0 or f13 < 0 or max(abs(f11), abs(f22), f12, f13, abs(f23)) != h:
                continue
            m2 = f11 * f22 - f12 * f12
            if m2 == 0:
                continue
            # det = f33 * m2 + rest
            rest = 2 * f12 * f13 * f23 - f22 * f13 * f13 - f11 * f23 * f23
            num = d - rest
            if num % m2:
                continue
            yield TernaryForm.from_coeffs(f11, f22, num // m2, f12, f13, f23)


def genus_representatives(d: int, bound: Optional[int] = None, max_bound: int = 12) -> dict:
    """Map each genus of determinant d to an integral representative form."""
    target = {g.items: g for g in enumerate_genera(d)}
    if not target:
        return {}
    primes = sorted({2} | {p for p, _ in _factor(d)})
    options = {p: {c for g in target.values() for q, c in g.items if q == p} for p in primes}
    fixed = {p: next(iter(cs)) for p, cs in options.items() if len(cs) == 1}
    multi = [p for p in primes if p not in fixed]
    found: dict = {}
    for f in _candidates(d, max_bound if bound is None else bound):
        g = f.gram
        # det > 0, so f is definite exactly when it is positive definite
        if g[0][0] > 0 and g[0][0] * g[1][1] > g[0][1] ** 2 or content(f) != 1:
            continue
        sym = dict(fixed)
        sym.update((p, canonical_symbol(f, p)) for p in multi)
        key = tuple((p, sym[p]) for p in primes)
        if key in target and key not in found:
            found[key] = f
            if len(found) == len(target):
                break
    if len(found) < len(target):
        missing = [str(target[k]) for k in target if k not in found]
        raise RuntimeError(f"no representative found for {len(missing)} genera of d={d}: {missing[:3]}")
    return {target[k]: f for k, f in found.items()}
