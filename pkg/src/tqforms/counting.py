"""Counting functions: spectrum points, MAR, sums of g(d) and h(d), isotropic counts."""
from __future__ import annotations

import csv
import io
import json
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from multiprocessing import Pool
from typing import Optional, Sequence

import mpmath
import numpy as np

from . import kernels
from .euler import squarefree_divisor_constant, varpi
from .forms import TernaryForm, content, determinant
from .genus import (_factor, class_count, ensure_sieve, enumerate_genera,
                    genus_and_class_number, genus_of, local_options)
from .local import LocalClass, is_isotropic_global
from .mass import nu_iso_local, siegel_mass
from .minima import Certificate, jones_watson_applies, kappa, local_min, watson_cap
from .store import GenusCache, SHARD

GAMMA_GENERA = 57 / (4 * math.pi ** 2)


# ---------------------------------------------------------------- reports

@dataclass
class Fit:
    c1: float
    c2: float
    c1_err: float
    c2_err: float

    def as_dict(self) -> dict:
        return {"c1": self.c1, "c2": self.c2, "c1_stderr": self.c1_err, "c2_stderr": self.c2_err}


def fit_xlogx(xs: Sequence[float], ys: Sequence[float]) -> Fit:
    """Least squares for y = c1 X log X + c2 X."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    a = np.stack([x * np.log(x), x], axis=1)
    coef, *_ = np.linalg.lstsq(a, y, rcond=None)
    dof = max(len(x) - 2, 1)
    resid = y - a @ coef
    s2 = float(resid @ resid) / dof
    cov = s2 * np.linalg.inv(a.T @ a)
    return Fit(float(coef[0]), float(coef[1]), float(math.sqrt(cov[0, 0])), float(math.sqrt(cov[1, 1])))


@dataclass
class CountReport:
    name: str
    grid: list[int]
    counts: list[int]
    reference: list[float] = field(default_factory=list)
    fit: Optional[Fit] = None
    target_c1: Optional[float] = None
    counts_max: Optional[list[int]] = None
    extra: dict = field(default_factory=dict)

    @property
    def uncertainty(self) -> list[int]:
        if self.counts_max is None:
            return []
        return [hi - lo for lo, hi in zip(self.counts, self.counts_max)]

    def rows(self) -> list[dict]:
        out = []
        for i, (x, c) in enumerate(zip(self.grid, self.counts)):
            row = {"X": x, "count": c}
            if self.reference:
                row["reference"] = self.reference[i]
            if self.counts_max is not None and self.counts_max[i] != c:
                row["count_max"] = self.counts_max[i]
            out.append(row)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["X", "count"]
        if self.reference:
            cols.append("reference")
        if self.counts_max is not None:
            cols.append("count_max")
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for row in self.rows():
            if self.counts_max is not None:
                row.setdefault("count_max", row["count"])
            w.writerow(row)
        return buf.getvalue()

    def summary(self) -> dict:
        out = {"name": self.name, "X": self.grid[-1] if self.grid else None,
               "count": self.counts[-1] if self.counts else None}
        if self.fit:
            out["fit"] = self.fit.as_dict()
        if self.target_c1 is not None:
            out["target_c1"] = self.target_c1
            if self.fit:
                out["c1_relative_error"] = abs(self.fit.c1 - self.target_c1) / self.target_c1
        if self.counts_max is not None:
            out["uncertain"] = self.uncertainty[-1]
        out.update(self.extra)
        return out

    def to_json(self) -> str:
        return json.dumps({"summary": self.summary(), "rows": self.rows()}, indent=2, default=str)


def _grid(X: int, points: int) -> list[int]:
    pts = sorted({max(2, round(X * (i + 1) / points)) for i in range(points)})
    return pts


# ---------------------------------------------------------------- spectrum

@dataclass(frozen=True)
class SpectrumPoint:
    mu: Fraction
    kappa: int
    d: int
    representative: TernaryForm
    exactness: Certificate
    multiplicity: int

    def as_dict(self) -> dict:
        return {"mu": str(self.mu), "kappa": self.kappa, "d": self.d,
                "form": " ".join(map(str, self.representative.coeffs())),
                "certificate": self.exactness.value, "multiplicity": self.multiplicity}


def spectrum(top_k: int = 11, bound: int = 12, tau: Fraction = Fraction(2, 9),
             radius: int = 4, max_radius: int = 64) -> list[SpectrumPoint]:
    """Largest top_k values of kappa^3 / D over forms with entries bounded by ``bound``.

    Forms are prefiltered by the compiled scan, which discards any form whose
    small-box minimum m already gives m^3 / D < tau. If fewer than top_k values
    reach tau, tau is lowered and the scan repeated.
    """
    while True:
        rows = kernels.spectrum_scan(bound, tau.numerator, tau.denominator, radius)
        flags = kernels.iso_flags(np.array(rows, dtype=np.int64).reshape(-1, 6))
        found: dict[Fraction, dict] = {}
        for r, fl in zip(rows, flags):
            if fl != 0:
                continue
            f = TernaryForm.from_coeffs(*r)
            k = kappa(f, max_radius)
            mu = Fraction(k.value ** 3, abs(determinant(f)))
            if mu < tau:
                continue
            by_genus = found.setdefault(mu, {})
            g = genus_of(f)
            old = by_genus.get(g)
            # keep an exact certificate when one exists
            if old is None or (not old[1].exact and k.exact):
                by_genus[g] = (f, k)
        if len(found) >= top_k or tau < Fraction(1, 10 ** 6):
            break
        tau = tau * 2 / 3
    out = []
    for mu in sorted(found, reverse=True)[:top_k]:
        groups = found[mu]
        f, k = min(groups.values(), key=lambda fk: (not fk[1].exact, fk[0].coeffs()))
        out.append(SpectrumPoint(mu, k.value, abs(determinant(f)), f, k.certificate, len(groups)))
    return out


# ---------------------------------------------------------------- genus minima

NMAX = 24


@lru_cache(maxsize=1 << 14)
def _class_mask(c: LocalClass) -> int:
    """Bit n-1 for +n and bit NMAX+n-1 for -n, n <= NMAX, when represented."""
    m = 0
    for n in range(1, NMAX + 1):
        if c.represents(n):
            m |= 1 << (n - 1)
        if c.represents(-n):
            m |= 1 << (NMAX + n - 1)
    return m


def _kstar_of_mask(mask: int) -> Optional[int]:
    for n in range(1, NMAX + 1):
        if mask >> (n - 1) & 1 or mask >> (NMAX + n - 1) & 1:
            return n
    return None


def genus_minimum_counts(d: int) -> Counter:
    """Number of genera of determinant d with K(G) = t, keyed by t.

    A product over the primes p | 2d of per-class representation masks, with
    the Hasse product and the all-isotropic flag carried along.
    """
    full = (1 << (2 * NMAX)) - 1
    states: Counter = Counter({(full, 1, True): 1})
    for _, cs in local_options(d):
        nxt: Counter = Counter()
        for (mask, sign, iso), n in states.items():
            for c in cs:
                nxt[(mask & _class_mask(c), sign * c.hasse, iso and c.isotropic)] += n
        states = nxt
    out: Counter = Counter()
    for (mask, sign, iso), n in states.items():
        if sign != 1:
            continue
        if iso:
            out[0] += n
            continue
        k = _kstar_of_mask(mask)
        if k is None:
            return Counter(local_min(g).k for g in enumerate_genera(d))
        out[k] += n
    return out


@dataclass(frozen=True)
class GenusMin:
    genus: object
    K: int
    Kstar: int
    h: int


def genus_minima(d: int) -> list[GenusMin]:
    out = []
    for g in enumerate_genera(d):
        lm = local_min(g)
        out.append(GenusMin(g, lm.k, lm.kstar, class_count(g)))
    return out


def is_squarefree(d: int) -> bool:
    return all(k == 1 for _, k in _factor(d))


def lambda_squarefree(d: int) -> dict[int, int]:
    """lambda(d, t) for squarefree d, where every genus is a single class."""
    if not is_squarefree(d):
        raise ValueError("d is not squarefree")
    return dict(genus_minimum_counts(d))


# ---------------------------------------------------------------- MAR

def mar_squarefree(X: int, points: int = 20) -> CountReport:
    """MAR#(X): classes of squarefree determinant d with d <= kappa^3 X."""
    grid = _grid(X, points)
    tmax = 2
    dmax = tmax ** 3 * X
    ensure_sieve(dmax + 1)
    hits: dict[int, list[tuple[int, int]]] = {}
    high = 0
    for d in range(1, dmax + 1):
        if not is_squarefree(d):
            continue
        for t, n in genus_minimum_counts(d).items():
            if t == 0:
                continue
            if t > tmax:
                high += n
                continue
            hits.setdefault(t, []).append((d, n))
    counts = []
    for x in grid:
        total = 0
        for t, lst in hits.items():
            lim = t ** 3 * x
            total += sum(n for d, n in lst if d <= lim)
        counts.append(total)
    c = float(squarefree_divisor_constant().value)
    return CountReport("mar_squarefree", grid, counts, [1.75 * c * x * math.log(x) for x in grid],
                       fit_xlogx(grid, counts), 1.75 * c,
                       extra={"kappa_above_2": high, "c": c})


def mar(X: int, tmax: int = 2, points: int = 10) -> CountReport:
    """MAR(X) at genus level over d <= tmax^3 X.

    A class is exact when its genus has one class, or when Jones-Watson forces
    every class to represent K(G); one class per genus always attains K(G).
    The remaining classes have kappa in [K(G), watson_cap(d)] and widen the
    interval [count, count_max]. Classes with kappa > tmax and d > tmax^3 X are
    outside the enumeration.
    """
    grid = _grid(X, points)
    dmax = tmax ** 3 * X
    ensure_sieve(dmax + 1)
    exact: list[tuple[int, int, int]] = []     # (d, kappa, count)
    loose: list[tuple[int, int, int, int]] = []  # (d, low, high, count)
    for d in range(1, dmax + 1):
        for gm in genus_minima(d):
            if gm.K == 0:
                continue
            if gm.h == 1 or jones_watson_applies(gm.K, d):
                exact.append((d, gm.K, gm.h))
            else:
                exact.append((d, gm.K, 1))
                loose.append((d, gm.K, watson_cap(d), gm.h - 1))
    lo, hi = [], []
    for x in grid:
        base = sum(n for d, k, n in exact if d <= k ** 3 * x)
        lo.append(base + sum(n for d, a, b, n in loose if d <= a ** 3 * x))
        hi.append(base + sum(n for d, a, b, n in loose if d <= b ** 3 * x))
    return CountReport("mar", grid, lo, fit=fit_xlogx(grid, lo) if len(grid) > 2 else None,
                       counts_max=hi, extra={"tmax": tmax, "dmax": dmax})


def kappa_two_excess(X: int, points: int = 8) -> CountReport:
    """Classes with kappa = 2 and x < d <= 8x, counted from below, against the squarefree part.

    These classes are the t = 2 share of MAR(x) - sum_{d <= x} h(d). Only
    classes whose kappa is certified (one-class genus, Jones-Watson, or the
    one class per genus attaining K) are counted. ``extra['squarefree']``
    holds the same count restricted to squarefree d, which is exact.
    """
    grid = _grid(X, points)
    dmax = 8 * X
    ensure_sieve(dmax + 1)
    lam = np.zeros(dmax + 1, dtype=np.int64)
    lam_sf = np.zeros(dmax + 1, dtype=np.int64)
    for d in range(1, dmax + 1):
        if is_squarefree(d):
            n = genus_minimum_counts(d).get(2, 0)
            lam[d] = lam_sf[d] = n
            continue
        for gm in genus_minima(d):
            if gm.K == 2:
                lam[d] += gm.h if gm.h == 1 or jones_watson_applies(2, d) else 1
    cum, cum_sf = np.cumsum(lam), np.cumsum(lam_sf)
    counts = [int(cum[8 * x] - cum[x]) for x in grid]
    sf = [int(cum_sf[8 * x] - cum_sf[x]) for x in grid]
    c = float(squarefree_divisor_constant().value)
    return CountReport("kappa_two_excess", grid, counts,
                       [0.875 * c * x * math.log(x) for x in grid],
                       fit_xlogx(grid, counts) if len(grid) > 2 else None,
                       extra={"squarefree": sf,
                              "per_xlogx": [n / (x * math.log(x)) for n, x in zip(counts, grid)]})


# ---------------------------------------------------------------- sums of g and h

def _gh_shard(args) -> np.ndarray:
    k, cache_dir = args
    ensure_sieve((k + 1) * SHARD + 1)
    return GenusCache(cache_dir).shard(k, genus_and_class_number)


def gh_table(X: int, threads: int = 1, cache_dir: Optional[str] = None) -> np.ndarray:
    """Array of (g(d), h(d)) for d = 1..X."""
    ks = list(range((X - 1) // SHARD + 1))
    jobs = [(k, cache_dir) for k in ks]
    if threads > 1 and len(ks) > 1:
        with Pool(threads) as pool:
            parts = pool.map(_gh_shard, jobs, chunksize=1)
    else:
        parts = [_gh_shard(j) for j in jobs]
    return np.concatenate(parts)[:X]


def sum_genera_classes(X: int, points: int = 20, threads: int = 1,
                       cache_dir: Optional[str] = None) -> tuple[CountReport, CountReport]:
    table = gh_table(X, threads, cache_dir)
    cg = np.cumsum(table[:, 0])
    ch = np.cumsum(table[:, 1])
    grid = _grid(X, points)
    ref = [GAMMA_GENERA * x * math.log(x) for x in grid]
    out = []
    for name, cum in (("sum_genera", cg), ("sum_classes", ch)):
        counts = [int(cum[x - 1]) for x in grid]
        out.append(CountReport(name, grid, counts, ref, fit_xlogx(grid, counts), GAMMA_GENERA))
    return out[0], out[1]


def sum_genera(X: int, **kw) -> CountReport:
    return sum_genera_classes(X, **kw)[0]


def sum_classes(X: int, **kw) -> CountReport:
    return sum_genera_classes(X, **kw)[1]


# ---------------------------------------------------------------- isotropic counts

ISO_BOX_LIMIT = 12


def iso_box_count(X: int, start: int = 1) -> CountReport:
    """Primitive nonsingular isotropic forms with all |f_ij| <= x, for x = start..X."""
    if X > ISO_BOX_LIMIT:
        raise ValueError(f"X = {X} too large for exhaustive enumeration; use X <= {ISO_BOX_LIMIT}")
    grid = list(range(max(start, 1), X + 1))
    totals, counts = [], []
    for x in grid:
        t, i = kernels.iso_box(x)
        totals.append(int(t))
        counts.append(int(i))
    ratio = [c / x ** 6 for c, x in zip(counts, grid)]
    return CountReport("iso_box", grid, counts,
                       extra={"primitive_nonsingular": totals, "iso_over_X6": ratio})


def _cassels_radius(f: TernaryForm) -> int:
    g = f.gram
    h = max(abs(g[0][0]), abs(g[1][1]), abs(g[2][2]),
            2 * abs(g[0][1]), 2 * abs(g[0][2]), 2 * abs(g[1][2]))
    return 3 * h


@dataclass
class IsoCheck:
    forms: int = 0
    isotropic: int = 0
    verdict_mismatch: int = 0
    iso_without_zero: int = 0
    aniso_with_zero: int = 0

    @property
    def ok(self) -> bool:
        return not (self.verdict_mismatch or self.iso_without_zero or self.aniso_with_zero)


def iso_cross_check(X: int, sample: Optional[int] = None, seed: int = 0,
                    aniso_sample: Optional[int] = None) -> IsoCheck:
    """Compare the Hasse-invariant verdict, the Legendre-criterion verdict and a zero search.

    Every isotropic ternary has a zero of height at most 3H (Cassels), H the
    largest coefficient of the polynomial, so the box of that radius decides.
    With ``sample`` set, forms are drawn at random from the box instead of
    enumerated. ``aniso_sample`` limits how many anisotropic forms get the full
    (and slow) zero search.
    """
    rng = random.Random(seed)
    out = IsoCheck()

    def forms():
        if sample is None:
            for c in np.ndindex(*(2 * X + 1,) * 6):
                yield tuple(int(v) - X for v in c)
        else:
            for _ in range(sample):
                yield tuple(rng.randint(-X, X) for _ in range(6))

    aniso_checked = 0
    for c in forms():
        f = TernaryForm.from_coeffs(*c)
        if determinant(f) == 0 or content(f) != 1:
            continue
        out.forms += 1
        iso = is_isotropic_global(f)
        leg = kernels.iso_flags(np.array([c], dtype=np.int64))[0] == 1
        if iso != leg:
            out.verdict_mismatch += 1
        R = _cassels_radius(f)
        if iso:
            out.isotropic += 1
            r = 2
            while True:
                m, _ = kernels.box_min(c, min(r, R))
                if m == 0 or r >= R:
                    break
                r *= 2
            if m != 0:
                out.iso_without_zero += 1
        elif aniso_sample is None or aniso_checked < aniso_sample:
            aniso_checked += 1
            m, _ = kernels.box_min(c, R)
            if m == 0:
                out.aniso_with_zero += 1
    return out


# ---------------------------------------------------------------- isotropic masses

@lru_cache(maxsize=None)
def nu_iso_one() -> Fraction:
    """nu^iso(1) / (2 zeta(2)) as an exact rational."""
    return sum((siegel_mass(g).normalized() for g in enumerate_genera(1) if g.isotropic), Fraction(0))


def nu_iso_fast(d: int) -> Fraction:
    out = Fraction(1)
    for p, k in _factor(d):
        out *= nu_iso_local(p, k)
    return out


def iso_mass_sum(X: int, points: int = 10, pmax: int = 10 ** 5) -> CountReport:
    """sum_{d <= X} d nu^iso(d) against (zeta(2) zeta(3) / 2) varpi X / sqrt(log X).

    nu^iso(d) = nu^iso(1) nu~iso(d), with nu~iso built from its local factors.
    """
    grid = _grid(X, points)
    ensure_sieve(X + 1)
    acc = mpmath.mpf(0)
    sums = []
    gi = 0
    for d in range(1, X + 1):
        v = d * nu_iso_fast(d)
        acc += mpmath.mpf(v.numerator) / v.denominator
        while gi < len(grid) and grid[gi] == d:
            sums.append(acc)
            gi += 1
    w = varpi(pmax).value
    base = 2 * mpmath.zeta(2) * mpmath.mpf(nu_iso_one().numerator) / nu_iso_one().denominator
    ref_c = mpmath.zeta(2) * mpmath.zeta(3) / 2 * w
    values = [float(base * s) for s in sums]
    ref = [float(ref_c * x / mpmath.sqrt(mpmath.log(x))) for x in grid]
    return CountReport("iso_mass", grid, values, ref,
                       extra={"ratio": [v / r for v, r in zip(values, ref)],
                              "nu_iso_1": float(base)})
