"""Local p-masses (Conway-Sloane), Siegel masses and the isotropic mass function.

m_p is computed from the species of the Jordan constituents:
    m_p = prod_f M(f) * prod_{i<j} (q_j/q_i)^{n_i n_j / 2} * (type factor at 2)
with M(0) = 1, M(+-n) = (2 prod_{k<s} (1 - p^{-2k}) (1 -+ p^{-s} if n even))^{-1}
and s = ceil(n/2).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .local import (TYPE_I, LocalClass, Piece, constituents_2, enumerate_local_classes)
from .padic import legendre


def species_mass(species: int, p: int) -> Fraction:
    if species == 0:
        return Fraction(1)
    n = abs(species)
    s = (n + 1) // 2
    mp = Fraction(2)
    for k in range(1, s):
        mp *= 1 - Fraction(1, p ** (2 * k))
    if n % 2 == 0:
        sign = 1 if species > 0 else -1
        mp *= 1 - sign * Fraction(1, p ** s)
    return 1 / mp


def _cross_exponent2(dims: Sequence[tuple[int, int]]) -> Fraction:
    total = Fraction(0)
    for i, (si, ni) in enumerate(dims):
        for sj, nj in dims[i + 1:]:
            total += Fraction((sj - si) * ni * nj, 2)
    return total


def _odd_mass(pieces: Sequence[Piece], p: int) -> Fraction:
    blocks: dict[int, list[int]] = {}
    for t, _, u in pieces:
        blocks.setdefault(t, []).append(u)
    m = Fraction(1)
    for t, units in blocks.items():
        n = len(units)
        if n % 2:
            sp = n
        else:
            det = 1
            for u in units:
                det *= u
            sp = n if legendre((-1) ** (n // 2) * det, p) == 1 else -n
        m *= species_mass(sp, p)
    e = _cross_exponent2([(t, len(u)) for t, u in sorted(blocks.items())])
    assert e.denominator == 1
    return m * Fraction(p) ** int(e)


def _two_mass(pieces: Sequence[Piece]) -> Fraction:
    cons, odds = constituents_2(pieces)
    info = {c.scale: (c, o) for c, o in zip(cons, odds)}
    lo, hi = cons[0].scale - 1, cons[-1].scale + 1

    def is_odd(s: int) -> bool:
        return s in info and info[s][0].typ == TYPE_I

    m = Fraction(1)
    n_ii = 0
    n_typeii = 0
    for s in range(lo, hi + 1):
        bound = is_odd(s - 1) or is_odd(s + 1)
        if s not in info:
            m *= species_mass(1 if bound else 0, 2)
            continue
        c, odd = info[s]
        n = c.dim
        if c.typ != TYPE_I:
            n_typeii += n
        if is_odd(s) and is_odd(s + 1):
            n_ii += 1
        t = n // 2 if (c.typ != TYPE_I or n % 2) else n // 2 - 1
        if bound:
            sp = 2 * t + 1
        else:
            octane = (odd + (4 if c.eps < 0 else 0)) % 8
            if octane in (0, 1, 7):
                sp = 2 * t
            elif octane in (3, 4, 5):
                sp = -2 * t
            else:
                sp = 2 * t + 1
        m *= species_mass(sp, 2)
    e = _cross_exponent2([(c.scale, c.dim) for c in cons])
    m *= Fraction(2) ** e.numerator if e.denominator == 1 else _bad(e)
    return m * Fraction(2) ** (n_ii - n_typeii)


def _bad(e):
    raise ArithmeticError(f"non-integral cross exponent {e}")


@lru_cache(maxsize=None)
def _pieces_mass(p: int, pieces: tuple[Piece, ...]) -> Fraction:
    return _two_mass(pieces) if p == 2 else _odd_mass(pieces, p)


def local_mass(c: LocalClass) -> Fraction:
    """Exact p-mass m_p of a local class."""
    return _pieces_mass(c.p, c.splitting.pieces)


def normalized_mass2(c: LocalClass) -> Fraction:
    """64 m_2 / 2^{u+v}, the quantity tabulated for 2-adic classes."""
    u, v = c.uv
    return local_mass(c) * 64 / Fraction(2) ** (u + v)


def delta(c: LocalClass) -> Fraction:
    return local_mass(c) / Fraction(c.p) ** (2 * c.valuation)


# ---------------------------------------------------------------- genus masses

@dataclass(frozen=True)
class SiegelMass:
    """nu(G) = 2 * finite * prod_{p not dividing 2d} (1 - p^-2)^-1.

    ``finite`` is the exact product of 2*delta_p over p | 2d; ``primes`` lists
    those p, so the tail is zeta(2) * prod_{p in primes} (1 - p^-2).
    """
    finite: Fraction
    primes: tuple[int, ...]

    def normalized(self) -> Fraction:
        """nu(G) / (2 zeta(2)), an exact rational."""
        out = self.finite
        for p in self.primes:
            out *= 1 - Fraction(1, p * p)
        return out

    def value(self, dps: int = 30):
        import mpmath
        with mpmath.workdps(dps):
            return 2 * mpmath.zeta(2) * mpmath.mpf(self.normalized().numerator) / self.normalized().denominator


def siegel_mass(genus) -> SiegelMass:
    fin = Fraction(2)
    for p, c in sorted(genus.locals.items()):
        fin *= 2 * delta(c)
    return SiegelMass(fin, tuple(sorted(genus.locals)))


@lru_cache(maxsize=None)
def iso_mass_sum(p: int, k: int) -> Fraction:
    """Sum of m_p over isotropic classes of determinant p^k (unit class 1)."""
    return sum((local_mass(c) for c in enumerate_local_classes(p, k, 1) if c.isotropic), Fraction(0))


@lru_cache(maxsize=None)
def nu_iso_local(p: int, k: int) -> Fraction:
    """Local factor of the normalized isotropic mass at p^k."""
    return iso_mass_sum(p, k) / iso_mass_sum(p, 0) / Fraction(p) ** (2 * k)


def nu_iso(d: int) -> Fraction:
    """nu~iso(d) = nu^iso(d) / nu^iso(1), summed over the isotropic genera of d."""
    from .genus import enumerate_genera
    if d == 1:
        return Fraction(1)
    total = Fraction(0)
    for g in enumerate_genera(d):
        if all(c.isotropic for c in g.locals.values()):
            total += siegel_mass(g).normalized()
    base = Fraction(0)
    for g in enumerate_genera(1):
        if all(c.isotropic for c in g.locals.values()):
            base += siegel_mass(g).normalized()
    return total / base


def nu_iso_product(d: int) -> Fraction:
    """The same quantity from the local factors, assuming multiplicativity."""
    from sympy import factorint
    out = Fraction(1)
    for p, k in factorint(d).items():
        out *= nu_iso_local(p, k)
    return out
