"""Genera of primitive indefinite ternary forms, packets, and spinor class counts.

A genus of determinant d > 0 is a choice of local class at every prime
p | 2d whose Hasse invariants multiply to 1 (the real place contributes
c_inf = +1 for signature (1, 2)). By Eichler each spinor genus of an
indefinite ternary is a single class, so h(G) is the number of spinor
genera, computed as a quotient of prod_q Sq*(Z_q) by spinor operators built
from the automorphous numbers at each prime.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import isqrt
from typing import Iterable, Mapping, Sequence

import numpy as np
from sympy import factorint

from .forms import TernaryForm, determinant, sign_normalize, signature
from .local import (LocalClass, Piece, canonical_symbol, enumerate_local_classes)
from .padic import INFINITY, least_nonresidue, legendre, rank_f2


# ---------------------------------------------------------------- d = r * s

_spf = np.zeros(0, dtype=np.int32)


def ensure_sieve(n: int) -> None:
    """Smallest-prime-factor table up to n, used by _factor when large enough."""
    global _spf
    if len(_spf) > n:
        return
    spf = np.zeros(n + 1, dtype=np.int32)
    for p in range(2, isqrt(n) + 1):
        if spf[p] == 0:
            block = spf[p * p::p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest
    _spf = spf


@lru_cache(maxsize=1 << 16)
def _factor(d: int) -> tuple[tuple[int, int], ...]:
    if 1 < d < len(_spf):
        out: dict[int, int] = {}
        while d > 1:
            p = int(_spf[d])
            d //= p
            out[p] = out.get(p, 0) + 1
        return tuple(sorted(out.items()))
    return tuple(sorted(factorint(d).items()))


def factor_rs(d: int) -> tuple[int, int]:
    """Split d = r(d) s(d): r collects 2 and every p with p^2 | d."""
    if d <= 0:
        raise ValueError("d must be positive")
    r = 1
    for p, k in _factor(d):
        if p == 2 or k >= 2:
            r *= p ** k
    return r, d // r


def root_primes(d: int) -> tuple[int, ...]:
    return tuple(sorted({2} | {p for p, k in _factor(abs(d)) if k >= 2}))


def P_d(d: int) -> int:
    out = 1
    for p, k in _factor(abs(d)):
        if p != 2 and k >= 2:
            out *= p
    return out


def omega(d: int) -> int:
    return len(_factor(d))


def omega3(d: int) -> int:
    """Number of odd primes p with p^3 | d."""
    return sum(1 for p, k in _factor(d) if p != 2 and k >= 3)


# ---------------------------------------------------------------- packets

def _restrict(locals_: Mapping[int, LocalClass], primes: Iterable[int]) -> dict[int, LocalClass]:
    return {p: locals_[p] for p in primes if p in locals_}


@dataclass(frozen=True)
class Packet:
    """A finite family of local classes indexed by a support containing 2."""
    items: tuple[tuple[int, LocalClass], ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(sorted(self.items, key=lambda kv: kv[0])))
        if 2 not in self.locals:
            raise ValueError("packet support must contain 2")

    @classmethod
    def of(cls, locals_: Mapping[int, LocalClass]) -> "Packet":
        return cls(tuple(locals_.items()))

    @property
    def locals(self) -> dict[int, LocalClass]:
        return dict(self.items)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(p for p, _ in self.items)

    @property
    def determinant(self) -> int:
        out = 1
        for p, c in self.items:
            out *= p ** c.valuation
        return out

    def restrict(self, primes: Iterable[int]) -> "Packet":
        return Packet.of(_restrict(self.locals, primes))

    def text(self) -> str:
        return "; ".join(f"{p}: {c.text()}" for p, c in self.items)


def root_packet(x) -> Packet:
    """Restriction of a genus or packet to {2} and the primes p with p^2 | D."""
    if isinstance(x, GenusSymbol):
        return Packet.of(_restrict(x.locals, root_primes(x.determinant)))
    return x.restrict(root_primes(x.determinant))


def packet_leq(h: Packet, other) -> bool:
    """h <= other: same root packet and h is a restriction of other."""
    locs = other.locals
    if not h.support <= set(locs):
        return False
    if root_packet(h) != root_packet(other):
        return False
    return all(locs[p] == c for p, c in h.items)


# ---------------------------------------------------------------- genera

@dataclass(frozen=True)
class GenusSymbol:
    determinant: int
    items: tuple[tuple[int, LocalClass], ...]

    @property
    def locals(self) -> dict[int, LocalClass]:
        return dict(self.items)

    @property
    def isotropic(self) -> bool:
        return all(c.isotropic for _, c in self.items)

    def text(self) -> str:
        return "; ".join(f"{p}: {c.text()}" for p, c in self.items)

    def __str__(self) -> str:
        return f"d={self.determinant} {self.text()}"


def local_options(d: int) -> list[tuple[int, tuple[LocalClass, ...]]]:
    out = []
    primes = {2} | {p for p, _ in _factor(d)}
    for p in sorted(primes):
        k = 0
        m = d
        while m % p == 0:
            m //= p
            k += 1
        out.append((p, enumerate_local_classes(p, k, m)))
    return out


def enumerate_genera(d: int) -> list[GenusSymbol]:
    """All genera of primitive indefinite forms of determinant d (sign-normalized)."""
    if d <= 0:
        raise ValueError("d must be positive")
    opts = local_options(d)
    primes = [p for p, _ in opts]
    out = []
    for combo in product(*(cs for _, cs in opts)):
        sign = 1
        for c in combo:
            sign *= c.hasse
        if sign == 1:
            out.append(GenusSymbol(d, tuple(zip(primes, combo))))
    return out


def genus_count(d: int) -> int:
    """g(d) without listing: half of (all tuples + signed tuples)."""
    total = signed = 1
    for _, cs in local_options(d):
        plus = sum(1 for c in cs if c.hasse == 1)
        total *= len(cs)
        signed *= 2 * plus - len(cs)
    return (total + signed) // 2


def genus_of(f: TernaryForm) -> GenusSymbol:
    g, _ = sign_normalize(f)
    if not signature(g).indefinite:
        raise ValueError("form is not indefinite")
    d = determinant(g)
    primes = sorted({2} | {p for p, _ in _factor(d)})
    return GenusSymbol(d, tuple((p, canonical_symbol(g, p)) for p in primes))


# ---------------------------------------------------------------- automorphous numbers
#
# Elements of Sq*(Q_p) are pairs (alpha, u): p^alpha times a unit u, with u a
# residue mod 8 at p = 2 and u in {1, r} at odd p. At the real place the
# pair is (1, 1) for -1 and (0, 1) for +1.

SqElt = tuple[int, int]


def _odd_classes(pieces: Sequence[Piece], p: int) -> list[SqElt]:
    r = least_nonresidue(p)
    return [(t % 2, 1 if legendre(u, p) == 1 else r) for t, _, u in pieces]


def _mul(a: SqElt, b: SqElt, p: int) -> SqElt:
    if p == 2:
        return ((a[0] + b[0]) % 2, a[1] * b[1] % 8)
    alpha = (a[0] + b[0]) % 2
    if p == INFINITY:
        return (alpha, 1)
    unit = a[1] * b[1] % p
    r = least_nonresidue(p)
    return (alpha, 1 if legendre(unit, p) == 1 else r)


@lru_cache(maxsize=None)
def automorphous_odd(p: int, pieces: tuple[Piece, ...]) -> tuple[SqElt, ...]:
    """Generators of A_p from the diagonal entries a_i p^{t_i} (odd p)."""
    cls = _odd_classes(pieces, p)
    gens = [_mul(cls[i], cls[0], p) for i in range(1, len(cls))]
    scales = [t for t, _, _ in pieces]
    if len(set(scales)) < len(scales):
        r = least_nonresidue(p)
        gens.append((0, r))
    return tuple(g for g in gens if g != (0, 1))


def _block_values(kind: str, unit: int) -> frozenset[int]:
    """Values mod 16 of one block on primitive vectors."""
    if kind == "d":
        return frozenset({unit % 16, 9 * unit % 16})
    out = set()
    for x in range(16):
        for y in range(16):
            if x % 2 == 0 and y % 2 == 0:
                continue
            if unit == 7:
                out.add(2 * x * y % 16)
            else:
                out.add(2 * (x * x + x * y + y * y) % 16)
    return frozenset(out)


@lru_cache(maxsize=None)
def reflection_norms_2(pieces: tuple[Piece, ...]) -> frozenset[SqElt]:
    """Square classes Q(v) over vectors v whose reflection preserves the Z_2-lattice.

    With v = sum 2^{e_j} w_j over the Jordan blocks (w_j primitive), the
    reflection is integral iff v_2(Q(v)) <= 1 + m with m = min_j (s_j + e_j),
    and Q(v) mod 2^{m+4} fixes its square class; terms with s_j + 2e_j >= m+4
    vanish at that precision, so only small e_j matter.
    """
    blocks = [(t, _block_values(k, u)) for t, k, u in pieces]
    top = max(t for t, _ in blocks)
    out: set[SqElt] = set()
    for m in range(top + 1):
        mod = 1 << (m + 4)
        per_block = []
        for s, vals in blocks:
            opts = [(False, None)]  # v_j = 0
            e = max(0, m - s)
            while True:
                n = s + 2 * e
                attains = s + e == m
                if n >= m + 4:
                    if attains:
                        opts.append((True, None))
                    break
                opts.append((attains, frozenset((v << n) % mod for v in vals)))
                e += 1
            per_block.append(opts)
        for choice in product(*per_block):
            if not any(a for a, _ in choice):
                continue
            sums = {0}
            for _, vals in choice:
                if vals is not None:
                    sums = {(a + b) % mod for a in sums for b in vals}
            for q in sums:
                if q == 0:
                    continue
                k = (q & -q).bit_length() - 1
                if k <= m + 1:
                    out.add((k % 2, (q >> k) % 8))
    return frozenset(out)


@lru_cache(maxsize=None)
def automorphous_2(pieces: tuple[Piece, ...]) -> tuple[SqElt, ...]:
    """Generators of A_2 = sn(SO), from products of two reflection norms."""
    norms = sorted(reflection_norms_2(pieces))
    base = norms[0]
    gens = {_mul(n, base, 2) for n in norms[1:]}
    gens.discard((0, 1))
    return tuple(sorted(gens))


def automorphous_group(c: LocalClass | None, p: int) -> tuple[SqElt, ...]:
    """Generators of the group of p-adically automorphous numbers.

    ``c`` is ignored at the real place, where signature (1, 2) gives -1.
    """
    if p == INFINITY:
        return ((1, 1),)
    if p == 2:
        return automorphous_2(c.splitting.pieces)
    return automorphous_odd(p, c.splitting.pieces)


# ---------------------------------------------------------------- spinor kernel

def _bits2(u: int) -> int:
    u %= 8
    return (1 if u % 4 == 3 else 0) | ((1 if u in (3, 5) else 0) << 1)


class SpinorLattice:
    """prod_{q in primes} Sq*(Z_q) as F_2 bitmasks: two bits at 2, one per odd q."""

    def __init__(self, odd_primes: Sequence[int]):
        self.odd = tuple(sorted(odd_primes))
        self.dim = 2 + len(self.odd)

    def unit_vector(self, n: int, skip: int | None = None) -> int:
        """Image of an integer coprime to every coordinate prime except ``skip``."""
        out = _bits2(n) if skip != 2 else 0
        for i, q in enumerate(self.odd):
            if q != skip and legendre(n, q) == -1:
                out |= 1 << (2 + i)
        return out

    def delta(self, p: int, a: SqElt) -> int:
        alpha, u = a
        if p == INFINITY:
            return self.unit_vector(-1) if alpha else 0
        out = self.unit_vector(p ** alpha, skip=p)
        if p == 2:
            out |= _bits2(u)
        elif p in self.odd and legendre(u, p) == -1:
            out |= 1 << (2 + self.odd.index(p))
        return out


@dataclass(frozen=True)
class SpinorKernelData:
    modulus: int
    dim: int
    generators: tuple[int, ...]

    @property
    def rank(self) -> int:
        return rank_f2(self.generators)

    @property
    def class_count(self) -> int:
        return 2 ** (self.dim - self.rank)


def spinor_kernel(g: GenusSymbol) -> SpinorKernelData:
    """Generators of the spinor-operator subgroup over the primes -1, 2 and p | d."""
    locs = g.locals
    odd = [p for p in locs if p != 2]
    lat = SpinorLattice(odd)
    gens = [lat.delta(INFINITY, a) for a in automorphous_group(None, INFINITY)]
    for p, c in sorted(locs.items()):
        for a in automorphous_group(c, p):
            gens.append(lat.delta(p, a))
    modulus = 8
    for p in odd:
        modulus *= p
    return SpinorKernelData(modulus, lat.dim, tuple(gens))


def class_count(g: GenusSymbol) -> int:
    """h(G), the number of classes in the genus."""
    return spinor_kernel(g).class_count


def class_number(d: int) -> int:
    """h(d): primitive indefinite classes of determinant d."""
    return sum(class_count(g) for g in enumerate_genera(d))


# ---------------------------------------------------------------- fast totals

def _spinor_class_count(locs: Mapping[int, LocalClass]) -> int:
    return spinor_kernel(GenusSymbol(0, tuple(sorted(locs.items())))).class_count


def genus_and_class_number(d: int) -> tuple[int, int]:
    """(g(d), h(d)) by summing over root packets.

    h(G) only depends on the root packet and on s(d), and every root packet
    extends to the s-primes in a fixed number of Hasse-consistent ways.
    """
    opts = local_options(d)
    roots = set(root_primes(d))
    root_opts = [(p, cs) for p, cs in opts if p in roots]
    tame = [(p, cs) for p, cs in opts if p not in roots]
    tame_total = tame_signed = 1
    for _, cs in tame:
        plus = sum(1 for c in cs if c.hasse == 1)
        tame_total *= len(cs)
        tame_signed *= 2 * plus - len(cs)
    fixed = {p: cs[0] for p, cs in tame}
    g = h = 0
    for combo in product(*(cs for _, cs in root_opts)):
        sign = 1
        for c in combo:
            sign *= c.hasse
        n = (tame_total + sign * tame_signed) // 2
        if not n:
            continue
        locs = dict(fixed)
        locs.update(zip((p for p, _ in root_opts), combo))
        g += n
        h += n * _spinor_class_count(locs)
    return g, h
