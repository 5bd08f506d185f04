"""p-adic valuations, square classes, Legendre and Hilbert symbols.

The real place is treated as the "prime" -1 throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Union[int, Fraction]

INFINITY = -1


def valuation(n: Rational, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    if isinstance(n, Fraction):
        return valuation(n.numerator, p) - valuation(n.denominator, p)
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def split(n: int, p: int) -> tuple[int, int]:
    """n = p^k * u with p not dividing u; returns (k, u)."""
    if n == 0:
        raise ValueError("valuation of zero")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    r = 2
    while legendre(r, p) != -1:
        r += 1
    return r


def _to_int_class(a: Rational) -> int:
    # a and a * den^2 share a square class
    if isinstance(a, Fraction):
        return a.numerator * a.denominator
    return int(a)


def hilbert_symbol(a: Rational, b: Rational, p: int) -> int:
    a = _to_int_class(a)
    b = _to_int_class(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol of zero")
    if p == INFINITY:
        return -1 if (a < 0 and b < 0) else 1
    al, u = split(a, p)
    be, v = split(b, p)
    if p == 2:
        eps_u = ((u - 1) // 2) % 2
        eps_v = ((v - 1) // 2) % 2
        om_u = ((u * u - 1) // 8) % 2
        om_v = ((v * v - 1) // 8) % 2
        e = eps_u * eps_v + al * om_v + be * om_u
        return -1 if e % 2 else 1
    s = 1
    if (al * be * (p - 1) // 2) % 2:
        s = -s
    if be % 2 and legendre(u, p) == -1:
        s = -s
    if al % 2 and legendre(v, p) == -1:
        s = -s
    return s


@dataclass(frozen=True, order=True)
class SquareClass:
    """Element of Sq*(Q_p): a unit class representative and the parity of v_p."""
    prime: int
    value: int
    parity: int = 0

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if other.prime != self.prime:
            raise ValueError("square classes at different primes")
        return sqclass(self.as_int() * other.as_int(), self.prime)

    @property
    def is_unit(self) -> bool:
        return self.parity == 0

    def as_int(self) -> int:
        if self.prime == INFINITY:
            return self.value
        return self.value * self.prime ** self.parity


def unit_class(u: int, p: int) -> int:
    """Canonical representative of the unit square class of u at p."""
    if p == INFINITY:
        return 1 if u > 0 else -1
    if p == 2:
        return u % 8
    return 1 if legendre(u, p) == 1 else least_nonresidue(p)


def sqclass(n: Rational, p: int) -> SquareClass:
    n = _to_int_class(n)
    if n == 0:
        raise ValueError("square class of zero")
    if p == INFINITY:
        return SquareClass(p, 1 if n > 0 else -1, 0)
    k, u = split(n, p)
    return SquareClass(p, unit_class(u, p), k % 2)


def is_square(n: Rational, p: int) -> bool:
    c = sqclass(n, p)
    return c.parity == 0 and c.value == 1


def unit_residue(x: Fraction, p: int, k: int) -> int:
    """Residue mod p^k of a p-adic unit given as a rational with unit denominator."""
    m = p ** k
    return (x.numerator * pow(x.denominator, -1, m)) % m


class ResidueRing:
    """Z/PZ for P = 8 * (odd squarefree), with Sq*(Z/PZ) written additively as F_2 bits.

    The component at 2 contributes two bits ([u = 3 mod 4], [u = +-3 mod 8]) and
    each odd prime q | P one bit (Legendre symbol).
    """

    def __init__(self, modulus: int, odd_primes: tuple[int, ...] = ()):
        self.modulus = modulus
        self.odd_primes = tuple(sorted(odd_primes))

    @property
    def dim(self) -> int:
        return 2 + len(self.odd_primes)

    @staticmethod
    def bits2(u: int) -> tuple[int, int]:
        u %= 8
        return (1 if u % 4 == 3 else 0, 1 if u in (3, 5) else 0)

    def vector(self, n: int) -> int:
        """Bitmask of the unit n (coprime to P) in Sq*(Z/PZ)."""
        b0, b1 = self.bits2(n)
        out = b0 | (b1 << 1)
        for i, q in enumerate(self.odd_primes):
            if legendre(n, q) == -1:
                out |= 1 << (2 + i)
        return out


def rank_f2(vectors) -> int:
    """Rank over F_2 of integer bitmasks."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def represents_locally(f, n: int, p: int) -> bool:
    """Whether the nonzero integer n is represented by f over Z_p."""
    if n == 0:
        raise ValueError("use isotropy test")
    from .local import jordan_split
    return jordan_split(f, p).represents(n)
