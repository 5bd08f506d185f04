"""Euler factors A_p(s), the Dirichlet series I(s), K(s) and the density constant varpi.

Infinite products are split at pmax. The tail is handled by expanding
log(factor) in powers of p^-sigma, summing each power with the prime zeta
function, and bounding what is left over explicitly. Every real result carries
an absolute error bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
import sympy

from .mass import nu_iso_local

DEFAULT_DPS = 64


@dataclass(frozen=True)
class Real:
    """A real number together with an absolute error bound."""
    value: mpmath.mpf
    error: mpmath.mpf

    def __float__(self) -> float:
        return float(self.value)

    def as_dict(self, digits: int = 20) -> dict:
        return {"value": mpmath.nstr(self.value, digits), "error": mpmath.nstr(self.error, 3)}


@dataclass(frozen=True)
class EulerFactorEval:
    p: int
    s: object
    value: mpmath.mpf
    error: mpmath.mpf = mpmath.mpf(0)


def _mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def A_rational(p: int, s: int) -> Fraction:
    """A_p(s) exactly, for integer s."""
    x = Fraction(1, p ** s) if s >= 0 else Fraction(p ** -s)
    if p == 2:
        return 1 + x / 3 - x * x / 2
    return 1 + x / 2 - x / (2 * p) - x * x / p


def euler_factor_A(p: int, s) -> EulerFactorEval:
    s_ = _mp(s)
    x = mpmath.power(p, -s_)
    if p == 2:
        v = 1 + x / 3 - x * x / 2
    else:
        v = 1 + x / 2 - x / (2 * p) - x * x / p
    return EulerFactorEval(p, s, v)


def I_p_closed(p: int, s) -> mpmath.mpf:
    """Euler factor of I at p from the closed form."""
    s_ = _mp(s)
    q = mpmath.mpf(p)
    num = 1 - q ** (-3 * (s_ + 1))
    den = (1 - q ** (-(s_ + 1))) * (1 - q ** (-2 * s_)) * (1 - q ** (-2 * s_ - 1))
    return num / den * euler_factor_A(p, s).value


def I_p_series(p: int, s, kmax: int = 30) -> mpmath.mpf:
    """Euler factor of I at p from local mass data: sum p^{k(1-s)} nu~iso(p^k)."""
    s_ = _mp(s)
    q = mpmath.mpf(p)
    return mpmath.fsum(q ** (k * (1 - s_)) * _mp(nu_iso_local(p, k)) for k in range(kmax + 1))


def A2_from_masses(s, kmax: int = 40) -> mpmath.mpf:
    """A_2(s) recovered from the 2-adic mass series by dividing out the zeta factors."""
    s_ = _mp(s)
    two = mpmath.mpf(2)
    zeta_part = (1 - two ** (-3 * (s_ + 1))) / (
        (1 - two ** (-(s_ + 1))) * (1 - two ** (-2 * s_)) * (1 - two ** (-2 * s_ - 1)))
    return I_p_series(2, s, kmax) / zeta_part


# ---------------------------------------------------------------- primes and prime sums

@lru_cache(maxsize=8)
def _primes(pmax: int) -> tuple[int, ...]:
    return tuple(int(p) for p in sympy.sieve.primerange(2, pmax + 1))


def _prime_tail(sigma, pmax: int) -> mpmath.mpf:
    """sum over primes p > pmax of p^-sigma (sigma > 1)."""
    sigma = _mp(sigma)
    head = mpmath.fsum(mpmath.power(p, -sigma) for p in _primes(pmax))
    return mpmath.primezeta(sigma) - head


def _int_tail(sigma, pmax: int) -> mpmath.mpf:
    """Upper bound for sum over integers n > pmax of n^-sigma."""
    sigma = _mp(sigma)
    return mpmath.power(pmax, 1 - sigma) / (sigma - 1)


def _check(pmax: int):
    if pmax < 2:
        raise ValueError("pmax must be at least 2")


# ---------------------------------------------------------------- I(s) and K(s)

def _tail_terms_A(s):
    """log A_p(s) = sum c p^-sigma + R with |R| <= p^{-3s} / (3 (1 - p^-s)), odd p.

    With y = A_p - 1 = x/2 - x/(2p) - x^2/p and x = p^-s we use
    log(1 + y) = y - y^2/2 + R and |y| <= x.
    """
    y = [(Fraction(1, 2), s), (Fraction(-1, 2), s + 1), (Fraction(-1), 2 * s + 1)]
    terms = list(y)
    for c1, e1 in y:
        for c2, e2 in y:
            terms.append((-c1 * c2 / 2, e1 + e2))
    return terms


def _collect(terms):
    out: dict = {}
    for c, e in terms:
        key = mpmath.nstr(_mp(e), 30)
        c0, e0 = out.get(key, (Fraction(0), e))
        out[key] = (c0 + c, e0)
    return [(c, e) for c, e in out.values() if c != 0]


def dirichlet_I(s, pmax: int = 10 ** 5, dps: int = DEFAULT_DPS) -> Real:
    """I(s) = zeta(s+1) zeta(2s) zeta(2s+1) / zeta(3s+3) * prod_p A_p(s), for s > 1.

    For 1/2 < s <= 1 the product of the A_p diverges (A_p - 1 ~ p^-s / 2);
    use K(s) there.
    """
    _check(pmax)
    with mpmath.workdps(dps):
        s_ = _mp(s)
        if s_ <= 1:
            raise ValueError("divergent: the product of A_p(s) needs s > 1")
        z = mpmath.zeta(s_ + 1) * mpmath.zeta(2 * s_) * mpmath.zeta(2 * s_ + 1) / mpmath.zeta(3 * s_ + 3)
        head = mpmath.fprod(euler_factor_A(p, s_).value for p in _primes(pmax))
        logt, err = _expanded_tail(_collect(_tail_terms_A(s_)), s_, pmax)
        val = z * head * mpmath.exp(logt)
        return Real(+val, abs(val) * (mpmath.exp(err) - 1))


def _expanded_tail(terms, s_, pmax):
    logt = mpmath.fsum(_mp(c) * _prime_tail(e, pmax) for c, e in terms)
    x0 = mpmath.power(pmax, -s_)
    err = _int_tail(3 * s_, pmax) / (3 * (1 - x0))
    return logt, err


def K(s, pmax: int = 10 ** 5, dps: int = DEFAULT_DPS) -> Real:
    """K(s) = I(s) / zeta(s)^(1/2), regular for s > 1/2."""
    _check(pmax)
    with mpmath.workdps(dps):
        s_ = _mp(s)
        if s_ <= mpmath.mpf(1) / 2:
            raise ValueError("divergent: K(s) needs s > 1/2")
        two = mpmath.mpf(2)
        x2 = two ** -s_
        lead = (1 + x2 / 3 - x2 * x2 / 2) / (1 + x2 / 4 - x2 * x2 / 2)
        z = mpmath.zeta(s_ + 1) * mpmath.zeta(2 * s_) * mpmath.zeta(2 * s_ + 1) / mpmath.zeta(3 * s_ + 3)

        def factor(p):
            x = mpmath.power(p, -s_)
            return (1 + x / 2 - x / (2 * p) - x * x / p) * mpmath.sqrt(1 - x)

        head = mpmath.fprod(factor(p) for p in _primes(pmax))
        # log of the factor: terms of log A_p(s) plus (1/2) log(1 - x) = -x/2 - x^2/4 - ...
        terms = _tail_terms_A(s_) + [(Fraction(-1, 2), s_), (Fraction(-1, 4), 2 * s_)]
        logt, err = _expanded_tail(_collect(terms), s_, pmax)
        # (1/2) |sum_{k>=3} x^k / k| <= x^3 / (6 (1 - x))
        x0 = mpmath.power(pmax, -s_)
        err += _int_tail(3 * s_, pmax) / (6 * (1 - x0))
        val = lead * z * head * mpmath.exp(logt)
        return Real(+val, abs(val) * (mpmath.exp(err) - 1))


# ---------------------------------------------------------------- products in u = 1/p

_u = sympy.Symbol("u")


def _g_expr():
    # [1 - p / (2 (p+1)^2)] (1 - 1/p)^(-1/2)
    return (1 - _u / (2 * (1 + _u) ** 2)) * (1 - _u) ** sympy.Rational(-1, 2)


def _mu_expr():
    return (1 - _u ** 6) * _g_expr()


def _sf_expr():
    return (1 + 2 * _u) * (1 - _u) ** 2


@dataclass(frozen=True)
class _USeries:
    coeffs: tuple[Fraction, ...]   # log f = sum_{k >= 1} c_k u^k + R
    radius: mpmath.mpf
    bound: mpmath.mpf              # max |log f| on |u| = radius


@lru_cache(maxsize=None)
def _useries(name: str, order: int = 6) -> _USeries:
    expr = {"g": _g_expr, "mu": _mu_expr, "sf": _sf_expr}[name]()
    ser = sympy.series(sympy.log(expr), _u, 0, order + 1).removeO()
    poly = sympy.Poly(ser, _u)
    coeffs = [Fraction(0)] * (order + 1)
    for (k,), c in poly.terms():
        coeffs[k] = Fraction(int(sympy.numer(c)), int(sympy.denom(c)))
    if coeffs[0] != 0 or coeffs[1] != 0:
        raise ArithmeticError("factor is not 1 + O(p^-2)")
    # Cauchy bound for the coefficients; the circle is sampled densely and padded
    f = sympy.lambdify(_u, expr, "numpy")
    r = 1 / 3
    z = r * np.exp(2j * np.pi * np.arange(4096) / 4096)
    vals = np.log(f(z).astype(complex))
    bound = mpmath.mpf(float(np.abs(vals).max()) * 1.25)
    return _USeries(tuple(coeffs), mpmath.mpf(1) / 3, bound)


def _u_product(name: str, factor, pmax: int, dps: int) -> tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf]:
    """(head product over p <= pmax, corrected total, absolute error)."""
    _check(pmax)
    ser = _useries(name)
    order = len(ser.coeffs) - 1
    head = mpmath.fprod(factor(p) for p in _primes(pmax))
    logt = mpmath.fsum(_mp(c) * _prime_tail(k, pmax) for k, c in enumerate(ser.coeffs) if k >= 2 and c)
    # |R(u)| <= M (u/r)^(order+1) / (1 - u/r) for u <= 1/pmax < r
    q = 1 / (ser.radius * pmax)
    err = ser.bound * ser.radius ** -(order + 1) / (1 - q) * _int_tail(order + 1, pmax)
    total = head * mpmath.exp(logt)
    return head, total, abs(total) * (mpmath.exp(err) - 1)


def mu_p(p: int) -> Fraction:
    """Probability that a symmetric Z_p matrix is primitive and isotropic."""
    z6 = 1 - Fraction(1, p ** 6)
    if p == 2:
        return Fraction(25, 36) * z6
    return z6 * (1 - Fraction(p, 2 * (p + 1) ** 2))


def K_at_1(pmax: int = 10 ** 5, dps: int = DEFAULT_DPS) -> Real:
    with mpmath.workdps(dps):
        def g(p):
            q = mpmath.mpf(p)
            return (1 - q / (2 * (q + 1) ** 2)) / mpmath.sqrt(1 - 1 / q)
        _, total, err = _u_product("g", g, pmax, dps)
        lead = mpmath.mpf(25) / 24 * mpmath.zeta(3) / mpmath.zeta(6)
        return Real(+(lead * total), abs(lead) * err)


@dataclass(frozen=True)
class VarpiResult:
    value: mpmath.mpf
    error: mpmath.mpf
    partial: mpmath.mpf
    pmax: int

    def as_dict(self) -> dict:
        return {"varpi": mpmath.nstr(self.value, 30), "error": mpmath.nstr(self.error, 3),
                "partial_product": mpmath.nstr(self.partial, 30), "pmax": self.pmax}


def varpi(pmax: int = 10 ** 5, dps: int = DEFAULT_DPS) -> VarpiResult:
    """(2 / Gamma(1/2)) prod_p mu_p (1 - 1/p)^(-1/2)."""
    with mpmath.workdps(dps):
        def f(p):
            return _mp(mu_p(p)) / mpmath.sqrt(1 - mpmath.mpf(1) / p)
        head, total, err = _u_product("mu", f, pmax, dps)
        c = 2 / mpmath.gamma(mpmath.mpf(1) / 2)
        return VarpiResult(+(c * total), c * err, +(c * head), pmax)


def squarefree_divisor_constant(pmax: int = 10 ** 5, dps: int = DEFAULT_DPS) -> Real:
    """c = prod_p (1 + 2/p)(1 - 1/p)^2, the constant in sum over squarefree d of 2^omega(d)."""
    with mpmath.workdps(dps):
        def f(p):
            q = mpmath.mpf(p)
            return (1 + 2 / q) * (1 - 1 / q) ** 2
        _, total, err = _u_product("sf", f, pmax, dps)
        return Real(+total, err)
