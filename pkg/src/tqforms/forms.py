"""Integral ternary forms in the Gaussian (matrix-integral) convention.

A form is stored as its symmetric Gram matrix A, so F(x) = x^T A x and the
off-diagonal coefficient of x_i x_j in F is 2*a_ij.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Matrix = tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]


def _as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    m = tuple(tuple(int(v) for v in row) for row in rows)
    if len(m) != 3 or any(len(r) != 3 for r in m):
        raise ValueError("expected a 3x3 matrix")
    return m  # type: ignore[return-value]


def det3(m: Sequence[Sequence[int]]) -> int:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
                 for i in range(3))  # type: ignore[return-value]


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(a[j][i] for j in range(3)) for i in range(3))  # type: ignore[return-value]


@dataclass(frozen=True)
class Signature:
    pos: int
    neg: int
    zero: int

    @property
    def indefinite(self) -> bool:
        return self.zero == 0 and self.pos > 0 and self.neg > 0

    def __iter__(self):
        return iter((self.pos, self.neg, self.zero))


@dataclass(frozen=True)
class UnimodularMap:
    mat: Matrix

    def __post_init__(self):
        object.__setattr__(self, "mat", _as_matrix(self.mat))
        if det3(self.mat) not in (1, -1):
            raise ValueError("matrix is not unimodular")

    def __matmul__(self, other: "UnimodularMap") -> "UnimodularMap":
        return UnimodularMap(matmul(self.mat, other.mat))

    @classmethod
    def identity(cls) -> "UnimodularMap":
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "UnimodularMap":
        rows = [[0, 0, 0] for _ in range(3)]
        for j, i in enumerate(perm):
            rows[i][j] = 1
        return cls(rows)


@dataclass(frozen=True)
class TernaryForm:
    gram: Matrix

    def __post_init__(self):
        g = _as_matrix(self.gram)
        for i in range(3):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", g)

    @classmethod
    def from_coeffs(cls, f11: int, f22: int, f33: int, f12: int, f13: int, f23: int) -> "TernaryForm":
        return cls(((f11, f12, f13), (f12, f22, f23), (f13, f23, f33)))

    @classmethod
    def diagonal(cls, a: int, b: int, c: int) -> "TernaryForm":
        return cls.from_coeffs(a, b, c, 0, 0, 0)

    @classmethod
    def parse(cls, text: str) -> "TernaryForm":
        """Read the six-integer text format ``f11 f22 f33 f12 f13 f23``."""
        parts = text.replace(",", " ").split()
        if len(parts) != 6:
            raise ValueError(f"expected six integers, got {text!r}")
        return cls.from_coeffs(*(int(p) for p in parts))

    def coeffs(self) -> tuple[int, int, int, int, int, int]:
        g = self.gram
        return (g[0][0], g[1][1], g[2][2], g[0][1], g[0][2], g[1][2])

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.coeffs())

    def __neg__(self) -> "TernaryForm":
        return TernaryForm(tuple(tuple(-v for v in row) for row in self.gram))

    def scale(self, c: int) -> "TernaryForm":
        return TernaryForm(tuple(tuple(c * v for v in row) for row in self.gram))

    @property
    def det(self) -> int:
        return det3(self.gram)

    @property
    def is_primitive(self) -> bool:
        return content(self) == 1

    def __call__(self, x: Sequence[int]) -> int:
        return evaluate(self, x)


def determinant(f: TernaryForm) -> int:
    return det3(f.gram)


def content(f: TernaryForm) -> int:
    g = 0
    for row in f.gram:
        for v in row:
            g = gcd(g, v)
    if g == 0:
        raise ValueError("zero form")
    return g


def transform(f: TernaryForm, u: UnimodularMap) -> TernaryForm:
    return TernaryForm(matmul(matmul(transpose(u.mat), f.gram), u.mat))


def evaluate(f: TernaryForm, x: Sequence[int]) -> int:
    g = f.gram
    x0, x1, x2 = x
    return (g[0][0] * x0 * x0 + g[1][1] * x1 * x1 + g[2][2] * x2 * x2
            + 2 * (g[0][1] * x0 * x1 + g[0][2] * x0 * x2 + g[1][2] * x1 * x2))


def signature(f: TernaryForm) -> Signature:
    """Exact inertia by symmetric elimination over the rationals.

    A zero pivot with a nonzero off-diagonal entry is fixed by the congruence
    e_i -> e_i + e_j (or e_i - e_j), which makes the pivot nonzero.
    """
    m = [[Fraction(v) for v in row] for row in f.gram]
    n = 3
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j gives a_ii + 2a_ij + a_jj = 2a_ij != 0
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        a = m[piv][piv]
        if a > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            c = m[i][piv] / a
            if c:
                for k in range(n):
                    m[i][k] -= c * m[piv][k]
                for k in range(n):
                    m[k][i] -= c * m[k][piv]
    return Signature(pos, neg, n - pos - neg)


def sign_normalize(f: TernaryForm) -> tuple[TernaryForm, int]:
    """Return (g, s) with g = s*f and det(g) >= 0, s in {1, -1}."""
    if determinant(f) < 0:
        return -f, -1
    return f, 1


def is_indefinite(f: TernaryForm) -> bool:
    return signature(f).indefinite


def random_unimodular(rng, steps: int = 6, bound: int = 2) -> UnimodularMap:
    """Product of random elementary matrices and signed permutations."""
    m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(steps):
        i, j = rng.sample(range(3), 2)
        c = rng.randint(-bound, bound)
        for r in range(3):
            m[r][j] += c * m[r][i]
    perm = list(range(3))
    rng.shuffle(perm)
    p = UnimodularMap.permutation(perm).mat
    signs = [rng.choice((1, -1)) for _ in range(3)]
    out = matmul(m, p)
    out = tuple(tuple(out[r][c] * signs[c] for c in range(3)) for r in range(3))
    return UnimodularMap(out)
