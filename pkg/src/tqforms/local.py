"""Local (Z_p) classification of nonsingular ternary forms.

Odd primes are handled by diagonal Jordan splittings, whose scales, block
dimensions and block determinant classes form a complete invariant.

At p = 2 a Jordan constituent q^{eps n}_t is recorded together with its type
(I = odd, II = even). Equivalent splittings differ by oddity fusion (only the
total oddity of a compartment is an invariant) and sign walking along trains.
We close a symbol under these moves and keep the smallest element of the
orbit as its canonical form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .forms import TernaryForm, determinant, content
from .padic import (INFINITY, hilbert_symbol, least_nonresidue, legendre, split,
                    unit_residue)

# A piece of a Jordan splitting: (scale, kind, unit) where kind is "d" for a
# one-dimensional p^t<unit>, or "V" for 2^t V_1 (unit 7) / 2^t V_2 (unit 3).
Piece = tuple[int, str, int]

TYPE_I = 1
TYPE_II = 2


def _v(x: Fraction, p: int) -> int:
    if x == 0:
        return 10 ** 9
    n, d = x.numerator, x.denominator
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    while d % p == 0:
        d //= p
        k -= 1
    return k


def _split_pieces(gram, p: int) -> list[Piece]:
    m = [[Fraction(v) for v in row] for row in gram]
    basis = list(range(3))
    pieces: list[Piece] = []
    while basis:
        best = None
        for i in basis:
            for j in basis:
                if j < i:
                    continue
                val = _v(m[i][j], p)
                # prefer diagonal pivots at equal valuation
                key = (val, 0 if i == j else 1, i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        (val, offd, _, _), i, j = best
        if val >= 10 ** 9:
            raise ValueError("singular form")
        if not offd:
            a = m[i][i]
            t = _v(a, p)
            unit = a / Fraction(p) ** t if t >= 0 else a * Fraction(p) ** (-t)
            pieces.append((t, "d", unit_residue(unit, p, 3 if p == 2 else 1)))
            basis.remove(i)
            for k in basis:
                c = m[k][i] / a
                if c:
                    for r in range(3):
                        m[k][r] -= c * m[i][r]
                    for r in range(3):
                        m[r][k] -= c * m[r][i]
            continue
        if p != 2:
            # e_i <- e_i + e_j has a unit multiple of 2 m_ij on the diagonal
            for r in range(3):
                m[i][r] += m[j][r]
            for r in range(3):
                m[r][i] += m[r][j]
            continue
        a, b, c = m[i][i], m[i][j], m[j][j]
        det2 = a * c - b * b
        t = _v(b, 2)
        unit = det2 / Fraction(4) ** t
        pieces.append((t, "V", 7 if unit_residue(unit, 2, 3) % 8 == 7 else 3))
        basis.remove(i)
        basis.remove(j)
        for k in basis:
            x, y = m[k][i], m[k][j]
            # solve [[a,b],[b,c]] (ci, cj) = (x, y)
            ci = (c * x - b * y) / det2
            cj = (a * y - b * x) / det2
            if ci or cj:
                for r in range(3):
                    m[k][r] -= ci * m[i][r] + cj * m[j][r]
                for r in range(3):
                    m[r][k] -= ci * m[r][i] + cj * m[r][j]
    pieces.sort(key=lambda pc: (pc[0], pc[1], pc[2]))
    return pieces


def _split_pieces_mod(gram, p: int) -> list[Piece]:
    """Same splitting as ``_split_pieces`` computed in Z / p^N Z.

    Every pivot has valuation at most v(det), so N = v(det) + 4 carries enough
    digits for the unit residues (mod 8 at p = 2, mod p otherwise).
    """
    det = determinant(TernaryForm(gram))
    if det == 0:
        raise ValueError("singular form")
    vd = 0
    while det % p == 0:
        det //= p
        vd += 1
    M = p ** (vd + 4)
    m = [[v % M for v in row] for row in gram]
    inf = 10 ** 9

    def val(x: int) -> int:
        if x == 0:
            return inf
        k = 0
        while x % p == 0:
            x //= p
            k += 1
        return k

    basis = [0, 1, 2]
    pieces: list[Piece] = []
    while basis:
        best = None
        for i in basis:
            for j in basis:
                if j < i:
                    continue
                key = (val(m[i][j]), 0 if i == j else 1, i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        (t, offd, _, _), i, j = best
        if t >= inf:
            raise ValueError("singular form")
        if not offd:
            a = m[i][i]
            u = a // p ** t
            pieces.append((t, "d", u % (8 if p == 2 else p)))
            basis.remove(i)
            inv = pow(u, -1, M)
            for k in basis:
                c = (m[k][i] // p ** t) * inv % M
                if c:
                    for r in range(3):
                        m[k][r] = (m[k][r] - c * m[i][r]) % M
                    for r in range(3):
                        m[r][k] = (m[r][k] - c * m[r][i]) % M
            continue
        if p != 2:
            for r in range(3):
                m[i][r] = (m[i][r] + m[j][r]) % M
            for r in range(3):
                m[r][i] = (m[r][i] + m[r][j]) % M
            continue
        a, b, c = m[i][i], m[i][j], m[j][j]
        q = 4 ** t
        u = ((a * c - b * b) // q) % M
        pieces.append((t, "V", 7 if u % 8 == 7 else 3))
        basis.remove(i)
        basis.remove(j)
        inv = pow(u, -1, M)
        for k in basis:
            x, y = m[k][i], m[k][j]
            ci = ((c * x - b * y) // q) * inv % M
            cj = ((a * y - b * x) // q) * inv % M
            if ci or cj:
                for r in range(3):
                    m[k][r] = (m[k][r] - ci * m[i][r] - cj * m[j][r]) % M
                for r in range(3):
                    m[r][k] = (m[r][k] - ci * m[r][i] - cj * m[r][j]) % M
    pieces.sort(key=lambda pc: (pc[0], pc[1], pc[2]))
    return pieces


def pieces_form(pieces: Sequence[Piece], p: int) -> TernaryForm:
    g = [[0, 0, 0] for _ in range(3)]
    pos = 0
    for t, kind, u in pieces:
        s = p ** t
        if kind == "d":
            g[pos][pos] = u * s
            pos += 1
        else:
            d = 0 if u == 7 else 2 * s
            g[pos][pos] = g[pos + 1][pos + 1] = d
            g[pos][pos + 1] = g[pos + 1][pos] = s
            pos += 2
    return TernaryForm(g)


def hasse_diag(a1: int, a2: int, a3: int, p: int) -> int:
    d1, d2, d = a1, a1 * a2, a1 * a2 * a3
    return (hilbert_symbol(-1, -d, p) * hilbert_symbol(d1, -d2, p)
            * hilbert_symbol(d2, -d, p))


def rational_diagonal(f: TernaryForm) -> tuple[int, int, int]:
    """Integers a_i with f equivalent to <a_1, a_2, a_3> over Q."""
    m = [[Fraction(v) for v in row] for row in f.gram]
    out = []
    active = [0, 1, 2]
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            i, j = next((i, j) for i in active for j in active if i < j and m[i][j] != 0)
            for r in range(3):
                m[i][r] += m[j][r]
            for r in range(3):
                m[r][i] += m[r][j]
            piv = i
        a = m[piv][piv]
        out.append(a.numerator * a.denominator)
        active.remove(piv)
        for k in active:
            c = m[k][piv] / a
            if c:
                for r in range(3):
                    m[k][r] -= c * m[piv][r]
                for r in range(3):
                    m[r][k] -= c * m[r][piv]
    return tuple(out)  # type: ignore[return-value]


def hasse_invariant(f: TernaryForm, p: int) -> int:
    """c_p(f) = (-1,-d)_p (D_1,-D_2)_p (D_2,-d)_p for a diagonalization of f."""
    if determinant(f) == 0:
        raise ValueError("singular form")
    return hasse_diag(*rational_diagonal(f), p)


def is_isotropic_local(f: TernaryForm, p: int) -> bool:
    return hasse_invariant(f, p) == 1


def relevant_primes(d: int) -> list[int]:
    from sympy import primefactors
    return sorted(set([2] + primefactors(abs(d))))


def is_isotropic_global(f: TernaryForm) -> bool:
    from .forms import signature
    if not signature(f).indefinite:
        return False
    if hasse_invariant(f, INFINITY) != 1:
        return False
    return all(hasse_invariant(f, p) == 1 for p in relevant_primes(determinant(f)))


# ---------------------------------------------------------------- 2-adic symbols

@dataclass(frozen=True, order=True)
class Constituent:
    scale: int
    dim: int
    eps: int
    typ: int


def _eps2(u: int) -> int:
    return 1 if u % 8 in (1, 7) else -1


def constituents_2(pieces: Sequence[Piece]) -> tuple[list[Constituent], list[int]]:
    """Constituents and per-constituent oddities of a naive 2-adic splitting."""
    by_scale: dict[int, list[Piece]] = {}
    for pc in pieces:
        by_scale.setdefault(pc[0], []).append(pc)
    cons, odds = [], []
    for t in sorted(by_scale):
        ps = by_scale[t]
        dim = sum(1 if k == "d" else 2 for _, k, _ in ps)
        det = 1
        odd = 0
        typ = TYPE_II
        for _, k, u in ps:
            det = det * u % 8
            if k == "d":
                typ = TYPE_I
                odd += u
        cons.append(Constituent(t, dim, _eps2(det), typ))
        odds.append(odd % 8 if typ == TYPE_I else 0)
    return cons, odds


def _compartments(cons: Sequence[Constituent]) -> list[list[int]]:
    comps: list[list[int]] = []
    for i, c in enumerate(cons):
        if c.typ != TYPE_I:
            continue
        if comps and cons[comps[-1][-1]].scale == c.scale - 1:
            comps[-1].append(i)
        else:
            comps.append([i])
    return comps


def _same_train(cons: Sequence[Constituent], i: int, j: int) -> bool:
    odd_scales = {c.scale for c in cons if c.typ == TYPE_I}
    for s in range(cons[i].scale, cons[j].scale):
        if s not in odd_scales and s + 1 not in odd_scales:
            return False
    return True


SymbolState = tuple[tuple[Constituent, ...], tuple[int, ...]]


def _walk_closure(cons: tuple[Constituent, ...], comp_odd: tuple[int, ...]) -> set[SymbolState]:
    comps = _compartments(cons)
    comp_of = {i: k for k, idx in enumerate(comps) for i in idx}
    edges = [(i, i + 1) for i in range(len(cons) - 1) if _same_train(cons, i, i + 1)]
    start = (cons, comp_odd)
    seen = {start}
    todo = [start]
    while todo:
        cs, od = todo.pop()
        for i, j in edges:
            new = list(cs)
            new[i] = Constituent(cs[i].scale, cs[i].dim, -cs[i].eps, cs[i].typ)
            new[j] = Constituent(cs[j].scale, cs[j].dim, -cs[j].eps, cs[j].typ)
            touched = {comp_of[k] for k in (i, j) if k in comp_of}
            nod = list(od)
            for k in touched:
                nod[k] = (nod[k] + 4) % 8
            st = (tuple(new), tuple(nod))
            if st not in seen:
                seen.add(st)
                todo.append(st)
    return seen


def canonical_state(cons: Sequence[Constituent], odds: Sequence[int]) -> SymbolState:
    cons = tuple(c for c in cons)
    comps = _compartments(cons)
    comp_odd = tuple(sum(odds[i] for i in idx) % 8 for idx in comps)
    return min(_walk_closure(cons, comp_odd))


def _signed_odd(o: int) -> int:
    return o if o <= 4 else o - 8


def format_state(state: SymbolState) -> str:
    cons, comp_odd = state
    comps = _compartments(cons)
    first = {idx[0]: k for k, idx in enumerate(comps)}
    in_comp = {i for idx in comps for i in idx}
    out = []
    i = 0
    while i < len(cons):
        c = cons[i]
        if c.typ == TYPE_II:
            out.append(f"{2 ** c.scale}_II^{c.eps * c.dim}")
            i += 1
            continue
        k = first[i]
        idx = comps[k]
        o = _signed_odd(comp_odd[k])
        if len(idx) == 1:
            out.append(f"{2 ** c.scale}_{o}^{c.eps * c.dim}")
        else:
            inner = " ".join(f"{2 ** cons[j].scale}^{cons[j].eps * cons[j].dim}" for j in idx)
            out.append(f"[{inner}]_{o}")
        i = idx[-1] + 1
        assert all(j in in_comp for j in idx)
    return " ".join(out)


# ---------------------------------------------------------------- splittings

@dataclass(frozen=True)
class JordanSplitting:
    p: int
    pieces: tuple[Piece, ...]

    @property
    def scales(self) -> tuple[int, ...]:
        out = []
        for t, k, _ in self.pieces:
            out.extend([t] if k == "d" else [t, t])
        return tuple(sorted(out))

    @property
    def blocks(self) -> list[tuple[int, tuple[Piece, ...]]]:
        out: dict[int, list[Piece]] = {}
        for pc in self.pieces:
            out.setdefault(pc[0], []).append(pc)
        return [(t, tuple(v)) for t, v in sorted(out.items())]

    def uv(self) -> tuple[int, int]:
        s = self.scales
        return s[1] - s[0], s[2] - s[1]

    def form(self) -> TernaryForm:
        return pieces_form(self.pieces, self.p)

    def unit_det(self) -> int:
        """Determinant unit part as a residue (mod 8 at 2, mod p otherwise)."""
        mod = 8 if self.p == 2 else self.p
        out = 1
        for _, k, u in self.pieces:
            out = out * (u if k == "d" else (u if u == 3 else -1)) % mod
        return out

    def symbol(self):
        if self.p == 2:
            return canonical_state(*constituents_2(self.pieces))
        out = []
        for t, ps in self.blocks:
            prod_u = 1
            for _, _, u in ps:
                prod_u *= u
            out.append((t, len(ps), legendre(prod_u, self.p)))
        return tuple(out)

    def represents(self, n: int) -> bool:
        return _represents(self.pieces, n, self.p)


def jordan_split(f: TernaryForm, p: int) -> JordanSplitting:
    if determinant(f) == 0:
        raise ValueError("singular form")
    return JordanSplitting(p, tuple(_split_pieces_mod(f.gram, p)))


def _case_one(pieces: Sequence[Piece], n: int, p: int) -> bool:
    """Solution with the scale-0 coordinates not all divisible by p."""
    if p != 2:
        zero = [u for t, _, u in pieces if t == 0]
        if not zero:
            return False
        if len(zero) >= 3:
            return True
        if len(zero) == 2:
            return n % p != 0 or legendre(-zero[0] * zero[1], p) == 1
        return n % p != 0 and legendre(n * zero[0], p) == 1
    # brute force modulo 8, valid by Hensel since the gradient has valuation 1
    terms = []
    for t, k, u in pieces:
        s = 2 ** t
        if k == "d":
            terms.append(([(x, u * s * x * x % 8) for x in range(8)], t == 0))
        else:
            a = 0 if u == 7 else 2 * s
            vals = [((x, y), (a * x * x + 2 * s * x * y + a * y * y) % 8)
                    for x in range(8) for y in range(8)]
            terms.append(([(0 if (x % 2 == 0 and y % 2 == 0) else 1, v) for (x, y), v in vals], t == 0))
    target = n % 8
    # reachable (value mod 8, primitive-on-scale-0 flag)
    states = {(0, False)}
    for vals, at_zero in terms:
        nxt = set()
        for val, prim in states:
            for x, tv in vals:
                odd = (x % 2 == 1) if at_zero else False
                nxt.add(((val + tv) % 8, prim or odd))
        states = nxt
    return (target, True) in states


def _represents(pieces: Sequence[Piece], n: int, p: int) -> bool:
    pieces = list(pieces)
    while True:
        tmin = min(t for t, _, _ in pieces)
        if tmin:
            k, _ = split(n, p)
            if k < tmin:
                return False
            n //= p ** tmin
            pieces = [(t - tmin, kd, u) for t, kd, u in pieces]
        if _case_one(pieces, n, p):
            return True
        if n % p:
            return False
        n //= p
        pieces = [(t + 1 if t == 0 else t - 1, kd, u) for t, kd, u in pieces]


# ---------------------------------------------------------------- local classes

@dataclass(frozen=True)
class LocalClass:
    p: int
    symbol: tuple
    splitting: JordanSplitting = field(compare=False, hash=False, repr=False)

    @property
    def representative(self) -> TernaryForm:
        return self.splitting.form()

    @property
    def hasse(self) -> int:
        return _hasse_cached(self.p, self.splitting.pieces)

    @property
    def isotropic(self) -> bool:
        return self.hasse == 1

    @property
    def uv(self) -> tuple[int, int]:
        return self.splitting.uv()

    @property
    def valuation(self) -> int:
        return sum(self.splitting.scales)

    def represents(self, n: int) -> bool:
        return _represents_cached(self.p, self.splitting.pieces, n)

    def text(self) -> str:
        if self.p == 2:
            return format_state(self.symbol)
        return " ".join(f"{self.p}^{t}:{'+' if e > 0 else '-'}{n}" for t, n, e in self.symbol)

    def __str__(self) -> str:
        return self.text()


@lru_cache(maxsize=None)
def _hasse_cached(p: int, pieces: tuple[Piece, ...]) -> int:
    return hasse_invariant(pieces_form(pieces, p), p)


@lru_cache(maxsize=1 << 16)
def _represents_cached(p: int, pieces: tuple[Piece, ...], n: int) -> bool:
    return _represents(pieces, n, p)


def canonical_symbol(f: TernaryForm, p: int) -> LocalClass:
    if determinant(f) == 0:
        raise ValueError("singular form")
    if content(f) != 1:
        raise ValueError("form is not primitive")
    js = jordan_split(f, p)
    return LocalClass(p, js.symbol(), js)


def _unit_choices(p: int) -> tuple[int, ...]:
    return (1, 3, 5, 7) if p == 2 else (1, least_nonresidue(p))


def _naive_splittings(p: int, k: int, w: int) -> Iterator[tuple[Piece, ...]]:
    units = _unit_choices(p)
    mod = 8 if p == 2 else p

    def ok(det_unit: int) -> bool:
        if p == 2:
            return det_unit % 8 == w % 8
        return legendre(det_unit, p) == legendre(w, p)

    for s2 in range(0, k // 2 + 1):
        s3 = k - s2
        for a, b, c in product(units, repeat=3):
            if ok(a * b * c % mod):
                yield ((0, "d", a), (s2, "d", b), (s3, "d", c))
    if p != 2:
        return
    for vu in (7, 3):
        vdet = -1 if vu == 7 else 3
        for c in units:
            if ok(vdet * c):
                yield ((0, "V", vu), (k, "d", c))
                if k % 2 == 0 and k > 0:
                    yield ((0, "d", c), (k // 2, "V", vu))


def _canonical_pieces(pieces: tuple[Piece, ...]) -> tuple[Piece, ...]:
    return tuple(sorted(pieces, key=lambda pc: (pc[0], pc[1], pc[2])))


def enumerate_local_classes(p: int, v: int, unit: int = 1) -> tuple[LocalClass, ...]:
    """All primitive Z_p-classes of determinant p^v * unit (unit coprime to p)."""
    if p != 2:
        unit = 1 if legendre(unit, p) == 1 else least_nonresidue(p)
    else:
        unit %= 8
    return _enumerate(p, v, unit)


@lru_cache(maxsize=None)
def _enumerate(p: int, v: int, unit: int) -> tuple[LocalClass, ...]:
    found: dict = {}
    for pcs in _naive_splittings(p, v, unit):
        pcs = _canonical_pieces(pcs)
        js = JordanSplitting(p, pcs)
        sym = js.symbol()
        if sym not in found:
            found[sym] = LocalClass(p, sym, js)
    return tuple(sorted(found.values(), key=lambda c: (c.uv, repr(c.symbol))))


def local_class_of(pieces: Sequence[Piece], p: int) -> LocalClass:
    js = JordanSplitting(p, _canonical_pieces(tuple(pieces)))
    return LocalClass(p, js.symbol(), js)


def parse_symbol2(text: str, u: int = 0, v: int = 0) -> SymbolState:
    """Canonical state of a written 2-adic symbol such as ``[1^2 2^1]_3`` or
    ``1_{II}^{-2}4_3^{-1}``; ``q`` and ``r`` stand for 2^u and 2^(u+v)."""
    s = text.replace("{[", "[").replace("]}", "]").replace(r"I\!I", "II")
    pos = 0
    cons: list[Constituent] = []
    odds: list[int] = []

    def arg() -> str:
        nonlocal pos
        if s[pos] == "{":
            end = s.index("}", pos)
            out = s[pos + 1:end]
            pos = end + 1
            return out
        pos += 1
        return s[pos - 1]

    def scale() -> int:
        nonlocal pos
        if s[pos] == "q":
            pos += 1
            return u
        if s[pos] == "r":
            pos += 1
            return u + v
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        val = int(s[start:pos])
        t = val.bit_length() - 1
        if val != 1 << t:
            raise ValueError(f"bad scale {val} in {text!r}")
        return t

    while pos < len(s):
        ch = s[pos]
        if ch in " ,":
            pos += 1
            continue
        if ch == "[":
            pos += 1
            members = []
            while s[pos] != "]":
                t = scale()
                if s[pos] != "^":
                    raise ValueError(f"expected ^ in {text!r}")
                pos += 1
                members.append((t, int(arg())))
            pos += 1
            if s[pos] != "_":
                raise ValueError(f"compartment without oddity in {text!r}")
            pos += 1
            o = int(arg())
            for i, (t, e) in enumerate(members):
                cons.append(Constituent(t, abs(e), 1 if e > 0 else -1, TYPE_I))
                odds.append(o % 8 if i == 0 else 0)
            continue
        t = scale()
        sub, sup = None, "1"
        for _ in range(2):
            if pos < len(s) and s[pos] == "_":
                pos += 1
                sub = arg()
            elif pos < len(s) and s[pos] == "^":
                pos += 1
                sup = arg()
        e = int(sup)
        if sub == "II":
            cons.append(Constituent(t, abs(e), 1 if e > 0 else -1, TYPE_II))
            odds.append(0)
        else:
            cons.append(Constituent(t, abs(e), 1 if e > 0 else -1, TYPE_I))
            odds.append(int(sub) % 8 if sub is not None else 0)
    order = sorted(range(len(cons)), key=lambda i: cons[i].scale)
    return canonical_state([cons[i] for i in order], [odds[i] for i in order])
