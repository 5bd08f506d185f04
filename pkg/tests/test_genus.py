import random
from collections import defaultdict

import pytest
from hypothesis import given, settings, strategies as st
from sympy import factorint

from tqforms.forms import TernaryForm, determinant, random_unimodular, sign_normalize, transform
from tqforms.genus import (GenusSymbol, P_d, Packet, _factor, class_count, class_number,
                           ensure_sieve, enumerate_genera, factor_rs, genus_and_class_number,
                           genus_count, genus_of, omega, omega3, packet_leq, root_packet,
                           root_primes, spinor_kernel)
from tqforms.minima import genus_representatives


def _indefinite_form(rng, bound=9):
    from tqforms.forms import content, is_indefinite
    while True:
        f = TernaryForm.from_coeffs(*(rng.randint(-bound, bound) for _ in range(6)))
        if determinant(f) != 0 and content(f) == 1 and is_indefinite(f):
            return f


def test_factor_rs_examples():
    assert factor_rs(1) == (1, 1)
    assert factor_rs(12) == (4, 3)
    assert factor_rs(90) == (18, 5)
    assert factor_rs(2 * 27 * 5 * 7) == (54, 35)
    assert P_d(2 * 27 * 5 * 49) == 21
    assert root_primes(75) == (2, 5)
    assert omega3(2 ** 5 * 27 * 25) == 1
    assert omega(30) == 3
    with pytest.raises(ValueError):
        factor_rs(0)


def test_sieve_factorisation_matches_sympy():
    ensure_sieve(5000)
    for d in range(2, 5000, 7):
        assert dict(_factor(d)) == factorint(d)


def test_small_genus_counts():
    # odd rank: no even unimodular lattice, so d = 1 has one genus
    assert genus_count(1) == len(enumerate_genera(1)) == 1
    assert enumerate_genera(1)[0] == genus_of(TernaryForm.diagonal(1, -1, -1))
    assert all(class_count(g) == 1 for g in enumerate_genera(1))
    assert genus_count(12) == 8


@pytest.mark.parametrize("d", list(range(1, 301)))
def test_genus_count_shortcut(d):
    assert genus_count(d) == len(enumerate_genera(d))


def test_root_packet_totals_match_direct_sum():
    for d in list(range(1, 400)) + [1000, 1728, 2000, 3375, 4096, 8100]:
        gs = enumerate_genera(d)
        assert genus_and_class_number(d) == (len(gs), sum(class_count(g) for g in gs)), d


def test_genera_have_unit_hasse_product():
    for d in (1, 7, 12, 45, 128, 360):
        for g in enumerate_genera(d):
            prod = 1
            for c in g.locals.values():
                prod *= c.hasse
            assert prod == 1


def test_class_counts_are_powers_of_two():
    for d in range(1, 600):
        for g in enumerate_genera(d):
            h = class_count(g)
            assert h & (h - 1) == 0
            assert h <= 2 ** (2 + omega3(d))


def test_one_class_when_squarefree():
    for d in range(1, 500):
        if all(k == 1 for _, k in _factor(d)):
            assert all(class_count(g) == 1 for g in enumerate_genera(d)), d


def test_two_class_genus_exists():
    hit = next(g for d in range(1, 3000) for g in enumerate_genera(d) if class_count(g) > 1)
    assert omega3(hit.determinant) >= 1 or hit.determinant % 8 == 0
    k = spinor_kernel(hit)
    assert k.class_count == class_count(hit) == 2 ** (k.dim - k.rank)


def test_class_count_constant_on_root_packets():
    seen = defaultdict(set)
    for d in range(1, 700):
        for g in enumerate_genera(d):
            seen[root_packet(g)].add(class_count(g))
    assert all(len(v) == 1 for v in seen.values())


def test_packet_order():
    g = enumerate_genera(60)[0]
    root = root_packet(g)
    assert root.support == {2}
    assert packet_leq(root, g)
    assert packet_leq(Packet.of({p: c for p, c in g.items if p in (2, 3)}), g)
    other = next(h for h in enumerate_genera(60) if h.locals[2] != g.locals[2])
    assert not packet_leq(root, other)
    with pytest.raises(ValueError):
        Packet.of({3: g.locals[3]})


def test_genus_of_lands_in_enumeration():
    rng = random.Random(5)
    for _ in range(200):
        f = _indefinite_form(rng)
        g = genus_of(f)
        d = determinant(sign_normalize(f)[0])
        assert g.determinant == d
        assert g in enumerate_genera(d)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_genus_is_a_class_invariant(seed):
    rng = random.Random(seed)
    f = _indefinite_form(rng, 7)
    assert genus_of(f) == genus_of(transform(f, random_unimodular(rng)))
    assert genus_of(f) == genus_of(-f)


def test_genus_of_rejects_definite():
    with pytest.raises(ValueError):
        genus_of(TernaryForm.diagonal(1, 1, 1))


@pytest.mark.parametrize("d", [1, 2, 3, 12, 16, 27, 48, 60, 64, 100])
def test_every_genus_has_a_representative(d):
    reps = genus_representatives(d)
    assert set(reps) == set(enumerate_genera(d))
    for g, f in reps.items():
        assert genus_of(f) == g


def test_class_number_small():
    assert class_number(1) == 1
    assert sum(class_number(d) for d in range(1, 101)) == sum(genus_and_class_number(d)[1]
                                                            for d in range(1, 101))


def test_genus_symbol_text():
    g = enumerate_genera(12)[0]
    assert isinstance(g, GenusSymbol)
    assert str(g).startswith("d=12 2:")
