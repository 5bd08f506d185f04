import random

import pytest
from hypothesis import given, settings, strategies as st

from tqforms.forms import TernaryForm, content, determinant, evaluate, is_indefinite
from tqforms.genus import Packet, class_count, enumerate_genera, factor_rs, genus_of, root_primes
from tqforms.minima import (B, Certificate, KappaResult, box_search, genus_representatives, kappa,
                            jones_watson_applies, local_min, locally_represented, watson_cap)

MARKOFF = TernaryForm(((2, 1, 1), (1, -2, 1), (1, 1, -2)))


def _nonresidue_form(p):
    n = next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)
    return TernaryForm.diagonal(n, -p, p * n), n


def _brute_kappa(f, radius):
    best = None
    r = range(-radius, radius + 1)
    for x in r:
        for y in r:
            for z in r:
                v = abs(evaluate(f, (x, y, z)))
                if (x, y, z) != (0, 0, 0) and (best is None or v < best):
                    best = v
    return best


def test_jones_watson_examples():
    assert jones_watson_applies(6, 25)
    assert not jones_watson_applies(9, 25)
    assert not jones_watson_applies(5, 100)
    assert not jones_watson_applies(8, 3)
    assert jones_watson_applies(-7, 3)
    with pytest.raises(ValueError):
        jones_watson_applies(0, 5)


def test_least_prime_bounds():
    assert B(8) == 17
    assert B(3) == 7
    assert B(24) == 73


def test_watson_cap():
    assert watson_cap(100) >= 2
    for d in (3, 5, 15, 105):
        assert watson_cap(d) >= 2
    assert watson_cap(10 ** 9, hard_cap=500) <= 500


def test_markoff_form():
    r = kappa(MARKOFF)
    assert r.value == 2
    assert r.exact
    assert abs(evaluate(MARKOFF, r.witness)) == 2
    assert abs(evaluate(MARKOFF, (1, 0, 0))) == 2


def test_isotropic_form():
    r = kappa(TernaryForm.diagonal(1, -1, -1))
    assert r.value == 0
    assert r.certificate is Certificate.ISOTROPIC
    assert evaluate(TernaryForm.diagonal(1, -1, -1), r.witness) == 0


@pytest.mark.parametrize("p", [5, 13])
def test_nonresidue_forms(p):
    f, n = _nonresidue_form(p)
    assert n == 2
    r = kappa(f)
    assert r.value == 2 and r.exact
    assert abs(evaluate(f, r.witness)) == 2
    assert local_min(genus_of(f)).kstar == 2


@pytest.mark.parametrize("bad", [TernaryForm.diagonal(1, 1, 1), TernaryForm.diagonal(1, -1, 0),
                                 TernaryForm.diagonal(2, -2, 4)])
def test_kappa_rejects(bad):
    with pytest.raises(ValueError):
        kappa(bad)


def test_result_dict():
    r = KappaResult(3, (1, 0, 0), Certificate.UPPER_BOUND_ONLY, 8)
    assert not r.exact
    assert r.as_dict() == {"value": 3, "witness": [1, 0, 0], "certificate": "UpperBoundOnly",
                           "radius": 8}


def _random_aniso(rng, bound=6):
    from tqforms.local import is_isotropic_global
    while True:
        f = TernaryForm.from_coeffs(*(rng.randint(-bound, bound) for _ in range(6)))
        if determinant(f) and content(f) == 1 and is_indefinite(f) and not is_isotropic_global(f):
            return f


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_kappa_agrees_with_brute_force(seed):
    f = _random_aniso(random.Random(seed))
    r = kappa(f)
    brute = _brute_kappa(f, 6)
    assert abs(evaluate(f, r.witness)) == r.value
    if r.exact:
        assert r.value <= brute
        assert r.value >= local_min(genus_of(f)).kstar
    assert box_search(f, 6)[0] == brute


def test_trivial_genus_minimum():
    # odd squarefree: the 2-adic class is unimodular, so K* is 1 or 2
    for d in (3, 5, 7, 15, 105):
        for g in enumerate_genera(d):
            assert local_min(g).kstar in (1, 2)


def test_local_min_bound():
    for d in range(1, 1500):
        r, _ = factor_rs(d)
        for g in enumerate_genera(d):
            lm = local_min(g)
            assert 1 <= lm.kstar <= 2 * r
            assert lm.k in (0, lm.kstar)
            assert locally_represented(g, lm.kstar) or locally_represented(g, -lm.kstar)


def test_kstar_monotone_under_restriction():
    rng = random.Random(3)
    for _ in range(100):
        d = rng.randint(2, 5000)
        g = rng.choice(enumerate_genera(d))
        roots = set(root_primes(d))
        extra = [p for p in g.locals if p not in roots]
        keep = roots | {p for p in extra if rng.random() < 0.5}
        small = Packet.of({p: c for p, c in g.items if p in keep})
        assert local_min(small).kstar <= local_min(g).kstar


def test_restriction_to_small_primes():
    rng = random.Random(11)
    for _ in range(100):
        d = rng.randint(2, 20000)
        g = rng.choice(enumerate_genera(d))
        r, _ = factor_rs(d)
        part = Packet.of({p: c for p, c in g.items if p <= 2 * r})
        assert local_min(part).kstar == local_min(g).kstar


def test_one_class_genera_small():
    for d in range(1, 61):
        for g, f in genus_representatives(d).items():
            if class_count(g) != 1:
                continue
            r = kappa(f)
            assert r.exact
            assert r.value == local_min(g).k
            if r.value:
                assert abs(evaluate(f, r.witness)) == r.value
