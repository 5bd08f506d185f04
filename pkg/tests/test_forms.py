import random

import pytest

from tqforms.forms import (Signature, TernaryForm, UnimodularMap, content, determinant, evaluate,
                           random_unimodular, sign_normalize, signature, transform)

MARKOFF = TernaryForm(((2, 1, 1), (1, -2, 1), (1, 1, -2)))


def test_determinant_examples():
    assert determinant(TernaryForm.diagonal(1, 1, 1)) == 1
    assert determinant(MARKOFF) == 12
    assert determinant(TernaryForm.diagonal(-2, 5, -10)) == 100
    assert determinant(-MARKOFF) == -12


def test_content():
    assert content(TernaryForm.diagonal(1, 1, 1)) == 1
    assert content(TernaryForm.diagonal(2, 4, 6)) == 2
    assert content(MARKOFF.scale(2)) == 2
    with pytest.raises(ValueError, match="zero form"):
        content(TernaryForm.diagonal(0, 0, 0))


def test_transform_examples():
    f = TernaryForm.diagonal(1, -1, -1)
    assert transform(f, UnimodularMap.identity()) == f
    assert transform(f, UnimodularMap.permutation([0, 2, 1])) == f
    u = UnimodularMap(((0, 1, 0), (1, 0, 0), (0, 0, 1)))
    assert determinant(transform(TernaryForm.diagonal(1, 1, -1), u)) == -1
    with pytest.raises(ValueError):
        UnimodularMap(((2, 0, 0), (0, 1, 0), (0, 0, 1)))


def test_signature_examples():
    assert signature(TernaryForm.diagonal(1, -1, -1)) == Signature(1, 2, 0)
    assert signature(TernaryForm.diagonal(1, 1, 1)) == Signature(3, 0, 0)
    assert signature(MARKOFF) == Signature(1, 2, 0)
    assert signature(TernaryForm.from_coeffs(0, 0, 0, 1, 0, 0)) == Signature(1, 1, 1)
    assert signature(TernaryForm.from_coeffs(0, 0, 1, 1, 0, 0)) == Signature(2, 1, 0)


def test_evaluate_examples():
    assert evaluate(MARKOFF, (1, 0, 0)) == 2
    assert evaluate(TernaryForm.diagonal(1, -1, -1), (1, 1, 0)) == 0
    assert MARKOFF((0, 0, 0)) == 0


def test_parse_roundtrip():
    f = TernaryForm.parse("2 -2 -2 1 1 1")
    assert f == MARKOFF
    assert TernaryForm.parse(str(f)) == f
    with pytest.raises(ValueError):
        TernaryForm.parse("1 2 3")


def test_sign_normalize():
    g, s = sign_normalize(-MARKOFF)
    assert s == -1 and g == MARKOFF


def _eigen_signs(f):
    import numpy as np
    ev = np.linalg.eigvalsh(np.array(f.gram, dtype=float))
    return (int((ev > 1e-9).sum()), int((ev < -1e-9).sum()))


def test_invariants_under_random_maps():
    rng = random.Random(11)
    for _ in range(10_000):
        f = TernaryForm.from_coeffs(*(rng.randint(-50, 50) for _ in range(6)))
        u = random_unimodular(rng)
        g = transform(f, u)
        assert determinant(g) == determinant(f)
        if any(any(r) for r in f.gram):
            assert content(g) == content(f)
        assert signature(g) == signature(f)


def test_transform_composes():
    rng = random.Random(3)
    for _ in range(500):
        f = TernaryForm.from_coeffs(*(rng.randint(-9, 9) for _ in range(6)))
        u, v = random_unimodular(rng), random_unimodular(rng)
        assert transform(transform(f, u), v) == transform(f, u @ v)


def test_evaluate_matches_matrix_product():
    rng = random.Random(4)
    for _ in range(1000):
        f = TernaryForm.from_coeffs(*(rng.randint(-30, 30) for _ in range(6)))
        x = [rng.randint(-40, 40) for _ in range(3)]
        g = f.gram
        direct = sum(x[i] * g[i][j] * x[j] for i in range(3) for j in range(3))
        assert evaluate(f, x) == direct


def test_signature_matches_floating_point_on_nonsingular():
    rng = random.Random(5)
    for _ in range(500):
        f = TernaryForm.from_coeffs(*(rng.randint(-20, 20) for _ in range(6)))
        if f.det == 0:
            continue
        s = signature(f)
        assert (s.pos, s.neg) == _eigen_signs(f)
