import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2syl.cyclo import (ClassFunction, Cyclo, canon, counts_from_exponents, counts_to_cyclo,
                         gram, inner_product, theta)
from g2syl.ffield import FieldSpec

cyclo7 = st.lists(st.fractions(max_denominator=6).filter(lambda x: abs(x) < 50),
                  min_size=6, max_size=6).map(lambda c: Cyclo(7, c))


def test_theta_zero_is_one():
    assert theta(FieldSpec(5).elem(0)) == 1


def test_theta_sums_to_zero():
    for F in (FieldSpec(5), FieldSpec(3, 2)):
        total = sum((theta(a) for a in F.elements()), Cyclo(F.p))
        assert total == 0


def test_theta_homomorphism():
    F = FieldSpec(7)
    for a in F.elements():
        assert theta(a) * theta(-a) == 1
        for b in F.elements():
            assert theta(a + b) == theta(a) * theta(b)


def test_theta_nontrivial_on_extension():
    F = FieldSpec(5, 2)
    assert any(theta(a) != 1 for a in F.elements())


def test_conj_of_theta():
    F = FieldSpec(5)
    for a in F.elements():
        assert theta(a).conj() == theta(-a)


def test_zeta_times_inverse_power():
    for p in (3, 5, 7):
        assert Cyclo.zeta(p) * Cyclo.zeta(p, p - 1) == 1


def test_canonical_rewrite():
    # zeta^4 = -(1 + zeta + zeta^2 + zeta^3) in Q(zeta_5)
    assert Cyclo(5, [0, 0, 0, 0, 1]).coeffs == (-1, -1, -1, -1)
    assert Cyclo(5, [1] * 5) == 0


def test_gauss_sum_norm():
    F = FieldSpec(5)
    g = sum((theta(r * r) for r in F.elements()), Cyclo(5))
    direct = sum(cmath.exp(2j * cmath.pi * (r * r % 5) / 5) for r in range(5))
    assert abs(g.to_complex() - direct) < 1e-12
    assert g * g.conj() == 5
    # 5 = 1 mod 4, so the quadratic Gauss sum squares to +5
    assert g * g == 5


def test_rational_scaling():
    x = Cyclo.zeta(5, 2) * Fraction(3, 4)
    assert (x / 3).coeffs[2] == Fraction(1, 4)
    assert Cyclo.rational(5, 7).to_rational() == 7
    with pytest.raises(ValueError):
        Cyclo.zeta(5).to_rational()


def test_mixing_fields_rejected():
    with pytest.raises(ValueError):
        Cyclo.zeta(5) + Cyclo.zeta(7)


def test_json_round_trip():
    x = Cyclo(7, [Fraction(1, 2), -3, 0, 2])
    assert Cyclo.from_json(7, x.to_json()) == x


def test_counts_helpers():
    c = counts_from_exponents([0, 1, 1, 6], 7)
    assert c.tolist() == [1, 2, 0, 0, 0, 0, 1]
    assert counts_to_cyclo(c) == 1 + 2 * Cyclo.zeta(7) + Cyclo.zeta(7, 6)
    assert canon(np.ones(5, dtype=np.int64)).tolist() == [0, 0, 0, 0]


def test_gram_matches_naive():
    rng = np.random.default_rng(1)
    p = 5
    X = rng.integers(0, 4, size=(3, 4, p))
    Y = rng.integers(0, 4, size=(2, 4, p))
    w = np.array([1, 2, 3, 5])
    G = gram(X, Y, w)
    for a in range(3):
        for b in range(2):
            want = sum((counts_to_cyclo(X[a, c]) * counts_to_cyclo(Y[b, c]).conj() * int(w[c])
                        for c in range(4)), Cyclo(p))
            assert counts_to_cyclo(G[a, b]) == want


def test_class_function_sizes_checked():
    with pytest.raises(ValueError):
        ClassFunction([("e", 1, Cyclo.rational(3, 1))], 3)


def test_inner_product_trivial_and_sign():
    one = Cyclo.rational(3, 1)
    triv = ClassFunction([("e", 1, one), ("a", 1, one), ("b", 1, one)], 3)
    w = Cyclo.zeta(3)
    chi = ClassFunction([("e", 1, one), ("a", 1, w), ("b", 1, w * w)], 3)
    assert inner_product(triv, triv) == 1
    assert inner_product(chi, chi) == 1
    assert inner_product(triv, chi) == 0
    other = ClassFunction([("e", 1, one), ("x", 2, one)], 3)
    with pytest.raises(ValueError):
        inner_product(triv, other)


@settings(max_examples=100, deadline=None)
@given(cyclo7, cyclo7)
def test_conjugation_is_automorphism(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()
    assert a.conj().conj() == a


@settings(max_examples=100, deadline=None)
@given(cyclo7)
def test_norm_is_positive_real(a):
    n = a * a.conj()
    assert n == n.conj()
    if a:
        assert n.to_complex().real > 0


@settings(max_examples=100, deadline=None)
@given(cyclo7, cyclo7)
def test_complex_embedding_is_ring_map(a, b):
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-6
    assert abs((a - b).to_complex() - (a.to_complex() - b.to_complex())) < 1e-9
