import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2syl.ffield import FieldError, FieldSpec, FqElem, factor_prime_power, fq_enumerate


def poly_mulmod(a, b, modulus, p):
    """Schoolbook product of coefficient lists reduced by a monic modulus."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    k = len(modulus) - 1
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i, m in enumerate(modulus):
                prod[d - k + i] = (prod[d - k + i] - c * m) % p
    return (prod + [0] * k)[:k]


def test_prime_field_product():
    F = FieldSpec(5)
    assert F.elem(3) * F.elem(4) == F.elem(2)


def test_f9_x_squared_is_minus_one():
    F = FieldSpec(3, 2)
    assert F.modulus == (1, 0, 1)
    x = F.from_coeffs([0, 1])
    assert poly_mulmod([0, 1], [0, 1], [1, 0, 1], 3) == [2, 0]
    assert F.mul(x, x) == 2


def test_f9_trace_of_generator():
    F = FieldSpec(3, 2)
    x = F.elem(F.from_coeffs([0, 1]))
    # x + x^3 by repeated multiplication
    x3 = x * x * x
    assert (x + x3) == 0
    assert x.trace() == 0
    assert F.trace(0) == 0
    assert F.trace(1) == 2


def test_trace_of_one_is_degree():
    for p, k in [(3, 3), (5, 2), (7, 2), (3, 4)]:
        assert FieldSpec(p, k).trace(1) == k % p


def test_inverse_exhaustive_f25():
    F = FieldSpec(5, 2)
    for a in F.elements()[1:]:
        assert a * a.inverse() == 1
        assert F.poly_inv(a.value) == a.inverse().value


def test_division_by_zero():
    F = FieldSpec(7)
    with pytest.raises(ZeroDivisionError):
        F.elem(3) / F.elem(0)


def test_enumeration():
    F5 = FieldSpec(5)
    assert [int(a) for a in fq_enumerate(F5)] == [0, 1, 2, 3, 4]
    assert len(fq_enumerate(FieldSpec(7, 2))) == 49
    F9 = FieldSpec(3, 2)
    els = fq_enumerate(F9)
    assert els[0] == 0 and els[1] == 1
    orders = []
    for a in els[1:]:
        n, b = 1, a
        while b != 1:
            b, n = b * a, n + 1
        orders.append(n)
    assert len(orders) == 8 and max(orders) == 8


@pytest.mark.parametrize("q, pk", [(9, (3, 2)), (49, (7, 2)), (5, (5, 1)), (81, (3, 4))])
def test_factor_prime_power(q, pk):
    assert factor_prime_power(q) == pk


@pytest.mark.parametrize("bad", [(2, 1), (4, 1), (3, 5), (9, 1)])
def test_rejects_bad_fields(bad):
    with pytest.raises(FieldError):
        FieldSpec(*bad)


def test_rejects_non_prime_power():
    with pytest.raises(FieldError):
        FieldSpec.from_order(12)


def test_field_mixing_rejected():
    with pytest.raises(FieldError):
        FieldSpec(5).elem(1) + FieldSpec(7).elem(1)


SMALL = [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (7, 2), (3, 3)]


@pytest.mark.parametrize("p, k", SMALL)
def test_trace_additive_linear_surjective(p, k):
    F = FieldSpec(p, k)
    els = F.elements()
    for a in els:
        for b in els:
            assert F.trace(F.add(a.value, b.value)) == (a.trace() + b.trace()) % p
        for c in range(p):
            assert F.trace(F.mul(c, a.value)) == c * a.trace() % p
    assert {a.trace() for a in els} == set(range(p))


@pytest.mark.parametrize("p, k", SMALL)
def test_frobenius_automorphism(p, k):
    F = FieldSpec(p, k)
    els = F.elements()
    frob = [F.frobenius(a.value) for a in els]
    assert sorted(frob) == list(range(F.q))
    assert [a.value for a in els if F.frobenius(a.value) == a.value] == list(range(p))
    for a in els:
        for b in els:
            assert F.frobenius(F.mul(a.value, b.value)) == F.mul(frob[a.value], frob[b.value])
            assert F.frobenius(F.add(a.value, b.value)) == F.add(frob[a.value], frob[b.value])


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(3, 2), (5, 2), (3, 3), (7, 2), (3, 4)]), st.data())
def test_mul_matches_polynomial_oracle(pk, data):
    F = FieldSpec(*pk)
    a = data.draw(st.integers(0, F.q - 1))
    b = data.draw(st.integers(0, F.q - 1))
    want = poly_mulmod(list(F.coeffs(a)), list(F.coeffs(b)), list(F.modulus), F.p)
    assert F.coeffs(F.mul(a, b)) == tuple(want)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(5, 1), (3, 2), (5, 2), (7, 2)]), st.data())
def test_field_axioms(pk, data):
    F = FieldSpec(*pk)
    a, b, c = (FqElem(F, data.draw(st.integers(0, F.q - 1))) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0
    assert a + (-a) == 0
    if b:
        assert (a / b) * b == a


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(3, 2), (5, 2), (7, 2)]), st.data())
def test_vectorised_ops_agree(pk, data):
    import numpy as np
    F = FieldSpec(*pk)
    xs = np.array(data.draw(st.lists(st.integers(0, F.q - 1), min_size=1, max_size=20)))
    ys = np.array(data.draw(st.lists(st.integers(0, F.q - 1), min_size=len(xs), max_size=len(xs))))
    assert F.vmul(xs, ys).tolist() == [F.mul(int(a), int(b)) for a, b in zip(xs, ys)]
    assert F.vadd(xs, ys).tolist() == [F.add(int(a), int(b)) for a, b in zip(xs, ys)]
    assert F.vtrace(xs).tolist() == [F.trace(int(a)) for a in xs]
