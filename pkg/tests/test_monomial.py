import random

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from g2syl.cyclo import Cyclo
from g2syl.ffield import FieldSpec
from g2syl.matgroup import G2Syl, identity, matmul, random_g8, unitriangular_inverse
from g2syl.monomial import (Pattern, act_circ, act_dot, act_left, basis_patterns, chi_A,
                            dot_matrices, f_cocycle, kappa, pi)

F5 = FieldSpec(5)
G5 = G2Syl(F5)
slots = st.tuples(*[st.integers(0, 4)] * 6)
seeds = st.integers(0, 2 ** 32)


def unit(i, j):
    m = np.zeros((8, 8), dtype=np.int64)
    m[i - 1, j - 1] = 1
    return m


def test_projection_basics():
    assert pi(F5, identity(F5)) == Pattern.zero(F5)
    A = Pattern(F5, (1, 2, 3, 4, 0, 1))
    assert pi(F5, A.matrix()) == A
    # (1,4) alone averages to 1/2, which is 3 in F_5
    assert pi(F5, unit(1, 4)).a == (0, 0, 3, 0, 0, 0)


def test_pattern_matrix_has_tie():
    A = Pattern.make(F5, A15=2, A23=1)
    m = A.matrix()
    assert m[0, 3] == m[0, 4] == 2
    assert A.support() == {(1, 4), (1, 5), (2, 3)}


def test_kappa():
    e12 = Pattern.make(F5, A12=1)
    assert kappa(e12, e12) == 1
    assert kappa(e12, Pattern.zero(F5)) == 0
    e15 = Pattern.make(F5, A15=1)
    assert kappa(e15, e15) == 2
    basis = basis_patterns(F5)
    for b in basis:
        assert any(kappa(b, c) != 0 for c in basis)


def test_cocycle_values():
    assert f_cocycle(F5, G5.identity) == Pattern.zero(F5)
    u = G5.y(1, 2, 3, 0, 0, 4)
    f = f_cocycle(F5, u)
    assert (f.A12, f.A23, f.A13) == (1, 2, -3)
    assert act_dot(Pattern(F5, (1, 1, 1, 1, 1, 1)), G5.identity) == Pattern(F5, (1,) * 6)


def test_cocycle_bijective_on_U():
    from g2syl.monomial import pi_codes
    codes = pi_codes(F5, G5.all_matrices)
    keys = {tuple(r) for r in codes.tolist()}
    assert len(keys) == 15625


def test_left_action_of_y1():
    A = Pattern(F5, (1, 2, 3, 4, 1, 3))
    for t1 in range(5):
        got = act_left(G5.root_element(1, t1), A)
        # u^{-T} has (2,1) entry -t1 and leaves row 1 alone
        want = Pattern(F5, A.a[:5] + ((3 - t1 * 2) % 5,))
        assert got == want


def test_linear_character_on_e23():
    for a23 in range(5):
        A = Pattern.make(F5, A23=a23)
        for u in G5.enumerate()[::113]:
            assert chi_A(A, u) == Cyclo.zeta(5, a23 * u.t[1])
    assert chi_A(Pattern(F5, (1, 2, 3, 4, 1, 3)), G5.identity) == 1


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_cocycle_law_on_g8(seed):
    rng = random.Random(seed)
    x, g = random_g8(F5, rng), random_g8(F5, rng)
    lhs = f_cocycle(F5, matmul(F5, x, g))
    assert lhs == act_circ(f_cocycle(F5, x), g) + f_cocycle(F5, g)


@settings(max_examples=200, deadline=None)
@given(slots, slots, seeds)
def test_right_actions(a, b, seed):
    rng = random.Random(seed)
    A, B = Pattern(F5, a), Pattern(F5, b)
    g, h = random_g8(F5, rng), random_g8(F5, rng)
    gh = matmul(F5, g, h)
    assert act_dot(act_dot(A, g), h) == act_dot(A, gh)
    assert act_circ(act_circ(A, g), h) == act_circ(A, gh)
    assert act_dot(A + B, g) == act_dot(A, g) + act_dot(B, g)
    # duality between the two actions under the trace pairing
    assert kappa(act_dot(A, g), B) == kappa(A, act_circ(B, unitriangular_inverse(F5, g)))


@settings(max_examples=100, deadline=None)
@given(slots, st.integers(0, 15624))
def test_dot_matrices_match(a, idx):
    u = G5.element(idx)
    L = dot_matrices(F5, u.mat)
    A = Pattern(F5, a)
    assert tuple(int(x) for x in (np.array(a) @ L) % 5) == act_dot(A, u).a


@settings(max_examples=100, deadline=None)
@given(st.tuples(*[st.integers(0, 4)] * 3), st.integers(0, 15624), st.integers(0, 15624))
def test_left_and_right_actions_commute(small, gi, ui):
    a12, a13, a23 = small
    B = Pattern(F5, (a12, a13, 0, 0, 0, a23))
    g, u = G5.element(gi), G5.element(ui)
    assert act_left(g, act_dot(B, u)) == act_dot(act_left(g, B), u)


def test_projection_idempotent_and_complement():
    rng = np.random.default_rng(0)
    for _ in range(50):
        m = rng.integers(0, 5, size=(8, 8))
        A = pi(F5, m)
        assert pi(F5, A.matrix()) == A
    # the complement of V inside the J-supported matrices: A14 = -A15
    w = (unit(1, 4) - unit(1, 5)) % 5
    assert pi(F5, w) == Pattern.zero(F5)
    for b in basis_patterns(F5):
        assert int(np.sum(w * b.matrix())) % 5 == 0
