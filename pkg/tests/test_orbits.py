import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2syl.cyclo import canon, gram, inner_product
from g2syl.monomial import Pattern, act_left
from g2syl.orbits import (canonical_core, family_of, orbit_formula, stabilizer_matches_closed_form,
                          structure_of, closed_form_stabilizer, verge, verify_orbits)

from conftest import group, pattern_space

q = 5


@pytest.fixture(scope="module")
def F(G5):
    return G5.F


def test_orbit_sizes(space5, F):
    assert space5.orbit_of(Pattern.make(F, A17=2)).dimension == q ** 3
    assert space5.orbit_of(Pattern.make(F, A13=1)).dimension == q
    zero = space5.orbit_of(Pattern.zero(F))
    assert zero.members == [Pattern.zero(F)]
    assert len(zero.stabilizer) == q ** 6


def test_family_classification(F):
    assert family_of(Pattern.make(F, A17=1, A12=3)) == "F6"
    assert family_of(Pattern.make(F, A16=1, A13=3)) == "F5"
    assert family_of(Pattern.make(F, A15=4)) == "F4"
    assert family_of(Pattern.make(F, A13=1, A23=2)) == "F3"
    assert family_of(Pattern.make(F, A12=1, A23=2)) == "F12"


def test_stabilizers_against_table(G5, space5, F):
    f3 = Pattern.make(F, A13=2)
    st3 = space5.stabilizer_indices(f3)
    assert len(st3) == q ** 5
    # Y1 Y3 Y4 Y5 Y6: exactly the elements with t2 = 0
    assert set(G5.coords_of(st3)[:, 1].tolist()) == {0}
    f5 = Pattern.make(F, A16=3, A13=1, A15=2)
    assert len(space5.stabilizer_indices(f5)) == q ** 4
    assert stabilizer_matches_closed_form(G5, f5)
    assert stabilizer_matches_closed_form(G5, Pattern.make(F, A12=1, A23=4))
    assert stabilizer_matches_closed_form(G5, Pattern.make(F, A17=1, A16=2, A15=3, A13=4))


def test_f5_stabilizer_solves_for_t4(G5, F):
    a13, a15, a16 = 1, 2, 3
    stab = closed_form_stabilizer(G5, Pattern.make(F, A16=a16, A13=a13, A15=a15))
    assert len(stab) == q ** 4
    for u in stab:
        _, t2, t3, t4, _, _ = u.t
        assert (a16 * t4) % q == (-a13 * t2 - 2 * a15 * t3) % q


def test_core_examples(F):
    A = Pattern.make(F, A17=2, A13=3)
    assert canonical_core(A) == Pattern.make(F, A17=2)
    B = Pattern.make(F, A17=2, A13=3, A16=1, A15=4)
    # A12 + (A13 A16 + A15^2) / A17 = (3 + 16) / 2 = 19 * 3 = 2 in F_5
    assert canonical_core(B) == Pattern.make(F, A17=2, A12=2)
    for C in (Pattern.make(F, A15=1, A23=3), Pattern.make(F, A13=1), Pattern.make(F, A12=2)):
        assert canonical_core(C) == C
        assert structure_of(C).is_core


def test_structure_examples(F):
    s = structure_of(Pattern.make(F, A17=1, A23=1))
    assert not s.is_hook_separated
    assert structure_of(Pattern.make(F, A17=1)).is_hook_separated
    z = structure_of(Pattern.zero(F))
    assert z.main == frozenset() and verge(Pattern.zero(F)) == ()
    s = structure_of(Pattern.make(F, A15=1, A23=2))
    assert s.main == {(1, 5), (2, 3)} and s.minor == {(1, 4)}
    assert s.is_staircase and s.is_hook_separated


def test_psi_zero_is_trivial(space5, F):
    psi = space5.psi(Pattern.zero(F))
    assert all(v == 1 for v in psi.values())


def test_hook_separated_inner_products(space5, F):
    A = space5.psi(Pattern.make(F, A15=1, A23=2))
    B = space5.psi(Pattern.make(F, A15=1, A23=3))
    assert inner_product(A, A) == 2 * q - 1
    assert inner_product(A, B) == q - 1
    C = space5.psi(Pattern.make(F, A13=2))
    assert inner_product(C, C) == 1
    D = space5.psi(Pattern.make(F, A13=3))
    assert inner_product(C, D) == 0


def test_orbit_formula_covers_orbit(space5, F):
    A = Pattern.make(F, A17=1, A16=2, A12=3)
    pts = {orbit_formula(A, a, b, c, d).index for a in range(q) for b in range(q)
           for c in range(q) for d in range(q)}
    assert pts == set(space5.orbit_indices(A).tolist())


def test_verge1_orthogonality(space5):
    table = space5.orbit_character_table()
    members = space5.orbit_members
    seeds = [space5.pattern(int(m[0])) for m in members]
    v1 = [verge(A, row=1) for A in seeds]
    G = canon(gram(table, table, space5.class_sizes()))
    for i in range(len(seeds)):
        for j in range(len(seeds)):
            if v1[i] != v1[j]:
                assert not G[i, j].any()


def test_left_action_twist(space5, F):
    G5 = space5.G
    for a12, a13, t1 in [(0, 1, 2), (3, 2, 4), (1, 4, 1)]:
        a23 = F.mul(t1, a13)
        A = Pattern.make(F, A12=a12, A13=a13, A23=a23)
        y = G5.root_element(1, t1)
        image = {act_left(y, space5.pattern(int(i))).index for i in space5.orbit_indices(A)}
        target = Pattern.make(F, A12=a12, A13=a13)
        assert image == set(space5.orbit_indices(target).tolist())
        assert inner_product(space5.psi(A), space5.psi(target)) == 1


def test_verify_orbits_q3():
    assert verify_orbits(pattern_space(3)).passed


@settings(max_examples=60, deadline=None)
@given(st.tuples(*[st.integers(0, 4)] * 6))
def test_orbit_stabilizer_and_core(a):
    space = pattern_space(5)
    A = Pattern(space.F, a)
    orbit = space.orbit_indices(A)
    assert len(orbit) * len(space.stabilizer_indices(A)) == q ** 6
    core = canonical_core(A)
    assert core.index in set(orbit.tolist())
    assert family_of(core) == family_of(A)
