import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2syl.cyclo import Cyclo, canon, gram
from g2syl.supertheory import (SuperclassId, SuperLabel, SuperTheory, emit_supercharacter_table,
                               superclass_ids, superclass_of, superclass_positions,
                               superclass_subpiece, supercharacter_labels, supercharacter_closed_form,
                               tabulated_members, verify_partition)

from conftest import group, pattern_space

q = 5


@pytest.fixture(scope="module")
def theory(space5):
    return SuperTheory(space5)


@pytest.fixture(scope="module")
def table(theory):
    return theory.table()


def z(k):
    return Cyclo.zeta(5, k)


def test_superclass_examples(G5):
    F = G5.F
    assert superclass_of(G5.y(0, 0, 0, 0, 0, 3)) == SuperclassId("C6", (3,))
    assert superclass_of(G5.identity) == SuperclassId("C0", ())
    t2, s3, t4s = 2, 3, 4
    u = G5.y(0, t2, s3, F.sub(t4s, F.div(s3 * s3 % 5, t2)), 1, 2)
    assert superclass_of(u) == SuperclassId("C2", (t2,))
    assert superclass_subpiece(u) == ("y2y4", t4s)
    assert superclass_of(G5.y(1, 2, 0, 0, 0, 0)) == SuperclassId("C12", (1, 2))


def test_counts():
    from g2syl.ffield import FieldSpec
    assert len(superclass_ids(FieldSpec(5))) == 41
    assert len(superclass_ids(FieldSpec(3))) == 17
    assert len(supercharacter_labels(FieldSpec(5))) == 41


def test_sizes_sum_to_group_order(theory):
    sizes = theory.superclass_sizes
    assert int(sizes.sum()) == 1 + 4 * (1 + 5 + 25 + 125 + 625 + 625) + 16 * 625 == 15625
    by_kind = {}
    for sid, n in zip(theory.ids, sizes):
        by_kind.setdefault(sid.kind, set()).add(int(n))
    assert by_kind == {"C0": {1}, "C1": {q ** 4}, "C2": {q ** 4}, "C12": {q ** 4},
                       "C3": {q ** 3}, "C4": {q ** 2}, "C5": {q}, "C6": {1}}


def test_tabulated_members_match_classifier(G5):
    pos = superclass_positions(G5.F, G5.all_coords)
    for k, sid in enumerate(superclass_ids(G5.F)):
        assert np.array_equal(tabulated_members(G5, sid), np.flatnonzero(pos == k))


@pytest.mark.parametrize("q_", [3, 5])
def test_partition(q_):
    assert verify_partition(group(q_)).passed


def test_table_examples(table):
    for a in range(1, q):
        assert table.value(SuperLabel("F6", (a,)), SuperclassId("C0", ())) == q ** 4
        for t in range(1, q):
            assert table.value(SuperLabel("F4", (a,)), SuperclassId("C4", (t,))) == q ** 3 * z(2 * a * t)
            assert table.value(SuperLabel("F3", (a,)), SuperclassId("C2", (t,))) == 0
            assert table.value(SuperLabel("F5", (a,)), SuperclassId("C5", (t,))) == q ** 4 * z(a * t)
    for sid in table.superclasses:
        assert table.value(SuperLabel("F12", (0, 0)), sid) == 1
    for a12, a23, t1, t2 in [(1, 2, 3, 4), (4, 4, 1, 1), (2, 3, 2, 2)]:
        want = z(a12 * t1) * z(a23 * t2)
        assert table.value(SuperLabel("F12", (a12, a23)), SuperclassId("C12", (t1, t2))) == want


def test_table_matches_closed_forms(theory):
    assert np.array_equal(canon(theory.rep_values), canon(theory.tabulated))


def test_distinct_f6_supercharacters_orthogonal(theory):
    rows = [theory.labels.index(SuperLabel("F6", (a,))) for a in range(1, q)]
    V = theory.rep_values[rows]
    G = canon(gram(V, V, theory.superclass_sizes))
    for i in range(len(rows)):
        for j in range(len(rows)):
            if i != j:
                assert not G[i, j].any()


def test_supercharacter_closed_form_degree():
    from g2syl.ffield import FieldSpec
    F = FieldSpec(5)
    c = supercharacter_closed_form(F, SuperLabel("F6", (1,)), SuperclassId("C0", ()))
    assert c.tolist() == [q ** 4, 0, 0, 0, 0]


def test_verify_q3():
    assert SuperTheory(pattern_space(3)).verify().passed


def test_emit_formats(table):
    md = emit_supercharacter_table(table, "md").splitlines()
    assert md[0].startswith("Supercharacter table, q = 5")
    # title, blank, header, rule, size row, then one row per supercharacter
    assert len(md) == 5 + 41
    lines = emit_supercharacter_table(table, "csv").splitlines()
    assert lines[1].split(",")[:3] == ["size", "1", "625"]
    assert len(lines) == 2 + 41


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 15624), st.integers(0, 15624))
def test_superclass_invariant_under_conjugation(ui, gi):
    G5 = group(5)
    u, g = G5.element(ui), G5.element(gi)
    assert superclass_of(G5.conjugate(g, u)) == superclass_of(u)
