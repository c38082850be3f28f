"""The superclass partition, the supercharacters and their table.

Superclasses are labelled ``C0, C1(t1), C2(t2), C12(t1,t2), C3(t3), C4(t4),
C5(t5), C6(t6)`` with nonzero parameters.  Supercharacters are labelled by
the supermodule they come from: ``F12(A12,A23)`` for the linear ones and
``F3(A13)``, ``F4(A15)``, ``F5(A16)``, ``F6(A17)``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .cyclo import canon, counts_to_cyclo, gram
from .ffield import FieldSpec
from .matgroup import G2Syl, UElem
from .orbits import PatternSpace, family_codes
from .report import Report


class VerificationError(AssertionError):
    """A computed table disagrees with its closed form."""


class SuperclassId(NamedTuple):
    kind: str
    params: tuple[int, ...]

    def __str__(self):
        return self.kind if not self.params else f"{self.kind}({','.join(map(str, self.params))})"


class SuperLabel(NamedTuple):
    kind: str
    params: tuple[int, ...]

    def __str__(self):
        return f"{self.kind}({','.join(map(str, self.params))})"


SUPERCLASS_KINDS = ("C0", "C1", "C2", "C12", "C3", "C4", "C5", "C6")
SUPERLABEL_KINDS = ("F12", "F3", "F4", "F5", "F6")


def superclass_ids(F: FieldSpec) -> list[SuperclassId]:
    """All superclasses in table column order."""
    nz = range(1, F.q)
    out = [SuperclassId("C0", ())]
    out += [SuperclassId("C1", (t,)) for t in nz]
    out += [SuperclassId("C2", (t,)) for t in nz]
    out += [SuperclassId("C12", (a, b)) for a in nz for b in nz]
    for kind in ("C3", "C4", "C5", "C6"):
        out += [SuperclassId(kind, (t,)) for t in nz]
    return out


def superclass_positions(F: FieldSpec, t) -> np.ndarray:
    """Position in ``superclass_ids`` of each coordinate row (vectorised)."""
    t = np.asarray(t)
    q = F.q
    t1, t2, t3, t4, t5, t6 = (t[..., i] for i in range(6))
    off_c1 = 1
    off_c2 = off_c1 + q - 1
    off_c12 = off_c2 + q - 1
    off_c3 = off_c12 + (q - 1) ** 2
    off_c4, off_c5, off_c6 = off_c3 + q - 1, off_c3 + 2 * (q - 1), off_c3 + 3 * (q - 1)
    out = np.zeros(t.shape[:-1], dtype=np.int64)
    out = np.where(t6 != 0, off_c6 + t6 - 1, out)
    out = np.where(t5 != 0, off_c5 + t5 - 1, out)
    out = np.where(t4 != 0, off_c4 + t4 - 1, out)
    out = np.where(t3 != 0, off_c3 + t3 - 1, out)
    out = np.where(t2 != 0, off_c2 + t2 - 1, out)
    out = np.where(t1 != 0, off_c1 + t1 - 1, out)
    out = np.where((t1 != 0) & (t2 != 0), off_c12 + (t1 - 1) * (q - 1) + t2 - 1, out)
    return out


def superclass_of(u: UElem) -> SuperclassId:
    pos = int(superclass_positions(u.group.F, np.array(u.t)))
    return superclass_ids(u.group.F)[pos]


def superclass_subpiece(u: UElem) -> tuple[str, int] | None:
    """Which biorbit of C2(t2) contains u: ("y2y4", t4*) or ("y2y5", t5)."""
    F = u.group.F
    t1, t2, t3, t4, t5, _ = u.t
    if t1 != 0 or t2 == 0:
        return None
    t4s = F.add(t4, F.div(F.mul(t3, t3), t2))
    if t4s:
        return ("y2y4", t4s)
    return ("y2y5", F.sub(t5, F.div(F.pow(t3, 3), F.mul(t2, t2))))


def superclass_representative(G: G2Syl, sid: SuperclassId) -> UElem:
    t = [0] * 6
    if sid.kind == "C12":
        t[0], t[1] = sid.params
    elif sid.kind != "C0":
        t[int(sid.kind[1]) - 1] = sid.params[0]
    return G.y(*t)


def tabulated_members(G: G2Syl, sid: SuperclassId) -> np.ndarray:
    """Indices of the superclass as parametrised in the partition table."""
    F, q = G.F, G.q
    free = np.indices((q,) * 4).reshape(4, -1).T
    k = sid.kind
    if k == "C0":
        rows = [[0] * 6]
    elif k == "C6":
        rows = [[0, 0, 0, 0, 0, sid.params[0]]]
    elif k == "C5":
        rows = [[0, 0, 0, 0, sid.params[0], s6] for s6 in range(q)]
    elif k == "C4":
        rows = [[0, 0, 0, sid.params[0], s5, s6] for s5 in range(q) for s6 in range(q)]
    elif k == "C3":
        rows = [[0, 0, sid.params[0]] + list(s) for s in free[:q ** 3, 1:]]
    elif k == "C1":
        rows = [[sid.params[0], 0] + list(s) for s in free]
    elif k == "C12":
        rows = [list(sid.params) + list(s) for s in free]
    else:
        rows = []
        t2 = sid.params[0]
        for s3 in range(q):
            sq = F.div(F.mul(s3, s3), t2)
            for t4s in range(1, q):
                for s5 in range(q):
                    for s6 in range(q):
                        rows.append([0, t2, s3, F.sub(t4s, sq), s5, s6])
            cube = F.div(F.pow(s3, 3), F.mul(t2, t2))
            for t5 in range(q):
                for s6 in range(q):
                    rows.append([0, t2, s3, F.neg(sq), F.add(t5, cube), s6])
    return np.sort(G.index_array(np.array(rows, dtype=np.int64)))


def verify_partition(G: G2Syl) -> Report:
    F, q = G.F, G.q
    rep = Report("superclasses")
    ids = superclass_ids(F)
    pos = superclass_positions(F, G.all_coords)
    counts = np.bincount(pos, minlength=len(ids))
    rep.add("|K| = q^2 + 4q - 4", len(ids) == q * q + 4 * q - 4, {"K": len(ids)})
    rep.add("superclass sizes add up to |U|", counts.sum() == G.order)
    ok = True
    witness = None
    for i, sid in enumerate(ids):
        want = tabulated_members(G, sid)
        got = np.flatnonzero(pos == i)
        if not np.array_equal(want, got):
            ok, witness = False, str(sid)
            break
    rep.add("every superclass equals its tabulated set", ok, witness)
    expected = {"C0": 1, "C6": 1, "C5": q, "C4": q ** 2, "C3": q ** 3, "C2": q ** 4,
                "C1": q ** 4, "C12": q ** 4}
    rep.add("superclass sizes", all(counts[i] == expected[s.kind] for i, s in enumerate(ids)))
    rep.add("{1} is a superclass", counts[0] == 1 and pos[0] == 0)

    labels = G.class_labels
    per_class = np.full(labels.max() + 1, -1)
    per_class[labels] = pos
    rep.add("superclasses are unions of conjugacy classes",
            np.array_equal(per_class[labels], pos))

    # the two kinds of pieces inside each C2(t2)
    key = subpiece_keys(G)
    c2 = key >= 0
    piece_sizes = np.unique(key[c2], return_counts=True)[1]
    n24 = np.count_nonzero(piece_sizes == q ** 3)
    n25 = np.count_nonzero(piece_sizes == q ** 2)
    rep.add("C2 splits into (q-1)^2 pieces of size q^3 and (q-1)q of size q^2",
            n24 == (q - 1) ** 2 and n25 == (q - 1) * q and n24 + n25 == len(piece_sizes))
    return rep


def subpiece_keys(G: G2Syl) -> np.ndarray:
    """Integer key of the C2 biorbit of every element, -1 outside C2."""
    F, q = G.F, G.q
    t = G.all_coords
    c2 = (t[:, 0] == 0) & (t[:, 1] != 0)
    t2 = np.where(c2, t[:, 1], 1)
    t3, t4, t5 = t[:, 2], t[:, 3], t[:, 4]
    inv2 = F.vinv(t2)
    t4s = F.vadd(t4, F.vmul(F.vmul(t3, t3), inv2))
    t5s = F.vsub(t5, F.vmul(F.vmul(F.vmul(t3, t3), t3), F.vmul(inv2, inv2)))
    key = np.where(t4s != 0, t2 * q + t4s, q * q + t2 * q + t5s)
    return np.where(c2, key, -1)


# -- supercharacters ------------------------------------------------------------

def supercharacter_labels(F: FieldSpec) -> list[SuperLabel]:
    q = F.q
    out = [SuperLabel("F12", (a, b)) for a in range(q) for b in range(q)]
    for kind in ("F3", "F4", "F5", "F6"):
        out += [SuperLabel(kind, (a,)) for a in range(1, q)]
    return out


def supermodule_labels(F: FieldSpec, a) -> np.ndarray:
    """Position in ``supercharacter_labels`` of the supermodule holding each
    pattern, or -1 for patterns outside every supermodule."""
    a = np.asarray(a)
    q = F.q
    fam = family_codes(a)
    a12, a13, a15, a16, a17, a23 = (a[..., i] for i in range(6))
    base = q * q
    out = np.full(a.shape[:-1], -1, dtype=np.int64)
    out = np.where(fam == 0, a12 * q + a23, out)
    out = np.where((fam == 1) & (a23 == 0), base + a13 - 1, out)
    out = np.where(fam == 2, base + (q - 1) + a15 - 1, out)
    out = np.where(fam == 3, base + 2 * (q - 1) + a16 - 1, out)
    out = np.where((fam == 4) & (a23 == 0), base + 3 * (q - 1) + a17 - 1, out)
    return out


def supercharacter_closed_form(F: FieldSpec, label: SuperLabel, sid: SuperclassId) -> np.ndarray:
    """Tabulated supercharacter value as a zeta-count vector."""
    p, q = F.p, F.q
    out = np.zeros(p, dtype=np.int64)

    def put(mult, x):
        out[F.trace(x)] += mult

    k, s = sid.kind, sid.params
    m, c = F.mul, F.const
    if label.kind == "F12":
        a12, a23 = label.params
        e = 0
        if k in ("C1", "C12"):
            e = m(a12, s[0])
        if k == "C2":
            e = m(a23, s[0])
        if k == "C12":
            e = F.add(e, m(a23, s[1]))
        put(1, e)
        return out
    a = label.params[0]
    deg = {"F3": q, "F4": q ** 3, "F5": q ** 4, "F6": q ** 4}[label.kind]
    special = {"F3": "C3", "F4": "C4", "F5": "C5", "F6": "C6"}[label.kind]
    scale = {"F3": -1, "F4": 2, "F5": 1, "F6": 1}[label.kind]
    vanish = {"F3": ("C1", "C2", "C12"), "F4": ("C1", "C2", "C12", "C3"),
              "F5": ("C1", "C2", "C12", "C3", "C4"),
              "F6": ("C1", "C2", "C12", "C3", "C4", "C5")}[label.kind]
    if k in vanish:
        return out
    if k == special:
        put(deg, m(c(scale), m(a, s[0])))
    else:
        put(deg, 0)
    return out


@dataclass
class SupercharacterTable:
    field: FieldSpec
    labels: list[SuperLabel]
    superclasses: list[SuperclassId]
    sizes: np.ndarray
    values: np.ndarray  # (labels, superclasses, p) zeta counts

    def value(self, label: SuperLabel, sid: SuperclassId):
        i = self.labels.index(label)
        j = self.superclasses.index(sid)
        return counts_to_cyclo(self.values[i, j])

    def to_json_obj(self) -> dict:
        return {
            "q": self.field.q, "p": self.field.p,
            "superclasses": [{"id": str(s), "size": int(n)} for s, n in zip(self.superclasses, self.sizes)],
            "rows": [{"character": str(lab),
                      "values": {str(s): counts_to_cyclo(self.values[i, j]).to_json()
                                 for j, s in enumerate(self.superclasses)}}
                     for i, lab in enumerate(self.labels)],
        }


class SuperTheory:
    """Supercharacters of U evaluated through fixed patterns."""

    def __init__(self, space: PatternSpace):
        self.space = space
        self.G = space.G
        self.F = space.F
        self.ids = superclass_ids(self.F)
        self.labels = supercharacter_labels(self.F)

    @cached_property
    def pattern_labels(self) -> np.ndarray:
        return supermodule_labels(self.F, self.space.all_slots)

    @cached_property
    def rep_indices(self) -> np.ndarray:
        return np.array([superclass_representative(self.G, s).index for s in self.ids])

    @cached_property
    def superclass_sizes(self) -> np.ndarray:
        pos = superclass_positions(self.F, self.G.all_coords)
        return np.bincount(pos, minlength=len(self.ids))

    @cached_property
    def rep_values(self) -> np.ndarray:
        return self.space.character_values(self.pattern_labels, len(self.labels), self.rep_indices)

    @cached_property
    def tabulated(self) -> np.ndarray:
        return np.array([[supercharacter_closed_form(self.F, lab, s) for s in self.ids] for lab in self.labels])

    def table(self) -> SupercharacterTable:
        return SupercharacterTable(self.F, self.labels, self.ids, self.superclass_sizes, self.rep_values)

    def verify(self) -> Report:
        F, q, G = self.F, self.F.q, self.G
        rep = Report("supercharacters")
        n = len(self.labels)
        rep.add("(a) |X| = |K|", n == len(self.ids), {"X": n, "K": len(self.ids)})

        # (b) constancy on every member of every superclass
        pos = superclass_positions(F, G.all_coords)
        want = canon(self.rep_values)
        ok, witness = True, None
        for us, vals in self.space.iter_character_values(self.pattern_labels, n):
            diff = np.any(canon(vals) != want[:, pos[us], :], axis=-1)
            if diff.any():
                ok = False
                i, j = np.argwhere(diff)[0]
                witness = {"character": str(self.labels[i]), "element": G.element(int(us[j])).t}
                break
        rep.add("(b) supercharacters are constant on superclasses (all elements)", ok, witness)

        # (c) pairwise orthogonality
        gm = canon(gram(self.rep_values, self.rep_values, self.superclass_sizes))
        off = gm.copy()
        off[np.arange(n), np.arange(n)] = 0
        diag = gm[np.arange(n), np.arange(n)]
        rep.add("(c) supercharacters are pairwise orthogonal", not off.any())
        rep.add("(c) norms are positive rationals", not diag[:, 1:].any() and np.all(diag[:, 0] > 0))
        rep.add("(d) {1} is a superclass", self.superclass_sizes[0] == 1 and self.ids[0].kind == "C0")

        bad = np.argwhere(np.any(canon(self.rep_values) != canon(self.tabulated), axis=-1))
        rep.add("values equal the tabulated closed forms", len(bad) == 0,
                None if not len(bad) else {"character": str(self.labels[bad[0][0]]),
                                           "superclass": str(self.ids[bad[0][1]])})

        # regular character: sum_X X(1)/<X,X> X
        norms = diag[:, 0] // G.order
        exact = np.all(diag[:, 0] % G.order == 0)
        degs = canon(self.rep_values)[:, 0, 0]
        weights = degs // norms
        exact &= np.all(degs % norms == 0)
        reg = np.einsum("i,ijk->jk", weights, canon(self.rep_values))
        target = np.zeros_like(reg)
        target[0, 0] = G.order
        rep.add("sum of X(1)/<X,X> X is the regular character", exact and np.array_equal(reg, target))

        dims = np.bincount(self.pattern_labels[self.pattern_labels >= 0], minlength=n)
        rep.add("supermodule dimensions equal the degrees", np.array_equal(dims, degs))
        rep.add("total supermodule dimension", True,
                {"sum_dim": int(dims.sum()), "q^6": q ** 6})
        return rep


def emit_supercharacter_table(table: SupercharacterTable, fmt: str = "md") -> str:
    F = table.field
    if fmt == "json":
        return json.dumps(table.to_json_obj(), indent=1)
    head = ["character"] + [str(s) for s in table.superclasses]
    rows = [[str(lab)] + [repr(counts_to_cyclo(table.values[i, j]))
                          for j in range(len(table.superclasses))]
            for i, lab in enumerate(table.labels)]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(head)
        w.writerow(["size"] + [int(s) for s in table.sizes])
        w.writerows(rows)
        return buf.getvalue()
    if fmt != "md":
        raise ValueError(f"unknown format {fmt}")
    lines = [f"Supercharacter table, q = {F.q} (z = exp(2 pi i / {F.p}))", "",
             "| " + " | ".join(head) + " |", "|" + "---|" * len(head),
             "| size | " + " | ".join(str(int(s)) for s in table.sizes) + " |"]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines)


def verified_supercharacter_table(space: PatternSpace) -> SupercharacterTable:
    """Compute the table and refuse to return it if it disagrees with the
    tabulated closed forms."""
    th = SuperTheory(space)
    if not np.array_equal(canon(th.rep_values), canon(th.tabulated)):
        raise VerificationError("computed supercharacter values disagree with the closed forms")
    return th.table()
