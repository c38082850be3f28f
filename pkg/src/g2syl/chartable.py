"""Conjugacy classes and the irreducible characters of U for p > 3.

Each conjugacy class contains exactly one element of a fixed "column form"
(for instance ``y(0, t2*, 0, t4, t5, 0)``), and the closed-form character
values are read off from the coordinates of that element.  The closed forms
are checked against characters induced from linear characters of the
subgroups

* ``H = Y1 Y4 Y5 Y6``      (t2 = t3 = 0),
* ``T = Y2 Y3 Y4 Y5 Y6``   (t1 = 0),
* ``Y1 Y3 Y4 Y5 Y6``       (t2 = 0),

computed by brute force as ``[U:K] / |c| * sum_{h in c & K} lambda(h)``.
Exponential sums are summed term by term in zeta-count form.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .cyclo import ClassFunction, Cyclo, canon, counts_from_exponents, counts_to_cyclo, gram
from .ffield import FieldSpec
from .matgroup import (G2Syl, UElem, closed_form_matrix, coords_from_matrix, matmul,
                       unitriangular_inverse)
from .monomial import apply_linear
from .orbits import PatternSpace
from .report import Report
from .supertheory import (VerificationError, superclass_ids, superclass_positions,
                          supercharacter_labels, supermodule_labels)


class CharacteristicError(ValueError):
    """Raised when a p > 3 only routine is asked for p <= 3."""


def require_p_gt_3(F: FieldSpec):
    if F.p <= 3:
        raise CharacteristicError(
            f"the character table of U is only available for characteristic p > 3 (got p = {F.p})")


# -- field arithmetic on arrays, for writing polynomial formulas -------------

class _Arr:
    """Thin wrapper so that polynomial formulas over F_q read naturally.

    Plain ints are taken as elements of the prime field.
    """

    __slots__ = ("F", "v")

    def __init__(self, F: FieldSpec, v):
        self.F = F
        self.v = np.asarray(v, dtype=np.int64)

    def _c(self, o):
        return o.v if isinstance(o, _Arr) else self.F.const(o)

    def __add__(self, o):
        return _Arr(self.F, self.F.vadd(self.v, self._c(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return _Arr(self.F, self.F.vsub(self.v, self._c(o)))

    def __rsub__(self, o):
        return _Arr(self.F, self.F.vsub(self._c(o), self.v))

    def __mul__(self, o):
        return _Arr(self.F, self.F.vmul(self.v, self._c(o)))

    __rmul__ = __mul__

    def __neg__(self):
        return _Arr(self.F, self.F.vneg(self.v))

    def __pow__(self, n: int):
        out = _Arr(self.F, np.ones_like(self.v))
        for _ in range(n):
            out = out * self
        return out


def _zero_like(x: _Arr) -> _Arr:
    return _Arr(x.F, np.zeros_like(x.v))


# -- conjugation formulas --------------------------------------------------

CONJUGATION_TARGETS = ("y1", "y2", "y3", "y4", "y5", "y6", "y3y5", "y2y4y5", "y2y1")
# which coordinates of the conjugated element are parameters
TARGET_SLOTS = {"y1": (0,), "y2": (1,), "y3": (2,), "y4": (3,), "y5": (4,), "y6": (5,),
                "y3y5": (2, 4), "y2y4y5": (1, 3, 4), "y2y1": (0, 1)}


def conjugation_formula(F: FieldSpec, target: str, r, t) -> np.ndarray:
    """Coordinates of ``u x u^-1`` for ``u = y(r)`` and ``x = y(t)`` of the
    given shape, by the explicit polynomial formulas (batched)."""
    r = [_Arr(F, np.asarray(r)[..., i]) for i in range(6)]
    t = [_Arr(F, np.asarray(t)[..., i]) for i in range(6)]
    r1, r2, r3, r4, r5, _ = r
    t1, t2, t3, t4, t5, t6 = t
    z = _zero_like(r1)
    if target == "y6":
        out = (z, z, z, z, z, t6 + z)
    elif target == "y5":
        out = (z, z, z, z, t5 + z, r2 * t5)
    elif target == "y4":
        out = (z, z, z, t4 + z, 3 * r1 * t4, 3 * r1 * r2 * t4 + 3 * r3 * t4)
    elif target == "y3":
        out = (z, z, t3 + z, 2 * r1 * t3, 3 * r1 ** 2 * t3,
               3 * r1 ** 2 * r2 * t3 - 3 * r1 * t3 ** 2 - 3 * t3 * r4)
    elif target == "y2":
        out = (z, t2 + z, -r1 * t2, -t2 * r1 ** 2, -t2 * r1 ** 3,
               -t2 * r5 - t2 ** 2 * r1 ** 3 - t2 * r1 ** 3 * r2)
    elif target == "y1":
        out = (t1 + z, z, r2 * t1, -r2 * t1 ** 2 - 2 * t1 * r3,
               r2 * t1 ** 3 - 6 * r1 * r3 * t1 + 3 * r3 * t1 ** 2 - 3 * t1 * r4,
               2 * r2 ** 2 * t1 ** 3 - 6 * r1 * r2 * r3 * t1 + 3 * r2 * r3 * t1 ** 2
               - 3 * r2 * r4 * t1 - 3 * t1 * r3 ** 2)
    elif target == "y3y5":
        out = (z, z, t3 + z, 2 * r1 * t3, t5 + 3 * r1 ** 2 * t3,
               r2 * t5 + 3 * r1 ** 2 * r2 * t3 - 3 * r1 * t3 ** 2 - 3 * t3 * r4)
    elif target == "y2y4y5":
        out = (z, t2 + z, -r1 * t2, t4 - t2 * r1 ** 2, t5 - t2 * r1 ** 3 + 3 * r1 * t4,
               -t2 * r5 - t2 ** 2 * r1 ** 3 - t2 * r1 ** 3 * r2 + 3 * r1 * r2 * t4
               + 3 * r3 * t4 + r2 * t5)
    elif target == "y2y1":
        out = (t1 + z, t2 + z, r2 * t1 - r1 * t2,
               -r2 * t1 ** 2 - 2 * t1 * r3 - t2 * r1 ** 2 + 2 * t1 * t2 * r1,
               r2 * t1 ** 3 - 6 * r1 * r3 * t1 + 3 * r3 * t1 ** 2 - 3 * t1 * r4
               - t2 * r1 ** 3 - 3 * r1 * t1 ** 2 * t2 + 3 * t1 * t2 * r1 ** 2,
               2 * r2 ** 2 * t1 ** 3 - 6 * r1 * r2 * r3 * t1 + 3 * r2 * r3 * t1 ** 2
               - 3 * r2 * r4 * t1 - 3 * t1 * r3 ** 2
               - t2 * r5 - t2 ** 2 * r1 ** 3 - t2 * r1 ** 3 * r2
               - 6 * r1 * r2 * t1 ** 2 * t2 + 3 * t1 * t2 * r1 ** 2 * r2
               + 3 * r1 ** 2 * t1 * t2 ** 2)
    else:
        raise ValueError(f"unknown conjugation target {target!r}")
    return np.stack([x.v for x in out], axis=-1)


def conjugate_coords(F: FieldSpec, r, t) -> np.ndarray:
    """Coordinates of ``y(r) y(t) y(r)^-1`` by matrix multiplication (batched)."""
    u = closed_form_matrix(F, r)
    m = matmul(F, matmul(F, u, closed_form_matrix(F, t)), unitriangular_inverse(F, u))
    return coords_from_matrix(F, m)


# -- class shapes ------------------------------------------------------------

# Each class contains exactly one element matching one of these forms:
# "0" zero, "*" nonzero, "." anything.  Order is the column order of the table.
COLUMN_FORMS = {
    "I": "000000",
    "y1y6": "*0000.",
    "y2y4y5": "0*0..0",
    "y2y1": "**0000",
    "y3y5": "00*0.0",
    "y4": "000*00",
    "y5": "0000*0",
    "y6": "00000*",
}
COLUMNS = tuple(COLUMN_FORMS)

# (log_q of the class size, free coordinates, functionally determined coordinates)
CLASS_SHAPES = {
    "I": (0, (), ()),
    "y6": (0, (), ()),
    "y5": (1, (5,), ()),
    "y4": (2, (4, 5), ()),
    "y3y5": (2, (3, 5), (4,)),
    "y2y4y5": (2, (2, 5), (3, 4)),
    "y1y6": (3, (2, 3, 4), (5,)),
    "y2y1": (4, (2, 3, 4, 5), ()),
}


def form_codes(coords, forms: dict[str, str]) -> np.ndarray:
    """Index into ``forms`` of the form each coordinate row matches, or -1."""
    coords = np.asarray(coords)
    out = np.full(coords.shape[:-1], -1, dtype=np.int64)
    for k, form in enumerate(forms.values()):
        ok = np.ones(coords.shape[:-1], dtype=bool)
        for i, ch in enumerate(form):
            if ch == "0":
                ok &= coords[..., i] == 0
            elif ch == "*":
                ok &= coords[..., i] != 0
        out = np.where(ok, k, out)
    return out


def column_representatives(coords, labels, n_classes, forms) -> tuple[np.ndarray, np.ndarray]:
    """Per class: the number of column-form members and the (last) one found."""
    code = form_codes(coords, forms)
    hit = np.flatnonzero(code >= 0)
    counts = np.bincount(labels[hit], minlength=n_classes)
    reps = np.full(n_classes, -1, dtype=np.int64)
    reps[labels[hit]] = hit
    return counts, reps


@dataclass
class ConjClass:
    rep: UElem
    members: np.ndarray  # element indices
    column: str

    @property
    def size(self) -> int:
        return len(self.members)

    def elements(self) -> list[UElem]:
        G = self.rep.group
        return [G.element(int(i)) for i in self.members]


def conjugacy_classes_bruteforce(G: G2Syl) -> list[ConjClass]:
    """Conjugacy classes by connected components of the conjugation action of
    the root generators, each with its column-form representative."""
    require_p_gt_3(G.F)
    labels = G.class_labels
    n = int(labels.max()) + 1
    counts, reps = column_representatives(G.all_coords, labels, n, COLUMN_FORMS)
    if np.any(counts != 1):
        c = int(np.flatnonzero(counts != 1)[0])
        raise VerificationError(f"class {c} has {counts[c]} column-form members")
    codes = form_codes(G.all_coords[reps], COLUMN_FORMS)
    return [ConjClass(G.element(int(r)), m, COLUMNS[k])
            for r, m, k in zip(reps, G.class_members, codes)]


def verify_conjugacy_classes(G: G2Syl, n_pairs: int = 10 ** 4, seed: int = 0) -> Report:
    """Conjugation formulas, class shapes and the superclass/class relations."""
    require_p_gt_3(G.F)
    F, q = G.F, G.q
    rep = Report("conjugacy classes")
    rng = np.random.default_rng(seed)

    # (i) conjugation formulas on random (u, x) pairs, per target shape
    for target in CONJUGATION_TARGETS:
        r = rng.integers(0, q, size=(n_pairs, 6))
        t = np.zeros((n_pairs, 6), dtype=np.int64)
        for i in TARGET_SLOTS[target]:
            t[:, i] = rng.integers(0, q, size=n_pairs)
        got = conjugate_coords(F, r, t)
        want = conjugation_formula(F, target, r, t)
        bad = np.flatnonzero(np.any(got != want, axis=-1))
        rep.add(f"conjugation formula for {target} ({n_pairs} random pairs)", len(bad) == 0,
                None if not len(bad) else {"u": r[bad[0]], "x": t[bad[0]],
                                           "matrix": got[bad[0]], "formula": want[bad[0]]})

    labels = G.class_labels
    n = int(labels.max()) + 1
    sizes = np.bincount(labels)
    rep.add("class count is q^3 + 2q^2 - q - 1", n == q ** 3 + 2 * q ** 2 - q - 1,
            {"classes": n})
    want_sizes = {1: 1 + (q - 1), q: q - 1, q ** 2: (q - 1) + (q - 1) * q + (q - 1) * q * q,
                  q ** 3: (q - 1) * q, q ** 4: (q - 1) ** 2}
    got_sizes = dict(zip(*np.unique(sizes, return_counts=True)))
    rep.add("class size multiset", {int(k): int(v) for k, v in got_sizes.items()} == want_sizes,
            {"sizes": {int(k): int(v) for k, v in got_sizes.items()}})

    # (ii) one column-form member per class, with the tabulated shape
    counts, reps = column_representatives(G.all_coords, labels, n, COLUMN_FORMS)
    rep.add("every class has exactly one column-form representative", np.all(counts == 1),
            {"counts": dict(zip(*map(np.ndarray.tolist, np.unique(counts, return_counts=True))))})
    if not np.all(counts == 1):
        return rep
    cols = form_codes(G.all_coords[reps], COLUMN_FORMS)
    shape_ok, witness = True, None
    depends: dict[str, dict[int, set]] = {}
    for c in range(n):
        col = COLUMNS[cols[c]]
        exp, free, hats = CLASS_SHAPES[col]
        members = G.class_members[c]
        x = G.all_coords[members]
        fixed = [i for i in range(6) if i not in free and i not in hats]
        ok = len(members) == q ** exp
        ok &= bool(np.all(x[:, fixed] == G.all_coords[reps[c]][fixed]))
        # the free coordinates run through F_q^free exactly once each
        key = G.index_array(np.pad(x[:, list(free)], ((0, 0), (6 - len(free), 0))))
        ok &= len(np.unique(key)) == q ** len(free)
        for h in hats:
            for f in free:
                # does the hat coordinate change when only f changes?
                others = [g for g in free if g != f]
                k2 = G.index_array(np.pad(x[:, others], ((0, 0), (6 - len(others), 0))))
                pairs = np.unique(np.stack([k2, x[:, h]], axis=1), axis=0)
                if len(pairs) > len(np.unique(k2)):
                    depends.setdefault(col, {}).setdefault(h + 1, set()).add(f + 1)
        if not ok and shape_ok:
            shape_ok, witness = False, {"class": c, "column": col, "rep": G.all_coords[reps[c]]}
    rep.add("class sizes and free/determined coordinates match the tabulated shapes",
            shape_ok, witness)
    rep.add("observed dependence of determined coordinates (informational)", True,
            {col: {f"s{h}": sorted(f"s{f}" for f in fs) for h, fs in d.items()}
             for col, d in depends.items()})

    # (iii) superclasses versus classes
    pos = superclass_positions(F, G.all_coords)
    ids = superclass_ids(F)
    class_super = np.full(n, -1, dtype=np.int64)
    class_super[labels] = pos
    within = np.all(class_super[labels] == pos)
    rep.add("superclasses are unions of classes", within)
    rep_cols = np.array([COLUMNS[k] for k in cols])
    ok, witness = True, None
    expected_count = {"C0": 1, "C6": 1, "C5": 1, "C4": 1, "C12": 1, "C3": q, "C2": q * q, "C1": q}
    expected_col = {"C0": "I", "C6": "y6", "C5": "y5", "C4": "y4", "C12": "y2y1",
                    "C3": "y3y5", "C2": "y2y4y5", "C1": "y1y6"}
    for s, sid in enumerate(ids):
        cls = np.flatnonzero(class_super == s)
        good = len(cls) == expected_count[sid.kind] and np.all(rep_cols[cls] == expected_col[sid.kind])
        if not good and ok:
            ok, witness = False, {"superclass": str(sid), "classes": len(cls)}
    rep.add("superclasses split into the tabulated classes", ok, witness)
    return rep


# -- irreducible characters ------------------------------------------------

CHAR_FAMILIES = ("lin", "3q", "4q", "5q", "6q2")
FAMILY_PARAMS = {"lin": ("A12", "A23"), "3q": ("A13",), "4q": ("A15", "A23"),
                 "5q": ("A16", "A23", "A13"), "6q2": ("A17", "A12")}
FAMILY_DEGREE_EXP = {"lin": 0, "3q": 1, "4q": 1, "5q": 1, "6q2": 2}


def character_params(F: FieldSpec) -> list[tuple[str, tuple[int, ...]]]:
    q = F.q
    nz, al = range(1, q), range(q)
    out = [("lin", (a, b)) for a in al for b in al]
    out += [("3q", (a,)) for a in nz]
    out += [("4q", (a, b)) for a in nz for b in al]
    out += [("5q", (a, b, c)) for a in nz for b in al for c in al]
    out += [("6q2", (a, b)) for a in nz for b in al]
    return out


def character_name(family: str, params) -> str:
    return f"chi_{family}({','.join(map(str, params))})"


def _check_params(F: FieldSpec, family: str, params):
    if family not in CHAR_FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if len(params) != len(FAMILY_PARAMS[family]):
        raise ValueError(f"{family} takes parameters {FAMILY_PARAMS[family]}")
    for i, x in enumerate(params):
        if not 0 <= x < F.q:
            raise ValueError(f"parameter {x} is not a field element code")
        if i == 0 and family != "lin" and x == 0:
            raise ValueError(f"{FAMILY_PARAMS[family][0]} must be nonzero for {family}")


def _sum_counts(F: FieldSpec, scale: int, codes: _Arr) -> np.ndarray:
    return scale * counts_from_exponents(F.vtrace(codes.v), F.p)


def character_closed_form(F: FieldSpec, family: str, params, column: str, t) -> np.ndarray:
    """Closed-form value of a character at a column-form element, as zeta counts.

    Exponential sums over r in F_q are evaluated term by term.
    """
    q = F.q
    t1, t2, t3, t4, t5, t6 = (_Arr(F, x) for x in t)
    r = _Arr(F, np.arange(q))
    zero = np.zeros(F.p, dtype=np.int64)

    def const(scale, x):
        return _sum_counts(F, scale, x)

    if family == "lin":
        a12, a23 = params
        return const(1, a12 * t1 + a23 * t2)
    if family == "3q":
        (a13,) = params
        if column in ("y1y6", "y2y4y5", "y2y1"):
            return zero
        if column == "y3y5":
            return const(q, -(a13 * t3))
        return const(q, _Arr(F, 0))
    if family == "4q":
        a15, a23 = params
        if column in ("y1y6", "y2y1", "y3y5"):
            return zero
        if column == "y2y4y5":
            return const(1, -2 * a15 * t2 * r ** 2 + 2 * a15 * t4 + a23 * t2)
        if column == "y4":
            return const(q, 2 * a15 * t4)
        return const(q, _Arr(F, 0))
    if family == "5q":
        a16, a23, a13 = params
        if column in ("y1y6", "y2y1", "y4"):
            return zero
        if column == "y2y4y5":
            return const(1, a13 * t2 * r - a16 * t2 * r ** 3 + 3 * a16 * t4 * r
                         + a16 * t5 + a23 * t2)
        if column == "y3y5":
            return const(1, 3 * a16 * t3 * r ** 2 + a16 * t5 - a13 * t3)
        if column == "y5":
            return const(q, a16 * t5)
        return const(q, _Arr(F, 0))
    if family == "6q2":
        a17, a12 = params
        if column == "y1y6":
            return const(1, a17 * t6 + a12 * t1 - 3 * a17 * t1 * r ** 2)
        if column == "y6":
            return const(q * q, a17 * t6)
        if column == "I":
            return const(q * q, _Arr(F, 0))
        return zero
    raise ValueError(f"unknown family {family!r}")


# Inducing subgroup K (as a coordinate mask) and the linear character
# lambda(h) = theta(sum_i c_i t_i(h)) on it, for each family.
def induction_data(F: FieldSpec, family: str, params) -> tuple[str, np.ndarray]:
    c = np.zeros(6, dtype=np.int64)
    m, k = F.mul, F.const
    if family == "lin":
        c[0], c[1] = params
        return "U", c
    if family == "3q":
        c[2] = F.neg(params[0])
        return "t2=0", c
    if family == "4q":
        a15, a23 = params
        c[1], c[3] = a23, m(k(2), a15)
        return "T", c
    if family == "5q":
        a16, a23, a13 = params
        c[1], c[2], c[4] = a23, F.neg(a13), a16
        return "T", c
    if family == "6q2":
        a17, a12 = params
        c[0], c[5] = a12, a17
        return "H", c
    raise ValueError(f"unknown family {family!r}")


SUBGROUP_MASKS = {"U": (), "t2=0": (1,), "T": (0,), "H": (1, 2), "N": (0, 1, 2)}


def subgroup_indices(G: G2Syl, name: str) -> np.ndarray:
    """Indices of the coordinate subgroup where the listed coordinates vanish."""
    zero = SUBGROUP_MASKS[name]
    keep = np.ones(G.order, dtype=bool)
    for i in zero:
        keep &= G.all_coords[:, i] == 0
    return np.flatnonzero(keep)


def _exact_divide(counts: np.ndarray, divisor: np.ndarray) -> np.ndarray:
    """Divide canonical coefficients by per-class integers, insisting on exactness."""
    c = canon(counts)
    d = np.asarray(divisor)[..., None]
    if np.any(c % d):
        raise VerificationError("induced character value is not an algebraic integer")
    out = np.zeros(counts.shape, dtype=np.int64)
    out[..., :-1] = c // d
    return out


def induced_counts(G: G2Syl, K: np.ndarray, coeffs: np.ndarray, labels: np.ndarray,
                   sizes: np.ndarray) -> np.ndarray:
    """Values of Ind_K^U theta(coeffs . t) on every class, in canonical zeta counts.

    ``coeffs`` has shape (n, 6); the result has shape (n, classes, p).
    """
    F, p = G.F, G.F.p
    n, C = len(coeffs), len(sizes)
    e = F.vtrace(apply_linear(F, coeffs, G.all_coords[K].T))  # (n, |K|)
    key = (np.arange(n)[:, None] * C + labels[K][None, :]) * p + e
    sums = np.bincount(key.ravel(), minlength=n * C * p).reshape(n, C, p)
    index = G.order // len(K)
    return _exact_divide(sums * index, sizes[None, :])


@dataclass
class IrrChar:
    family: str
    params: tuple[int, ...]
    values: ClassFunction

    @property
    def name(self) -> str:
        return character_name(self.family, self.params)

    @property
    def degree(self) -> int:
        return int(self.values.degree.to_rational())


class CharacterTable:
    """Closed-form irreducible characters of U on the brute-force classes."""

    def __init__(self, G: G2Syl):
        require_p_gt_3(G.F)
        self.G = G
        self.F = G.F
        self.q = G.q

    @cached_property
    def classes(self) -> list[ConjClass]:
        return conjugacy_classes_bruteforce(self.G)

    @cached_property
    def sizes(self) -> np.ndarray:
        return np.array([c.size for c in self.classes], dtype=np.int64)

    @cached_property
    def params(self) -> list[tuple[str, tuple[int, ...]]]:
        return character_params(self.F)

    @cached_property
    def values(self) -> np.ndarray:
        """Closed-form values, shape (characters, classes, p), canonical."""
        out = np.array([[character_closed_form(self.F, fam, par, c.column, c.rep.t) for c in self.classes]
                        for fam, par in self.params])
        return _exact_divide(out, np.ones(len(self.classes), dtype=np.int64))

    @cached_property
    def induced(self) -> np.ndarray:
        """The same characters computed as induced characters by brute force."""
        G = self.G
        labels = G.class_labels
        out = np.zeros_like(self.values)
        groups: dict[str, list[int]] = {}
        coeffs = []
        for i, (fam, par) in enumerate(self.params):
            name, c = induction_data(self.F, fam, par)
            groups.setdefault(name, []).append(i)
            coeffs.append(c)
        coeffs = np.array(coeffs)
        for name, rows in groups.items():
            K = subgroup_indices(G, name)
            out[rows] = induced_counts(G, K, coeffs[rows], labels, self.sizes)
        return out

    def index(self, family: str, params) -> int:
        return self.params.index((family, tuple(params)))

    def irr_char(self, family: str, params) -> IrrChar:
        params = tuple(int(x) for x in params)
        _check_params(self.F, family, params)
        row = self.values[self.index(family, params)]
        entries = [(c.rep, c.size, counts_to_cyclo(v)) for c, v in zip(self.classes, row)]
        return IrrChar(family, params, ClassFunction(entries, self.G.order))

    def value(self, family: str, params, u: UElem) -> Cyclo:
        """Character value at an arbitrary element, through its class."""
        params = tuple(int(x) for x in params)
        _check_params(self.F, family, params)
        c = int(self.G.class_labels[u.index])
        return counts_to_cyclo(self.values[self.index(family, params), c])

    def verify(self, space: PatternSpace | None = None) -> Report:
        F, q, G = self.F, self.q, self.G
        rep = Report("character table")
        V = self.values
        n, C = V.shape[0], V.shape[1]

        bad = np.argwhere(np.any(canon(V) != canon(self.induced), axis=-1))
        rep.add("closed forms equal the induced characters on every class", len(bad) == 0,
                None if not len(bad) else {
                    "character": character_name(*self.params[bad[0][0]]),
                    "class rep": self.classes[bad[0][1]].rep.t,
                    "closed form": repr(counts_to_cyclo(V[tuple(bad[0])])),
                    "induced": repr(counts_to_cyclo(self.induced[tuple(bad[0])]))})

        # the inducing lambdas are linear characters: the coordinates they read
        # are additive on the subgroup under multiplication by its generators
        rep.add("inducing functions are linear characters of their subgroups",
                *_linear_on_subgroups(G))

        gm = gram(V, V, self.sizes)
        ortho = np.array_equal(canon(gm), _scaled_identity(n, G.order, F.p))
        rep.add("first orthogonality: <chi, chi'> = delta exactly", ortho)

        degs = canon(V)[:, 0, 0]
        by_deg = {int(d): int(k) for d, k in zip(*np.unique(degs, return_counts=True))}
        want = {1: q * q, q: q ** 3 - 1, q * q: q * q - q}
        rep.add("counts per degree (q^2, q^3 - 1, q^2 - q)", by_deg == want, by_deg)
        rep.add("count identities in powers of (q - 1)",
                q ** 2 - q == (q - 1) ** 2 + (q - 1)
                and q ** 3 - 1 == (q - 1) ** 3 + 3 * (q - 1) ** 2 + 3 * (q - 1)
                and q ** 2 == (q - 1) ** 2 + 2 * (q - 1) + 1
                and q ** 3 + 2 * q ** 2 - q - 1 == (q - 1) ** 3 + 5 * (q - 1) ** 2 + 6 * (q - 1) + 1)
        rep.add("sum of squared degrees is q^6", int(np.sum(degs.astype(object) ** 2)) == q ** 6,
                {"sum": int(np.sum(degs.astype(object) ** 2))})
        rep.add("number of characters equals number of classes", n == C, {"chars": n, "classes": C})
        rep.add("every class has one column-form representative (values are class constant)",
                len(self.classes) == int(G.class_labels.max()) + 1)

        VT = np.swapaxes(V, 0, 1)
        col = canon(gram(VT, VT, np.ones(n, dtype=np.int64)))
        rep.add("second orthogonality: sum_chi chi(g) conj chi(h) = |C(g)| delta",
                np.array_equal(col, _scaled_identity(C, G.order // self.sizes, F.p)))

        ok = True
        for a in range(1, q):
            s = Cyclo.from_counts(counts_from_exponents(
                F.vtrace(F.vmul(a, F.vmul(np.arange(q), np.arange(q)))), F.p))
            ok &= s * s.conj() == Cyclo.rational(F.p, q)
        rep.add("quadratic Gauss sums have squared modulus q", ok)

        rep.extend(self.verify_supercharacter_relations(space))
        return rep

    def verify_supercharacter_relations(self, space: PatternSpace | None = None) -> Report:
        """Supercharacters as sums of irreducible characters."""
        F, q, G = self.F, self.q, self.G
        space = space or PatternSpace(G)
        labels = supercharacter_labels(F)
        pl = supermodule_labels(F, space.all_slots)
        reps = np.array([c.rep.index for c in self.classes])
        psi = canon(space.character_values(pl, len(labels), reps))
        V = canon(self.values)
        rep = Report("supercharacters and irreducibles")
        fams = {"F12": "lin", "F3": "3q", "F4": "4q", "F5": "5q", "F6": "6q2"}
        mult = {"F12": 1, "F3": 1, "F4": q, "F5": q, "F6": q}
        ok, witness = True, None
        for i, lab in enumerate(labels):
            fam = fams[lab.kind]
            rows = [j for j, (f, par) in enumerate(self.params)
                    if f == fam and par[:len(lab.params)] == lab.params]
            target = mult[lab.kind] * V[rows].sum(axis=0)
            if not np.array_equal(psi[i], target):
                ok, witness = False, {"supercharacter": str(lab), "summands": len(rows)}
                break
        rep.add("each supercharacter is the stated multiple of a sum of irreducibles", ok, witness)
        return rep


def _scaled_identity(n: int, diag, p: int) -> np.ndarray:
    out = np.zeros((n, n, p - 1), dtype=np.int64)
    out[np.arange(n), np.arange(n), 0] = diag
    return out


def _additive_on(G: G2Syl, members: np.ndarray, gens: list[UElem], coords) -> tuple[bool, dict | None]:
    """Is t_i(g h) = t_i(g) + t_i(h) for all generators g and members h?"""
    F = G.F
    x = G.all_coords[members]
    for g in gens:
        gh = G.batch_mul(np.array(g.t)[None, :], x)
        for i in coords:
            if np.any(gh[:, i] != F.vadd(g.t[i], x[:, i])):
                return False, {"generator": g.t, "coordinate": i + 1}
    return True, None


def _root_generators(G: G2Syl, roots) -> list[UElem]:
    return [G.root_element(i, b) for i in roots for b in G.F.prime_basis()]


def _linear_on_subgroups(G: G2Syl):
    cases = [("U", (1, 2, 3, 4, 5, 6), (0, 1)), ("t2=0", (1, 3, 4, 5, 6), (2,)),
             ("T", (2, 3, 4, 5, 6), (1, 2, 3, 4)), ("H", (1, 4, 5, 6), (0, 5))]
    for name, roots, coords in cases:
        ok, w = _additive_on(G, subgroup_indices(G, name), _root_generators(G, roots), coords)
        if not ok:
            return False, {"subgroup": name, **w}
    return True, None


# -- subgroup character tables ------------------------------------------------

H_COLUMNS = {"y5y6": "0000..", "y4y6": "000*0.", "y1y4y6": "*00.0."}
T_COLUMNS = {"y6": "00000.", "y5": "0000*0", "y4y5": "000*.0", "y3y4y5": "00*..0",
             "y2y3y4y5": "0*...0"}


class SubgroupTable:
    """Brute-force classes of a coordinate subgroup and its closed-form table."""

    def __init__(self, G: G2Syl, name: str):
        require_p_gt_3(G.F)
        if name not in ("H", "T"):
            raise ValueError("subgroup tables exist for H and T")
        self.G, self.F, self.q, self.name = G, G.F, G.q, name
        self.members = subgroup_indices(G, name)
        self.roots = (1, 4, 5, 6) if name == "H" else (2, 3, 4, 5, 6)
        self.forms = H_COLUMNS if name == "H" else T_COLUMNS

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def class_labels(self) -> np.ndarray:
        """Class label of each member (positions follow ``members``)."""
        G, F, n = self.G, self.F, self.order
        mats = G.all_matrices[self.members]
        rows, cols = [], []
        for g in _root_generators(G, self.roots):
            m = matmul(F, matmul(F, g.mat, mats), unitriangular_inverse(F, g.mat))
            img = G.index_array(coords_from_matrix(F, m))
            rows.append(np.arange(n))
            cols.append(np.searchsorted(self.members, img))
        rows, cols = np.concatenate(rows), np.concatenate(cols)
        graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
        _, labels = connected_components(graph, directed=True, connection="weak")
        return labels

    @cached_property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.class_labels)

    @cached_property
    def representatives(self) -> tuple[np.ndarray, np.ndarray]:
        """(column-form member counts per class, member position of the representative)."""
        coords = self.G.all_coords[self.members]
        return column_representatives(coords, self.class_labels, len(self.sizes), self.forms)

    @cached_property
    def params(self) -> list[tuple[str, tuple[int, ...]]]:
        q = self.q
        al, nz = range(q), range(1, q)
        if self.name == "H":
            out = [("lin", (a, b, c)) for a in al for b in al for c in al]
            out += [("ind", (a, b)) for a in al for b in nz]
        else:
            out = [("lin", (a, b, c, d)) for a in al for b in al for c in al for d in al]
            out += [("ind", (a,)) for a in nz]
        return out

    def names(self) -> list[str]:
        if self.name == "H":
            return [f"chi~({','.join(map(str, p))})" if k == "lin" else
                    f"Ind_N^H lambda({p[0]},{p[1]},0)" for k, p in self.params]
        return [f"psi({','.join(map(str, p))})" if k == "lin" else f"psi*({p[0]})"
                for k, p in self.params]

    def coefficients(self, kind: str, params) -> tuple[np.ndarray, int, str | None]:
        """A character as ``scale * theta(c . t)`` on one column (None: on all)."""
        F, q = self.F, self.q
        c = np.zeros(6, dtype=np.int64)
        two = F.const(2)
        if self.name == "H":
            if kind == "lin":
                a17, a15, a12 = params
                c[0], c[3], c[5] = a12, F.mul(two, a15), a17
                return c, 1, None
            c[5], c[4] = params
            return c, q, "y5y6"
        if kind == "lin":
            a16, a15, a13, a23 = params
            c[1], c[2], c[3], c[4] = a23, F.neg(a13), F.mul(two, a15), a16
            return c, 1, None
        c[5] = params[0]
        return c, q * q, "y6"

    def closed_form(self, kind: str, params, column: str, t) -> np.ndarray:
        F = self.F
        c, scale, only = self.coefficients(kind, params)
        if only is not None and column != only:
            return np.zeros(F.p, dtype=np.int64)
        return scale * counts_from_exponents(F.trace(int(apply_linear(F, c, np.asarray(t)))), F.p)

    @cached_property
    def values(self) -> np.ndarray:
        F = self.F
        counts, reps = self.representatives
        if np.any(counts != 1):
            raise VerificationError(f"{self.name}: a class lacks a unique column-form member")
        coords = self.G.all_coords[self.members[reps]]
        cols = np.array([tuple(self.forms)[k] for k in form_codes(coords, self.forms)])
        data = [self.coefficients(k, p) for k, p in self.params]
        e = F.vtrace(apply_linear(F, np.array([d[0] for d in data]), coords.T))  # (n, C)
        scale = np.array([[d[1] if d[2] is None or col == d[2] else 0 for col in cols]
                          for d in data])
        out = np.zeros(e.shape + (F.p,), dtype=np.int64)
        np.put_along_axis(out, e[..., None], scale[..., None], axis=-1)
        return _exact_divide(out, np.ones(len(cols), dtype=np.int64))

    def lambda_coeffs(self) -> np.ndarray:
        """Coefficient vectors of the characters of N that are induced."""
        return np.array([self.coefficients(k, p)[0] for k, p in self.params if k == "ind"])

    def induced(self) -> np.ndarray:
        """Ind_N^S lambda by brute force over N, on the classes of S."""
        G, F, p = self.G, self.F, self.F.p
        N = subgroup_indices(G, "N")
        pos = np.searchsorted(self.members, N)
        coeffs = self.lambda_coeffs()
        n, C = len(coeffs), len(self.sizes)
        e = F.vtrace(apply_linear(F, coeffs, G.all_coords[N].T))
        key = (np.arange(n)[:, None] * C + self.class_labels[pos][None, :]) * p + e
        sums = np.bincount(key.ravel(), minlength=n * C * p).reshape(n, C, p)
        return _exact_divide(sums * (self.order // len(N)), self.sizes[None, :])

    def verify(self) -> Report:
        F, q, G = self.F, self.q, self.G
        rep = Report(f"subgroup {self.name}")
        expect_order = q ** 4 if self.name == "H" else q ** 5
        rep.add("order", self.order == expect_order, {"order": self.order})
        counts, _ = self.representatives
        rep.add("every class has exactly one column-form representative", np.all(counts == 1))
        if not np.all(counts == 1):
            return rep
        V = self.values
        n, C = V.shape[0], V.shape[1]
        rep.add("number of characters equals number of classes", n == C, {"chars": n, "classes": C})
        degs = canon(V)[:, 0, 0]
        by_deg = {int(d): int(k) for d, k in zip(*np.unique(degs, return_counts=True))}
        want = {1: q ** 3, q: (q - 1) * q} if self.name == "H" else {1: q ** 4, q * q: q - 1}
        rep.add("counts per degree", by_deg == want, by_deg)
        rep.add("sum of squared degrees is the order",
                int(np.sum(degs.astype(object) ** 2)) == self.order)
        gm = gram(V, V, self.sizes)
        rep.add("orthonormality (exact)", np.array_equal(canon(gm), _scaled_identity(n, self.order, F.p)))

        coords = (0, 3, 5) if self.name == "H" else (1, 2, 3, 4)
        ok, w = _additive_on(G, self.members, _root_generators(G, self.roots), coords)
        rep.add("linear closed forms are homomorphisms", ok, w)

        ind_rows = [i for i, (k, _) in enumerate(self.params) if k == "ind"]
        induced = self.induced()
        rep.add("induced characters (sum over N) equal the closed forms",
                np.array_equal(canon(induced), canon(V[ind_rows])))

        # Frobenius reciprocity: <Ind lambda, chi>_S |N| = <lambda, Res chi>_N |S|
        N = subgroup_indices(G, "N")
        pos = np.searchsorted(self.members, N)
        lam = np.zeros((len(ind_rows), len(N), F.p), dtype=np.int64)
        e = F.vtrace(apply_linear(F, self.lambda_coeffs(), G.all_coords[N].T))
        np.put_along_axis(lam, e[..., None], 1, axis=-1)
        res = V[:, self.class_labels[pos], :]
        lhs = canon(gram(V[ind_rows], V, self.sizes)) * len(N)
        rhs = canon(gram(lam, res, np.ones(len(N), dtype=np.int64))) * self.order
        rep.add("Frobenius reciprocity for the induced characters", np.array_equal(lhs, rhs))
        return rep


def subgroup_tables(G: G2Syl) -> Report:
    rep = Report("subgroup tables")
    for name in ("H", "T"):
        rep.extend(SubgroupTable(G, name).verify(), prefix=f"{name}: ")
    return rep


def irr_char(G: G2Syl, family: str, params) -> IrrChar:
    return CharacterTable(G).irr_char(family, params)


def verify_character_table(G: G2Syl, space: PatternSpace | None = None) -> Report:
    return CharacterTable(G).verify(space)


def verified_character_table(G: G2Syl) -> CharacterTable:
    """The table, refusing to return it if any closed form disagrees with the
    brute-force induced character."""
    table = CharacterTable(G)
    if not np.array_equal(canon(table.values), canon(table.induced)):
        raise VerificationError("closed-form character values disagree with induced characters")
    return table


def emit_character_table(table: CharacterTable, fmt: str = "md") -> str:
    F = table.F
    cols = [f"y({','.join(map(str, c.rep.t))})" for c in table.classes]
    names = [character_name(f, p) for f, p in table.params]
    if fmt == "json":
        obj = {
            "q": F.q, "p": F.p,
            "classes": [{"rep": list(c.rep.t), "column": c.column, "size": c.size}
                        for c in table.classes],
            "rows": [{"character": nm, "family": f, "params": list(p),
                      "values": {col: counts_to_cyclo(table.values[i, j]).to_json()
                                 for j, col in enumerate(cols)}}
                     for i, (nm, (f, p)) in enumerate(zip(names, table.params))],
        }
        return json.dumps(obj, indent=1)
    rows = [[nm] + [repr(counts_to_cyclo(table.values[i, j])) for j in range(len(cols))]
            for i, nm in enumerate(names)]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["character"] + cols)
        w.writerow(["size"] + [c.size for c in table.classes])
        w.writerows(rows)
        return buf.getvalue()
    if fmt != "md":
        raise ValueError(f"unknown format {fmt}")
    head = ["character"] + cols
    lines = [f"Character table, q = {F.q} (z = exp(2 pi i / {F.p}))", "",
             "| " + " | ".join(head) + " |", "|" + "---|" * len(head),
             "| column | " + " | ".join(c.column for c in table.classes) + " |",
             "| size | " + " | ".join(str(c.size) for c in table.classes) + " |"]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines)
