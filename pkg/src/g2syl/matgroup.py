"""The group U = G2^syl(q) as 8x8 unitriangular matrices, and the ambient G8.

Matrices over F_q are numpy integer arrays of field codes with trailing shape
(8, 8); every routine here also accepts a leading batch axis.  Rational
matrices (the Lie algebra side) are plain int64 arrays.

Group elements are addressed by coordinates ``(t1, ..., t6)`` with
``y(t) = y2(t2) y1(t1) y3(t3) y4(t4) y5(t5) y6(t6)``, and by the index
``sum t_i q^(6-i)`` (t1 most significant).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .ffield import FieldSpec, FqElem
from .report import Report


class NotInGroupError(ValueError):
    """A matrix failed a membership test."""


class BudgetExceededError(RuntimeError):
    """An exhaustive computation would exceed the enumeration budget."""


DEFAULT_BUDGET = 9 ** 6


def _unit(i, j):
    m = np.zeros((8, 8), dtype=np.int64)
    m[i - 1, j - 1] = 1
    return m


D4_ROOT_MATRICES = {
    1: _unit(1, 2) - _unit(7, 8),
    2: _unit(2, 3) - _unit(6, 7),
    3: _unit(3, 4) - _unit(5, 6),
    4: _unit(3, 5) - _unit(4, 6),
    5: -(_unit(1, 3) - _unit(6, 8)),
    6: _unit(2, 4) - _unit(5, 7),
    7: _unit(2, 5) - _unit(4, 7),
    8: _unit(1, 4) - _unit(5, 8),
    9: _unit(1, 5) - _unit(4, 8),
    10: _unit(2, 6) - _unit(3, 7),
    11: _unit(1, 6) - _unit(3, 8),
    12: _unit(1, 7) - _unit(2, 8),
}

# G2 positive root i -> D4 roots summed to form e_i
G2_FROM_D4 = {1: (1, 3, 4), 2: (2,), 3: (5, 6, 7), 4: (8, 10, 9), 5: (11,), 6: (12,)}

ROOT_NAMES = {1: "a", 2: "b", 3: "a+b", 4: "2a+b", 5: "3a+b", 6: "3a+2b"}


def root_matrix(i: int) -> np.ndarray:
    """Integer matrix e_i of the i-th positive root of G2 (1 <= i <= 6)."""
    if i not in G2_FROM_D4:
        raise ValueError(f"root index must be in 1..6, got {i}")
    return sum(D4_ROOT_MATRICES[r] for r in G2_FROM_D4[i])


def bracket(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def verify_chevalley_constants() -> Report:
    """Structure constants, squares and cubes of the e_i over the integers."""
    e = {i: root_matrix(i) for i in range(1, 7)}
    rep = Report("chevalley")
    expected = {(1, 2): (-1, 3), (1, 3): (2, 4), (1, 4): (3, 5), (2, 5): (1, 6)}
    for (i, j), (n, k) in expected.items():
        ok = np.array_equal(bracket(e[i], e[j]), n * e[k])
        rep.add(f"[e{i},e{j}] = {n} e{k}", ok)
    # pairs whose root sum is not a root
    for i, j in [(1, 5), (1, 6), (2, 3), (2, 4), (2, 6), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)]:
        rep.add(f"[e{i},e{j}] = 0", not bracket(e[i], e[j]).any())
    squares = {1: -2 * _unit(3, 6), 3: -2 * _unit(2, 7), 4: -2 * _unit(1, 8),
               2: 0 * _unit(1, 1), 5: 0 * _unit(1, 1), 6: 0 * _unit(1, 1)}
    for i, sq in squares.items():
        rep.add(f"e{i}^2", np.array_equal(e[i] @ e[i], sq))
    for i in range(1, 7):
        rep.add(f"e{i}^3 = 0", not (e[i] @ e[i] @ e[i]).any())
        rep.add(f"e{i}^2 even", not ((e[i] @ e[i]) % 2).any())
    return rep


# -- matrices over F_q ------------------------------------------------------

def to_field(F: FieldSpec, m) -> np.ndarray:
    """Reduce an integer matrix into F_q (prime-subfield codes)."""
    return np.asarray(m, dtype=np.int64) % F.p


def identity(F: FieldSpec) -> np.ndarray:
    return np.eye(8, dtype=np.int64)


def matmul(F: FieldSpec, a, b) -> np.ndarray:
    if F.k == 1:
        return np.matmul(a, b) % F.p
    a = np.asarray(a)
    b = np.asarray(b)
    n = a.shape[-1]
    out = F.vmul(a[..., :, 0:1], b[..., 0:1, :])
    for j in range(1, n):
        out = F.vadd(out, F.vmul(a[..., :, j:j + 1], b[..., j:j + 1, :]))
    return out


def unitriangular_inverse(F: FieldSpec, m) -> np.ndarray:
    """Inverse of a unipotent upper triangular matrix (batched)."""
    m = np.asarray(m)
    eye = np.broadcast_to(identity(F), m.shape)
    n = F.vsub(m, eye)
    # (I+N)^-1 = (I-N)(I+N^2)(I+N^4) since N^8 = 0
    n2 = matmul(F, n, n)
    n4 = matmul(F, n2, n2)
    out = matmul(F, F.vsub(eye, n), F.vadd(eye, n2))
    return matmul(F, out, F.vadd(eye, n4))


def is_unitriangular(F: FieldSpec, m) -> bool:
    m = np.asarray(m)
    return bool(np.array_equal(np.tril(m, -1), np.zeros_like(m)) and np.all(np.diag(m) == 1))


def root_element_matrix(F: FieldSpec, i: int, t) -> np.ndarray:
    """y_i(t) = I + t e_i + (t^2/2) e_i^2; t may be an array of codes."""
    e = root_matrix(i)
    e2 = (e @ e) // 2
    t = np.asarray(t)[..., None, None]
    out = F.vadd(identity(F), F.vmul(t, to_field(F, e)))
    return F.vadd(out, F.vmul(F.vmul(t, t), to_field(F, e2)))


# entry (i, j) -> list of (integer coefficient, variables) monomials
CLOSED_FORM = {
    (1, 2): [(1, (1,))],
    (1, 3): [(-1, (3,))],
    (1, 4): [(1, (1, 3)), (1, (4,))],
    (1, 5): [(1, (1, 3)), (1, (4,))],
    (1, 6): [(1, (1, 4)), (1, (5,))],
    (1, 7): [(-1, (1, 3, 3)), (1, (3, 4)), (1, (6,))],
    (1, 8): [(-2, (1, 3, 4)), (-1, (1, 6)), (1, (3, 5)), (-1, (4, 4))],
    (2, 3): [(1, (2,))],
    (2, 4): [(1, (1, 2)), (1, (3,))],
    (2, 5): [(1, (1, 2)), (1, (3,))],
    (2, 6): [(-1, (1, 1, 2)), (1, (4,))],
    (2, 7): [(-2, (1, 2, 3)), (-1, (2, 4)), (-1, (3, 3))],
    (2, 8): [(-1, (1, 1, 2, 3)), (-2, (1, 2, 4)), (-1, (2, 5)), (-2, (3, 4)), (-1, (6,))],
    (3, 4): [(1, (1,))],
    (3, 5): [(1, (1,))],
    (3, 6): [(-1, (1, 1))],
    (3, 7): [(-2, (1, 3)), (-1, (4,))],
    (3, 8): [(-1, (1, 1, 3)), (-2, (1, 4)), (-1, (5,))],
    (4, 6): [(-1, (1,))],
    (4, 7): [(-1, (3,))],
    (4, 8): [(-1, (1, 3)), (-1, (4,))],
    (5, 6): [(-1, (1,))],
    (5, 7): [(-1, (3,))],
    (5, 8): [(-1, (1, 3)), (-1, (4,))],
    (6, 7): [(-1, (2,))],
    (6, 8): [(1, (1, 2)), (1, (3,))],
    (7, 8): [(-1, (1,))],
}


def eval_poly(F: FieldSpec, terms, t) -> np.ndarray:
    """Evaluate integer-coefficient monomials in coordinates ``t[..., i-1]``."""
    t = np.asarray(t)
    acc = np.zeros(t.shape[:-1], dtype=np.int64)
    for coeff, vars_ in terms:
        mono = np.full(t.shape[:-1], F.const(coeff), dtype=np.int64)
        for v in vars_:
            mono = F.vmul(mono, t[..., v - 1])
        acc = F.vadd(acc, mono)
    return acc


def closed_form_matrix(F: FieldSpec, t) -> np.ndarray:
    """The explicit matrix of y(t1, ..., t6); batched over leading axes of t."""
    t = np.asarray(t, dtype=np.int64)
    out = np.zeros(t.shape[:-1] + (8, 8), dtype=np.int64)
    out[..., range(8), range(8)] = 1
    for (i, j), terms in CLOSED_FORM.items():
        out[..., i - 1, j - 1] = eval_poly(F, terms, t)
    return out


ORDERED_ROOTS = (2, 1, 3, 4, 5, 6)


def product_matrix(F: FieldSpec, t) -> np.ndarray:
    """y2(t2) y1(t1) y3(t3) y4(t4) y5(t5) y6(t6) by actual multiplication."""
    t = np.asarray(t, dtype=np.int64)
    out = root_element_matrix(F, 2, t[..., 1])
    for i in ORDERED_ROOTS[1:]:
        out = matmul(F, out, root_element_matrix(F, i, t[..., i - 1]))
    return out


def coords_from_matrix(F: FieldSpec, m) -> np.ndarray:
    """Recover (t1..t6) from the matrix of y(t); batched."""
    m = np.asarray(m)
    t1 = m[..., 0, 1]
    t2 = m[..., 1, 2]
    t3 = F.vneg(m[..., 0, 2])
    t4 = F.vsub(m[..., 0, 3], F.vmul(t1, t3))
    t5 = F.vsub(m[..., 0, 5], F.vmul(t1, t4))
    t6 = F.vadd(m[..., 0, 6], F.vsub(F.vmul(t1, F.vmul(t3, t3)), F.vmul(t3, t4)))
    return np.stack([t1, t2, t3, t4, t5, t6], axis=-1).astype(np.int64)


def in_U(F: FieldSpec, m) -> bool:
    """Exact membership test: m equals the closed form at its own coordinates."""
    m = np.asarray(m)
    if m.shape != (8, 8):
        return False
    return bool(np.array_equal(closed_form_matrix(F, coords_from_matrix(F, m)), m))


# -- the ambient group G8 ---------------------------------------------------

# (i, j) tied to (i2, j2): u[i2, j2] must equal u[i, j]
G8_TIES = {(2, 5): (2, 4), (3, 5): (3, 4), (4, 6): (5, 6), (4, 7): (5, 7)}
G8_ZERO = (4, 5)
G8_FREE = tuple((i, j) for i in range(1, 9) for j in range(i + 1, 9)
                if (i, j) not in G8_TIES and (i, j) != G8_ZERO)
# generators tying two positions
G8_PAIRED = {(2, 4): (2, 5), (3, 4): (3, 5), (5, 6): (4, 6), (5, 7): (4, 7)}


def g8_contains(F: FieldSpec, m) -> bool:
    m = np.asarray(m)
    if not is_unitriangular(F, m):
        return False
    if m[G8_ZERO[0] - 1, G8_ZERO[1] - 1] != 0:
        return False
    return all(m[i - 1, j - 1] == m[a - 1, b - 1] for (i, j), (a, b) in G8_TIES.items())


def g8_generator(F: FieldSpec, i: int, j: int, t: int) -> np.ndarray:
    """The generator of G8 attached to position (i, j) of the free set."""
    if (i, j) not in G8_FREE:
        raise ValueError(f"({i},{j}) is not a free position of G8")
    m = identity(F).copy()
    m[i - 1, j - 1] = t
    if (i, j) in G8_PAIRED:
        a, b = G8_PAIRED[(i, j)]
        m[a - 1, b - 1] = t
    return m


def g8_dimension() -> int:
    """Degrees of freedom of the defining linear conditions of G8.

    Counted as 28 strictly-upper entries minus the rank of the constraint
    system (over Q), not by enumeration.
    """
    idx = {(i, j): n for n, (i, j) in enumerate((i, j) for i in range(1, 9) for j in range(i + 1, 9))}
    rows = []
    r = np.zeros(28, dtype=np.int64)
    r[idx[G8_ZERO]] = 1
    rows.append(r)
    for (i, j), (a, b) in G8_TIES.items():
        r = np.zeros(28, dtype=np.int64)
        r[idx[(i, j)]] = 1
        r[idx[(a, b)]] = -1
        rows.append(r)
    return 28 - int(np.linalg.matrix_rank(np.array(rows, dtype=float)))


def g8_from_free(F: FieldSpec, values) -> np.ndarray:
    """G8 element with the given codes on G8_FREE (ties filled in)."""
    m = identity(F).copy()
    for (i, j), v in zip(G8_FREE, values):
        m[i - 1, j - 1] = v
    for (i, j), (a, b) in G8_TIES.items():
        m[i - 1, j - 1] = m[a - 1, b - 1]
    return m


def random_g8(F: FieldSpec, rng: random.Random) -> np.ndarray:
    return g8_from_free(F, [rng.randrange(F.q) for _ in G8_FREE])


# -- elements of U --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class UElem:
    """An element y(t1, ..., t6) of U, held by its coordinate codes."""

    group: "G2Syl"
    t: tuple[int, ...]

    @cached_property
    def mat(self) -> np.ndarray:
        m = closed_form_matrix(self.group.F, np.array(self.t))
        m.setflags(write=False)
        return m

    @property
    def coords(self) -> tuple[FqElem, ...]:
        return tuple(FqElem(self.group.F, x) for x in self.t)

    @property
    def index(self) -> int:
        return self.group.index_of(self.t)

    def __mul__(self, other: "UElem") -> "UElem":
        return self.group.mul(self, other)

    def inverse(self) -> "UElem":
        return self.group.inv(self)

    def __eq__(self, other):
        return isinstance(other, UElem) and self.group.F == other.group.F and self.t == other.t

    def __hash__(self):
        return hash(self.t)

    def __repr__(self):
        return "y(" + ", ".join(str(x) for x in self.t) + ")"


class G2Syl:
    """The group U = G2^syl(q) over a fixed field.

    Heavy whole-group data (all matrices, conjugacy classes) is computed on
    first use and cached; ``budget`` caps the number of elements that such
    exhaustive routines may touch.
    """

    def __init__(self, F: FieldSpec, budget: int = DEFAULT_BUDGET, verify: bool = False):
        self.F = F
        self.q = F.q
        self.order = F.q ** 6
        self.budget = budget
        self.verify = verify

    def __repr__(self):
        return f"G2Syl(q={self.q})"

    # -- single elements --------------------------------------------------

    def _codes(self, ts):
        out = []
        for x in ts:
            if isinstance(x, FqElem):
                self.F.check(x)
                out.append(x.value)
            else:
                x = int(x)
                if not 0 <= x < self.q:
                    raise ValueError(f"coordinate code {x} out of range")
                out.append(x)
        return tuple(out)

    def y(self, *ts) -> UElem:
        """y(t1, ..., t6), the canonical ordered product."""
        if len(ts) != 6:
            raise ValueError("y() takes six coordinates")
        u = UElem(self, self._codes(ts))
        if self.verify:
            if not np.array_equal(u.mat, product_matrix(self.F, np.array(u.t))):
                raise AssertionError(f"closed form disagrees with product at {u.t}")
        return u

    def root_element(self, i: int, t) -> UElem:
        ts = [0] * 6
        ts[i - 1] = self._codes([t])[0]
        return UElem(self, tuple(ts))

    @property
    def identity(self) -> UElem:
        return UElem(self, (0,) * 6)

    def from_matrix(self, m) -> UElem:
        m = np.asarray(m, dtype=np.int64)
        if not in_U(self.F, m):
            raise NotInGroupError("matrix is not in U")
        return UElem(self, tuple(int(x) for x in coords_from_matrix(self.F, m)))

    def mul(self, a: UElem, b: UElem) -> UElem:
        m = matmul(self.F, a.mat, b.mat)
        c = UElem(self, tuple(int(x) for x in coords_from_matrix(self.F, m)))
        if self.verify and not np.array_equal(c.mat, m):
            raise AssertionError("product left U")
        return c

    def inv(self, a: UElem) -> UElem:
        return self.from_matrix(unitriangular_inverse(self.F, a.mat))

    def commutator(self, a: UElem, b: UElem) -> UElem:
        """[a, b] = a^-1 b^-1 a b."""
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def conjugate(self, u: UElem, x: UElem) -> UElem:
        """u x u^-1."""
        return self.mul(self.mul(u, x), self.inv(u))

    def random(self, rng: random.Random) -> UElem:
        return UElem(self, tuple(rng.randrange(self.q) for _ in range(6)))

    # -- indexing -----------------------------------------------------------

    def index_of(self, t) -> int:
        out = 0
        for x in t:
            out = out * self.q + int(x)
        return out

    def element(self, index: int) -> UElem:
        return UElem(self, tuple(int(x) for x in self.coords_of(np.array(index))))

    def coords_of(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        out = np.empty(idx.shape + (6,), dtype=np.int64)
        for i in range(5, -1, -1):
            out[..., i] = idx % self.q
            idx = idx // self.q
        return out

    def index_array(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64)
        out = np.zeros(coords.shape[:-1], dtype=np.int64)
        for i in range(6):
            out = out * self.q + coords[..., i]
        return out

    def check_budget(self, n: int | None = None):
        n = self.order if n is None else n
        if n > self.budget:
            raise BudgetExceededError(
                f"exhaustive work over {n} elements exceeds the budget of {self.budget}")

    # -- whole-group data --------------------------------------------------

    @cached_property
    def all_coords(self) -> np.ndarray:
        self.check_budget()
        return self.coords_of(np.arange(self.order))

    @cached_property
    def all_matrices(self) -> np.ndarray:
        return closed_form_matrix(self.F, self.all_coords)

    @cached_property
    def all_inverses(self) -> np.ndarray:
        return unitriangular_inverse(self.F, self.all_matrices)

    def enumerate(self) -> list[UElem]:
        return [UElem(self, tuple(int(x) for x in row)) for row in self.all_coords]

    def generators(self) -> list[UElem]:
        """Root elements y_i(c x^j): generate U as a group."""
        out = []
        for i in range(1, 7):
            for b in self.F.prime_basis():
                out.append(self.root_element(i, b))
        return out

    def batch_mul(self, a, b) -> np.ndarray:
        """Coordinates of a*b for coordinate arrays (broadcasting)."""
        m = matmul(self.F, closed_form_matrix(self.F, a), closed_form_matrix(self.F, b))
        return coords_from_matrix(self.F, m)

    def conjugation_permutation(self, g: UElem) -> np.ndarray:
        """Index map x -> g x g^-1 over the whole group."""
        gi = unitriangular_inverse(self.F, g.mat)
        m = matmul(self.F, matmul(self.F, g.mat, self.all_matrices), gi)
        return self.index_array(coords_from_matrix(self.F, m))

    @cached_property
    def class_labels(self) -> np.ndarray:
        """Conjugacy class label of every element, labels in order of first index."""
        n = self.order
        rows, cols = [], []
        for g in self.generators():
            rows.append(np.arange(n))
            cols.append(self.conjugation_permutation(g))
        rows = np.concatenate(rows)
        cols = np.concatenate(cols)
        graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
        _, labels = connected_components(graph, directed=True, connection="weak")
        # relabel so that classes are numbered by their least member
        first = np.full(labels.max() + 1, n, dtype=np.int64)
        np.minimum.at(first, labels, np.arange(n))
        order = np.argsort(first)
        relabel = np.empty_like(order)
        relabel[order] = np.arange(len(order))
        return relabel[labels]

    @cached_property
    def class_members(self) -> list[np.ndarray]:
        labels = self.class_labels
        order = np.argsort(labels, kind="stable")
        bounds = np.searchsorted(labels[order], np.arange(labels.max() + 2))
        return [order[bounds[c]:bounds[c + 1]] for c in range(labels.max() + 1)]


def enumerate_U(F: FieldSpec, budget: int = DEFAULT_BUDGET) -> list[UElem]:
    return G2Syl(F, budget).enumerate()


# -- commutator relations -----------------------------------------------

def commutator_formula(F: FieldSpec, i: int, j: int, a: int, b: int) -> tuple[int, ...] | None:
    """Coordinates of [y_i(a), y_j(b)] predicted by the commutator relations.

    Returns None for pairs outside the table of non-trivial commutators with
    i < j, which are claimed to commute.
    """
    m, c = F.mul, F.const
    p3 = F.p > 3
    if (i, j) == (1, 2):
        t1, t2 = a, b
        return (0, 0, m(c(-1), m(t2, t1)), m(t2, m(t1, t1)),
                m(c(-1), m(t2, F.pow(t1, 3))), m(c(2), m(m(t2, t2), F.pow(t1, 3))))
    if (i, j) == (1, 3):
        t1, t3 = a, b
        if not p3:
            return (0, 0, 0, m(c(2), m(t1, t3)), 0, 0)
        return (0, 0, 0, m(c(2), m(t1, t3)), m(c(-3), m(m(t1, t1), t3)), m(c(-3), m(t1, m(t3, t3))))
    if (i, j) == (1, 4):
        return (0, 0, 0, 0, m(c(3), m(a, b)), 0)
    if (i, j) == (3, 4):
        return (0, 0, 0, 0, 0, m(c(3), m(a, b)))
    if (i, j) == (2, 5):
        return (0, 0, 0, 0, 0, m(a, b))
    return (0,) * 6


def verify_commutators(F: FieldSpec) -> Report:
    """Check every [y_i(a), y_j(b)], i < j, exhaustively over F_q x F_q."""
    G = G2Syl(F)
    rep = Report("commutators")
    q = F.q
    a, b = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    a, b = a.ravel(), b.ravel()
    for i in range(1, 7):
        for j in range(i + 1, 7):
            yi = root_element_matrix(F, i, a)
            yj = root_element_matrix(F, j, b)
            lhs = matmul(F, matmul(F, unitriangular_inverse(F, yi), unitriangular_inverse(F, yj)),
                         matmul(F, yi, yj))
            ok_in_u = np.array_equal(closed_form_matrix(F, coords_from_matrix(F, lhs)), lhs)
            got = coords_from_matrix(F, lhs)
            want = np.array([commutator_formula(F, i, j, int(x), int(y)) for x, y in zip(a, b)])
            bad = np.flatnonzero(np.any(got != want, axis=1))
            witness = None
            if len(bad):
                k = bad[0]
                witness = {"t_i": int(a[k]), "t_j": int(b[k]), "got": got[k].tolist(),
                           "expected": want[k].tolist()}
            rep.add(f"[y{i},y{j}] q={q}", ok_in_u and not len(bad), witness)
    del G
    return rep


def verify_closed_form(F: FieldSpec, budget: int = DEFAULT_BUDGET) -> Report:
    """Closed-form matrix equals the ordered product on every tuple."""
    G = G2Syl(F, budget)
    rep = Report("closed-form")
    t = G.all_coords
    lhs = closed_form_matrix(F, t)
    rhs = product_matrix(F, t)
    bad = np.flatnonzero(np.any(lhs != rhs, axis=(1, 2)))
    rep.add(f"closed form = ordered product on {len(t)} tuples", not len(bad),
            None if not len(bad) else {"t": t[bad[0]].tolist()})
    back = coords_from_matrix(F, lhs)
    rep.add("coordinate extraction inverts the closed form", np.array_equal(back, t))
    return rep
