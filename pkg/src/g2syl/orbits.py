"""U-orbits on patterns, stabilizers, core patterns and orbit characters.

The right action ``A.u`` is linear in A, so each u acts by a 6x6 matrix
L(u) on slot vectors.  L(u) depends on (t1, t2, t3, t4) only; group
elements sharing those coordinates form a "block" of q^2 consecutive
indices.  The fixed patterns of u are the left null space of L(u) - I,
found by exact elimination over F_q.  Character values of orbit modules are
sums of theta(kappa(C, f(u))) over fixed patterns C, which makes whole-group
evaluations cost sum_u |Fix(u)| = |U| * (number of orbits).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .cyclo import ClassFunction, Cyclo, counts_to_cyclo
from .ffield import FieldSpec
from .matgroup import G2Syl, UElem, closed_form_matrix
from .monomial import (PATTERN_POSITIONS, Pattern, apply_linear, dot_matrices,
                       kappa_codes, pi_codes)
from .report import Report

FAMILIES = ("F12", "F3", "F4", "F5", "F6")


# -- linear algebra over F_q --------------------------------------------

def nullspace(F: FieldSpec, M) -> np.ndarray:
    """Basis (as rows) of {x : M x = 0} by reduced row echelon form."""
    M = [[int(x) for x in row] for row in np.asarray(M)]
    rows, cols = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    basis = []
    for fc in (c for c in range(cols) if c not in pivots):
        v = [0] * cols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(M[i][fc])
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def span(F: FieldSpec, basis: np.ndarray) -> np.ndarray:
    """All F_q-linear combinations of the rows of ``basis``."""
    d, n = basis.shape
    if d == 0:
        return np.zeros((1, n), dtype=np.int64)
    grid = np.indices((F.q,) * d).reshape(d, -1).T
    if F.k == 1:
        return (grid @ basis) % F.p
    return F.vdot(grid[:, :, None], basis[None, :, :], axis=1)


# -- pattern classification ---------------------------------------------

def family_codes(a) -> np.ndarray:
    """Family index into FAMILIES for slot arrays (batched)."""
    a = np.asarray(a)
    out = np.zeros(a.shape[:-1], dtype=np.int64)
    out[a[..., 1] != 0] = 1
    out[a[..., 2] != 0] = 2
    out[a[..., 3] != 0] = 3
    out[a[..., 4] != 0] = 4
    return out


def family_of(A: Pattern) -> str:
    return FAMILIES[int(family_codes(np.array(A.a)))]


@dataclass(frozen=True)
class PatternStructure:
    main: frozenset
    minor: frozenset
    core: frozenset
    is_staircase: bool
    is_hook_separated: bool
    is_core: bool


def hooks() -> dict[int, frozenset]:
    return {i: frozenset((a, b) for a, b in PATTERN_POSITIONS if b == i or a == 9 - i)
            for i in range(1, 9)}


def main_conditions(A: Pattern) -> frozenset:
    m = A.matrix()
    out = set()
    for i in (1, 2):
        cols = [j for (r, j) in PATTERN_POSITIONS if r == i and m[i - 1, j - 1]]
        if cols:
            out.add((i, max(cols)))
    return frozenset(out)


def structure_of(A: Pattern) -> PatternStructure:
    main = main_conditions(A)
    minor = frozenset((i, j) for (i, j) in PATTERN_POSITIONS if j <= 4 and (i, 9 - j) in main)
    core = main | minor
    cols = [j for _, j in main]
    staircase = len(cols) == len(set(cols))
    hook_sep = all(len(main & h) <= 1 for h in hooks().values())
    return PatternStructure(main, minor, core, staircase, hook_sep, A.support() <= core)


def verge(A: Pattern, row: int | None = None) -> tuple:
    """Main conditions with their entries, optionally restricted to a row."""
    m = A.matrix()
    return tuple(sorted(((i, j), int(m[i - 1, j - 1])) for i, j in main_conditions(A)
                        if row is None or i == row))


def canonical_core(A: Pattern) -> Pattern:
    """The unique core pattern in the orbit of A (closed form per family)."""
    F = A.field
    a12, a13, a15, a16, a17, a23 = A.a
    fam = family_of(A)
    if fam == "F6":
        x = F.div(F.add(F.mul(a13, a16), F.mul(a15, a15)), a17)
        return Pattern(F, (F.add(a12, x), 0, 0, 0, a17, a23))
    if fam == "F5":
        return Pattern(F, (0, F.add(a13, F.div(F.mul(a15, a15), a16)), 0, a16, 0, a23))
    if fam == "F4":
        return Pattern(F, (0, 0, a15, 0, 0, a23))
    if fam == "F3":
        return Pattern(F, (0, a13, 0, 0, 0, a23))
    return A


def orbit_formula(A: Pattern, t1: int, t2: int, t3: int, t4: int) -> Pattern:
    """Closed-form orbit point of A at parameters t1..t4."""
    F = A.field
    m, ad, c = F.mul, F.add, F.const
    a12, a13, a15, a16, a17, a23 = A.a
    terms12 = [(-1, m(a13, t2)), (-2, m(a15, t3)), (-2, m(a16, m(t1, t3))),
               (-2, m(a17, m(t2, m(t1, t3)))), (-1, m(a17, m(t3, t3))), (-1, m(a16, t4)),
               (-1, m(a17, m(t2, t4)))]
    terms13 = [(-2, m(a15, t1)), (-1, m(a16, m(t1, t1))), (-1, m(a17, m(t2, m(t1, t1)))),
               (1, m(a17, t4))]
    b12, b13 = a12, a13
    for k, x in terms12:
        b12 = ad(b12, m(c(k), x))
    for k, x in terms13:
        b13 = ad(b13, m(c(k), x))
    b15 = ad(ad(ad(a15, m(a16, t1)), m(a17, m(t2, t1))), m(a17, t3))
    b16 = ad(a16, m(a17, t2))
    return Pattern(F, (b12, b13, b15, b16, a17, a23))


def closed_form_stabilizer_blocks(F: FieldSpec, a: np.ndarray) -> np.ndarray:
    """(t1, t2, t3, t4) parts of the tabulated stabilizer of a slot vector.

    Every tabulated stabilizer has t5, t6 free, so listing these blocks
    describes the whole set.
    """
    a12, a13, a15, a16, a17, a23 = (int(x) for x in a)
    q = F.q
    m, d, ad, c = F.mul, F.div, F.add, F.const
    rng = range(q)
    fam = FAMILIES[int(family_codes(a))]
    if fam == "F6":
        rows = [(t1, 0, F.neg(d(m(a16, t1), a17)),
                 d(ad(m(c(2), m(a15, t1)), m(a16, m(t1, t1))), a17)) for t1 in rng]
    elif fam == "F5":
        rows = [(0, t2, t3, d(F.sub(F.neg(m(a13, t2)), m(c(2), m(a15, t3))), a16))
                for t2 in rng for t3 in rng]
    elif fam == "F4":
        rows = [(0, t2, F.neg(d(m(a13, t2), m(c(2), a15))), t4) for t2 in rng for t4 in rng]
    elif fam == "F3":
        rows = [(t1, 0, t3, t4) for t1 in rng for t3 in rng for t4 in rng]
    else:
        rows = [(t1, t2, t3, t4) for t1 in rng for t2 in rng for t3 in rng for t4 in rng]
    return np.array(rows, dtype=np.int64)


def closed_form_stabilizer(G: G2Syl, A: Pattern) -> list[UElem]:
    q = G.q
    out = []
    for b in closed_form_stabilizer_blocks(G.F, np.array(A.a)):
        for t5 in range(q):
            for t6 in range(q):
                out.append(UElem(G, tuple(int(x) for x in b) + (t5, t6)))
    return out


# -- the pattern space ----------------------------------------------------------

@dataclass
class OrbitModule:
    seed: Pattern
    members: list[Pattern]
    stabilizer: list[UElem]
    family: str

    @property
    def dimension(self) -> int:
        return len(self.members)


class PatternSpace:
    """All q^6 patterns with cached orbit and fixed-point data."""

    def __init__(self, G: G2Syl):
        self.G = G
        self.F = G.F
        self.q = G.q
        self.size = G.q ** 6
        self.n_blocks = G.q ** 4

    def pattern(self, index: int) -> Pattern:
        return Pattern(self.F, tuple(int(x) for x in self.G.coords_of(np.array(index))))

    @cached_property
    def all_slots(self) -> np.ndarray:
        self.G.check_budget(self.size)
        return self.G.coords_of(np.arange(self.size))

    def index_of(self, a) -> np.ndarray:
        return self.G.index_array(a)

    @cached_property
    def families(self) -> np.ndarray:
        return family_codes(self.all_slots)

    # -- blocks and fixed spaces -------------------------------------------

    def block_coords(self, b) -> np.ndarray:
        """Coordinates (t1, t2, t3, t4, 0, 0) of block representatives."""
        b = np.asarray(b, dtype=np.int64)
        t = self.G.coords_of(b * self.q * self.q)
        return t

    @cached_property
    def block_dot_matrices(self) -> np.ndarray:
        t = self.block_coords(np.arange(self.n_blocks))
        return dot_matrices(self.F, closed_form_matrix(self.F, t))

    def dot_matrix(self, u: UElem) -> np.ndarray:
        return dot_matrices(self.F, u.mat)

    @cached_property
    def _fixed_cache(self) -> dict[int, np.ndarray]:
        return {}

    def fixed_indices(self, block: int) -> np.ndarray:
        """Indices of patterns fixed by every u in the block."""
        cache = self._fixed_cache
        if block not in cache:
            F = self.F
            L = self.block_dot_matrices[block]
            M = F.vsub(L, np.eye(6, dtype=np.int64))
            # a (L - I) = 0  <=>  (L - I)^T a^T = 0
            basis = nullspace(F, M.T)
            cache[block] = np.sort(self.index_of(span(F, basis)))
        return cache[block]

    def fixed_patterns(self, u: UElem) -> list[Pattern]:
        return [self.pattern(i) for i in self.fixed_indices(u.index // (self.q * self.q))]

    # -- orbits -----------------------------------------------------------

    @cached_property
    def generator_dot_matrices(self) -> list[np.ndarray]:
        F = self.F
        out = []
        for i in range(1, 7):
            for b in F.prime_basis():
                for c in range(1, F.p):
                    g = self.G.root_element(i, F.mul(c, b))
                    out.append(dot_matrices(F, g.mat))
        return out

    @cached_property
    def orbit_labels(self) -> np.ndarray:
        n = self.size
        src = np.arange(n)
        rows, cols = [], []
        for L in self.generator_dot_matrices:
            rows.append(src)
            cols.append(self.index_of(apply_linear(self.F, self.all_slots, L)))
        graph = coo_matrix((np.ones(n * len(rows), dtype=np.int8),
                            (np.concatenate(rows), np.concatenate(cols))), shape=(n, n))
        _, labels = connected_components(graph, directed=True, connection="weak")
        first = np.full(labels.max() + 1, n, dtype=np.int64)
        np.minimum.at(first, labels, src)
        order = np.argsort(first)
        relabel = np.empty_like(order)
        relabel[order] = np.arange(len(order))
        return relabel[labels]

    @cached_property
    def orbit_members(self) -> list[np.ndarray]:
        labels = self.orbit_labels
        order = np.argsort(labels, kind="stable")
        bounds = np.searchsorted(labels[order], np.arange(labels.max() + 2))
        return [order[bounds[c]:bounds[c + 1]] for c in range(labels.max() + 1)]

    def orbit_indices(self, A: Pattern) -> np.ndarray:
        """Orbit of A by breadth-first search over the generators."""
        F = self.F
        seen = {A.index}
        frontier = np.array([A.a], dtype=np.int64)
        while len(frontier):
            new = []
            for L in self.generator_dot_matrices:
                img = apply_linear(F, frontier, L)
                for idx, row in zip(self.index_of(img).tolist(), img):
                    if idx not in seen:
                        seen.add(idx)
                        new.append(row)
            frontier = np.array(new, dtype=np.int64).reshape(-1, 6)
        return np.array(sorted(seen), dtype=np.int64)

    def stabilizer_indices(self, A: Pattern) -> np.ndarray:
        """Stab_U(A) by testing A.u = A against every block of U."""
        a = np.array(A.a, dtype=np.int64)
        img = apply_linear(self.F, a, self.block_dot_matrices)
        blocks = np.flatnonzero(np.all(img == a, axis=-1))
        q2 = self.q * self.q
        return (blocks[:, None] * q2 + np.arange(q2)[None, :]).ravel()

    def orbit_of(self, A: Pattern) -> OrbitModule:
        members = [self.pattern(i) for i in self.orbit_indices(A)]
        stab = [self.G.element(i) for i in self.stabilizer_indices(A)]
        return OrbitModule(A, members, stab, family_of(A))

    # -- characters of unions of orbits ----------------------------------------

    def _block_values(self, block, us, labels, n_labels):
        F, p = self.F, self.F.p
        fix = self.fixed_indices(block)
        lab = labels[fix]
        keep = lab >= 0
        fix, lab = fix[keep], lab[keep]
        f = pi_codes(F, closed_form_matrix(F, self.G.coords_of(us)))
        k = kappa_codes(F, self.all_slots[fix][:, None, :], f[None, :, :])
        e = F.vtrace(k)
        m = len(us)
        key = (lab[:, None] * m + np.arange(m)[None, :]) * p + e
        out = np.bincount(key.ravel(), minlength=n_labels * m * p)
        return out.reshape(n_labels, m, p)

    def character_values(self, labels: np.ndarray, n_labels: int, us) -> np.ndarray:
        """Zeta-count values of sum-over-label characters at elements ``us``.

        For each label l and element u the value is the sum of
        theta(kappa(C, f(u))) over patterns C with label l fixed by u.
        Patterns labelled -1 are ignored.  Result shape (n_labels, len(us), p).
        """
        us = np.asarray(us, dtype=np.int64)
        q2 = self.q * self.q
        out = np.zeros((n_labels, len(us), self.F.p), dtype=np.int64)
        blocks = us // q2
        for b in np.unique(blocks):
            pos = np.flatnonzero(blocks == b)
            out[:, pos, :] = self._block_values(int(b), us[pos], labels, n_labels)
        return out

    def iter_character_values(self, labels, n_labels) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """Stream ``character_values`` over all of U one block at a time."""
        q2 = self.q * self.q
        for b in range(self.n_blocks):
            us = np.arange(b * q2, (b + 1) * q2)
            yield us, self._block_values(b, us, labels, n_labels)

    def class_reps(self) -> np.ndarray:
        return np.array([m[0] for m in self.G.class_members], dtype=np.int64)

    def class_sizes(self) -> np.ndarray:
        return np.array([len(m) for m in self.G.class_members], dtype=np.int64)

    def orbit_character_table(self) -> np.ndarray:
        """Values of every orbit character on every conjugacy class."""
        labels = self.orbit_labels
        return self.character_values(labels, int(labels.max()) + 1, self.class_reps())

    def psi(self, A: Pattern) -> ClassFunction:
        """Character of the orbit module of A on the conjugacy classes."""
        labels = np.full(self.size, -1, dtype=np.int64)
        labels[self.orbit_indices(A)] = 0
        vals = self.character_values(labels, 1, self.class_reps())[0]
        entries = [(self.G.element(int(r)), int(s), counts_to_cyclo(v))
                   for r, s, v in zip(self.class_reps(), self.class_sizes(), vals)]
        return ClassFunction(entries, self.G.order)


def orbit_of(G: G2Syl, A: Pattern) -> OrbitModule:
    return PatternSpace(G).orbit_of(A)


def stabilizer_matches_closed_form(G: G2Syl, A: Pattern) -> bool:
    space = PatternSpace(G)
    got = space.stabilizer_indices(A)
    want = np.sort(np.array([u.index for u in closed_form_stabilizer(G, A)]))
    return bool(np.array_equal(np.sort(got), want))


def psi_A(G: G2Syl, A: Pattern) -> ClassFunction:
    return PatternSpace(G).psi(A)


# -- verification -----------------------------------------------------------------

ORBIT_SIZE_EXPONENT = {"F12": 0, "F3": 1, "F4": 2, "F5": 2, "F6": 3}


def verify_orbits(space: PatternSpace) -> Report:
    """Orbit sizes, stabilizers and core patterns over every pattern."""
    F, q = space.F, space.q
    rep = Report("orbits")
    full = dot_matrices(F, space.G.all_matrices).reshape(space.n_blocks, q * q, 6, 6)
    rep.add("the action of y(t) depends on t1..t4 only",
            np.all(full == space.block_dot_matrices[:, None]))
    del full
    labels = space.orbit_labels
    members = space.orbit_members
    sizes = np.array([len(m) for m in members])
    fam = space.families

    # orbit sizes per family
    for k, name in enumerate(FAMILIES):
        mask = fam == k
        got = set(sizes[labels[mask]].tolist())
        rep.add(f"orbit size {name} = q^{ORBIT_SIZE_EXPONENT[name]}",
                got == {q ** ORBIT_SIZE_EXPONENT[name]}, {"sizes": sorted(got)})
    rep.add("families are orbit invariants",
            all(len(set(fam[m].tolist())) == 1 for m in members))

    # stabilizers: (pattern, block) incidences from the fixed spaces
    pairs = np.concatenate([space.fixed_indices(b) * space.n_blocks + b
                            for b in range(space.n_blocks)])
    pairs.sort()
    stab_sizes = np.bincount(pairs // space.n_blocks, minlength=space.size) * q * q
    rep.add("|orbit| * |stabilizer| = q^6 for every pattern",
            np.all(sizes[labels] * stab_sizes == q ** 6))
    n_orbits = len(members)
    rep.add("Burnside count of orbits", len(pairs) * q * q == n_orbits * q ** 6,
            {"orbits": n_orbits})

    # tabulated stabilizers, every pattern
    want = []
    for idx in range(space.size):
        bl = closed_form_stabilizer_blocks(F, space.all_slots[idx])
        bidx = ((bl[:, 0] * q + bl[:, 1]) * q + bl[:, 2]) * q + bl[:, 3]
        want.append(idx * space.n_blocks + bidx)
    want = np.sort(np.concatenate(want))
    bad = None
    if not np.array_equal(want, pairs):
        diff = np.setxor1d(want, pairs)
        bad = {"pattern": space.pattern(int(diff[0] // space.n_blocks)).a,
               "block": space.block_coords(int(diff[0] % space.n_blocks))[:4]}
    rep.add("stabilizers equal the tabulated sets for every pattern", bad is None, bad)

    # direct enumeration over all of U for one seed per orbit
    ok = True
    for m in members:
        A = space.pattern(int(m[0]))
        st = space.stabilizer_indices(A)
        if len(st) * len(m) != q ** 6:
            ok = False
    rep.add("direct stabilizer enumeration, one seed per orbit", ok)

    # closed-form orbit parametrisation versus the computed orbit
    ok = True
    for m in members[:: max(1, len(members) // 60)]:
        A = space.pattern(int(m[0]))
        pts = {orbit_formula(A, t1, t2, t3, t4).index for t1 in range(q) for t2 in range(q)
               for t3 in range(q) for t4 in range(q)}
        ok &= pts == set(m.tolist())
    rep.add("orbit parametrisation matches computed orbits", ok)

    # exactly one core pattern per orbit, equal to the closed-form core
    core_count = np.zeros(n_orbits, dtype=np.int64)
    core_match = True
    for idx in range(space.size):
        A = space.pattern(idx)
        if structure_of(A).is_core:
            core_count[labels[idx]] += 1
            core_match &= canonical_core(A) == A
    rep.add("exactly one core pattern per orbit", np.all(core_count == 1),
            {"counts": sorted(set(core_count.tolist()))})
    rep.add("core pattern equals the closed-form core", core_match)
    ok = all(labels[canonical_core(space.pattern(int(m[0]))).index] == c
             for c, m in enumerate(members))
    rep.add("closed-form core lies in its orbit", ok)
    return rep
