"""Patterns, the trace pairing, the 1-cocycle f and the monomial actions.

A pattern is a matrix supported on the first row (columns 2..7) and on
position (2, 3), with equal entries at (1, 4) and (1, 5).  It is stored by
its six independent slots ``(A12, A13, A15, A16, A17, A23)``; ``A15`` is the
shared value of the tied pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .cyclo import Cyclo
from .ffield import FieldSpec, FqElem
from .matgroup import UElem, matmul, unitriangular_inverse

SLOTS = ((1, 2), (1, 3), (1, 5), (1, 6), (1, 7), (2, 3))
SLOT_NAMES = ("A12", "A13", "A15", "A16", "A17", "A23")
# (1, 4) and (1, 5) both carry A15, so the trace pairing counts it twice
KAPPA_WEIGHTS = np.array([1, 1, 2, 1, 1, 1], dtype=np.int64)
PATTERN_POSITIONS = ((1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (2, 3))


@dataclass(frozen=True)
class Pattern:
    field: FieldSpec
    a: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != 6:
            raise ValueError("a pattern has six slots")

    @classmethod
    def make(cls, F: FieldSpec, **slots) -> "Pattern":
        """``Pattern.make(F, A17=1, A23=2)``; missing slots are zero."""
        unknown = set(slots) - set(SLOT_NAMES)
        if unknown:
            raise ValueError(f"unknown slots {sorted(unknown)}")
        vals = []
        for name in SLOT_NAMES:
            v = slots.get(name, 0)
            vals.append(v.value if isinstance(v, FqElem) else F.const(v) if v < 0 else int(v))
        return cls(F, tuple(vals))

    @classmethod
    def zero(cls, F: FieldSpec) -> "Pattern":
        return cls(F, (0,) * 6)

    def __getattr__(self, name):
        if name in SLOT_NAMES:
            return FqElem(self.field, self.a[SLOT_NAMES.index(name)])
        raise AttributeError(name)

    def matrix(self) -> np.ndarray:
        m = np.zeros((8, 8), dtype=np.int64)
        a12, a13, a15, a16, a17, a23 = self.a
        m[0, 1], m[0, 2], m[0, 3], m[0, 4], m[0, 5], m[0, 6] = a12, a13, a15, a15, a16, a17
        m[1, 2] = a23
        return m

    def support(self) -> frozenset[tuple[int, int]]:
        m = self.matrix()
        return frozenset((i, j) for i, j in PATTERN_POSITIONS if m[i - 1, j - 1])

    def __add__(self, other: "Pattern") -> "Pattern":
        F = self.field
        return Pattern(F, tuple(F.add(x, y) for x, y in zip(self.a, other.a)))

    def __sub__(self, other: "Pattern") -> "Pattern":
        F = self.field
        return Pattern(F, tuple(F.sub(x, y) for x, y in zip(self.a, other.a)))

    def scale(self, c: int) -> "Pattern":
        F = self.field
        return Pattern(F, tuple(F.mul(c, x) for x in self.a))

    @property
    def index(self) -> int:
        out = 0
        for x in self.a:
            out = out * self.field.q + x
        return out

    def __repr__(self):
        parts = [f"{n}={x}" for n, x in zip(SLOT_NAMES, self.a) if x]
        return "Pattern(" + (", ".join(parts) or "0") + ")"


def basis_patterns(F: FieldSpec) -> list[Pattern]:
    return [Pattern(F, tuple(int(i == j) for j in range(6))) for i in range(6)]


# -- projection and pairing, vectorised ------------------------------------

def pi_codes(F: FieldSpec, m) -> np.ndarray:
    """Projection of (batched) 8x8 matrices onto pattern slots."""
    m = np.asarray(m)
    half = F.inv(F.const(2))
    a15 = F.vmul(F.vadd(m[..., 0, 3], m[..., 0, 4]), half)
    return np.stack([m[..., 0, 1], m[..., 0, 2], a15, m[..., 0, 5], m[..., 0, 6], m[..., 1, 2]],
                    axis=-1).astype(np.int64)


def kappa_codes(F: FieldSpec, a, b) -> np.ndarray:
    """Trace pairing of slot arrays (broadcasting over leading axes)."""
    w = KAPPA_WEIGHTS % F.p
    return F.vdot(F.vmul(np.asarray(a), w), np.asarray(b))


def pattern_matrices(F: FieldSpec, a) -> np.ndarray:
    """Batched ``Pattern.matrix``."""
    a = np.asarray(a)
    m = np.zeros(a.shape[:-1] + (8, 8), dtype=np.int64)
    m[..., 0, 1] = a[..., 0]
    m[..., 0, 2] = a[..., 1]
    m[..., 0, 3] = a[..., 2]
    m[..., 0, 4] = a[..., 2]
    m[..., 0, 5] = a[..., 3]
    m[..., 0, 6] = a[..., 4]
    m[..., 1, 2] = a[..., 5]
    return m


# -- scalar API ----------------------------------------------------------

GroupArg = Union[UElem, np.ndarray]


def _mat(g: GroupArg) -> np.ndarray:
    return g.mat if isinstance(g, UElem) else np.asarray(g, dtype=np.int64)


def pi(F: FieldSpec, m) -> Pattern:
    return Pattern(F, tuple(int(x) for x in pi_codes(F, m)))


def kappa(A: Pattern, B: Pattern) -> FqElem:
    """tr(A^T B) of the pattern matrices."""
    return FqElem(A.field, int(kappa_codes(A.field, np.array(A.a), np.array(B.a))))


def f_cocycle(F: FieldSpec, g: GroupArg) -> Pattern:
    """f(g) = pi(g), the pattern part of a group element."""
    return pi(F, _mat(g))


def act_circ(A: Pattern, g: GroupArg) -> Pattern:
    """A o g = pi(A g)."""
    F = A.field
    return pi(F, matmul(F, A.matrix(), _mat(g)))


def act_dot(A: Pattern, g: GroupArg) -> Pattern:
    """A . g = pi(A g^{-T}), a right action."""
    F = A.field
    ginv = unitriangular_inverse(F, _mat(g))
    return pi(F, matmul(F, A.matrix(), ginv.T))


def act_left(u: GroupArg, A: Pattern) -> Pattern:
    """u . A = pi(u^{-T} A), a left action."""
    F = A.field
    uinv = unitriangular_inverse(F, _mat(u))
    return pi(F, matmul(F, uinv.T, A.matrix()))


def theta_code(F: FieldSpec, x: int) -> Cyclo:
    return Cyclo.zeta(F.p, F.trace(x))


def chi_A(A: Pattern, u: GroupArg) -> Cyclo:
    """The linear character theta(kappa(A, f(u)))."""
    F = A.field
    return theta_code(F, kappa(A, f_cocycle(F, u)).value)


# -- linear-map form of the actions ------------------------------------------

def dot_matrices(F: FieldSpec, mats) -> np.ndarray:
    """Matrices L(g) with ``A.g = a @ L(g)`` on slot vectors; batched over g."""
    mats = np.asarray(mats)
    ginvT = np.swapaxes(unitriangular_inverse(F, mats), -1, -2)
    rows = []
    for b in range(6):
        e = np.zeros(6, dtype=np.int64)
        e[b] = 1
        rows.append(pi_codes(F, matmul(F, pattern_matrices(F, e), ginvT)))
    return np.stack(rows, axis=-2)


def circ_matrices(F: FieldSpec, mats) -> np.ndarray:
    """Matrices with ``A o g = a @ M(g)``; batched over g."""
    mats = np.asarray(mats)
    rows = []
    for b in range(6):
        e = np.zeros(6, dtype=np.int64)
        e[b] = 1
        rows.append(pi_codes(F, matmul(F, pattern_matrices(F, e), mats)))
    return np.stack(rows, axis=-2)


def apply_linear(F: FieldSpec, a, L) -> np.ndarray:
    """Row vectors times matrix over F_q: ``a @ L``."""
    a = np.asarray(a)
    if F.k == 1:
        return (a @ L) % F.p
    return F.vdot(a[..., :, None], np.asarray(L), axis=-2)
