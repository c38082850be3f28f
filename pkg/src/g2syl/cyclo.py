"""Exact arithmetic in the cyclotomic field Q(zeta_p).

A value is stored in the basis ``zeta^0, ..., zeta^{p-2}`` with Fraction
coefficients; ``zeta^{p-1}`` is rewritten as ``-(1 + zeta + ... + zeta^{p-2})``.

Bulk character computations use plain integer "zeta-count" arrays instead:
a trailing axis of length p holding the multiplicity of each power of zeta.
Every character value met here is a cyclotomic integer, so these arrays are
exact.  ``canon`` maps them to the canonical basis.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .ffield import FqElem


class Cyclo:
    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence = ()):
        c = [Fraction(x) for x in coeffs]
        if len(c) == p:
            top = c.pop()
            c = [x - top for x in c]
        if len(c) > p - 1:
            raise ValueError(f"too many coefficients for Q(zeta_{p})")
        c += [Fraction(0)] * (p - 1 - len(c))
        self.p = p
        self.coeffs = tuple(c)

    @classmethod
    def zeta(cls, p: int, j: int = 1) -> "Cyclo":
        c = [0] * p
        c[j % p] = 1
        return cls(p, c)

    @classmethod
    def rational(cls, p: int, r) -> "Cyclo":
        return cls(p, [r])

    @classmethod
    def from_counts(cls, counts, scale=1) -> "Cyclo":
        """``scale * sum_j counts[j] zeta^j`` with ``len(counts) == p``."""
        counts = [int(x) for x in counts]
        s = Fraction(scale)
        return cls(len(counts), [s * x for x in counts])

    def _lift(self):
        return list(self.coeffs) + [Fraction(0)]

    def _check(self, other):
        if isinstance(other, Cyclo):
            if other.p != self.p:
                raise ValueError("mixing different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return Cyclo.rational(self.p, Fraction(int(other)) if isinstance(other, np.integer) else other)
        return NotImplemented

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return Cyclo(self.p, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        p = self.p
        a, b = self._lift(), o._lift()
        out = [Fraction(0)] * p
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[(i + j) % p] += x * y
        return Cyclo(p, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.p, [a / Fraction(other) for a in self.coeffs])
        return NotImplemented

    def conj(self) -> "Cyclo":
        p = self.p
        a = self._lift()
        out = [Fraction(0)] * p
        for j, x in enumerate(a):
            out[-j % p] += x
        return Cyclo(p, out)

    def is_rational(self) -> bool:
        return all(x == 0 for x in self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.coeffs)

    def to_complex(self) -> complex:
        w = cmath.exp(2j * cmath.pi / self.p)
        return sum(float(c) * w ** j for j, c in enumerate(self.coeffs))

    def __eq__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def to_json(self) -> dict[str, Any]:
        z = self.to_complex()
        return {
            "zeta_coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
            "approx": [round(z.real, 12), round(z.imag, 12)],
        }

    @classmethod
    def from_json(cls, p: int, data) -> "Cyclo":
        return cls(p, [Fraction(n, d) for n, d in data["zeta_coeffs"]])


def theta(x: FqElem) -> Cyclo:
    """The additive character zeta^{Tr(x)}."""
    return Cyclo.zeta(x.field.p, x.trace())


# -- zeta-count arrays ---------------------------------------------------

def counts_from_exponents(exps, p: int, weights=None) -> np.ndarray:
    """Histogram of exponents mod p along the last axis."""
    exps = np.asarray(exps) % p
    out = np.zeros(p, dtype=np.int64)
    np.add.at(out, exps.ravel(), 1 if weights is None else np.asarray(weights).ravel())
    return out


def canon(counts: np.ndarray) -> np.ndarray:
    """Canonical basis coefficients (last axis p -> p-1)."""
    counts = np.asarray(counts)
    return counts[..., :-1] - counts[..., -1:]


def counts_equal(a, b) -> np.ndarray:
    """Elementwise equality of zeta-count arrays as cyclotomic numbers."""
    return np.all(canon(a) == canon(b), axis=-1)


def counts_to_cyclo(counts, scale=1) -> Cyclo:
    return Cyclo.from_counts(counts, scale)


def gram(X: np.ndarray, Y: np.ndarray, weights) -> np.ndarray:
    """Hermitian pairing of two batches of class functions.

    X has shape (m, C, p), Y has shape (n, C, p), weights has shape (C,).
    Returns the (m, n, p) zeta-count array of
    ``sum_c weights[c] * X[a, c] * conj(Y[b, c])`` (not yet divided by the
    group order).  Sums are exact: float64 BLAS is used only when a bound
    keeps them below 2**52, otherwise int64.
    """
    p = X.shape[-1]
    Xw = (X * np.asarray(weights, dtype=np.int64)[None, :, None]).reshape(X.shape[0], -1)
    # float64 BLAS is exact while every partial sum stays below 2**53
    bound = float(np.abs(Xw).max(initial=0)) * float(np.abs(Y).max(initial=0)) * Xw.shape[1]
    exact_float = bound < 2.0 ** 52
    if exact_float:
        Xw = Xw.astype(np.float64)
    out = np.empty((X.shape[0], Y.shape[0], p), dtype=np.int64)
    for d in range(p):
        # conj(zeta^j) = zeta^{-j}; pair X's zeta^i with Y's zeta^{i-d}
        Yd = np.roll(Y, d, axis=-1).reshape(Y.shape[0], -1)
        if exact_float:
            out[:, :, d] = np.rint(Xw @ Yd.T.astype(np.float64)).astype(np.int64)
        else:
            out[:, :, d] = Xw @ Yd.T
    return out


def gram_is_scaled_identity(G: np.ndarray, diag) -> bool:
    """True when the canonical form of G equals diag * delta exactly."""
    C = canon(G)
    n = G.shape[0]
    target = np.zeros_like(C)
    target[np.arange(n), np.arange(n), 0] = diag
    return bool(np.array_equal(C, target))


@dataclass
class ClassFunction:
    """A class function given on representatives.

    ``entries`` holds ``(representative, class_size, value)`` triples whose
    sizes add up to ``group_order``.
    """

    entries: list[tuple[Any, int, Cyclo]]
    group_order: int

    def __post_init__(self):
        total = sum(size for _, size, _ in self.entries)
        if total != self.group_order:
            raise ValueError(f"class sizes sum to {total}, expected {self.group_order}")

    @property
    def degree(self) -> Cyclo:
        return self.entries[0][2]

    def values(self) -> list[Cyclo]:
        return [v for _, _, v in self.entries]

    def value_at(self, rep) -> Cyclo:
        for r, _, v in self.entries:
            if r == rep:
                return v
        raise KeyError(rep)


def inner_product(f: ClassFunction, g: ClassFunction) -> Cyclo:
    """``(1/|U|) sum_c |c| f(c) conj(g(c))`` over matching representatives."""
    if f.group_order != g.group_order or len(f.entries) != len(g.entries):
        raise ValueError("class functions live on different class lists")
    total = None
    for (r1, s1, v1), (r2, s2, v2) in zip(f.entries, g.entries):
        if r1 != r2 or s1 != s2:
            raise ValueError(f"class lists disagree at {r1!r} / {r2!r}")
        term = v1 * v2.conj() * s1
        total = term if total is None else total + term
    return total / f.group_order
