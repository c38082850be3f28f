"""Finite fields F_q, q = p^k with p an odd prime and k <= 4.

Elements are stored as integer codes ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``
where ``c_i`` are the coefficients of the polynomial representative modulo
the defining polynomial.  Code 0 is zero and code 1 is one, so the
enumeration order is 0, 1, ...

Scalar arithmetic works on plain ints.  The ``v*`` methods accept numpy
arrays (or anything broadcastable) and are what the group machinery uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np


class FieldError(ValueError):
    """Invalid field parameters or foreign elements."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, k


# -- polynomials over F_p as little-endian coefficient lists -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_divmod(a, b, p):
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        quot[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
    return _trim(quot), a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _is_irreducible(f, p):
    k = len(f) - 1
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            g = list(low) + [1]
            if not _trim(_poly_divmod(f, g, p)[1]):
                return False
    return True


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree k.

    Candidates are ordered by the integer ``sum(c_i p^i)`` of their lower
    coefficients, i.e. with the highest lower coefficient most significant.
    Returned little-endian, leading 1 included.
    """
    if k == 1:
        return (0, 1)
    for code in range(p ** k):
        low = [(code // p ** i) % p for i in range(k)]
        f = low + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


class FieldSpec:
    """The field F_{p^k} together with its arithmetic tables.

    >>> F = FieldSpec(3, 2)
    >>> F.modulus
    (1, 0, 1)
    >>> F.mul(3, 3)  # x * x = -1
    2
    """

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p) or p == 2:
            raise FieldError(f"characteristic must be an odd prime, got {p}")
        if not 1 <= k <= 4:
            raise FieldError(f"extension degree must be in 1..4, got {k}")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = least_irreducible(p, k)
        self._build_log_tables()

    @classmethod
    def from_order(cls, q: int) -> "FieldSpec":
        return cls(*factor_prime_power(q))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, k={self.k})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    # -- encoding --------------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple((a // self.p ** i) % self.p for i in range(self.k))

    def from_coeffs(self, c) -> int:
        c = list(c)
        if len(c) > self.k:
            c = _poly_divmod(c, list(self.modulus), self.p)[1]
        return sum((x % self.p) * self.p ** i for i, x in enumerate(c))

    def const(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def elem(self, a) -> "FqElem":
        if isinstance(a, FqElem):
            self.check(a)
            return a
        return FqElem(self, int(a))

    def check(self, a: "FqElem"):
        if a.field != self:
            raise FieldError(f"element of {a.field} used with {self}")

    def elements(self) -> list["FqElem"]:
        return [FqElem(self, a) for a in range(self.q)]

    def prime_basis(self) -> list[int]:
        """Codes of 1, x, ..., x^{k-1}: an F_p-basis of F_q."""
        return [self.p ** i for i in range(self.k)]

    # -- polynomial-level arithmetic (reference) ----------------------------

    def poly_mul(self, a: int, b: int) -> int:
        prod = _poly_mul(_trim(list(self.coeffs(a))), _trim(list(self.coeffs(b))), self.p)
        return self.from_coeffs(_poly_divmod(prod, list(self.modulus), self.p)[1] if prod else [])

    def poly_inv(self, a: int) -> int:
        """Inverse by the extended Euclidean algorithm on representatives."""
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_q")
        p = self.p
        r0, r1 = list(self.modulus), _trim(list(self.coeffs(a)))
        s0, s1 = [], [1]
        while r1:
            quo, rem = _poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quo, s1, p), p)
        # r0 is a nonzero constant
        c = pow(r0[0], p - 2, p)
        return self.from_coeffs([x * c % p for x in s0])

    def _build_log_tables(self):
        q = self.q
        gen = None
        for g in range(2 if q > 2 else 1, q):
            x, order = g, 1
            while x != 1:
                x = self.poly_mul(x, g)
                order += 1
            if order == q - 1:
                gen = g
                break
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self.poly_mul(exp[i - 1], gen)
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        self.generator = gen
        self._exp = exp
        self._log = log

    # -- scalar arithmetic on codes ----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self._add_list[a][b]

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self._neg_list[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero in F_q")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if a == 0:
            return 1 if n == 0 else 0
        if self.k == 1:
            return pow(a, n, self.p)
        return self._exp[self._log[a] * n % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def trace(self, a: int) -> int:
        """Absolute trace to F_p, returned as an int in [0, p)."""
        return self._trace_list[a]

    def is_square(self, a: int) -> bool:
        return a == 0 or self._log[a] % 2 == 0

    # -- tables -------------------------------------------------------------

    @cached_property
    def add_table(self) -> np.ndarray:
        p, k, q = self.p, self.k, self.q
        a = np.arange(q).reshape(-1, 1)
        b = np.arange(q).reshape(1, -1)
        out = np.zeros((q, q), dtype=np.int64)
        for i in range(k):
            w = p ** i
            out += ((a // w + b // w) % p) * w
        return out

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        exp = np.array(self._exp, dtype=np.int64)
        log = np.array(self._log, dtype=np.int64)
        a = np.arange(q).reshape(-1, 1)
        b = np.arange(q).reshape(1, -1)
        out = exp[(log[a] + log[b]) % (q - 1)]
        out[0, :] = 0
        out[:, 0] = 0
        return out

    @cached_property
    def neg_table(self) -> np.ndarray:
        p, k = self.p, self.k
        a = np.arange(self.q)
        out = np.zeros(self.q, dtype=np.int64)
        for i in range(k):
            w = p ** i
            out += ((-(a // w)) % p) * w
        return out

    @cached_property
    def inv_table(self) -> np.ndarray:
        out = np.zeros(self.q, dtype=np.int64)
        for a in range(1, self.q):
            out[a] = self.inv(a)
        return out

    @cached_property
    def trace_table(self) -> np.ndarray:
        return np.array(self._trace_list, dtype=np.int64)

    @cached_property
    def _add_list(self):
        return self.add_table.tolist()

    @cached_property
    def _neg_list(self):
        return self.neg_table.tolist()

    @cached_property
    def _trace_list(self):
        out = []
        for a in range(self.q):
            s, x = 0, a
            for _ in range(self.k):
                s = self.add(s, x)
                x = self.frobenius(x)
            if s >= self.p:
                raise FieldError("trace left the prime field")
            out.append(s)
        return out

    # -- vectorised arithmetic on arrays of codes -------------------------

    def vadd(self, a, b):
        if self.k == 1:
            return (np.asarray(a) + b) % self.p
        return self.add_table[a, b]

    def vneg(self, a):
        if self.k == 1:
            return (-np.asarray(a)) % self.p
        return self.neg_table[a]

    def vsub(self, a, b):
        if self.k == 1:
            return (np.asarray(a) - b) % self.p
        return self.add_table[a, self.neg_table[b]]

    def vmul(self, a, b):
        if self.k == 1:
            return (np.asarray(a) * b) % self.p
        return self.mul_table[a, b]

    def vinv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("division by zero in F_q")
        return self.inv_table[a]

    def vtrace(self, a):
        if self.k == 1:
            return np.asarray(a) % self.p
        return self.trace_table[a]

    def vscale(self, n: int, a):
        """Multiply codes by the integer constant n."""
        return self.vmul(self.const(n), a)

    def vsum(self, terms):
        terms = list(terms)
        out = terms[0]
        for t in terms[1:]:
            out = self.vadd(out, t)
        return out

    def vdot(self, a, b, axis=-1):
        """Sum over ``axis`` of elementwise products."""
        if self.k == 1:
            return (np.asarray(a) * b).sum(axis=axis) % self.p
        prod = self.vmul(a, b)
        prod = np.moveaxis(np.asarray(prod), axis, 0)
        out = prod[0]
        for x in prod[1:]:
            out = self.add_table[out, x]
        return out


@dataclass(frozen=True, eq=False)
class FqElem:
    """An element of F_q; thin operator-overloading wrapper over a code."""

    field: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise FieldError(f"code {self.value} out of range for F_{self.field.q}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _coerce(self, other):
        if isinstance(other, FqElem):
            self.field.check(other)
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.const(int(other))
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FqElem(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FqElem(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FqElem(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FqElem(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FqElem(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FqElem(self.field, self.field.div(b, self.value))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return FqElem(self.field, self.field.pow(self.value, n))

    def inverse(self) -> "FqElem":
        return FqElem(self.field, self.field.inv(self.value))

    def trace(self) -> int:
        return self.field.trace(self.value)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self.field.const(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.value))

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.value}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(f"{c}{mono}" if c != 1 or not mono else mono)
        return " + ".join(reversed(terms)) or "0"


def fq_enumerate(F: FieldSpec) -> list[FqElem]:
    """All elements of F in code order: 0, 1, then the rest."""
    return F.elements()
