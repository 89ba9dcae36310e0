"""Small finite fields GF(p^k) with exact arithmetic.

Elements are coefficient vectors over GF(p) in the polynomial basis
1, x, ..., x^(k-1) modulo a fixed monic irreducible polynomial. Each element
also has an integer index sum(c_i * p^i), which is what the table-driven
matrix code in :mod:`carterlab.matgrp` and :mod:`carterlab.chevalley` uses.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from sympy import isprime

from .errors import DivisionByZero, FieldTooLarge, MixedFields, NotPrime

MAX_FIELD_SIZE = 2**16
TABLE_LIMIT = 2**10

_table_lock = threading.Lock()


def _poly_divides(d, f, p):
    """True if monic d divides f over GF(p). Coefficients low degree first."""
    r = list(f)
    dd = len(d) - 1
    for i in range(len(r) - 1, dd - 1, -1):
        c = r[i] % p
        if c:
            for j in range(dd + 1):
                r[i - dd + j] = (r[i - dd + j] - c * d[j]) % p
    return not any(x % p for x in r[:dd])


def is_irreducible(f, p):
    """Exhaustive factor search: f monic of degree k, coefficients low first."""
    k = len(f) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if _poly_divides(tuple(low) + (1,), f, p):
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p, k):
    """Lexicographically least monic irreducible of degree k (low degree first)."""
    for low in itertools.product(range(p), repeat=k):
        f = tuple(low) + (1,)
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The field GF(p^k) = GF(p)[x]/(modulus)."""

    p: int
    k: int
    modulus: tuple
    _tables: dict = field(default_factory=dict, repr=False, compare=False)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.k, self.modulus) == (
            other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"

    @property
    def q(self):
        return self.p**self.k

    # element construction
    def __call__(self, x):
        return self.elem(x)

    def elem(self, x):
        if isinstance(x, FieldElem):
            if x.spec != self:
                raise MixedFields("element belongs to a different field")
            return x
        if isinstance(x, (int, np.integer)):
            if self.k == 1:
                return FieldElem(self, (int(x) % self.p,))
            x = int(x)
            if not 0 <= x < self.q:
                raise ValueError(f"index {x} out of range for GF({self.q})")
            return FieldElem(self, self._digits(x))
        c = tuple(int(v) % self.p for v in x)
        if len(c) != self.k:
            raise ValueError("coefficient vector has wrong length")
        return FieldElem(self, c)

    def _digits(self, n):
        out = []
        for _ in range(self.k):
            n, r = divmod(n, self.p)
            out.append(r)
        return tuple(out)

    def zero(self):
        return FieldElem(self, (0,) * self.k)

    def one(self):
        return FieldElem(self, (1,) + (0,) * (self.k - 1))

    def gen(self):
        """The class of x (for k = 1 this is a primitive root)."""
        if self.k == 1:
            return self.elem(self.primitive_index())
        return FieldElem(self, (0, 1) + (0,) * (self.k - 2))

    def elements(self):
        return [self.elem(i) for i in range(self.q)]

    def nonzero(self):
        return [self.elem(i) for i in range(1, self.q)]

    def prime_field_index(self, c):
        return int(c) % self.p

    # raw coefficient arithmetic
    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def _mul(self, a, b):
        p, k, f = self.p, self.k, self.modulus
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(k + 1):
                    prod[i - k + j] -= c * f[j]
        return tuple(v % p for v in prod[:k])

    def _index(self, a):
        n = 0
        for c in reversed(a):
            n = n * self.p + c
        return n

    # tables (built once, under a lock)
    def tables(self):
        """Addition, multiplication, negation, inverse and Frobenius tables on indices."""
        if self.q > TABLE_LIMIT:
            raise FieldTooLarge(f"tables are only built for q <= {TABLE_LIMIT}")
        t = self._tables
        if "mul" in t:
            return t
        with _table_lock:
            if "mul" in t:
                return t
            q = self.q
            digits = [self._digits(i) for i in range(q)]
            add = np.zeros((q, q), dtype=np.int32)
            mul = np.zeros((q, q), dtype=np.int32)
            for i in range(q):
                for j in range(i, q):
                    add[i, j] = add[j, i] = self._index(self._add(digits[i], digits[j]))
                    mul[i, j] = mul[j, i] = self._index(self._mul(digits[i], digits[j]))
            neg = np.array([self._index(self._neg(d)) for d in digits], dtype=np.int32)
            inv = np.zeros(q, dtype=np.int32)
            for i in range(1, q):
                inv[i] = int(np.nonzero(mul[i] == 1)[0][0])
            frob = np.array([_pow_table(mul, i, self.p) for i in range(q)], dtype=np.int32)
            t["add"], t["neg"], t["inv"], t["frob"] = add, neg, inv, frob
            t["mul"] = mul
        return t

    def primitive_index(self):
        """Index of the least primitive element (generator of the unit group)."""
        q = self.q
        for i in range(1, q):
            if self.elem(i).multiplicative_order() == q - 1:
                return i
        raise AssertionError("unit group not cyclic")


def _pow_table(mul, a, e):
    r = 1
    for _ in range(e):
        r = int(mul[r, a])
    return r


@dataclass(frozen=True)
class FieldElem:
    spec: FieldSpec
    repr: tuple

    @property
    def index(self):
        return self.spec._index(self.repr)

    def __int__(self):
        return self.index

    def _check(self, other):
        if isinstance(other, (int, np.integer)):
            return self.spec.elem(int(other) % self.spec.p)
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.spec != self.spec:
            raise MixedFields("operands lie in different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.spec, self.spec._add(self.repr, other.repr))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.spec, self.spec._neg(self.repr))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.spec, self.spec._mul(self.repr, other.repr))

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.repr)

    def __bool__(self):
        return not self.is_zero()

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("zero has no inverse")
        return self ** (self.spec.q - 2)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        result = self.spec.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.repr == self.spec.elem(int(other) % self.spec.p).repr
        return isinstance(other, FieldElem) and self.spec == other.spec and self.repr == other.repr

    def __hash__(self):
        return hash((self.spec.q, self.repr))

    def __repr__(self):
        if self.spec.k == 1:
            return str(self.repr[0])
        terms = []
        for i, c in enumerate(self.repr):
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}*{mono}")
        return " + ".join(reversed(terms)) or "0"

    def frobenius(self, e=1):
        return frobenius(self, e)

    def multiplicative_order(self):
        if self.is_zero():
            raise DivisionByZero("zero has no multiplicative order")
        one = self.spec.one()
        x, n = self, 1
        while x != one:
            x = x * self
            n += 1
        return n

    def is_square(self):
        if self.is_zero() or self.spec.p == 2:
            return True
        return self ** ((self.spec.q - 1) // 2) == self.spec.one()


def field_make(p, k=1):
    """GF(p^k) with the lexicographically least monic irreducible modulus."""
    p, k = int(p), int(k)
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be at least 1")
    if p**k > MAX_FIELD_SIZE:
        raise FieldTooLarge(f"GF({p}^{k}) exceeds the 2^16 cap")
    return _cached_field(p, k)


@lru_cache(maxsize=None)
def _cached_field(p, k):
    return FieldSpec(p, k, least_irreducible(p, k))


def field_arith(a, b, op, n=None):
    """Dispatch helper: op in {'add', 'mul', 'inv', 'pow'}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** n
    raise ValueError(f"unknown field operation {op!r}")


def frobenius(a, e=1):
    """a ** (p ** e); frobenius(a, k) == a."""
    e = int(e) % a.spec.k
    return a ** (a.spec.p**e)
