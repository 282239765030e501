"""Exact arithmetic over prime fields F_p and their extensions F_q = F_{p^r}.

Elements are stored as integer indices in [0, q): the element with
polynomial-basis coordinates (c_0, ..., c_{r-1}) has index sum(c_i * p^i).
With this packing the subfield F_p occupies indices 0..p-1 and the canonical
generator (the class of X for r > 1) has index p.

Multiplication runs off discrete log/antilog tables built once per field.
Addition is XOR in characteristic two, plain modular addition for prime
fields, and a precomputed table for small odd-characteristic extensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_Q = 1 << 16
MAX_Q_ODD_EXT = 1 << 10  # addition-table budget for odd p with r > 1


class FieldError(ValueError):
    """Invalid field parameters or mismatched operands."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FieldSpec:
    """A finite field F_{p^r} with its arithmetic tables.

    Instances are immutable after construction and safe to share across
    threads. Build them through :func:`field_make`, which also caches.
    """

    __slots__ = ("p", "r", "q", "modulus", "generator", "exp", "log",
                 "_add_table", "_neg_table")

    def __init__(self, p: int, r: int, modulus: tuple[int, ...]):
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus = modulus
        self.generator = (-modulus[0]) % p if r == 1 else p
        exp = _generator_orbit(p, r, modulus, self.generator)
        if exp is None:
            raise FieldError(f"modulus {modulus} is not primitive over F_{p}")
        q = self.q
        # exp is doubled so exp[log a + log b] never needs a reduction.
        self.exp = np.concatenate([exp, exp]).astype(np.int64)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self.log = log
        if p == 2 or r == 1:
            self._add_table = None
            self._neg_table = None
        else:
            if q > MAX_Q_ODD_EXT:
                raise FieldError(
                    f"odd-characteristic extension field of order {q} exceeds "
                    f"the addition-table budget ({MAX_Q_ODD_EXT})")
            digits = _digit_matrix(p, r)
            sums = (digits[:, None, :] + digits[None, :, :]) % p
            weights = p ** np.arange(r)
            self._add_table = (sums * weights).sum(axis=2).astype(np.int64)
            self._neg_table = (((-digits) % p) * weights).sum(axis=1).astype(np.int64)

    # -- scalar operations -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.r == 1:
            return (a + b) % self.p
        return int(self._add_table[a, b])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.r == 1:
            return (-a) % self.p
        return int(self._neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.exp[self.q - 1 - self.log[a]])

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if a == 0:
            return 0
        return int(self.exp[self.log[a] - self.log[b] + self.q - 1])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    # -- vectorized operations on index arrays ----------------------------

    def add_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.r == 1:
            return (a + b) % self.p
        return self._add_table[a, b]

    def neg_arr(self, a: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return a.copy()
        if self.r == 1:
            return (-a) % self.p
        return self._neg_table[a]

    def mul_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = self.exp[self.log[a] + self.log[b]]
        zero = (a == 0) | (b == 0)
        if zero.any():
            out = np.where(zero, 0, out)
        return out

    def scalar_mul_arr(self, s: int, v: np.ndarray) -> np.ndarray:
        if s == 0:
            return np.zeros_like(v)
        out = self.exp[self.log[v] + int(self.log[s])]
        return np.where(v == 0, 0, out)

    def dot(self, a: np.ndarray, b: np.ndarray) -> int:
        prod = self.mul_arr(a, b)
        return self.sum_arr(prod)

    def sum_arr(self, v: np.ndarray) -> int:
        if self.p == 2:
            return int(np.bitwise_xor.reduce(v)) if v.size else 0
        if self.r == 1:
            return int(v.sum() % self.p)
        acc = 0
        for x in v.reshape(-1):
            acc = self.add(acc, int(x))
        return acc

    # -- structure ----------------------------------------------------------

    def element_coeffs(self, a: int) -> tuple[int, ...]:
        digits = []
        for _ in range(self.r):
            digits.append(a % self.p)
            a //= self.p
        return tuple(digits)

    def __eq__(self, other):
        return (isinstance(other, FieldSpec) and self.p == other.p
                and self.r == other.r and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, r={self.r}, modulus={self.modulus})"


def _digit_matrix(p: int, r: int) -> np.ndarray:
    idx = np.arange(p**r)
    cols = [(idx // p**i) % p for i in range(r)]
    return np.stack(cols, axis=1)


def _mul_by_x(a: int, p: int, r: int, modulus: tuple[int, ...]) -> int:
    """Multiply the element with index a by the class of X, reducing mod the modulus."""
    digits = [(a // p**i) % p for i in range(r)]
    carry = digits[-1]
    shifted = [0] + digits[:-1]
    if carry:
        shifted = [(s - carry * m) % p for s, m in zip(shifted, modulus[:r])]
    return sum(c * p**i for i, c in enumerate(shifted))


def _generator_orbit(p, r, modulus, generator) -> np.ndarray | None:
    """Return exp table if the canonical generator has order exactly q - 1."""
    q = p**r
    exp = np.zeros(q - 1, dtype=np.int64)
    seen = set()
    y = 1
    for t in range(q - 1):
        if y == 0 or y in seen:
            return None
        exp[t] = y
        seen.add(y)
        y = (y * generator) % p if r == 1 else _mul_by_x(y, p, r, modulus)
    if y != 1:
        return None
    return exp


@lru_cache(maxsize=None)
def field_make(p: int, r: int) -> FieldSpec:
    """Build F_{p^r} with the lexicographically smallest primitive modulus.

    Candidate moduli are monic of degree r; their low-order coefficient
    tuples (c_0, ..., c_{r-1}) are compared lexicographically with c_0 most
    significant. The first candidate whose root has multiplicative order
    q - 1 wins, which makes every table deterministic.
    """
    if not is_prime(p):
        raise FieldError(f"p = {p} is not prime")
    if r < 1:
        raise FieldError(f"extension degree r = {r} must be >= 1")
    if p**r > MAX_Q:
        raise FieldError(f"field order {p**r} exceeds the budget {MAX_Q}")
    # Candidates ordered by packed value sum(c_i p^i): the low-degree
    # coefficients are least significant, so F_16 gets X^4 + X + 1.
    for val in range(p**r):
        modulus = tuple((val // p**i) % p for i in range(r)) + (1,)
        try:
            return FieldSpec(p, r, modulus)
        except FieldError:
            continue
    raise FieldError(f"no primitive polynomial of degree {r} over F_{p}")


@dataclass(frozen=True)
class FieldElem:
    """Typed wrapper for a single field element (index representation)."""

    spec: FieldSpec
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.spec.q:
            raise FieldError(f"index {self.index} out of range for {self.spec}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.element_coeffs(self.index)

    def _check(self, other: "FieldElem"):
        if self.spec != other.spec:
            raise FieldError("operands belong to different fields")

    def __add__(self, other):
        self._check(other)
        return FieldElem(self.spec, self.spec.add(self.index, other.index))

    def __sub__(self, other):
        self._check(other)
        return FieldElem(self.spec, self.spec.sub(self.index, other.index))

    def __mul__(self, other):
        self._check(other)
        return FieldElem(self.spec, self.spec.mul(self.index, other.index))

    def __truediv__(self, other):
        self._check(other)
        return FieldElem(self.spec, self.spec.div(self.index, other.index))

    def __pow__(self, e: int):
        return FieldElem(self.spec, self.spec.pow(self.index, e))

    def __neg__(self):
        return FieldElem(self.spec, self.spec.neg(self.index))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.spec, self.spec.inv(self.index))

    def __bool__(self):
        return self.index != 0


def field_arith(a: FieldElem, b: FieldElem | int, op: str) -> FieldElem:
    """Dispatch {add, sub, mul, div, inv, pow} on wrapped elements."""
    if op == "inv":
        return a.inverse()
    if op == "pow":
        if not isinstance(b, int):
            raise FieldError("pow exponent must be an integer")
        return a**b
    if not isinstance(b, FieldElem):
        raise FieldError("second operand must be a FieldElem")
    table = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__,
             "div": a.__truediv__}
    if op not in table:
        raise FieldError(f"unknown operation {op!r}")
    return table[op](b)


def subfield_embed(spec: FieldSpec, c: int) -> FieldElem:
    """Embed a residue 0 <= c < p as the constant-polynomial element of F_q."""
    if not 0 <= c < spec.p:
        raise FieldError(f"subfield value {c} out of range [0, {spec.p})")
    return FieldElem(spec, c)
