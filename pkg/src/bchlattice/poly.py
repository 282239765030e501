"""Univariate and bivariate polynomials over F_q (index-coefficient form).

The zero polynomial has degree -inf, kept distinct from degree-0 constants so
weighted-degree bookkeeping in the interpolation code can never conflate the
two.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gf import FieldElem, FieldSpec

NEG_INF = float("-inf")


@dataclass(frozen=True)
class Poly:
    """Polynomial sum(coeffs[i] * X^i) with coefficients as field indices."""

    spec: FieldSpec
    coeffs: tuple[int, ...]

    @staticmethod
    def make(spec: FieldSpec, coeffs) -> "Poly":
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return Poly(spec, tuple(cs))

    @staticmethod
    def zero(spec: FieldSpec) -> "Poly":
        return Poly(spec, ())

    @staticmethod
    def const(spec: FieldSpec, c: int) -> "Poly":
        return Poly.make(spec, (c,))

    @staticmethod
    def x(spec: FieldSpec) -> "Poly":
        return Poly(spec, (0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Poly") -> "Poly":
        s = self.spec
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = s.add(out[i], c)
        return Poly.make(s, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(self.spec.neg(1))

    def scale(self, c: int) -> "Poly":
        if c == 0:
            return Poly.zero(self.spec)
        s = self.spec
        return Poly.make(s, [s.mul(c, a) for a in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        s = self.spec
        if self.is_zero() or other.is_zero():
            return Poly.zero(s)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = s.add(out[i + j], s.mul(a, b))
        return Poly.make(s, out)

    def shift(self, k: int) -> "Poly":
        """Multiply by X^k."""
        if self.is_zero():
            return self
        return Poly(self.spec, (0,) * k + self.coeffs)

    def eval(self, x: int) -> int:
        """Horner evaluation at a field element given by index."""
        s = self.spec
        acc = 0
        for c in reversed(self.coeffs):
            acc = s.add(s.mul(acc, x), c)
        return acc

    def eval_many(self, xs: np.ndarray) -> np.ndarray:
        s = self.spec
        acc = np.zeros(len(xs), dtype=np.int64)
        for c in reversed(self.coeffs):
            acc = s.mul_arr(acc, xs)
            if c:
                acc = s.add_arr(acc, np.full(len(xs), c, dtype=np.int64))
        return acc


def poly_eval(f: Poly, x: FieldElem) -> FieldElem:
    """Evaluate f at x (typed surface over Poly.eval)."""
    if f.spec != x.spec:
        raise ValueError("polynomial and point belong to different fields")
    return FieldElem(x.spec, f.eval(x.index))


def lagrange_interpolate(spec: FieldSpec, xs, ys) -> Poly:
    """The unique polynomial of degree < len(xs) through the given points."""
    n = len(xs)
    if len(set(xs)) != n:
        raise ValueError("interpolation points must be distinct")
    result = Poly.zero(spec)
    for i in range(n):
        if ys[i] == 0:
            continue
        num = Poly.const(spec, 1)
        denom = 1
        for j in range(n):
            if j == i:
                continue
            num = num * Poly.make(spec, (spec.neg(xs[j]), 1))
            denom = spec.mul(denom, spec.sub(xs[i], xs[j]))
        result = result + num.scale(spec.div(ys[i], denom))
    return result


@lru_cache(maxsize=None)
def binom_mod(p: int, nmax: int, kmax: int) -> np.ndarray:
    """Pascal's triangle mod p as an (nmax+1) x (kmax+1) array."""
    table = np.zeros((nmax + 1, kmax + 1), dtype=np.int64)
    table[:, 0] = 1
    for n in range(1, nmax + 1):
        upto = min(n, kmax)
        table[n, 1:upto + 1] = (table[n - 1, 1:upto + 1]
                                + table[n - 1, 0:upto]) % p
    return table


class BiPoly:
    """Bivariate polynomial as a map (i, j) -> nonzero coefficient index.

    The (1, w)-weighted degree of X^i Y^j is i + w*j; the polynomial's
    weighted degree is the maximum over its terms (-inf when zero).
    """

    __slots__ = ("spec", "terms")

    def __init__(self, spec: FieldSpec, terms: dict[tuple[int, int], int]):
        self.spec = spec
        self.terms = {k: int(v) for k, v in terms.items() if v}

    @staticmethod
    def from_dense(spec: FieldSpec, rows) -> "BiPoly":
        """rows[j] is the X-coefficient array of the Y^j part."""
        terms = {}
        for j, row in enumerate(rows):
            for i, c in enumerate(row):
                if c:
                    terms[(i, j)] = int(c)
        return BiPoly(spec, terms)

    def to_rows(self) -> list[np.ndarray]:
        dy = self.deg_y()
        if dy < 0:
            return []
        rows = []
        for j in range(dy + 1):
            dj = max((i for (i, jj) in self.terms if jj == j), default=-1)
            row = np.zeros(dj + 1, dtype=np.int64)
            for (i, jj), c in self.terms.items():
                if jj == j:
                    row[i] = c
            rows.append(row)
        return rows

    def is_zero(self) -> bool:
        return not self.terms

    def wdeg(self, w: int):
        if not self.terms:
            return NEG_INF
        return max(i + w * j for i, j in self.terms)

    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def leading_term(self, w: int) -> tuple[int, int]:
        """Leading (i, j) under wdeg order with ties broken by lower j."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=lambda ij: (ij[0] + w * ij[1], ij[1]))

    def __add__(self, other: "BiPoly") -> "BiPoly":
        s = self.spec
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = s.add(out.get(k, 0), c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return BiPoly(s, out)

    def scale(self, c: int) -> "BiPoly":
        s = self.spec
        if c == 0:
            return BiPoly(s, {})
        return BiPoly(s, {k: s.mul(c, v) for k, v in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + other.scale(self.spec.neg(1))

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        s = self.spec
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                v = s.add(out.get(k, 0), s.mul(c1, c2))
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return BiPoly(s, out)

    def eval(self, x: int, y: int) -> int:
        s = self.spec
        acc = 0
        for (i, j), c in self.terms.items():
            acc = s.add(acc, s.mul(c, s.mul(s.pow(x, i), s.pow(y, j))))
        return acc

    def hasse_eval(self, a: int, b: int, x: int, y: int) -> int:
        """Hasse derivative D^{(a,b)} evaluated at (x, y).

        This is the coefficient of z^a w^b in Q(x + z, y + w); the point is a
        zero of multiplicity >= m exactly when this vanishes for all a+b < m.
        """
        s = self.spec
        p = s.p
        dx, dy = self.deg_x(), self.deg_y()
        binom = binom_mod(p, max(dx, dy, a, b), max(a, b))
        acc = 0
        for (i, j), c in self.terms.items():
            if i < a or j < b:
                continue
            coef = (binom[i, a] * binom[j, b]) % p
            if coef == 0:
                continue
            term = s.mul(c, int(coef))
            term = s.mul(term, s.pow(x, i - a))
            term = s.mul(term, s.pow(y, j - b))
            acc = s.add(acc, term)
        return acc

    def eval_y_poly(self, f: Poly) -> Poly:
        """Q(X, f(X)); the remainder of dividing Q by (Y - f)."""
        s = self.spec
        rows = self.to_rows()
        acc = Poly.zero(s)
        for row in reversed(rows):
            acc = acc * f + Poly.make(s, row)
        return acc

    def divmod_linear_y(self, f: Poly) -> tuple["BiPoly", Poly]:
        """Synthetic division by the monic linear factor (Y - f(X))."""
        s = self.spec
        rows = [Poly.make(s, row) for row in self.to_rows()]
        if not rows:
            return BiPoly(s, {}), Poly.zero(s)
        quot_rows: list[Poly] = []
        carry = Poly.zero(s)
        for row in reversed(rows[1:]):
            carry = row + carry * f
            quot_rows.append(carry)
        rem = rows[0] + carry * f if rows[1:] else rows[0]
        quot_rows.reverse()
        terms: dict[tuple[int, int], int] = {}
        for j, qr in enumerate(quot_rows):
            for i, c in enumerate(qr.coeffs):
                if c:
                    terms[(i, j)] = c
        return BiPoly(s, terms), rem

    def __eq__(self, other):
        return (isinstance(other, BiPoly) and self.spec == other.spec
                and self.terms == other.terms)

    def __repr__(self):
        return f"BiPoly({len(self.terms)} terms, degX={self.deg_x()}, degY={self.deg_y()})"
