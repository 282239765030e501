"""Reed-Solomon codes, their prime-subfield BCH subcodes, and nested towers.

BCH codes here are always primitive and narrow sense: length n = q - 1,
evaluation set F_q* ordered as powers of the canonical generator, and the
F_p generator matrix built from the cyclic generator polynomial
g(X) = lcm of the minimal polynomials of g^1 .. g^{d-1}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .gf import FieldSpec, field_make
from .poly import Poly, lagrange_interpolate


class CodeError(ValueError):
    """Invalid code parameters or malformed words."""


@dataclass(frozen=True)
class RsCode:
    """Evaluation-encoded Reed-Solomon code of length n and dimension k."""

    field: FieldSpec
    n: int
    k: int
    eval_points: tuple[int, ...]

    @property
    def d(self) -> int:
        return self.n - self.k + 1

    @property
    def r_star(self) -> Fraction:
        return Fraction(self.k - 1, self.n)


def default_eval_points(spec: FieldSpec, n: int) -> tuple[int, ...]:
    """alpha_i = g^{i-1} for the canonical generator g (i = 1..n)."""
    if n > spec.q - 1:
        raise CodeError(f"no canonical ordering for n = {n} > q - 1")
    return tuple(int(spec.exp[i]) for i in range(n))


def rs_make(spec: FieldSpec, n: int, k: int, eval_points=None) -> RsCode:
    if not 1 <= k <= n:
        raise CodeError(f"need 1 <= k <= n, got k={k}, n={n}")
    if n > spec.q:
        raise CodeError(f"length n={n} exceeds field order q={spec.q}")
    if eval_points is None:
        eval_points = default_eval_points(spec, n)
    eval_points = tuple(int(x) for x in eval_points)
    if len(eval_points) != n:
        raise CodeError("need exactly n evaluation points")
    if len(set(eval_points)) != n:
        raise CodeError("evaluation points must be distinct")
    if any(not 0 <= x < spec.q for x in eval_points):
        raise CodeError("evaluation point out of range")
    return RsCode(spec, n, k, eval_points)


def rs_encode(code: RsCode, message: Poly) -> tuple[int, ...]:
    """Evaluate a degree-<k message polynomial at the code's points."""
    if message.degree >= code.k:
        raise CodeError(f"message degree {message.degree} >= k = {code.k}")
    xs = np.array(code.eval_points, dtype=np.int64)
    return tuple(int(v) for v in message.eval_many(xs))


def rs_contains(code: RsCode, word) -> bool:
    word = [int(w) for w in word]
    if len(word) != code.n:
        raise CodeError(f"word length {len(word)} != n = {code.n}")
    f = lagrange_interpolate(code.field, list(code.eval_points), word)
    return f.degree < code.k


def rref_mod_p(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p; returns (rref, pivot columns)."""
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    rank = 0
    for c in range(cols):
        sel = None
        for r in range(rank, rows):
            if a[r, c] % p:
                sel = r
                break
        if sel is None:
            continue
        a[[rank, sel]] = a[[sel, rank]]
        a[rank] = (a[rank] * pow(int(a[rank, c]), -1, p)) % p
        for r in range(rows):
            if r != rank and a[r, c]:
                a[r] = (a[r] - a[r, c] * a[rank]) % p
        pivots.append(c)
        rank += 1
        if rank == rows:
            break
    return a[:rank], pivots


class LinearCode:
    """A linear code over F_p given by a generator matrix (rows span)."""

    def __init__(self, p: int, gen: np.ndarray):
        self.p = p
        gen = np.atleast_2d(np.array(gen, dtype=np.int64)) % p
        self.n = gen.shape[1]
        self.rref, self.pivots = rref_mod_p(gen, p)
        self.k = self.rref.shape[0]
        self.gen = self.rref if gen.shape[0] != self.k else gen

    def contains(self, word) -> bool:
        w = np.array([int(x) for x in word], dtype=np.int64) % self.p
        if w.shape[0] != self.n:
            raise CodeError(f"word length {w.shape[0]} != n = {self.n}")
        for row, c in zip(self.rref, self.pivots):
            if w[c]:
                w = (w - w[c] * row) % self.p
        return not w.any()


def cyclotomic_cosets(n: int, p: int, upto: int) -> list[list[int]]:
    """The p-ary cyclotomic cosets mod n that meet {1, ..., upto}."""
    seen: set[int] = set()
    cosets = []
    for s in range(1, upto + 1):
        if s in seen:
            continue
        coset = []
        x = s
        while x not in seen:
            seen.add(x)
            coset.append(x)
            x = (x * p) % n
        cosets.append(sorted(coset))
    return cosets


class BchCode:
    """F_p-subfield subcode of RS[n = q-1, k = n-d+1] over F_q.

    gen_matrix holds the cyclic shifts of the generator polynomial; its rows
    are verified to be RS codewords at construction, guarding the subfield
    subcode identity the designed distance relies on.
    """

    def __init__(self, rs: RsCode, designed_d: int,
                 gen_matrix: np.ndarray, coset_exponents: list[int]):
        self.rs = rs
        self.field = rs.field
        self.p = rs.field.p
        self.n = rs.n
        self.designed_d = designed_d
        self.gen_matrix = gen_matrix
        self.coset_exponents = coset_exponents
        self.k_p = gen_matrix.shape[0]
        self._linear = LinearCode(self.p, gen_matrix)

    def contains(self, word) -> bool:
        return self._linear.contains(word)

    @property
    def linear(self) -> LinearCode:
        return self._linear

    def codim_bound(self) -> int:
        """Upper bound ceil((p-1)/p * (d-1)) * log_p(q) on n - k_p."""
        p, d = self.p, self.designed_d
        return -((-(p - 1) * (d - 1)) // p) * self.field.r

    def __repr__(self):
        return (f"BchCode(q={self.field.q}, n={self.n}, d={self.designed_d}, "
                f"k_p={self.k_p})")


def _syndromes(spec: FieldSpec, word: np.ndarray, exponents) -> list[int]:
    """c(g^j) for each exponent j, with c(X) = sum word[i] X^i."""
    out = []
    n = len(word)
    for j in exponents:
        powers = spec.exp[(np.arange(n) * j) % (spec.q - 1)]
        out.append(spec.dot(word, powers))
    return out


def bch_make(spec: FieldSpec, designed_d: int) -> BchCode:
    n = spec.q - 1
    if not 1 <= designed_d <= n:
        raise CodeError(f"designed distance {designed_d} outside [1, {n}]")
    k = n - designed_d + 1
    rs = rs_make(spec, n, k)
    cosets = cyclotomic_cosets(n, spec.p, designed_d - 1)
    exponents = sorted(e for c in cosets for e in c)
    # g(X) = prod over coset exponents of (X - g^e); conjugate-closed, so the
    # coefficients land in F_p.
    g = Poly.const(spec, 1)
    for e in exponents:
        root = int(spec.exp[e])
        g = g * Poly.make(spec, (spec.neg(root), 1))
    if any(c >= spec.p for c in g.coeffs):
        raise CodeError("generator polynomial escaped the prime subfield")
    k_p = n - len(exponents)
    gen = np.zeros((k_p, n), dtype=np.int64)
    for t in range(k_p):
        gen[t, t:t + len(g.coeffs)] = g.coeffs
    code = BchCode(rs, designed_d, gen, exponents)
    # Definitional check: every generator row is an RS codeword.
    for row in gen:
        if any(_syndromes(spec, row, range(1, designed_d))):
            raise CodeError("generator row fails the RS membership check")
    if n <= 63:
        for row in gen:
            if not rs_contains(rs, row):
                raise CodeError("generator row fails interpolation membership")
    if n - k_p > code.codim_bound():
        raise CodeError("codimension bound violated")
    return code


def code_contains(code, word) -> bool:
    """Membership for either an RsCode (interpolation) or a BchCode (solve)."""
    if isinstance(code, RsCode):
        return rs_contains(code, word)
    if isinstance(code, (BchCode, LinearCode)):
        return code.contains(word)
    raise CodeError(f"unsupported code type {type(code)!r}")


@dataclass
class CodeTower:
    """Nested codes F_p^n = C_0 >= C_1 >= ... >= C_ell with distinguished basis.

    basis rows b_1..b_n satisfy: b_1..b_{k_i} is a basis of C_i for every
    level, and the rows have pairwise distinct leading positions (so some
    permutation of them is upper triangular).
    """

    p: int
    n: int
    ell: int
    codes: list[LinearCode]
    basis: np.ndarray
    dims: list[int]
    bch: list[BchCode | None] = field(default_factory=list)
    field_spec: FieldSpec | None = None

    def level_code(self, i: int) -> LinearCode:
        return self.codes[i]

    def prefix_rows(self, i: int) -> np.ndarray:
        return self.basis[:self.dims[i]]


def _extend_basis(rows: list[np.ndarray], cand: np.ndarray, p: int) -> bool:
    """Append cand if independent of rows (kept reduced); True if appended."""
    w = cand.copy() % p
    for r in rows:
        lead = int(np.argmax(r != 0))
        if w[lead]:
            w = (w - w[lead] * pow(int(r[lead]), -1, p) * r) % p
    if not w.any():
        return False
    rows.append(w)
    return True


def tower_basis_matrix(p: int, codes: list[LinearCode]) -> np.ndarray:
    """Distinguished basis: extend a C_ell basis level by level, then enforce
    distinct leading columns by eliminating earlier rows into later ones."""
    n = codes[0].n
    picked: list[np.ndarray] = []
    reduced: list[np.ndarray] = []
    for code in reversed(codes):
        for row in code.rref:
            if _extend_basis(reduced, row, p):
                picked.append(row.copy())
    if len(picked) != n:
        raise CodeError("tower levels do not span F_p^n")
    basis = np.array(picked, dtype=np.int64)
    pivot_of: dict[int, int] = {}
    for t in range(n):
        while True:
            lead = int(np.argmax(basis[t] != 0))
            owner = pivot_of.get(lead)
            if owner is None:
                pivot_of[lead] = t
                break
            factor = basis[t, lead] * pow(int(basis[owner, lead]), -1, p)
            basis[t] = (basis[t] - factor * basis[owner]) % p
            if not basis[t].any():
                raise CodeError("rank defect while triangularizing basis")
    return basis


def _check_tower(tower: CodeTower) -> None:
    basis, p = tower.basis, tower.p
    leads = [int(np.argmax(row != 0)) for row in basis]
    if len(set(leads)) != tower.n:
        raise CodeError("basis rows do not permute to upper triangular")
    for i, code in enumerate(tower.codes):
        k = tower.dims[i]
        if code.k != k:
            raise CodeError(f"level {i} dimension mismatch")
        for row in basis[:k]:
            if not code.contains(row):
                raise CodeError(f"basis prefix leaves C_{i}")
    for i in range(tower.ell):
        for row in tower.codes[i + 1].rref:
            if not tower.codes[i].contains(row):
                raise CodeError(f"nesting violated at level {i + 1}")


def tower_from_codes(p: int, codes: list[LinearCode], basis=None,
                     bch: list[BchCode | None] | None = None,
                     field_spec: FieldSpec | None = None) -> CodeTower:
    n = codes[0].n
    ell = len(codes) - 1
    if codes[0].k != n:
        raise CodeError("C_0 must be the full space F_p^n")
    if basis is None:
        basis = tower_basis_matrix(p, codes)
    basis = np.array(basis, dtype=np.int64) % p
    tower = CodeTower(p=p, n=n, ell=ell, codes=codes, basis=basis,
                      dims=[c.k for c in codes], bch=bch or [],
                      field_spec=field_spec)
    _check_tower(tower)
    return tower


def tower_make(spec: FieldSpec, ell: int) -> CodeTower:
    """BCH tower with designed distances d_i = 4^i (binary fields only)."""
    if spec.p != 2:
        raise CodeError("BCH towers with d_i = 4^i require characteristic 2")
    n = spec.q - 1
    if ell < 1 or 4**ell > n:
        raise CodeError(f"need 1 <= ell <= log4(n); got ell={ell}, n={n}")
    bch_codes: list[BchCode | None] = [None]
    codes = [LinearCode(2, np.eye(n, dtype=np.int64))]
    for i in range(1, ell + 1):
        code = bch_make(spec, 4**i)
        bch_codes.append(code)
        codes.append(code.linear)
    return tower_from_codes(2, codes, bch=bch_codes, field_spec=spec)


def tower_basis(tower: CodeTower) -> np.ndarray:
    """The distinguished basis rows b_1..b_n of a tower."""
    return tower.basis


# -- serialization -----------------------------------------------------------

def code_to_json(code: BchCode) -> str:
    spec = code.field
    doc = {
        "p": spec.p,
        "r": spec.r,
        "modulus_poly": list(spec.modulus),
        "n": code.n,
        "designed_d": code.designed_d,
        "gen_matrix": [[int(x) for x in row] for row in code.gen_matrix],
    }
    return json.dumps(doc, sort_keys=True)


def code_from_json(text: str) -> BchCode:
    doc = json.loads(text)
    spec = field_make(doc["p"], doc["r"])
    if list(spec.modulus) != doc["modulus_poly"]:
        raise CodeError("stored modulus does not match the canonical modulus")
    code = bch_make(spec, doc["designed_d"])
    if code.n != doc["n"]:
        raise CodeError("stored length is inconsistent")
    if [[int(x) for x in row] for row in code.gen_matrix] != doc["gen_matrix"]:
        raise CodeError("stored generator matrix is inconsistent")
    return code
