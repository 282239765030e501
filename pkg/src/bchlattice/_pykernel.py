"""Pure-Python (numpy) kernels: incremental interpolation and Y-root finding.

This is the fallback lane; bchlattice._ckernel implements the same two entry
points in Cython and is preferred at import time. Both lanes must return
identical polynomials, which the kernel tests enforce.

Candidates in the interpolation are kept per Y-degree as dense X-coefficient
arrays of field indices. A candidate whose leading (1, w)-weighted degree
exceeds delta_ub can never become the minimal solution and is dropped.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldSpec
from .poly import binom_mod


def _hasse_rows(spec: FieldSpec, rows: dict[int, np.ndarray], a: int, b: int,
                xpow: np.ndarray, ypow: np.ndarray, binx: np.ndarray,
                biny: np.ndarray) -> int:
    """D^{(a,b)} of the candidate, evaluated at the point behind xpow/ypow."""
    acc = 0
    for j, row in rows.items():
        if j < b:
            continue
        yb = int(biny[j, b])
        if yb == 0:
            continue
        if len(row) <= a:
            continue
        seg = row[a:]
        vals = spec.mul_arr(seg, binx[a:a + len(seg), a])
        vals = spec.mul_arr(vals, xpow[:len(seg)])
        hx = spec.sum_arr(vals)
        if hx == 0:
            continue
        term = spec.mul(hx, yb)
        term = spec.mul(term, int(ypow[j - b]))
        acc = spec.add(acc, term)
    return acc


def _combine(spec: FieldSpec, rows_a: dict[int, np.ndarray], ca: int,
             rows_b: dict[int, np.ndarray], cb: int) -> dict[int, np.ndarray]:
    """ca * rows_a - cb * rows_b, trimmed of zero rows."""
    out: dict[int, np.ndarray] = {}
    ncb = spec.neg(cb)
    for j in set(rows_a) | set(rows_b):
        ra = rows_a.get(j)
        rb = rows_b.get(j)
        la = len(ra) if ra is not None else 0
        lb = len(rb) if rb is not None else 0
        n = max(la, lb)
        acc = np.zeros(n, dtype=np.int64)
        if ra is not None:
            acc[:la] = spec.scalar_mul_arr(ca, ra)
        if rb is not None:
            acc[:lb] = spec.add_arr(acc[:lb], spec.scalar_mul_arr(ncb, rb))
        nz = np.nonzero(acc)[0]
        if len(nz):
            out[j] = acc[:nz[-1] + 1]
    return out


def _mul_x_minus(spec: FieldSpec, rows: dict[int, np.ndarray],
                 x: int) -> dict[int, np.ndarray]:
    """(X - x) * candidate."""
    nx = spec.neg(x)
    out = {}
    for j, row in rows.items():
        new = np.zeros(len(row) + 1, dtype=np.int64)
        new[1:] = row
        new[:len(row)] = spec.add_arr(new[:len(row)],
                                      spec.scalar_mul_arr(nx, row))
        nz = np.nonzero(new)[0]
        if len(nz):
            out[j] = new[:nz[-1] + 1]
    return out


def koetter_interpolate(spec: FieldSpec, points, w: int, delta_ub: int,
                        ly_cap: int) -> list[np.ndarray]:
    """Minimal Q vanishing to the given multiplicities, via Koetter updates.

    points: iterable of (x, y, m) field-index triples with m >= 1.
    Returns the polynomial as a list of X-coefficient arrays indexed by
    Y-degree. Among polynomials with deg_Y <= ly_cap satisfying the
    constraints, the result has the smallest (wdeg_{1,w}, deg_Y) key; when
    delta_ub is the solvability bound, that is the global minimum.
    """
    L = ly_cap
    mmax = max((m for _, _, m in points), default=1)
    binx = binom_mod(spec.p, delta_ub + 1, max(mmax - 1, 0))
    biny = binom_mod(spec.p, L, max(mmax - 1, 0))
    cands: list[dict[int, np.ndarray] | None] = [
        {j: np.array([1], dtype=np.int64)} for j in range(L + 1)
    ]
    keys = [(w * j, j) for j in range(L + 1)]
    for x, y, m in points:
        xpow = np.empty(delta_ub + 2, dtype=np.int64)
        xpow[0] = 1
        for i in range(1, delta_ub + 2):
            xpow[i] = spec.mul(int(xpow[i - 1]), x)
        ypow = np.empty(L + 1, dtype=np.int64)
        ypow[0] = 1
        for j in range(1, L + 1):
            ypow[j] = spec.mul(int(ypow[j - 1]), y)
        for b in range(m):
            for a in range(m - b):
                ds = {}
                for c, rows in enumerate(cands):
                    if rows is None:
                        continue
                    d = _hasse_rows(spec, rows, a, b, xpow, ypow, binx, biny)
                    if d:
                        ds[c] = d
                if not ds:
                    continue
                jstar = min(ds, key=lambda c: keys[c])
                dstar = ds[jstar]
                star_rows = cands[jstar]
                for c, dc in ds.items():
                    if c == jstar:
                        continue
                    cands[c] = _combine(spec, cands[c], dstar, star_rows, dc)
                cands[jstar] = _mul_x_minus(spec, star_rows, x)
                keys[jstar] = (keys[jstar][0] + 1, keys[jstar][1])
                if keys[jstar][0] > delta_ub:
                    cands[jstar] = None
    best = None
    for c, rows in enumerate(cands):
        if rows is not None and (best is None or keys[c] < keys[best]):
            best = c
    if best is None:
        raise RuntimeError("interpolation lost every candidate (internal error)")
    rows = cands[best]
    return [rows.get(j, np.zeros(0, dtype=np.int64)).astype(np.int64)
            for j in range(max(rows) + 1)]


def _strip_x(rows: list[np.ndarray]) -> list[np.ndarray]:
    s = None
    for row in rows:
        nz = np.nonzero(row)[0]
        if len(nz):
            s = nz[0] if s is None else min(s, int(nz[0]))
    if not s:
        return rows
    return [row[s:] if len(row) > s else row[:0] for row in rows]


def _rows_zero(rows: list[np.ndarray]) -> bool:
    return all(not row.any() for row in rows)


def _shift_y(spec: FieldSpec, rows: list[np.ndarray], alpha: int,
             biny: np.ndarray) -> list[np.ndarray]:
    """Rows of Q(X, alpha + Y) from rows of Q(X, Y)."""
    L = len(rows) - 1
    apow = [1]
    for _ in range(L):
        apow.append(spec.mul(apow[-1], alpha))
    out: list[np.ndarray] = []
    for jp in range(L + 1):
        n = max((len(rows[j]) for j in range(jp, L + 1)), default=0)
        acc = np.zeros(n, dtype=np.int64)
        for j in range(jp, L + 1):
            coef = int(biny[j, jp]) if jp < biny.shape[1] else 0
            if coef == 0 or not len(rows[j]):
                continue
            c = spec.mul(coef, apow[j - jp])
            if c:
                acc[:len(rows[j])] = spec.add_arr(
                    acc[:len(rows[j])], spec.scalar_mul_arr(c, rows[j]))
        out.append(acc)
    return out


def rr_yroots(spec: FieldSpec, rows: list[np.ndarray], k: int) -> list[tuple[int, ...]]:
    """All f with deg(f) < k and Q(X, f(X)) = 0, by depth-first digit peeling."""
    if _rows_zero(rows):
        raise ValueError("Y-root extraction needs a nonzero polynomial")
    L = len(rows) - 1
    biny = binom_mod(spec.p, max(L, 1), max(L, 1))
    results: list[tuple[int, ...]] = []
    coeffs = [0] * k

    def u_roots(stripped: list[np.ndarray]) -> list[int]:
        u = [int(row[0]) if len(row) else 0 for row in stripped]
        out = []
        for alpha in range(spec.q):
            acc = 0
            for c in reversed(u):
                acc = spec.add(spec.mul(acc, alpha), c)
            if acc == 0:
                out.append(alpha)
        return out

    def x_identity_zero(stripped: list[np.ndarray], alpha: int) -> bool:
        n = max((len(r) for r in stripped), default=0)
        acc = np.zeros(n, dtype=np.int64)
        apow = 1
        for row in stripped:
            if len(row) and apow:
                acc[:len(row)] = spec.add_arr(
                    acc[:len(row)], spec.scalar_mul_arr(apow, row))
            apow = spec.mul(apow, alpha)
        return not acc.any()

    def recurse(cur: list[np.ndarray], depth: int):
        cur = _strip_x(cur)
        for alpha in u_roots(cur):
            if depth == k - 1:
                if x_identity_zero(cur, alpha):
                    coeffs[depth] = alpha
                    results.append(tuple(coeffs))
                    coeffs[depth] = 0
                continue
            coeffs[depth] = alpha
            shifted = _shift_y(spec, cur, alpha, biny)
            nxt = [np.concatenate([np.zeros(j, dtype=np.int64), row])
                   for j, row in enumerate(shifted)]
            if not _rows_zero(nxt):
                recurse(nxt, depth + 1)
            coeffs[depth] = 0

    recurse([row.copy() for row in rows], 0)
    return sorted(set(results))
