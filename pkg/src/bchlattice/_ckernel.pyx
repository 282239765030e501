# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: Koetter-style interpolation and Y-root extraction.

Mirrors bchlattice._pykernel exactly; the lane equivalence tests assert both
return identical polynomials and root sets.
"""

import numpy as np

cimport numpy as cnp

from .poly import binom_mod

cnp.import_array()

ctypedef cnp.int64_t i64

# Addition modes: 0 = xor (p == 2), 1 = modular (r == 1), 2 = table.


cdef inline i64 fadd(i64 a, i64 b, int mode, int p, i64[:, ::1] addt) nogil:
    if mode == 0:
        return a ^ b
    if mode == 1:
        return (a + b) % p
    return addt[a, b]


cdef inline i64 fmul(i64 a, i64 b, i64[::1] expt, i64[::1] logt) nogil:
    if a == 0 or b == 0:
        return 0
    return expt[logt[a] + logt[b]]


cdef class _Field:
    cdef i64[::1] expt
    cdef i64[::1] logt
    cdef i64[:, ::1] addt
    cdef int mode
    cdef int p
    cdef int q
    cdef object _addt_obj

    def __init__(self, spec):
        self.expt = spec.exp
        self.logt = spec.log
        self.p = spec.p
        self.q = spec.q
        if spec.p == 2:
            self.mode = 0
            self._addt_obj = np.zeros((1, 1), dtype=np.int64)
        elif spec.r == 1:
            self.mode = 1
            self._addt_obj = np.zeros((1, 1), dtype=np.int64)
        else:
            self.mode = 2
            self._addt_obj = np.ascontiguousarray(spec._add_table)
        self.addt = self._addt_obj

    cdef inline i64 neg(self, i64 a):
        if self.mode == 0:
            return a
        if self.mode == 1:
            return (self.p - a) % self.p
        return fmul(a, <i64>(self.p - 1), self.expt, self.logt)


cdef void _mul_x_minus_inplace(i64[:, :, ::1] cand, i64[:, ::1] rowdeg,
                               Py_ssize_t c, i64 nfac, int L,
                               int mode, int p, i64[:, ::1] addt,
                               i64[::1] expt, i64[::1] logt) nogil:
    """cand[c] *= (X - x) with nfac = -x; degrees grow by exactly one."""
    cdef Py_ssize_t j, i, da
    for j in range(L + 1):
        da = rowdeg[c, j]
        if da < 0:
            continue
        for i in range(da + 1, 0, -1):
            cand[c, j, i] = fadd(cand[c, j, i - 1],
                                 fmul(nfac, cand[c, j, i], expt, logt),
                                 mode, p, addt)
        cand[c, j, 0] = fmul(nfac, cand[c, j, 0], expt, logt)
        rowdeg[c, j] = da + 1


def koetter_interpolate(spec, points, int w, int delta_ub, int ly_cap):
    """See _pykernel.koetter_interpolate; identical contract and output."""
    cdef _Field F = _Field(spec)
    cdef int L = ly_cap
    cdef int xcap = delta_ub + 2
    cdef Py_ssize_t ncand = L + 1
    if ncand * ncand * xcap * 8 > (1 << 29):
        raise MemoryError("interpolation problem too large for dense kernel")
    cdef int mmax = 1
    for pt in points:
        if <int> pt[2] > mmax:
            mmax = <int> pt[2]
    binx_np = np.ascontiguousarray(binom_mod(spec.p, delta_ub + 1,
                                             max(mmax - 1, 0)))
    biny_np = np.ascontiguousarray(binom_mod(spec.p, max(L, 1),
                                             max(mmax - 1, 0)))
    cdef i64[:, ::1] binx = binx_np
    cdef i64[:, ::1] biny = biny_np
    # cand[c, j, i]: X^i Y^j coefficient of candidate c; rowdeg[c, j] is the
    # X-degree of row j (-1 when empty). Slots above rowdeg stay zero.
    cand_np = np.zeros((ncand, L + 1, xcap), dtype=np.int64)
    rowdeg_np = np.full((ncand, L + 1), -1, dtype=np.int64)
    cdef i64[:, :, ::1] cand = cand_np
    cdef i64[:, ::1] rowdeg = rowdeg_np
    alive_np = np.ones(ncand, dtype=np.int64)
    cdef i64[::1] alive = alive_np
    keyw_np = np.zeros(ncand, dtype=np.int64)
    cdef i64[::1] keyw = keyw_np
    cdef Py_ssize_t c, j
    for c in range(ncand):
        cand[c, c, 0] = 1
        rowdeg[c, c] = 0
        keyw[c] = w * c
    xpow_np = np.zeros(xcap, dtype=np.int64)
    ypow_np = np.zeros(L + 1, dtype=np.int64)
    cdef i64[::1] xpow = xpow_np
    cdef i64[::1] ypow = ypow_np
    disc_np = np.zeros(ncand, dtype=np.int64)
    cdef i64[::1] disc = disc_np

    cdef i64 x, y, d, hx, yb, v, bb, dstar, nfac
    cdef int m, a, b, mode = F.mode, p = F.p
    cdef Py_ssize_t i, jstar, deg, da, db, dm
    cdef i64[::1] expt = F.expt
    cdef i64[::1] logt = F.logt
    cdef i64[:, ::1] addt = F.addt

    for pt in points:
        x = <i64> pt[0]
        y = <i64> pt[1]
        m = <int> pt[2]
        xpow[0] = 1
        for i in range(1, xcap):
            xpow[i] = fmul(xpow[i - 1], x, expt, logt)
        ypow[0] = 1
        for i in range(1, L + 1):
            ypow[i] = fmul(ypow[i - 1], y, expt, logt)
        for b in range(m):
            for a in range(m - b):
                for c in range(ncand):
                    disc[c] = 0
                    if not alive[c]:
                        continue
                    d = 0
                    for j in range(b, L + 1):
                        deg = rowdeg[c, j]
                        if deg < a:
                            continue
                        yb = biny[j, b]
                        if yb == 0:
                            continue
                        hx = 0
                        for i in range(a, deg + 1):
                            v = cand[c, j, i]
                            if v:
                                bb = binx[i, a]
                                if bb:
                                    hx = fadd(hx,
                                              fmul(fmul(v, bb, expt, logt),
                                                   xpow[i - a], expt, logt),
                                              mode, p, addt)
                        if hx:
                            d = fadd(d, fmul(fmul(hx, yb, expt, logt),
                                             ypow[j - b], expt, logt),
                                     mode, p, addt)
                    disc[c] = d
                jstar = -1
                for c in range(ncand):
                    if alive[c] and disc[c]:
                        if jstar < 0 or keyw[c] < keyw[jstar]:
                            jstar = c
                if jstar < 0:
                    continue
                dstar = disc[jstar]
                for c in range(ncand):
                    if c == jstar or not alive[c] or disc[c] == 0:
                        continue
                    nfac = F.neg(disc[c])
                    for j in range(L + 1):
                        da = rowdeg[c, j]
                        db = rowdeg[jstar, j]
                        dm = da if da > db else db
                        if dm < 0:
                            continue
                        for i in range(dm + 1):
                            v = 0
                            if i <= da:
                                v = fmul(dstar, cand[c, j, i], expt, logt)
                            if i <= db:
                                v = fadd(v, fmul(nfac, cand[jstar, j, i],
                                                 expt, logt), mode, p, addt)
                            cand[c, j, i] = v
                        while dm >= 0 and cand[c, j, dm] == 0:
                            dm -= 1
                        rowdeg[c, j] = dm
                _mul_x_minus_inplace(cand, rowdeg, jstar, F.neg(x), L,
                                     mode, p, addt, expt, logt)
                keyw[jstar] += 1
                if keyw[jstar] > delta_ub:
                    alive[jstar] = 0
    cdef Py_ssize_t best = -1
    for c in range(ncand):
        if alive[c]:
            if best < 0 or keyw[c] < keyw[best]:
                best = c
    if best < 0:
        raise RuntimeError("interpolation lost every candidate (internal error)")
    rows = []
    cdef Py_ssize_t maxj = -1
    for j in range(L + 1):
        if rowdeg[best, j] >= 0:
            maxj = j
    for j in range(maxj + 1):
        deg = rowdeg[best, j]
        if deg >= 0:
            rows.append(np.array(cand_np[best, j, :deg + 1]))
        else:
            rows.append(np.zeros(0, dtype=np.int64))
    return rows


# -- Roth-Ruckenstein Y-root extraction ---------------------------------------


cdef list _strip_x_c(list rows):
    cdef Py_ssize_t s = -1
    cdef Py_ssize_t i
    for row in rows:
        arr = np.asarray(row)
        nz = np.nonzero(arr)[0]
        if len(nz):
            if s < 0 or nz[0] < s:
                s = int(nz[0])
    if s <= 0:
        return rows
    return [np.asarray(row)[s:] if len(row) > s
            else np.zeros(0, dtype=np.int64) for row in rows]


def rr_yroots(spec, rows, int k):
    """See _pykernel.rr_yroots; identical contract and output."""
    cdef _Field F = _Field(spec)
    cdef int L = len(rows) - 1
    rows = [np.ascontiguousarray(np.asarray(r, dtype=np.int64)) for r in rows]
    nonzero = False
    for r in rows:
        if np.asarray(r).any():
            nonzero = True
    if not nonzero:
        raise ValueError("Y-root extraction needs a nonzero polynomial")
    biny_np = np.ascontiguousarray(binom_mod(spec.p, max(L, 1), max(L, 1)))
    cdef i64[:, ::1] biny = biny_np
    cdef i64[::1] expt = F.expt
    cdef i64[::1] logt = F.logt
    cdef i64[:, ::1] addt = F.addt
    cdef int mode = F.mode, p = F.p, q = F.q
    results = []
    coeffs = [0] * k

    def u_roots(cur):
        out = []
        cdef_u = [int(np.asarray(row)[0]) if len(row) else 0 for row in cur]
        for alpha in range(q):
            acc = 0
            for cu in reversed(cdef_u):
                acc = fadd(fmul(acc, alpha, expt, logt), cu, mode, p, addt)
            if acc == 0:
                out.append(alpha)
        return out

    def x_identity_zero(cur, alpha):
        n = max((len(r) for r in cur), default=0)
        acc = np.zeros(n, dtype=np.int64)
        apow = 1
        for row in cur:
            arr = np.asarray(row)
            if len(arr) and apow:
                scaled = _scalar_mul_vec(F, apow, arr)
                acc[:len(arr)] = _add_vec(F, acc[:len(arr)], scaled)
            apow = fmul(apow, alpha, expt, logt)
        return not acc.any()

    def shift_y(cur, alpha):
        apow = [1]
        for _ in range(L):
            apow.append(fmul(apow[len(apow) - 1], alpha, expt, logt))
        out = []
        for jp in range(L + 1):
            n = max((len(cur[j]) for j in range(jp, L + 1)), default=0)
            acc = np.zeros(n, dtype=np.int64)
            for j in range(jp, L + 1):
                coef = int(biny[j, jp])
                if coef == 0 or not len(cur[j]):
                    continue
                cval = fmul(coef, apow[j - jp], expt, logt)
                if cval:
                    scaled = _scalar_mul_vec(F, cval, np.asarray(cur[j]))
                    acc[:len(cur[j])] = _add_vec(F, acc[:len(cur[j])], scaled)
            out.append(acc)
        return out

    def recurse(cur, depth):
        cur = _strip_x_c(cur)
        for alpha in u_roots(cur):
            if depth == k - 1:
                if x_identity_zero(cur, alpha):
                    coeffs[depth] = alpha
                    results.append(tuple(coeffs))
                    coeffs[depth] = 0
                continue
            coeffs[depth] = alpha
            shifted = shift_y(cur, alpha)
            nxt = [np.concatenate([np.zeros(j, dtype=np.int64), row])
                   for j, row in enumerate(shifted)]
            if any(np.asarray(r).any() for r in nxt):
                recurse(nxt, depth + 1)
            coeffs[depth] = 0

    recurse(rows, 0)
    return sorted(set(results))


cdef _scalar_mul_vec(_Field F, i64 s, cnp.ndarray vec):
    cdef cnp.ndarray[i64, ndim=1] arr = np.ascontiguousarray(vec, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] out = np.zeros(len(arr), dtype=np.int64)
    cdef Py_ssize_t i
    for i in range(len(arr)):
        out[i] = fmul(s, arr[i], F.expt, F.logt)
    return out


cdef _add_vec(_Field F, cnp.ndarray a, cnp.ndarray b):
    cdef cnp.ndarray[i64, ndim=1] aa = np.ascontiguousarray(a, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] bb = np.ascontiguousarray(b, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] out = np.zeros(len(aa), dtype=np.int64)
    cdef Py_ssize_t i
    for i in range(len(aa)):
        out[i] = fadd(aa[i], bb[i], F.mode, F.p, F.addt)
    return out
