"""Soft-decision list decoding core for Reed-Solomon codes.

Pipeline: a reliability vector over the prime subfield is scaled and floored
into a multiplicity matrix, a minimal (1, k-1)-weighted-degree bivariate
polynomial is interpolated through the weighted points, and its Y-roots of
degree < k are re-encoded into the output list.

The scaling factor is chosen constructively: lambda walks the breakpoints of
floor(lambda * Pi) in increasing order and stops at the first multiplicity
matrix whose score guarantee provably covers every word meeting the
inner-product acceptance threshold. Coverage is certified by a small dynamic
program over per-position (reliability, multiplicity) choices, so the
decoder's completeness never rests on floating-point luck.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

import numpy as np

from . import kernels
from .codes import RsCode, rs_encode
from .gf import FieldSpec
from .poly import BiPoly, Poly, binom_mod

FLOAT_MARGIN = 1e-9


class KvError(Exception):
    """Soft-decision decoding failure."""


class KvParameterError(KvError, ValueError):
    """List-size bound too small for the guarantee to be meaningful."""


class CostCapExceeded(KvError):
    """No admissible multiplicity matrix within the interpolation budget."""

    def __init__(self, lam, cost, cost_max):
        self.lam = lam
        self.cost = cost
        self.cost_max = cost_max
        super().__init__(
            f"interpolation cost {cost} exceeds cap {cost_max} at lambda={lam}")


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction))


@dataclass(frozen=True)
class ReliabilityVector:
    """n blocks of p nonnegative weights, each block summing to one."""

    n: int
    p: int
    blocks: tuple[tuple, ...]

    def __post_init__(self):
        if len(self.blocks) != self.n:
            raise ValueError("block count does not match n")
        for block in self.blocks:
            if len(block) != self.p:
                raise ValueError("block size does not match p")
            if any(v < 0 for v in block):
                raise ValueError("negative reliability entry")
            total = sum(block)
            if _is_rational(total):
                if total != 1:
                    raise ValueError(f"block sum {total} != 1")
            elif abs(total - 1.0) > 1e-12:
                raise ValueError(f"block sum {total} deviates from 1")

    @property
    def exact(self) -> bool:
        return all(_is_rational(v) for b in self.blocks for v in b)

    @property
    def norm_sq(self):
        return sum(v * v for b in self.blocks for v in b)

    def as_float(self) -> np.ndarray:
        return np.array([[float(v) for v in b] for b in self.blocks])

    def max_overlap(self):
        """The largest possible <Pi, [v]> over words v (one cell per block)."""
        return sum(max(b) for b in self.blocks)


@dataclass(frozen=True)
class MultiplicityMatrix:
    """Integer multiplicities floor(lambda * Pi) with their exact cost."""

    n: int
    p: int
    entries: np.ndarray
    lam: object
    cost: int

    @staticmethod
    def build(pi: ReliabilityVector, lam) -> "MultiplicityMatrix":
        ent = np.zeros((pi.n, pi.p), dtype=np.int64)
        for i, block in enumerate(pi.blocks):
            for a, v in enumerate(block):
                ent[i, a] = math.floor(lam * v)
        cost = int((ent * (ent + 1) // 2).sum())
        return MultiplicityMatrix(pi.n, pi.p, ent, lam, cost)


def multiplicity_assign(pi: ReliabilityVector, lam) -> MultiplicityMatrix:
    """Entry-wise floor of lambda * Pi (lambda > 0)."""
    if not lam > 0:
        raise ValueError("lambda must be positive")
    return MultiplicityMatrix.build(pi, lam)


@dataclass(frozen=True)
class DecodeResult:
    """Deduplicated, lexicographically ordered list of decoded words."""

    words: tuple[tuple[int, ...], ...]
    distances: tuple | None = None
    diagnostics: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.words)

    def __contains__(self, word):
        return tuple(int(x) for x in word) in self.words


def make_result(pairs, diagnostics=None) -> DecodeResult:
    """pairs: iterable of (word, distance-or-None); sorts and deduplicates."""
    seen = {}
    for word, dist in pairs:
        seen.setdefault(tuple(int(x) for x in word), dist)
    words = tuple(sorted(seen))
    dists = tuple(seen[w] for w in words)
    return DecodeResult(words, dists, diagnostics or {})


# -- weighted-degree monomial bookkeeping ------------------------------------

def n_monomials(w: int, delta: int) -> int:
    """Count of monomials X^i Y^j with i + w*j <= delta (i, j >= 0)."""
    if delta < 0:
        return 0
    a = delta // w
    return (a + 1) * (delta + 1) - w * a * (a + 1) // 2


def delta_min(w: int, cost: int) -> int:
    """Smallest delta whose monomial count strictly exceeds cost."""
    d = max(0, isqrt(2 * w * max(cost, 0)) - w - 2)
    while n_monomials(w, d) <= cost:
        d += 1
    while d > 0 and n_monomials(w, d - 1) > cost:
        d -= 1
    return d


def monomial_stream(w: int):
    """Monomials ordered by (1, w)-weighted degree, ties to lower Y-degree."""
    wd = 0
    while True:
        for j in range(wd // w + 1):
            yield (wd - w * j, j)
        wd += 1


# -- interpolation ------------------------------------------------------------

def _normalize_points(points):
    out = []
    for x, y, m in points:
        x = x.index if hasattr(x, "index") else int(x)
        y = y.index if hasattr(y, "index") else int(y)
        m = int(m)
        if m < 0:
            raise ValueError("negative multiplicity")
        if m > 0:
            out.append((x, y, m))
    if len({(x, y) for x, y, _ in out}) != len(out):
        raise ValueError("duplicate interpolation points")
    return out


def _interpolate_dense(spec: FieldSpec, points, w: int) -> BiPoly:
    """Reference method: Gaussian kernel search over ordered monomials."""
    constraints = [(x, y, a, b)
                   for x, y, m in points
                   for b in range(m) for a in range(m - b)]
    cost = len(constraints)
    bound = delta_min(w, cost)
    mmax = max(m for _, _, m in points)
    binom = binom_mod(spec.p, max(bound, mmax), max(bound // max(w, 1), mmax))
    pivots: list[tuple[np.ndarray, int, dict]] = []
    for count, (i, j) in enumerate(monomial_stream(w)):
        if count > cost + 1:
            raise RuntimeError("dense interpolation failed to close (internal)")
        col = np.zeros(cost, dtype=np.int64)
        for t, (x, y, a, b) in enumerate(constraints):
            if i < a or j < b:
                continue
            coef = int(binom[i, a]) * int(binom[j, b]) % spec.p
            if coef == 0:
                continue
            v = spec.mul(coef, spec.pow(x, i - a))
            col[t] = spec.mul(v, spec.pow(y, j - b))
        combo = {(i, j): 1}
        for vec, lead, pcombo in pivots:
            if col[lead]:
                factor = spec.div(int(col[lead]), int(vec[lead]))
                col = spec.add_arr(col, spec.scalar_mul_arr(spec.neg(factor), vec))
                for key, c in pcombo.items():
                    val = spec.sub(combo.get(key, 0), spec.mul(factor, c))
                    if val:
                        combo[key] = val
                    else:
                        combo.pop(key, None)
        nz = np.nonzero(col)[0]
        if len(nz) == 0:
            return BiPoly(spec, combo)
        pivots.append((col, int(nz[0]), combo))
    raise RuntimeError("unreachable")


DENSE_COST_LIMIT = 300


def interpolate(spec: FieldSpec, points, k: int, method: str = "auto") -> BiPoly:
    """Minimal (1, k-1)-weighted-degree polynomial vanishing to order m at
    each point. Requires k >= 2 and total cost >= 1."""
    if k < 2:
        raise ValueError("interpolation needs k >= 2")
    pts = _normalize_points(points)
    w = k - 1
    cost = sum(m * (m + 1) // 2 for _, _, m in pts)
    if cost < 1:
        raise ValueError("total interpolation cost must be at least 1")
    if method == "dense" or (method == "auto" and cost <= DENSE_COST_LIMIT):
        q_poly = _interpolate_dense(spec, pts, w)
    elif method in ("auto", "koetter"):
        bound = delta_min(w, cost)
        rows = kernels.koetter_interpolate(spec, pts, w, bound, bound // w)
        q_poly = BiPoly.from_dense(spec, rows)
    else:
        raise ValueError(f"unknown interpolation method {method!r}")
    if q_poly.is_zero():
        raise RuntimeError("interpolation produced the zero polynomial")
    if q_poly.wdeg(w) > delta_min(w, cost):
        raise RuntimeError("interpolation exceeded the solvability bound")
    return q_poly


def y_roots(q_poly: BiPoly, k: int) -> list[Poly]:
    """All f with deg f < k and (Y - f) | Q, cross-checked by division."""
    if q_poly.is_zero():
        raise ValueError("zero polynomial has unconstrained Y-roots")
    spec = q_poly.spec
    rows = q_poly.to_rows()
    found = kernels.rr_yroots(spec, rows, k)
    out = []
    for coeffs in found:
        f = Poly.make(spec, coeffs)
        _, rem = q_poly.divmod_linear_y(f)
        if not rem.is_zero():
            raise RuntimeError("root finder returned a non-divisor (internal)")
        out.append(f)
    out.sort(key=lambda f: f.coeffs)
    return out


# -- the coverage certificate --------------------------------------------------

def _coverage_dp(pi_f: np.ndarray, entries: np.ndarray, delta: int,
                 tau_f: float, has_bottom: bool) -> bool:
    """True when every word with overlap >= tau has score > delta.

    Certified by maximizing <Pi, [v]> over all v with score <= delta; one
    (multiplicity, reliability) choice per position, plus the zero option for
    symbols outside the prime subfield.
    """
    n, p = pi_f.shape
    neg = -np.inf
    dp = np.full(delta + 1, neg)
    dp[0] = 0.0
    for i in range(n):
        opts: dict[int, float] = {}
        if has_bottom:
            opts[0] = 0.0
        for a in range(p):
            m = int(entries[i, a])
            if m > delta:
                continue
            v = float(pi_f[i, a])
            if m not in opts or v > opts[m]:
                opts[m] = v
        ndp = np.full(delta + 1, neg)
        for m, v in opts.items():
            if m == 0:
                np.maximum(ndp, dp + v, out=ndp)
            else:
                np.maximum(ndp[m:], dp[:delta + 1 - m] + v, out=ndp[m:])
        dp = ndp
        if not np.isfinite(dp).any():
            return True
    return float(dp.max()) < tau_f - FLOAT_MARGIN


def kv_decode(code: RsCode, pi: ReliabilityVector, s_bound,
              threshold_sq_norm=None, cost_max=None) -> DecodeResult:
    """List decode: output every codeword c with <Pi,[c]> / |Pi| >= threshold.

    The threshold defaults to sqrt(k-1) / (1 - (1/S)(1/R* + 1/sqrt(2 R*)))
    for S = s_bound. Callers that know the squared normalized threshold
    exactly (a rational number) may pass it via threshold_sq_norm to keep
    every acceptance comparison in exact arithmetic.
    """
    spec = code.field
    n, k = code.n, code.k
    if k < 2:
        raise KvParameterError("soft decoding needs k >= 2")
    if pi.n != n or pi.p != spec.p:
        raise KvParameterError("reliability vector shape does not match code")
    w = k - 1
    r_star = Fraction(w, n)
    numer = 1.0 / float(r_star) + 1.0 / math.sqrt(2.0 * float(r_star))
    if threshold_sq_norm is None:
        if not float(s_bound) > numer:
            raise KvParameterError(
                f"s_bound={s_bound} must exceed 1/R* + 1/sqrt(2R*) = {numer}")
        denom = 1.0 - numer / float(s_bound)
        threshold_sq_norm = w / denom**2
    if cost_max is None:
        cost_max = math.ceil(4.0 * float(s_bound) ** 2 * n)

    norm_sq = pi.norm_sq
    tau_sq = norm_sq * threshold_sq_norm
    exact = pi.exact and _is_rational(threshold_sq_norm)
    tau_f = math.sqrt(float(tau_sq))
    base_diag = {
        "threshold_sq_norm": threshold_sq_norm,
        "tau_sq": tau_sq,
        "norm_sq": norm_sq,
        "cost_max": cost_max,
    }

    overlap_max = pi.max_overlap()
    if exact:
        vacuous = overlap_max * overlap_max < tau_sq
    else:
        vacuous = float(overlap_max) < tau_f - FLOAT_MARGIN
    if vacuous:
        return make_result([], dict(base_diag, vacuous=True, lam=None, cost=0))

    pi_f = pi.as_float()
    has_bottom = spec.q > spec.p
    amax = [max(range(pi.p), key=lambda a: block[a]) for block in pi.blocks]

    # Breakpoint scan: each heap event raises one multiplicity cell by one.
    heap = []
    for i, block in enumerate(pi.blocks):
        for a, v in enumerate(block):
            if v > 0:
                key = Fraction(1) / v if _is_rational(v) else 1.0 / v
                heap.append((key, i, a, 1))
    heapq.heapify(heap)
    entries = np.zeros((n, pi.p), dtype=np.int64)
    cost = 0
    cur_delta = 0
    score_umax = 0
    chosen_lam = None
    while True:
        lam, i, a, j = heapq.heappop(heap)
        batch = [(i, a, j)]
        while heap and heap[0][0] == lam:
            _, i2, a2, j2 = heapq.heappop(heap)
            batch.append((i2, a2, j2))
        for i2, a2, j2 in batch:
            entries[i2, a2] += 1
            cost += int(entries[i2, a2])
            if a2 == amax[i2]:
                score_umax += 1
            v = pi.blocks[i2][a2]
            nxt = Fraction(j2 + 1) / v if _is_rational(v) else (j2 + 1) / v
            heapq.heappush(heap, (nxt, i2, a2, j2 + 1))
        if cost > cost_max:
            raise CostCapExceeded(lam, cost, cost_max)
        while n_monomials(w, cur_delta) <= cost:
            cur_delta += 1
        if score_umax <= cur_delta:
            continue
        if _coverage_dp(pi_f, entries, cur_delta, tau_f, has_bottom):
            chosen_lam = lam
            break

    mult = MultiplicityMatrix(n, pi.p, entries.copy(), chosen_lam, cost)
    points = [(code.eval_points[i], a, int(entries[i, a]))
              for i in range(n) for a in range(pi.p) if entries[i, a] > 0]
    rows = kernels.koetter_interpolate(spec, points, w, cur_delta,
                                       cur_delta // w)
    q_poly = BiPoly.from_dense(spec, rows)
    wdeg_q = q_poly.wdeg(w)
    if q_poly.is_zero() or wdeg_q > cur_delta:
        raise RuntimeError("interpolation violated its degree contract")

    pairs = []
    scores = {}
    for f in y_roots(q_poly, k):
        word = rs_encode(code, f)
        score = sum(int(entries[i, word[i]]) for i in range(n)
                    if word[i] < pi.p)
        overlap = sum(pi.blocks[i][word[i]] for i in range(n)
                      if word[i] < pi.p)
        if exact:
            accepted = overlap * overlap >= tau_sq
        else:
            accepted = float(overlap) >= tau_f - FLOAT_MARGIN
        if accepted and score <= wdeg_q:
            raise RuntimeError("score guarantee violated (internal error)")
        pairs.append((word, None))
        scores[word] = score
    diag = dict(base_diag, vacuous=False, lam=chosen_lam, cost=cost,
                delta=cur_delta, wdeg=wdeg_q, multiplicity=mult,
                scores=scores)
    return make_result(pairs, diag)
