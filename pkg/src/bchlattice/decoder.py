"""Recursive list decoding of Construction D lattices.

The level-i call reduces the received word mod p, list decodes C_i to radius
e_i = p^i * e_0, and for every returned codeword recurses on the rescaled
residual (y - c~)/p one level down. Level 0 enumerates the integer words of
the torus ball and lifts each to its unique nearest representative in the
coset (unique because e_0 < p/2).

With rational inputs every distance comparison is exact; float inputs use a
1e-9 tolerance on squared distances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .euclid import TorusWord, euclid_list_decode
from .lattice import ConstructionDLattice, enumerate_lattice, representative
from .softdecode import DecodeResult, _is_rational, make_result

DIST_TOL = 1e-9


class DecodeError(RuntimeError):
    """A component decoder failed; carries the level for context."""

    def __init__(self, level, cause):
        self.level = level
        self.cause = cause
        super().__init__(f"component decoder failed at level {level}: {cause}")


def round_half_up(x):
    if isinstance(x, float):
        return math.floor(x + 0.5)
    return math.floor(Fraction(x) + Fraction(1, 2))


def round_decode_z(y, c_tilde=None, p: int = 1) -> np.ndarray:
    """The unique nearest point of c~ + pZ^n, rounding halves up."""
    ys = list(y)
    if c_tilde is None:
        c_tilde = [0] * len(ys)
    out = []
    for yi, ci in zip(ys, c_tilde):
        ci = int(ci)
        out.append(ci + p * round_half_up((yi - ci) / p if isinstance(yi, float)
                                          else Fraction(yi - ci, p)))
    return np.array(out, dtype=np.int64)


def zp_ball_decode(w: TorusWord, radius_sq, exact: bool) -> list[tuple[int, ...]]:
    """All words of Z_p^n within torus distance sqrt(radius_sq) of w.

    Depth-first search over per-coordinate residue candidates sorted by
    distance, pruned with suffix minima. This is the level-0 component
    decoder; its output is exactly the ball, as the correctness of the
    recursion requires.
    """
    p, n = w.p, w.n
    tol = 0 if exact else DIST_TOL
    budget = radius_sq + tol
    cands = []
    for i in range(n):
        opts = sorted((w.coord_dist_sq(i, c), c) for c in range(p))
        opts = [(d, c) for d, c in opts if d <= budget]
        if not opts:
            return []
        cands.append(opts)
    suffix_min = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_min[i] = suffix_min[i + 1] + cands[i][0][0]
    out: list[tuple[int, ...]] = []
    word = [0] * n

    def rec(i, spent):
        if i == n:
            out.append(tuple(word))
            return
        for d, c in cands[i]:
            if spent + d + suffix_min[i + 1] > budget:
                break
            word[i] = c
            rec(i + 1, spent + d)

    rec(0, 0)
    return sorted(out)


@dataclass
class DecoderStack:
    """Component decoders D_0..D_ell for one lattice, with call counters."""

    lat: ConstructionDLattice
    epsilon: Fraction
    e0_sq: Fraction                      # (1 - eps) / 2 < 1 <= (p/2)^2
    calls: list[int] = field(default_factory=list)
    list_sizes: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        ell = self.lat.ell
        if not self.calls:
            self.calls = [0] * (ell + 1)
        if not self.list_sizes:
            self.list_sizes = [[] for _ in range(ell + 1)]
        if not self.e0_sq * 4 < self.lat.p**2:
            raise ValueError("need e_0 < p/2")

    def radius_sq(self, i: int):
        return self.lat.p ** (2 * i) * self.e0_sq

    def decode_code_level(self, i: int, w: TorusWord, exact: bool):
        """All codewords of C_i within e_i of w (torus norm)."""
        self.calls[i] += 1
        if i == 0:
            words = zp_ball_decode(w, self.radius_sq(0), exact)
        else:
            bch = self.lat.tower.bch[i] if self.lat.tower.bch else None
            if bch is None:
                raise DecodeError(i, "no soft decoder attached to this level")
            try:
                words = list(euclid_list_decode(bch, w, self.epsilon).words)
            except Exception as exc:  # pragma: no cover - propagated w/ context
                raise DecodeError(i, exc) from exc
        self.list_sizes[i].append(len(words))
        return words


def make_bch_stack(lat: ConstructionDLattice, epsilon) -> DecoderStack:
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise ValueError(f"epsilon {epsilon} outside (0, 1)")
    bch = lat.tower.bch
    if len(bch) != lat.ell + 1 or any(c is None for c in bch[1:]):
        raise ValueError("lattice tower carries no BCH decoders")
    return DecoderStack(lat, eps, (1 - eps) / 2)


def lattice_list_decode(stack: DecoderStack, y, i: int | None = None) -> DecodeResult:
    """Exactly the v in Lambda_i with ||y - v|| <= e_i = p^i * e_0."""
    lat = stack.lat
    p = lat.p
    if i is None:
        i = lat.ell
    if not 0 <= i <= lat.ell:
        raise ValueError(f"level {i} outside [0, {lat.ell}]")
    yvec = [x if isinstance(x, float) else Fraction(x) for x in y]
    if len(yvec) != lat.n:
        raise ValueError(f"received word length {len(yvec)} != n = {lat.n}")
    exact = all(_is_rational(x) for x in yvec)

    def rec(cur, level):
        w = TorusWord.make(p, cur)
        codewords = stack.decode_code_level(level, w, exact)
        found = []
        if level == 0:
            for c in codewords:
                found.append(round_decode_z(cur, c, p))
            return found
        for c in codewords:
            ctil = representative(lat.tower, c, level)
            child_y = [(x - int(t)) / p for x, t in zip(cur, ctil)]
            for v in rec(child_y, level - 1):
                found.append(ctil + p * v)
        return found

    vectors = rec(yvec, i)
    radius_sq = stack.radius_sq(i)
    # Float tolerances at inner levels scale by p^2 per recursion step.
    float_slack = DIST_TOL * (1 + i) * p ** (2 * i)
    pairs = []
    for v in vectors:
        dsq = sum((x - int(vi)) ** 2 for x, vi in zip(yvec, v))
        if exact:
            if dsq > radius_sq:
                raise RuntimeError("decoder emitted a vector outside the radius")
        elif float(dsq) > float(radius_sq) * (1 + 1e-9) + float_slack:
            raise RuntimeError("decoder emitted a vector outside the radius")
        pairs.append((tuple(int(x) for x in v), dsq))
    diag = {
        "level": i,
        "radius_sq": radius_sq,
        "calls": list(stack.calls),
        "list_sizes": [list(s) for s in stack.list_sizes],
    }
    return make_result(pairs, diag)


def bch_lattice_decode(lat: ConstructionDLattice, y, epsilon,
                       stack: DecoderStack | None = None) -> DecodeResult:
    """List decode Lambda_{q, ell} to radius lambda_1 * sqrt((1 - eps)/2)."""
    if stack is None:
        stack = make_bch_stack(lat, epsilon)
    res = lattice_list_decode(stack, y, lat.ell)
    radius = (lat.lambda1 or lat.p**lat.ell) * math.sqrt(
        float(stack.e0_sq))
    diag = dict(res.diagnostics, radius=radius, epsilon=stack.epsilon)
    return DecodeResult(res.words, res.distances, diag)


def call_count_audit(stack: DecoderStack) -> dict:
    """Counter profile versus the recursion-tree prediction.

    The level-ell decoder runs once per top-level decode; each level-(i+1)
    call spawns one level-i call per codeword it returns, so
    calls[i] == sum(list sizes at level i+1) and is bounded by the product
    of the per-level maxima.
    """
    ell = stack.lat.ell
    calls = list(stack.calls)
    sizes = stack.list_sizes
    max_sizes = [max(s) if s else 0 for s in sizes]
    consistent = True
    for i in range(ell - 1, -1, -1):
        if calls[i] != sum(sizes[i + 1]):
            consistent = False
    bounds = []
    top_calls = calls[ell]
    for i in range(ell + 1):
        bound = top_calls
        for j in range(i + 1, ell + 1):
            bound *= max(max_sizes[j], 1)
        bounds.append(bound)
        if calls[i] > bound:
            consistent = False
    return {
        "calls": calls,
        "max_list_sizes": max_sizes,
        "tree_bounds": bounds,
        "consistent": consistent,
    }


def enumeration_oracle(lat: ConstructionDLattice, y, radius,
                       radius_sq=None) -> list[tuple[int, ...]]:
    """Ground truth: all lattice vectors within `radius` of y (n <= 16)."""
    yvec = [x if isinstance(x, float) else Fraction(x) for x in y]
    if radius_sq is None:
        radius_sq = (Fraction(radius)**2 if not isinstance(radius, float)
                     else float(radius)**2)
    vs = enumerate_lattice(lat.basis_int, yvec, radius_sq)
    return sorted(tuple(int(x) for x in v) for v in vs)
