"""List decoding of prime-subfield RS subcodes under the Euclidean torus norm.

A received word lives in (R/pZ)^n. Its reliability image spreads each
coordinate over the two adjacent residues, the soft-decision core recovers
every sufficiently correlated codeword, and a final subfield-membership and
distance filter leaves exactly the codewords within squared distance
(1 - eps) * d / 2.

Coordinates given as ints or Fractions keep every comparison exact; float
coordinates fall back to a 1e-9 tolerance on squared distances (inclusive
boundary either way).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .codes import BchCode
from .softdecode import (DecodeResult, ReliabilityVector, _is_rational,
                         kv_decode, make_result)

DIST_TOL = 1e-9


def _canon_coord(x, p):
    if isinstance(x, float):
        return x % p
    return Fraction(x) % p


@dataclass(frozen=True)
class TorusWord:
    """A point of (R/pZ)^n with coordinates canonicalized into [0, p)."""

    p: int
    coords: tuple

    @staticmethod
    def make(p: int, coords) -> "TorusWord":
        return TorusWord(p, tuple(_canon_coord(x, p) for x in coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def exact(self) -> bool:
        return all(_is_rational(x) for x in self.coords)

    def coord_dist_sq(self, i: int, c):
        d = (self.coords[i] - c) % self.p
        d = min(d, self.p - d)
        return d * d

    def dist_sq(self, word):
        """Squared torus distance to an integer word."""
        return sum(self.coord_dist_sq(i, int(c)) for i, c in enumerate(word))


def torus_norm_sq(y: TorusWord):
    return y.dist_sq([0] * y.n)


def torus_norm(y: TorusWord) -> float:
    return math.sqrt(float(torus_norm_sq(y)))


def reliability_map(y: TorusWord) -> ReliabilityVector:
    """[y]: each coordinate becomes the convex mix of its two neighbors.

    For y_i in [c, c+1] the block carries 1 - t at c and t at (c+1) mod p,
    t = y_i - c; integers map to exact indicators.
    """
    p = y.p
    blocks = []
    for x in y.coords:
        c = math.floor(x)
        t = x - c
        block = [Fraction(0) if _is_rational(x) else 0.0] * p
        block[c % p] = 1 - t
        if t:
            block[(c + 1) % p] = t
        blocks.append(tuple(block))
    return ReliabilityVector(y.n, p, tuple(blocks))


def list_size_bound(r_star: float, epsilon: float) -> float:
    """S(R*, eps) = (1/R* + 1/sqrt(2 R*)) / (1 - sqrt(R*/(eps + (1-eps)R*)))."""
    r = float(r_star)
    e = float(epsilon)
    if not 0.0 < r < 1.0:
        raise ValueError(f"adjusted rate {r} outside (0, 1)")
    if not 0.0 < e < 1.0:
        raise ValueError(f"epsilon {e} outside (0, 1)")
    numer = 1.0 / r + 1.0 / math.sqrt(2.0 * r)
    denom = 1.0 - math.sqrt(r / (e + (1.0 - e) * r))
    return numer / denom


@dataclass(frozen=True)
class EuclidDecodeParams:
    epsilon: Fraction
    s_bound: float
    target_sq_radius: Fraction

    @staticmethod
    def make(code: BchCode, epsilon) -> "EuclidDecodeParams":
        eps = Fraction(epsilon)
        if not 0 < eps < 1:
            raise ValueError(f"epsilon {epsilon} outside (0, 1)")
        d = code.designed_d
        s = list_size_bound(float(code.rs.r_star), float(eps))
        return EuclidDecodeParams(eps, s, (1 - eps) * Fraction(d, 2))


def euclid_list_decode(code: BchCode, y: TorusWord, epsilon) -> DecodeResult:
    """Exactly the codewords c of the subfield subcode with
    ||y - c||^2 <= (1 - eps) * d / 2 in the torus norm."""
    if y.p != code.p:
        raise ValueError("received word modulus does not match the code")
    if y.n != code.n:
        raise ValueError(f"received word length {y.n} != n = {code.n}")
    if code.rs.k < 2:
        raise ValueError("underlying RS dimension must be at least 2")
    params = EuclidDecodeParams.make(code, epsilon)
    eps = params.epsilon
    r_star = code.rs.r_star
    # By the list-size identity, the inner-product threshold squared equals
    # n * (eps + (1 - eps) R*), an exact rational.
    thr_sq_norm = code.n * (eps + (1 - eps) * r_star)
    pi = reliability_map(y)
    kv = kv_decode(code.rs, pi, params.s_bound, threshold_sq_norm=thr_sq_norm)
    exact = y.exact
    pairs = []
    for word in kv.words:
        if any(s >= code.p for s in word):
            continue
        dsq = y.dist_sq(word)
        if exact:
            keep = dsq <= params.target_sq_radius
        else:
            keep = float(dsq) <= float(params.target_sq_radius) + DIST_TOL
        if keep:
            pairs.append((word, dsq))
    diag = {
        "s_bound": params.s_bound,
        "target_sq_radius": params.target_sq_radius,
        "kv": kv.diagnostics,
        "kv_list_size": len(kv),
    }
    return make_result(pairs, diag)
