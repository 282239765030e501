"""Optimality of the reliability mapping for squared distances up to n/4.

For delta in (0, 1/4] and beta the solution of beta(1-beta) = delta, the
block [beta] (weight 1-beta on residue 0, beta on residue 1) should be the
unique minimizer of <T, T> over

    B(delta) = {T in simplex(p) : <T, Delta> <= delta},

where Delta_alpha is the squared mod-p distance from alpha to beta. Two
independent numerical oracles (projected gradient, exhaustive two-point
supports) confirm the minimizer, and an analytic KKT certificate is checked
to 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

KKT_TOL = 1e-12


class OptimalityError(RuntimeError):
    """Oracle failed to converge or a certificate condition failed."""


def beta_from_delta(delta: float) -> float:
    """The unique beta in (0, 1/2] with beta * (1 - beta) = delta."""
    if not 0.0 < delta <= 0.25:
        raise ValueError(f"delta {delta} outside (0, 1/4]")
    return (1.0 - math.sqrt(1.0 - 4.0 * delta)) / 2.0


def delta_vector(p: int, beta: float) -> np.ndarray:
    """Delta_alpha = |alpha - beta|^2 with distance measured mod p."""
    if p < 2:
        raise ValueError("alphabet size must be at least 2")
    alphas = np.arange(p, dtype=float)
    d = np.abs(alphas - beta)
    d = np.minimum(d, p - d)
    return d * d


def bracket_vector(p: int, beta: float) -> np.ndarray:
    """[beta]: weight 1-beta at residue 0 and beta at residue 1."""
    t = np.zeros(p)
    t[0] = 1.0 - beta
    t[1 % p] = beta
    return t


@dataclass(frozen=True)
class FrequencyVector:
    p: int
    t: tuple[float, ...]

    def __post_init__(self):
        if len(self.t) != self.p:
            raise ValueError("frequency vector length mismatch")
        if any(v < -1e-12 for v in self.t):
            raise ValueError("negative frequency")
        if abs(sum(self.t) - 1.0) > 1e-9:
            raise ValueError("frequencies must sum to one")

    def inner(self, other: np.ndarray) -> float:
        return float(np.dot(np.array(self.t), other))


@dataclass(frozen=True)
class KktCertificate:
    delta: float
    p: int
    beta: float
    mu: float
    mu_alpha: tuple[float, ...]
    lambda_kkt: float
    max_residual: float


def _project_simplex(x: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex."""
    u = np.sort(x)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, len(x) + 1)
    cond = u - css / idx > 0
    rho = idx[cond][-1]
    theta = css[rho - 1] / rho
    return np.maximum(x - theta, 0.0)


def _project_feasible(x: np.ndarray, dvec: np.ndarray, delta: float) -> np.ndarray:
    """Projection onto simplex intersected with <T, Delta> <= delta.

    If the plain simplex projection violates the halfspace, bisect on the
    halfspace multiplier mu: proj_simplex(x - mu * Delta) has a monotone
    constraint value in mu.
    """
    t = _project_simplex(x)
    if float(np.dot(t, dvec)) <= delta + 1e-15:
        return t
    lo, hi = 0.0, 1.0
    while float(np.dot(_project_simplex(x - hi * dvec), dvec)) > delta:
        hi *= 2.0
        if hi > 1e12:
            raise OptimalityError("halfspace projection failed to bracket")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if float(np.dot(_project_simplex(x - mid * dvec), dvec)) > delta:
            lo = mid
        else:
            hi = mid
    return _project_simplex(x - hi * dvec)


def quadratic_min_oracle(delta: float, p: int, max_iters: int = 100_000,
                         feas_tol: float = 1e-10) -> FrequencyVector:
    """Numerically minimize <T, T> over B(delta) by projected gradient.

    Runs from p deterministic seeds (the projected unit vectors) with fixed
    step 0.1 / p and keeps the best endpoint. Raises on non-convergence.
    """
    beta = beta_from_delta(delta)
    dvec = delta_vector(p, beta)
    step = 0.1 / p
    best = None
    best_obj = math.inf
    for s in range(p):
        t = np.zeros(p)
        t[s] = 1.0
        t = _project_feasible(t, dvec, delta)
        converged = False
        for _ in range(max_iters):
            nxt = _project_feasible(t - step * 2.0 * t, dvec, delta)
            if float(np.max(np.abs(nxt - t))) < 1e-14:
                t = nxt
                converged = True
                break
            t = nxt
        if not converged:
            raise OptimalityError(
                f"projected gradient did not converge (delta={delta}, p={p}, seed={s})")
        obj = float(np.dot(t, t))
        if obj < best_obj:
            best_obj = obj
            best = t
    if float(np.dot(best, dvec)) > delta + feas_tol:
        raise OptimalityError("oracle endpoint violates the distance constraint")
    if float(best.sum()) > 1 + feas_tol or float(best.min()) < -feas_tol:
        raise OptimalityError("oracle endpoint violates the simplex")
    return FrequencyVector(p, tuple(np.maximum(best, 0.0)))


def two_support_min(delta: float, p: int) -> tuple[float, np.ndarray]:
    """Closed-form minimum of <T, T> over B(delta) restricted to supports of
    size at most two; independent cross-check of the gradient oracle."""
    beta = beta_from_delta(delta)
    dvec = delta_vector(p, beta)
    best_obj = math.inf
    best = None
    for a in range(p):
        if dvec[a] <= delta:
            t = np.zeros(p)
            t[a] = 1.0
            if 1.0 < best_obj:
                best_obj, best = 1.0, t
    for a in range(p):
        for b in range(a + 1, p):
            da, db = dvec[a], dvec[b]
            # T = t e_a + (1-t) e_b; constraint t(da - db) <= delta - db.
            lo, hi = 0.0, 1.0
            if da != db:
                bound = (delta - db) / (da - db)
                if da > db:
                    hi = min(hi, bound)
                else:
                    lo = max(lo, bound)
            elif db > delta:
                continue
            if lo > hi:
                continue
            t = min(max(0.5, lo), hi)
            vec = np.zeros(p)
            vec[a], vec[b] = t, 1.0 - t
            obj = t * t + (1.0 - t) ** 2
            if obj < best_obj:
                best_obj, best = obj, vec
    if best is None:
        raise OptimalityError("B(delta) met no one- or two-point support")
    return best_obj, best


def kkt_verify(delta: float, p: int) -> KktCertificate:
    """Analytic KKT certificate that [beta] minimizes <T, T> over B(delta).

    mu = 2, lambda = -2(beta^2 - beta + 1), and for alpha outside {0, 1}
    mu_alpha = 2(Delta_alpha - (beta^2 - beta + 1)), nonnegative because
    Delta_alpha >= 1 there. All conditions are checked to 1e-12.
    """
    beta = beta_from_delta(delta)
    dvec = delta_vector(p, beta)
    t = bracket_vector(p, beta)
    mu = 2.0
    lam = -2.0 * (beta**2 - beta + 1.0)
    mu_alpha = np.zeros(p)
    for a in range(2, p):
        mu_alpha[a] = 2.0 * (dvec[a] - (beta**2 - beta + 1.0))
    residuals = []
    for a in range(p):
        residuals.append(abs(2.0 * t[a] + mu * dvec[a] - mu_alpha[a] + lam))
    inner = float(np.dot(t, dvec))
    residuals.append(abs(inner - delta))          # active constraint
    residuals.append(abs(mu * (inner - delta)))   # complementary slackness
    for a in range(p):
        residuals.append(abs(mu_alpha[a] * t[a]))
    max_res = max(residuals)
    if max_res > KKT_TOL:
        raise OptimalityError(f"KKT residual {max_res} exceeds {KKT_TOL}")
    if mu < 0 or float(mu_alpha.min()) < -KKT_TOL:
        raise OptimalityError("KKT multiplier sign violated")
    return KktCertificate(delta, p, beta, mu, tuple(mu_alpha), lam, max_res)


def rate_bound_check(delta: float, n: int = 64, p: int = 2) -> float:
    """The guarantee value sqrt(n (1 - 2 delta)) at the all-beta word.

    Evaluates <[y], [c*]>/||[y]|| for [y] made of n copies of [beta] and
    checks it matches sqrt(n (1 - 2 delta)) to 1e-10; decoding beyond
    squared distance delta*n would therefore force R* < 1 - 2 delta.
    """
    beta = beta_from_delta(delta)
    t = bracket_vector(p, beta)
    inner_block = float(np.dot(t, t))
    value = n * inner_block / math.sqrt(n * inner_block)
    target = math.sqrt(n * (1.0 - 2.0 * delta))
    if abs(value - target) > 1e-10:
        raise OptimalityError(
            f"rate bound value {value} differs from {target}")
    if abs(inner_block - (1.0 - 2.0 * delta)) > 1e-12:
        raise OptimalityError("<[beta],[beta]> != 1 - 2 delta")
    return value


def verify_optimality(p: int, deltas) -> list[dict]:
    """Per-delta report: oracle minimizer vs [beta], KKT residuals, gaps."""
    out = []
    for delta in deltas:
        beta = beta_from_delta(delta)
        cert = kkt_verify(delta, p)
        oracle = quadratic_min_oracle(delta, p)
        target = bracket_vector(p, beta)
        gap_inf = float(np.max(np.abs(np.array(oracle.t) - target)))
        obj_gap = abs(oracle.inner(np.array(oracle.t))
                      - float(np.dot(target, target)))
        two_obj, _ = two_support_min(delta, p)
        out.append({
            "delta": delta,
            "p": p,
            "beta": beta,
            "minimizer": list(oracle.t),
            "minimizer_gap_inf": gap_inf,
            "objective_gap": obj_gap,
            "two_support_objective_gap":
                abs(two_obj - float(np.dot(target, target))),
            "max_kkt_violation": cert.max_residual,
            "rate_bound_value": rate_bound_check(delta, p=max(p, 2)),
        })
    return out
