"""Experiment orchestration: seeded trials, noise generation, JSON reports.

Noise is worst-case style: a uniformly random direction scaled to an exact
fraction of the guaranteed decoding radius, matching the theorems'
fixed-radius hypotheses rather than a stochastic channel. Per-trial RNG
streams derive from (seed, trial index) via numpy's SeedSequence/PCG64, so
reports are byte-identical for a given config and independent of execution
order.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .decoder import bch_lattice_decode, call_count_audit, make_bch_stack
from .gf import field_make
from .lattice import (ConstructionDLattice, hermite_report, lattice_make,
                      member)
from .codes import tower_make


@dataclass(frozen=True)
class ExperimentConfig:
    q: int
    ell: int
    epsilon: str          # decimal string, parsed exactly
    trials: int
    noise_fraction: float
    seed: int
    output_path: str | None = None

    def __post_init__(self):
        if not 0.0 < self.noise_fraction <= 1.0:
            raise ValueError("noise_fraction must be in (0, 1]")
        if self.trials < 1:
            raise ValueError("trials must be positive")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(trial,))))


def sample_noise(n: int, radius: float, rng: np.random.Generator) -> np.ndarray:
    """Uniform direction on the sphere, scaled to norm exactly `radius`."""
    if n < 1:
        raise ValueError("dimension must be positive")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if radius == 0:
        return np.zeros(n)
    while True:
        e = rng.standard_normal(n)
        norm = float(np.linalg.norm(e))
        if norm > 1e-12:
            break
    e = e * (radius / norm)
    if abs(float(np.linalg.norm(e)) - radius) > 1e-12 * max(1.0, radius):
        raise RuntimeError("noise normalization drifted (internal)")
    return e


def sample_lattice_vector(lat: ConstructionDLattice, coeff_bound: int,
                          rng: np.random.Generator) -> np.ndarray:
    """Random small integer combination of the basis rows, re-verified."""
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be at least 1")
    z = rng.integers(-coeff_bound, coeff_bound + 1, size=lat.n)
    v = (z[:, None] * lat.basis_int).sum(axis=0)
    ok, _ = member(lat, v, lat.ell)
    if not ok:
        raise RuntimeError("sampled combination failed membership (internal)")
    return v.astype(np.int64)


def build_lattice(q: int, ell: int) -> ConstructionDLattice:
    p = 2
    r = q.bit_length() - 1
    if 2**r != q:
        raise ValueError(f"q = {q} is not a power of two")
    spec = field_make(p, r)
    return lattice_make(tower_make(spec, ell))


def run_experiment(config: ExperimentConfig) -> dict:
    eps = Fraction(config.epsilon)
    lat = build_lattice(config.q, config.ell)
    n = lat.n
    radius = (lat.lambda1 or 1) * math.sqrt(float((1 - eps) / 2))
    noise_norm = config.noise_fraction * radius
    herm = hermite_report(lat)
    trials = []
    successes = 0
    stack = make_bch_stack(lat, eps)
    for t in range(config.trials):
        rng = trial_rng(config.seed, t)
        v = sample_lattice_vector(lat, 2, rng)
        e = sample_noise(n, noise_norm, rng)
        y = v.astype(float) + e
        t0 = time.perf_counter()
        res = bch_lattice_decode(lat, list(y), eps, stack=stack)
        wall = time.perf_counter() - t0
        planted = tuple(int(x) for x in v)
        recovered = planted in res.words
        if recovered:
            successes += 1
        dists = [math.sqrt(float(d)) for d in res.distances]
        for d in dists:
            if d > radius * (1 + 1e-9) + 1e-9:
                raise RuntimeError("reported vector outside the radius")
        trials.append({
            "trial": t,
            "recovered": recovered,
            "list_size": len(res.words),
            "distance": min(dists) if dists else None,
            "wall_time": wall,
        })
    report = {
        "config": asdict(config),
        "lattice": {
            "n": n,
            "det": str(lat.det_exact),
            "lambda1": lat.lambda1,
            "normalized_min_dist": herm["normalized_min_dist"],
            "basis_max_norm": lat.basis_max_norm(),
        },
        "radius": radius,
        "noise_norm": noise_norm,
        "trials": trials,
        "success_rate": successes / config.trials,
        "call_count_audit": call_count_audit(stack),
    }
    return report


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
