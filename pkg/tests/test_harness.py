import json
import math

import numpy as np
import pytest

from bchlattice.harness import (ExperimentConfig, build_lattice,
                                report_to_json, run_experiment, sample_noise,
                                sample_lattice_vector, trial_rng)
from bchlattice.lattice import member


def test_sample_noise_properties():
    rng = trial_rng(5, 0)
    e = sample_noise(10, 3.5, rng)
    assert np.linalg.norm(e) == pytest.approx(3.5, abs=1e-12)
    assert sample_noise(4, 0.0, rng).tolist() == [0.0] * 4
    with pytest.raises(ValueError):
        sample_noise(0, 1.0, rng)
    e1 = sample_noise(8, 1.0, trial_rng(7, 3))
    e2 = sample_noise(8, 1.0, trial_rng(7, 3))
    assert np.array_equal(e1, e2)
    e3 = sample_noise(8, 1.0, trial_rng(7, 4))
    assert not np.array_equal(e1, e3)


def test_sample_lattice_vector(f16):
    lat = build_lattice(16, 1)
    rng = trial_rng(1, 0)
    for _ in range(20):
        v = sample_lattice_vector(lat, 2, rng)
        ok, _ = member(lat, v, lat.ell)
        assert ok
    row = lat.basis_int[0]
    bound = (lat.p - 1) * lat.p**lat.ell * math.sqrt(lat.n)
    assert np.linalg.norm(row.astype(float)) <= bound + 1e-9


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(q=16, ell=1, epsilon="0.25", trials=0,
                         noise_fraction=0.9, seed=1)
    with pytest.raises(ValueError):
        ExperimentConfig(q=16, ell=1, epsilon="0.25", trials=5,
                         noise_fraction=1.5, seed=1)


def test_experiment_small_and_deterministic():
    config = ExperimentConfig(q=16, ell=1, epsilon="0.25", trials=5,
                              noise_fraction=0.9, seed=11)
    rep1 = run_experiment(config)
    rep2 = run_experiment(config)
    assert rep1["success_rate"] == 1.0
    assert rep1["lattice"]["det"] == "256"
    for t in rep1["trials"]:
        assert t["recovered"]
        assert t["distance"] <= rep1["radius"] + 1e-9
    # wall_time varies between runs; everything else must be identical
    strip = lambda r: json.loads(report_to_json(r).replace(" ", ""))
    a, b = strip(rep1), strip(rep2)
    for t in a["trials"] + b["trials"]:
        t.pop("wall_time")
    assert a == b


def test_experiment_report_echoes_config():
    config = ExperimentConfig(q=16, ell=1, epsilon="0.5", trials=2,
                              noise_fraction=0.5, seed=3)
    rep = run_experiment(config)
    assert rep["config"]["q"] == 16
    assert rep["config"]["epsilon"] == "0.5"
    assert rep["config"]["seed"] == 3
    assert rep["call_count_audit"]["consistent"]
