import json
import math
from fractions import Fraction

import numpy as np
import pytest

from bchlattice.codes import LinearCode, tower_from_codes, tower_make
from bchlattice.gf import field_make
from bchlattice.harness import build_lattice
from bchlattice.lattice import (LatticeError, _det_bareiss, _det_modular,
                                determinant, enumerate_lattice,
                                hermite_report, lattice_from_json,
                                lattice_make, lattice_to_json, member,
                                min_distance, reconstruct, representative)


@pytest.fixture(scope="module")
def f3_tower():
    c0 = LinearCode(3, np.eye(2, dtype=np.int64))
    c1 = LinearCode(3, np.array([[1, 2]]))
    return tower_from_codes(3, [c0, c1, c1])


@pytest.fixture(scope="module")
def f3_tower_primed():
    c0 = LinearCode(3, np.eye(2, dtype=np.int64))
    c1 = LinearCode(3, np.array([[1, 2]]))
    return tower_from_codes(3, [c0, c1, c1], basis=np.array([[2, 1], [0, 1]]))


@pytest.fixture(scope="module")
def lat16(f16):
    return lattice_make(tower_make(f16, 1))


def test_representative_examples(f3_tower):
    assert representative(f3_tower, [0, 0], 2).tolist() == [0, 0]
    # b'_1 = (2,1) = 2*b_1 in C_1, so its lift is 2*(1,2) = (2,4), not (2,1)
    assert representative(f3_tower, [2, 1], 2).tolist() == [2, 4]
    assert representative(f3_tower, [1, 2], 1).tolist() == [1, 2]
    with pytest.raises(LatticeError):
        representative(f3_tower, [0, 1], 1)  # (0,1) not in C_1


def test_lattice_trivial_level_zero():
    c0 = LinearCode(2, np.eye(4, dtype=np.int64))
    lat = lattice_make(tower_from_codes(2, [c0]))
    assert lat.det_exact == 1
    assert lat.lambda1 == 1
    assert determinant(lat) == 1
    ok, (chain, z) = member(lat, [5, -3, 2, 0], 0)
    assert ok and chain == [] and z == (5, -3, 2, 0)
    rep = min_distance(lat)
    assert rep["lambda1"] == 1 and rep["certificate"] == "enumeration"


def test_lattice_f3_example(f3_tower, f3_tower_primed):
    lat = lattice_make(f3_tower)
    latp = lattice_make(f3_tower_primed)
    assert member(lat, [2, 4], 2)[0]
    assert not member(lat, [2, 1], 2)[0]
    assert member(latp, [2, 1], 2)[0]
    # the two lattices differ as sets, witnessed by (2,1)
    assert lat.det_exact == latp.det_exact == 9
    assert determinant(lat) == 9


def test_lattice_16_1(lat16):
    assert lat16.det_exact == 256
    assert determinant(lat16) == 256
    assert lat16.lambda1 == 2
    # scaled rows: exponent 0 on the C_1 prefix, 1 elsewhere
    assert sorted(lat16.level_exponents.tolist()) == [0] * 7 + [1] * 8


def test_member_sublattice_and_reduction(lat16):
    v = np.zeros(15, dtype=int)
    v[4] = 2
    assert member(lat16, v, 1)[0]  # 2 e_5 in p^ell Z^n
    w = np.zeros(15, dtype=int)
    w[4] = 1
    assert not member(lat16, w, 1)[0]  # weight-1 residue not in C_1


def test_member_witness_roundtrip(lat16):
    rng = np.random.default_rng(0)
    tower = lat16.tower
    for _ in range(1000):
        z = rng.integers(-3, 4, size=15)
        bits = rng.integers(0, 2, size=7)
        c = (bits @ tower.basis[:7]) % 2
        v = representative(tower, c, 1) + 2 * z
        ok, (chain, zz) = member(lat16, v, 1)
        assert ok
        assert chain[0] == tuple(int(x) for x in c)
        assert np.array_equal(reconstruct(lat16, chain, zz), v)


def test_member_random_reduction_property(lat16):
    rng = np.random.default_rng(1)
    for _ in range(1000):
        z = rng.integers(-2, 3, size=15)
        v = (z[:, None] * lat16.basis_int).sum(axis=0)
        ok, (chain, _) = member(lat16, v, 1)
        assert ok
        assert lat16.tower.codes[1].contains(np.array(v) % 2)


def test_determinant_routes_agree_random():
    rng = np.random.default_rng(2)
    for n in (3, 6, 10):
        for _ in range(5):
            m = rng.integers(-4, 5, size=(n, n))
            assert _det_bareiss(m) == _det_modular(m)
    m = np.diag([2, 3, 5]).astype(np.int64)
    assert _det_bareiss(m) == 30 == _det_modular(m)


def test_determinant_pivot_edge_cases():
    # leading zero pivot forces a row swap
    m = np.array([[0, 2, 1], [1, 0, 0], [3, 1, 4]])
    assert _det_bareiss(m) == _det_modular(m) == round(np.linalg.det(m))
    # singular matrix
    s = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert _det_bareiss(s) == 0 == _det_modular(s)
    # zero column
    z = np.array([[0, 1], [0, 3]])
    assert _det_bareiss(z) == 0 == _det_modular(z)


def test_min_distance_enumeration(lat16):
    rep = min_distance(lat16)
    assert rep["lambda1"] == 2
    assert rep["certificate"] == "enumeration"
    assert rep["witness_norm_sq"] == 4


def test_min_distance_sampling_label():
    lat = build_lattice(64, 1)
    rep = min_distance(lat, rng=np.random.default_rng(3), samples=2000)
    assert rep["lambda1"] == 2
    assert rep["certificate"] == "theorem-asserted, sampling-refuted-only"


def test_min_distance_requires_qualifying_tower(f3_tower):
    lat = lattice_make(f3_tower)
    with pytest.raises(LatticeError):
        min_distance(lat)


def test_basis_norm_bound(lat16):
    bound = (lat16.p - 1) * lat16.p**lat16.ell * math.sqrt(lat16.n)
    assert lat16.basis_max_norm() <= bound + 1e-9
    lat64 = build_lattice(64, 2)
    bound64 = 1 * 4 * math.sqrt(63)
    assert lat64.basis_max_norm() <= bound64 + 1e-9


def test_hermite_report_16(lat16):
    rep = hermite_report(lat16)
    assert rep["det"] == 256
    # det = 2^8 <= 16^(8/3) = 2^(32/3)
    assert rep["det_bound_holds"]
    assert rep["normalized_min_dist"] == pytest.approx(
        2 / 256 ** (1 / 15))
    assert rep["minkowski_like_bound"] == pytest.approx(
        math.sqrt(15 / math.log2(15)))


def test_hermite_report_trivial():
    c0 = LinearCode(2, np.eye(4, dtype=np.int64))
    lat = lattice_make(tower_from_codes(2, [c0]))
    rep = hermite_report(lat)
    assert rep["normalized_min_dist"] == 1.0


def test_enumerate_lattice_zn():
    basis = np.eye(3, dtype=np.int64)
    vs = enumerate_lattice(basis, [Fraction(0)] * 3, Fraction(1))
    assert len(vs) == 7  # origin and +-e_i
    vs0 = enumerate_lattice(basis, [Fraction(1), Fraction(2), Fraction(0)],
                            Fraction(0))
    assert len(vs0) == 1 and vs0[0].tolist() == [1, 2, 0]


def test_enumerate_lattice_dim_guard():
    basis = np.eye(17, dtype=np.int64)
    with pytest.raises(LatticeError):
        enumerate_lattice(basis, [0] * 17, 1)


def test_lattice_json_roundtrip(lat16):
    doc = lattice_to_json(lat16)
    lat2 = lattice_from_json(doc)
    assert lattice_to_json(lat2) == doc
    assert lat2.det_exact == lat16.det_exact
    assert np.array_equal(lat2.basis_int, lat16.basis_int)
    parsed = json.loads(doc)
    assert parsed["det"] == "256"
    assert parsed["tower_dims"] == [15, 7]


def test_lattice_json_roundtrip_f3(f3_tower):
    f9 = field_make(3, 1)
    tower = tower_from_codes(3, f3_tower.codes, basis=f3_tower.basis,
                             field_spec=f9)
    lat = lattice_make(tower)
    doc = lattice_to_json(lat)
    lat2 = lattice_from_json(doc)
    assert lattice_to_json(lat2) == doc
