import itertools

import numpy as np
import pytest

from bchlattice.codes import bch_make
from bchlattice.gf import field_make


@pytest.fixture(scope="session")
def f2():
    return field_make(2, 1)


@pytest.fixture(scope="session")
def f3():
    return field_make(3, 1)


@pytest.fixture(scope="session")
def f5():
    return field_make(5, 1)


@pytest.fixture(scope="session")
def f16():
    return field_make(2, 4)


@pytest.fixture(scope="session")
def f64():
    return field_make(2, 6)


@pytest.fixture(scope="session")
def bch16_4(f16):
    return bch_make(f16, 4)


def all_codewords(code):
    """Every codeword of a small BCH code as sorted tuples."""
    gen = code.gen_matrix
    out = set()
    for bits in itertools.product(range(code.p), repeat=code.k_p):
        w = (np.array(bits) @ gen) % code.p
        out.add(tuple(int(x) for x in w))
    return sorted(out)


@pytest.fixture(scope="session")
def bch16_4_codewords(bch16_4):
    return all_codewords(bch16_4)
