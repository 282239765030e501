import numpy as np
import pytest

from bchlattice.gf import FieldElem, field_make
from bchlattice.poly import NEG_INF, BiPoly, Poly, binom_mod, poly_eval


def test_zero_polynomial_degree_sentinel(f5):
    z = Poly.zero(f5)
    assert z.degree == NEG_INF
    assert z.degree < 0
    assert Poly.const(f5, 3).degree == 0
    assert Poly.make(f5, (1, 0, 0)).degree == 0  # trailing zeros trimmed


def test_eval_examples(f2, f5):
    f = Poly.make(f2, (1, 1))  # X + 1
    assert f.eval(1) == 0
    g = Poly.make(f5, (0, 0, 1))  # X^2
    assert g.eval(3) == 4


def test_poly_eval_typed_surface(f5):
    f = Poly.make(f5, (1, 2))
    x = FieldElem(f5, 3)
    assert poly_eval(f, x).index == f5.add(1, f5.mul(2, 3))


def naive_eval(spec, coeffs, x):
    acc = 0
    for i, c in enumerate(coeffs):
        acc = spec.add(acc, spec.mul(c, spec.pow(x, i)))
    return acc


def test_eval_matches_naive_power_sum(f16):
    rng = np.random.default_rng(0)
    for _ in range(50):
        coeffs = [int(v) for v in rng.integers(0, 16, size=rng.integers(1, 9))]
        f = Poly.make(f16, coeffs)
        x = int(rng.integers(0, 16))
        assert f.eval(x) == naive_eval(f16, coeffs, x)


def test_eval_is_additive(f16):
    rng = np.random.default_rng(1)
    for _ in range(30):
        f = Poly.make(f16, rng.integers(0, 16, size=5))
        g = Poly.make(f16, rng.integers(0, 16, size=7))
        x = int(rng.integers(0, 16))
        assert (f + g).eval(x) == f16.add(f.eval(x), g.eval(x))


@pytest.mark.parametrize("p,r", [(2, 1), (5, 1), (2, 4), (3, 2), (2, 6)])
def test_mul_consistent_with_eval_everywhere(p, r):
    spec = field_make(p, r)
    rng = np.random.default_rng(p * 10 + r)
    for _ in range(10):
        f = Poly.make(spec, rng.integers(0, spec.q, size=4))
        g = Poly.make(spec, rng.integers(0, spec.q, size=3))
        h = f * g
        for x in range(spec.q):
            assert h.eval(x) == spec.mul(f.eval(x), g.eval(x))


def test_binom_mod_matches_math(f5):
    import math
    t = binom_mod(5, 12, 6)
    for n in range(13):
        for k in range(7):
            assert int(t[n, k]) == math.comb(n, k) % 5


def test_bipoly_wdeg_and_leading(f5):
    q = BiPoly(f5, {(0, 2): 1, (3, 0): 2, (1, 1): 3})
    assert q.wdeg(1) == 3
    assert q.wdeg(2) == 4
    # ties at wdeg(1): (3,0), (1,1)... wdeg 3 only for (3,0); at w=1,
    # (0,2)->2, (1,1)->2: leading overall is (3,0)
    assert q.leading_term(1) == (3, 0)
    assert BiPoly(f5, {}).wdeg(1) == NEG_INF


def test_bipoly_hasse_oracle(f5):
    # D^(a,b) Q at (x,y) equals the coefficient of z^a w^b in Q(x+z, y+w),
    # checked by expanding the shifted polynomial term by term.
    rng = np.random.default_rng(2)
    for _ in range(20):
        terms = {}
        for _ in range(6):
            terms[(int(rng.integers(0, 4)), int(rng.integers(0, 3)))] = \
                int(rng.integers(1, 5))
        q = BiPoly(f5, terms)
        x, y = int(rng.integers(0, 5)), int(rng.integers(0, 5))
        import math
        for a in range(3):
            for b in range(3):
                expect = 0
                for (i, j), c in q.terms.items():
                    if i < a or j < b:
                        continue
                    coef = (math.comb(i, a) * math.comb(j, b)) % 5
                    v = f5.mul(c, coef)
                    v = f5.mul(v, f5.pow(x, i - a))
                    v = f5.mul(v, f5.pow(y, j - b))
                    expect = f5.add(expect, v)
                assert q.hasse_eval(a, b, x, y) == expect


def test_bipoly_divmod_linear_y(f5):
    rng = np.random.default_rng(3)
    for _ in range(20):
        f = Poly.make(f5, rng.integers(0, 5, size=3))
        g = Poly.make(f5, rng.integers(0, 5, size=2))
        # Q = (Y - f) * (Y - g) expanded
        yminusf = BiPoly(f5, {(0, 1): 1}) + BiPoly(
            f5, {(i, 0): f5.neg(c) for i, c in enumerate(f.coeffs)})
        yminusg = BiPoly(f5, {(0, 1): 1}) + BiPoly(
            f5, {(i, 0): f5.neg(c) for i, c in enumerate(g.coeffs)})
        q = yminusf * yminusg
        quot, rem = q.divmod_linear_y(f)
        assert rem.is_zero()
        assert quot == yminusg
        assert q.eval_y_poly(f).is_zero()
        if f.coeffs != g.coeffs:
            _, rem2 = q.divmod_linear_y(Poly.make(f5, (1, 1, 1)))
            recon = quot * yminusf + BiPoly(
                f5, {(i, 0): c for i, c in enumerate(rem.coeffs)})
            assert recon == q
