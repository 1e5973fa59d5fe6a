from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import isprime

from jacobsthal.cyclo import CycloValue, EmbeddingMismatch, make_ctx


@pytest.fixture(scope="module")
def ctx():
    return make_ctx(6, 7, k=2)


def test_primes_for_q7():
    # least primes l = 1 mod 6 above 4 * 7^2 = 196
    expect = [l for l in range(197, 400) if isprime(l) and l % 6 == 1][:2]
    ctx = make_ctx(6, 7)
    assert list(ctx.primes) == expect == [199, 211]


@pytest.mark.parametrize("n, q", [(6, 7), (8, 9), (12, 13), (48, 49)])
def test_root_has_exact_order(n, q):
    ctx = make_ctx(n, q, k=3)
    for ell, w in zip(ctx.primes, ctx.roots):
        assert ell > 4 * q * q and ell % n == 1
        orders = [k for k in range(1, n + 1) if pow(w, k, ell) == 1]
        assert orders[0] == n


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@settings(max_examples=100, deadline=None)
@given(a=rationals, b=rationals)
def test_rational_ring_homomorphism(ctx, a, b):
    A, B = ctx.from_rational(a), ctx.from_rational(b)
    assert A + B == ctx.from_rational(a + b)
    assert A * B == ctx.from_rational(a * b)
    assert A - B == ctx.from_rational(a - b)


def test_roots_of_unity_relations(ctx):
    z = [ctx.root_of_unity(t) for t in range(6)]
    total = ctx.zero()
    for v in z:
        total = total + v
    assert total.is_zero()
    assert z[1] * z[5] == 1
    assert z[2] * z[2] * z[2] == 1
    # zeta_6 satisfies x^2 - x + 1 = 0
    assert z[1] * z[1] - z[1] + 1 == 0


def test_zero_mask(ctx):
    v = ctx.root_of_unity(np.array([0, 1, 2]), zero=np.array([False, True, False]))
    assert v.equal(ctx.from_ints(np.array([1, 0, 0]))).tolist() == [True, True, False]
    assert v[1].is_zero()


def test_as_integer_and_strict_mismatch(ctx):
    assert ctx.from_rational(-5).as_integer(-10, 10) == -5
    assert ctx.from_rational(1, 3).as_integer(-10, 10) is None
    with pytest.raises(EmbeddingMismatch):
        ctx.from_rational(1, 3).as_integer(-10, 10, strict=True)
    forged = CycloValue(ctx, np.array([3, 4], dtype=np.int64), 3.0)
    with pytest.raises(EmbeddingMismatch):
        forged.as_integer(-10, 10, strict=True)


def test_integer_range_must_fit_prime(ctx):
    with pytest.raises(ValueError):
        ctx.from_rational(1).as_integer(-200, 200)


def test_division_by_embedding_prime_rejected(ctx):
    with pytest.raises(ZeroDivisionError):
        ctx.from_rational(1, 199)


def test_batched_sum_and_matmul(ctx):
    t = np.arange(12).reshape(2, 6)
    v = ctx.root_of_unity(t)
    rows = v.sum(axis=1)
    assert rows[0].is_zero() and rows[1].is_zero()
    ones = ctx.from_ints(np.ones(6, dtype=np.int64))
    prod = v @ ones
    assert prod.equal(rows).all()


def test_mirror_tracks_value(ctx):
    v = ctx.root_of_unity(1) * 2 + Fraction(1, 2)
    expect = 2 * np.exp(2j * np.pi / 6) + 0.5
    assert abs(complex(v.mirror) - expect) < 1e-12
    js = v.to_json(-10, 10)
    assert "residues" in js and len(js["mirror"]) == 2
    assert ctx.from_rational(4).to_json(-10, 10)["integer"] == 4
