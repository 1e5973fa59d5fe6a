from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jacobsthal.field import FieldError, build_field, least_irreducible, odd_prime_powers

FIELDS = [(3, 1), (7, 1), (3, 2), (5, 2), (3, 3), (7, 2)]


@pytest.fixture(scope="module", params=FIELDS, ids=lambda pe: f"{pe[0]}^{pe[1]}")
def F(request):
    return build_field(*request.param)


def test_prime_field_generator_is_least_primitive_root():
    F = build_field(7, 1)
    assert F.g == 3
    # 2 has order 3 mod 7, so it is not a generator
    assert pow(2, 3, 7) == 1


def test_f9_modulus_is_least_irreducible_quadratic():
    # monic t^2 + a t + b over F_3 is irreducible iff it has no root
    candidates = [(b, a) for b, a in product(range(3), repeat=2)
                  if all((x * x + a * x + b) % 3 for x in range(3))]
    assert least_irreducible(3, 2) == candidates[0] + (1,)
    assert build_field(3, 2).spec.modulus == (1, 0, 1)


@pytest.mark.parametrize("p, e", [(2, 1), (9, 1), (1, 1), (3, 0)])
def test_bad_parameters(p, e):
    with pytest.raises(FieldError):
        build_field(p, e)


def test_ceiling_from_environment(monkeypatch):
    monkeypatch.setenv("JACOBSTHAL_MAX_Q", "20")
    with pytest.raises(FieldError):
        build_field(23, 1)
    assert build_field(19, 1).q == 19


def test_generator_has_full_order(F):
    seen = {int(F.pow(F.g, k)) for k in range(F.n)}
    assert seen == set(range(1, F.q))
    assert F.pow(F.g, F.n) == 1


def test_dlog_inverts_exp(F):
    for x in range(1, F.q):
        assert F.pow(F.g, F.dlog(x)) == x
    assert F.dlog(1) == 0 and F.dlog(F.g) == 1
    with pytest.raises(ValueError):
        F.dlog(0)


def test_encoding_round_trip(F):
    for x in range(F.q):
        c = F.coeffs(x)
        assert len(c) == F.e and all(0 <= ci < F.p for ci in c)
        assert F.from_coeffs(c) == x


def test_addition_is_coefficientwise(F):
    for x, y in [(1, F.q - 1), (F.q // 2, F.q // 3)]:
        expect = [(a + b) % F.p for a, b in zip(F.coeffs(x), F.coeffs(y))]
        assert F.coeffs(F.add(x, y)) == expect


@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_field_axioms(F, data):
    x, y, z = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.add(x, F.neg(x)) == 0
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
    assert F.sub(F.add(x, y), y) == x
    if x:
        assert F.mul(x, F.inv(x)) == 1
        assert F.div(y, x) == F.mul(y, F.inv(x))
    if x and y:
        assert F.dlog(F.mul(x, y)) == (F.dlog(x) + F.dlog(y)) % F.n


@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_pow_matches_repeated_multiplication(F, data):
    x = data.draw(st.integers(0, F.q - 1))
    k = data.draw(st.integers(0, 12))
    acc = 1
    for _ in range(k):
        acc = F.mul(acc, x)
    assert F.pow(x, k) == acc


def test_inverse_of_zero_raises(F):
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_sqrt_against_brute_force(F):
    squares = {}
    for y in range(F.q):
        squares.setdefault(int(F.mul(y, y)), set()).add(y)
    for x in range(F.q):
        roots = F.sqrt(x)
        assert set(roots) == squares.get(x, set())
        assert F.is_square(x) == (x in squares)


def test_vectorized_ops_match_scalar(F):
    xs = np.arange(F.q)
    ys = xs[::-1].copy()
    vm = F.mul(xs, ys)
    assert all(vm[i] == F.mul(int(xs[i]), int(ys[i])) for i in range(F.q))


def test_element_reduces_integer_literals(F):
    assert F.element(F.p) == 0
    assert F.element(-1) == F.neg(1)
    assert F.element(2) == F.add(1, 1)


def test_poly_eval_horner(F):
    coeffs = [1, 2, 0, 1]  # 1 + 2x + x^3
    for x in range(F.q):
        x3 = F.mul(x, F.mul(x, x))
        expect = F.add(F.add(1, F.mul(F.element(2), x)), x3)
        assert F.poly_eval([F.element(c) for c in coeffs], x) == expect


def test_odd_prime_powers():
    assert odd_prime_powers(5, 30) == [(5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (17, 1), (19, 1),
                                       (23, 1), (5, 2), (3, 3), (29, 1)]
    assert odd_prime_powers(30, 20) == []
