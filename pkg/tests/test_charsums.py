import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jacobsthal import charsums as cs
from jacobsthal.charsums import SumSpec

from conftest import euler_phi


def _brute_gen(q, exps, args, with_phi):
    """Pure-integer oracle over a prime field."""
    total = 0
    for x in range(q):
        term = euler_phi(x, q) if with_phi else 1
        for l, a in zip(exps, args):
            term *= euler_phi(pow(x, l, q) + a, q)
        total += term
    return total


def test_jacobi2_small_values(G7):
    G = G7
    assert cs.jacobi2(G, G.eps, G.eps) == 5
    assert cs.jacobi2(G, G.phi, G.phi) == 1
    for j in range(1, 6):
        assert cs.jacobi2(G, G.T(j), G.eps) == -1


def test_jacobi_norm(G):
    # |J(A, B)|^2 = q when A, B and AB are all nontrivial
    for A, B in product(G.all(), repeat=2):
        if A.is_trivial or B.is_trivial or (A * B).is_trivial:
            continue
        assert cs.jacobi2(G, A, B) * cs.jacobi2(G, ~A, ~B) == G.q


def test_jacobi_a_examples(G7):
    G = G7
    assert cs.jacobi_a(G, 0, G.eps, G.eps) == 6
    assert cs.jacobi_a(G, 1, G.phi, G.phi) == cs.jacobi2(G, G.phi, G.phi)
    # J_2(phi, phi, phi) by a direct double loop with Euler's criterion
    expect = sum(euler_phi(c1, 7) * euler_phi(c2, 7) * euler_phi(2 - c1 - c2, 7)
                 for c1 in range(7) for c2 in range(7))
    assert cs.jacobi_a(G, 2, G.phi, G.phi, G.phi) == expect


@pytest.mark.parametrize("k", [2, 3, 4])
def test_distribution_matches_brute_force(G7, G9, k):
    rng = random.Random(k)
    for G in (G7, G9):
        for _ in range(4):
            chars = [G.T(rng.randrange(G.n)) for _ in range(k)]
            a = rng.randrange(G.q)
            assert cs.jacobi_a(G, a, *chars) == cs.jacobi_a_bruteforce(G, a, *chars)


def test_jacobi3_table_matches_convolution(G9):
    G = G9
    table = cs.jacobi3_table(G)
    for i, j, k in product(range(G.n), repeat=3):
        assert table[i, j, k] == cs.jacobi_a(G, 1, G.T(i), G.T(j), G.T(k))


def test_binom_phi_phi_q7(G7):
    G = G7
    # defining sum: phi(-1)/7 * sum_x phi(x) phi(1 - x)
    direct = Fraction(euler_phi(-1, 7) * sum(euler_phi(x, 7) * euler_phi(1 - x, 7) for x in range(7)), 7)
    assert direct == Fraction(-1, 7)
    assert cs.binom(G, G.phi, G.phi) == G.rational(-1, 7)


def test_binom_matches_defining_sum(G7):
    G, F = G7, G7.field
    A, B = G.T(1), G.T(2)
    total = G.ctx.zero()
    for x in range(7):
        total = total + G.value(A, x) * G.value(~B, F.sub(1, x))
    assert cs.binom(G, A, B) == total * G.value(B, G.minus_one) * G.rational(1, 7)


def test_classical_jacobsthal_values(G):
    for a in range(1, G.q):
        assert cs.int_value(G, cs.psi_n(G, 1, a)) == 0
        assert cs.int_value(G, cs.phi_n(G, 1, a)) == -1


def test_generalized_examples_q7(G7):
    assert cs.int_value(G7, cs.gen_psi(G7, SumSpec("gen_psi", (1, 1, 1), (1, 2, 3)))) == 0
    assert cs.int_value(G7, cs.gen_phi(G7, SumSpec("gen_phi", (1, 1, 1), (1, 2, 3)))) == -1
    assert cs.int_value(G7, cs.phi_n(G7, 2, 1)) == _brute_gen(7, (2,), (1,), True)


def test_transform_with_shifted_quadratic(G):
    # f(x) = phi(x + a) turns the transform into phi_1(a) = psi_2(a) - psi_1(a)
    for a in range(1, G.q):
        lhs = cs.int_value(G, cs.phi_n(G, 1, a))
        assert lhs == cs.int_value(G, cs.psi_n(G, 2, a)) - cs.int_value(G, cs.psi_n(G, 1, a))


@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_gen_sums_match_integer_oracle(data):
    from jacobsthal.verify import group

    p = data.draw(st.sampled_from([5, 7, 11, 13]))
    G = group(p)
    r = data.draw(st.integers(1, 3))
    exps = tuple(data.draw(st.integers(0, 4)) for _ in range(r))
    args = tuple(data.draw(st.integers(1, p - 1)) for _ in range(r))
    for kind, with_phi in (("gen_psi", False), ("gen_phi", True)):
        v = cs.int_value(G, cs.evaluate(G, SumSpec(kind, exps, args)))
        assert v == _brute_gen(p, exps, args, with_phi)
        assert abs(v) <= p


def test_equal_entries_count(G13):
    F = G13.field
    for l, a in [(1, 3), (2, 1), (3, 5), (4, 12)]:
        roots = int((F.pow(F.elements, l) == F.neg(a)).sum())
        v = cs.int_value(G13, cs.gen_psi(G13, SumSpec("gen_psi", (l, l), (a, a))))
        assert v == G13.q - roots


@pytest.mark.parametrize("kind, exps, args", [
    ("bogus", (1,), (1,)), ("gen_psi", (1, 2), (1,)), ("gen_psi", (-1,), (1,)),
    ("gen_psi", (1,), (0,)), ("psi_n", (1, 1), (1, 2)), ("gen_psi", (), ()),
])
def test_sumspec_validation(kind, exps, args):
    with pytest.raises(ValueError):
        SumSpec(kind, exps, args)


def test_argument_out_of_field(G7):
    with pytest.raises(ValueError):
        cs.gen_psi(G7, SumSpec("gen_psi", (1,), (9,)))


def test_transform_constant_and_character(G13):
    G = G13
    left, right = cs.lemma_l11_transform(G, lambda x: G.rational(3))
    assert left.is_zero() and right.is_zero()
    chi = G.T(1)  # chi^2 nontrivial
    left, right = cs.lemma_l11_transform(G, lambda x: G.value(chi, x))
    assert left.is_zero() and right.is_zero()


def test_transform_random_table_q13(G13):
    from jacobsthal.verify import _random_table

    left, right = cs.lemma_l11_transform(G13, _random_table(G13, 42))
    assert left == right
    with pytest.raises(ValueError):
        cs.lemma_l11_transform(G13, G13.ctx.from_ints(np.zeros(5, dtype=np.int64)))


def test_power_lift_one_variable_reading(G13):
    # the change of variables gives the one-variable sum exactly
    G = G13
    rng = random.Random(3)
    for _ in range(20):
        m = rng.choice([2, 4])
        chars = [G.T(rng.randrange(G.n)) for _ in range(3)]
        a = np.array([rng.randrange(1, G.q)])
        lhs = cs.power_lift_lhs(G, m, *chars, a)[0]
        assert lhs == cs.power_lift_rhs(G, m, *chars, a, reading="single")[0]
