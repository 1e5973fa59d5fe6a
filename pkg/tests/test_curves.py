import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jacobsthal import curves as cv
from jacobsthal.characters import HypothesisError
from jacobsthal.charsums import SumSpec, gen_phi, gen_psi, int_value
from jacobsthal.verify import group


def brute_points(p, coeffs):
    """Projective count over a prime field by enumerating (x, y) pairs."""
    affine = sum(1 for x in range(p) for y in range(p)
                 if (y * y - sum(c * x**i for i, c in enumerate(coeffs))) % p == 0)
    deg = len(coeffs) - 1
    return affine + (1 if deg % 2 else 2)


def test_r_of():
    assert cv.r_of(3) == 1 and cv.r_of(4) == 2 and cv.r_of(7) == 1


@pytest.mark.parametrize("coeffs, expect", [
    ([1, 0, 0, 1], 12),                # x^3 + 1
    ([6, 11 % 7, 6, 1], 8),            # (x+1)(x+2)(x+3)
    ([0, 6, 11 % 7, 6, 1], 8),         # x(x+1)(x+2)(x+3)
])
def test_q7_examples(G7, coeffs, expect):
    assert brute_points(7, coeffs) == expect
    assert cv.count_direct(G7, coeffs) == expect
    assert cv.count_charsum(G7, coeffs) == expect


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_three_counting_routes(data):
    p = data.draw(st.sampled_from([3, 5, 7, 11, 13]))
    G = group(p)
    deg = data.draw(st.integers(3, 6))
    coeffs = [data.draw(st.integers(0, p - 1)) for _ in range(deg)] + [data.draw(st.integers(1, p - 1))]
    direct = cv.count_direct(G, coeffs)
    assert direct == cv.count_charsum(G, coeffs)
    assert direct == cv.r_of(deg) + cv.affine_double_loop(G, coeffs)
    assert direct == brute_points(p, coeffs)


def test_extension_field_routes(G9):
    rng = random.Random(9)
    for _ in range(20):
        f = [rng.randrange(9) for _ in range(4)] + [rng.randrange(1, 9)]
        assert cv.count_direct(G9, f) == cv.count_charsum(G9, f)


def test_curve_spec_polys(G7):
    assert cv.CurveSpec("Em", m=1, a=1, b=2, c=3).poly(G7) == [6, 4, 6, 1]
    assert cv.CurveSpec("EmPrime", m=1, a=1, b=2, c=3).poly(G7) == [0, 6, 4, 6, 1]
    assert cv.CurveSpec("Trinomial", d=3, a=2, b=5).poly(G7) == [5, 0, 2, 1]
    with pytest.raises(ValueError):
        cv.CurveSpec("Em", m=1, a=1, b=1, c=3)


def _em_phi_offset(G, m, a, b, c):
    F = G.field
    return int(G.phi_int[F.mul(F.mul(a, b), c)])


@pytest.mark.parametrize("q_pe, m", [((7, 1), 1), ((13, 1), 1), ((13, 1), 2), ((13, 1), 3)])
def test_em_prime_closed_form_with_degree_r(q_pe, m):
    G = group(*q_pe)
    rng = random.Random(m)
    deg = 3 * m + 1
    for _ in range(25):
        a, b, c = rng.sample(range(1, G.q), 3)
        f = cv.CurveSpec("EmPrime", m=m, a=a, b=b, c=c).poly(G)
        closed = cv.count_EmPrime_hyp(G, m, a, b, c, r=cv.r_of(deg))
        assert closed == cv.count_direct(G, f)


@pytest.mark.parametrize("q_pe, m", [((7, 1), 1), ((13, 1), 2), ((13, 1), 3)])
def test_em_closed_form_is_off_by_phi_abc(q_pe, m):
    # the closed form for E_m misses the x = 0 contribution phi(abc)
    G = group(*q_pe)
    rng = random.Random(10 + m)
    for _ in range(25):
        a, b, c = rng.sample(range(1, G.q), 3)
        f = cv.CurveSpec("Em", m=m, a=a, b=b, c=c).poly(G)
        closed = cv.count_Em_hyp(G, m, a, b, c)
        assert closed + _em_phi_offset(G, m, a, b, c) == cv.count_direct(G, f)


def test_em_hypothesis(G7):
    with pytest.raises(HypothesisError):
        cv.count_Em_hyp(G7, 2, 1, 2, 3)


def test_solve_h_examples(G7, G13):
    assert cv.solve_h(G7, "t34", 1, 2, 3) == []
    F = G13.field
    disc = F.sub(F.mul(F.element(4), F.mul(6, 6)), F.mul(F.element(12), 11))
    roots = cv.solve_h(G13, "t34", 1, 2, 3)
    assert bool(roots) == F.is_square(disc)
    with pytest.raises(HypothesisError):
        cv.solve_h(group(5), "t34", 1, 2, 3)


def test_solve_h_roots_satisfy_quadratics(G13):
    F = G13.field
    three = F.element(3)
    for a, b, c in [(1, 2, 3), (1, 5, 7), (2, 3, 11), (4, 6, 9)]:
        s1 = F.add(F.add(a, b), c)
        s2 = F.add(F.add(F.mul(a, b), F.mul(b, c)), F.mul(c, a))
        for h in cv.solve_h(G13, "t34", a, b, c):
            val = F.add(F.add(F.mul(three, F.mul(h, h)), F.mul(F.element(2), F.mul(s1, h))), s2)
            assert val == 0 and h != 0
        bc = F.mul(b, c)
        lin = F.div(s2, bc)
        const = F.div(F.add(F.add(F.mul(a, b), F.mul(c, a)), F.mul(a, a)), bc)
        for h in cv.solve_h(G13, "t35", a, b, c):
            val = F.add(F.add(F.mul(three, F.mul(h, h)), F.mul(F.element(2), F.mul(lin, h))), const)
            assert val == 0


def test_shift_roots_many_agrees_with_scalar(G13):
    rng = random.Random(1)
    trip = np.array([rng.sample(range(1, 13), 3) for _ in range(60)])
    for kind in ("t34", "t35"):
        h, valid = cv.shift_roots_many(G13, kind, trip[:, 0], trip[:, 1], trip[:, 2])
        for row, hv, vv in zip(trip, h, valid):
            assert sorted(int(x) for x, ok in zip(hv, vv) if ok) == cv.solve_h(G13, kind, *map(int, row))


@pytest.mark.parametrize("p", [13, 19, 31])
def test_psi111_and_phi111(p):
    G = group(p)
    checked = 0
    for a in range(1, p):
        for b in range(a + 1, min(p, a + 6)):
            for c in range(b + 1, min(p, b + 4)):
                for h in cv.solve_h(G, "t34", a, b, c):
                    if cv.shift_data(G, a, b, c, h).dCoef:
                        direct = int_value(G, gen_psi(G, SumSpec("gen_psi", (1, 1, 1), (a, b, c))))
                        assert cv.psi111_hyp(G, a, b, c, h) == direct
                        checked += 1
                for h in cv.solve_h(G, "t35", a, b, c):
                    if cv.shift_data(G, a, b, c, h).fCoef:
                        direct = int_value(G, gen_phi(G, SumSpec("gen_phi", (1, 1, 1), (a, b, c))))
                        assert cv.phi111_hyp(G, a, b, c, h) == direct
                        checked += 1
    assert checked > 0


def test_zero_lead_is_a_hypothesis_error(G7):
    # every solvable triple at q = 7 has dCoef = 0
    for a, b, c in [(1, 2, 4), (3, 5, 6)]:
        for h in cv.solve_h(G7, "t34", a, b, c):
            assert cv.shift_data(G7, a, b, c, h).dCoef == 0
            with pytest.raises(HypothesisError):
                cv.psi111_hyp(G7, a, b, c, h)


@pytest.mark.parametrize("p, d", [(13, 3), (37, 3), (73, 4), (41, 5)])
def test_trinomial_closed_form(p, d):
    G = group(p)
    rng = random.Random(p)
    for _ in range(15):
        a, b = rng.randrange(1, p), rng.randrange(1, p)
        f = cv.CurveSpec("Trinomial", d=d, a=a, b=b).poly(G)
        assert cv.count_trinomial_hyp(G, d, a, b) == cv.affine_direct(G, f)


def test_trinomial_hypothesis(G7):
    with pytest.raises(HypothesisError):
        cv.count_trinomial_hyp(G7, 3, 1, 2)
    with pytest.raises(ValueError):
        cv.count_trinomial_hyp(group(13), 7, 1, 2)


def test_t3_single_character_holds(G13):
    G = G13
    rng = random.Random(5)
    for _ in range(20):
        psi, chi = G.T(rng.randrange(12)), G.T(rng.randrange(12))
        a, b = rng.randrange(1, 13), rng.randrange(1, 13)
        lhs = cv.t3_lhs(G, 2, psi, [chi], [a], [b])
        assert lhs == cv.t3_rhs(G, 2, psi, [chi], [a], [b], G.phi)
