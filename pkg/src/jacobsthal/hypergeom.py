"""Greene's hypergeometric series over F_q.

``f21_integral`` evaluates the defining character sum directly; the binomial
forms go through a cached table of all (T^i choose T^j) so one series value
costs q - 1 products.
"""
from __future__ import annotations

import numpy as np

from .characters import Character, CharacterGroup
from .cyclo import CycloValue


class BinomTable:
    """All Greene binomial coefficients binom(T^i, T^j) for one field."""

    def __init__(self, G: CharacterGroup):
        F, ctx, n = G.field, G.ctx, G.n
        xs = np.arange(2, G.q) if F.e == 1 else np.array(
            [x for x in range(G.q) if x not in (0, 1)], dtype=np.int64)
        xs = xs[F.sub(1, xs) != 0]
        lx = F.log[xs]
        l1x = F.log[F.sub(1, xs)]
        i = np.arange(n)[:, None]
        m = np.arange(n)[None, :]
        res = np.zeros((ctx.k, n, n), dtype=ctx.dtype)
        mirror = np.zeros((n, n), dtype=np.complex128)
        # jac[i, m] = J(T^i, T^m)
        for a, b in zip(lx, l1x):
            expo = (i * a + m * b) % n
            res += ctx.powtab[:, expo]
            mirror += ctx.zeta[expo]
            res %= ctx.mod(2)
        jac = CycloValue(ctx, res, mirror)
        self.jacobi = jac
        j = np.arange(n)
        # binom[i, j] = T^j(-1)/q * J(T^i, T^-j)
        sign = ctx.root_of_unity(j * (n // 2))
        self.values = jac[:, (-j) % n] * sign * G.rational(1, G.q)
        self.n = n

    def __getitem__(self, idx):
        return self.values[idx]

    def __call__(self, A: Character, B: Character) -> CycloValue:
        return self.values[A.j, B.j]


def binom_table(G: CharacterGroup) -> BinomTable:
    if "binom" not in G._cache:
        G._cache["binom"] = BinomTable(G)
    return G._cache["binom"]


def series_coeffs(G: CharacterGroup, uppers, lowers) -> CycloValue:
    """c[t] = binom(A0 T^t, T^t) prod_i binom(A_i T^t, B_i T^t) for t in [0, q-1)."""
    if len(uppers) != len(lowers) + 1 or not lowers:
        raise ValueError("need A_0..A_n and B_1..B_n with n >= 1")
    tab = binom_table(G)
    t = np.arange(G.n)
    n = G.n
    c = tab[(uppers[0].j + t) % n, t]
    for A, B in zip(uppers[1:], lowers):
        c = c * tab[(A.j + t) % n, (B.j + t) % n]
    return c


def _chi_matrix(G: CharacterGroup, x) -> CycloValue:
    """M[x, t] = T^t(x) for an array of arguments."""
    lx = G.field.log[np.asarray(x)]
    expo = lx[..., None] * np.arange(G.n)
    return G.ctx.root_of_unity(expo, zero=(lx < 0)[..., None])


def fpq_many(G: CharacterGroup, uppers, lowers, xs) -> CycloValue:
    """Batched n+1Fn over an array of arguments."""
    c = series_coeffs(G, uppers, lowers)
    return (_chi_matrix(G, xs) @ c) * G.rational(G.q, G.n)


def fpq_table(G: CharacterGroup, uppers, lowers) -> CycloValue:
    """The series at every argument in F_q, cached per parameter list."""
    key = ("fpq", tuple(A.j for A in uppers), tuple(B.j for B in lowers))
    if key not in G._cache:
        G._cache[key] = fpq_many(G, uppers, lowers, G.field.elements)
    return G._cache[key]


def fpq(G: CharacterGroup, uppers, lowers, x: int) -> CycloValue:
    """Greene's n+1Fn(A_0..A_n; B_1..B_n | x) by the binomial-coefficient sum."""
    return fpq_many(G, uppers, lowers, np.array([int(x)]))[0]


def f21_binomial(G: CharacterGroup, A: Character, B: Character, C: Character, x: int) -> CycloValue:
    return fpq(G, [A, B], [C], x)


def fpq_direct(G: CharacterGroup, uppers, lowers, x: int) -> CycloValue:
    """Same series with every binomial recomputed from a fresh Jacobi sum (no table)."""
    from .charsums import binom

    total = G.ctx.zero()
    for chi in G.all():
        term = binom(G, uppers[0] * chi, chi)
        for A, B in zip(uppers[1:], lowers):
            term = term * binom(G, A * chi, B * chi)
        total = total + term * G.value(chi, x)
    return total * G.rational(G.q, G.n)


def f21_integral_many(G: CharacterGroup, A: Character, B: Character, C: Character, xs) -> CycloValue:
    """eps(x) BC(-1)/q sum_y B(y) (B-bar C)(1 - y) A-bar(1 - x y), batched over x."""
    F = G.field
    xs = np.asarray(xs)
    y = F.elements
    X, Y = xs[:, None], y[None, :]
    inner = G.prod([
        (B, Y),
        (~B * C, F.sub(1, Y)),
        (~A, F.sub(1, F.mul(X, Y))),
    ]).sum(axis=1)
    pref = G.value(B * C, G.minus_one) * G.rational(1, G.q)
    return inner * G.eval(G.eps, xs) * pref


def f21_integral(G: CharacterGroup, A: Character, B: Character, C: Character, x: int) -> CycloValue:
    return f21_integral_many(G, A, B, C, np.array([int(x)]))[0]


def shift_expansion(G: CharacterGroup, A: Character, a: int, xs) -> CycloValue:
    """delta(x) + q A(a)/(q-1) sum_chi binom(A, chi) chi(x/a), batched over x."""
    F = G.field
    xs = np.asarray(xs)
    tab = binom_table(G)
    series = _chi_matrix(G, F.div(xs, a)) @ tab[A.j, np.arange(G.n)]
    delta = G.ctx.from_ints((xs == 0).astype(np.int64))
    return series * G.value(A, a) * G.rational(G.q, G.n) + delta
