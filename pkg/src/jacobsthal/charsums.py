"""Jacobi sums, Greene binomial coefficients and generalized Jacobsthal sums."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .characters import Character, CharacterGroup
from .cyclo import CycloValue

SUM_KINDS = ("phi_n", "psi_n", "gen_phi", "gen_psi")


def jacobi2(G: CharacterGroup, A: Character, B: Character) -> CycloValue:
    """J(A, B) = sum_x A(x) B(1 - x)."""
    x = G.field.elements
    return G.sum([(A, x), (B, G.field.sub(1, x))])


def jacobi_distribution(G: CharacterGroup, chars) -> CycloValue:
    """Vector over s in F_q of sum_{c_1+...+c_k = s} prod chi_i(c_i).

    Built by repeated additive convolution, O(k q^2).
    """
    F = G.field
    x = F.elements
    dist = G.eval(chars[0], x)
    diff = F.sub(x[:, None], x[None, :])  # diff[s, c] = s - c
    for chi in chars[1:]:
        dist = (dist[diff] * G.eval(chi, x)).sum(axis=1)
    return dist


def jacobi_a(G: CharacterGroup, a: int, *chars: Character) -> CycloValue:
    """J_a(chi_1, ..., chi_k): sum over k-tuples with c_1 + ... + c_k = a."""
    if len(chars) < 2:
        raise ValueError("J_a needs at least two characters")
    return jacobi_distribution(G, chars)[int(a)]


def jacobi_a_bruteforce(G: CharacterGroup, a: int, *chars: Character) -> CycloValue:
    """Enumerate (c_1, ..., c_{k-1}) and set c_k = a - sum; q^(k-1) terms."""
    F = G.field
    k = len(chars)
    grids = np.meshgrid(*([F.elements] * (k - 1)), indexing="ij")
    last = a
    for g in grids:
        last = F.sub(last, g)
    terms = [(chi, g) for chi, g in zip(chars[:-1], grids)] + [(chars[-1], last)]
    return G.sum(terms)


def binom(G: CharacterGroup, A: Character, B: Character) -> CycloValue:
    """Greene's (A choose B) = B(-1)/q * J(A, B-bar)."""
    return G.value(B, G.minus_one) * G.rational(1, G.q) * jacobi2(G, A, ~B)


def phi_n(G: CharacterGroup, n: int, a: int) -> CycloValue:
    """Jacobsthal sum sum_x phi(x) phi(x^n + a)."""
    return gen_phi(G, SumSpec("gen_phi", (n,), (a,)))


def psi_n(G: CharacterGroup, n: int, a: int) -> CycloValue:
    """Modified Jacobsthal sum sum_x phi(x^n + a)."""
    return gen_psi(G, SumSpec("gen_psi", (n,), (a,)))


@dataclass(frozen=True)
class SumSpec:
    kind: str
    exps: tuple[int, ...]
    args: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(int(l) for l in self.exps))
        object.__setattr__(self, "args", tuple(int(a) for a in self.args))
        if self.kind not in SUM_KINDS:
            raise ValueError(f"unknown sum kind {self.kind!r}")
        if not self.exps or len(self.exps) != len(self.args):
            raise ValueError("exps and args must be non-empty and of equal length")
        if any(l < 0 for l in self.exps):
            raise ValueError("exponents must be non-negative")
        if any(a == 0 for a in self.args):
            raise ValueError("arguments must be nonzero")
        if self.kind in ("phi_n", "psi_n") and len(self.exps) != 1:
            raise ValueError(f"{self.kind} takes a single exponent and argument")


def _check_args(G: CharacterGroup, spec: SumSpec):
    if any(not 0 < a < G.q for a in spec.args):
        raise ValueError(f"arguments must be nonzero encodings below q = {G.q}")


def _factors(G: CharacterGroup, spec: SumSpec):
    F = G.field
    x = F.elements
    return [(G.phi, F.add(F.pow(x, l), a)) for l, a in zip(spec.exps, spec.args)]


def gen_psi(G: CharacterGroup, spec: SumSpec) -> CycloValue:
    """sum_x prod_i phi(x^{l_i} + a_i), with x^0 = 1 for every x."""
    _check_args(G, spec)
    return G.sum(_factors(G, spec))


def gen_phi(G: CharacterGroup, spec: SumSpec) -> CycloValue:
    """sum_x phi(x) prod_i phi(x^{l_i} + a_i)."""
    _check_args(G, spec)
    return G.sum([(G.phi, G.field.elements)] + _factors(G, spec))


def evaluate(G: CharacterGroup, spec: SumSpec) -> CycloValue:
    if spec.kind in ("psi_n", "gen_psi"):
        return gen_psi(G, spec)
    return gen_phi(G, spec)


def int_value(G: CharacterGroup, v: CycloValue) -> int:
    """Recover a character sum known to be a rational integer in [-q, q]."""
    return v.as_integer(-G.q, G.q, strict=True)


def lemma_l11_transform(G: CharacterGroup, f) -> tuple[CycloValue, CycloValue]:
    """(sum_x phi(x) f(x), sum_x f(x^2) - sum_x f(x)) for a table or callable f."""
    x = G.field.elements
    table = _as_table(G, f)
    left = (G.eval(G.phi, x) * table).sum()
    right = table[G.field.mul(x, x)].sum() - table.sum()
    return left, right


def _as_table(G: CharacterGroup, f: CycloValue | Callable[[int], CycloValue]) -> CycloValue:
    if isinstance(f, CycloValue):
        if f.shape != (G.q,):
            raise ValueError("function table must have one entry per field element")
        return f
    vals = [f(int(x)) for x in G.field.elements]
    res = np.stack([v.res for v in vals], axis=1)
    mirror = np.array([complex(v.mirror) for v in vals])
    return CycloValue(G.ctx, res, mirror)


def power_lift_lhs(G: CharacterGroup, m: int, psi: Character, chi: Character, rho: Character, a) -> CycloValue:
    """sum_x psi(2 x^m) chi(x^m) rho(1 + a x^m), batched over a."""
    F = G.field
    a = np.asarray(a)
    u = F.pow(F.elements, m)[None, :]
    return G.prod([
        (psi, F.mul(F.element(2), u)),
        (chi, u),
        (rho, F.add(1, F.mul(a[..., None], u))),
    ]).sum(axis=-1)


def power_lift_rhs(G: CharacterGroup, m: int, psi: Character, chi: Character, rho: Character, a,
                   reading: str = "jacobi") -> CycloValue:
    """psi(-1) sum_{k<m} (psi chi chi_m^k)(1/a) J(psi, chi chi_m^k, rho), batched over a.

    ``reading="jacobi"`` takes J as the generalized Jacobi sum J_1 over triples;
    ``reading="single"`` takes the one-variable sum sum_x psi(2x) chi'(-x) rho(1-x)
    that the change of variables actually produces.
    """
    F = G.field
    a = np.asarray(a)
    chi_m = G.char_of_order(m)
    ainv = F.inv(a)
    x = F.elements
    total = None
    for k in range(m):
        twisted = chi * chi_m**k
        if reading == "jacobi":
            J = jacobi_a(G, 1, psi, twisted, rho)
        elif reading == "single":
            J = G.sum([(psi, F.mul(F.element(2), x)), (twisted, F.neg(x)), (rho, F.sub(1, x))])
        else:
            raise ValueError(f"unknown reading {reading!r}")
        term = G.eval(psi * twisted, ainv) * J
        total = term if total is None else total + term
    return total * G.value(psi, G.minus_one)


def jacobi3_table(G: CharacterGroup) -> CycloValue:
    """J_1(T^i, T^j, T^k) for all exponent triples, shape (n, n, n).

    Splitting the triple sum at c_1 + c_2 = s gives
    J_1(A, B, C) = J(A, B) J(AB, C) + [AB trivial] B(-1) (q - 1).
    """
    from .hypergeom import binom_table

    if "jacobi3" not in G._cache:
        n = G.n
        jac = binom_table(G).jacobi
        i = np.arange(n)[:, None, None]
        j = np.arange(n)[None, :, None]
        k = np.arange(n)[None, None, :]
        table = jac[i, j] * jac[(i + j) % n, k]
        sign = np.where(j % 2 == 0, 1, -1)  # T^j(-1) = (-1)^j
        corr = np.where((i + j) % n == 0, sign * n, 0) + 0 * k
        G._cache["jacobi3"] = table + G.ctx.from_ints(corr)
    return G._cache["jacobi3"]
