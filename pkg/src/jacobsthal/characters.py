"""Multiplicative characters of F_q as powers of a fixed generator T.

T is pinned by T(g) = zeta_{q-1} for the field generator g, so a character is
just its exponent j.  Every character vanishes at 0, the trivial one included.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from .cyclo import CycloValue, EmbeddingCtx, make_ctx
from .field import FieldTable, build_field


class HypothesisError(ValueError):
    """A statement's hypothesis (usually a congruence on q) is not met."""


@dataclass(frozen=True, order=True)
class Character:
    """The character T^j on a field with q - 1 = n."""

    j: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "j", self.j % self.n)

    def __mul__(self, other: Character) -> Character:
        return Character(self.j + other.j, self.n)

    def __pow__(self, k: int) -> Character:
        return Character(self.j * k, self.n)

    def inverse(self) -> Character:
        return Character(-self.j, self.n)

    __invert__ = inverse

    @property
    def order(self) -> int:
        return self.n // gcd(self.j, self.n)

    @property
    def is_trivial(self) -> bool:
        return self.j == 0

    def __repr__(self):
        return f"T^{self.j}"


class CharacterGroup:
    """A field together with its embedding context and the character group.

    This is the object every sum, series and checker takes first.
    """

    def __init__(self, field: FieldTable, ctx: EmbeddingCtx):
        self.field = field
        self.ctx = ctx
        self.n = field.n
        self.q = field.q
        self._cache: dict = {}

    @classmethod
    def build(cls, p: int, e: int = 1, k: int = 2) -> CharacterGroup:
        field = build_field(p, e)
        return cls(field, make_ctx(field.n, field.q, k))

    def __repr__(self):
        return f"CharacterGroup(q={self.q}, p={self.field.p}, e={self.field.e})"

    # characters -------------------------------------------------------------
    def T(self, j: int = 1) -> Character:
        return Character(j, self.n)

    @property
    def eps(self) -> Character:
        return Character(0, self.n)

    @property
    def phi(self) -> Character:
        return Character(self.n // 2, self.n)

    def all(self) -> list[Character]:
        return [Character(j, self.n) for j in range(self.n)]

    def char_of_order(self, order: int) -> Character:
        if order < 1 or self.n % order:
            raise HypothesisError(f"no character of order {order} when q = {self.q}")
        return Character(self.n // order, self.n)

    # evaluation -------------------------------------------------------------
    def eval(self, chi: Character, x) -> CycloValue:
        return self.prod([(chi, x)])

    def prod(self, terms) -> CycloValue:
        """Product of characters chi_t(x_t), elementwise over broadcast arrays x_t.

        The product is zero wherever any argument is zero.
        """
        log = self.field.log
        expo = 0
        zero = False
        for chi, x in terms:
            lx = log[x]
            expo = expo + chi.j * lx
            zero = zero | (lx < 0)
        return self.ctx.root_of_unity(expo, zero=zero)

    def sum(self, terms) -> CycloValue:
        """Sum over all points of :meth:`prod`."""
        return self.prod(terms).sum()

    def value(self, chi: Character, x: int) -> CycloValue:
        return self.eval(chi, int(x))

    def rational(self, num, den=1) -> CycloValue:
        return self.ctx.from_rational(num, den)

    @cached_property
    def phi_int(self) -> np.ndarray:
        """Quadratic character as a plain integer table over F_q (0 at 0)."""
        log = self.field.log
        return np.where(log < 0, 0, np.where(log % 2, -1, 1))

    @cached_property
    def minus_one(self) -> int:
        return self.field.neg(1)


def delta_char(chi: Character) -> int:
    return int(chi.is_trivial)


def delta_elem(x: int) -> int:
    return int(x == 0)


def orthogonality_sum(G: CharacterGroup, x: int, n: int) -> int:
    """sum_{k<n} chi_n^k(x) counted as the number of y with y^n = x.

    Returns 1 at x = 0 (the y = 0 solution), n on nonzero n-th powers, 0 otherwise.
    """
    if n < 1 or G.n % n:
        raise HypothesisError(f"{n} does not divide q - 1 = {G.n}")
    if x == 0:
        return 1
    chi = G.char_of_order(n)
    total = sum((G.eval(chi**k, x) for k in range(n)), G.ctx.zero())
    return total.as_integer(0, n, strict=True)
