"""Fully materialized odd-characteristic finite fields F_q, q = p^e.

Elements are carried as integer encodings ``c0 + c1*p + ... + c_{e-1}*p^(e-1)``
of their coefficient vectors modulo the field polynomial.  Every table is
built once; arithmetic is table lookup and works elementwise on numpy arrays.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

DEFAULT_CEILING = 10**5
CEILING_ENV = "JACOBSTHAL_MAX_Q"


class FieldError(ValueError):
    """Invalid field parameters."""


def field_ceiling() -> int:
    raw = os.environ.get(CEILING_ENV)
    return int(raw) if raw else DEFAULT_CEILING


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    modulus: tuple[int, ...]  # low degree first, monic, length e + 1

    @property
    def q(self) -> int:
        return self.p**self.e


def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree e over F_p.

    Coefficient tuples (c0, ..., c_{e-1}) are compared low degree first.
    For e = 1 this is the polynomial ``x``.
    """
    if e == 1:
        return (0, 1)
    for low in product(range(p), repeat=e):
        coeffs = low + (1,)
        if coeffs[0] == 0:
            continue
        if gf_irreducible_p([ZZ(c) for c in reversed(coeffs)], p, ZZ):
            return coeffs
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")  # pragma: no cover


def _polymulmod(a: list[int], b: list[int], modulus: tuple[int, ...], p: int) -> list[int]:
    e = len(modulus) - 1
    prod_ = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod_[i + j] += ai * bj
    for k in range(2 * e - 2, e - 1, -1):
        c = prod_[k] % p
        if c:
            for i in range(e + 1):
                prod_[k - e + i] -= c * modulus[i]
    return [c % p for c in prod_[:e]]


def _polypow(a: list[int], k: int, modulus: tuple[int, ...], p: int) -> list[int]:
    e = len(modulus) - 1
    result = [1] + [0] * (e - 1)
    base = a
    while k:
        if k & 1:
            result = _polymulmod(result, base, modulus, p)
        base = _polymulmod(base, base, modulus, p)
        k >>= 1
    return result


@dataclass(frozen=True, eq=False)
class FieldTable:
    """F_q with its generator, discrete-log table and vectorized arithmetic.

    ``exp[k]`` is the encoding of g^k and ``log[x]`` its inverse on nonzero x
    (``log[0] == -1``).  All operations accept Python ints or integer arrays.
    """

    spec: FieldSpec
    g: int
    exp: np.ndarray
    log: np.ndarray
    digits: np.ndarray = dc_field(repr=False)

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def e(self) -> int:
        return self.spec.e

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def n(self) -> int:
        """Order of the multiplicative group."""
        return self.spec.q - 1

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.q)

    @property
    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q)

    @cached_property
    def _place(self) -> np.ndarray:
        return self.p ** np.arange(self.e)

    @cached_property
    def _neg(self) -> np.ndarray:
        return ((-self.digits) % self.p) @ self._place

    @cached_property
    def squares(self) -> np.ndarray:
        """``squares[x]`` = number of y with y*y == x (1, 2 or 0)."""
        count = np.zeros(self.q, dtype=np.int64)
        for y in range(self.q):
            count[self.mul(y, y)] += 1
        return count

    def coeffs(self, x: int) -> list[int]:
        return [int(c) for c in self.digits[x]]

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs) + [0] * (self.e - len(coeffs))
        return int(sum((c % self.p) * self.p**i for i, c in enumerate(coeffs)))

    def element(self, x: int) -> int:
        """Reduce an integer literal into F_q (prime-field embedding for e > 1)."""
        if self.e == 1:
            return x % self.p
        return self.from_coeffs([x % self.p])

    @staticmethod
    def _out(value, *inputs):
        if all(np.ndim(v) == 0 for v in inputs):
            return int(value)
        return value

    def add(self, x, y):
        if self.e == 1:
            return self._out((np.asarray(x) + y) % self.p, x, y)
        s = (self.digits[x] + self.digits[y]) % self.p
        return self._out(s @ self._place, x, y)

    def neg(self, x):
        return self._out(self._neg[x], x)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        lx = self.log[x]
        ly = self.log[y]
        zero = (lx < 0) | (ly < 0)
        out = np.where(zero, 0, self.exp[(lx + ly) % self.n])
        return self._out(out, x, y)

    def inv(self, x):
        lx = self.log[x]
        if np.any(lx < 0):
            raise ZeroDivisionError("inverse of zero in F_q")
        return self._out(self.exp[(-lx) % self.n], x)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, k: int):
        """x**k with exponent reduction mod q-1; 0**0 == 1, 0**k == 0 for k > 0."""
        lx = self.log[x]
        if k < 0:
            if np.any(lx < 0):
                raise ZeroDivisionError("negative power of zero in F_q")
        out = np.where(lx < 0, 1 if k == 0 else 0, self.exp[(lx * k) % self.n])
        return self._out(out, x)

    def dlog(self, x) -> int:
        lx = self.log[x]
        if np.any(lx < 0):
            raise ValueError("discrete log of zero")
        return self._out(lx, x)

    def is_square(self, x) -> bool:
        return bool(self.squares[x] > 0)

    def sqrt(self, x: int) -> tuple[int, ...]:
        """Both square roots sorted by encoding, ``(0,)`` for zero, ``()`` otherwise."""
        if x == 0:
            return (0,)
        k = int(self.log[x])
        if k % 2:
            return ()
        r = int(self.exp[k // 2])
        return tuple(sorted((r, self.neg(r))))

    def poly_eval(self, coeffs, x):
        """Horner evaluation of sum(coeffs[i] * x^i) at element(s) x.

        ``coeffs`` are field encodings, low degree first.
        """
        acc = np.zeros_like(np.asarray(x)) if np.ndim(x) else 0
        for c in reversed(list(coeffs)):
            acc = self.add(self.mul(acc, x), c)
        return acc


def prime_factors(n: int) -> list[int]:
    return sorted(factorint(n))


def build_field(p: int, e: int = 1, ceiling: int | None = None) -> FieldTable:
    """Construct F_{p^e} deterministically (least irreducible, least generator)."""
    if not isinstance(p, (int, np.integer)) or not isprime(int(p)):
        raise FieldError(f"p = {p} is not prime")
    if p == 2:
        raise FieldError("even characteristic is not supported")
    if e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}")
    ceiling = field_ceiling() if ceiling is None else ceiling
    q = p**e
    if q > ceiling:
        raise FieldError(f"q = {q} exceeds field ceiling {ceiling}")

    modulus = least_irreducible(p, e)
    spec = FieldSpec(p, e, modulus)
    n = q - 1
    cofactors = [n // r for r in prime_factors(n)]

    def to_poly(x: int) -> list[int]:
        out = []
        for _ in range(e):
            x, c = divmod(x, p)
            out.append(c)
        return out

    one = [1] + [0] * (e - 1)
    g = None
    for cand in range(1, q):
        poly = to_poly(cand)
        if all(_polypow(poly, c, modulus, p) != one for c in cofactors):
            g = cand
            break
    assert g is not None

    place = [p**i for i in range(e)]
    gpoly = to_poly(g)
    exp = np.empty(n, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    cur = one
    for k in range(n):
        enc = sum(c * w for c, w in zip(cur, place))
        exp[k] = enc
        log[enc] = k
        cur = _polymulmod(cur, gpoly, modulus, p)
    if cur != one or np.any(log[1:] < 0):
        raise FieldError("generator table construction failed")  # pragma: no cover

    digits = np.array([to_poly(x) for x in range(q)], dtype=np.int64).reshape(q, e)
    return FieldTable(spec=spec, g=g, exp=exp, log=log, digits=digits)


def odd_prime_powers(q_min: int, q_max: int) -> list[tuple[int, int]]:
    """All (p, e) with p odd prime and q_min <= p^e <= q_max, ordered by q."""
    out = []
    for q in range(max(q_min, 3), q_max + 1):
        f = factorint(q)
        if len(f) == 1:
            (p, e), = f.items()
            if p != 2:
                out.append((p, e))
    return out
