"""Exact arithmetic in Q(zeta_n) through several prime embeddings.

For each auxiliary prime l = 1 (mod n) the root of unity zeta_n is sent to a
fixed w of exact order n modulo l.  A :class:`CycloValue` stores the images
in all embeddings plus a complex floating mirror used only for diagnostics.
Values may be batched: residues then have shape ``(k, *batch)`` and the
mirror has shape ``batch``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np
from sympy import isprime, primitive_root

from .field import prime_factors

_INT64_SAFE = 3 * 10**9  # l below this keeps l*l inside int64


class EmbeddingMismatch(RuntimeError):
    """Embeddings disagree on a quantity that must be a rational integer."""


@dataclass(frozen=True, eq=False)
class EmbeddingCtx:
    n: int
    primes: tuple[int, ...]
    roots: tuple[int, ...]

    @cached_property
    def dtype(self):
        return np.int64 if max(self.primes) < _INT64_SAFE else object

    @cached_property
    def powtab(self) -> np.ndarray:
        """``powtab[i, t] = w_i^t mod l_i``."""
        tab = np.empty((len(self.primes), self.n), dtype=self.dtype)
        for i, (ell, w) in enumerate(zip(self.primes, self.roots)):
            cur = 1
            for t in range(self.n):
                tab[i, t] = cur
                cur = cur * w % ell
        return tab

    @cached_property
    def zeta(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.n) / self.n)

    @property
    def k(self) -> int:
        return len(self.primes)

    def mod(self, ndim: int) -> np.ndarray:
        """Prime column shaped to broadcast against residues with ``ndim`` batch axes."""
        return np.array(self.primes, dtype=self.dtype).reshape((self.k,) + (1,) * ndim)

    # constructors -----------------------------------------------------------
    def zero(self) -> CycloValue:
        return CycloValue(self, np.zeros(self.k, dtype=self.dtype), np.complex128(0))

    def one(self) -> CycloValue:
        return self.from_rational(1)

    def from_rational(self, num, den=1) -> CycloValue:
        frac = Fraction(num, den)
        res = []
        for ell in self.primes:
            if frac.denominator % ell == 0:
                raise ZeroDivisionError(f"denominator {frac.denominator} vanishes mod {ell}")
            res.append(frac.numerator * pow(frac.denominator, -1, ell) % ell)
        return CycloValue(self, np.array(res, dtype=self.dtype), np.complex128(float(frac)))

    def from_ints(self, values) -> CycloValue:
        """Batched integers."""
        values = np.asarray(values)
        res = np.stack([values % ell for ell in self.primes]).astype(self.dtype)
        return CycloValue(self, res, values.astype(np.complex128))

    def root_of_unity(self, t, zero=None) -> CycloValue:
        """zeta^t, elementwise for array t; entries flagged by ``zero`` become 0."""
        t = np.asarray(t) % self.n
        res = self.powtab[:, t]
        mirror = self.zeta[t]
        if zero is not None:
            res = np.where(zero, 0, res).astype(self.dtype)
            mirror = np.where(zero, 0, mirror)
        return CycloValue(self, res, mirror)


def make_ctx(n: int, q: int, k: int = 2) -> EmbeddingCtx:
    """The k smallest primes l = 1 (mod n), l > 4 q^2, with w_i = r_i^((l_i - 1)/n).

    r_i is the least primitive root modulo l_i.
    """
    if k < 1:
        raise ValueError("need at least one embedding")
    primes, roots = [], []
    ell = 4 * q * q + 1
    ell += (1 - ell) % n
    factors = prime_factors(n) if n > 1 else []
    while len(primes) < k:
        if isprime(ell) and ell % q:
            w = pow(primitive_root(ell), (ell - 1) // n, ell)
            assert pow(w, n, ell) == 1 and all(pow(w, n // r, ell) != 1 for r in factors)
            primes.append(ell)
            roots.append(w)
        ell += n
    return EmbeddingCtx(n, tuple(primes), tuple(roots))


def _coerce(ctx: EmbeddingCtx, x) -> CycloValue:
    if isinstance(x, CycloValue):
        return x
    if isinstance(x, (int, np.integer, Fraction)):
        return ctx.from_rational(int(x) if isinstance(x, np.integer) else x)
    raise TypeError(f"cannot coerce {type(x).__name__} to CycloValue")


class CycloValue:
    """An element (or array of elements) of Z[zeta_n, 1/N] seen in every embedding."""

    __slots__ = ("ctx", "res", "mirror")

    def __init__(self, ctx: EmbeddingCtx, res: np.ndarray, mirror):
        self.ctx = ctx
        self.res = res
        self.mirror = np.asarray(mirror, dtype=np.complex128)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.res.shape[1:]

    @property
    def residues(self) -> tuple[int, ...]:
        self._require_scalar()
        return tuple(int(r) for r in self.res)

    def _require_scalar(self):
        if self.shape:
            raise ValueError(f"expected a scalar value, got batch shape {self.shape}")

    def _aligned(self, other) -> tuple[np.ndarray, np.ndarray, int]:
        other = _coerce(self.ctx, other)
        a, b = self.res, other.res
        d = max(a.ndim, b.ndim) - 1
        a = a.reshape((a.shape[0],) + (1,) * (d - a.ndim + 1) + a.shape[1:])
        b = b.reshape((b.shape[0],) + (1,) * (d - b.ndim + 1) + b.shape[1:])
        return a, b, d, other

    def __add__(self, other):
        a, b, d, other = self._aligned(other)
        return CycloValue(self.ctx, (a + b) % self.ctx.mod(d), self.mirror + other.mirror)

    __radd__ = __add__

    def __neg__(self):
        return CycloValue(self.ctx, (-self.res) % self.ctx.mod(len(self.shape)), -self.mirror)

    def __sub__(self, other):
        return self + (-_coerce(self.ctx, other))

    def __rsub__(self, other):
        return _coerce(self.ctx, other) - self

    def __mul__(self, other):
        a, b, d, other = self._aligned(other)
        return CycloValue(self.ctx, (a * b) % self.ctx.mod(d), self.mirror * other.mirror)

    __rmul__ = __mul__

    def __matmul__(self, other):
        """Matrix/vector product over the batch axes, reduced in every embedding."""
        other = _coerce(self.ctx, other)
        a, b = self.res, other.res
        vec = b.ndim == 2
        if vec:
            b = b[:, :, None]
        inner = a.shape[-1]
        if a.dtype != object and inner * max(self.ctx.primes) ** 2 >= 2**62:
            a, b = a.astype(object), b.astype(object)
        out = np.matmul(a, b)
        mirror = self.mirror @ other.mirror
        if vec:
            out = out[..., 0]
        return CycloValue(self.ctx, out % self.ctx.mod(out.ndim - 1), mirror)

    def __getitem__(self, idx):
        if not isinstance(idx, tuple):
            idx = (idx,)
        return CycloValue(self.ctx, self.res[(slice(None),) + idx], self.mirror[idx])

    def sum(self, axis=None) -> CycloValue:
        nb = len(self.shape)
        if axis is None:
            axes = tuple(range(nb))
        else:
            axes = (axis,) if isinstance(axis, int) else tuple(axis)
            axes = tuple(a % nb for a in axes)
        res = self.res.sum(axis=tuple(a + 1 for a in axes))
        mirror = self.mirror.sum(axis=axes)
        return CycloValue(self.ctx, res % self.ctx.mod(res.ndim - 1), mirror)

    def equal(self, other) -> np.ndarray:
        """Elementwise equality in every embedding."""
        a, b, _, _ = self._aligned(other)
        return np.all(a == b, axis=0)

    def __eq__(self, other):
        if not isinstance(other, (CycloValue, int, np.integer, Fraction)):
            return NotImplemented
        out = self.equal(other)
        return bool(np.all(out))

    __hash__ = None

    def is_zero(self) -> bool:
        return bool(np.all(self.res == 0))

    def as_integer(self, lo: int, hi: int, strict: bool = False) -> int | None:
        """The unique integer in [lo, hi] matching every embedding, if any.

        With ``strict`` the value is asserted to be such an integer and any
        disagreement between embeddings raises :class:`EmbeddingMismatch`.
        """
        self._require_scalar()
        if hi - lo >= min(self.ctx.primes):
            raise ValueError("integer range wider than the smallest embedding prime")
        found = []
        for r, ell in zip(self.res, self.ctx.primes):
            m = lo + (int(r) - lo) % ell
            found.append(m if m <= hi else None)
        if all(m == found[0] for m in found) and found[0] is not None:
            return found[0]
        if strict:
            raise EmbeddingMismatch(f"embeddings recover {found} in [{lo}, {hi}]")
        return None

    def to_json(self, lo: int | None = None, hi: int | None = None) -> dict:
        self._require_scalar()
        out: dict = {}
        if lo is not None and hi is not None:
            m = self.as_integer(lo, hi)
            if m is not None:
                out["integer"] = m
        if "integer" not in out:
            out["residues"] = list(self.residues)
        m = complex(self.mirror)
        out["mirror"] = [round(m.real, 9) + 0.0, round(m.imag, 9) + 0.0]
        return out

    def __repr__(self):
        if self.shape:
            return f"CycloValue(batch={self.shape})"
        return f"CycloValue(res={self.residues}, mirror={complex(self.mirror):.6g})"
