"""Executable checkers for every identity, a sweep driver and report serialization.

Each checker defines a parameter space over one field, a scalar evaluator that
returns both sides plus a term trace, and (where it matters for speed) a
vectorized evaluator returning only statuses.  The driver runs the vectorized
path, then replays the first failing cell and the first passing cell through
the scalar path and insists the two agree.
"""
from __future__ import annotations

import csv
import io
import json
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from itertools import product
from math import prod
from typing import Any, Callable, Sequence

import numpy as np

from . import charsums as cs
from . import curves as cv
from .characters import Character, CharacterGroup, orthogonality_sum
from .cyclo import CycloValue
from .field import odd_prime_powers
from .hypergeom import (
    binom_table,
    f21_binomial,
    f21_integral,
    f21_integral_many,
    fpq_many,
    shift_expansion,
)

CHECK_IDS = (
    "greene_equiv", "l1_4", "l1_1", "c1_4", "c1_5", "lemma_2_5",
    "prop_2_6_1", "prop_2_6_2", "prop_2_6_3", "prop_2_6_4", "l3_5",
    "t1_Em", "t1_EmPrime", "t3", "t3_4", "t3_5", "t3_6", "bt1", "bt2", "points_EC",
)
STATUSES = ("pass", "fail", "hypothesis_unmet", "vacuous")
DEFAULT_BUDGET = 10**6
_CHUNK = 1 << 15


class UnknownCheck(KeyError):
    pass


class InternalInconsistency(RuntimeError):
    """The vectorized and scalar evaluators disagree on a cell."""


@dataclass(frozen=True)
class Sampling:
    """Exhaustive when a space has at most ``budget`` cells, else ``samples`` seeded draws.

    ``samples=None`` uses the checker's own default.
    """

    budget: int = DEFAULT_BUDGET
    samples: int | None = None
    seed: int = 0


@dataclass
class CellResult:
    status: str
    lhs: Any = None
    rhs: Any = None
    trace: dict | None = None
    tag: str | None = None


@dataclass
class CheckReport:
    check: str
    field: tuple[int, int]
    params: dict
    status: str
    lhs: Any
    rhs: Any
    witness: dict | None
    trace: dict | None
    seed: int
    aux_primes: list[int]

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "field": list(self.field),
            "params": self.params,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "witness": self.witness,
            "trace": self.trace,
            "seed": self.seed,
            "aux_primes": list(self.aux_primes),
        }

    @classmethod
    def from_json(cls, d: dict) -> CheckReport:
        return cls(d["check"], tuple(d["field"]), d["params"], d["status"], d["lhs"], d["rhs"],
                   d["witness"], d["trace"], d["seed"], list(d["aux_primes"]))


# --- parameter spaces ----------------------------------------------------------------

@dataclass
class Part:
    """A tagged product of axes, optionally filtered by an admissibility predicate."""

    tag: str
    names: tuple[str, ...]
    axes: tuple[Sequence[int], ...]
    admissible: Callable[[tuple], bool] | None = None

    @property
    def size(self) -> int:
        return prod(len(a) for a in self.axes)

    def decode(self, idx: int) -> tuple:
        out = []
        for axis in reversed(self.axes):
            idx, r = divmod(idx, len(axis))
            out.append(int(axis[r]))
        return tuple(reversed(out))

    def ok(self, values: tuple) -> bool:
        return self.admissible is None or self.admissible(values)


class ParamSpace:
    """Union of tagged parts; a cell is ``(tag, *values)``."""

    def __init__(self, parts: Sequence[Part]):
        self.parts = list(parts)

    @property
    def size(self) -> int:
        return sum(p.size for p in self.parts)

    def part(self, tag: str) -> Part:
        for p in self.parts:
            if p.tag == tag:
                return p
        raise KeyError(tag)

    def enumerate(self) -> list[tuple]:
        cells = []
        for p in self.parts:
            for values in product(*[[int(v) for v in a] for a in p.axes]):
                if p.ok(values):
                    cells.append((p.tag,) + values)
        return cells

    def sample(self, rng: random.Random, count: int) -> list[tuple]:
        """Up to ``count`` distinct admissible cells, uniformly drawn, in canonical order."""
        total = self.size
        seen: set[int] = set()
        picked = []
        attempts = 0
        while len(picked) < count and attempts < 50 * count and len(seen) < total:
            attempts += 1
            g = rng.randrange(total)
            if g in seen:
                continue
            seen.add(g)
            idx = g
            for p in self.parts:
                if idx < p.size:
                    values = p.decode(idx)
                    if p.ok(values):
                        picked.append((g, (p.tag,) + values))
                    break
                idx -= p.size
        picked.sort()
        return [c for _, c in picked]

    def witness(self, cell: tuple) -> dict:
        p = self.part(cell[0])
        return {"part": p.tag, **dict(zip(p.names, cell[1:]))}

    def cell_of(self, witness: dict) -> tuple:
        p = self.part(witness["part"])
        return (p.tag,) + tuple(int(witness[n]) for n in p.names)


def _distinct(values) -> bool:
    return len(set(values)) == len(values)


# --- serialization helpers -------------------------------------------------------------

def _jsonable(G: CharacterGroup, v):
    lo, hi = -2 * G.q * G.q, 2 * G.q * G.q
    if isinstance(v, CycloValue):
        return v.to_json(lo, hi)
    if isinstance(v, dict):
        return {str(k): _jsonable(G, x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(G, x) for x in v]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, Character):
        return v.j
    return v


def _ints(G: CharacterGroup, values) -> CycloValue:
    return G.ctx.from_ints(np.asarray(values, dtype=np.int64))


def _groups(cells, key) -> dict:
    out: dict = {}
    for i, c in enumerate(cells):
        out.setdefault(key(c), []).append(i)
    return out


# --- integer engine for sums of quadratic characters ---------------------------------

def _phi_rows(G: CharacterGroup, l: int) -> np.ndarray:
    """R[a, x] = phi(x^l + a) as plain integers, over all a in F_q."""
    key = ("phi_rows", l)
    if key not in G._cache:
        F = G.field
        xl = F.pow(F.elements, l)
        G._cache[key] = G.phi_int[F.add(F.elements[:, None], xl[None, :])].astype(np.int8)
    return G._cache[key]


def _psi_many(G: CharacterGroup, exps, args, weight=None) -> np.ndarray:
    """gen_psi as integers for N cells: exps and args are sequences of length-N arrays
    (or scalars); ``weight`` is an optional per-x integer vector (phi for gen_phi)."""
    N = max(np.size(a) for a in args)
    exps = [np.broadcast_to(np.asarray(l), (N,)) for l in exps]
    args = [np.broadcast_to(np.asarray(a), (N,)) for a in args]
    out = np.empty(N, dtype=np.int64)
    for start in range(0, N, _CHUNK):
        sl = slice(start, start + _CHUNK)
        acc = None
        for l_arr, a_arr in zip(exps, args):
            rows = np.empty((len(a_arr[sl]), G.q), dtype=np.int8)
            for l in np.unique(l_arr[sl]):
                mask = l_arr[sl] == l
                rows[mask] = _phi_rows(G, int(l))[a_arr[sl][mask]]
            acc = rows.astype(np.int64) if acc is None else acc * rows
        if weight is not None:
            acc = acc * weight
        out[sl] = acc.sum(axis=1)
    return out


def _gen_psi_int(G, exps, args) -> np.ndarray:
    return _psi_many(G, exps, args)


def _gen_phi_int(G, exps, args) -> np.ndarray:
    return _psi_many(G, exps, args, weight=G.phi_int.astype(np.int64))


def _gen_int_scalar(G, kind: str, exps, args) -> int:
    spec = cs.SumSpec(kind, tuple(exps), tuple(args))
    return cs.int_value(G, cs.evaluate(G, spec))


# --- checker base ----------------------------------------------------------------------

class Check:
    id: str = ""
    default_samples: int = 500
    description: str = ""

    def field_hypothesis(self, G: CharacterGroup) -> str | None:
        """Reason the whole field is outside the statement, or None."""
        return None

    def space(self, G: CharacterGroup, seed: int, samples: int, options: dict) -> ParamSpace:
        raise NotImplementedError

    def evaluate_one(self, G: CharacterGroup, cell: tuple) -> CellResult:
        raise NotImplementedError

    def evaluate_many(self, G: CharacterGroup, cells: list[tuple]) -> list[tuple[str, str | None]]:
        out = []
        for c in cells:
            r = self.evaluate_one(G, c)
            out.append((r.status, r.tag))
        return out

    def summarize(self, G: CharacterGroup, cells, outcomes) -> dict:
        return {}


REGISTRY: dict[str, Check] = {}


def register(cls):
    inst = cls()
    REGISTRY[inst.id] = inst
    return cls


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


# --- Greene's two forms of 2F1 -----------------------------------------------------------

@register
class GreeneEquiv(Check):
    id = "greene_equiv"
    description = "character-sum and binomial forms of 2F1 agree"

    def space(self, G, seed, samples, options):
        n = range(G.n)
        return ParamSpace([Part("main", ("A", "B", "C", "x"), (n, n, n, range(G.q)))])

    def evaluate_one(self, G, cell):
        _, A, B, C, x = cell
        A, B, C = G.T(A), G.T(B), G.T(C)
        lhs = f21_integral(G, A, B, C, x)
        rhs = f21_binomial(G, A, B, C, x)
        return CellResult(_status(lhs == rhs), lhs, rhs)

    def evaluate_many(self, G, cells):
        out = [None] * len(cells)
        for (A, B, C), idx in _groups(cells, lambda c: c[1:4]).items():
            xs = np.array([cells[i][4] for i in idx])
            chars = (G.T(A), G.T(B), G.T(C))
            eq = f21_integral_many(G, *chars, xs).equal(fpq_many(G, chars[:2], chars[2:], xs))
            for i, ok in zip(idx, eq):
                out[i] = (_status(bool(ok)), None)
        return out


# --- shifted character expansion -----------------------------------------------------------

@register
class ShiftExpansion(Check):
    id = "l1_4"
    description = "A(a + x) = delta(x) + q/(q-1) sum_chi binom(A, chi) chi(x/a) scaled by A(a)"

    def space(self, G, seed, samples, options):
        F = G.field
        return ParamSpace([Part("main", ("A", "a", "x"), (range(G.n), F.nonzero, F.elements))])

    def evaluate_one(self, G, cell):
        _, A, a, x = cell
        chi = G.T(A)
        F = G.field
        lhs = G.value(chi, F.add(a, x))
        rhs = shift_expansion(G, chi, a, np.array([x]))[0]
        trace = None
        if lhs != rhs:
            # the series part alone, and the variant with delta scaled by A(a)
            series = rhs - int(x == 0)
            scaled = series + G.value(chi, a) * int(x == 0)
            trace = {"series_part": series, "delta": int(x == 0), "A_of_a": G.value(chi, a),
                     "holds_with_delta_scaled_by_A_of_a": scaled == lhs}
        return CellResult(_status(lhs == rhs), lhs, rhs, trace)

    def evaluate_many(self, G, cells):
        F = G.field
        out = [None] * len(cells)
        for (A, a), idx in _groups(cells, lambda c: c[1:3]).items():
            xs = np.array([cells[i][3] for i in idx])
            chi = G.T(A)
            eq = G.eval(chi, F.add(a, xs)).equal(shift_expansion(G, chi, a, xs))
            for i, ok, x in zip(idx, eq, xs):
                tag = "x_zero" if x == 0 else "x_nonzero"
                out[i] = (_status(bool(ok)), tag)
        return out

    def summarize(self, G, cells, outcomes):
        fails = Counter(t for s, t in outcomes if s == "fail")
        return {"fails_by_x": dict(sorted(fails.items()))}


# --- quadratic-character transform and its corollary --------------------------------------

def _random_table(G: CharacterGroup, table_seed: int) -> CycloValue:
    rng = random.Random(table_seed)
    q, n = G.q, G.n
    c = [rng.randint(-q, q) for _ in range(q)]
    t = [rng.randrange(n) for _ in range(q)]
    d = [rng.randint(-q, q) for _ in range(q)]
    return G.ctx.root_of_unity(np.array(t)) * _ints(G, c) + _ints(G, d)


def _derived_seeds(check_id: str, G: CharacterGroup, seed: int, count: int) -> list[int]:
    rng = random.Random(f"{seed}:{check_id}:tables:{G.q}")
    return [rng.getrandbits(32) for _ in range(count)]


@register
class QuadraticTransform(Check):
    id = "l1_1"
    default_samples = 50
    description = "sum phi(x) f(x) = sum f(x^2) - sum f(x); psi_(2l,2m,2n) = psi_(l,m,n) + phi_(l,m,n)"
    EXPS = (1, 2, 3)

    def space(self, G, seed, samples, options):
        F = G.field
        e = self.EXPS
        return ParamSpace([
            Part("table", ("table_seed",), (_derived_seeds(self.id, G, seed, samples),)),
            Part("corollary", ("l", "m", "n", "a", "b", "c"),
                 (e, e, e, F.nonzero, F.nonzero, F.nonzero), lambda v: _distinct(v[3:])),
        ])

    def evaluate_one(self, G, cell):
        if cell[0] == "table":
            left, right = cs.lemma_l11_transform(G, _random_table(G, cell[1]))
            return CellResult(_status(left == right), left, right)
        _, l, m, n, a, b, c = cell
        lhs = _gen_int_scalar(G, "gen_psi", (2 * l, 2 * m, 2 * n), (a, b, c))
        psi = _gen_int_scalar(G, "gen_psi", (l, m, n), (a, b, c))
        phi = _gen_int_scalar(G, "gen_phi", (l, m, n), (a, b, c))
        trace = {"psi": psi, "phi": phi} if lhs != psi + phi else None
        return CellResult(_status(lhs == psi + phi), lhs, psi + phi, trace)

    def evaluate_many(self, G, cells):
        out = [None] * len(cells)
        tab_idx = [i for i, c in enumerate(cells) if c[0] == "table"]
        for i in tab_idx:
            r = self.evaluate_one(G, cells[i])
            out[i] = (r.status, "table")
        cor = [i for i, c in enumerate(cells) if c[0] == "corollary"]
        if cor:
            arr = np.array([cells[i][1:] for i in cor])
            exps = [arr[:, 0], arr[:, 1], arr[:, 2]]
            args = [arr[:, 3], arr[:, 4], arr[:, 5]]
            lhs = _gen_psi_int(G, [2 * e for e in exps], args)
            rhs = _gen_psi_int(G, exps, args) + _gen_phi_int(G, exps, args)
            for i, ok in zip(cor, lhs == rhs):
                out[i] = (_status(bool(ok)), "corollary")
        return out


# --- sums over x^m, m a power of two -------------------------------------------------------

class PowerLift(Check):
    """sum_x psi(2x^m) chi(x^m) rho(1 + a x^m) against the Jacobi-sum expansion."""

    ms: tuple[int, ...] = ()
    default_samples = 2000

    def _ms(self, G):
        return [m for m in self.ms if G.n % m == 0]

    def field_hypothesis(self, G):
        if not self._ms(G):
            return f"q - 1 = {G.n} has no admissible order among {self.ms}"
        return None

    def space(self, G, seed, samples, options):
        n = range(G.n)
        ms = options.get("m", self._ms(G))
        return ParamSpace([Part("main", ("m", "psi", "chi", "rho", "a"),
                                (ms, n, n, n, G.field.nonzero))])

    def evaluate_one(self, G, cell):
        _, m, psi, chi, rho, a = cell
        chars = (G.T(psi), G.T(chi), G.T(rho))
        lhs = cs.power_lift_lhs(G, m, *chars, np.array([a]))[0]
        rhs = cs.power_lift_rhs(G, m, *chars, np.array([a]))[0]
        trace = None
        if lhs != rhs:
            single = cs.power_lift_rhs(G, m, *chars, np.array([a]), reading="single")[0]
            trace = {"rhs_one_variable_reading": single,
                     "holds_under_one_variable_reading": single == lhs}
        return CellResult(_status(lhs == rhs), lhs, rhs, trace)

    def evaluate_many(self, G, cells):
        # exponent arithmetic over all cells at once; the right side reads J_1 from
        # the two-character factorization instead of the convolution used per cell
        F, n, ctx = G.field, G.n, G.ctx
        log = F.log
        log2 = int(log[F.element(2)])
        J3 = cs.jacobi3_table(G)
        jac = binom_table(G).jacobi
        arr = np.array([c[1:] for c in cells], dtype=np.int64)
        ok = np.zeros(len(cells), dtype=bool)
        alt = np.zeros(len(cells), dtype=bool)
        for m in np.unique(arr[:, 0]):
            lu = log[F.pow(F.elements, int(m))]
            step = n // int(m)
            sel = np.nonzero(arr[:, 0] == m)[0]
            for start in range(0, len(sel), _CHUNK // 4):
                idx = sel[start:start + _CHUNK // 4]
                psi, chi, rho, a = (arr[idx, c] for c in (1, 2, 3, 4))
                l1au = log[F.add(1, F.mul(a[:, None], F.pow(F.elements, int(m))[None, :]))]
                expo = psi[:, None] * (log2 + lu) + chi[:, None] * lu + rho[:, None] * l1au
                lhs = ctx.root_of_unity(expo, zero=(lu < 0)[None, :] | (l1au < 0)).sum(axis=1)
                la = log[a]
                rhs = single = None
                for k in range(int(m)):
                    tw = (chi + k * step) % n
                    coef = ctx.root_of_unity(-(psi + tw) * la)
                    term = coef * J3[psi, tw, rho]
                    s_term = coef * ctx.root_of_unity(psi * log2 + tw * (n // 2)) * jac[(psi + tw) % n, rho]
                    rhs = term if rhs is None else rhs + term
                    single = s_term if single is None else single + s_term
                sign = ctx.root_of_unity(psi * (n // 2))
                ok[idx] = lhs.equal(rhs * sign)
                alt[idx] = lhs.equal(single * sign)
        return [(_status(bool(o)), "one_variable_ok" if al else "one_variable_bad") for o, al in zip(ok, alt)]

    def summarize(self, G, cells, outcomes):
        tags = Counter(t for _, t in outcomes)
        return {"one_variable_reading": {"pass": tags["one_variable_ok"], "fail": tags["one_variable_bad"]}}


@register
class PowerLiftSquare(PowerLift):
    id = "c1_4"
    ms = (2,)


@register
class PowerLiftFourth(PowerLift):
    id = "c1_5"
    ms = (4,)


@register
class PowerLiftGeneral(PowerLift):
    id = "lemma_2_5"
    ms = (2, 4, 8, 16)


# --- properties of the generalized sums ----------------------------------------------------

_PROP_EXPS = (0, 1, 2, 3)


@register
class RotationSymmetry(Check):
    id = "prop_2_6_1"
    description = "psi and phi are invariant under rotating exponents and arguments together"

    def space(self, G, seed, samples, options):
        e, nz = _PROP_EXPS, G.field.nonzero
        return ParamSpace([Part("main", ("l1", "l2", "l3", "a1", "a2", "a3"), (e, e, e, nz, nz, nz))])

    @staticmethod
    def _rotations(ls, as_):
        return [(ls[r:] + ls[:r], as_[r:] + as_[:r]) for r in range(3)]

    def evaluate_one(self, G, cell):
        ls, as_ = tuple(cell[1:4]), tuple(cell[4:7])
        psis = [_gen_int_scalar(G, "gen_psi", l, a) for l, a in self._rotations(ls, as_)]
        phis = [_gen_int_scalar(G, "gen_phi", l, a) for l, a in self._rotations(ls, as_)]
        ok = len(set(psis)) == 1 and len(set(phis)) == 1
        trace = {"psi_rotations": psis, "phi_rotations": phis,
                 "phi_equals_rotated_psi_as_printed": phis[0] == psis[1]}
        return CellResult(_status(ok), psis[0], phis[0], None if ok else trace, None)

    def evaluate_many(self, G, cells):
        arr = np.array([c[1:] for c in cells])
        ls = [arr[:, i] for i in range(3)]
        as_ = [arr[:, 3 + i] for i in range(3)]
        psis, phis = [], []
        for r in range(3):
            rl, ra = ls[r:] + ls[:r], as_[r:] + as_[:r]
            psis.append(_gen_psi_int(G, rl, ra))
            phis.append(_gen_phi_int(G, rl, ra))
        ok = (psis[0] == psis[1]) & (psis[1] == psis[2]) & (phis[0] == phis[1]) & (phis[1] == phis[2])
        literal = phis[0] == psis[1]
        return [(_status(bool(o)), "printed_phi_line_ok" if lt else "printed_phi_line_bad")
                for o, lt in zip(ok, literal)]

    def summarize(self, G, cells, outcomes):
        tags = Counter(t for _, t in outcomes)
        return {"printed_phi_line": {"pass": tags["printed_phi_line_ok"], "fail": tags["printed_phi_line_bad"]}}


@register
class ZeroExponent(Check):
    id = "prop_2_6_2"
    description = "an exponent 0 factors out phi(1 + a_r)"

    def space(self, G, seed, samples, options):
        e, nz = (1, 2, 3), G.field.nonzero
        return ParamSpace([Part("main", ("r", "l_first", "l_second", "a1", "a2", "a3"),
                                ((0, 1, 2), e, e, nz, nz, nz))])

    @staticmethod
    def _layout(cell):
        _, r, la, lb, *args = cell
        others = [i for i in range(3) if i != r]
        ls = [0, 0, 0]
        ls[others[0]], ls[others[1]] = la, lb
        return r, ls, args, others

    def evaluate_one(self, G, cell):
        F = G.field
        r, ls, args, others = self._layout(cell)
        factor = int(G.phi_int[F.add(1, args[r])])
        sub_l = [ls[i] for i in others]
        sub_a = [args[i] for i in others]
        psi = _gen_int_scalar(G, "gen_psi", ls, args)
        phi = _gen_int_scalar(G, "gen_phi", ls, args)
        psi_r = factor * _gen_int_scalar(G, "gen_psi", sub_l, sub_a)
        phi_r = factor * _gen_int_scalar(G, "gen_phi", sub_l, sub_a)
        ok = psi == psi_r and phi == phi_r
        trace = None if ok else {"psi": [psi, psi_r], "phi": [phi, phi_r], "factor": factor}
        return CellResult(_status(ok), [psi, phi], [psi_r, phi_r], trace)

    def evaluate_many(self, G, cells):
        F = G.field
        N = len(cells)
        ls = np.zeros((N, 3), dtype=np.int64)
        args = np.array([c[4:7] for c in cells])
        r = np.array([c[1] for c in cells])
        sub_l = np.zeros((N, 2), dtype=np.int64)
        sub_a = np.zeros((N, 2), dtype=np.int64)
        for k, cell in enumerate(cells):
            rr, lk, ak, others = self._layout(cell)
            ls[k] = lk
            sub_l[k] = [lk[i] for i in others]
            sub_a[k] = [ak[i] for i in others]
        factor = G.phi_int[F.add(1, args[np.arange(N), r])]
        full_l, full_a = [ls[:, i] for i in range(3)], [args[:, i] for i in range(3)]
        s_l, s_a = [sub_l[:, i] for i in range(2)], [sub_a[:, i] for i in range(2)]
        ok = (_gen_psi_int(G, full_l, full_a) == factor * _gen_psi_int(G, s_l, s_a)) & (
            _gen_phi_int(G, full_l, full_a) == factor * _gen_phi_int(G, s_l, s_a))
        return [(_status(bool(o)), None) for o in ok]


@register
class LeadingNormalization(Check):
    id = "prop_2_6_3"
    description = "pulling a_1^(l_1) out of the first argument (a read as a_1)"

    def space(self, G, seed, samples, options):
        e, nz = _PROP_EXPS, G.field.nonzero
        return ParamSpace([Part("main", ("l1", "l2", "l3", "a1", "a2", "a3"), (e, e, e, nz, nz, nz))])

    def _sides(self, G, ls, a1, a2, a3):
        F = G.field
        L = sum(ls)
        left_args = [F.pow(a1, ls[0]), a2, a3]
        right_args = [np.ones_like(np.asarray(a1)), F.div(a2, F.pow(a1, ls[1])), F.div(a3, F.pow(a1, ls[2]))]
        sign_psi = G.phi_int[F.pow(a1, L)]
        sign_phi = G.phi_int[F.pow(a1, L + 1)]
        return left_args, right_args, sign_psi, sign_phi

    def evaluate_one(self, G, cell):
        _, l1, l2, l3, a1, a2, a3 = cell
        ls = (l1, l2, l3)
        left, right, s_psi, s_phi = self._sides(G, ls, a1, a2, a3)
        psi_l = _gen_int_scalar(G, "gen_psi", ls, left)
        phi_l = _gen_int_scalar(G, "gen_phi", ls, left)
        psi_r = int(s_psi) * _gen_int_scalar(G, "gen_psi", ls, right)
        phi_r = int(s_phi) * _gen_int_scalar(G, "gen_phi", ls, right)
        ok = psi_l == psi_r and phi_l == phi_r
        trace = None if ok else {"psi": [psi_l, psi_r], "phi": [phi_l, phi_r],
                                 "sign_psi": int(s_psi), "sign_phi": int(s_phi)}
        return CellResult(_status(ok), [psi_l, phi_l], [psi_r, phi_r], trace)

    def evaluate_many(self, G, cells):
        out = [None] * len(cells)
        for ls, idx in _groups(cells, lambda c: c[1:4]).items():
            arr = np.array([cells[i][4:7] for i in idx])
            left, right, s_psi, s_phi = self._sides(G, ls, arr[:, 0], arr[:, 1], arr[:, 2])
            ok = (_gen_psi_int(G, ls, left) == s_psi * _gen_psi_int(G, ls, right)) & (
                _gen_phi_int(G, ls, left) == s_phi * _gen_phi_int(G, ls, right))
            for i, o in zip(idx, ok):
                out[i] = (_status(bool(o)), None)
        return out


@register
class EqualEntries(Check):
    id = "prop_2_6_4"
    description = "psi and phi with all exponents l and all arguments a, as printed"

    def space(self, G, seed, samples, options):
        return ParamSpace([Part("main", ("count", "l", "a"), ((1, 2, 3, 4), (1, 2, 3, 4), G.field.nonzero))])

    def evaluate_one(self, G, cell):
        _, count, l, a = cell
        F = G.field
        psi = _gen_int_scalar(G, "gen_psi", (l,) * count, (a,) * count)
        phi = _gen_int_scalar(G, "gen_phi", (l,) * count, (a,) * count)
        target = _gen_int_scalar(G, "psi_n", (l,), (a,)) if count % 2 else G.q - 1
        ok = psi == phi == target
        trace = None
        if not ok:
            roots = int((F.pow(F.elements, l) == F.neg(a)).sum())
            trace = {"psi": psi, "phi": phi, "stated": target,
                     "points_off_the_zero_set": G.q - roots if count % 2 == 0 else None}
        return CellResult(_status(ok), [psi, phi], target, trace)


@register
class OrthogonalityExpansion(Check):
    id = "l3_5"
    description = "psi_(m,m,m) and phi_(m,m,m) through the order-2m orthogonality sums"

    def _ms(self, G):
        return [m for m in (1, 2, 3) if G.n % (2 * m) == 0]

    def space(self, G, seed, samples, options):
        nz = G.field.nonzero
        return ParamSpace([Part("main", ("m", "a1", "a2", "a3"), (self._ms(G), nz, nz, nz))])

    def _weights(self, G, m):
        """Integer weights over F_q: the order-m orthogonality sum (1 at x = 0, as it
        counts y with y^m = x) and sum_k chi_2m^(2k+1)(x)."""
        key = ("l35_weights", m)
        if key not in G._cache:
            chi = G.char_of_order(2 * m)
            x = G.field.elements
            even = np.array([orthogonality_sum(G, int(v), m) for v in x], dtype=np.int64)
            odd = sum((G.eval(chi ** (2 * k + 1), x) for k in range(m)), G.ctx.zero())
            odd = np.array([odd[i].as_integer(-m, m, strict=True) for i in range(G.q)], dtype=np.int64)
            G._cache[key] = (even, odd)
        return G._cache[key]

    def evaluate_one(self, G, cell):
        _, m, *args = cell
        even, odd = self._weights(G, m)
        lhs = [_gen_int_scalar(G, "gen_psi", (m,) * 3, args), _gen_int_scalar(G, "gen_phi", (m,) * 3, args)]
        rows = _psi_many(G, [1, 1, 1], [np.array([a]) for a in args], weight=even)[0]
        rows_odd = _psi_many(G, [1, 1, 1], [np.array([a]) for a in args], weight=odd)[0]
        rhs = [int(rows), int(rows_odd)]
        return CellResult(_status(lhs == rhs), lhs, rhs, None if lhs == rhs else {"psi": [lhs[0], rhs[0]],
                                                                                 "phi": [lhs[1], rhs[1]]})

    def evaluate_many(self, G, cells):
        out = [None] * len(cells)
        for (m,), idx in _groups(cells, lambda c: c[1:2]).items():
            arr = np.array([cells[i][2:5] for i in idx])
            args = [arr[:, 0], arr[:, 1], arr[:, 2]]
            even, odd = self._weights(G, m)
            ok = (_gen_psi_int(G, [m] * 3, args) == _psi_many(G, [1] * 3, args, weight=even)) & (
                _gen_phi_int(G, [m] * 3, args) == _psi_many(G, [1] * 3, args, weight=odd))
            for i, o in zip(idx, ok):
                out[i] = (_status(bool(o)), None)
        return out


# --- point counts on E_m and E'_m ------------------------------------------------------------

class EmFamily(Check):
    family = ""
    default_samples = 2000

    def _ms(self, G):
        return [m for m in (1, 2, 3) if G.n % (2 * m) == 0]

    def field_hypothesis(self, G):
        if not self._ms(G):
            return f"q = {G.q} is not 1 mod 2m for any m in (1, 2, 3)"
        return None

    def space(self, G, seed, samples, options):
        nz = G.field.nonzero
        ms = [m for m in options.get("m", self._ms(G)) if G.n % (2 * m) == 0]
        return ParamSpace([Part("main", ("m", "a", "b", "c"), (ms, nz, nz, nz), lambda v: _distinct(v[1:]))])

    def _curve(self, m, a, b, c):
        return cv.CurveSpec(self.family, m=m, a=a, b=b, c=c)

    def _degree(self, m):
        return 3 * m + (1 if self.family == "EmPrime" else 0)

    def evaluate_one(self, G, cell):
        _, m, a, b, c = cell
        F = G.field
        f = self._curve(m, a, b, c).poly(G)
        N = cv.count_direct(G, f)
        H = cv.em_hyp_part(G, self.family, m, b, c, [a])[0]
        r_deg, r_stmt = cv.r_of(self._degree(m)), cv.statement_r(m)
        closed_stmt = H + (G.q + r_stmt)
        closed_deg = H + (G.q + r_deg)
        ok_stmt, ok_deg = closed_stmt == N, closed_deg == N
        tag = _convention_tag(ok_deg, ok_stmt)
        trace = None
        if tag == "none":
            off = (_ints(G, N) - closed_deg).as_integer(-4 * G.q, 4 * G.q)
            trace = {"count_direct": N, "closed_form_degree_r": closed_deg,
                     "closed_form_statement_r": closed_stmt, "offset_vs_degree_r": off,
                     "phi_abc": int(G.phi_int[F.mul(F.mul(a, b), c)])}
        return CellResult(_status(tag != "none"), N, closed_stmt, trace, tag)

    def evaluate_many(self, G, cells):
        F = G.field
        out = [None] * len(cells)
        for (m, b, c), idx in _groups(cells, lambda cell: (cell[1], cell[3], cell[4])).items():
            a = np.array([cells[i][2] for i in idx])
            H = cv.em_hyp_part(G, self.family, m, b, c, a)
            x = F.elements[None, :]
            u = F.pow(x, m)
            fx = F.mul(F.mul(F.add(u, a[:, None]), F.add(u, b)), F.add(u, c))
            if self.family == "EmPrime":
                fx = F.mul(fx, x)
            affine = F.squares[fx].sum(axis=1)
            r_deg, r_stmt = cv.r_of(self._degree(m)), cv.statement_r(m)
            N = _ints(G, affine + r_deg)
            ok_deg = (H + (G.q + r_deg)).equal(N)
            ok_stmt = (H + (G.q + r_stmt)).equal(N)
            for i, d, s in zip(idx, ok_deg, ok_stmt):
                tag = _convention_tag(bool(d), bool(s))
                out[i] = (_status(tag != "none"), tag)
        return out

    def summarize(self, G, cells, outcomes):
        tags = Counter(t for _, t in outcomes)
        consistent = [conv for conv in ("degree", "statement")
                      if cells and all(t in (conv, "both") for _, t in outcomes)]
        return {"conventions": dict(sorted(tags.items())), "consistent_conventions": consistent}


def _convention_tag(ok_degree: bool, ok_statement: bool) -> str:
    if ok_degree and ok_statement:
        return "both"
    if ok_degree:
        return "degree"
    if ok_statement:
        return "statement"
    return "none"


@register
class CountEm(EmFamily):
    id = "t1_Em"
    family = "Em"


@register
class CountEmPrime(EmFamily):
    id = "t1_EmPrime"
    family = "EmPrime"


# --- sums over x^m with several characters -------------------------------------------------

T3_READINGS = ("order2_power", "phi", "conj")


def _t3_psi2(G: CharacterGroup, m: int, reading: str) -> Character:
    psi_m = G.char_of_order(m)
    if reading == "order2_power":
        return psi_m ** (m // 2)
    if reading == "phi":
        return G.phi
    if reading == "conj":
        return ~psi_m
    raise ValueError(reading)


@register
class PowerSumJacobi(Check):
    id = "t3"
    default_samples = 200
    description = "sum_x psi(a x^m) prod chi_i(b_i - a_i x^m) as a sum of J_b, m = 2^count"

    def _ms(self, G):
        return [m for m in (2, 4) if G.n % m == 0]

    def space(self, G, seed, samples, options):
        n, nz = range(G.n), G.field.nonzero
        parts = []
        if 2 in self._ms(G):
            parts.append(Part("m2", ("psi", "chi1", "a1", "b1"), (n, n, nz, nz)))
        if 4 in self._ms(G):
            parts.append(Part("m4", ("psi", "chi1", "chi2", "a1", "a2", "b1", "b2"),
                              (n, n, n, nz, nz, nz, nz)))
        return ParamSpace(parts)

    @staticmethod
    def _unpack(G, cell):
        if cell[0] == "m2":
            _, psi, c1, a1, b1 = cell
            return 2, G.T(psi), [G.T(c1)], [a1], [b1]
        _, psi, c1, c2, a1, a2, b1, b2 = cell
        return 4, G.T(psi), [G.T(c1), G.T(c2)], [a1, a2], [b1, b2]

    def evaluate_one(self, G, cell):
        m, psi, chis, a_list, b_list = self._unpack(G, cell)
        lhs = cv.t3_lhs(G, m, psi, chis, a_list, b_list)
        sides = {r: cv.t3_rhs(G, m, psi, chis, a_list, b_list, _t3_psi2(G, m, r)) for r in T3_READINGS}
        holds = [r for r in T3_READINGS if sides[r] == lhs]
        tag = "+".join(holds) if holds else "none"
        ok = "order2_power" in holds
        trace = None if ok else {"rhs_by_reading": sides, "readings_that_hold": holds}
        return CellResult(_status(ok), lhs, sides["order2_power"], trace, tag)

    def evaluate_many(self, G, cells):
        from .charsums import jacobi_distribution

        F = G.field
        out = [None] * len(cells)
        u_all = None
        for key, idx in _groups(cells, lambda c: (c[0],) + (c[1:3] if c[0] == "m2" else c[1:4])).items():
            m, psi, chis, _, _ = self._unpack(G, cells[idx[0]])
            psi_m = G.char_of_order(m)
            dists = [jacobi_distribution(G, [psi_m**k * psi, *chis]) for k in range(m)]
            nch = len(chis)
            arr = np.array([cells[i][1 + 1 + nch:] for i in idx])
            a_cols, b_cols = arr[:, :nch], arr[:, nch:]
            a = a_cols[:, 0]
            b = b_cols[:, 0]
            for j in range(1, nch):
                a, b = F.add(a, a_cols[:, j]), F.add(b, b_cols[:, j])
            u = F.pow(F.elements, m)[None, :]
            terms = [(psi, F.mul(a[:, None], u))]
            terms += [(chi, F.sub(b_cols[:, j, None], F.mul(a_cols[:, j, None], u)))
                      for j, chi in enumerate(chis)]
            lhs = G.prod(terms).sum(axis=1)
            holds = {}
            for r in T3_READINGS:
                psi2 = _t3_psi2(G, m, r)
                rhs = None
                for k in range(m):
                    term = G.eval(psi2**k, a) * dists[k][b]
                    rhs = term if rhs is None else rhs + term
                holds[r] = lhs.equal(rhs)
            for pos, i in enumerate(idx):
                hs = [r for r in T3_READINGS if holds[r][pos]]
                out[i] = (_status("order2_power" in hs), "+".join(hs) if hs else "none")
        return out

    def summarize(self, G, cells, outcomes):
        counts = {r: sum(1 for _, t in outcomes if t and r in t.split("+")) for r in T3_READINGS}
        return {"readings": counts, "cells": len(outcomes)}


# --- psi_(1,1,1), phi_(1,1,1), psi_(2,2,2) via 2F1 -----------------------------------------

def _mod6_reason(G):
    return None if G.n % 6 == 0 else f"q = {G.q} is not 1 mod 6"


class ShiftedCubic(Check):
    kind = ""
    kind_key = ""
    default_samples = 5000

    def field_hypothesis(self, G):
        return _mod6_reason(G)

    def space(self, G, seed, samples, options):
        nz = G.field.nonzero
        return ParamSpace([Part("main", ("a", "b", "c"), (nz, nz, nz), _distinct)])

    def _hyp(self, G, a, b, c, h):
        raise NotImplementedError

    def _direct(self, G, a, b, c) -> int:
        raise NotImplementedError

    def _lead(self, sd: cv.ShiftData) -> int:
        raise NotImplementedError

    def evaluate_one(self, G, cell):
        _, a, b, c = cell
        hs = cv.solve_h(G, self.kind_key, a, b, c)
        direct = self._direct(G, a, b, c)
        usable = [h for h in hs if self._lead(cv.shift_data(G, a, b, c, h)) != 0]
        if not usable:
            reason = "no nonzero root h" if not hs else "shifted quadratic coefficient vanishes"
            return CellResult("hypothesis_unmet", direct, None, {"roots": hs, "reason": reason})
        rhs = {h: self._hyp(G, a, b, c, h) for h in usable}
        bad = [h for h in usable if rhs[h] != direct]
        trace = None
        if bad:
            trace = {"roots": usable, "rhs_by_root": {str(h): rhs[h] for h in usable},
                     "shift_data": {str(h): asdict(cv.shift_data(G, a, b, c, h)) for h in usable}}
        return CellResult(_status(not bad), direct, rhs[usable[0]], trace)

    def evaluate_many(self, G, cells):
        arr = np.array([c[1:] for c in cells])
        a, b, c = arr[:, 0], arr[:, 1], arr[:, 2]
        h, valid = cv.shift_roots_many(G, self.kind_key, a, b, c)
        direct = _ints(G, self._direct_many(G, a, b, c))
        used = np.zeros(len(cells), dtype=bool)
        good = np.ones(len(cells), dtype=bool)
        for j in range(2):
            val, zero_lead = self._hyp_many(G, a, b, c, h[:, j])
            use = valid[:, j] & ~zero_lead
            used |= use
            good &= ~use | val.equal(direct)
        return [("hypothesis_unmet", None) if not u else (_status(bool(g)), None)
                for u, g in zip(used, good)]

    def summarize(self, G, cells, outcomes):
        unmet = sum(1 for s, _ in outcomes if s == "hypothesis_unmet")
        return {"hypothesis_unmet_fraction": round(unmet / len(outcomes), 6) if outcomes else None}


@register
class PsiOneOneOne(ShiftedCubic):
    id = "t3_4"
    kind_key = "t34"

    def _lead(self, sd):
        return sd.dCoef

    def _hyp(self, G, a, b, c, h):
        return cv.psi111_hyp(G, a, b, c, h)

    def _hyp_many(self, G, a, b, c, h):
        return cv.psi111_hyp_many(G, a, b, c, h)

    def _direct(self, G, a, b, c):
        return _gen_int_scalar(G, "gen_psi", (1, 1, 1), (a, b, c))

    def _direct_many(self, G, a, b, c):
        return _gen_psi_int(G, [1, 1, 1], [a, b, c])


@register
class PhiOneOneOne(ShiftedCubic):
    id = "t3_5"
    kind_key = "t35"

    def _lead(self, sd):
        return sd.fCoef

    def _hyp(self, G, a, b, c, h):
        return cv.phi111_hyp(G, a, b, c, h)

    def _hyp_many(self, G, a, b, c, h):
        return cv.phi111_hyp_many(G, a, b, c, h)

    def _direct(self, G, a, b, c):
        return _gen_int_scalar(G, "gen_phi", (1, 1, 1), (a, b, c))

    def _direct_many(self, G, a, b, c):
        return _gen_phi_int(G, [1, 1, 1], [a, b, c])


@register
class PsiTwoTwoTwo(Check):
    id = "t3_6"
    description = "psi_(2,2,2) when one h solves both shift quadratics"

    def field_hypothesis(self, G):
        return _mod6_reason(G)

    def space(self, G, seed, samples, options):
        nz = G.field.nonzero
        return ParamSpace([Part("main", ("a", "b", "c"), (nz, nz, nz), _distinct)])

    def _common_roots(self, G, a, b, c):
        return sorted(set(cv.solve_h(G, "t34", a, b, c)) & set(cv.solve_h(G, "t35", a, b, c)))

    def evaluate_one(self, G, cell):
        _, a, b, c = cell
        direct = _gen_int_scalar(G, "gen_psi", (2, 2, 2), (a, b, c))
        hs = []
        for h in self._common_roots(G, a, b, c):
            sd = cv.shift_data(G, a, b, c, h)
            if sd.dCoef and sd.eCoef and sd.fCoef:
                hs.append(h)
        if not hs:
            return CellResult("hypothesis_unmet", direct, None)
        rhs = {h: cv.psi222_hyp(G, a, b, c, h) for h in hs}
        bad = [h for h in hs if rhs[h] != direct]
        sd = cv.shift_data(G, a, b, c, hs[0])
        tag = "six_distinct" if _distinct((a, b, c, sd.dCoef, sd.eCoef, sd.fCoef)) else "nonzero_only"
        trace = None
        if bad:
            trace = {"roots": hs, "rhs_by_root": {str(h): rhs[h] for h in hs},
                     "shift_data": {str(h): asdict(cv.shift_data(G, a, b, c, h)) for h in hs}}
        return CellResult(_status(not bad), direct, rhs[hs[0]], trace, tag)

    def evaluate_many(self, G, cells):
        arr = np.array([c[1:] for c in cells])
        a, b, c = arr[:, 0], arr[:, 1], arr[:, 2]
        h4, v4 = cv.shift_roots_many(G, "t34", a, b, c)
        h5, v5 = cv.shift_roots_many(G, "t35", a, b, c)
        hit = np.zeros(len(cells), dtype=bool)
        for i in range(2):
            for j in range(2):
                hit |= v4[:, i] & v5[:, j] & (h4[:, i] == h5[:, j])
        out = []
        for cell, hh in zip(cells, hit):
            if not hh:
                out.append(("hypothesis_unmet", None))
            else:
                r = self.evaluate_one(G, cell)
                out.append((r.status, r.tag))
        return out

    def summarize(self, G, cells, outcomes):
        tags = Counter(t for s, t in outcomes if s != "hypothesis_unmet")
        return {"hypothesis": "a, b, c distinct; common nonzero root h; dCoef, eCoef, fCoef nonzero",
                "hits": sum(tags.values()), "hits_six_distinct": tags["six_distinct"]}


# --- trinomial closed forms ------------------------------------------------------------------

class Trinomial(Check):
    degrees: tuple[int, ...] = ()

    def _degrees(self, G):
        return [d for d in self.degrees if G.n % (2 * d * (d - 1)) == 0]

    def field_hypothesis(self, G):
        if not self._degrees(G):
            mods = ", ".join(str(2 * d * (d - 1)) for d in self.degrees)
            return f"q = {G.q} is not 1 mod any of {mods}"
        return None

    def space(self, G, seed, samples, options):
        nz = G.field.nonzero
        return ParamSpace([Part("main", ("d", "a", "b"), (self._degrees(G), nz, nz))])

    def evaluate_one(self, G, cell):
        _, d, a, b = cell
        f = cv.CurveSpec("Trinomial", d=d, a=a, b=b).poly(G)
        direct = cv.affine_direct(G, f)
        closed = cv.count_trinomial_hyp(G, d, a, b)
        return CellResult(_status(closed == direct), direct, closed)

    def evaluate_many(self, G, cells):
        F = G.field
        out = [None] * len(cells)
        for (d,), idx in _groups(cells, lambda c: c[1:2]).items():
            arr = np.array([cells[i][2:] for i in idx])
            a, b = arr[:, 0], arr[:, 1]
            x = F.elements[None, :]
            fx = F.add(F.add(F.pow(x, d), F.mul(a[:, None], F.pow(x, d - 1))), b[:, None])
            direct = F.squares[fx].sum(axis=1)
            eq = cv.count_trinomial_hyp_many(G, d, a, b).equal(_ints(G, direct))
            for i, ok in zip(idx, eq):
                out[i] = (_status(bool(ok)), None)
        return out


@register
class TrinomialEven(Trinomial):
    id = "bt1"
    degrees = (4,)


@register
class TrinomialOdd(Trinomial):
    id = "bt2"
    degrees = (3, 5)


# --- two counting routes for y^2 = f(x) ---------------------------------------------------------

def random_poly(G: CharacterGroup, poly_seed: int) -> list[int]:
    rng = random.Random(poly_seed)
    deg = rng.randint(3, 6)
    coeffs = [rng.randrange(G.q) for _ in range(deg)] + [rng.randrange(1, G.q)]
    return coeffs


@register
class PointCount(Check):
    id = "points_EC"
    default_samples = 100

    def space(self, G, seed, samples, options):
        return ParamSpace([Part("main", ("poly_seed",), (_derived_seeds(self.id, G, seed, samples),))])

    def evaluate_one(self, G, cell):
        f = random_poly(G, cell[1])
        direct = cv.count_direct(G, f)
        charsum = cv.count_charsum(G, f)
        ok = direct == charsum
        trace = {"poly": f}
        if G.q <= 13:
            loop = cv.r_of(len(f) - 1) + cv.affine_double_loop(G, f)
            ok = ok and loop == direct
            trace["double_loop"] = loop
        return CellResult(_status(ok), direct, charsum, None if ok else trace)


assert set(REGISTRY) == set(CHECK_IDS) and len(REGISTRY) == len(CHECK_IDS), "checker registry mismatch"


# --- driver ------------------------------------------------------------------------------------

@lru_cache(maxsize=None)
def group(p: int, e: int = 1, k: int = 2) -> CharacterGroup:
    return CharacterGroup.build(p, e, k)


def get_check(check_id: str) -> Check:
    try:
        return REGISTRY[check_id]
    except KeyError:
        raise UnknownCheck(check_id) from None


def _rng(seed: int, check_id: str, G: CharacterGroup) -> random.Random:
    return random.Random(f"{seed}:{check_id}:{G.field.p}:{G.field.e}")


def _cells(check: Check, G: CharacterGroup, sampling: Sampling, options: dict):
    samples = check.default_samples if sampling.samples is None else sampling.samples
    space = check.space(G, sampling.seed, samples, options)
    if space.size <= sampling.budget:
        return space, space.enumerate(), "exhaustive"
    return space, space.sample(_rng(sampling.seed, check.id, G), samples), "sampled"


def run_one(check_id: str, p: int, e: int = 1, sampling: Sampling = Sampling(), k: int = 2,
            options: dict | None = None) -> CheckReport:
    check = get_check(check_id)
    options = options or {}
    G = group(p, e, k)
    base = dict(check=check_id, field=(p, e), seed=sampling.seed, aux_primes=list(G.ctx.primes))
    reason = check.field_hypothesis(G)
    if reason:
        return CheckReport(params={"reason": reason}, status="hypothesis_unmet", lhs=None, rhs=None,
                           witness=None, trace=None, **base)
    space, cells, mode = _cells(check, G, sampling, options)
    outcomes = check.evaluate_many(G, cells) if cells else []
    counts = Counter(s for s, _ in outcomes)
    params = {"mode": mode, "space_size": space.size, "cells": len(cells),
              "counts": {s: counts[s] for s in ("pass", "fail", "hypothesis_unmet")}}
    params.update(check.summarize(G, cells, outcomes))
    if options:
        params["options"] = {key: list(v) for key, v in sorted(options.items())}
    first = {s: next((i for i, (st, _) in enumerate(outcomes) if st == s), None) for s in ("fail", "pass")}
    if counts["fail"]:
        status = "fail"
    elif counts["pass"]:
        status = "pass"
    elif counts["hypothesis_unmet"]:
        status = "hypothesis_unmet"
    else:
        status = "vacuous"
    lhs = rhs = witness = trace = None
    shown = first["fail"] if first["fail"] is not None else first["pass"]
    for key in ("fail", "pass"):
        i = first[key]
        if i is None:
            continue
        detail = check.evaluate_one(G, cells[i])
        if detail.status != key:
            raise InternalInconsistency(
                f"{check_id} at q={G.q}: cell {cells[i]} is {key} in batch but {detail.status} alone")
        if i == shown:
            lhs, rhs = _jsonable(G, detail.lhs), _jsonable(G, detail.rhs)
            trace = _jsonable(G, detail.trace)
            if key == "fail":
                witness = space.witness(cells[i])
    return CheckReport(params=params, status=status, lhs=lhs, rhs=rhs, witness=witness, trace=trace, **base)


def run_check(check_id: str, fields, sampling: Sampling = Sampling(), k: int = 2,
              options: dict | None = None) -> list[CheckReport]:
    get_check(check_id)
    return [run_one(check_id, p, e, sampling, k, options) for p, e in fields]


def replay(report: CheckReport | dict, k: int | None = None) -> CellResult:
    """Re-evaluate the witness of a failing report on its own."""
    if isinstance(report, dict):
        report = CheckReport.from_json(report)
    if report.witness is None:
        raise ValueError("report has no witness")
    check = get_check(report.check)
    p, e = report.field
    G = group(p, e, len(report.aux_primes) if k is None else k)
    # seeded parts need no regeneration: the witness carries the derived seed itself
    space = check.space(G, report.seed, 0, report.params.get("options", {}))
    return check.evaluate_one(G, space.cell_of(report.witness))


def _task(args):
    check_id, p, e, sampling, k = args
    return run_one(check_id, p, e, sampling, k).to_json()


def sweep(ids=None, q_min: int = 3, q_max: int = 49, sampling: Sampling = Sampling(), k: int = 2,
          workers: int = 1) -> dict:
    """Run checks over every odd prime power in [q_min, q_max]; ordered by (q, check)."""
    ids = list(CHECK_IDS if ids is None else ids)
    for i in ids:
        get_check(i)
    order = {c: n for n, c in enumerate(CHECK_IDS)}
    tasks = [(c, p, e, sampling, k) for p, e in odd_prime_powers(q_min, q_max)
             for c in sorted(set(ids), key=order.get)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_task, tasks))
    else:
        reports = [_task(t) for t in tasks]
    reports.sort(key=lambda r: (r["field"][0] ** r["field"][1], order[r["check"]]))
    return {"q_min": q_min, "q_max": q_max, "seed": sampling.seed, "aux_prime_count": k,
            "reports": reports, "summary": summary_rows(reports)}


def summary_rows(reports) -> list[dict]:
    """Per (check, q) cell counts; a field-level unmet hypothesis counts as one unmet cell."""
    rows = []
    for r in reports:
        counts = r["params"].get("counts", {})
        unmet = counts.get("hypothesis_unmet", 0)
        if r["status"] == "hypothesis_unmet" and not counts:
            unmet = 1
        rows.append({"check": r["check"], "q": r["field"][0] ** r["field"][1],
                     "pass": counts.get("pass", 0), "fail": counts.get("fail", 0),
                     "hypothesis_unmet": unmet, "vacuous": int(r["status"] == "vacuous")})
    return rows


def to_json(result: dict) -> str:
    return json.dumps(result, indent=2, sort_keys=False) + "\n"


def to_csv(result: dict) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["check", "q", "pass", "fail", "hypothesis_unmet", "vacuous"],
                       lineterminator="\n")
    w.writeheader()
    w.writerows(result["summary"])
    return buf.getvalue()


def to_text(result: dict) -> str:
    lines = []
    for row, r in zip(result["summary"], result["reports"]):
        line = (f"{row['check']:<12} q={row['q']:<3} {r['status']:<16} pass={row['pass']} "
                f"fail={row['fail']} unmet={row['hypothesis_unmet']}")
        if r["witness"]:
            line += f" witness={r['witness']}"
        lines.append(line)
    return "\n".join(lines) + "\n"
