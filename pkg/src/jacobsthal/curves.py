"""Point counts on y^2 = f(x) and the hypergeometric closed forms for them.

Families:
  * ``Em``       y^2 = (x^m + a)(x^m + b)(x^m + c)
  * ``EmPrime``  y^2 = x (x^m + a)(x^m + b)(x^m + c)
  * ``Trinomial``  y^2 = x^d + a x^(d-1) + b
  * ``General``  arbitrary coefficient list (field encodings, low degree first)
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .characters import Character, CharacterGroup, HypothesisError
from .cyclo import CycloValue
from .hypergeom import _chi_matrix, binom_table, fpq, fpq_many, fpq_table

CURVE_KINDS = ("Em", "EmPrime", "Trinomial", "General")
TRINOMIAL_DEGREES = (3, 4, 5)


@dataclass(frozen=True)
class CurveSpec:
    kind: str
    m: int = 1
    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 3
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in CURVE_KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if self.kind in ("Em", "EmPrime"):
            if self.m < 1:
                raise ValueError("m must be >= 1")
            abc = (self.a, self.b, self.c)
            if 0 in abc or len(set(abc)) != 3:
                raise ValueError("a, b, c must be distinct and nonzero")
        elif self.kind == "Trinomial":
            if self.d < 2 or self.a == 0 or self.b == 0:
                raise ValueError("trinomial needs d >= 2 and nonzero a, b")
        elif len(self.coeffs) < 2 or self.coeffs[-1] == 0:
            raise ValueError("general curve needs degree >= 1 with nonzero leading coefficient")

    def poly(self, G: CharacterGroup) -> list[int]:
        """Coefficients of f as field encodings, low degree first."""
        F = G.field
        if self.kind in ("Em", "EmPrime"):
            a, b, c = self.a, self.b, self.c
            s1 = F.add(F.add(a, b), c)
            s2 = F.add(F.add(F.mul(a, b), F.mul(b, c)), F.mul(c, a))
            s3 = F.mul(F.mul(a, b), c)
            m = self.m
            f = [0] * (3 * m + 1)
            f[0], f[m], f[2 * m], f[3 * m] = s3, s2, s1, 1
            if self.kind == "EmPrime":
                f = [0] + f
            return f
        if self.kind == "Trinomial":
            f = [0] * (self.d + 1)
            f[0], f[self.d - 1], f[self.d] = self.b, self.a, 1
            return f
        return list(self.coeffs)


def r_of(degree: int) -> int:
    """Rational points at infinity: 1 for odd degree, 2 for even."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    return 1 if degree % 2 else 2


def _degree(f) -> int:
    return len(f) - 1


def f_values(G: CharacterGroup, f, x=None) -> np.ndarray:
    x = G.field.elements if x is None else x
    return G.field.poly_eval(f, x)


def affine_direct(G: CharacterGroup, f) -> int:
    """#{(x, y) : y^2 = f(x)} from the table of square-root counts."""
    return int(G.field.squares[f_values(G, f)].sum())


def affine_double_loop(G: CharacterGroup, f) -> int:
    """Same count by the literal O(q^2) loop over (x, y)."""
    F = G.field
    fx = f_values(G, f)
    ysq = F.mul(F.elements, F.elements)
    return int((fx[:, None] == ysq[None, :]).sum())


def count_direct(G: CharacterGroup, f) -> int:
    return r_of(_degree(f)) + affine_direct(G, f)


def count_charsum(G: CharacterGroup, f) -> int:
    """r + q + sum_x phi(f(x))."""
    s = G.eval(G.phi, f_values(G, f)).sum()
    return r_of(_degree(f)) + G.q + s.as_integer(-G.q, G.q, strict=True)


# --- closed forms for E_m and E'_m -------------------------------------------------

def statement_r(m: int) -> int:
    """The point-at-infinity count as the closed form states it: 1 if m is odd, else 2."""
    return 1 if m % 2 else 2


def _check_em(G: CharacterGroup, m: int):
    if G.n % (2 * m):
        raise HypothesisError(f"q = {G.q} is not 1 mod {2 * m}")


def _em_kernels(G: CharacterGroup, family: str, m: int) -> list[CycloValue]:
    """Per k, the matrix K_k[t, s] of binomial products so that
    2F1(phi, T^t B_k; T^t C_k | r) = q/(q-1) sum_s K_k[t, s] T^s(r).
    """
    key = ("em_kernel", family, m)
    if key in G._cache:
        return G._cache[key]
    n = G.n
    tab = binom_table(G)
    step = n // (2 * m)
    t = np.arange(n)[:, None]
    s = np.arange(n)[None, :]
    phi = n // 2
    first = tab[(phi + s) % n, s]
    out = []
    for k in range(m):
        if family == "Em":
            beta, gamma = 2 * k * step, (m + 2 * k) * step
        else:
            beta, gamma = (2 * k + 1) * step, (m + 2 * k + 1) * step
        out.append(first * tab[(t + beta + s) % n, (t + gamma + s) % n])
    G._cache[key] = out
    return out


def em_hyp_part(G: CharacterGroup, family: str, m: int, b: int, c: int, a_values) -> CycloValue:
    """Hypergeometric term H of #E = r + q + H, batched over a.

    E_m:  H = q^2 phi(-abc)/(q-1) sum_k sum_chi binom(phi, chi) chi-bar(a) chi chi_m^k(-b)
              2F1(phi, chi chi_m^k; chi chi_2m^(m+2k) | b/c)
    E'_m: H = q^2 phi(-abc)/(q-1) sum_k chi_2m^(2k+1)(-b) sum_chi binom(phi, chi) chi(-b/a)
              2F1(phi, chi chi_2m^(2k+1); chi chi_2m^(m+2k+1) | b/c)
    """
    _check_em(G, m)
    F, n = G.field, G.n
    a_values = np.asarray(a_values)
    step = n // (2 * m)
    ratio = F.div(b, c)
    chi_r = _chi_matrix(G, np.array([ratio]))[0]  # T^s(b/c)
    minus_b = F.neg(b)
    tab = binom_table(G)
    t = np.arange(n)
    acc = None
    for k, K in enumerate(_em_kernels(G, family, m)):
        f21 = (K @ chi_r) * G.rational(G.q, G.n)  # over t
        if family == "Em":
            twist = G.value(Character(2 * k * step, n), minus_b)
        else:
            twist = G.value(Character((2 * k + 1) * step, n), minus_b)
        term = f21 * twist
        acc = term if acc is None else acc + term
    # v[t] = binom(phi, T^t) T^t(-b) * acc[t]; then sum_t v[t] T^-t(a)
    v = tab[n // 2, t] * acc * G.ctx.root_of_unity(t * F.log[minus_b])
    chi_a = _chi_matrix(G, a_values)  # [a, t] = T^t(a)
    conj_idx = (-t) % n
    H = chi_a[:, conj_idx] @ v
    abc = F.mul(F.mul(a_values, b), c)
    pref = G.eval(G.phi, F.neg(abc)) * G.rational(G.q**2, G.n)
    return H * pref


def count_Em_hyp(G: CharacterGroup, m: int, a: int, b: int, c: int, r: int | None = None) -> CycloValue:
    r = statement_r(m) if r is None else r
    return em_hyp_part(G, "Em", m, b, c, [a])[0] + (r + G.q)


def count_EmPrime_hyp(G: CharacterGroup, m: int, a: int, b: int, c: int, r: int | None = None) -> CycloValue:
    r = statement_r(m) if r is None else r
    return em_hyp_part(G, "EmPrime", m, b, c, [a])[0] + (r + G.q)


# --- psi_(1,1,1), phi_(1,1,1), psi_(2,2,2) via shifted cubics -----------------------------

@dataclass(frozen=True)
class ShiftData:
    h: int
    dCoef: int
    eCoef: int
    fCoef: int
    gCoef: int


def _require_mod6(G: CharacterGroup):
    if G.q % 6 != 1:
        raise HypothesisError(f"q = {G.q} is not 1 mod 6")


def _sym(G: CharacterGroup, a, b, c):
    F = G.field
    s1 = F.add(F.add(a, b), c)
    s2 = F.add(F.add(F.mul(a, b), F.mul(b, c)), F.mul(c, a))
    s3 = F.mul(F.mul(a, b), c)
    return s1, s2, s3


def _t35_coeffs(G: CharacterGroup, a, b, c):
    """(u, v, w) with f = 3h + u and the quadratic 3h^2 + 2u h + v = 0; w = a^2/(bc)."""
    F = G.field
    _, s2, _ = _sym(G, a, b, c)
    ibc = F.inv(F.mul(b, c))
    u = F.mul(s2, ibc)
    a2 = F.mul(a, a)
    v = F.mul(F.add(F.add(F.mul(a, b), F.mul(c, a)), a2), ibc)
    w = F.mul(a2, ibc)
    return u, v, w


def _quadratic_roots(G: CharacterGroup, lin: int, const: int) -> list[int]:
    """Nonzero roots of 3h^2 + 2*lin*h + const = 0."""
    F = G.field
    three = F.element(3)
    disc = F.sub(F.mul(F.element(4), F.mul(lin, lin)), F.mul(F.element(12), const))
    roots = set()
    inv6 = F.inv(F.element(6))
    for s in F.sqrt(disc):
        roots.add(F.mul(F.add(F.neg(F.mul(F.element(2), lin)), s), inv6))
    for h in roots:
        assert F.add(F.add(F.mul(three, F.mul(h, h)), F.mul(F.mul(F.element(2), lin), h)), const) == 0
    return sorted(h for h in roots if h != 0)


def solve_h(G: CharacterGroup, kind: str, a: int, b: int, c: int) -> list[int]:
    """Nonzero h solving the shift quadratic of ``t34`` or ``t35``."""
    _require_mod6(G)
    if kind == "t34":
        s1, s2, _ = _sym(G, a, b, c)
        return _quadratic_roots(G, s1, s2)
    if kind == "t35":
        u, v, _ = _t35_coeffs(G, a, b, c)
        return _quadratic_roots(G, u, v)
    raise ValueError(f"unknown shift kind {kind!r}")


def shift_data(G: CharacterGroup, a: int, b: int, c: int, h: int) -> ShiftData:
    F = G.field
    three = F.element(3)
    s1, s2, s3 = _sym(G, a, b, c)
    h2 = F.mul(h, h)
    h3 = F.mul(h2, h)
    d = F.add(F.mul(three, h), s1)
    e = F.add(F.add(F.add(h3, F.mul(s1, h2)), F.mul(s2, h)), s3)
    u, v, w = _t35_coeffs(G, a, b, c)
    f = F.add(F.mul(three, h), u)
    g = F.add(F.add(F.add(h3, F.mul(u, h2)), F.mul(v, h)), w)
    return ShiftData(h, d, e, f, g)


def _sextic_f21(G: CharacterGroup, lead: int, const: int) -> CycloValue:
    """q phi(-3 lead) 2F1(T^((q-1)/6), T^(5(q-1)/6); eps | -27 const / (4 lead^3))."""
    F = G.field
    if lead == 0:
        raise HypothesisError("shifted quadratic coefficient vanishes")
    arg = F.neg(F.div(F.mul(F.element(27), const), F.mul(F.element(4), F.pow(lead, 3))))
    sixth = G.n // 6
    series = fpq(G, [G.T(sixth), G.T(5 * sixth)], [G.eps], arg)
    return series * G.value(G.phi, F.neg(F.mul(F.element(3), lead))) * G.q


def shift_roots_many(G: CharacterGroup, kind: str, a, b, c) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`solve_h`: roots (N, 2) sorted per row and a validity mask."""
    _require_mod6(G)
    F = G.field
    if kind == "t34":
        lin, const, _ = _sym(G, a, b, c)
    elif kind == "t35":
        lin, const, _ = _t35_coeffs(G, a, b, c)
    else:
        raise ValueError(f"unknown shift kind {kind!r}")
    lin, const = np.atleast_1d(lin), np.atleast_1d(const)
    disc = F.sub(F.mul(F.element(4), F.mul(lin, lin)), F.mul(F.element(12), const))
    ld = F.log[disc]
    root = np.where(ld >= 0, F.exp[np.maximum(ld, 0) // 2], 0)
    has = (disc == 0) | ((ld >= 0) & (ld % 2 == 0))
    inv6 = F.inv(F.element(6))
    m2lin = F.neg(F.mul(F.element(2), lin))
    h1 = F.mul(F.add(m2lin, root), inv6)
    h2 = F.mul(F.sub(m2lin, root), inv6)
    h = np.sort(np.stack([h1, h2], axis=1), axis=1)
    valid = np.stack([has, has & (disc != 0)], axis=1) & (h != 0)
    return h, valid


def _sextic_f21_many(G: CharacterGroup, lead, const) -> CycloValue:
    F = G.field
    safe = np.where(lead == 0, 1, lead)
    arg = F.neg(F.div(F.mul(F.element(27), const), F.mul(F.element(4), F.pow(safe, 3))))
    sixth = G.n // 6
    series = fpq_table(G, [G.T(sixth), G.T(5 * sixth)], [G.eps])[arg]
    return series * G.eval(G.phi, F.neg(F.mul(F.element(3), lead))) * G.q


def psi111_hyp_many(G: CharacterGroup, a, b, c, h) -> tuple[CycloValue, np.ndarray]:
    """Vectorized :func:`psi111_hyp`; second item flags cells with dCoef == 0."""
    sd = shift_data(G, a, b, c, h)
    return _sextic_f21_many(G, sd.dCoef, sd.eCoef), sd.dCoef == 0


def phi111_hyp_many(G: CharacterGroup, a, b, c, h) -> tuple[CycloValue, np.ndarray]:
    sd = shift_data(G, a, b, c, h)
    val = _sextic_f21_many(G, sd.fCoef, sd.gCoef) * G.eval(G.phi, G.field.mul(b, c)) - 1
    return val, sd.fCoef == 0


def psi111_hyp(G: CharacterGroup, a: int, b: int, c: int, h: int) -> CycloValue:
    _require_mod6(G)
    sd = shift_data(G, a, b, c, h)
    return _sextic_f21(G, sd.dCoef, sd.eCoef)


def phi111_hyp(G: CharacterGroup, a: int, b: int, c: int, h: int) -> CycloValue:
    _require_mod6(G)
    F = G.field
    sd = shift_data(G, a, b, c, h)
    return _sextic_f21(G, sd.fCoef, sd.gCoef) * G.value(G.phi, F.mul(b, c)) - 1


def psi222_hyp(G: CharacterGroup, a: int, b: int, c: int, h: int) -> CycloValue:
    _require_mod6(G)
    return psi111_hyp(G, a, b, c, h) + phi111_hyp(G, a, b, c, h)


# --- trinomial family --------------------------------------------------------------

def trinomial_parameters(G: CharacterGroup, d: int) -> tuple[list[Character], list[Character]]:
    """Upper and lower character lists of the closed form for degree d."""
    if d % 2 == 0:
        chi = G.char_of_order(d)
        psi = G.char_of_order(2 * (d - 1))
        uppers = [G.phi, G.eps]
        uppers += [chi**i for i in range(1, (d - 2) // 2 + 1)]
        uppers += [chi**i for i in range((d + 2) // 2, d)]
        lowers = [G.phi]
        lowers += [psi**i for i in range(1, d - 2, 2)]
        lowers += [psi**i for i in range(d + 1, 2 * d - 2, 2)]
    else:
        eta = G.char_of_order(2 * d)
        rho = G.char_of_order(d - 1)
        uppers = [eta**i for i in range(1, d - 1, 2)]
        uppers += [eta**i for i in range(d + 2, 2 * d - 2, 2)]
        uppers += [eta ** (2 * d - 1)]
        lowers = [rho**i for i in range(1, (d - 3) // 2 + 1)]
        lowers += [rho**i for i in range((d + 1) // 2, d - 1)]
        lowers += [G.eps]
    return uppers, lowers


def _check_trinomial(G: CharacterGroup, d: int):
    if d not in TRINOMIAL_DEGREES:
        raise ValueError(f"trinomial degree {d} outside supported {TRINOMIAL_DEGREES}")
    if G.n % (2 * d * (d - 1)):
        raise HypothesisError(f"q = {G.q} is not 1 mod {2 * d * (d - 1)}")


def trinomial_alpha(G: CharacterGroup, d: int, a: int, b: int) -> int:
    """b d^d / (a^d (d-1)^(d-1))."""
    F = G.field
    num = F.mul(b, F.pow(F.element(d), d))
    den = F.mul(F.pow(a, d), F.pow(F.element(d - 1), d - 1))
    return F.div(num, den)


def count_trinomial_hyp(G: CharacterGroup, d: int, a: int, b: int) -> CycloValue:
    """Closed form for the affine count #{(x, y) : y^2 = x^d + a x^(d-1) + b}."""
    _check_trinomial(G, d)
    if a == 0 or b == 0:
        raise ValueError("a and b must be nonzero")
    return count_trinomial_hyp_many(G, d, np.array([a]), np.array([b]))[0]


def count_trinomial_hyp_many(G: CharacterGroup, d: int, a, b) -> CycloValue:
    _check_trinomial(G, d)
    F = G.field
    a, b = np.asarray(a), np.asarray(b)
    uppers, lowers = trinomial_parameters(G, d)
    alpha = trinomial_alpha(G, d, a, b)
    if d % 2 == 0:
        series = fpq_many(G, uppers, lowers, alpha)
        pref = G.value(G.phi, F.element(d - 1)) * G.q ** (d // 2)
        return series * pref + G.eval(G.phi, b) + G.q
    series = fpq_many(G, uppers, lowers, F.neg(alpha))
    pref = G.eval(G.phi, F.neg(F.mul(a, F.element(d)))) * G.q ** ((d - 1) // 2)
    return series * pref + G.q


# --- sums over x^m with m a power of two ---------------------------------------------

def t3_lhs(G: CharacterGroup, m: int, psi: Character, chis, a_list, b_list) -> CycloValue:
    """sum_x psi(a x^m) prod_i chi_i(b_i - a_i x^m) with a = sum a_i."""
    F = G.field
    u = F.pow(F.elements, m)
    a = 0
    for ai in a_list:
        a = F.add(a, ai)
    terms = [(psi, F.mul(a, u))]
    terms += [(chi, F.sub(bi, F.mul(ai, u))) for chi, ai, bi in zip(chis, a_list, b_list)]
    return G.sum(terms)


def t3_rhs(G: CharacterGroup, m: int, psi: Character, chis, a_list, b_list, psi2: Character) -> CycloValue:
    """sum_k psi2^k(a) J_b(psi_m^k psi, chi_1, ..., chi_n) with psi_m of order m."""
    from .charsums import jacobi_distribution

    F = G.field
    psi_m = G.char_of_order(m)
    a = b = 0
    for ai, bi in zip(a_list, b_list):
        a, b = F.add(a, ai), F.add(b, bi)
    total = G.ctx.zero()
    for k in range(m):
        J = jacobi_distribution(G, [psi_m**k * psi, *chis])[b]
        total = total + G.value(psi2**k, a) * J
    return total
