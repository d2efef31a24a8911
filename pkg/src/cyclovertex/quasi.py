"""The quasi-module map Y_W on the twisted vacuum module, computed through the
quasi-iterate recursion, with the twisted commutator and quasi-Borcherds
checks."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .cycfield import LaurentSeries, inv, root
from .fields import CheckResult, _fail, borcherds_sides, leading_factor, support_top, y_apply
from .modes import mode, project_elem
from .verma import (TWISTED, UNTWISTED, Mono, State, _add, apply_loop, gamma_state,
                    mono_grade, smoothness_bound)
from .vla import VlaElem, VlaPresentation, gamma_weight, gbinom


@lru_cache(maxsize=None)
def kappa(T: int, e: int, j: int):
    """sum over alpha != 1 of alpha^e (alpha - 1)^(-j-1)."""
    total = Fraction(0)
    for k in range(1, T):
        a = root(T, k)
        total = total + root(T, k * e) * inv(a - 1) ** (j + 1)
    return total


def _check_kinds(A: State, w: State) -> None:
    if A.kind != UNTWISTED:
        raise ValueError("the left argument of Y_W lives in V(L)")
    if w.kind != TWISTED:
        raise ValueError("Y_W acts on the twisted module")


@lru_cache(maxsize=1_000_000)
def _yw(P: VlaPresentation, monoA: Mono, monoW: Mono, n: int) -> tuple:
    if not monoA:
        return ((monoW, Fraction(1)),) if n == -1 else ()
    gA = mono_grade(P, monoA)
    gW = mono_grade(P, monoW)
    if gA + gW - n - 1 < 0:
        return ()
    X, rest = leading_factor(P, monoA)
    m0, gi = monoA[0]
    a = P.generators[gi].name
    dpow = -m0 - 1
    degX = P.deg(a) + dpow
    gR = gA - degX
    T = P.order
    w = State(P, TWISTED, {monoW: Fraction(1)})
    R = State(P, UNTWISTED, {rest: Fraction(1)})
    acc: dict = {}
    # normal ordered product of the twisted field of X with Y_W(R, u)
    for k in range(min(n - gR - gW, -1), 0):
        xg = project_elem(P, X, k)
        if not xg:
            continue
        inner = yw_mono(P, rest, w, n - k - 1)
        if inner:
            for mono, c in apply_loop(xg, inner).terms.items():
                _add(acc, mono, c)
    for k in range(0, degX + gW):
        xg = project_elem(P, X, k)
        if not xg:
            continue
        xw = apply_loop(xg, w)
        if xw:
            for mono, c in yw_mono(P, rest, xw, n - k - 1).terms.items():
                _add(acc, mono, c)
    # pole correction from the points alpha u, alpha != 1
    if T > 1:
        e = gamma_weight(P, a, dpow)
        for j in range(0, degX + gR):
            xr = apply_loop(mode(P, X, j), R)
            if not xr:
                continue
            kap = kappa(T, e, j)
            if not kap:
                continue
            for mono, c in yw_apply_modes(xr, w, n - j - 1).terms.items():
                _add(acc, mono, kap * c)
    return tuple(acc.items())


def yw_mono(P: VlaPresentation, monoA: Mono, w: State, n: int) -> State:
    acc: dict = {}
    for mw, cw in w.terms.items():
        for mono, c in _yw(P, monoA, mw, n):
            _add(acc, mono, cw * c)
    return State(P, TWISTED, acc)


def yw_apply_modes(A: State, w: State, n: int) -> State:
    """A^W_(n) w."""
    _check_kinds(A, w)
    P = A.P
    acc: dict = {}
    for ma, ca in A.terms.items():
        for mw, cw in w.terms.items():
            for mono, c in _yw(P, ma, mw, n):
                _add(acc, mono, ca * cw * c)
    return State(P, TWISTED, acc)


def pole_bound(A: State, w: State) -> int:
    return A.max_grade() + w.max_grade()


def yw_apply(A: State, w: State, K: int = 8) -> LaurentSeries:
    """Y_W(A, u) w truncated at u^K, as a series at u = 0 with State coefficients."""
    _check_kinds(A, w)
    if K < -1:
        raise ValueError("truncation order K must be at least -1 to hold the principal part")
    lo = -pole_bound(A, w)
    coeffs = [yw_apply_modes(A, w, -o - 1) for o in range(lo, K + 1)]
    s = LaurentSeries(0, lo, coeffs, K)
    worst = A.max_grade() + w.max_grade() + A.P.order * A.depth()
    got = next((o for o, c in s.items() if c), 0)
    assert -got <= worst, "pole order exceeds the grading bound"
    return s


def yw_composite(A: State, B: State, w: State, n: int) -> State:
    """(A_(-1) B)^W_(n) w with a composite left factor A.

    Normal ordered product of Y_W(A,u) and Y_W(B,u) plus the pole terms
    ((alpha-1) u)^(-j-1) Y_W((R_alpha A)_(j) B, u).
    """
    P = A.P
    T = P.order
    gA, gB, gw = A.max_grade(), B.max_grade(), w.max_grade()
    out = State(P, TWISTED)
    for k in range(min(n - gB - gw, -1), 0):
        inner = yw_apply_modes(B, w, n - k - 1)
        if inner:
            out = out + yw_apply_modes(A, inner, k)
    for k in range(0, gA + gw):
        aw = yw_apply_modes(A, w, k)
        if aw:
            out = out + yw_apply_modes(B, aw, n - k - 1)
    for kk in range(1, T):
        RA = gamma_state(P, kk, A)
        d = inv(root(T, kk) - 1)
        for j in range(0, gA + gB):
            ab = y_apply(RA, B, j)
            if ab:
                out = out + yw_apply_modes(ab, w, n - j - 1).scale(d ** (j + 1))
    return out


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def check_wcom(A: State, B: State, m: int, n: int, w: State) -> CheckResult:
    """[A^W_(m), B^W_(n)] w = sum_k C(m,k) sum_alpha alpha^(-n-1) (A_(k) R_alpha B)^W_(m+n-k) w."""
    P = A.P
    T = P.order
    lhs = (yw_apply_modes(A, yw_apply_modes(B, w, n), m)
           - yw_apply_modes(B, yw_apply_modes(A, w, m), n))
    rhs = State(P, TWISTED)
    for kk in range(T):
        RB = gamma_state(P, kk, B)
        c = root(T, -kk * (n + 1))
        for k in range(0, support_top(A, RB) + 1):
            prod = y_apply(A, RB, k)
            if prod:
                rhs = rhs + yw_apply_modes(prod, w, m + n - k).scale(gbinom(m, k) * c)
    if lhs != rhs:
        return _fail(1, m=m, n=n, lhs=lhs, rhs=rhs)
    return CheckResult(True, 1)


def p_power(T: int, k: int) -> dict[int, int]:
    """p(x,y)^k = ((x^T - y^T)/(x - y))^k as {i: coefficient of x^i y^(k(T-1)-i)}."""
    poly = {0: 1}
    for _ in range(k):
        nxt: dict[int, int] = {}
        for i, c in poly.items():
            for j in range(T):
                nxt[i + j] = nxt.get(i + j, 0) + c
        poly = nxt
    return poly


def quasi_borcherds_residual(A: State, B: State, w: State, f_exponents: tuple[int, int, int],
                             k: int, window: int = 3):
    """First failing y-coefficient with p^k inserted, or None when all agree."""
    P = A.P
    T = P.order
    p, q, r = f_exponents
    deg_shift = k * (T - 1)
    top = A.max_grade() + B.max_grade() + w.max_grade() - p - q - deg_shift - r - 2
    zero = State(P, TWISTED)
    poly = p_power(T, k)
    for N in range(top + 1, top - window - 1, -1):
        lhs, rhs = zero, zero
        for i, c in poly.items():
            l, rr = borcherds_sides(A, B, w, p + i, q + deg_shift - i, r, N,
                                    yw_apply_modes, yw_apply_modes, zero)
            lhs = lhs + l.scale(c)
            rhs = rhs + rr.scale(c)
        if lhs != rhs:
            return {"N": N, "lhs": str(lhs), "rhs": str(rhs)}
    return None


def check_quasi_borcherds(A: State, B: State, w: State, f_exponents: tuple[int, int, int],
                          k_max: int = 6, window: int = 3) -> CheckResult:
    """Search the smallest k <= k_max for which the identity holds."""
    residual = None
    for k in range(k_max + 1):
        residual = quasi_borcherds_residual(A, B, w, f_exponents, k, window)
        if residual is None:
            return CheckResult(True, k + 1, info={"k": k})
    return CheckResult(False, k_max + 1, {"k_max": str(k_max), **residual})


def check_periodicity(A: State, w: State, K: int = 5) -> CheckResult:
    """Y_W(R_alpha A, alpha u) = Y_W(A, u), coefficientwise, for every alpha."""
    P = A.P
    T = P.order
    base = yw_apply(A, w, K)
    for kk in range(T):
        s = yw_apply(gamma_state(P, kk, A), w, K)
        for o, c in s.items():
            # coefficient of u^o picks up alpha^o under u -> alpha u
            if c.scale(root(T, kk * o)) != base.coefficient(o):
                return _fail(kk + 1, alpha=kk, order=o, lhs=c.scale(root(T, kk * o)),
                             rhs=base.coefficient(o))
    return CheckResult(True, T)


def twisted_mode_series(P: VlaPresentation, a: str, w: State, K: int) -> LaurentSeries:
    """sum_n a^Gamma(n) w u^(-n-1), the base case of the recursion, from the modes directly."""
    lo = -(smoothness_bound(P, a, w) + 1)
    coeffs = []
    for o in range(lo, K + 1):
        x = project_elem(P, VlaElem.gen(a), -o - 1)
        coeffs.append(apply_loop(x, w) if x else State(P, TWISTED))
    return LaurentSeries(0, lo, coeffs, K)

