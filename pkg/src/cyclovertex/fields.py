"""State-field correspondence Y on V(L) through the iterate formula, and exact
checks of the vertex algebra identities it satisfies."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable

from .cycfield import root
from .modes import mode
from .verma import (UNTWISTED, Mono, State, _add, apply_loop, gamma_state, mono_grade,
                    translate)
from .vla import VlaElem, VlaPresentation, gbinom


def leading_factor(P: VlaPresentation, mono: Mono) -> tuple[VlaElem, Mono]:
    """Split a(-j-1) R as X(-1) R with X = D^j a / j!."""
    (m, i), rest = mono[0], mono[1:]
    j = -m - 1
    X = VlaElem.gen(P.generators[i].name, j, Fraction(1, factorial(j)))
    return X, rest


@lru_cache(maxsize=1_000_000)
def _y(P: VlaPresentation, monoA: Mono, monoB: Mono, n: int) -> tuple:
    if not monoA:
        return ((monoB, Fraction(1)),) if n == -1 else ()
    gA = mono_grade(P, monoA)
    gB = mono_grade(P, monoB)
    if gA + gB - n - 1 < 0:
        return ()
    X, rest = leading_factor(P, monoA)
    degX = P.deg(P.generators[monoA[0][1]].name) - monoA[0][0] - 1
    gR = gA - degX
    B = State(P, UNTWISTED, {monoB: Fraction(1)})
    acc: dict = {}
    # sum_{k<0} X(k) (R_(n-k-1) B): R_(p) B vanishes once p > gR + gB - 1
    for k in range(min(n - gR - gB, -1), 0):
        inner = y_apply_mono(P, rest, B, n - k - 1)
        if inner:
            for mono, c in apply_loop(mode(P, X, k), inner).terms.items():
                _add(acc, mono, c)
    # sum_{k>=0} R_(n-k-1) (X(k) B): X(k) B vanishes once k > degX + gB - 1
    for k in range(0, degX + gB):
        xb = apply_loop(mode(P, X, k), B)
        if xb:
            for mono, c in y_apply_mono(P, rest, xb, n - k - 1).terms.items():
                _add(acc, mono, c)
    return tuple(acc.items())


def y_apply_mono(P: VlaPresentation, monoA: Mono, B: State, n: int) -> State:
    acc: dict = {}
    for mb, cb in B.terms.items():
        for mono, c in _y(P, monoA, mb, n):
            _add(acc, mono, cb * c)
    return State(P, UNTWISTED, acc)


def y_apply(A: State, B: State, n: int) -> State:
    """A_(n) B."""
    if A.kind != UNTWISTED or B.kind != UNTWISTED:
        raise ValueError("y_apply acts on V(L)")
    P = A.P
    acc: dict = {}
    for ma, ca in A.terms.items():
        for mb, cb in B.terms.items():
            for mono, c in _y(P, ma, mb, n):
                _add(acc, mono, ca * cb * c)
    return State(P, UNTWISTED, acc)


def y_composite(A: State, B: State, C: State, n: int) -> State:
    """(A_(-1) B)_(n) C through the normal ordered product :Y(A,x) Y(B,x):."""
    P = A.P
    gA, gB, gC = A.max_grade(), B.max_grade(), C.max_grade()
    out = State(P)
    for k in range(min(n - gB - gC, -1), 0):
        inner = y_apply(B, C, n - k - 1)
        if inner:
            out = out + y_apply(A, inner, k)
    for k in range(0, gA + gC):
        ac = y_apply(A, C, k)
        if ac:
            out = out + y_apply(B, ac, n - k - 1)
    return out


def support_top(A: State, B: State) -> int:
    """Largest n for which A_(n) B can be nonzero."""
    return A.max_grade() + B.max_grade() - 1


def ope(A: State, B: State) -> dict[int, State]:
    """The singular part n >= 0 of Y(A,x)B."""
    out = {}
    for n in range(support_top(A, B), -1, -1):
        v = y_apply(A, B, n)
        if v:
            out[n] = v
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

@dataclass
class CheckResult:
    ok: bool
    cases: int = 0
    witness: dict | None = None
    info: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _fail(cases: int, **witness) -> CheckResult:
    return CheckResult(False, cases, {k: str(v) for k, v in witness.items()})


def borcherds_sides(A: State, B: State, C: State, p: int, q: int, r: int, N: int,
                    Yc: Callable, Ys: Callable, zero: State) -> tuple[State, State]:
    """Coefficient of y^(-N-1) on both sides of the Borcherds identity with
    f = x^p y^q (x-y)^r.

    ``Ys(A, v, n)`` is the module action A_(n) v and ``Yc`` the action used
    for the iterate (A_(j) B)_(l); both sides are truncated by grading.
    """
    gA, gB, gC = A.max_grade(), B.max_grade(), C.max_grade()
    lhs = zero
    for i in range(0, max(gA + gB - r, 0) + 1):
        ab = y_apply(A, B, r + i)
        if ab:
            lhs = lhs + Yc(ab, C, p + q + N - i).scale(gbinom(p, i))
    rhs = zero
    top_i = r if r >= 0 else max(gB + gC - q - N, 0)
    for i in range(0, top_i + 1):
        bc = Ys(B, C, q + N + i)
        if bc:
            rhs = rhs + Ys(A, bc, p + r - i).scale((-1) ** i * gbinom(r, i))
    top_i = r if r >= 0 else max(gA + gC - p, 0)
    for i in range(0, top_i + 1):
        ac = Ys(A, C, p + i)
        if ac:
            rhs = rhs - Ys(B, ac, q + r + N - i).scale((-1) ** ((r - i) % 2) * gbinom(r, i))
    return lhs, rhs


def check_borcherds(A: State, B: State, C: State, f_exponents: tuple[int, int, int],
                    window: int = 3) -> CheckResult:
    p, q, r = f_exponents
    top = A.max_grade() + B.max_grade() + C.max_grade() - p - q - r - 2
    cases = 0
    zero = State(A.P)
    for N in range(top + 1, top - window - 1, -1):
        lhs, rhs = borcherds_sides(A, B, C, p, q, r, N, y_apply, y_apply, zero)
        cases += 1
        if lhs != rhs:
            return _fail(cases, N=N, lhs=lhs, rhs=rhs)
    return CheckResult(True, cases)


def check_commutator(A: State, B: State, m: int, n: int, tests: Iterable[State]) -> CheckResult:
    """[A_(m), B_(n)] = sum_k C(m,k) (A_(k) B)_(m+n-k) on each test state."""
    prods = [(k, y_apply(A, B, k)) for k in range(0, support_top(A, B) + 1)]
    cases = 0
    for C in tests:
        lhs = y_apply(A, y_apply(B, C, n), m) - y_apply(B, y_apply(A, C, m), n)
        rhs = State(A.P)
        for k, ab in prods:
            if ab:
                rhs = rhs + y_apply(ab, C, m + n - k).scale(gbinom(m, k))
        cases += 1
        if lhs != rhs:
            return _fail(cases, m=m, n=n, test=C, lhs=lhs, rhs=rhs)
    return CheckResult(True, cases)


def _locality_coeff(A: State, B: State, test: State, r: int, a: int, b: int) -> State:
    out = State(A.P)
    for i in range(r + 1):
        c = gbinom(r, i) * (-1) ** i
        x, y = a + r - i, b + i
        comm = (y_apply(A, y_apply(B, test, y), x) - y_apply(B, y_apply(A, test, x), y))
        out = out + comm.scale(c)
    return out


class LocalityBoundExceeded(RuntimeError):
    pass


def find_locality_order(A: State, B: State, test: State, window: int | None = None) -> int:
    """Smallest r >= 0 with (x-y)^r [Y(A,x), Y(B,y)] test = 0 on the window."""
    gA, gB, gT = A.max_grade(), B.max_grade(), test.max_grade()
    M = window if window is not None else gA + gB + gT + 3
    bound = 2 * (gA + gB) + 4
    for r in range(0, bound + 1):
        if all(not _locality_coeff(A, B, test, r, a, b)
               for a in range(-M, M + 1) for b in range(-M, M + 1)):
            return r
    raise LocalityBoundExceeded("locality bound exceeded")


def skew_rhs_state(A: State, B: State, n: int) -> State:
    out = State(A.P)
    for k in range(0, max(support_top(A, B) - n, 0) + 1):
        ba = y_apply(B, A, n + k)
        for _ in range(k):
            ba = translate(ba)
        if ba:
            out = out - ba.scale(Fraction((-1) ** ((n + k) % 2), factorial(k)))
    return out


def check_skew(A: State, B: State, n: int) -> CheckResult:
    lhs = y_apply(A, B, n)
    rhs = skew_rhs_state(A, B, n)
    if lhs != rhs:
        return _fail(1, n=n, lhs=lhs, rhs=rhs)
    return CheckResult(True, 1)


def check_translation(A: State, n: int, tests: Iterable[State]) -> CheckResult:
    """(D A)_(n) = -n A_(n-1)."""
    DA = translate(A)
    cases = 0
    for C in tests:
        cases += 1
        lhs, rhs = y_apply(DA, C, n), y_apply(A, C, n - 1).scale(-n)
        if lhs != rhs:
            return _fail(cases, n=n, test=C, lhs=lhs, rhs=rhs)
    return CheckResult(True, cases)


def check_grading(A: State, B: State, n: int) -> CheckResult:
    v = y_apply(A, B, n)
    if not v:
        return CheckResult(True, 1)
    want = A.grade() + B.grade() - n - 1
    try:
        got = v.grade()
    except ValueError:
        return _fail(1, n=n, result=v)
    if got != want:
        return _fail(1, n=n, want=want, got=got)
    return CheckResult(True, 1)


def check_gamma_equivariance(A: State, B: State, n: int) -> CheckResult:
    """R_alpha(A_(n) B) = alpha^(-n-1) (R_alpha A)_(n) (R_alpha B) for every alpha."""
    P = A.P
    T = P.order
    for k in range(T):
        lhs = gamma_state(P, k, y_apply(A, B, n))
        rhs = y_apply(gamma_state(P, k, A), gamma_state(P, k, B), n).scale(root(T, -k * (n + 1)))
        if lhs != rhs:
            return _fail(k + 1, alpha=k, n=n, lhs=lhs, rhs=rhs)
    return CheckResult(True, T)
