"""The mode Lie algebra L(L): loop elements a(n), their bracket, the polar
split, and the Gamma-invariant subalgebra spanned by twisted modes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .cycfield import root, scalar_str
from .vla import VlaElem, VlaPresentation, falling, gamma_act, gbinom, nth_product


class LoopElem:
    """Finite combination of generator modes a(n) plus a multiple of c(-1).

    D-decorated generators never appear: (D^j a)(n) is rewritten on
    construction, see ``mode``.
    """

    __slots__ = ("terms", "central")

    def __init__(self, terms: Mapping[tuple[str, int], object] | None = None, central=0):
        self.terms = {k: v for k, v in (terms or {}).items() if v}
        self.central = central if central else Fraction(0)

    @classmethod
    def gen(cls, a: str, n: int, coeff=1) -> "LoopElem":
        return cls({(a, n): Fraction(coeff) if isinstance(coeff, int) else coeff})

    @classmethod
    def cent(cls, coeff=1) -> "LoopElem":
        return cls({}, coeff)

    def __add__(self, other: "LoopElem") -> "LoopElem":
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return LoopElem(terms, self.central + other.central)

    def __neg__(self) -> "LoopElem":
        return LoopElem({k: -v for k, v in self.terms.items()}, -self.central)

    def __sub__(self, other: "LoopElem") -> "LoopElem":
        return self + (-other)

    def scale(self, c) -> "LoopElem":
        if not c:
            return LoopElem()
        return LoopElem({k: v * c for k, v in self.terms.items()}, self.central * c)

    __mul__ = scale

    def __rmul__(self, c):
        return self.scale(c)

    def __bool__(self) -> bool:
        return bool(self.terms) or bool(self.central)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LoopElem):
            return NotImplemented
        return self.terms == other.terms and self.central == other.central

    def __hash__(self) -> int:
        return hash((frozenset(self.terms.items()), self.central))

    def __repr__(self) -> str:
        return f"LoopElem({self})"

    def __str__(self) -> str:
        return self.render()

    def render(self, P: VlaPresentation | None = None, shifted: bool = False) -> str:
        parts = []
        key = (lambda t: (t[0][1], P.index[t[0][0]])) if P else (lambda t: (t[0][1], t[0][0]))
        for (a, n), v in sorted(self.terms.items(), key=key):
            if shifted and P is not None:
                body = f"{a}[{n - P.deg(a) + 1}]"
            else:
                body = f"{a}({n})"
            parts.append(_pref(v) + body)
        if self.central:
            cname = P.central if P else "c"
            parts.append(_pref(self.central) + f"{cname}(-1)")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _pref(v) -> str:
    if v == 1:
        return ""
    if v == -1:
        return "-"
    return scalar_str(v) + "*"


def shifted(P: VlaPresentation, a: str, n: int) -> LoopElem:
    """a[n] := a(n + deg a - 1)."""
    return LoopElem.gen(a, n + P.deg(a) - 1)


def mode(P: VlaPresentation, x: VlaElem, n: int) -> LoopElem:
    """The class of x (x) t^n, with (D^j a)(n) = (-1)^j n(n-1)...(n-j+1) a(n-j)."""
    terms: dict = {}
    for (a, j), c in x.terms.items():
        f = falling(n, j)
        if f:
            key = (a, n - j)
            terms[key] = terms.get(key, 0) + c * ((-1) ** j * f)
    central = x.central if n == -1 else 0
    return LoopElem(terms, central)


@lru_cache(maxsize=500_000)
def bracket_modes(P: VlaPresentation, a: str, m: int, b: str, n: int) -> LoopElem:
    """[a(m), b(n)] = sum_k C(m,k) (a_(k) b)(m+n-k)."""
    out = LoopElem()
    for k in range(P.n_max(a, b)):
        ab = P.product(a, b, k)
        if ab:
            out = out + mode(P, ab, m + n - k).scale(gbinom(m, k))
    return out


def bracket(P: VlaPresentation, x: LoopElem, y: LoopElem) -> LoopElem:
    out = LoopElem()
    for (a, m), ca in x.terms.items():
        for (b, n), cb in y.terms.items():
            br = bracket_modes(P, a, m, b, n)
            if br:
                out = out + br.scale(ca * cb)
    return out


def polar_split(x: LoopElem) -> tuple[LoopElem, LoopElem]:
    minus = {k: v for k, v in x.terms.items() if k[1] <= -1}
    plus = {k: v for k, v in x.terms.items() if k[1] >= 0}
    return LoopElem(minus), LoopElem(plus, x.central)


def mode_degree(P: VlaPresentation, a: str, n: int) -> int:
    return P.deg(a) - n - 1


def loop_degree(P: VlaPresentation, x: LoopElem):
    degs = {mode_degree(P, a, n) for (a, n) in x.terms}
    if x.central:
        degs.add(0)
    if len(degs) > 1:
        raise ValueError("element is not homogeneous")
    return degs.pop() if degs else None


# ---------------------------------------------------------------------------
# twisted modes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwistedMode:
    gen: str
    n: int


def survives(P: VlaPresentation, a: str, n: int, dpow: int = 0) -> bool:
    """deg(D^dpow a) + s == n + 1 modulo T."""
    return (P.deg(a) + dpow + P.sig(a) - n - 1) % P.order == 0


def gamma_project(P: VlaPresentation, a: str, n: int) -> LoopElem:
    """a^Gamma(n): T a(n) on the surviving congruence class, else 0."""
    if survives(P, a, n):
        return LoopElem.gen(a, n, P.order)
    return LoopElem()


def project_elem(P: VlaPresentation, x: VlaElem, n: int) -> LoopElem:
    """x^Gamma(n) for an arbitrary x in L, term by term."""
    T = P.order
    out = LoopElem()
    for (a, j), c in x.terms.items():
        if survives(P, a, n, j):
            out = out + mode(P, VlaElem({(a, j): c}), n).scale(T)
    if x.central and n == -1:
        out = out + LoopElem.cent(x.central * T)
    return out


def project_by_sum(P: VlaPresentation, x: VlaElem, n: int) -> LoopElem:
    """x^Gamma(n) as the literal sum over alpha of alpha^(-n-1) (R_alpha x)(n)."""
    T = P.order
    out = LoopElem()
    for k in range(T):
        out = out + mode(P, gamma_act(P, k, x), n).scale(root(T, -k * (n + 1)))
    return out


def twisted_bracket(P: VlaPresentation, x: TwistedMode, y: TwistedMode) -> LoopElem:
    """[A^Gamma(m), B^Gamma(n)] = sum_alpha sum_k C(m,k) alpha^(-n-1) (A_(k) R_alpha B)^Gamma(m+n-k).

    The result is returned in untwisted coordinates; ``as_twisted`` rewrites
    it as a combination of twisted modes.
    """
    T = P.order
    if not survives(P, x.gen, x.n) or not survives(P, y.gen, y.n):
        return LoopElem()
    A, B = VlaElem.gen(x.gen), VlaElem.gen(y.gen)
    m, n = x.n, y.n
    out = LoopElem()
    for k_alpha in range(T):
        RB = gamma_act(P, k_alpha, B)
        w = root(T, -k_alpha * (n + 1))
        for k in range(P.n_max(x.gen, y.gen)):
            prod = nth_product(P, A, RB, k)
            if prod:
                out = out + project_elem(P, prod, m + n - k).scale(gbinom(m, k) * w)
    return out


def as_twisted(P: VlaPresentation, x: LoopElem) -> tuple[dict[TwistedMode, object], object]:
    """Rewrite a Gamma-invariant loop element over the twisted modes a^Gamma(n).

    Returns (coefficients of a^Gamma(n), coefficient of c^Gamma(-1)).
    """
    T = P.order
    out = {}
    for (a, n), c in x.terms.items():
        if not survives(P, a, n):
            raise ValueError(f"{a}({n}) is not in the twisted algebra")
        out[TwistedMode(a, n)] = c / T
    return out, x.central / T
