"""The vacuum Verma module V(L) and the twisted vacuum module V^Gamma(L).

A PBW monomial is a tuple of (mode, generator index) pairs sorted ascending,
so the most negative mode comes first.  The empty tuple is the vacuum.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .cycfield import root, scalar_str, scalar_to_json
from .modes import LoopElem, TwistedMode, bracket_modes, mode, survives
from .vla import VlaElem, VlaPresentation

UNTWISTED = "V"
TWISTED = "W"

Mono = tuple  # tuple[tuple[int, int], ...]


def level(P: VlaPresentation, kind: str) -> Fraction:
    """Value of c(-1): 1 on V(L), 1/T on V^Gamma(L)."""
    return Fraction(1) if kind == UNTWISTED else Fraction(1, P.order)


def mono_grade(P: VlaPresentation, mono: Mono) -> int:
    gens = P.generators
    return sum(gens[i].degree - m - 1 for m, i in mono)


def _add(acc: dict, key, c) -> None:
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


@lru_cache(maxsize=2_000_000)
def _act(P: VlaPresentation, kind: str, gi: int, n: int, mono: Mono) -> tuple:
    """g(n) applied to a PBW monomial, as a tuple of (monomial, coeff)."""
    if n < 0 and (not mono or (n, gi) <= mono[0]):
        return (((n, gi),) + mono, Fraction(1)),
    if not mono:
        return ()
    gens = P.generators
    if gens[gi].degree - n - 1 + mono_grade(P, mono) < 0:
        return ()
    (m, bi), rest = mono[0], mono[1:]
    acc: dict = {}
    # g(n) b(m) R = b(m) g(n) R + [g(n), b(m)] R
    for mono2, c in _act(P, kind, gi, n, rest):
        for mono3, c3 in _act(P, kind, bi, m, mono2):
            _add(acc, mono3, c * c3)
    br = bracket_modes(P, gens[gi].name, n, gens[bi].name, m)
    for (h, p), c in br.terms.items():
        for mono3, c3 in _act(P, kind, P.index[h], p, rest):
            _add(acc, mono3, c * c3)
    if br.central:
        _add(acc, rest, br.central * level(P, kind))
    return tuple(acc.items())


class State:
    """Linear combination of PBW monomials in V(L) or V^Gamma(L)."""

    __slots__ = ("P", "kind", "terms")

    def __init__(self, P: VlaPresentation, kind: str = UNTWISTED,
                 terms: Mapping[Mono, object] | None = None):
        self.P = P
        self.kind = kind
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    # constructors -------------------------------------------------------------
    @classmethod
    def vacuum(cls, P: VlaPresentation, kind: str = UNTWISTED) -> "State":
        return cls(P, kind, {(): Fraction(1)})

    @classmethod
    def zero(cls, P: VlaPresentation, kind: str = UNTWISTED) -> "State":
        return cls(P, kind)

    @classmethod
    def from_word(cls, P: VlaPresentation, word: Iterable[tuple[str, int]],
                  kind: str = UNTWISTED, coeff=1) -> "State":
        """a_1(n_1) ... a_j(n_j)|0>, normal ordered."""
        v = cls.vacuum(P, kind).scale(coeff)
        for a, n in reversed(list(word)):
            v = apply_loop(LoopElem.gen(a, n), v)
        return v

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "State") -> None:
        if other.P is not self.P or other.kind != self.kind:
            raise ValueError("states live in different modules")

    def __add__(self, other: "State") -> "State":
        self._check(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            _add(acc, k, v)
        return State(self.P, self.kind, acc)

    def __neg__(self) -> "State":
        return State(self.P, self.kind, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "State") -> "State":
        return self + (-other)

    def scale(self, c) -> "State":
        if not c:
            return State(self.P, self.kind)
        return State(self.P, self.kind, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        return self.P is other.P and self.kind == other.kind and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def items(self):
        return self.terms.items()

    # queries ----------------------------------------------------------------
    def grade(self) -> int:
        grades = {mono_grade(self.P, m) for m in self.terms}
        if len(grades) > 1:
            raise ValueError("state is not homogeneous")
        return grades.pop() if grades else 0

    def max_grade(self) -> int:
        return max((mono_grade(self.P, m) for m in self.terms), default=0)

    def depth(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def homogeneous_parts(self) -> dict[int, "State"]:
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(mono_grade(self.P, m), {})[m] = c
        return {g: State(self.P, self.kind, t) for g, t in parts.items()}

    # rendering --------------------------------------------------------------
    def mono_str(self, mono: Mono) -> str:
        gens = self.P.generators
        return "".join(f"{gens[i].name}({m})" for m, i in mono) + "|0>"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            body = self.mono_str(mono)
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{scalar_str(c)}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"State({self})"

    def to_json(self) -> list[dict]:
        gens = self.P.generators
        T = self.P.order
        out = []
        for mono, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            out.append({"monomial": [{"gen": gens[i].name, "mode": m} for m, i in mono],
                        "coeff": scalar_to_json(c, T)})
        return out


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------

def apply_gen(P: VlaPresentation, kind: str, a: str, n: int, v: State) -> State:
    gi = P.index[a]
    acc: dict = {}
    for mono, c in v.terms.items():
        for mono2, c2 in _act(P, kind, gi, n, mono):
            _add(acc, mono2, c * c2)
    return State(P, kind, acc)


def apply_loop(x: LoopElem, v: State) -> State:
    """Action of a loop element on either module (level folded in)."""
    P, kind = v.P, v.kind
    acc: dict = {}
    for (a, n), ca in x.terms.items():
        gi = P.index[a]
        for mono, c in v.terms.items():
            for mono2, c2 in _act(P, kind, gi, n, mono):
                _add(acc, mono2, ca * c * c2)
    if x.central:
        lev = x.central * level(P, kind)
        for mono, c in v.terms.items():
            _add(acc, mono, lev * c)
    return State(P, kind, acc)


def apply_mode(P: VlaPresentation, x: LoopElem, v: State) -> State:
    if v.kind != UNTWISTED:
        raise ValueError("apply_mode acts on V(L); use apply_twisted_mode on V^Gamma(L)")
    return apply_loop(x, v)


def apply_elem_mode(P: VlaPresentation, x: VlaElem, n: int, v: State) -> State:
    """x(n) acting on v, for x in L."""
    return apply_loop(mode(P, x, n), v)


def apply_twisted_mode(P: VlaPresentation, m: TwistedMode, w: State) -> State:
    """a^Gamma(n) = T a(n) acting on V^Gamma(L)."""
    if w.kind != TWISTED:
        raise ValueError("apply_twisted_mode acts on V^Gamma(L)")
    if not survives(P, m.gen, m.n):
        raise ValueError("mode not in twisted algebra")
    return apply_gen(P, TWISTED, m.gen, m.n, w).scale(P.order)


def twisted_from_word(P: VlaPresentation, word: Iterable[tuple[str, int]], coeff=1) -> State:
    """a_1(n_1) ... a_j(n_j)|0> in V^Gamma(L), with surviving modes only."""
    word = list(word)
    for a, n in word:
        if not survives(P, a, n):
            raise ValueError(f"mode {a}({n}) not in twisted algebra")
    return State.from_word(P, word, TWISTED, coeff)


def translate(v: State) -> State:
    """D acting by the Leibniz rule, [D, a(m)] = -m a(m-1), D|0> = 0."""
    if v.kind != UNTWISTED:
        raise ValueError("translation acts on V(L)")
    P = v.P
    gens = P.generators
    out = State(P)
    for mono, c in v.terms.items():
        word = [(gens[i].name, m) for m, i in mono]
        for pos, (a, m) in enumerate(word):
            new = list(word)
            new[pos] = (a, m - 1)
            out = out + State.from_word(P, new, UNTWISTED, c * (-m))
    return out


def gamma_state(P: VlaPresentation, k: int, v: State) -> State:
    """R_alpha on states for alpha = w^k: alpha^grade times sigma on each factor."""
    T = P.order
    gens = P.generators
    terms = {}
    for mono, c in v.terms.items():
        e = sum(gens[i].degree - m - 1 + gens[i].sigma for m, i in mono)
        terms[mono] = c * root(T, k * e)
    return State(P, v.kind, terms)


def grade(v: State) -> int:
    return v.grade()


def depth(v: State) -> int:
    return v.depth()


def smoothness_bound(P: VlaPresentation, a: str, v: State, dpow: int = 0) -> int:
    """N with (D^dpow a)(n) v = 0 for all n > N."""
    return P.deg(a) + dpow + v.max_grade() - 1


def states_of(P: VlaPresentation, kind: str, max_depth: int, max_grade: int,
              min_grade: int = 0) -> list[Mono]:
    """All PBW monomials with bounded depth and grade (twisted: surviving modes)."""
    gens = P.generators
    letters = []
    for i, g in enumerate(gens):
        # creation modes n <= -1 with degree g.degree - n - 1 <= max_grade
        for n in range(-1, g.degree - 1 - max_grade - 1, -1):
            if kind == TWISTED and not survives(P, g.name, n):
                continue
            letters.append((n, i))
    letters.sort()
    out: list[Mono] = []

    def rec(start: int, mono: tuple, gr: int) -> None:
        if min_grade <= gr:
            out.append(mono)
        if len(mono) == max_depth:
            return
        for j in range(start, len(letters)):
            n, i = letters[j]
            d = gens[i].degree - n - 1
            if gr + d <= max_grade:
                rec(j, mono + ((n, i),), gr + d)

    rec(0, (), 0)
    return out
