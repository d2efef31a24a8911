"""Vertex Lie algebra presentations, n-th products on C[D] (x) L^o + C c, the
Gamma-action R_alpha, and exact axiom checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping

from .cycfield import root, scalar_from_json, scalar_str, scalar_to_json


def falling(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1)."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


def gbinom(m: int, k: int) -> Fraction:
    """Generalized binomial coefficient, valid for negative m."""
    if k < 0:
        return Fraction(0)
    return Fraction(falling(m, k), factorial(k))


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    sigma: int = 0  # sigma acts as w^sigma


class VlaElem:
    """Finite combination of D^k a (a a generator) plus a multiple of c."""

    __slots__ = ("terms", "central")

    def __init__(self, terms: Mapping[tuple[str, int], object] | None = None, central=0):
        self.terms = {k: v for k, v in (terms or {}).items() if v}
        self.central = central if central else Fraction(0)

    @classmethod
    def gen(cls, name: str, dpow: int = 0, coeff=1) -> "VlaElem":
        return cls({(name, dpow): Fraction(coeff) if isinstance(coeff, int) else coeff})

    @classmethod
    def cent(cls, coeff=1) -> "VlaElem":
        return cls({}, coeff)

    def __add__(self, other: "VlaElem") -> "VlaElem":
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return VlaElem(terms, self.central + other.central)

    def __neg__(self) -> "VlaElem":
        return VlaElem({k: -v for k, v in self.terms.items()}, -self.central)

    def __sub__(self, other: "VlaElem") -> "VlaElem":
        return self + (-other)

    def scale(self, c) -> "VlaElem":
        if not c:
            return VlaElem()
        return VlaElem({k: v * c for k, v in self.terms.items()}, self.central * c)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def D(self, times: int = 1) -> "VlaElem":
        if times == 0:
            return self
        return VlaElem({(a, k + times): v for (a, k), v in self.terms.items()})

    def __bool__(self) -> bool:
        return bool(self.terms) or bool(self.central)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VlaElem):
            return NotImplemented
        return self.terms == other.terms and self.central == other.central

    def __hash__(self) -> int:
        return hash((frozenset(self.terms.items()), self.central))

    def __repr__(self) -> str:
        return f"VlaElem({self})"

    def __str__(self) -> str:
        parts = []
        for (a, k), v in sorted(self.terms.items()):
            base = a if k == 0 else (f"D{a}" if k == 1 else f"D^{k}{a}")
            parts.append(_coeff_prefix(v) + base)
        if self.central:
            parts.append(_coeff_prefix(self.central) + "c")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _coeff_prefix(v) -> str:
    if v == 1:
        return ""
    if v == -1:
        return "-"
    return scalar_str(v) + "*"


class VlaPresentation:
    """Generators with degree and sigma exponent, a central element, and the
    table of n-th products between generators."""

    def __init__(self, name: str, order: int, generators: Iterable[Generator],
                 central: str, products: Mapping[tuple[str, str, int], VlaElem],
                 central_degree: int = 0):
        self.name = name
        self.order = int(order)
        self.generators = tuple(generators)
        self.central = central
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        self.by_name = {g.name: g for g in self.generators}
        if any(n < 0 for (_a, _b, n) in products):
            raise ValueError("vertex Lie algebras have no negative products")
        self.products = {k: v for k, v in products.items() if v}
        if central_degree != 0:
            raise ValueError("the central element has degree 0")
        if len(self.index) != len(self.generators) or central in self.index:
            raise ValueError("generator names must be distinct")
        if self.order < 1:
            raise ValueError("order must be a positive integer")
        for g in self.generators:
            if not isinstance(g.sigma, int) or isinstance(g.sigma, bool):
                raise ValueError(f"sigma eigenvalue of {g.name} is not a T-th root of unity")
            if g.degree < 0:
                raise ValueError("degrees are non-negative")
        for (a, b, n), v in self.products.items():
            if a not in self.index or b not in self.index:
                raise ValueError(f"unknown generator in product ({a}, {b}, {n})")
            for (g, _), _c in v.terms.items():
                if g not in self.index:
                    raise ValueError(f"unknown generator {g} in product table")
        self.max_order = {}
        for (a, b, n) in self.products:
            self.max_order[(a, b)] = max(self.max_order.get((a, b), 0), n + 1)
        self._check_sigma()
        self._check_grading()

    def __repr__(self) -> str:
        return f"VlaPresentation({self.name!r}, T={self.order})"

    def deg(self, a: str) -> int:
        return self.by_name[a].degree

    def sig(self, a: str) -> int:
        return self.by_name[a].sigma

    def product(self, a: str, b: str, n: int) -> VlaElem:
        return self.products.get((a, b, n), ZERO)

    def n_max(self, a: str, b: str) -> int:
        """Smallest N with a_(n) b = 0 for all n >= N."""
        return self.max_order.get((a, b), 0)

    def elem_degree(self, x: VlaElem):
        """Degree of a homogeneous element (None for 0, error if mixed)."""
        degs = {self.deg(a) + k for (a, k) in x.terms}
        if x.central:
            degs.add(0)
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop() if degs else None

    def elem_sigma(self, x: VlaElem):
        sigs = {self.sig(a) % self.order for (a, _) in x.terms}
        if x.central:
            sigs.add(0)
        if len(sigs) > 1:
            raise ValueError("element is not a sigma eigenvector")
        return sigs.pop() if sigs else None

    def _check_sigma(self) -> None:
        for (a, b, n), v in self.products.items():
            s = (self.sig(a) + self.sig(b)) % self.order
            for (g, _) in v.terms:
                if self.sig(g) % self.order != s:
                    raise ValueError(
                        f"sigma does not preserve the product table at ({a}, {b}, {n})")
            if v.central and s != 0:
                raise ValueError(
                    f"sigma does not preserve the product table at ({a}, {b}, {n})")

    def _check_grading(self) -> None:
        for (a, b, n), v in self.products.items():
            want = self.deg(a) + self.deg(b) - n - 1
            for (g, k) in v.terms:
                if self.deg(g) + k != want:
                    raise ValueError(f"grading violated at ({a}, {b}, {n})")
            if v.central and want != 0:
                raise ValueError(f"grading violated at ({a}, {b}, {n})")

    # serialization ---------------------------------------------------------
    def to_config(self) -> dict:
        T = self.order
        prods = []
        for (a, b, n), v in sorted(self.products.items()):
            value = [{"gen": g, "dpow": k, "coeff": scalar_to_json(c, T)}
                     for (g, k), c in sorted(v.terms.items())]
            if v.central:
                value.append({"central": scalar_to_json(v.central, T)})
            prods.append({"a": a, "b": b, "n": n, "value": value})
        return {
            "name": self.name,
            "order": T,
            "generators": [{"name": g.name, "degree": g.degree, "sigma_exponent": g.sigma}
                           for g in self.generators],
            "central": self.central,
            "products": prods,
        }

    @classmethod
    def from_config(cls, cfg: Mapping, check: bool = True, n_max: int = 6) -> "VlaPresentation":
        T = int(cfg.get("order", 1))
        gens = []
        for g in cfg["generators"]:
            s = g.get("sigma_exponent", 0)
            if not isinstance(s, int) or isinstance(s, bool):
                raise ValueError(f"sigma eigenvalue of {g['name']} is not a T-th root of unity")
            gens.append(Generator(str(g["name"]), int(g["degree"]), s))
        prods: dict[tuple[str, str, int], VlaElem] = {}
        for p in cfg.get("products", []):
            v = VlaElem()
            for term in p["value"]:
                if "central" in term:
                    v = v + VlaElem.cent(scalar_from_json(term["central"], T))
                else:
                    v = v + VlaElem.gen(str(term["gen"]), int(term.get("dpow", 0)),
                                        scalar_from_json(term.get("coeff", 1), T))
            key = (str(p["a"]), str(p["b"]), int(p["n"]))
            prods[key] = prods.get(key, ZERO) + v
        P = cls(str(cfg.get("name", "custom")), T, gens, str(cfg.get("central", "c")), prods)
        if check:
            rep = check_axioms(P, n_max)
            if not rep.ok:
                raise AxiomError(rep)
        return P


ZERO = VlaElem()


class AxiomError(ValueError):
    def __init__(self, report: "AxiomReport"):
        super().__init__(report.message())
        self.report = report


# ---------------------------------------------------------------------------
# n-th products
# ---------------------------------------------------------------------------

@lru_cache(maxsize=200_000)
def _gen_right(P: VlaPresentation, a: str, b: str, j: int, n: int) -> VlaElem:
    """a_(n) D^j b via a_(n) D = D a_(n) + n a_(n-1)."""
    out = VlaElem()
    for l in range(0, j + 1):
        f = falling(n, l)
        if f == 0:
            break
        out = out + P.product(a, b, n - l).D(j - l).scale(comb(j, l) * f)
    return out


def _basis_product(P: VlaPresentation, a: str, i: int, b: str, j: int, n: int) -> VlaElem:
    # (D^i a)_(n) = (-1)^i n (n-1) ... (n-i+1) a_(n-i)
    f = falling(n, i)
    if f == 0:
        return ZERO
    return _gen_right(P, a, b, j, n - i).scale((-1) ** i * f)


def nth_product(P: VlaPresentation, x: VlaElem, y: VlaElem, n: int) -> VlaElem:
    if n < 0:
        raise ValueError("vertex Lie algebras have no negative products")
    out = VlaElem()
    for (a, i), ca in x.terms.items():
        for (b, j), cb in y.terms.items():
            out = out + _basis_product(P, a, i, b, j, n).scale(ca * cb)
    return out


def product_support(P: VlaPresentation, x: VlaElem, y: VlaElem) -> int:
    """Bound N with x_(n) y = 0 for every n >= N."""
    best = 0
    for (a, i) in x.terms:
        for (b, _j) in y.terms:
            best = max(best, P.n_max(a, b) + i)
    return best


# ---------------------------------------------------------------------------
# Gamma action
# ---------------------------------------------------------------------------

def gamma_weight(P: VlaPresentation, a: str, dpow: int = 0) -> int:
    """Exponent e with R_{w^k}(D^dpow a) = w^(k e) D^dpow a."""
    return dpow + P.deg(a) + P.sig(a)


def gamma_act(P: VlaPresentation, k: int, x: VlaElem) -> VlaElem:
    """R_alpha for alpha = w^k: alpha^{L(0)} composed with sigma."""
    T = P.order
    terms = {(a, d): c * root(T, k * gamma_weight(P, a, d)) for (a, d), c in x.terms.items()}
    return VlaElem(terms, x.central)


# ---------------------------------------------------------------------------
# axiom checks
# ---------------------------------------------------------------------------

@dataclass
class AxiomReport:
    ok: bool
    checked: int
    failure: dict | None = None

    def message(self) -> str:
        if self.ok:
            return f"all {self.checked} checks pass"
        f = self.failure or {}
        return (f"{f.get('axiom')} fails at {f.get('where')}: "
                f"lhs = {f.get('lhs')}, rhs = {f.get('rhs')}")


def skew_rhs(P: VlaPresentation, x: VlaElem, y: VlaElem, n: int) -> VlaElem:
    """-sum_k (-1)^(n+k)/k! D^k (y_(n+k) x)."""
    out = VlaElem()
    top = product_support(P, y, x)
    for k in range(0, max(top - n, 0) + 1):
        term = nth_product(P, y, x, n + k)
        if term:
            out = out - term.D(k).scale(Fraction((-1) ** (n + k), factorial(k)))
    return out


def check_axioms(P: VlaPresentation, n_max: int) -> AxiomReport:
    gens = [VlaElem.gen(g.name) for g in P.generators]
    names = [g.name for g in P.generators]
    count = 0

    def fail(axiom, where, lhs, rhs):
        return AxiomReport(False, count, {"axiom": axiom, "where": where,
                                          "lhs": str(lhs), "rhs": str(rhs)})

    for ia, a in enumerate(gens):
        for ib, b in enumerate(gens):
            for n in range(n_max + 1):
                lhs = nth_product(P, a, b, n)
                rhs = skew_rhs(P, a, b, n)
                count += 1
                if lhs != rhs:
                    return fail("skew-symmetry", (names[ia], names[ib], n), lhs, rhs)
    for ia, a in enumerate(gens):
        for ib, b in enumerate(gens):
            for ic, c in enumerate(gens):
                for m in range(n_max + 1):
                    for n in range(n_max + 1):
                        lhs = (nth_product(P, a, nth_product(P, b, c, n), m)
                               - nth_product(P, b, nth_product(P, a, c, m), n))
                        rhs = VlaElem()
                        for k in range(m + 1):
                            ab = nth_product(P, a, b, k)
                            if ab:
                                rhs = rhs + nth_product(P, ab, c, m + n - k).scale(comb(m, k))
                        count += 1
                        if lhs != rhs:
                            return fail("commutator", (names[ia], names[ib], names[ic], m, n),
                                        lhs, rhs)
    T = P.order
    for k in range(T):
        for ia, a in enumerate(gens):
            for ib, b in enumerate(gens):
                for n in range(n_max + 1):
                    lhs = gamma_act(P, k, nth_product(P, a, b, n))
                    rhs = nth_product(P, gamma_act(P, k, a), gamma_act(P, k, b), n).scale(
                        root(T, -k * (n + 1)))
                    count += 1
                    if lhs != rhs:
                        return fail("gamma-equivariance", (k, names[ia], names[ib], n), lhs, rhs)
    return AxiomReport(True, count)


def check_right_rule(P: VlaPresentation, n_max: int = 4, dmax: int = 2) -> AxiomReport:
    """Validate the derived right-D rule against skew-symmetry applied twice."""
    count = 0
    for ga in P.generators:
        for gb in P.generators:
            a = VlaElem.gen(ga.name)
            for j in range(1, dmax + 1):
                b = VlaElem.gen(gb.name, j)
                for n in range(n_max + 1):
                    # a_(n) D^j b computed with the right rule, versus skew of (D^j b)_(k) a
                    lhs = nth_product(P, a, b, n)
                    rhs = skew_rhs(P, a, b, n)
                    count += 1
                    if lhs != rhs:
                        return AxiomReport(False, count, {
                            "axiom": "right-D rule", "where": (ga.name, gb.name, j, n),
                            "lhs": str(lhs), "rhs": str(rhs)})
    return AxiomReport(True, count)


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

PRESETS = ("affine_sl2", "heisenberg_sl2", "virasoro")


def _table(entries) -> dict:
    return {(a, b, n): v for a, b, n, v in entries}


def _parse_sigma(sigma_spec) -> tuple[str, int]:
    if sigma_spec in (None, "", "id"):
        return "id", 0
    if isinstance(sigma_spec, str) and sigma_spec.startswith("inner:"):
        return "inner", int(sigma_spec.split(":", 1)[1])
    if sigma_spec == "swap":
        return "swap", 0
    raise ValueError(f"unknown sigma {sigma_spec!r}")


def affine_sl2(T: int = 1, sigma_spec="id") -> VlaPresentation:
    kind, s = _parse_sigma(sigma_spec)
    g, K = VlaElem.gen, VlaElem.cent
    if kind in ("id", "inner"):
        gens = [Generator("e", 1, s), Generator("f", 1, -s), Generator("h", 1, 0)]
        tab = _table([
            ("e", "f", 0, g("h")), ("f", "e", 0, g("h", 0, -1)),
            ("h", "e", 0, g("e", 0, 2)), ("e", "h", 0, g("e", 0, -2)),
            ("h", "f", 0, g("f", 0, -2)), ("f", "h", 0, g("f", 0, 2)),
            ("e", "f", 1, K()), ("f", "e", 1, K()), ("h", "h", 1, K(2)),
        ])
    else:
        if T % 2:
            raise ValueError("the e<->f automorphism has order 2; T must be even")
        half = T // 2
        # eigenbasis x = e+f, y = e-f, h of sigma: e<->f, h->-h
        gens = [Generator("x", 1, 0), Generator("y", 1, half), Generator("h", 1, half)]
        tab = _table([
            ("x", "y", 0, g("h", 0, -2)), ("y", "x", 0, g("h", 0, 2)),
            ("h", "x", 0, g("y", 0, 2)), ("x", "h", 0, g("y", 0, -2)),
            ("h", "y", 0, g("x", 0, 2)), ("y", "h", 0, g("x", 0, -2)),
            ("x", "x", 1, K(2)), ("y", "y", 1, K(-2)), ("h", "h", 1, K(2)),
        ])
    return VlaPresentation("affine_sl2", T, gens, "K", tab)


def heisenberg_sl2(T: int = 1, sigma_spec="id") -> VlaPresentation:
    kind, s = _parse_sigma(sigma_spec)
    if kind == "swap":
        raise ValueError("swap automorphism is only defined for affine_sl2")
    gens = [Generator("e", 1, s), Generator("e*", 0, -s), Generator("h", 1, 0)]
    tab = _table([
        ("e", "e*", 0, VlaElem.cent(1)),
        ("e*", "e", 0, VlaElem.cent(-1)),
    ])
    return VlaPresentation("heisenberg_sl2", T, gens, "one", tab)


def virasoro(T: int = 1, sigma_spec="id") -> VlaPresentation:
    kind, _ = _parse_sigma(sigma_spec)
    if kind != "id":
        raise ValueError("only sigma = id is supported for virasoro")
    gens = [Generator("w", 2, 0)]
    tab = _table([
        ("w", "w", 0, VlaElem.gen("w", 1)),
        ("w", "w", 1, VlaElem.gen("w", 0, 2)),
        ("w", "w", 3, VlaElem.cent(Fraction(1, 2))),
    ])
    return VlaPresentation("virasoro", T, gens, "c", tab)


@lru_cache(maxsize=None)
def preset(name: str, T: int = 1, sigma_spec="id") -> VlaPresentation:
    builders = {"affine_sl2": affine_sl2, "heisenberg_sl2": heisenberg_sl2,
                "virasoro": virasoro}
    if name not in builders:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    P = builders[name](T, sigma_spec)
    rep = check_right_rule(P)
    if not rep.ok:
        raise AxiomError(rep)
    return P


def with_product(P: VlaPresentation, a: str, b: str, n: int, value: VlaElem) -> VlaPresentation:
    """Copy of P with one table entry replaced (no validation)."""
    prods = dict(P.products)
    prods[(a, b, n)] = value
    return VlaPresentation(P.name + "-modified", P.order, P.generators, P.central, prods)
