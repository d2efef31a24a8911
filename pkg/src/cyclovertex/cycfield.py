"""Exact arithmetic in the cyclotomic field Q(w_T) and in rational functions over it.

Scalars are kept as ``Fraction`` whenever they happen to be rational; a
``CycScalar`` only appears when a value genuinely involves w.  Every helper in
this module accepts either kind.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Sequence

INF = "inf"


# ---------------------------------------------------------------------------
# dense polynomials over Q, coefficient lists low degree first
# ---------------------------------------------------------------------------

def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _qdivmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = [Fraction(x) for x in a]
    _trim(a)
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        _trim(a)
    return q, a


@lru_cache(maxsize=None)
def cyclotomic_poly(T: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_T, low degree first."""
    if T < 1:
        raise ValueError("order must be a positive integer")
    num = [-1] + [0] * (T - 1) + [1]
    for d in range(1, T):
        if T % d == 0:
            num, r = _qdivmod(num, cyclotomic_poly(d))
            assert not r
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def phi(T: int) -> int:
    return len(cyclotomic_poly(T)) - 1


@lru_cache(maxsize=None)
def _power_rows(T: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row k holds w^k reduced to the power basis, for 0 <= k < T."""
    n = phi(T)
    mod = cyclotomic_poly(T)
    rows = []
    for k in range(max(T, 2 * n)):
        v = [Fraction(0)] * (k + 1)
        v[k] = Fraction(1)
        _, r = _qdivmod(v, mod)
        r = r + [Fraction(0)] * (n - len(r))
        rows.append(tuple(r[:n]))
    return tuple(rows)


def _reduce(vec: Sequence[Fraction], T: int) -> tuple[Fraction, ...]:
    n = phi(T)
    out = list(vec[:n]) + [Fraction(0)] * max(0, n - len(vec))
    if len(vec) > n:
        rows = _power_rows(T)
        for k in range(n, len(vec)):
            c = vec[k]
            if c:
                for i, r in enumerate(rows[k % T]):
                    if r:
                        out[i] += c * r
    return tuple(out)


def _mk(coeffs: tuple[Fraction, ...], T: int):
    """Return a Fraction when the value is rational, else a CycScalar."""
    if len(coeffs) == 1 or not any(coeffs[1:]):
        return coeffs[0]
    obj = object.__new__(CycScalar)
    obj.order = T
    obj.coeffs = coeffs
    return obj


class CycScalar:
    """Element of Q(w_T) in the power basis 1, w, ..., w^(phi(T)-1)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int):
        self.order = int(order)
        self.coeffs = _reduce([Fraction(c) for c in coeffs], self.order)

    @classmethod
    def lift(cls, x, T: int) -> "CycScalar":
        if isinstance(x, CycScalar):
            if x.order != T:
                raise ValueError("mixed cyclotomic orders")
            return x
        return cls([x], T)

    # helpers ----------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, CycScalar):
            if other.order != self.order:
                raise ValueError("mixed cyclotomic orders")
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) + (Fraction(0),) * (len(self.coeffs) - 1)
        return None

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _mk(tuple(a + b for a, b in zip(self.coeffs, o)), self.order)

    __radd__ = __add__

    def __neg__(self):
        return _mk(tuple(-a for a in self.coeffs), self.order)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _mk(tuple(a - b for a, b in zip(self.coeffs, o)), self.order)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _mk(tuple(b - a for a, b in zip(self.coeffs, o)), self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return _mk(tuple(a * other for a in self.coeffs), self.order)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a = self.coeffs
        prod = [Fraction(0)] * (len(a) + len(o) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(o):
                    if y:
                        prod[i + j] += x * y
        return _mk(_reduce(prod, self.order), self.order)

    __rmul__ = __mul__

    def inv(self):
        if not self:
            raise ZeroDivisionError("division by zero")
        # extended Euclid: find s with s*x = 1 mod Phi_T
        r0, r1 = [Fraction(c) for c in cyclotomic_poly(self.order)], _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _qdivmod(r0, r1)
            s2 = _psub_q(s0, _pmul_q(q, s1))
            r0, r1, s0, s1 = r1, r, s1, s2
        c = r1[0]
        return _mk(_reduce([x / c for x in s1], self.order), self.order)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return _mk(tuple(a / other for a in self.coeffs), self.order)
        if isinstance(other, CycScalar):
            return self * other.inv()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inv() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return inv(self) ** (-k)
        out: Any = Fraction(1)
        base: Any = self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    # comparison -------------------------------------------------------------
    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == tuple(o)

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"CycScalar({[str(c) for c in self.coeffs]}, T={self.order})"

    def __str__(self) -> str:
        return scalar_str(self)


def _pmul_q(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _psub_q(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


# ---------------------------------------------------------------------------
# scalar helpers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def root(T: int, k: int):
    """w_T^k as a scalar (Fraction when rational)."""
    k %= T
    n = phi(T)
    if k < n:
        v = [Fraction(0)] * n
        v[k] = Fraction(1)
        return _mk(tuple(v), T)
    v = [Fraction(0)] * (k + 1)
    v[k] = Fraction(1)
    return _mk(_reduce(v, T), T)


def group(T: int) -> list:
    """The elements w^0, ..., w^(T-1) of the cyclic group of order T."""
    return [root(T, k) for k in range(T)]


def inv(x):
    if isinstance(x, CycScalar):
        return x.inv()
    if not x:
        raise ZeroDivisionError("division by zero")
    return Fraction(1) / Fraction(x)


def is_zero(x) -> bool:
    return not x


def to_coeffs(x, T: int) -> tuple[Fraction, ...]:
    return CycScalar.lift(x, T).coeffs


def field_arith(x, y, op: str, T: int) -> CycScalar:
    """Binary/unary field operation returning a ``CycScalar`` of order T.

    ``op`` is one of add, mul, inv, pow_omega (y is then the integer exponent k
    and the result is x * w^k).
    """
    x = CycScalar.lift(x, T)
    if op == "add":
        r = x + y
    elif op == "mul":
        r = x * y
    elif op == "inv":
        r = x.inv()
    elif op == "pow_omega":
        r = x * root(T, int(y))
    else:
        raise ValueError(f"unknown operation {op!r}")
    return CycScalar.lift(r, T)


def scalar_str(x) -> str:
    """Fraction-string rendering; irrational values print over w."""
    if not isinstance(x, CycScalar):
        return str(Fraction(x))
    parts = []
    for k, c in enumerate(x.coeffs):
        if not c:
            continue
        mon = "" if k == 0 else ("w" if k == 1 else f"w^{k}")
        if not mon:
            parts.append(str(c))
        elif c == 1:
            parts.append(mon)
        elif c == -1:
            parts.append("-" + mon)
        else:
            parts.append(f"{c}*{mon}")
    s = " + ".join(parts) if parts else "0"
    return "(" + s.replace("+ -", "- ") + ")" if len(parts) > 1 else s


def scalar_to_json(x, T: int) -> list[str]:
    return [str(c) for c in to_coeffs(x, T)]


def scalar_from_json(data, T: int):
    if isinstance(data, (int, str)):
        return Fraction(data)
    return _mk(_reduce([Fraction(c) for c in data], T), T)


def _scalar_order(*xs) -> int | None:
    for x in xs:
        if isinstance(x, CycScalar):
            return x.order
    return None


# ---------------------------------------------------------------------------
# polynomials over the scalars
# ---------------------------------------------------------------------------

def _ptrim(p: list) -> tuple:
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def padd(a: Sequence, b: Sequence) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = out[i] + y
    return _ptrim(out)


def pneg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def pmul(a: Sequence, b: Sequence) -> tuple:
    if not a or not b:
        return ()
    out: list = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return _ptrim(out)


def pscale(a: Sequence, c) -> tuple:
    if not c:
        return ()
    return _ptrim([x * c for x in a])


def pdivmod(a: Sequence, b: Sequence) -> tuple[tuple, tuple]:
    b = _ptrim(list(b))
    if not b:
        raise ZeroDivisionError("division by zero")
    a = list(_ptrim(list(a)))
    lead_inv = inv(b[-1])
    q: list = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * lead_inv
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - c * bc
        a.pop()
        while a and not a[-1]:
            a.pop()
    return _ptrim(q), tuple(a)


def pmonic(a: Sequence) -> tuple:
    if not a:
        return ()
    li = inv(a[-1])
    return tuple(x * li for x in a)


def pgcd(a: Sequence, b: Sequence) -> tuple:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        _, r = pdivmod(a, b)
        a, b = b, r
    return pmonic(a)


def peval(a: Sequence, x):
    out: Any = Fraction(0)
    for c in reversed(a):
        out = out * x + c
    return out


def pshift(a: Sequence, p) -> tuple:
    """Coefficients of a(s + p) in s."""
    out: list = []
    for c in reversed(a):
        # out = out * (s + p) + c
        new = [Fraction(0)] * (len(out) + 1)
        for i, x in enumerate(out):
            new[i + 1] = new[i + 1] + x
            new[i] = new[i] + x * p
        new[0] = new[0] + c
        out = new
    return _ptrim(out)


def pscale_var(a: Sequence, c) -> tuple:
    """Coefficients of a(c*t)."""
    out = []
    pw: Any = Fraction(1)
    for x in a:
        out.append(x * pw)
        pw = pw * c
    return _ptrim(out)


def series_div(num: Sequence, den: Sequence, n: int) -> list:
    """First n power-series coefficients of num/den, den[0] != 0."""
    d0 = inv(den[0])
    out: list = []
    for k in range(n):
        acc = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc * d0)
    return out


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFun:
    """Univariate rational function num/den over Q(w_T), den monic, gcd 1."""

    __slots__ = ("num", "den", "var")

    def __init__(self, num: Sequence = (), den: Sequence = (1,), var: str = "u",
                 _normalized: bool = False):
        self.var = var
        if _normalized:
            self.num, self.den = tuple(num), tuple(den)
            return
        num = _ptrim(list(num))
        den = _ptrim(list(den))
        if not den:
            raise ZeroDivisionError("division by zero")
        if not num:
            self.num, self.den = (), (Fraction(1),)
            return
        if len(den) > 1:
            g = pgcd(num, den)
            if len(g) > 1:
                num, _ = pdivmod(num, g)
                den, _ = pdivmod(den, g)
        li = inv(den[-1])
        if li != 1:
            num = tuple(x * li for x in num)
            den = tuple(x * li for x in den[:-1]) + (Fraction(1),)
        self.num, self.den = tuple(num), tuple(den)

    # constructors -----------------------------------------------------------
    @classmethod
    def const(cls, c, var: str = "u") -> "RatFun":
        return cls((c,), (Fraction(1),), var)

    @classmethod
    def symbol(cls, var: str = "u") -> "RatFun":
        return cls((Fraction(0), Fraction(1)), (Fraction(1),), var, _normalized=True)

    @classmethod
    def pole(cls, p, k: int = 1, var: str = "u") -> "RatFun":
        """1/(var - p)^k."""
        den: tuple = (Fraction(1),)
        for _ in range(k):
            den = pmul(den, (-p, Fraction(1)))
        return cls((Fraction(1),), den, var, _normalized=True)

    # arithmetic -------------------------------------------------------------
    def _lift(self, other) -> "RatFun | None":
        if isinstance(other, RatFun):
            return other
        if isinstance(other, (int, Fraction, CycScalar)):
            return RatFun.const(other, self.var)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RatFun(padd(self.num, o.num), self.den, self.var)
        num = padd(pmul(self.num, o.den), pmul(o.num, self.den))
        return RatFun(num, pmul(self.den, o.den), self.var)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(pneg(self.num), self.den, self.var, _normalized=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycScalar)):
            if not other:
                return RatFun((), (1,), self.var)
            return RatFun(pscale(self.num, other), self.den, self.var, _normalized=True)
        if not isinstance(other, RatFun):
            return NotImplemented
        if not self.num or not other.num:
            return RatFun((), (1,), self.var)
        return RatFun(pmul(self.num, other.num), pmul(self.den, other.den), self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CycScalar)):
            return self * inv(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero")
        return RatFun(pmul(self.num, other.den), pmul(self.den, other.num), self.var)

    def __rtruediv__(self, other):
        return RatFun.const(other, self.var) / self

    def __pow__(self, k: int):
        if k < 0:
            return (RatFun.const(1, self.var) / self) ** (-k)
        out = RatFun.const(1, self.var)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return _peq(pmul(self.num, o.den), pmul(o.num, self.den))

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # queries ----------------------------------------------------------------
    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0] if self.num else Fraction(0)

    def __call__(self, x):
        d = peval(self.den, x)
        if not d:
            raise ZeroDivisionError("pole at evaluation point")
        return peval(self.num, x) * inv(d)

    def subs_scale(self, c) -> "RatFun":
        """f(c * var)."""
        return RatFun(pscale_var(self.num, c), pscale_var(self.den, c), self.var)

    def pole_order(self, p) -> int:
        """Order of the pole at p (0 if regular there)."""
        if p == INF:
            return max(len(self.num) - len(self.den), 0)
        m, d = 0, self.den
        while len(d) > 1:
            q, r = pdivmod(d, (-p, Fraction(1)))
            if r:
                break
            m, d = m + 1, q
        return m

    def __repr__(self) -> str:
        return f"RatFun({self})"

    def __str__(self) -> str:
        n = poly_str(self.num, self.var)
        if len(self.den) == 1:
            return n
        if not any(self.den[:-1]):
            # monomial denominator: print as a Laurent polynomial
            return poly_str(self.num, self.var, 1 - len(self.den))
        k = len(self.den) - 1
        p = -self.den[k - 1] * inv(k)
        if RatFun.pole(p, k, self.var).den == self.den:
            base = f"({self.var} - {scalar_str(p)})" if not _negative(p) else \
                f"({self.var} + {scalar_str(-p)})"
            if len(self.num) == 1 and self.num[0] in (1, -1):
                return f"{'-' if self.num[0] == -1 else ''}{base}^-{k}"
            head = n if len(self.num) == 1 and not n.startswith("(") else f"({n})"
            return f"{head}*{base}^-{k}"
        return f"({n})/({poly_str(self.den, self.var)})"

    def to_json(self, T: int) -> dict:
        return {"num": [scalar_to_json(c, T) for c in self.num],
                "den": [scalar_to_json(c, T) for c in self.den]}

    @classmethod
    def from_json(cls, data: dict, T: int, var: str = "u") -> "RatFun":
        return cls([scalar_from_json(c, T) for c in data["num"]],
                   [scalar_from_json(c, T) for c in data["den"]], var)


def _negative(x) -> bool:
    return not isinstance(x, CycScalar) and x < 0


def _peq(a: Sequence, b: Sequence) -> bool:
    return _ptrim(list(padd(a, pneg(b)))) == ()


def poly_str(p: Sequence, var: str, shift: int = 0) -> str:
    if not p:
        return "0"
    parts = []
    for k, c in enumerate(p, shift):
        if not c:
            continue
        mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        cs = scalar_str(c)
        if not mon:
            parts.append(cs)
        elif c == 1:
            parts.append(mon)
        elif c == -1:
            parts.append("-" + mon)
        else:
            parts.append(f"{cs}*{mon}")
    return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Laurent series
# ---------------------------------------------------------------------------

class LaurentSeries:
    """Truncated Laurent series sum_{n=min_order}^{K} c_n (t - anchor)^n.

    At the anchor ``INF`` the expansion variable is 1/t.  Coefficients may be
    scalars or any objects supporting addition and scalar multiplication.
    """

    __slots__ = ("anchor", "min_order", "coeffs", "K")

    def __init__(self, anchor, min_order: int, coeffs: Sequence, K: int):
        if min_order + len(coeffs) - 1 > K:
            coeffs = list(coeffs)[: K - min_order + 1]
        self.anchor = anchor
        self.min_order = min_order
        self.coeffs = tuple(coeffs)
        self.K = K

    def coefficient(self, n: int):
        if n > self.K:
            raise ValueError(f"coefficient {n} beyond truncation order {self.K}")
        i = n - self.min_order
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def truncate(self, K: int) -> "LaurentSeries":
        if K > self.K:
            raise ValueError("cannot extend a truncated series")
        return LaurentSeries(self.anchor, self.min_order, self.coeffs, K)

    def items(self):
        for i, c in enumerate(self.coeffs):
            yield self.min_order + i, c

    def normalized(self) -> dict[int, Any]:
        return {n: c for n, c in self.items() if c}

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.anchor == other.anchor and self.K == other.K
                and self.normalized() == other.normalized())

    def __repr__(self) -> str:
        return f"LaurentSeries(at={self.anchor}, {self.normalized()}, K={self.K})"


def laurent_expand(f: RatFun, p, K: int) -> LaurentSeries:
    """Expansion of f at the point p (a scalar or ``INF``) up to order K."""
    if p == INF:
        dn, dd = len(f.num) - 1, len(f.den) - 1
        if not f.num:
            return LaurentSeries(INF, 0, [], K)
        rnum = tuple(reversed(f.num))
        rden = tuple(reversed(f.den))
        lo = dd - dn
        coeffs = series_div(rnum, rden, max(K - lo + 1, 0))
        return LaurentSeries(INF, lo, coeffs, K)
    m = f.pole_order(p)
    den = pshift(f.den, p)
    den = den[m:]
    num = pshift(f.num, p)
    if K + 1 < -m:
        raise ValueError(f"truncation order must be at least {-m}")
    coeffs = series_div(num, den, K + m + 1)
    return LaurentSeries(p, -m, coeffs, K)


def residue(f: RatFun, p):
    """Coefficient of (t-p)^(-1) at p; at INF minus the coefficient of t^(-1)."""
    if p == INF:
        s = laurent_expand(f, INF, 1)
        return -s.coefficient(1)
    m = f.pole_order(p)
    if m == 0:
        return Fraction(0)
    return laurent_expand(f, p, -1).coefficient(-1)


def polynomial_part(f: RatFun) -> RatFun:
    q, _ = pdivmod(f.num, f.den)
    return RatFun(q, (Fraction(1),), f.var)


def partial_fractions(f: RatFun, poles: Iterable) -> dict:
    """Map each pole p to its principal part, as a RatFun in the same symbol."""
    poles = list(poles)
    rest = f.den
    mult = {}
    for p in poles:
        m = 0
        while len(rest) > 1:
            q, r = pdivmod(rest, (-p, Fraction(1)))
            if r:
                break
            rest, m = q, m + 1
        mult[p] = m
    if len(rest) > 1:
        raise ValueError("pole set incomplete")
    out = {}
    for p in poles:
        m = mult[p]
        part = RatFun((), (1,), f.var)
        if m:
            s = laurent_expand(f, p, -1)
            for n, c in s.items():
                if c:
                    part = part + RatFun.pole(p, -n, f.var) * c
        out[p] = part
    return out
