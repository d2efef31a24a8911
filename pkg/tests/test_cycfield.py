from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from cyclovertex.cycfield import (INF, CycScalar, RatFun, group, inv, laurent_expand,
                                  partial_fractions, residue, root, scalar_from_json,
                                  scalar_str, scalar_to_json)

u = sp.Symbol("u")


def to_sympy(x, T):
    """Exact sympy value of a scalar of Q(w_T)."""
    w = sp.exp(2 * sp.pi * sp.I / T)
    if isinstance(x, CycScalar):
        return sum(sp.Rational(c.numerator, c.denominator) * w ** k for k, c in enumerate(x.coeffs))
    x = Fraction(x)
    return sp.Rational(x.numerator, x.denominator)


def same(a, b) -> bool:
    return sp.simplify(sp.expand_complex(a - b)) == 0


@pytest.mark.parametrize("T", [1, 2, 3, 4, 5, 6])
def test_roots_form_a_cyclic_group(T):
    els = group(T)
    assert els[0] == 1
    assert root(T, 1) ** T == 1
    for k in range(T):
        for l in range(T):
            assert root(T, k) * root(T, l) == root(T, k + l)
    if T > 1:
        total = Fraction(0)
        for x in els:
            total = total + x
        assert total == 0


@pytest.mark.parametrize("T", [3, 4, 5, 6])
def test_roots_match_sympy(T):
    for k in range(T):
        assert same(to_sympy(root(T, k), T), sp.exp(2 * sp.pi * sp.I * k / T))


coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@settings(max_examples=40, deadline=None)
@given(T=st.sampled_from([3, 4, 5]), a=st.lists(coeff, min_size=4, max_size=4),
       b=st.lists(coeff, min_size=4, max_size=4))
def test_field_arithmetic_against_sympy(T, a, b):
    x, y = CycScalar(a, T), CycScalar(b, T)
    sx, sy = to_sympy(x, T), to_sympy(y, T)
    assert same(to_sympy(x * y, T), sx * sy)
    assert same(to_sympy(x + y, T), sx + sy)
    if y != 0:
        assert (x * inv(y)) * y == x


@settings(max_examples=40, deadline=None)
@given(T=st.sampled_from([1, 2, 3, 4, 6]), a=st.lists(coeff, min_size=1, max_size=5))
def test_scalar_json_roundtrip(T, a):
    x = CycScalar(a, T) if len(a) > 1 and T > 2 else Fraction(a[0])
    assert scalar_from_json(scalar_to_json(x, T), T) == x


def test_scalar_strings_are_fractions():
    assert scalar_str(Fraction(-3, 4)) == "-3/4"
    assert scalar_str(root(3, 1)) == "w"
    assert scalar_str(root(3, 2)) == "(-1 - w)"


def test_ratfun_normal_form_and_printing():
    f = RatFun.pole(Fraction(0), 1) * Fraction(-1, 2)
    assert str(f) == "-1/2*u^-1"
    g = (RatFun.symbol() - 2) * RatFun.pole(Fraction(2), 2)
    assert g == RatFun.pole(Fraction(2), 1)
    assert RatFun.pole(Fraction(1), 3).pole_order(Fraction(1)) == 3
    assert RatFun.pole(Fraction(1), 3).pole_order(Fraction(2)) == 0


def test_subs_scale():
    w = root(3, 1)
    f = RatFun.pole(Fraction(0), 1)
    # 1/(w u) = w^2 / u
    assert f.subs_scale(w) == f * root(3, 2)


def _ratfun_from_sympy(expr):
    num, den = sp.fraction(sp.together(expr))
    pn = [Fraction(str(c)) for c in reversed(sp.Poly(num, u).all_coeffs())]
    pd = [Fraction(str(c)) for c in reversed(sp.Poly(den, u).all_coeffs())]
    return RatFun(pn, pd)


rational_exprs = st.sampled_from([
    1 / (u - 2) ** 2 + 3 / u,
    (u ** 2 + 1) / (u * (u - 1) ** 3),
    (2 * u - 5) / ((u + 3) * (u - sp.Rational(1, 2))),
    u ** 3 / (u ** 2 - 4),
    sp.Rational(7, 3) / u ** 4,
])


@settings(max_examples=25, deadline=None)
@given(expr=rational_exprs, p=st.sampled_from([0, 1, 2, -3, sp.Rational(1, 2)]),
       K=st.integers(min_value=0, max_value=4))
def test_laurent_expansion_against_sympy(expr, p, K):
    f = _ratfun_from_sympy(expr)
    pf = Fraction(str(p))
    ser = laurent_expand(f, pf, K)
    t = sp.Symbol("t")
    shifted = sp.series(expr.subs(u, t + p), t, 0, K + 1).removeO()
    for n in range(-6, K + 1):
        want = Fraction(str(sp.expand(shifted).coeff(t, n)))
        assert ser.coefficient(n) == want


@settings(max_examples=15, deadline=None)
@given(expr=rational_exprs)
def test_residues_sum_to_zero(expr):
    f = _ratfun_from_sympy(expr)
    poles = [Fraction(str(r)) for r in sp.roots(sp.fraction(sp.together(expr))[1], u)]
    total = residue(f, INF)
    for p in poles:
        total += residue(f, p)
        assert residue(f, p) == Fraction(str(sp.residue(expr, u, sp.nsimplify(p))))
    assert total == 0


def test_partial_fractions_reassemble():
    f = RatFun.pole(Fraction(0), 2) * 3 + RatFun.pole(Fraction(2), 1) * Fraction(-1, 2)
    parts = partial_fractions(f, [Fraction(0), Fraction(2)])
    assert parts[Fraction(0)] + parts[Fraction(2)] == f
    with pytest.raises(ValueError):
        partial_fractions(f, [Fraction(0)])


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        inv(Fraction(0))
    with pytest.raises(ZeroDivisionError):
        RatFun.pole(Fraction(1))(Fraction(1))
