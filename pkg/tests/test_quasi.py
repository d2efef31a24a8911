import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from cyclovertex.cycfield import CycScalar
from cyclovertex.fields import y_apply
from cyclovertex.quasi import (check_periodicity, check_quasi_borcherds, check_wcom, kappa,
                               p_power, twisted_mode_series, yw_apply, yw_apply_modes,
                               yw_composite)
from cyclovertex.suites import sample_states, twisted_locality_order
from cyclovertex.verma import TWISTED, State
from cyclovertex.vla import preset


def sympy_value(x, T):
    w = sp.exp(2 * sp.pi * sp.I / T)
    if isinstance(x, CycScalar):
        return sum(sp.Rational(c.numerator, c.denominator) * w ** k for k, c in enumerate(x.coeffs))
    return sp.Rational(Fraction(x).numerator, Fraction(x).denominator)


@pytest.mark.parametrize("T", [2, 3, 4])
@pytest.mark.parametrize("e", range(0, 4))
@pytest.mark.parametrize("j", range(0, 3))
def test_kappa_against_sympy(T, e, j):
    w = sp.exp(2 * sp.pi * sp.I / T)
    want = sum(w ** (k * e) * (w ** k - 1) ** (-j - 1) for k in range(1, T))
    assert sp.simplify(sp.expand_complex(sympy_value(kappa(T, e, j), T) - want)) == 0


def test_kappa_collapses_at_T1():
    assert all(kappa(1, e, j) == 0 for e in range(5) for j in range(5))


def test_vacuum_acts_as_identity():
    P = preset("affine_sl2", 2)
    w = State.from_word(P, [("h", -2), ("e", -1)], TWISTED)
    ser = yw_apply(State.vacuum(P), w, 4)
    assert ser.normalized() == {0: w}


@pytest.mark.parametrize("name,T,sigma", [("affine_sl2", 2, "id"), ("affine_sl2", 3, "inner:1"),
                                          ("heisenberg_sl2", 3, "id"), ("virasoro", 2, "id")])
def test_base_case_is_the_twisted_field(name, T, sigma):
    P = preset(name, T, sigma)
    w = sample_states(P, random.Random(1), 1, 3, 1, TWISTED)[0]
    for g in P.index:
        A = State.from_word(P, [(g, -1)])
        assert yw_apply(A, w, 4) == twisted_mode_series(P, g, w, 4)


def test_pole_correction_on_the_vacuum():
    # only the alpha != 1 correction contributes: kappa(1, 0) (e_(0) e*)^W = 1/2 at T = 2
    P = preset("heisenberg_sl2", 2)
    A = State.from_word(P, [("e", -1), ("e*", -1)])
    vac = State.vacuum(P, TWISTED)
    ser = yw_apply(A, vac, 0)
    assert ser.coefficient(-1) == vac.scale(kappa(2, 1, 0))
    assert kappa(2, 1, 0) == Fraction(1, 2)


@pytest.mark.parametrize("name", ["affine_sl2", "heisenberg_sl2", "virasoro"])
def test_T1_agrees_with_the_vertex_algebra(name):
    P = preset(name, 1)
    rng = random.Random(5)
    for A, B in zip(*[iter(sample_states(P, rng, 2, 3, 8))] * 2):
        Bw = State(P, TWISTED, B.terms)
        for o, c in yw_apply(A, Bw, 3).items():
            assert c == State(P, TWISTED, y_apply(A, B, -o - 1).terms)


@pytest.mark.parametrize("T,sigma", [(2, "id"), (3, "inner:1"), (2, "swap")])
def test_twisted_commutator(T, sigma):
    P = preset("affine_sl2", T, sigma)
    rng = random.Random(11)
    Vs = sample_states(P, rng, 2, 2, 4)
    w = sample_states(P, rng, 1, 2, 1, TWISTED)[0]
    for m in range(-2, 3):
        for n in range(-2, 3):
            assert check_wcom(Vs[0], Vs[1], m, n, w).ok
            assert check_wcom(Vs[2], Vs[3], m, n, w).ok


@pytest.mark.parametrize("T", [2, 3])
def test_composite_left_factor_matches_recursion(T):
    P = preset("heisenberg_sl2", T)
    rng = random.Random(2)
    A, B = sample_states(P, rng, 1, 2, 2, min_depth=1)
    w = sample_states(P, rng, 1, 2, 1, TWISTED)[0]
    AB = y_apply(A, B, -1)
    for n in range(-3, 4):
        assert yw_composite(A, B, w, n) == yw_apply_modes(AB, w, n)


@pytest.mark.parametrize("T,sigma", [(2, "id"), (3, "inner:1"), (4, "inner:1")])
def test_periodicity(T, sigma):
    P = preset("affine_sl2", T, sigma)
    rng = random.Random(4)
    w = sample_states(P, rng, 1, 2, 1, TWISTED)[0]
    for A in sample_states(P, rng, 2, 2, 3):
        assert check_periodicity(A, w, 3).ok


@settings(max_examples=30, deadline=None)
@given(T=st.integers(1, 5), k=st.integers(0, 4), x=st.integers(2, 6), y=st.integers(-5, 1))
def test_p_power_expansion(T, k, x, y):
    total = sum(c * x ** i * y ** (k * (T - 1) - i) for i, c in p_power(T, k).items())
    assert total == Fraction(x ** T - y ** T, x - y) ** k


def test_quasi_borcherds_k_and_locality():
    P = preset("affine_sl2", 2)
    rng = random.Random(9)
    for _ in range(4):
        A, B = sample_states(P, rng, 2, 2, 2)
        w = sample_states(P, rng, 1, 2, 1, TWISTED)[0]
        res = check_quasi_borcherds(A, B, w, (0, 0, -1), 8)
        assert res.ok
        assert res.info["k"] <= twisted_locality_order(A, B)
    P1 = preset("affine_sl2", 1)
    A, B = sample_states(P1, rng, 2, 2, 2)
    res = check_quasi_borcherds(A, B, State.vacuum(P1, TWISTED), (1, -1, -2), 0)
    assert res.ok and res.info["k"] == 0


def test_quasi_borcherds_needs_the_clearing_polynomial():
    # w has a pole of order 4 against R_alpha w = w at x = -y
    P = preset("virasoro", 2)
    w = State.from_word(P, [("w", -1)])
    res = check_quasi_borcherds(w, w, State.vacuum(P, TWISTED), (0, 0, -1), 3)
    assert not res.ok
    res = check_quasi_borcherds(w, w, State.vacuum(P, TWISTED), (0, 0, -1), 4)
    assert res.ok and res.info["k"] == 4


def test_argument_validation():
    P = preset("virasoro", 2)
    with pytest.raises(ValueError):
        yw_apply(State.vacuum(P), State.vacuum(P, TWISTED), -2)
    with pytest.raises(ValueError):
        yw_apply(State.vacuum(P), State.vacuum(P), 2)
